// Copyright 2026 The qnet-energy Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QNET_KERNELS_HPP
#define QNET_KERNELS_HPP

#include <span>
#include <string_view>

namespace qnet::kernels {

/// Energy-vs-distance model of a link whose secret rate decays as 10^(-loss * d / 10).
struct DvCurveParams {
    double rate_at_zero_bps = 0;
    double loss_dB_per_km = 0.18;
    double power_W = 0;
    double startup_J = 0;
    double n_target_bits = 1e9;
};

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);

/// AVX2+FMA when the CPU supports it and QNET_FORCE_SCALAR is unset.
Isa active_isa();

/// energy[i] = startup + power * runtime[i], runtime[i] = n / (r0 * 10^(-loss * d[i] / 10)).
/// Infinite when the rate at zero distance is zero. Output spans must match the input size.
void dv_energy_curve(
    std::span<const double> distances_km, const DvCurveParams &p, std::span<double> energy_J,
    std::span<double> runtime_s);

namespace scalar {
void dv_energy_curve(
    std::span<const double> distances_km, const DvCurveParams &p, std::span<double> energy_J,
    std::span<double> runtime_s);
}

namespace avx2 {
bool compiled();
void dv_energy_curve(
    std::span<const double> distances_km, const DvCurveParams &p, std::span<double> energy_J,
    std::span<double> runtime_s);
}

}  // namespace qnet::kernels

#endif
