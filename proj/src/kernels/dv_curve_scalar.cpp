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

#include <cmath>
#include <numbers>

#include "qnet/kernels.hpp"

namespace qnet::kernels::scalar {

void dv_energy_curve(
    std::span<const double> distances_km, const DvCurveParams &p, std::span<double> energy_J,
    std::span<double> runtime_s) {
    const double k = p.loss_dB_per_km * std::numbers::ln10 / 10;
    const double t0 = p.n_target_bits == 0 ? 0.0 : p.n_target_bits / p.rate_at_zero_bps;
    for (size_t i = 0; i < distances_km.size(); i++) {
        double t = t0 * std::exp(k * distances_km[i]);
        runtime_s[i] = t;
        energy_J[i] = p.startup_J + p.power_W * t;
    }
}

}  // namespace qnet::kernels::scalar
