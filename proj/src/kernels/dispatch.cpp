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

#include <cstdlib>

#include "qnet/error.hpp"
#include "qnet/kernels.hpp"

namespace qnet::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

bool force_scalar() {
    const char *v = std::getenv("QNET_FORCE_SCALAR");
    return v != nullptr && v[0] != '\0' && v[0] != '0';
}

}  // namespace

std::string_view isa_name(Isa isa) {
    return isa == Isa::avx2 ? "avx2" : "scalar";
}

Isa active_isa() {
    static const bool avx2_ok = avx2::compiled() && cpu_has_avx2();
    if (avx2_ok && !force_scalar()) {
        return Isa::avx2;
    }
    return Isa::scalar;
}

void dv_energy_curve(
    std::span<const double> distances_km, const DvCurveParams &p, std::span<double> energy_J,
    std::span<double> runtime_s) {
    if (energy_J.size() != distances_km.size() || runtime_s.size() != distances_km.size()) {
        throw DomainError("dv_energy_curve: output size mismatch");
    }
    if (!(p.rate_at_zero_bps >= 0) || !(p.loss_dB_per_km >= 0) || !(p.n_target_bits >= 0)) {
        throw DomainError("dv_energy_curve: invalid curve parameters");
    }
    for (double d : distances_km) {
        if (!(d >= 0)) {
            throw DomainError("dv_energy_curve: distances must be non-negative");
        }
    }
    if (active_isa() == Isa::avx2) {
        avx2::dv_energy_curve(distances_km, p, energy_J, runtime_s);
    } else {
        scalar::dv_energy_curve(distances_km, p, energy_J, runtime_s);
    }
}

}  // namespace qnet::kernels
