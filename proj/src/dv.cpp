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

#include "qnet/dv.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qnet/error.hpp"

namespace qnet {

namespace {

void check_probability(double p, const char *name) {
    if (!(p >= 0 && p <= 1)) {
        throw DomainError(std::string(name) + " must lie in [0, 1]");
    }
}

void check_link(const DvLinkParams &p) {
    check_probability(p.mu, "mu");
    check_probability(p.p_coupling, "p_coupling");
    check_probability(p.p_det, "p_det");
    check_probability(p.p_bsm, "p_bsm");
    if (!(p.r_source_Hz > 0)) {
        throw DomainError("r_source_Hz must be positive");
    }
}

}  // namespace

std::string_view dv_preset_name(DvPreset p) {
    return p == DvPreset::baseline_table2 ? "baseline_table2" : "table4_repro";
}

DvPresetValues dv_preset(DvPreset p) {
    DvPresetValues v{0.01, 0.01, 0.9, 0.5, 80e6};
    if (p == DvPreset::table4_repro) {
        v.mu = 0.1;
    }
    return v;
}

double DvLinkParams::total_transmittance() const {
    double t = 1;
    for (const auto &ch : channels) {
        t *= transmittance(ch);
    }
    return t;
}

double binary_entropy(double p) {
    if (!(p >= 0 && p <= 1)) {
        throw DomainError("binary_entropy: argument outside [0, 1]");
    }
    if (p == 0 || p == 1) {
        return 0;
    }
    return -p * std::log2(p) - (1 - p) * std::log2(1 - p);
}

double generic_raw_rate(
    std::span<const double> sources, std::span<const double> efficiencies, std::span<const FiberChannel> channels) {
    double r = 1;
    for (double mu : sources) {
        check_probability(mu, "source emission probability");
        r *= mu;
    }
    for (double e : efficiencies) {
        check_probability(e, "efficiency");
        r *= e;
    }
    for (const auto &ch : channels) {
        r *= transmittance(ch);
    }
    return r;
}

double bb84_raw_rate(const DvLinkParams &p) {
    check_link(p);
    return p.mu * p.p_coupling * p.total_transmittance() * p.p_det;
}

double e91_raw_rate(const DvLinkParams &p) {
    check_link(p);
    return p.mu * p.p_coupling * p.p_coupling * p.total_transmittance() * p.p_det * p.p_det;
}

double mdi_raw_rate(const DvLinkParams &p) {
    check_link(p);
    return p.mu * p.mu * p.p_coupling * p.p_coupling * p.total_transmittance() * p.p_bsm * p.p_det * p.p_det;
}

double ghz_cka_raw_rate(
    const DvLinkParams &p, int n, double d_km, double loss_coeff_dB_per_km, FusionMode mode, double p_fusion) {
    check_link(p);
    if (n < 3) {
        throw DomainError("GHZ conference keys need at least 3 parties");
    }
    if (!(d_km >= 0)) {
        throw DomainError("distance must be non-negative");
    }
    check_probability(p_fusion, "p_fusion");
    int sources = (n + 1) / 2;
    double r = std::pow(p.mu, sources) * std::pow(p.p_coupling * p.p_det, n) *
               std::pow(10.0, -n * loss_coeff_dB_per_km * d_km / 10.0);
    if (mode == FusionMode::with_fusion_probability) {
        r *= std::pow(p_fusion, (n - 1) / 2);
    }
    return r;
}

RateResult dv_secret_rate(double raw, const DvNoise &noise, double r_source_Hz) {
    check_probability(raw, "raw rate");
    if (!(noise.qber >= 0 && noise.qber <= 0.5)) {
        throw DomainError("qber must lie in [0, 0.5]");
    }
    RateResult r;
    r.raw_per_use = raw;
    r.secret_per_use = std::max(0.0, raw * (1 - 2 * binary_entropy(noise.qber)));
    r.secret_bps = r.secret_per_use * r_source_Hz;
    return r;
}

}  // namespace qnet
