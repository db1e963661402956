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

#ifndef QNET_DV_HPP
#define QNET_DV_HPP

#include <span>
#include <string_view>
#include <vector>

#include "qnet/channel.hpp"

namespace qnet {

struct RateResult {
    double raw_per_use = 0;
    double secret_per_use = 0;
    double secret_bps = 0;
};

/// Link parameters. The end-to-end transmittance is the product over `channels`.
struct DvLinkParams {
    double mu = 0.01;
    double p_coupling = 0.9;
    double p_det = 0.95;
    double r_source_Hz = 80e6;
    double p_bsm = 0.5;
    std::vector<FiberChannel> channels;

    double total_transmittance() const;
};

struct DvNoise {
    double qber = 0.01;
};

enum class FusionMode { as_printed, with_fusion_probability };

enum class DvPreset { baseline_table2, table4_repro };

std::string_view dv_preset_name(DvPreset p);

struct DvPresetValues {
    double mu;
    double qber;
    double p_coupling;
    double p_bsm;
    double r_source_Hz;
};

DvPresetValues dv_preset(DvPreset p);

/// Root of 1 - 2 h(q); the secret rate vanishes at and above it.
constexpr double kQberThreshold = 0.11002786443835955;

double binary_entropy(double p);

double generic_raw_rate(
    std::span<const double> sources, std::span<const double> efficiencies, std::span<const FiberChannel> channels);

double bb84_raw_rate(const DvLinkParams &p);
double e91_raw_rate(const DvLinkParams &p);
double mdi_raw_rate(const DvLinkParams &p);

/// `d_km` is the distance from the GHZ source to each party.
double ghz_cka_raw_rate(
    const DvLinkParams &p,
    int n,
    double d_km,
    double loss_coeff_dB_per_km,
    FusionMode mode = FusionMode::as_printed,
    double p_fusion = 0.5);

RateResult dv_secret_rate(double raw, const DvNoise &noise, double r_source_Hz);

}  // namespace qnet

#endif
