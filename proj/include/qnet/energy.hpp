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

#ifndef QNET_ENERGY_HPP
#define QNET_ENERGY_HPP

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qnet/catalog.hpp"
#include "qnet/dv.hpp"

namespace qnet {

enum class Group { source, manipulation, detection, classical };

std::string_view group_name(Group g);

struct ComponentUse {
    std::string id;
    int multiplicity = 1;
};

struct ClassicalCostParams {
    double tau_dsp_J_per_symbol = 0;
    bool enabled = false;
};

struct RateModel {
    std::string description;
    std::function<RateResult()> evaluate;
};

struct ProtocolSetup {
    std::string name;
    std::vector<ComponentUse> source;
    std::vector<ComponentUse> manipulation;
    std::vector<ComponentUse> detection;
    std::vector<ComponentUse> classical;
    RateModel rate_model;
    std::optional<ClassicalCostParams> dsp;

    const std::vector<ComponentUse> &group(Group g) const;
    std::vector<ComponentUse> &group(Group g);

    /// Adds `multiplicity` copies of `id` to a group, merging with an existing entry.
    ProtocolSetup &add(Group g, const std::string &id, int multiplicity = 1);

    /// Total multiplicity of `id` across all groups.
    int count(std::string_view id) const;
    int count(Group g, std::string_view id) const;
};

/// Throws ValidationError on unknown ids or non-positive multiplicities.
void validate_setup(const ProtocolSetup &s, const Catalog &cat);

struct BreakdownEntry {
    std::string id;
    Group group = Group::source;
    int multiplicity = 0;
    double watts = 0;
    double joules = 0;
    double share = 0;
};

struct EnergyReport {
    RateResult rate;
    double startup_J = 0;
    double power_W = 0;
    double runtime_s = 0;
    double running_J = 0;
    double dsp_J = 0;
    double total_J = 0;
    double ee_bits_per_J = 0;
    std::vector<BreakdownEntry> breakdown;
};

double setup_power(const ProtocolSetup &s, const Catalog &cat);
double setup_startup_energy(const ProtocolSetup &s, const Catalog &cat);

double runtime_for_target(double n_target_bits, const RateResult &rate);

double dsp_energy(double n_target_bits, double k_bits_per_symbol, const ClassicalCostParams &c);

EnergyReport energy_for_target(const ProtocolSetup &s, const Catalog &cat, double n_target_bits);

/// Same as `energy_for_target` with an already evaluated rate.
EnergyReport energy_for_target(const ProtocolSetup &s, const Catalog &cat, double n_target_bits, const RateResult &rate);

double energy_at_time(const ProtocolSetup &s, const Catalog &cat, double t_s);

/// Per-entry watts and shares, sorted by descending watts. Joules are left at zero.
std::vector<BreakdownEntry> power_breakdown(const ProtocolSetup &s, const Catalog &cat);

std::string to_json(const EnergyReport &r, int indent = 2);

}  // namespace qnet

#endif
