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

#include "qnet/energy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <tuple>
#include <utility>

#include <json.hpp>

#include "qnet/error.hpp"

namespace qnet {

namespace {

constexpr std::array<Group, 4> kGroups{Group::source, Group::manipulation, Group::detection, Group::classical};

}  // namespace

std::string_view group_name(Group g) {
    switch (g) {
        case Group::source:
            return "source";
        case Group::manipulation:
            return "manipulation";
        case Group::detection:
            return "detection";
        case Group::classical:
            return "classical";
    }
    return "source";
}

const std::vector<ComponentUse> &ProtocolSetup::group(Group g) const {
    switch (g) {
        case Group::source:
            return source;
        case Group::manipulation:
            return manipulation;
        case Group::detection:
            return detection;
        case Group::classical:
            return classical;
    }
    return source;
}

std::vector<ComponentUse> &ProtocolSetup::group(Group g) {
    return const_cast<std::vector<ComponentUse> &>(std::as_const(*this).group(g));
}

ProtocolSetup &ProtocolSetup::add(Group g, const std::string &id, int multiplicity) {
    if (multiplicity <= 0) {
        return *this;
    }
    auto &v = group(g);
    for (auto &u : v) {
        if (u.id == id) {
            u.multiplicity += multiplicity;
            return *this;
        }
    }
    v.push_back({id, multiplicity});
    return *this;
}

int ProtocolSetup::count(Group g, std::string_view id) const {
    int n = 0;
    for (const auto &u : group(g)) {
        if (u.id == id) {
            n += u.multiplicity;
        }
    }
    return n;
}

int ProtocolSetup::count(std::string_view id) const {
    int n = 0;
    for (Group g : kGroups) {
        n += count(g, id);
    }
    return n;
}

void validate_setup(const ProtocolSetup &s, const Catalog &cat) {
    for (Group g : kGroups) {
        for (const auto &u : s.group(g)) {
            if (u.multiplicity < 1) {
                throw ValidationError(
                    "setup '" + s.name + "': multiplicity of '" + u.id + "' must be at least 1");
            }
            if (!cat.contains(u.id)) {
                throw ValidationError("setup '" + s.name + "': unknown component id '" + u.id + "'");
            }
        }
    }
    if (s.dsp && !(s.dsp->tau_dsp_J_per_symbol >= 0)) {
        throw ValidationError("setup '" + s.name + "': tau_dsp must be non-negative");
    }
}

double setup_power(const ProtocolSetup &s, const Catalog &cat) {
    validate_setup(s, cat);
    double p = 0;
    for (Group g : kGroups) {
        for (const auto &u : s.group(g)) {
            p += u.multiplicity * cat.power(u.id);
        }
    }
    return p;
}

double setup_startup_energy(const ProtocolSetup &s, const Catalog &cat) {
    validate_setup(s, cat);
    double e = 0;
    for (Group g : kGroups) {
        for (const auto &u : s.group(g)) {
            e += u.multiplicity * cat.startup_energy(u.id);
        }
    }
    return e;
}

double runtime_for_target(double n_target_bits, const RateResult &rate) {
    if (!(n_target_bits >= 0)) {
        throw DomainError("target bit count must be non-negative");
    }
    if (n_target_bits == 0) {
        return 0;
    }
    if (!(rate.secret_bps > 0)) {
        throw InfeasibleError("secret key rate is zero; the target can never be reached");
    }
    return n_target_bits / rate.secret_bps;
}

double dsp_energy(double n_target_bits, double k_bits_per_symbol, const ClassicalCostParams &c) {
    if (!c.enabled || n_target_bits == 0) {
        return 0;
    }
    if (!(c.tau_dsp_J_per_symbol >= 0)) {
        throw DomainError("tau_dsp must be non-negative");
    }
    if (!(k_bits_per_symbol > 0)) {
        throw InfeasibleError("key rate per symbol is zero; DSP cost is unbounded");
    }
    return c.tau_dsp_J_per_symbol * n_target_bits / k_bits_per_symbol;
}

std::vector<BreakdownEntry> power_breakdown(const ProtocolSetup &s, const Catalog &cat) {
    validate_setup(s, cat);
    std::vector<BreakdownEntry> out;
    double total = 0;
    for (Group g : kGroups) {
        for (const auto &u : s.group(g)) {
            BreakdownEntry e;
            e.id = u.id;
            e.group = g;
            e.multiplicity = u.multiplicity;
            e.watts = u.multiplicity * cat.power(u.id);
            total += e.watts;
            out.push_back(std::move(e));
        }
    }
    if (!(total > 0)) {
        throw ValidationError("setup '" + s.name + "' draws no power; shares are undefined");
    }
    for (auto &e : out) {
        e.share = e.watts / total;
    }
    std::stable_sort(out.begin(), out.end(), [](const BreakdownEntry &a, const BreakdownEntry &b) {
        return a.watts > b.watts;
    });
    return out;
}

EnergyReport energy_for_target(
    const ProtocolSetup &s, const Catalog &cat, double n_target_bits, const RateResult &rate) {
    validate_setup(s, cat);
    EnergyReport r;
    r.rate = rate;
    r.power_W = setup_power(s, cat);
    r.startup_J = setup_startup_energy(s, cat);
    r.runtime_s = runtime_for_target(n_target_bits, rate);
    r.running_J = r.power_W * r.runtime_s;
    if (s.dsp) {
        r.dsp_J = dsp_energy(n_target_bits, rate.secret_per_use, *s.dsp);
    }
    r.total_J = r.startup_J + r.running_J + r.dsp_J;
    r.ee_bits_per_J = r.power_W > 0 ? rate.secret_bps / r.power_W : 0;

    for (Group g : kGroups) {
        for (const auto &u : s.group(g)) {
            BreakdownEntry e;
            e.id = u.id;
            e.group = g;
            e.multiplicity = u.multiplicity;
            e.watts = u.multiplicity * cat.power(u.id);
            e.joules = u.multiplicity * cat.startup_energy(u.id) + e.watts * r.runtime_s;
            e.share = r.power_W > 0 ? e.watts / r.power_W : 0;
            r.breakdown.push_back(std::move(e));
        }
    }
    if (r.dsp_J > 0) {
        BreakdownEntry e;
        e.id = "dsp";
        e.group = Group::classical;
        e.joules = r.dsp_J;
        r.breakdown.push_back(std::move(e));
    }
    std::stable_sort(r.breakdown.begin(), r.breakdown.end(), [](const BreakdownEntry &a, const BreakdownEntry &b) {
        return std::tie(b.watts, b.joules) < std::tie(a.watts, a.joules);
    });
    return r;
}

EnergyReport energy_for_target(const ProtocolSetup &s, const Catalog &cat, double n_target_bits) {
    if (!s.rate_model.evaluate) {
        throw ValidationError("setup '" + s.name + "' has no rate model");
    }
    return energy_for_target(s, cat, n_target_bits, s.rate_model.evaluate());
}

double energy_at_time(const ProtocolSetup &s, const Catalog &cat, double t_s) {
    if (!(t_s >= 0)) {
        throw DomainError("time must be non-negative");
    }
    return setup_startup_energy(s, cat) + t_s * setup_power(s, cat);
}

std::string to_json(const EnergyReport &r, int indent) {
    nlohmann::ordered_json j;
    j["raw_per_use"] = r.rate.raw_per_use;
    j["secret_per_use"] = r.rate.secret_per_use;
    j["secret_bps"] = r.rate.secret_bps;
    j["startup_J"] = r.startup_J;
    j["power_W"] = r.power_W;
    j["runtime_s"] = r.runtime_s;
    j["running_J"] = r.running_J;
    j["dsp_J"] = r.dsp_J;
    j["total_J"] = r.total_J;
    j["ee_bits_per_J"] = r.ee_bits_per_J;
    auto arr = nlohmann::ordered_json::array();
    for (const auto &e : r.breakdown) {
        nlohmann::ordered_json b;
        b["id"] = e.id;
        b["group"] = std::string(group_name(e.group));
        b["multiplicity"] = e.multiplicity;
        b["watts"] = e.watts;
        b["joules"] = e.joules;
        b["share"] = e.share;
        arr.push_back(std::move(b));
    }
    j["breakdown"] = std::move(arr);
    return j.dump(indent);
}

}  // namespace qnet
