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

#include "qnet/catalog.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <utility>

#include <toml.hpp>

#include "qnet/error.hpp"

namespace qnet {

namespace {

constexpr std::array<std::pair<Category, std::string_view>, 17> kCategoryNames{{
    {Category::laser, "laser"},
    {Category::detector, "detector"},
    {Category::modulator_am, "modulator_am"},
    {Category::modulator_iq, "modulator_iq"},
    {Category::oven, "oven"},
    {Category::waveplates, "waveplates"},
    {Category::interferometry, "interferometry"},
    {Category::polarization_controller, "polarization_controller"},
    {Category::powermeter, "powermeter"},
    {Category::optical_switch, "optical_switch"},
    {Category::adc, "adc"},
    {Category::dac, "dac"},
    {Category::computer, "computer"},
    {Category::time_tagger, "time_tagger"},
    {Category::bhd, "bhd"},
    {Category::photodiode, "photodiode"},
    {Category::custom, "custom"},
}};

constexpr double kFiberMatchWindowNm = 60;

ComponentSpec row(
    std::string id,
    Category cat,
    std::optional<double> wl,
    double e0_kJ,
    std::optional<double> meas_e0_kJ,
    double p,
    std::optional<double> meas_p,
    std::string label) {
    ComponentSpec c;
    c.id = std::move(id);
    c.category = cat;
    c.wavelength_nm = wl;
    c.startup_energy_J = e0_kJ * 1e3;
    if (meas_e0_kJ) {
        c.measured_startup_J = *meas_e0_kJ * 1e3;
    }
    c.power_W = p;
    c.measured_power_W = meas_p;
    c.label = std::move(label);
    return c;
}

Catalog make_builtin() {
    constexpr auto none = std::nullopt;
    std::vector<ComponentSpec> rows{
        row("verdi_c_532", Category::laser, 532, 648, none, 360, none, "Verdi C-Series"),
        row("verdi_v_532", Category::laser, 532, 1620, 864, 900, 480, "Verdi V-Series"),
        row("dlc_ta_pro_795", Category::laser, 795, 0, none, 70, none, "DLC TA pro"),
        row("d2547p_1532", Category::laser, 1532, 0, none, 3, none, "D2547P"),
        row("koheras_basik_x15_1550", Category::laser, 1550, 0.12, 0.126, 4, 4.2, "NKT Koheras Basik X15"),
        row("mira_hp_f_780", Category::laser, 780, 3240, none, 1800, none, "Mira HP F"),
        row("scw_1532_500r", Category::laser, 1550, 0, 2.4, 0, none, "SCW 1532-500R"),
        row("si_apd_523", Category::detector, 523, 0, none, 45, none, "Si-APD 523 nm"),
        row("si_apd_780", Category::detector, 780, 0, none, 15, none, "Si-APD 780 nm"),
        row("ingaas_apd_id220", Category::detector, 1550, 48.3, 5.04, 161, 14, "InGaAs-APD 900-1700 nm"),
        row("ingaas_apd_1532", Category::detector, 1532, 1159, 125.7, 644, 64, "InGaAs-APD 1532 nm"),
        row("snspd_780", Category::detector, 780, 259200, none, 3000, none, "SNSPD 780 nm"),
        row("snspd_1550", Category::detector, 1532, 259200, 117639, 3000, 2735, "SNSPD 1532 nm"),
        row("balanced_detector", Category::bhd, 1550, 0, none, 3, 6.8, "Balanced detector"),
        row("computer", Category::computer, none, 9, 6, 150, 100, "Computer"),
        row("time_tagger", Category::time_tagger, none, 0, none, 50, 22, "Time tagger"),
        row("waveplates", Category::waveplates, none, 0.93, 0.249, 31, 8.3, "Motorised waveplates"),
        row("interferometry", Category::interferometry, none, 0, none, 200, none, "Interferometry"),
        row("modulator_am", Category::modulator_am, none, 15, 0.78, 500, 26, "Modulator (AM)"),
        row("oven", Category::oven, none, 9, 0.54, 15, 0.9, "Oven (with controller)"),
        row("modulator_iq", Category::modulator_iq, none, 0.18, 0.162, 6, 5.4, "Modulator (IQ)"),
        row("polarization_controller", Category::polarization_controller, none, 0, none, 1.8, 0.35,
            "Polarization controller"),
        row("powermeter", Category::powermeter, none, 0, none, 1, 0.8, "Powermeter"),
        row("optical_switch", Category::optical_switch, none, 0, none, 1.8, 0.35, "Optical switch"),
        row("adc", Category::adc, none, 0, none, 30, 20, "ADC"),
        row("dac", Category::dac, none, 0, none, 40, 40, "DAC"),
        row("phase_modulator", Category::custom, none, 0, none, 6, none, "Phase modulator"),
    };
    std::map<std::string, ComponentSpec> comps;
    for (auto &c : rows) {
        if (c.id == "ingaas_apd_id220" || c.id == "ingaas_apd_1532" || c.id == "snspd_1550") {
            c.startup_integrated = true;
        }
        if (c.id == "phase_modulator") {
            c.assumed = true;
        }
        comps.emplace(c.id, std::move(c));
    }
    comps["si_apd_523"].detection_efficiency = 0.5;
    comps["si_apd_780"].detection_efficiency = 0.75;
    comps["ingaas_apd_id220"].detection_efficiency = 0.25;
    comps["ingaas_apd_1532"].detection_efficiency = 0.25;
    comps["snspd_780"].detection_efficiency = 0.95;
    comps["snspd_1550"].detection_efficiency = 0.95;
    comps["balanced_detector"].detection_efficiency = 0.7;
    return Catalog(std::move(comps), {{532, 30}, {780, 4}, {1550, 0.18}});
}

std::optional<double> get_number(const toml::table &t, std::string_view key, const std::string &where) {
    const toml::node *n = t.get(key);
    if (n == nullptr) {
        return std::nullopt;
    }
    if (auto v = n->value<double>()) {
        return *v;
    }
    throw ParseError(where + ": key '" + std::string(key) + "' must be a number", n->source().begin.line);
}

void put_number(toml::table &t, std::string_view key, double v) {
    if (v == std::floor(v) && std::abs(v) < 1e15) {
        t.insert(key, static_cast<int64_t>(v));
    } else {
        t.insert(key, v);
    }
}

// Writes the kJ key when the value survives the unit conversion exactly.
void put_kilo(toml::table &t, std::string_view kilo_key, std::string_view unit_key, double v) {
    if ((v / 1e3) * 1e3 == v) {
        put_number(t, kilo_key, v / 1e3);
    } else {
        put_number(t, unit_key, v);
    }
}

std::optional<double> get_energy(
    const toml::table &t, std::string_view kilo_key, std::string_view unit_key, const std::string &where) {
    auto k = get_number(t, kilo_key, where);
    auto j = get_number(t, unit_key, where);
    if (k && j) {
        throw ValidationError(where + ": both " + std::string(kilo_key) + " and " + std::string(unit_key) + " given");
    }
    if (k) {
        return *k * 1e3;
    }
    return j;
}

}  // namespace

std::string_view category_name(Category c) {
    for (const auto &[k, v] : kCategoryNames) {
        if (k == c) {
            return v;
        }
    }
    return "custom";
}

Category parse_category(std::string_view name) {
    for (const auto &[k, v] : kCategoryNames) {
        if (v == name) {
            return k;
        }
    }
    throw ValidationError("unknown component category '" + std::string(name) + "'");
}

std::string_view value_mode_name(ValueMode m) {
    return m == ValueMode::datasheet ? "datasheet" : "measured_preferred";
}

ValueMode parse_value_mode(std::string_view name) {
    if (name == "datasheet") {
        return ValueMode::datasheet;
    }
    if (name == "measured_preferred" || name == "measured") {
        return ValueMode::measured_preferred;
    }
    throw ValidationError("unknown value mode '" + std::string(name) + "'");
}

double effective_power(const ComponentSpec &c, ValueMode mode) {
    if (mode == ValueMode::measured_preferred && c.measured_power_W) {
        return *c.measured_power_W;
    }
    return c.power_W;
}

double effective_startup_energy(const ComponentSpec &c, ValueMode mode) {
    if (mode == ValueMode::measured_preferred && c.measured_startup_J) {
        return *c.measured_startup_J;
    }
    return c.startup_energy_J;
}

void validate_component(const ComponentSpec &c) {
    auto bad = [&](const std::string &what) {
        throw ValidationError("component '" + c.id + "': " + what);
    };
    if (c.id.empty()) {
        throw ValidationError("component with empty id");
    }
    auto finite_nonneg = [](double v) {
        return std::isfinite(v) && v >= 0;
    };
    if (!finite_nonneg(c.power_W)) {
        bad("power_W must be a non-negative number");
    }
    if (!finite_nonneg(c.startup_energy_J)) {
        bad("startup energy must be a non-negative number");
    }
    if (c.measured_power_W && !finite_nonneg(*c.measured_power_W)) {
        bad("measured_power_W must be a non-negative number");
    }
    if (c.measured_startup_J && !finite_nonneg(*c.measured_startup_J)) {
        bad("measured startup energy must be a non-negative number");
    }
    if (c.wavelength_nm && !(*c.wavelength_nm > 0 && std::isfinite(*c.wavelength_nm))) {
        bad("wavelength_nm must be positive");
    }
    bool is_detector = c.category == Category::detector || c.category == Category::bhd;
    if (is_detector != c.detection_efficiency.has_value()) {
        bad(is_detector ? "detectors need detection_efficiency"
                        : "detection_efficiency is only allowed on detectors");
    }
    if (c.detection_efficiency && !(*c.detection_efficiency >= 0 && *c.detection_efficiency <= 1)) {
        bad("detection_efficiency must lie in [0, 1]");
    }
}

Catalog::Catalog(std::map<std::string, ComponentSpec> components, std::map<double, double> fibers, ValueMode mode)
    : components_(std::move(components)), fibers_(std::move(fibers)), mode_(mode) {
    for (const auto &[id, c] : components_) {
        if (id != c.id) {
            throw ValidationError("component key '" + id + "' does not match its id '" + c.id + "'");
        }
        validate_component(c);
    }
    for (const auto &[wl, loss] : fibers_) {
        if (!(wl > 0) || !(loss >= 0) || !std::isfinite(loss)) {
            throw ValidationError("invalid fiber entry at " + std::to_string(wl) + " nm");
        }
    }
}

bool Catalog::contains(std::string_view id) const {
    return components_.find(std::string(id)) != components_.end();
}

const ComponentSpec &Catalog::at(std::string_view id) const {
    auto it = components_.find(std::string(id));
    if (it == components_.end()) {
        throw ValidationError("unknown component id '" + std::string(id) + "'");
    }
    return it->second;
}

double Catalog::power(std::string_view id) const {
    return effective_power(at(id), mode_);
}

double Catalog::startup_energy(std::string_view id) const {
    return effective_startup_energy(at(id), mode_);
}

double Catalog::fiber_loss_dB_per_km(double wavelength_nm) const {
    double best = std::numeric_limits<double>::infinity();
    double loss = 0;
    for (const auto &[wl, l] : fibers_) {
        double d = std::abs(wl - wavelength_nm);
        if (d < best) {
            best = d;
            loss = l;
        }
    }
    if (!(best <= kFiberMatchWindowNm)) {
        std::ostringstream ss;
        ss << "no fiber loss entry near " << wavelength_nm << " nm";
        throw ValidationError(ss.str());
    }
    return loss;
}

Catalog Catalog::with_value_mode(ValueMode mode) const {
    Catalog c = *this;
    c.mode_ = mode;
    return c;
}

const Catalog &builtin_catalog() {
    static const Catalog cat = make_builtin();
    return cat;
}

Catalog parse_catalog(std::string_view toml_text, const std::string &source_name) {
    toml::table root;
    try {
        root = toml::parse(toml_text, source_name);
    } catch (const toml::parse_error &e) {
        throw ParseError(source_name + ": " + std::string(e.description()), e.source().begin.line);
    }

    ValueMode mode = ValueMode::datasheet;
    if (const toml::node *n = root.get("value_mode")) {
        auto s = n->value<std::string>();
        if (!s) {
            throw ParseError("value_mode must be a string", n->source().begin.line);
        }
        try {
            mode = parse_value_mode(*s);
        } catch (const ValidationError &e) {
            throw ValidationError(e.what(), n->source().begin.line);
        }
    }

    std::map<std::string, ComponentSpec> comps;
    if (const toml::node *n = root.get("component")) {
        const toml::table *tbl = n->as_table();
        if (tbl == nullptr) {
            throw ParseError("'component' must be a table", n->source().begin.line);
        }
        for (const auto &[key, node] : *tbl) {
            const toml::table *ct = node.as_table();
            size_t line = node.source().begin.line;
            std::string id(key.str());
            if (ct == nullptr) {
                throw ParseError("component '" + id + "' must be a table", line);
            }
            std::string where = "component '" + id + "'";
            ComponentSpec c;
            c.id = id;
            c.label = id;
            try {
                auto cat = (*ct)["category"].value<std::string>();
                if (!cat) {
                    throw ValidationError(where + ": missing category");
                }
                c.category = parse_category(*cat);
                c.wavelength_nm = get_number(*ct, "wavelength_nm", where);
                c.startup_energy_J = get_energy(*ct, "startup_energy_kJ", "startup_energy_J", where).value_or(0);
                auto p = get_number(*ct, "power_W", where);
                if (!p) {
                    throw ValidationError(where + ": missing power_W");
                }
                c.power_W = *p;
                c.measured_power_W = get_number(*ct, "measured_power_W", where);
                c.measured_startup_J = get_energy(*ct, "measured_startup_kJ", "measured_startup_J", where);
                c.detection_efficiency = get_number(*ct, "detection_efficiency", where);
                c.assumed = (*ct)["assumed"].value_or(false);
                c.startup_integrated = (*ct)["startup_integrated"].value_or(false);
                if (auto lbl = (*ct)["label"].value<std::string>()) {
                    c.label = *lbl;
                }
                validate_component(c);
            } catch (const ValidationError &e) {
                throw ValidationError(e.what(), e.line ? e.line : line);
            }
            if (!comps.emplace(id, std::move(c)).second) {
                throw ValidationError("duplicate component id '" + id + "'", line);
            }
        }
    }

    std::map<double, double> fibers;
    if (const toml::node *n = root.get("fiber")) {
        const toml::table *tbl = n->as_table();
        if (tbl == nullptr) {
            throw ParseError("'fiber' must be a table", n->source().begin.line);
        }
        for (const auto &[key, node] : *tbl) {
            size_t line = node.source().begin.line;
            double wl;
            try {
                size_t used = 0;
                wl = std::stod(std::string(key.str()), &used);
                if (used != key.str().size()) {
                    throw std::invalid_argument("trailing");
                }
            } catch (const std::exception &) {
                throw ParseError("fiber key '" + std::string(key.str()) + "' is not a wavelength", line);
            }
            auto loss = node.value<double>();
            if (!loss) {
                throw ParseError("fiber loss must be a number", line);
            }
            if (!(*loss >= 0)) {
                throw ValidationError("fiber loss must be non-negative", line);
            }
            fibers[wl] = *loss;
        }
    }
    return Catalog(std::move(comps), std::move(fibers), mode);
}

Catalog load_catalog(const std::string &source) {
    if (source == "builtin") {
        return builtin_catalog();
    }
    std::ifstream in(source, std::ios::binary);
    if (!in) {
        throw IoError("cannot open catalog file '" + source + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_catalog(buf.str(), source);
}

std::string serialize_catalog(const Catalog &cat) {
    toml::table root;
    root.insert("value_mode", std::string(value_mode_name(cat.value_mode())));
    toml::table comps;
    for (const auto &[id, c] : cat.components()) {
        toml::table t;
        t.insert("category", std::string(category_name(c.category)));
        t.insert("label", c.label);
        if (c.wavelength_nm) {
            put_number(t, "wavelength_nm", *c.wavelength_nm);
        }
        put_kilo(t, "startup_energy_kJ", "startup_energy_J", c.startup_energy_J);
        put_number(t, "power_W", c.power_W);
        if (c.measured_power_W) {
            put_number(t, "measured_power_W", *c.measured_power_W);
        }
        if (c.measured_startup_J) {
            put_kilo(t, "measured_startup_kJ", "measured_startup_J", *c.measured_startup_J);
        }
        if (c.detection_efficiency) {
            put_number(t, "detection_efficiency", *c.detection_efficiency);
        }
        if (c.assumed) {
            t.insert("assumed", true);
        }
        if (c.startup_integrated) {
            t.insert("startup_integrated", true);
        }
        comps.insert(id, std::move(t));
    }
    root.insert("component", std::move(comps));
    toml::table fibers;
    for (const auto &[wl, loss] : cat.fibers()) {
        std::ostringstream k;
        k << wl;
        put_number(fibers, k.str(), loss);
    }
    root.insert("fiber", std::move(fibers));
    std::ostringstream out;
    out << root << "\n";
    return out.str();
}

}  // namespace qnet
