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

#ifndef QNET_CATALOG_HPP
#define QNET_CATALOG_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qnet {

enum class Category {
    laser,
    detector,
    modulator_am,
    modulator_iq,
    oven,
    waveplates,
    interferometry,
    polarization_controller,
    powermeter,
    optical_switch,
    adc,
    dac,
    computer,
    time_tagger,
    bhd,
    photodiode,
    custom,
};

std::string_view category_name(Category c);
Category parse_category(std::string_view name);

enum class ValueMode { datasheet, measured_preferred };

std::string_view value_mode_name(ValueMode m);
ValueMode parse_value_mode(std::string_view name);

struct ComponentSpec {
    std::string id;
    Category category = Category::custom;
    std::optional<double> wavelength_nm;
    double startup_energy_J = 0;
    double power_W = 0;
    std::optional<double> measured_startup_J;
    std::optional<double> measured_power_W;
    std::optional<double> detection_efficiency;
    bool startup_integrated = false;
    bool assumed = false;
    std::string label;

    bool operator==(const ComponentSpec &other) const = default;
};

double effective_power(const ComponentSpec &c, ValueMode mode);
double effective_startup_energy(const ComponentSpec &c, ValueMode mode);

/// Throws ValidationError when an invariant of the component is violated.
void validate_component(const ComponentSpec &c);

class Catalog {
   public:
    Catalog() = default;
    Catalog(std::map<std::string, ComponentSpec> components, std::map<double, double> fibers,
            ValueMode mode = ValueMode::datasheet);

    const std::map<std::string, ComponentSpec> &components() const {
        return components_;
    }
    const std::map<double, double> &fibers() const {
        return fibers_;
    }
    ValueMode value_mode() const {
        return mode_;
    }

    bool contains(std::string_view id) const;
    const ComponentSpec &at(std::string_view id) const;

    double power(std::string_view id) const;
    double startup_energy(std::string_view id) const;

    /// Loss of the fiber entry closest to `wavelength_nm` (within 60 nm).
    double fiber_loss_dB_per_km(double wavelength_nm) const;

    /// Same data, different value mode.
    Catalog with_value_mode(ValueMode mode) const;

    bool operator==(const Catalog &other) const = default;

   private:
    std::map<std::string, ComponentSpec> components_;
    std::map<double, double> fibers_;
    ValueMode mode_ = ValueMode::datasheet;
};

const Catalog &builtin_catalog();

/// `source` is either "builtin" or a path to a TOML catalog file.
Catalog load_catalog(const std::string &source);
Catalog parse_catalog(std::string_view toml_text, const std::string &source_name = "<string>");
std::string serialize_catalog(const Catalog &cat);

}  // namespace qnet

#endif
