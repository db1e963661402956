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
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qnet/catalog.hpp"
#include "qnet/cli/reproduce.hpp"
#include "qnet/cli/scenario.hpp"
#include "qnet/cli/svg.hpp"
#include "qnet/cli/table.hpp"
#include "qnet/error.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitIo = 3;

using qnet::cli::format_number;

qnet::Catalog resolve_catalog(const std::string &flag, bool measured) {
    std::string source = "builtin";
    if (!flag.empty()) {
        source = flag;
    } else if (const char *env = std::getenv("QNET_CATALOG"); env != nullptr && *env != '\0') {
        source = env;
    }
    qnet::Catalog cat = qnet::load_catalog(source);
    return measured ? cat.with_value_mode(qnet::ValueMode::measured_preferred) : cat;
}

std::string opt_number(const std::optional<double> &v) {
    return v ? format_number(*v) : "";
}

int cmd_catalog_list(const qnet::Catalog &cat) {
    qnet::cli::CsvWriter csv({"id", "category", "wavelength_nm", "power_W", "startup_J", "detection_efficiency"});
    for (const auto &[id, c] : cat.components()) {
        csv.row({id, std::string(qnet::category_name(c.category)), opt_number(c.wavelength_nm),
                 format_number(cat.power(id)), format_number(cat.startup_energy(id)),
                 opt_number(c.detection_efficiency)});
    }
    std::cout << csv.str();
    return kExitOk;
}

int cmd_catalog_show(const qnet::Catalog &cat, const std::string &id) {
    const qnet::ComponentSpec &c = cat.at(id);
    std::cout << "id = " << c.id << "\n";
    std::cout << "category = " << qnet::category_name(c.category) << "\n";
    if (!c.label.empty()) {
        std::cout << "label = " << c.label << "\n";
    }
    if (c.wavelength_nm) {
        std::cout << "wavelength_nm = " << format_number(*c.wavelength_nm) << "\n";
    }
    std::cout << "power_W = " << format_number(c.power_W) << "\n";
    std::cout << "startup_energy_J = " << format_number(c.startup_energy_J) << "\n";
    if (c.measured_power_W) {
        std::cout << "measured_power_W = " << format_number(*c.measured_power_W) << "\n";
    }
    if (c.measured_startup_J) {
        std::cout << "measured_startup_J = " << format_number(*c.measured_startup_J) << "\n";
    }
    if (c.detection_efficiency) {
        std::cout << "detection_efficiency = " << format_number(*c.detection_efficiency) << "\n";
    }
    std::cout << "startup_integrated = " << (c.startup_integrated ? "true" : "false") << "\n";
    std::cout << "assumed = " << (c.assumed ? "true" : "false") << "\n";
    std::cout << "value_mode = " << qnet::value_mode_name(cat.value_mode()) << "\n";
    std::cout << "effective_power_W = " << format_number(cat.power(id)) << "\n";
    std::cout << "effective_startup_J = " << format_number(cat.startup_energy(id)) << "\n";
    return kExitOk;
}

void write_text(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << text)) {
        throw qnet::IoError("cannot write '" + path + "'");
    }
}

int cmd_run(
    const qnet::Catalog &cat, const std::string &path, bool measured, const std::string &format,
    const std::string &svg) {
    qnet::cli::Scenario sc = qnet::cli::load_scenario(path);
    if (measured) {
        sc.value_mode = qnet::ValueMode::measured_preferred;
    }
    if (!format.empty()) {
        sc.output.format = format;
    }
    if (!svg.empty()) {
        sc.output.svg = svg;
    }
    qnet::cli::SweepTable t = qnet::cli::run_scenario(sc, cat);
    std::cout << (sc.output.format == "json" ? qnet::cli::sweep_to_json(t) : qnet::cli::sweep_to_csv(t));
    if (sc.output.svg) {
        qnet::cli::Series s{std::string(qnet::family_name(sc.protocol.family)), {}};
        for (const auto &r : t.rows) {
            s.points.emplace_back(r.x, r.feasible ? r.report.total_J : std::numeric_limits<double>::infinity());
        }
        qnet::cli::AxesSpec axes{"Energy to target", t.parameter, "total energy (J)", false, true};
        qnet::cli::SvgDocument doc = qnet::cli::emit_svg({s}, axes);
        if (doc.dropped_points > 0) {
            std::cerr << "warning: " << doc.dropped_points << " points not plotted\n";
        }
        write_text(*sc.output.svg, doc.text);
    }
    if (t.all_infeasible()) {
        std::cerr << "error: every sweep point is infeasible (zero secret key rate)\n";
        return kExitInfeasible;
    }
    return kExitOk;
}

int cmd_reproduce(const qnet::Catalog &cat, const std::string &exhibit, const std::string &out, const std::string &preset) {
    qnet::cli::ReproduceOptions opt;
    if (!preset.empty()) {
        opt.dv_preset = qnet::parse_preset(preset);
    }
    qnet::cli::ReproduceResult res = qnet::cli::reproduce(exhibit, out, cat, opt);
    for (const auto &f : res.files) {
        std::cout << "wrote " << f.string() << "\n";
    }
    std::cout << res.report;
    return res.has_check && !res.pass ? kExitValidation : kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Energy consumption of quantum key distribution networks"};
    app.require_subcommand(1);
    std::string catalog_path;
    bool measured = false;
    app.add_option("--catalog", catalog_path, "Component catalog TOML file (default: builtin)");
    app.add_flag("--measured", measured, "Prefer measured component values");

    auto *catalog = app.add_subcommand("catalog", "Inspect the component catalog");
    catalog->require_subcommand(1);
    auto *list = catalog->add_subcommand("list", "List all components");
    std::string show_id;
    auto *show = catalog->add_subcommand("show", "Show one component");
    show->add_option("id", show_id, "Component id")->required();

    std::string scenario_path;
    std::string format;
    std::string svg;
    auto *run = app.add_subcommand("run", "Evaluate a scenario file");
    run->add_option("scenario", scenario_path, "Scenario TOML file")->required();
    run->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    run->add_option("--svg", svg, "Write an SVG plot to this path");

    std::string exhibit;
    std::string out_dir;
    std::string preset;
    auto *repro = app.add_subcommand("reproduce", "Write the data and plot of a published exhibit");
    repro->add_option("exhibit", exhibit, "Exhibit name")->required()->check(CLI::IsMember(qnet::cli::exhibit_names()));
    repro->add_option("--out", out_dir, "Output directory")->required();
    repro->add_option("--preset", preset, "DV parameter preset")
        ->check(CLI::IsMember({"baseline_table2", "table4_repro"}));

    for (auto *sub : {catalog, list, show, run, repro}) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitValidation;
    }

    try {
        qnet::Catalog cat = resolve_catalog(catalog_path, measured);
        if (list->parsed()) {
            return cmd_catalog_list(cat);
        }
        if (show->parsed()) {
            return cmd_catalog_show(cat, show_id);
        }
        if (run->parsed()) {
            return cmd_run(cat, scenario_path, measured, format, svg);
        }
        if (repro->parsed()) {
            return cmd_reproduce(cat, exhibit, out_dir, preset);
        }
    } catch (const qnet::IoError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const qnet::Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitValidation;
}
