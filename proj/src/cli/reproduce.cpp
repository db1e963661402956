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

#include "qnet/cli/reproduce.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "qnet/cli/scenario.hpp"
#include "qnet/cli/svg.hpp"
#include "qnet/cli/table.hpp"
#include "qnet/error.hpp"

namespace qnet::cli {

namespace {

constexpr double kTargetBits = 1e9;

struct Curve {
    std::string name;
    ProtocolSpec spec;
    ValueMode mode = ValueMode::datasheet;
};

struct Exhibit {
    std::string title;
    std::string parameter;
    std::string x_label;
    double from = 0;
    double to = 0;
    int steps = 2;
    // Selects the plotted column from a report.
    bool plot_ee = false;
    bool y_log = true;
    std::vector<Curve> curves;
};

ProtocolSpec dv(Family f, Preset preset, double wavelength = 1550, DetectorKind det = DetectorKind::snspd) {
    ProtocolSpec s;
    s.family = f;
    s.preset = preset;
    s.wavelength_nm = wavelength;
    s.detector = det;
    return s;
}

ProtocolSpec cv(Family f, DetectionVariant v) {
    ProtocolSpec s;
    s.family = f;
    s.encoding = Encoding::quadrature;
    s.detector = DetectorKind::bhd;
    s.detection_variant = v;
    return s;
}

ProtocolSpec multi(Family f, Preset preset, double distance_km) {
    ProtocolSpec s;
    s.family = f;
    s.preset = preset;
    s.n_parties = 3;
    s.distance_km = distance_km;
    if (f == Family::cv_cka || f == Family::ncv_qkd) {
        s.encoding = Encoding::quadrature;
        s.detector = DetectorKind::bhd;
    }
    return s;
}

void write_file(const std::filesystem::path &p, const std::string &text, ReproduceResult &res) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write '" + p.string() + "'");
    }
    out << text;
    if (!out) {
        throw IoError("failed writing '" + p.string() + "'");
    }
    res.files.push_back(p);
}

Exhibit make_exhibit(std::string_view name, Preset pre) {
    Exhibit e;
    e.parameter = "distance_km";
    e.x_label = "distance (km)";
    e.from = 0;
    e.to = 150;
    e.steps = 151;
    if (name == "fig_ee") {
        e.title = "Energy efficiency of DV QKD";
        e.from = 1;
        e.steps = 150;
        e.plot_ee = true;
        e.curves = {{"BB84", dv(Family::bb84, pre)}, {"E91", dv(Family::e91, pre)}, {"MDI", dv(Family::mdi, pre)}};
    } else if (name == "fig_dv_1gbit") {
        e.title = "Energy for a 1 Gbit key";
        e.curves = {{"BB84", dv(Family::bb84, pre)}, {"E91", dv(Family::e91, pre)}, {"MDI", dv(Family::mdi, pre)}};
    } else if (name == "fig_bb84_qber") {
        e.title = "BB84 energy for a 1 Gbit key at several QBER values";
        for (double q : {0.01, 0.03, 0.05, 0.08}) {
            ProtocolSpec s = dv(Family::bb84, pre);
            s.overrides["qber"] = q;
            e.curves.push_back({"QBER " + format_number(q), s});
        }
    } else if (name == "fig_detectors") {
        e.title = "BB84 energy by detector";
        e.to = 200;
        e.steps = 201;
        e.curves = {{"SNSPD", dv(Family::bb84, pre)},
                    {"InGaAs APD", dv(Family::bb84, pre, 1550, DetectorKind::ingaas_apd)}};
    } else if (name == "fig_wavelengths") {
        e.title = "BB84 energy by wavelength";
        e.to = 20;
        e.steps = 201;
        e.curves = {{"1550 nm SNSPD", dv(Family::bb84, pre)},
                    {"780 nm Si APD", dv(Family::bb84, pre, 780, DetectorKind::si_apd)},
                    {"532 nm Si APD", dv(Family::bb84, pre, 532, DetectorKind::si_apd)}};
    } else if (name == "fig_cv_gauss") {
        e.title = "Gaussian CV QKD energy by detection variant";
        e.to = 100;
        e.steps = 101;
        for (auto v : {DetectionVariant::hom_1p, DetectionVariant::hom_2p, DetectionVariant::het_1p,
                       DetectionVariant::het_2p}) {
            e.curves.push_back({std::string(variant_name(v)), cv(Family::cv_gaussian, v)});
        }
    } else if (name == "fig_cv_psk") {
        e.title = "PSK and Gaussian CV QKD energy";
        e.to = 100;
        e.steps = 101;
        e.curves.push_back({"Gaussian", cv(Family::cv_gaussian, DetectionVariant::hom_1p)});
        for (double m : {4.0, 8.0, 16.0}) {
            ProtocolSpec s = cv(Family::cv_psk, DetectionVariant::hom_1p);
            s.overrides["m"] = m;
            e.curves.push_back({std::to_string(static_cast<int>(m)) + "-PSK", s});
        }
    } else if (name == "fig_cv_vs_dv") {
        e.title = "CV QKD with DSP cost against BB84";
        e.to = 100;
        e.steps = 101;
        ProtocolSpec c = cv(Family::cv_gaussian, DetectionVariant::het_2p);
        c.overrides["tau_dsp"] = 0.018;
        e.curves = {{"CV het 2P", c},
                    {"BB84 SNSPD", dv(Family::bb84, pre)},
                    {"BB84 InGaAs APD", dv(Family::bb84, pre, 1550, DetectorKind::ingaas_apd)}};
    } else if (name == "fig_alltoall") {
        e.title = "GHZ against all-to-all pairs";
        e.parameter = "n_parties";
        e.x_label = "parties";
        e.from = 3;
        e.to = 12;
        e.steps = 10;
        ProtocolSpec pairs = multi(Family::alltoall_pairs, pre, 0);
        pairs.pairwise_distance_km = 10;
        e.curves = {{"GHZ", multi(Family::alltoall_ghz, pre, 10)}, {"All-to-all pairs", pairs}};
    } else if (name == "fig_cka_dv") {
        e.title = "DV conference key agreement";
        e.parameter = "n_parties";
        e.x_label = "parties";
        e.from = 3;
        e.to = 12;
        e.steps = 10;
        e.curves = {{"GHZ CKA", multi(Family::ghz_cka, pre, 10)},
                    {"Bell CKA", multi(Family::bell_cka, pre, 10)},
                    {"BB84 CKA", multi(Family::bb84_cka, pre, 10)}};
    } else if (name == "fig_cka_cv") {
        e.title = "CV conference key agreement";
        e.parameter = "n_parties";
        e.x_label = "parties";
        e.from = 3;
        e.to = 12;
        e.steps = 10;
        e.curves = {{"CV CKA", multi(Family::cv_cka, pre, 0.1)}, {"Parallel CV QKD", multi(Family::ncv_qkd, pre, 0.1)}};
    } else if (name == "fig_timebin") {
        e.title = "Polarization against time-bin encoding";
        for (auto f : {Family::bb84, Family::e91, Family::mdi}) {
            ProtocolSpec tb = dv(f, pre);
            tb.encoding = Encoding::time_bin;
            std::string n(family_name(f));
            e.curves.push_back({n + " polarization", dv(f, pre)});
            e.curves.push_back({n + " time-bin", tb});
        }
    } else if (name == "fig_measured") {
        e.title = "Datasheet against measured component values";
        for (auto f : {Family::bb84, Family::e91, Family::mdi}) {
            std::string n(family_name(f));
            e.curves.push_back({n + " datasheet", dv(f, pre)});
            e.curves.push_back({n + " measured", dv(f, pre), ValueMode::measured_preferred});
        }
    } else {
        throw ValidationError("unknown exhibit '" + std::string(name) + "'");
    }
    return e;
}

void run_curve_exhibit(
    const std::string &name, const Exhibit &e, const std::filesystem::path &dir, const Catalog &cat,
    ReproduceResult &res) {
    std::vector<std::string> header = sweep_header(e.parameter);
    header.insert(header.begin(), "series");
    CsvWriter csv(header);
    std::vector<Series> series;
    for (const auto &c : e.curves) {
        Scenario sc;
        sc.protocol = c.spec;
        sc.target_bits = kTargetBits;
        sc.value_mode = c.mode;
        sc.sweep = SweepSpec{e.parameter, e.from, e.to, e.steps, false};
        SweepTable t = run_scenario(sc, cat);
        std::string body = sweep_to_csv(t);
        // Re-emit each data line with the series name in front.
        size_t pos = body.find('\n') + 1;
        while (pos < body.size()) {
            size_t end = body.find('\n', pos);
            std::vector<std::string> fields{c.name};
            std::string line = body.substr(pos, end - pos);
            size_t s = 0;
            while (true) {
                size_t comma = line.find(',', s);
                fields.push_back(line.substr(s, comma - s));
                if (comma == std::string::npos) {
                    break;
                }
                s = comma + 1;
            }
            csv.row(fields);
            pos = end + 1;
        }
        Series ser{c.name, {}};
        for (const auto &r : t.rows) {
            double y = e.plot_ee ? r.report.ee_bits_per_J
                                 : (r.feasible ? r.report.total_J : std::numeric_limits<double>::infinity());
            ser.points.emplace_back(r.x, y);
        }
        series.push_back(std::move(ser));
    }
    write_file(dir / (name + ".csv"), csv.str(), res);
    AxesSpec axes{e.title, e.x_label, e.plot_ee ? "secret bits per joule" : "energy for 1 Gbit (J)", false, e.y_log};
    write_file(dir / (name + ".svg"), emit_svg(series, axes).text, res);
}

void run_table4(const std::filesystem::path &dir, const Catalog &cat, ReproduceResult &res) {
    auto rows = table4_rows(cat);
    CsvWriter csv({"protocol", "power_W", "secret_kbps", "expected_power_W", "expected_kbps", "power_ok", "rate_ok"});
    std::vector<Bar> bars;
    res.has_check = true;
    for (const auto &r : rows) {
        csv.row({r.protocol, format_number(r.power_W), format_number(r.secret_kbps), format_number(r.expected_power_W),
                 format_number(r.expected_kbps), r.power_ok ? "true" : "false", r.rate_ok ? "true" : "false"});
        bars.push_back({r.protocol, r.power_W});
        bool ok = r.power_ok && r.rate_ok;
        res.pass = res.pass && ok;
        res.report += r.protocol + ": power " + format_number(r.power_W) + " W (expected " +
                      format_number(r.expected_power_W) + "), rate " + format_number(r.secret_kbps) +
                      " kbit/s (expected " + format_number(r.expected_kbps) + ") " + (ok ? "PASS" : "FAIL") + "\n";
    }
    res.report += std::string("table4 ") + (res.pass ? "PASS" : "FAIL") + "\n";
    write_file(dir / "table4.csv", csv.str(), res);
    write_file(dir / "table4.svg", emit_bar_svg(bars, "Power at 40 km", "power (W)"), res);
    write_file(dir / "table4_check.txt", res.report, res);
}

void run_breakdown(const std::filesystem::path &dir, const Catalog &cat, Preset pre, ReproduceResult &res) {
    CsvWriter csv({"protocol", "id", "group", "multiplicity", "watts", "share"});
    std::vector<Bar> bars;
    for (auto f : {Family::bb84, Family::e91, Family::mdi}) {
        ProtocolSpec s = dv(f, pre);
        s.distance_km = 40;
        ProtocolSetup setup = build_protocol(s, cat);
        std::string n(family_name(f));
        for (const auto &b : power_breakdown(setup, cat)) {
            csv.row({n, b.id, std::string(group_name(b.group)), std::to_string(b.multiplicity), format_number(b.watts),
                     format_number(b.share)});
            bars.push_back({n + " " + b.id, b.watts});
        }
    }
    write_file(dir / "fig_breakdown.csv", csv.str(), res);
    write_file(dir / "fig_breakdown.svg", emit_bar_svg(bars, "Power breakdown", "power (W)"), res);
}

}  // namespace

const std::vector<std::string> &exhibit_names() {
    static const std::vector<std::string> names{
        "table4",         "fig_ee",       "fig_dv_1gbit", "fig_bb84_qber", "fig_detectors",
        "fig_wavelengths", "fig_cv_gauss", "fig_cv_psk",   "fig_cv_vs_dv",  "fig_alltoall",
        "fig_cka_dv",     "fig_cka_cv",   "fig_timebin",  "fig_measured",  "fig_breakdown"};
    return names;
}

std::vector<Table4Row> table4_rows(const Catalog &cat) {
    struct Expected {
        Family family;
        const char *name;
        double power_W;
        double kbps;
    };
    const Expected exp[] = {
        {Family::bb84, "BB84", 3916, 1092.734},
        {Family::e91, "E91", 8277, 934.287},
        {Family::mdi, "MDI", 4070, 46.714},
    };
    std::vector<Table4Row> rows;
    for (const auto &x : exp) {
        ProtocolSpec s = dv(x.family, Preset::table4_repro);
        s.distance_km = 40;
        ProtocolSetup setup = build_protocol(s, cat);
        Table4Row r;
        r.protocol = x.name;
        r.power_W = setup_power(setup, cat);
        r.secret_kbps = setup.rate_model.evaluate().secret_bps / 1e3;
        r.expected_power_W = x.power_W;
        r.expected_kbps = x.kbps;
        r.power_ok = r.power_W == x.power_W;
        r.rate_ok = std::abs(r.secret_kbps - x.kbps) <= 1e-3 * x.kbps;
        rows.push_back(r);
    }
    return rows;
}

ReproduceResult reproduce(
    std::string_view exhibit, const std::filesystem::path &out_dir, const Catalog &cat, const ReproduceOptions &opt) {
    const auto &names = exhibit_names();
    if (std::find(names.begin(), names.end(), exhibit) == names.end()) {
        throw ValidationError("unknown exhibit '" + std::string(exhibit) + "'");
    }
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        throw IoError("cannot create '" + out_dir.string() + "': " + ec.message());
    }
    ReproduceResult res;
    if (exhibit == "table4") {
        run_table4(out_dir, cat, res);
    } else if (exhibit == "fig_breakdown") {
        run_breakdown(out_dir, cat, opt.dv_preset, res);
    } else {
        run_curve_exhibit(std::string(exhibit), make_exhibit(exhibit, opt.dv_preset), out_dir, cat, res);
    }
    return res;
}

}  // namespace qnet::cli
