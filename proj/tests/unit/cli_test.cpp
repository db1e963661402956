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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "qnet/cli/reproduce.hpp"
#include "qnet/cli/scenario.hpp"
#include "qnet/cli/svg.hpp"
#include "qnet/cli/table.hpp"
#include "qnet/error.hpp"

using namespace qnet;
using namespace qnet::cli;

namespace {

size_t count(const std::string &s, const std::string &needle) {
    size_t n = 0;
    for (size_t p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) {
        n++;
    }
    return n;
}

std::string slurp(const std::filesystem::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream b;
    b << in.rdbuf();
    return b.str();
}

std::filesystem::path scratch(const std::string &name) {
    auto p = std::filesystem::temp_directory_path() / ("qnet_cli_test_" + name);
    std::filesystem::remove_all(p);
    return p;
}

std::vector<std::string> split(const std::string &line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) {
        out.push_back(f);
    }
    return out;
}

}  // namespace

TEST(Cli, FormatNumber) {
    EXPECT_EQ(format_number(0), "0");
    EXPECT_EQ(format_number(3916), "3916");
    EXPECT_EQ(format_number(0.5), "0.5");
    EXPECT_EQ(format_number(1e6), "1.000000000e+06");
    EXPECT_EQ(format_number(2.5e-4), "2.500000000e-04");
    EXPECT_EQ(format_number(-0.01), "-0.01");
    EXPECT_EQ(format_number(INFINITY), "inf");
}

TEST(Cli, CsvWriterChecksWidth) {
    CsvWriter w({"a", "b"});
    w.row({"1", "2"});
    EXPECT_EQ(w.str(), "a,b\n1,2\n");
    EXPECT_THROW(w.row({"1"}), ValidationError);
}

TEST(Cli, HeaderMatchesReportFields) {
    auto h = sweep_header("distance_km");
    auto j = nlohmann::json::parse(to_json(EnergyReport{}));
    for (size_t i = 1; i + 1 < h.size(); i++) {
        EXPECT_TRUE(j.contains(h[i])) << h[i];
    }
    EXPECT_EQ(h.back(), "status");
}

TEST(Cli, ParsesScenarioFile) {
    Scenario sc = load_scenario(QNET_DATA_DIR "/bb84_sweep.toml");
    EXPECT_EQ(sc.protocol.family, Family::bb84);
    EXPECT_EQ(sc.protocol.preset, Preset::table4_repro);
    ASSERT_TRUE(sc.sweep.has_value());
    EXPECT_EQ(sc.sweep->steps, 100);
    EXPECT_EQ(sc.target_bits, 1e9);

    Scenario c = load_scenario(QNET_DATA_DIR "/cv_het.toml");
    EXPECT_EQ(c.protocol.detector, DetectorKind::bhd);
    EXPECT_EQ(std::get<double>(c.protocol.overrides.at("tau_dsp")), 0.018);
}

TEST(Cli, StepsOneRejected) {
    std::stringstream ss(slurp(QNET_DATA_DIR "/steps_one.toml"));
    std::string line;
    size_t steps_line = 0;
    for (size_t n = 1; std::getline(ss, line); n++) {
        if (line.rfind("steps", 0) == 0) {
            steps_line = n;
        }
    }
    try {
        load_scenario(QNET_DATA_DIR "/steps_one.toml");
        FAIL();
    } catch (const ValidationError &e) {
        EXPECT_EQ(e.line, steps_line);
        EXPECT_GT(steps_line, 0u);
    }
}

TEST(Cli, UnknownKeyReportsLine) {
    const char *text =
        "[protocol]\n"
        "family = \"bb84\"\n"
        "colour = \"blue\"\n";
    try {
        parse_scenario(text);
        FAIL();
    } catch (const ValidationError &e) {
        EXPECT_EQ(e.line, 3u);
        EXPECT_NE(std::string(e.what()).find("colour"), std::string::npos);
    }
}

TEST(Cli, BadFamilyReportsLine) {
    const char *text =
        "target_bits = 1e6\n"
        "[protocol]\n"
        "family = \"b92\"\n";
    try {
        parse_scenario(text);
        FAIL();
    } catch (const ValidationError &e) {
        EXPECT_EQ(e.line, 3u);
    }
}

TEST(Cli, BadOverrideReportsLine) {
    const char *text =
        "[protocol]\n"
        "family = \"bb84\"\n"
        "[protocol.overrides]\n"
        "mu = 0.1\n"
        "qber = 0.9\n";
    try {
        parse_scenario(text);
        FAIL();
    } catch (const ValidationError &e) {
        EXPECT_EQ(e.line, 5u);
    }
}

TEST(Cli, SyntaxErrorReportsLine) {
    try {
        parse_scenario("[protocol]\nfamily = \n");
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line, 2u);
    }
}

TEST(Cli, MissingScenarioIsIoError) {
    EXPECT_THROW(load_scenario("/nonexistent/scenario.toml"), IoError);
}

TEST(Cli, Bb84SweepIsMonotone) {
    SweepTable t = run_scenario(load_scenario(QNET_DATA_DIR "/bb84_sweep.toml"), builtin_catalog());
    ASSERT_EQ(t.rows.size(), 100u);
    EXPECT_EQ(t.rows.front().x, 1);
    EXPECT_EQ(t.rows.back().x, 200);
    for (size_t i = 1; i < t.rows.size(); i++) {
        EXPECT_GE(t.rows[i].report.total_J, t.rows[i - 1].report.total_J);
    }
    std::string csv = sweep_to_csv(t);
    EXPECT_EQ(count(csv, "\n"), 101u);
    EXPECT_EQ(csv, sweep_to_csv(run_scenario(load_scenario(QNET_DATA_DIR "/bb84_sweep.toml"), builtin_catalog())));
}

TEST(Cli, InfeasiblePointsBecomeRows) {
    const char *text =
        "[protocol]\n"
        "family = \"bb84\"\n"
        "[sweep]\n"
        "parameter = \"qber\"\n"
        "from = 0.01\n"
        "to = 0.2\n"
        "steps = 5\n";
    SweepTable t = run_scenario(parse_scenario(text), builtin_catalog());
    ASSERT_EQ(t.rows.size(), 5u);
    EXPECT_TRUE(t.rows.front().feasible);
    EXPECT_FALSE(t.rows.back().feasible);
    EXPECT_FALSE(t.all_infeasible());
    std::string csv = sweep_to_csv(t);
    EXPECT_EQ(count(csv, "infeasible"), 2u);
    auto j = nlohmann::json::parse(sweep_to_json(t));
    EXPECT_EQ(j["rows"][4]["status"], "infeasible");
    EXPECT_TRUE(j["rows"][4]["total_J"].is_null());
}

TEST(Cli, NPartiesSweep) {
    const char *text =
        "[protocol]\n"
        "family = \"ghz_cka\"\n"
        "n_parties = 3\n"
        "distance_km = 10\n"
        "[sweep]\n"
        "parameter = \"n_parties\"\n"
        "from = 3\n"
        "to = 8\n"
        "steps = 6\n";
    SweepTable t = run_scenario(parse_scenario(text), builtin_catalog());
    ASSERT_EQ(t.rows.size(), 6u);
    for (size_t i = 0; i < 6; i++) {
        EXPECT_EQ(t.rows[i].x, 3.0 + i);
    }
}

TEST(Cli, SvgTwoPoints) {
    SvgDocument d = emit_svg({{"s", {{1, 1}, {2, 3}}}}, {"t", "x", "y", false, false});
    EXPECT_EQ(count(d.text, "<polyline"), 1u);
    size_t p = d.text.find("points=\"");
    size_t e = d.text.find('"', p + 8);
    std::string pts = d.text.substr(p + 8, e - p - 8);
    EXPECT_EQ(count(pts, ","), 2u);
    EXPECT_EQ(d.dropped_points, 0);
    EXPECT_EQ(d.text.find("href"), std::string::npos);
}

TEST(Cli, SvgLogAxisDropsZero) {
    SvgDocument d = emit_svg({{"s", {{1, 0}, {2, 3}, {3, 5}}}}, {"t", "x", "y", false, true});
    EXPECT_EQ(d.dropped_points, 1);
    EXPECT_NE(d.text.find("dropped_points=1"), std::string::npos);
}

TEST(Cli, SvgNeedsData) {
    EXPECT_THROW(emit_svg({}, {}), ValidationError);
    EXPECT_THROW(emit_svg({{"s", {{1, 1}}}}, {}), ValidationError);
}

TEST(Cli, SvgLegendHasSeriesNames) {
    SvgDocument d = emit_svg({{"A<1>", {{1, 1}, {2, 2}}}, {"B", {{1, 2}, {2, 1}}}}, {"t", "x", "y", true, true});
    EXPECT_EQ(count(d.text, "<polyline"), 2u);
    EXPECT_NE(d.text.find("A&lt;1&gt;"), std::string::npos);
}

TEST(Cli, ReproduceTable4) {
    auto dir = scratch("table4");
    ReproduceResult r = reproduce("table4", dir, builtin_catalog());
    EXPECT_TRUE(r.has_check);
    EXPECT_TRUE(r.pass) << r.report;
    EXPECT_TRUE(std::filesystem::exists(dir / "table4.csv"));
    EXPECT_TRUE(std::filesystem::exists(dir / "table4.svg"));
    for (const auto &row : table4_rows(builtin_catalog())) {
        EXPECT_TRUE(row.power_ok && row.rate_ok) << row.protocol;
    }
}

TEST(Cli, ReproduceIsDeterministic) {
    auto a = scratch("det_a");
    auto b = scratch("det_b");
    reproduce("fig_ee", a, builtin_catalog());
    reproduce("fig_ee", b, builtin_catalog());
    EXPECT_EQ(slurp(a / "fig_ee.csv"), slurp(b / "fig_ee.csv"));
    EXPECT_EQ(slurp(a / "fig_ee.svg"), slurp(b / "fig_ee.svg"));
    EXPECT_EQ(count(slurp(a / "fig_ee.svg"), "<polyline"), 3u);
}

TEST(Cli, ReproduceBreakdownShare) {
    auto dir = scratch("breakdown");
    reproduce("fig_breakdown", dir, builtin_catalog());
    std::stringstream ss(slurp(dir / "fig_breakdown.csv"));
    std::string line;
    bool found = false;
    while (std::getline(ss, line)) {
        auto f = split(line);
        if (f[0] == "bb84" && f[1] == "snspd_1550") {
            EXPECT_NEAR(std::stod(f[5]), 3000.0 / 3916, 1e-6);
            found = true;
        }
    }
    EXPECT_TRUE(found);
}

TEST(Cli, ReproduceTimeBinAbovePolarization) {
    auto dir = scratch("timebin");
    reproduce("fig_timebin", dir, builtin_catalog());
    std::stringstream ss(slurp(dir / "fig_timebin.csv"));
    std::string line;
    std::getline(ss, line);
    std::map<std::string, std::map<std::string, double>> total;
    while (std::getline(ss, line)) {
        auto f = split(line);
        total[f[0]][f[1]] = std::stod(f[10]);
    }
    for (const char *p : {"bb84", "e91", "mdi"}) {
        const auto &pol = total[std::string(p) + " polarization"];
        const auto &tb = total[std::string(p) + " time-bin"];
        ASSERT_EQ(pol.size(), tb.size());
        for (const auto &[d, e] : pol) {
            EXPECT_GE(tb.at(d), e) << p << " " << d;
        }
    }
}

TEST(Cli, UnknownExhibitRejected) {
    EXPECT_THROW(reproduce("fig_nothing", scratch("none"), builtin_catalog()), ValidationError);
}
