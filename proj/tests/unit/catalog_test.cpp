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

#include <gtest/gtest.h>

#include "qnet/error.hpp"

using namespace qnet;

TEST(Catalog, BuiltinHasDatasheetRows) {
    const Catalog &c = builtin_catalog();
    EXPECT_EQ(c.power("snspd_1550"), 3000);
    EXPECT_EQ(c.startup_energy("snspd_1550"), 259200e3);
    EXPECT_EQ(c.power("computer"), 150);
    EXPECT_EQ(c.power("ingaas_apd_1532"), 644);
    EXPECT_TRUE(c.at("phase_modulator").assumed);
    EXPECT_DOUBLE_EQ(*c.at("snspd_1550").detection_efficiency, 0.95);
}

TEST(Catalog, UnknownIdThrows) {
    EXPECT_THROW(builtin_catalog().at("warp_drive"), ValidationError);
}

TEST(Catalog, FiberLossByNearestWavelength) {
    const Catalog &c = builtin_catalog();
    EXPECT_DOUBLE_EQ(c.fiber_loss_dB_per_km(1550), 0.18);
    EXPECT_DOUBLE_EQ(c.fiber_loss_dB_per_km(1532), 0.18);
    EXPECT_DOUBLE_EQ(c.fiber_loss_dB_per_km(780), 4);
    EXPECT_DOUBLE_EQ(c.fiber_loss_dB_per_km(523), 30);
    EXPECT_THROW(c.fiber_loss_dB_per_km(1200), ValidationError);
}

TEST(Catalog, MeasuredModePrefersMeasuredValues) {
    const Catalog &d = builtin_catalog();
    Catalog m = d.with_value_mode(ValueMode::measured_preferred);
    for (const auto &[id, spec] : d.components()) {
        EXPECT_EQ(m.power(id), spec.measured_power_W.value_or(spec.power_W)) << id;
        EXPECT_EQ(d.power(id), spec.power_W) << id;
    }
    EXPECT_EQ(m.power("snspd_1550"), 2735);
    EXPECT_EQ(m.startup_energy("snspd_1550"), 117639e3);
}

TEST(Catalog, SerializeRoundTrip) {
    const Catalog &c = builtin_catalog();
    Catalog back = parse_catalog(serialize_catalog(c));
    EXPECT_EQ(back, c);
    Catalog m = c.with_value_mode(ValueMode::measured_preferred);
    EXPECT_EQ(parse_catalog(serialize_catalog(m)), m);
}

TEST(Catalog, LoadsFile) {
    Catalog c = load_catalog(QNET_DATA_DIR "/catalog_small.toml");
    EXPECT_EQ(c.components().size(), 2u);
    EXPECT_EQ(c.startup_energy("det_a"), 2000);
    EXPECT_DOUBLE_EQ(c.fiber_loss_dB_per_km(1550), 0.2);
    EXPECT_EQ(c.with_value_mode(ValueMode::measured_preferred).power("det_a"), 80);
}

TEST(Catalog, MissingFileIsIoError) {
    EXPECT_THROW(load_catalog("/nonexistent/catalog.toml"), IoError);
}

TEST(Catalog, NegativePowerReportsLine) {
    const char *text =
        "[component.a]\n"
        "category = \"laser\"\n"
        "power_W = -1\n";
    try {
        parse_catalog(text);
        FAIL();
    } catch (const ValidationError &e) {
        EXPECT_EQ(e.line, 1u);
    }
}

TEST(Catalog, DetectorNeedsEfficiency) {
    const char *text =
        "[component.d]\n"
        "category = \"detector\"\n"
        "power_W = 10\n";
    EXPECT_THROW(parse_catalog(text), ValidationError);
}

TEST(Catalog, SyntaxErrorReportsLine) {
    const char *text =
        "[component.a]\n"
        "category = \"laser\"\n"
        "power_W = = 3\n";
    try {
        parse_catalog(text);
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line, 3u);
    }
}

TEST(Catalog, UnknownCategoryRejected) {
    const char *text =
        "[component.a]\n"
        "category = \"teleporter\"\n"
        "power_W = 3\n";
    EXPECT_THROW(parse_catalog(text), ValidationError);
}
