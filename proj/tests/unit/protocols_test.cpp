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

#include "qnet/protocols.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "qnet/error.hpp"

using namespace qnet;

namespace {

const Catalog &cat() {
    return builtin_catalog();
}

ProtocolSpec dv(Family f, Preset pre = Preset::table4_repro, double km = 40) {
    ProtocolSpec s;
    s.family = f;
    s.preset = pre;
    s.distance_km = km;
    return s;
}

ProtocolSpec cv(DetectionVariant v, Family f = Family::cv_gaussian) {
    ProtocolSpec s;
    s.family = f;
    s.encoding = Encoding::quadrature;
    s.detector = DetectorKind::bhd;
    s.detection_variant = v;
    return s;
}

ProtocolSpec multi(Family f, int n, double km = 10) {
    ProtocolSpec s;
    s.family = f;
    s.n_parties = n;
    s.distance_km = km;
    if (f == Family::cv_cka || f == Family::ncv_qkd) {
        s.encoding = Encoding::quadrature;
        s.detector = DetectorKind::bhd;
    }
    return s;
}

}  // namespace

TEST(Protocols, NamesRoundTrip) {
    for (auto f : {Family::bb84, Family::cv_psk, Family::alltoall_ghz}) {
        EXPECT_EQ(parse_family(family_name(f)), f);
    }
    EXPECT_EQ(parse_variant("het_2p"), DetectionVariant::het_2p);
    EXPECT_THROW(parse_family("b92"), ValidationError);
}

TEST(Protocols, Table4Powers) {
    EXPECT_EQ(setup_power(build_protocol(dv(Family::bb84), cat()), cat()), 3916);
    EXPECT_EQ(setup_power(build_protocol(dv(Family::e91), cat()), cat()), 8277);
    EXPECT_EQ(setup_power(build_protocol(dv(Family::mdi), cat()), cat()), 4070);
}

TEST(Protocols, Table4Rates) {
    auto kbps = [](Family f) { return build_protocol(dv(f), cat()).rate_model.evaluate().secret_bps / 1e3; };
    EXPECT_NEAR(kbps(Family::bb84), 1092.734, 1092.734e-3);
    EXPECT_NEAR(kbps(Family::e91), 934.287, 934.287e-3);
    EXPECT_NEAR(kbps(Family::mdi), 46.714, 46.714e-3);
}

TEST(Protocols, Bb84Components) {
    ProtocolSetup s = build_protocol(dv(Family::bb84), cat());
    EXPECT_EQ(s.count(Group::source, "koheras_basik_x15_1550"), 1);
    EXPECT_EQ(s.count(Group::source, "modulator_am"), 1);
    EXPECT_EQ(s.count(Group::manipulation, "waveplates"), 2);
    EXPECT_EQ(s.count(Group::detection, "snspd_1550"), 1);
    EXPECT_EQ(s.count(Group::classical, "computer"), 2);
    EXPECT_EQ(s.count(Group::classical, "time_tagger"), 1);
}

TEST(Protocols, DetectorBinding) {
    ProtocolSpec s = dv(Family::bb84);
    s.detector = DetectorKind::ingaas_apd;
    EXPECT_EQ(detector_component(s, cat()), "ingaas_apd_1532");
    s.detector = DetectorKind::si_apd;
    s.wavelength_nm = 780;
    EXPECT_EQ(detector_component(s, cat()), "si_apd_780");
    s.wavelength_nm = 532;
    EXPECT_EQ(detector_component(s, cat()), "si_apd_523");
    s.overrides["detector_id"] = std::string("ingaas_apd_id220");
    EXPECT_EQ(detector_component(s, cat()), "ingaas_apd_id220");
}

TEST(Protocols, WavelengthSelectsLaserAndLoss) {
    ProtocolSpec s = dv(Family::bb84, Preset::table4_repro, 0);
    s.wavelength_nm = 780;
    s.detector = DetectorKind::si_apd;
    ProtocolSetup setup = build_protocol(s, cat());
    EXPECT_EQ(setup.count("mira_hp_f_780"), 1);
    EXPECT_EQ(setup.count("si_apd_780"), 1);
    auto curve = dv_curve_model(s, cat(), 1e9);
    ASSERT_TRUE(curve.has_value());
    EXPECT_EQ(curve->loss_dB_per_km, 4);
}

TEST(Protocols, TimeBinCostsMore) {
    for (auto f : {Family::bb84, Family::e91, Family::mdi}) {
        ProtocolSpec pol = dv(f);
        ProtocolSpec tb = pol;
        tb.encoding = Encoding::time_bin;
        double a = setup_power(build_protocol(pol, cat()), cat());
        double b = setup_power(build_protocol(tb, cat()), cat());
        EXPECT_GT(b, a) << family_name(f);
        EXPECT_EQ(build_protocol(pol, cat()).rate_model.evaluate().secret_bps,
                  build_protocol(tb, cat()).rate_model.evaluate().secret_bps);
    }
}

TEST(Protocols, CvDetectionVariants) {
    const int bhd[] = {1, 2, 2, 4};
    int i = 0;
    for (auto v : {DetectionVariant::hom_1p, DetectionVariant::hom_2p, DetectionVariant::het_1p,
                   DetectionVariant::het_2p}) {
        ProtocolSetup s = build_protocol(cv(v), cat());
        EXPECT_EQ(s.count(Group::detection, "balanced_detector"), bhd[i]) << variant_name(v);
        bool hom = v == DetectionVariant::hom_1p || v == DetectionVariant::hom_2p;
        EXPECT_EQ(s.count("phase_modulator"), hom ? 1 : 0);
        EXPECT_EQ(s.count(Group::classical, "computer"), 2);
        EXPECT_EQ(s.count("adc"), 1);
        EXPECT_EQ(s.count("modulator_iq"), 1);
        EXPECT_EQ(s.count("powermeter"), 1);
        i++;
    }
}

TEST(Protocols, CvOptimizesModulationByDefault) {
    ProtocolSpec s = cv(DetectionVariant::hom_1p);
    s.distance_km = 20;
    double opt = build_protocol(s, cat()).rate_model.evaluate().secret_bps;
    s.overrides["v_a"] = 5.0;
    double fixed = build_protocol(s, cat()).rate_model.evaluate().secret_bps;
    EXPECT_GE(opt, fixed);
}

TEST(Protocols, TwoPolarizationsDoubleTheRate) {
    ProtocolSpec a = cv(DetectionVariant::het_1p);
    ProtocolSpec b = cv(DetectionVariant::het_2p);
    a.distance_km = b.distance_km = 10;
    double ka = build_protocol(a, cat()).rate_model.evaluate().secret_bps;
    double kb = build_protocol(b, cat()).rate_model.evaluate().secret_bps;
    EXPECT_NEAR(kb / ka, 2, 1e-9);
}

TEST(Protocols, GhzAndAllToAllCounts) {
    for (int n = 3; n <= 12; n++) {
        ProtocolSetup g = build_protocol(multi(Family::ghz_cka, n), cat());
        EXPECT_EQ(g.count(Group::source, "oven"), (n + 1) / 2) << n;
        EXPECT_EQ(g.count(Group::manipulation, "waveplates"), (n - 1) / 2) << n;
        EXPECT_EQ(g.count(Group::detection, "snspd_1550"), n) << n;

        ProtocolSpec ps = multi(Family::alltoall_pairs, n, 0);
        ps.pairwise_distance_km = 10;
        ProtocolSetup a = build_protocol(ps, cat());
        EXPECT_EQ(a.count(Group::source, "oven"), n * (n - 1) / 2) << n;
        EXPECT_EQ(a.count(Group::manipulation, "waveplates"), n * (n - 1)) << n;
        EXPECT_EQ(a.count(Group::detection, "snspd_1550"), n) << n;
    }
}

TEST(Protocols, CvCkaHardware) {
    ProtocolSetup s = build_protocol(multi(Family::cv_cka, 5, 0.1), cat());
    EXPECT_EQ(s.count(Group::detection, "balanced_detector"), 5);
    EXPECT_EQ(s.count(Group::detection, "adc"), 2);
    EXPECT_GT(s.rate_model.evaluate().secret_bps, 0);
}

TEST(Protocols, ParallelCkaRuntimeIndependentOfParties) {
    double k3 = build_protocol(multi(Family::bb84_cka, 3), cat()).rate_model.evaluate().secret_bps;
    double k9 = build_protocol(multi(Family::bb84_cka, 9), cat()).rate_model.evaluate().secret_bps;
    EXPECT_EQ(k3, k9);
    double p3 = setup_power(build_protocol(multi(Family::bb84_cka, 3), cat()), cat());
    double p4 = setup_power(build_protocol(multi(Family::bb84_cka, 4), cat()), cat());
    double p5 = setup_power(build_protocol(multi(Family::bb84_cka, 5), cat()), cat());
    EXPECT_DOUBLE_EQ(p5 - p4, p4 - p3);
}

TEST(Protocols, ValidationErrors) {
    ProtocolSpec s = dv(Family::bb84);
    s.detector = DetectorKind::bhd;
    EXPECT_THROW(validate_spec(s), ValidationError);

    s = cv(DetectionVariant::hom_1p);
    s.detector = DetectorKind::snspd;
    EXPECT_THROW(validate_spec(s), ValidationError);

    s = cv(DetectionVariant::hom_1p);
    s.detection_variant.reset();
    EXPECT_THROW(validate_spec(s), ValidationError);

    s = dv(Family::bb84);
    s.detector = DetectorKind::ingaas_apd;
    s.wavelength_nm = 780;
    EXPECT_THROW(validate_spec(s), ValidationError);

    s = dv(Family::bb84);
    s.overrides["warp"] = 1.0;
    EXPECT_THROW(validate_spec(s), ValidationError);

    s = dv(Family::bb84);
    s.overrides["mu"] = std::string("high");
    EXPECT_THROW(validate_spec(s), ValidationError);

    s = multi(Family::ghz_cka, 2);
    EXPECT_THROW(validate_spec(s), ValidationError);

    s = multi(Family::ghz_cka, 3);
    s.n_parties.reset();
    EXPECT_THROW(validate_spec(s), ValidationError);
}

TEST(Protocols, CurveModelMatchesPipeline) {
    ProtocolSpec s = dv(Family::e91);
    auto p = dv_curve_model(s, cat(), 1e9);
    ASSERT_TRUE(p.has_value());
    EnergyReport r = energy_for_target(build_protocol(s, cat()), cat(), 1e9);
    double t = p->n_target_bits / (p->rate_at_zero_bps * std::pow(10.0, -p->loss_dB_per_km * 40 / 10));
    EXPECT_NEAR(t / r.runtime_s, 1, 1e-12);
    EXPECT_FALSE(dv_curve_model(cv(DetectionVariant::hom_1p), cat(), 1e9).has_value());
}

TEST(Protocols, E91BaselineIncludesSourceWaveplates) {
    EXPECT_EQ(setup_power(build_protocol(dv(Family::e91, Preset::baseline_table2), cat()), cat()), 8308);
}

TEST(Protocols, Bb84Table4Timeline) {
    ProtocolSetup s = build_protocol(dv(Family::bb84), cat());
    double e0 = setup_startup_energy(s, cat());
    EXPECT_EQ(energy_at_time(s, cat(), 0), e0);
    EXPECT_EQ(energy_at_time(s, cat(), 1), e0 + 3916);
    ProtocolSpec at25 = dv(Family::bb84, Preset::table4_repro, 25);
    EXPECT_NEAR(energy_for_target(build_protocol(at25, cat()), cat(), 1e9).runtime_s, 491.5, 0.5);
}

TEST(Protocols, SiApdRateUsesItsEfficiency) {
    ProtocolSpec s = dv(Family::bb84, Preset::table4_repro, 0);
    s.wavelength_nm = 780;
    s.detector = DetectorKind::si_apd;
    ProtocolSetup setup = build_protocol(s, cat());
    EXPECT_EQ(setup.count(Group::detection, "si_apd_780"), 1);
    ProtocolSpec ref = dv(Family::bb84, Preset::table4_repro, 0);
    double ratio = setup.rate_model.evaluate().raw_per_use / build_protocol(ref, cat()).rate_model.evaluate().raw_per_use;
    EXPECT_NEAR(ratio, 0.75 / 0.95, 1e-12);
}
