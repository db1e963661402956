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

#include <array>
#include <cmath>
#include <set>
#include <utility>

#include "qnet/channel.hpp"
#include "qnet/error.hpp"
#include "qnet/optimize.hpp"

namespace qnet {

namespace {

template <typename E, size_t N>
using NameTable = std::array<std::pair<E, std::string_view>, N>;

constexpr NameTable<Family, 12> kFamilies{{
    {Family::bb84, "bb84"},
    {Family::e91, "e91"},
    {Family::mdi, "mdi"},
    {Family::cv_gaussian, "cv_gaussian"},
    {Family::cv_psk, "cv_psk"},
    {Family::ghz_cka, "ghz_cka"},
    {Family::bell_cka, "bell_cka"},
    {Family::bb84_cka, "bb84_cka"},
    {Family::cv_cka, "cv_cka"},
    {Family::ncv_qkd, "ncv_qkd"},
    {Family::alltoall_pairs, "alltoall_pairs"},
    {Family::alltoall_ghz, "alltoall_ghz"},
}};
constexpr NameTable<Encoding, 3> kEncodings{{
    {Encoding::polarization, "polarization"},
    {Encoding::time_bin, "time_bin"},
    {Encoding::quadrature, "quadrature"},
}};
constexpr NameTable<DetectorKind, 4> kDetectors{{
    {DetectorKind::snspd, "snspd"},
    {DetectorKind::ingaas_apd, "ingaas_apd"},
    {DetectorKind::si_apd, "si_apd"},
    {DetectorKind::bhd, "bhd"},
}};
constexpr NameTable<DetectionVariant, 4> kVariants{{
    {DetectionVariant::hom_1p, "hom_1p"},
    {DetectionVariant::hom_2p, "hom_2p"},
    {DetectionVariant::het_1p, "het_1p"},
    {DetectionVariant::het_2p, "het_2p"},
}};
constexpr NameTable<Preset, 3> kPresets{{
    {Preset::baseline_table2, "baseline_table2"},
    {Preset::table4_repro, "table4_repro"},
    {Preset::custom, "custom"},
}};

template <typename E, size_t N>
std::string_view to_name(const NameTable<E, N> &t, E v) {
    for (const auto &[k, s] : t) {
        if (k == v) {
            return s;
        }
    }
    return "?";
}

template <typename E, size_t N>
E from_name(const NameTable<E, N> &t, std::string_view s, const char *what) {
    for (const auto &[k, name] : t) {
        if (name == s) {
            return k;
        }
    }
    throw ValidationError(std::string("unknown ") + what + " '" + std::string(s) + "'");
}

enum class Kind { number, text, flag };

const std::map<std::string, Kind, std::less<>> &override_kinds() {
    static const std::map<std::string, Kind, std::less<>> kinds{
        {"mu", Kind::number},
        {"qber", Kind::number},
        {"p_coupling", Kind::number},
        {"p_bsm", Kind::number},
        {"p_det", Kind::number},
        {"r_source_Hz", Kind::number},
        {"loss_dB_per_km", Kind::number},
        {"excess_noise", Kind::number},
        {"v_el", Kind::number},
        {"beta", Kind::number},
        {"v_a", Kind::number},
        {"v_a_min", Kind::number},
        {"v_a_max", Kind::number},
        {"m", Kind::number},
        {"m_mod", Kind::number},
        {"tau_dsp", Kind::number},
        {"p_fusion", Kind::number},
        {"n_chan", Kind::number},
        {"laser", Kind::text},
        {"detector_id", Kind::text},
        {"pump", Kind::text},
        {"fusion_mode", Kind::text},
        {"classical", Kind::text},
        {"dsp", Kind::flag},
        {"source_waveplates", Kind::flag},
        {"cka_iq_modulator", Kind::flag},
    };
    return kinds;
}

double num(const ProtocolSpec &s, const std::string &key, double dflt) {
    auto it = s.overrides.find(key);
    if (it == s.overrides.end()) {
        return dflt;
    }
    return std::get<double>(it->second);
}

std::optional<double> opt_num(const ProtocolSpec &s, const std::string &key) {
    auto it = s.overrides.find(key);
    if (it == s.overrides.end()) {
        return std::nullopt;
    }
    return std::get<double>(it->second);
}

std::string text(const ProtocolSpec &s, const std::string &key, const std::string &dflt) {
    auto it = s.overrides.find(key);
    if (it == s.overrides.end()) {
        return dflt;
    }
    return std::get<std::string>(it->second);
}

bool flag(const ProtocolSpec &s, const std::string &key, bool dflt) {
    auto it = s.overrides.find(key);
    if (it == s.overrides.end()) {
        return dflt;
    }
    return std::get<bool>(it->second);
}

bool near(double wl, double target) {
    return std::abs(wl - target) <= 60;
}

constexpr double kCvRateHz = 100e6;
constexpr double kCvVaMin = 0.01;
constexpr double kCvVaMax = 100;
constexpr double kCkaModMin = 1.01;
constexpr double kCkaModMax = 100;

std::string weak_pulse_laser(const ProtocolSpec &spec) {
    if (auto it = spec.overrides.find("laser"); it != spec.overrides.end()) {
        return std::get<std::string>(it->second);
    }
    if (near(spec.wavelength_nm, 1550)) {
        return "koheras_basik_x15_1550";
    }
    if (near(spec.wavelength_nm, 780)) {
        return "mira_hp_f_780";
    }
    if (near(spec.wavelength_nm, 532)) {
        return "verdi_c_532";
    }
    throw ValidationError("no default laser for " + std::to_string(spec.wavelength_nm) + " nm");
}

struct DvInputs {
    DvLinkParams link;
    DvNoise noise;
    double loss = 0;
};

DvInputs dv_inputs(const ProtocolSpec &spec, const Catalog &cat, double length_km) {
    DvPresetValues pv = dv_preset(spec.preset == Preset::table4_repro ? DvPreset::table4_repro
                                                                     : DvPreset::baseline_table2);
    DvInputs in;
    in.link.mu = num(spec, "mu", pv.mu);
    in.link.p_coupling = num(spec, "p_coupling", pv.p_coupling);
    in.link.p_bsm = num(spec, "p_bsm", pv.p_bsm);
    in.link.r_source_Hz = num(spec, "r_source_Hz", pv.r_source_Hz);
    const ComponentSpec &det = cat.at(detector_component(spec, cat));
    in.link.p_det = num(spec, "p_det", det.detection_efficiency.value_or(1));
    in.loss = num(spec, "loss_dB_per_km", cat.fiber_loss_dB_per_km(spec.wavelength_nm));
    in.link.channels = {FiberChannel{length_km, in.loss, spec.wavelength_nm}};
    in.noise.qber = num(spec, "qber", pv.qber);
    return in;
}

void add_spdc_source(ProtocolSetup &s, const ProtocolSpec &spec, int count) {
    s.add(Group::source, text(spec, "pump", "mira_hp_f_780"), count);
    s.add(Group::source, "oven", count);
    if (spec.encoding == Encoding::time_bin) {
        s.add(Group::source, "modulator_am", count);
    } else if (flag(spec, "source_waveplates", spec.preset != Preset::table4_repro)) {
        s.add(Group::source, "waveplates", count);
    }
}

const char *manipulation_station(const ProtocolSpec &spec) {
    return spec.encoding == Encoding::time_bin ? "interferometry" : "waveplates";
}

RateModel dv_rate(std::string description, double (*raw_fn)(const DvLinkParams &), DvInputs in) {
    RateModel m;
    m.description = std::move(description);
    m.evaluate = [raw_fn, in]() {
        return dv_secret_rate(raw_fn(in.link), in.noise, in.link.r_source_Hz);
    };
    return m;
}

CvParams cv_params(const ProtocolSpec &spec, const Catalog &cat, double length_km, DetectionVariant v) {
    CvParams p;
    p.excess_noise = num(spec, "excess_noise", 0.01);
    p.v_el = num(spec, "v_el", 0.005);
    p.beta = num(spec, "beta", 0.95);
    p.p_det = num(spec, "p_det", cat.at(detector_component(spec, cat)).detection_efficiency.value_or(1));
    double loss = num(spec, "loss_dB_per_km", cat.fiber_loss_dB_per_km(spec.wavelength_nm));
    p.transmittance = transmittance(length_km, loss);
    p.detection = (v == DetectionVariant::hom_1p || v == DetectionVariant::hom_2p) ? Detection::homodyne
                                                                                  : Detection::heterodyne;
    int pol = (v == DetectionVariant::hom_2p || v == DetectionVariant::het_2p) ? 2 : 1;
    p.r_source_Hz = pol * num(spec, "r_source_Hz", kCvRateHz);
    p.v_a = num(spec, "v_a", 1);
    return p;
}

RateModel cv_rate(const ProtocolSpec &spec, CvParams p) {
    std::optional<double> fixed = opt_num(spec, "v_a");
    double lo = num(spec, "v_a_min", kCvVaMin);
    double hi = num(spec, "v_a_max", kCvVaMax);
    RateModel m;
    if (spec.family == Family::cv_psk) {
        PskParams q{p, static_cast<int>(num(spec, "m", 4))};
        m.description = "psk_skr";
        m.evaluate = [q, fixed, lo, hi]() {
            if (fixed) {
                return psk_skr(q);
            }
            PskParams best = q;
            best.base.v_a = optimize_modulation(q, lo, hi).argmax;
            return psk_skr(best);
        };
    } else {
        m.description = "gaussian_skr";
        m.evaluate = [p, fixed, lo, hi]() {
            if (fixed) {
                return gaussian_skr(p);
            }
            CvParams best = p;
            best.v_a = optimize_modulation(p, lo, hi).argmax;
            return gaussian_skr(best);
        };
    }
    return m;
}

void add_cv_link_hardware(ProtocolSetup &s, DetectionVariant v, int links) {
    static constexpr int kBhd[] = {1, 2, 2, 4};
    s.add(Group::source, "koheras_basik_x15_1550", links);
    s.add(Group::source, "modulator_iq", links);
    s.add(Group::source, "dac", links);
    s.add(Group::source, "powermeter", links);
    s.add(Group::detection, "adc", links);
    s.add(Group::detection, "koheras_basik_x15_1550", links);
    s.add(Group::detection, "balanced_detector", links * kBhd[static_cast<int>(v)]);
    s.add(Group::detection, "polarization_controller", links);
    if (v == DetectionVariant::hom_1p || v == DetectionVariant::hom_2p) {
        s.add(Group::detection, "phase_modulator", links);
    }
}

std::optional<ClassicalCostParams> dsp_params(const ProtocolSpec &spec, double scale) {
    auto tau = opt_num(spec, "tau_dsp");
    if (!tau) {
        return std::nullopt;
    }
    return ClassicalCostParams{*tau * scale, flag(spec, "dsp", true)};
}

std::string setup_name(const ProtocolSpec &spec) {
    std::string n(family_name(spec.family));
    n += "/";
    n += encoding_name(spec.encoding);
    n += "/";
    n += detector_name(spec.detector);
    if (spec.detection_variant) {
        n += "/";
        n += variant_name(*spec.detection_variant);
    }
    return n;
}

}  // namespace

std::string_view family_name(Family f) {
    return to_name(kFamilies, f);
}
std::string_view encoding_name(Encoding e) {
    return to_name(kEncodings, e);
}
std::string_view detector_name(DetectorKind d) {
    return to_name(kDetectors, d);
}
std::string_view variant_name(DetectionVariant v) {
    return to_name(kVariants, v);
}
std::string_view preset_name(Preset p) {
    return to_name(kPresets, p);
}
Family parse_family(std::string_view s) {
    return from_name(kFamilies, s, "protocol family");
}
Encoding parse_encoding(std::string_view s) {
    return from_name(kEncodings, s, "encoding");
}
DetectorKind parse_detector(std::string_view s) {
    return from_name(kDetectors, s, "detector");
}
DetectionVariant parse_variant(std::string_view s) {
    return from_name(kVariants, s, "detection variant");
}
Preset parse_preset(std::string_view s) {
    return from_name(kPresets, s, "preset");
}

bool is_cv_bipartite(Family f) {
    return f == Family::cv_gaussian || f == Family::cv_psk;
}

bool is_multiparty(Family f) {
    switch (f) {
        case Family::ghz_cka:
        case Family::bell_cka:
        case Family::bb84_cka:
        case Family::cv_cka:
        case Family::ncv_qkd:
        case Family::alltoall_pairs:
        case Family::alltoall_ghz:
            return true;
        default:
            return false;
    }
}

void validate_spec(const ProtocolSpec &spec) {
    const auto &kinds = override_kinds();
    for (const auto &[key, value] : spec.overrides) {
        auto it = kinds.find(key);
        if (it == kinds.end()) {
            throw ValidationError("unknown override '" + key + "'");
        }
        bool ok = (it->second == Kind::number && std::holds_alternative<double>(value)) ||
                  (it->second == Kind::text && std::holds_alternative<std::string>(value)) ||
                  (it->second == Kind::flag && std::holds_alternative<bool>(value));
        if (!ok) {
            throw ValidationError("override '" + key + "' has the wrong type");
        }
    }
    for (const char *p : {"mu", "qber", "p_coupling", "p_bsm", "p_det", "p_fusion", "beta"}) {
        if (auto v = opt_num(spec, p); v && !(*v >= 0 && *v <= 1)) {
            throw ValidationError(std::string("override '") + p + "' must lie in [0, 1]");
        }
    }
    if (auto q = opt_num(spec, "qber"); q && *q > 0.5) {
        throw ValidationError("qber must lie in [0, 0.5]");
    }
    if (auto m = opt_num(spec, "m"); m && (*m < 2 || *m != std::floor(*m))) {
        throw ValidationError("PSK size m must be an integer >= 2");
    }
    if (auto m = opt_num(spec, "n_chan"); m && (*m < 1 || *m != std::floor(*m))) {
        throw ValidationError("n_chan must be a positive integer");
    }
    if (auto fm = spec.overrides.find("fusion_mode"); fm != spec.overrides.end()) {
        const auto &v = std::get<std::string>(fm->second);
        if (v != "as_printed" && v != "with_fusion_probability") {
            throw ValidationError("fusion_mode must be 'as_printed' or 'with_fusion_probability'");
        }
    }
    if (auto c = spec.overrides.find("classical"); c != spec.overrides.end()) {
        const auto &v = std::get<std::string>(c->second);
        if (v != "full" && v != "none") {
            throw ValidationError("classical must be 'full' or 'none'");
        }
    }
    if (!(spec.distance_km >= 0) || !std::isfinite(spec.distance_km)) {
        throw ValidationError("distance_km must be non-negative");
    }
    if (spec.pairwise_distance_km && !(*spec.pairwise_distance_km >= 0)) {
        throw ValidationError("pairwise_distance_km must be non-negative");
    }
    if (!(spec.wavelength_nm > 0)) {
        throw ValidationError("wavelength_nm must be positive");
    }

    bool cv = is_cv_bipartite(spec.family) || spec.family == Family::cv_cka || spec.family == Family::ncv_qkd;
    if (is_cv_bipartite(spec.family) != spec.detection_variant.has_value()) {
        throw ValidationError(is_cv_bipartite(spec.family)
                                  ? "CV protocols need a detection_variant"
                                  : "detection_variant is only valid for bipartite CV protocols");
    }
    if (cv) {
        if (spec.detector != DetectorKind::bhd) {
            throw ValidationError("CV protocols use the balanced homodyne detector (detector = \"bhd\")");
        }
        if (spec.encoding == Encoding::time_bin) {
            throw ValidationError("time_bin encoding is not available for CV protocols");
        }
    } else {
        if (spec.detector == DetectorKind::bhd) {
            throw ValidationError("the balanced homodyne detector is only valid for CV protocols");
        }
        if (spec.encoding == Encoding::quadrature) {
            throw ValidationError("quadrature encoding is only valid for CV protocols");
        }
        bool overridden = spec.overrides.count("detector_id") > 0;
        double wl = spec.wavelength_nm;
        if (!overridden) {
            if (spec.detector == DetectorKind::si_apd && !near(wl, 523) && !near(wl, 780)) {
                throw ValidationError("Si-APD detectors are only available at 523 nm and 780 nm");
            }
            if (spec.detector == DetectorKind::ingaas_apd && !near(wl, 1550)) {
                throw ValidationError("InGaAs-APD detectors are only available around 1550 nm");
            }
            if (spec.detector == DetectorKind::snspd && !near(wl, 1550) && !near(wl, 780)) {
                throw ValidationError("SNSPD detectors are only available at 780 nm and 1550 nm");
            }
        }
    }

    if (is_multiparty(spec.family)) {
        if (!spec.n_parties) {
            throw ValidationError("multipartite protocols need n_parties");
        }
        int min_n = 3;
        if (spec.family == Family::ncv_qkd || spec.family == Family::cv_cka || spec.family == Family::alltoall_pairs) {
            min_n = 2;
        }
        if (*spec.n_parties < min_n) {
            throw ValidationError(
                std::string(family_name(spec.family)) + " needs n_parties >= " + std::to_string(min_n));
        }
    }
}

NetworkTopology topology_from_spec(const ProtocolSpec &spec) {
    NetworkTopology t;
    t.n = spec.n_parties.value_or(3);
    t.star_distance_km = spec.distance_km;
    t.pairwise_distance_km = spec.pairwise_distance_km.value_or(spec.distance_km);
    return t;
}

std::string detector_component(const ProtocolSpec &spec, const Catalog &cat) {
    std::string id;
    if (auto it = spec.overrides.find("detector_id"); it != spec.overrides.end()) {
        id = std::get<std::string>(it->second);
    } else {
        switch (spec.detector) {
            case DetectorKind::snspd:
                id = near(spec.wavelength_nm, 780) ? "snspd_780" : "snspd_1550";
                break;
            case DetectorKind::ingaas_apd:
                id = "ingaas_apd_1532";
                break;
            case DetectorKind::si_apd:
                id = near(spec.wavelength_nm, 780) ? "si_apd_780" : "si_apd_523";
                break;
            case DetectorKind::bhd:
                id = "balanced_detector";
                break;
        }
    }
    const ComponentSpec &c = cat.at(id);
    if (c.category != Category::detector && c.category != Category::bhd) {
        throw ValidationError("component '" + id + "' is not a detector");
    }
    return id;
}

ProtocolSetup build_bb84(const ProtocolSpec &spec, const Catalog &cat) {
    validate_spec(spec);
    ProtocolSetup s;
    s.name = setup_name(spec);
    s.add(Group::source, weak_pulse_laser(spec));
    s.add(Group::source, "modulator_am");
    if (spec.encoding == Encoding::time_bin) {
        s.add(Group::source, "interferometry");
    }
    s.add(Group::manipulation, manipulation_station(spec), 2);
    s.add(Group::detection, detector_component(spec, cat));
    s.add(Group::classical, "computer", 2);
    s.add(Group::classical, "time_tagger", 1);
    s.rate_model = dv_rate("bb84_raw_rate", &bb84_raw_rate, dv_inputs(spec, cat, spec.distance_km));
    validate_setup(s, cat);
    return s;
}

ProtocolSetup build_e91(const ProtocolSpec &spec, const Catalog &cat) {
    validate_spec(spec);
    ProtocolSetup s;
    s.name = setup_name(spec);
    add_spdc_source(s, spec, 1);
    s.add(Group::manipulation, manipulation_station(spec), 2);
    s.add(Group::detection, detector_component(spec, cat), 2);
    s.add(Group::classical, "computer", 2);
    s.add(Group::classical, "time_tagger", 2);
    s.rate_model = dv_rate("e91_raw_rate", &e91_raw_rate, dv_inputs(spec, cat, spec.distance_km));
    validate_setup(s, cat);
    return s;
}

ProtocolSetup build_mdi(const ProtocolSpec &spec, const Catalog &cat) {
    validate_spec(spec);
    ProtocolSetup s;
    s.name = setup_name(spec);
    s.add(Group::source, weak_pulse_laser(spec), 2);
    s.add(Group::source, "modulator_am", 2);
    s.add(Group::source, manipulation_station(spec), 2);
    if (spec.encoding == Encoding::time_bin) {
        s.add(Group::manipulation, "interferometry", 2);
    }
    s.add(Group::detection, detector_component(spec, cat));
    std::string classical = text(spec, "classical", spec.preset == Preset::table4_repro ? "none" : "full");
    if (classical == "full") {
        s.add(Group::classical, "computer", 3);
        s.add(Group::classical, "time_tagger", 1);
    }
    s.rate_model = dv_rate("mdi_raw_rate", &mdi_raw_rate, dv_inputs(spec, cat, spec.distance_km));
    validate_setup(s, cat);
    return s;
}

ProtocolSetup build_cv_qkd(const ProtocolSpec &spec, const Catalog &cat) {
    validate_spec(spec);
    if (!is_cv_bipartite(spec.family)) {
        throw ValidationError("build_cv_qkd needs a cv_gaussian or cv_psk spec");
    }
    DetectionVariant v = *spec.detection_variant;
    ProtocolSetup s;
    s.name = setup_name(spec);
    add_cv_link_hardware(s, v, 1);
    s.add(Group::classical, "computer", 2);
    s.rate_model = cv_rate(spec, cv_params(spec, cat, spec.distance_km, v));
    s.dsp = dsp_params(spec, 1);
    validate_setup(s, cat);
    return s;
}

ProtocolSetup build_multiparty(const ProtocolSpec &spec, const NetworkTopology &topo, const Catalog &cat) {
    validate_spec(spec);
    const int n = topo.n;
    if (n < 2 || !(topo.star_distance_km >= 0) || !(topo.pairwise_distance_km >= 0)) {
        throw ValidationError("invalid network topology");
    }
    ProtocolSetup s;
    s.name = setup_name(spec) + "/n=" + std::to_string(n);
    const std::string det = spec.detector == DetectorKind::bhd ? "" : detector_component(spec, cat);

    switch (spec.family) {
        case Family::ghz_cka:
        case Family::alltoall_ghz: {
            if (n < 3) {
                throw ValidationError("GHZ protocols need at least 3 parties");
            }
            add_spdc_source(s, spec, (n + 1) / 2);
            s.add(Group::manipulation, spec.encoding == Encoding::time_bin ? "modulator_am" : "waveplates", (n - 1) / 2);
            s.add(Group::detection, det, n);
            s.add(Group::classical, "computer", n);
            s.add(Group::classical, "time_tagger", n);
            DvInputs in = dv_inputs(spec, cat, 0);
            FusionMode mode = text(spec, "fusion_mode", "as_printed") == "as_printed"
                                  ? FusionMode::as_printed
                                  : FusionMode::with_fusion_probability;
            double p_fusion = num(spec, "p_fusion", 0.5);
            double d = topo.star_distance_km;
            s.rate_model.description = "ghz_cka_raw_rate";
            s.rate_model.evaluate = [in, n, d, mode, p_fusion]() {
                double raw = ghz_cka_raw_rate(in.link, n, d, in.loss, mode, p_fusion);
                return dv_secret_rate(raw, in.noise, in.link.r_source_Hz);
            };
            break;
        }
        case Family::alltoall_pairs: {
            int pairs = n * (n - 1) / 2;
            add_spdc_source(s, spec, pairs);
            s.add(Group::manipulation, manipulation_station(spec), n * (n - 1));
            s.add(Group::detection, det, n);
            s.add(Group::classical, "computer", n);
            s.add(Group::classical, "time_tagger", n);
            s.rate_model = dv_rate("e91_raw_rate per pair", &e91_raw_rate, dv_inputs(spec, cat, topo.pairwise_distance_km));
            break;
        }
        case Family::bell_cka: {
            int links = n - 1;
            add_spdc_source(s, spec, links);
            s.add(Group::manipulation, manipulation_station(spec), 2 * links);
            s.add(Group::detection, det, 2 * links);
            s.add(Group::classical, "computer", n);
            s.add(Group::classical, "time_tagger", 2 * links);
            s.rate_model = dv_rate("e91_raw_rate per link", &e91_raw_rate, dv_inputs(spec, cat, topo.star_distance_km));
            break;
        }
        case Family::bb84_cka: {
            int links = n - 1;
            s.add(Group::source, weak_pulse_laser(spec), links);
            s.add(Group::source, "modulator_am", links);
            if (spec.encoding == Encoding::time_bin) {
                s.add(Group::source, "interferometry", links);
            }
            s.add(Group::manipulation, manipulation_station(spec), 2 * links);
            s.add(Group::detection, det, links);
            s.add(Group::classical, "computer", n);
            s.add(Group::classical, "time_tagger", links);
            s.rate_model = dv_rate("bb84_raw_rate per link", &bb84_raw_rate, dv_inputs(spec, cat, topo.star_distance_km));
            break;
        }
        case Family::cv_cka: {
            int n_chan = static_cast<int>(num(spec, "n_chan", 4));
            s.add(Group::source, "koheras_basik_x15_1550", n);
            s.add(Group::source, "dac", n);
            if (flag(spec, "cka_iq_modulator", false)) {
                s.add(Group::source, "modulator_iq", n);
            }
            s.add(Group::classical, "computer", n);
            s.add(Group::detection, "balanced_detector", n);
            s.add(Group::detection, "adc", (n + n_chan - 1) / n_chan);
            s.add(Group::detection, "koheras_basik_x15_1550", n);
            s.add(Group::classical, "computer", 1);
            CkaCvParams p;
            p.n = n;
            p.p_det = num(spec, "p_det", cat.at("balanced_detector").detection_efficiency.value_or(1));
            p.v_el = num(spec, "v_el", 0.005);
            p.beta = num(spec, "beta", 0.95);
            p.r_source_Hz = num(spec, "r_source_Hz", kCvRateHz);
            p.transmittance = transmittance(
                topo.star_distance_km, num(spec, "loss_dB_per_km", cat.fiber_loss_dB_per_km(spec.wavelength_nm)));
            std::optional<double> fixed = opt_num(spec, "m_mod");
            p.m_mod = fixed.value_or(5);
            s.rate_model.description = "cv_cka_skr";
            s.rate_model.evaluate = [p, fixed]() {
                if (fixed) {
                    return cv_cka_skr(p);
                }
                CkaCvParams best = p;
                best.m_mod = optimize_modulation(p, kCkaModMin, kCkaModMax).argmax;
                return cv_cka_skr(best);
            };
            s.dsp = dsp_params(spec, n);
            break;
        }
        case Family::ncv_qkd: {
            int links = n - 1;
            add_cv_link_hardware(s, DetectionVariant::hom_2p, links);
            s.add(Group::classical, "computer", n);
            ProtocolSpec link = spec;
            link.family = Family::cv_gaussian;
            s.rate_model = cv_rate(link, cv_params(spec, cat, topo.star_distance_km, DetectionVariant::hom_2p));
            s.dsp = dsp_params(spec, links);
            break;
        }
        default:
            throw ValidationError("build_multiparty needs a multipartite family");
    }
    validate_setup(s, cat);
    return s;
}

ProtocolSetup build_protocol(const ProtocolSpec &spec, const Catalog &cat) {
    switch (spec.family) {
        case Family::bb84:
            return build_bb84(spec, cat);
        case Family::e91:
            return build_e91(spec, cat);
        case Family::mdi:
            return build_mdi(spec, cat);
        case Family::cv_gaussian:
        case Family::cv_psk:
            return build_cv_qkd(spec, cat);
        default:
            return build_multiparty(spec, topology_from_spec(spec), cat);
    }
}

std::optional<kernels::DvCurveParams> dv_curve_model(const ProtocolSpec &spec, const Catalog &cat, double n_target_bits) {
    validate_spec(spec);
    double scale = 1;
    switch (spec.family) {
        case Family::bb84:
        case Family::e91:
        case Family::mdi:
        case Family::bell_cka:
        case Family::bb84_cka:
        case Family::alltoall_pairs:
            break;
        case Family::ghz_cka:
        case Family::alltoall_ghz:
            scale = spec.n_parties.value_or(3);
            break;
        default:
            return std::nullopt;
    }
    ProtocolSpec at_zero = spec;
    at_zero.distance_km = 0;
    at_zero.pairwise_distance_km = 0;
    ProtocolSetup s = build_protocol(at_zero, cat);
    kernels::DvCurveParams p;
    p.rate_at_zero_bps = s.rate_model.evaluate().secret_bps;
    p.loss_dB_per_km = scale * num(spec, "loss_dB_per_km", cat.fiber_loss_dB_per_km(spec.wavelength_nm));
    p.power_W = setup_power(s, cat);
    p.startup_J = setup_startup_energy(s, cat);
    p.n_target_bits = n_target_bits;
    return p;
}

}  // namespace qnet
