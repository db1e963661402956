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

#include "qnet/cli/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <toml.hpp>

#include "qnet/error.hpp"

namespace qnet::cli {

namespace {

size_t line_of(const toml::node &n) {
    return n.source().begin.line;
}

void reject_unknown(const toml::table &t, const std::set<std::string> &allowed, const std::string &where) {
    for (const auto &[k, v] : t) {
        if (!allowed.count(std::string(k.str()))) {
            throw ValidationError("unknown key '" + std::string(k.str()) + "' in " + where, line_of(v));
        }
    }
}

double need_number(const toml::node &n, const std::string &key) {
    if (auto v = n.value<double>()) {
        return *v;
    }
    throw ParseError("'" + key + "' must be a number", line_of(n));
}

std::string need_string(const toml::node &n, const std::string &key) {
    if (auto v = n.value<std::string>()) {
        return *v;
    }
    throw ParseError("'" + key + "' must be a string", line_of(n));
}

int need_int(const toml::node &n, const std::string &key) {
    if (auto v = n.value<int64_t>(); v && n.is_integer()) {
        return static_cast<int>(*v);
    }
    if (auto d = n.value<double>(); d && *d == std::floor(*d)) {
        return static_cast<int>(*d);
    }
    throw ParseError("'" + key + "' must be an integer", line_of(n));
}

// Converts library validation errors into errors that point at a line.
template <typename F>
auto at_line(const toml::node &n, F &&f) {
    try {
        return f();
    } catch (const ValidationError &e) {
        if (e.line) {
            throw;
        }
        throw ValidationError(e.what(), line_of(n));
    }
}

ProtocolSpec parse_protocol(const toml::table &t) {
    reject_unknown(
        t,
        {"family", "encoding", "wavelength_nm", "detector", "detection_variant", "n_parties", "distance_km",
         "pairwise_distance_km", "preset", "overrides"},
        "[protocol]");
    ProtocolSpec p;
    const toml::node *fam = t.get("family");
    if (fam == nullptr) {
        throw ValidationError("[protocol] needs a family", line_of(t));
    }
    p.family = at_line(*fam, [&] { return parse_family(need_string(*fam, "family")); });
    bool cv = is_cv_bipartite(p.family) || p.family == Family::cv_cka || p.family == Family::ncv_qkd;
    if (cv) {
        p.detector = DetectorKind::bhd;
        p.encoding = Encoding::quadrature;
    }
    for (const auto &[k, v] : t) {
        std::string key(k.str());
        if (key == "encoding") {
            p.encoding = at_line(v, [&] { return parse_encoding(need_string(v, key)); });
        } else if (key == "wavelength_nm") {
            p.wavelength_nm = need_number(v, key);
        } else if (key == "detector") {
            p.detector = at_line(v, [&] { return parse_detector(need_string(v, key)); });
        } else if (key == "detection_variant") {
            p.detection_variant = at_line(v, [&] { return parse_variant(need_string(v, key)); });
        } else if (key == "n_parties") {
            p.n_parties = need_int(v, key);
        } else if (key == "distance_km") {
            p.distance_km = need_number(v, key);
        } else if (key == "pairwise_distance_km") {
            p.pairwise_distance_km = need_number(v, key);
        } else if (key == "preset") {
            p.preset = at_line(v, [&] { return parse_preset(need_string(v, key)); });
        } else if (key == "overrides") {
            const toml::table *ov = v.as_table();
            if (ov == nullptr) {
                throw ParseError("[protocol.overrides] must be a table", line_of(v));
            }
            for (const auto &[ok, ovv] : *ov) {
                std::string name(ok.str());
                if (ovv.is_boolean()) {
                    p.overrides[name] = *ovv.value<bool>();
                } else if (ovv.is_string()) {
                    p.overrides[name] = *ovv.value<std::string>();
                } else if (auto d = ovv.value<double>()) {
                    p.overrides[name] = *d;
                } else {
                    throw ParseError("override '" + name + "' must be a number, string or boolean", line_of(ovv));
                }
                // A default spec is valid on its own, so any error here belongs to this override.
                at_line(ovv, [&] {
                    ProtocolSpec probe;
                    probe.overrides[name] = p.overrides[name];
                    validate_spec(probe);
                    return 0;
                });
            }
        }
    }
    at_line(t, [&] {
        validate_spec(p);
        return 0;
    });
    return p;
}

SweepSpec parse_sweep(const toml::table &t) {
    reject_unknown(t, {"parameter", "from", "to", "steps", "scale"}, "[sweep]");
    SweepSpec s;
    for (const char *req : {"parameter", "from", "to", "steps"}) {
        if (t.get(req) == nullptr) {
            throw ValidationError(std::string("[sweep] needs '") + req + "'", line_of(t));
        }
    }
    const toml::node &par = *t.get("parameter");
    s.parameter = need_string(par, "parameter");
    static const std::set<std::string> params{"distance_km", "n_parties", "qber", "tau_dsp", "v_a"};
    if (!params.count(s.parameter)) {
        throw ValidationError("unsupported sweep parameter '" + s.parameter + "'", line_of(par));
    }
    s.from = need_number(*t.get("from"), "from");
    s.to = need_number(*t.get("to"), "to");
    const toml::node &steps = *t.get("steps");
    s.steps = need_int(steps, "steps");
    if (s.steps < 2) {
        throw ValidationError("[sweep] steps must be at least 2", line_of(steps));
    }
    if (const toml::node *sc = t.get("scale")) {
        std::string v = need_string(*sc, "scale");
        if (v != "linear" && v != "log") {
            throw ValidationError("[sweep] scale must be 'linear' or 'log'", line_of(*sc));
        }
        s.log_scale = v == "log";
    }
    if (!std::isfinite(s.from) || !std::isfinite(s.to) || s.from == s.to) {
        throw ValidationError("[sweep] needs finite, distinct bounds", line_of(t));
    }
    if (s.log_scale && !(s.from > 0 && s.to > 0)) {
        throw ValidationError("[sweep] log scale needs positive bounds", line_of(t));
    }
    if (s.from < 0 || s.to < 0) {
        throw ValidationError("[sweep] bounds must be non-negative", line_of(t));
    }
    if (s.parameter == "n_parties" && (s.from != std::floor(s.from) || s.to != std::floor(s.to))) {
        throw ValidationError("[sweep] n_parties bounds must be integers", line_of(t));
    }
    return s;
}

OutputSpec parse_output(const toml::table &t) {
    reject_unknown(t, {"format", "svg"}, "[output]");
    OutputSpec o;
    if (const toml::node *f = t.get("format")) {
        o.format = need_string(*f, "format");
        if (o.format != "csv" && o.format != "json") {
            throw ValidationError("[output] format must be 'csv' or 'json'", line_of(*f));
        }
    }
    if (const toml::node *s = t.get("svg")) {
        o.svg = need_string(*s, "svg");
    }
    return o;
}

const toml::table &need_table(const toml::node &n, const std::string &name) {
    const toml::table *t = n.as_table();
    if (t == nullptr) {
        throw ParseError("'" + name + "' must be a table", line_of(n));
    }
    return *t;
}

}  // namespace

std::vector<double> SweepSpec::values() const {
    std::vector<double> v(steps);
    for (int i = 0; i < steps; i++) {
        double f = static_cast<double>(i) / (steps - 1);
        if (i == 0) {
            v[i] = from;
        } else if (i == steps - 1) {
            v[i] = to;
        } else if (log_scale) {
            v[i] = std::exp(std::log(from) + f * (std::log(to) - std::log(from)));
        } else {
            v[i] = from + f * (to - from);
        }
        if (parameter == "n_parties") {
            v[i] = std::round(v[i]);
        }
    }
    return v;
}

Scenario parse_scenario(std::string_view toml_text, const std::string &source_name) {
    toml::table root;
    try {
        root = toml::parse(toml_text, source_name);
    } catch (const toml::parse_error &e) {
        throw ParseError(source_name + ": " + std::string(e.description()), e.source().begin.line);
    }
    reject_unknown(root, {"target_bits", "value_mode", "protocol", "sweep", "output"}, "scenario");
    Scenario sc;
    if (const toml::node *n = root.get("target_bits")) {
        sc.target_bits = need_number(*n, "target_bits");
        if (!(sc.target_bits >= 0) || !std::isfinite(sc.target_bits)) {
            throw ValidationError("target_bits must be non-negative", line_of(*n));
        }
    }
    if (const toml::node *n = root.get("value_mode")) {
        sc.value_mode = at_line(*n, [&] { return parse_value_mode(need_string(*n, "value_mode")); });
    }
    const toml::node *proto = root.get("protocol");
    if (proto == nullptr) {
        throw ValidationError("scenario needs a [protocol] table");
    }
    sc.protocol = parse_protocol(need_table(*proto, "protocol"));
    if (const toml::node *n = root.get("sweep")) {
        sc.sweep = parse_sweep(need_table(*n, "sweep"));
        if (sc.sweep->parameter == "n_parties" && !is_multiparty(sc.protocol.family)) {
            throw ValidationError("n_parties can only be swept for multipartite protocols", line_of(*n));
        }
    }
    if (const toml::node *n = root.get("output")) {
        sc.output = parse_output(need_table(*n, "output"));
    }
    return sc;
}

Scenario load_scenario(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open scenario file '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), path);
}

bool SweepTable::all_infeasible() const {
    for (const auto &r : rows) {
        if (r.feasible) {
            return false;
        }
    }
    return true;
}

SweepTable run_scenario(const Scenario &sc, const Catalog &cat_in) {
    Catalog cat = cat_in.with_value_mode(sc.value_mode);
    SweepTable table;
    std::vector<double> xs;
    if (sc.sweep) {
        table.parameter = sc.sweep->parameter;
        xs = sc.sweep->values();
    } else {
        table.parameter = "distance_km";
        xs = {sc.protocol.distance_km};
    }
    for (double x : xs) {
        ProtocolSpec spec = sc.protocol;
        if (table.parameter == "distance_km") {
            spec.distance_km = x;
        } else if (table.parameter == "n_parties") {
            spec.n_parties = static_cast<int>(x);
        } else {
            spec.overrides[table.parameter] = x;
        }
        ProtocolSetup setup = build_protocol(spec, cat);
        SweepRow row;
        row.x = x;
        RateResult rate = setup.rate_model.evaluate();
        try {
            row.report = energy_for_target(setup, cat, sc.target_bits, rate);
        } catch (const InfeasibleError &) {
            row.feasible = false;
            row.report.rate = rate;
            row.report.power_W = setup_power(setup, cat);
            row.report.startup_J = setup_startup_energy(setup, cat);
            row.report.ee_bits_per_J = row.report.power_W > 0 ? rate.secret_bps / row.report.power_W : 0;
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace qnet::cli
