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

#include "qnet/optimize.hpp"

#include <cmath>
#include <vector>

#include "qnet/error.hpp"

namespace qnet {

OptimizeResult maximize_log_scan(
    const std::function<double(double)> &f, double lo, double hi, const OptimizeOptions &opt) {
    if (!(lo > 0) || !(hi > lo)) {
        throw DomainError("optimizer bracket must satisfy 0 < lo < hi");
    }
    if (opt.coarse_points < 3) {
        throw DomainError("optimizer needs at least 3 coarse points");
    }
    OptimizeResult r;
    const int n = opt.coarse_points;
    const double llo = std::log(lo);
    const double lhi = std::log(hi);
    auto at = [&](int i) {
        if (i == 0) {
            return lo;
        }
        if (i == n - 1) {
            return hi;
        }
        return std::exp(llo + (lhi - llo) * i / (n - 1));
    };

    int best = 0;
    double best_val = -INFINITY;
    for (int i = 0; i < n; i++) {
        double v = f(at(i));
        r.evaluations++;
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    r.argmax = at(best);
    r.max = best_val;
    if (best == 0 || best == n - 1) {
        r.boundary = true;
        return r;
    }

    constexpr double inv_phi = 0.6180339887498949;
    double a = std::log(at(best - 1));
    double b = std::log(at(best + 1));
    double tol = std::log1p(opt.rel_tol);
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(std::exp(c));
    double fd = f(std::exp(d));
    r.evaluations += 2;
    while (b - a > tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(std::exp(c));
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(std::exp(d));
        }
        r.evaluations++;
    }
    double x = fc >= fd ? c : d;
    double fx = fc >= fd ? fc : fd;
    if (fx > r.max) {
        r.max = fx;
        r.argmax = std::exp(x);
    }
    return r;
}

OptimizeResult optimize_modulation(const CvParams &p, double v_lo, double v_hi) {
    return maximize_log_scan(
        [&](double va) {
            CvParams q = p;
            q.v_a = va;
            return gaussian_skr(q).secret_per_use;
        },
        v_lo,
        v_hi);
}

OptimizeResult optimize_modulation(const PskParams &p, double v_lo, double v_hi) {
    return maximize_log_scan(
        [&](double va) {
            PskParams q = p;
            q.base.v_a = va;
            return psk_skr(q).secret_per_use;
        },
        v_lo,
        v_hi);
}

OptimizeResult optimize_modulation(const CkaCvParams &p, double lo, double hi) {
    return maximize_log_scan(
        [&](double m) {
            CkaCvParams q = p;
            q.m_mod = m;
            return cv_cka_skr(q).secret_per_use;
        },
        lo,
        hi);
}

}  // namespace qnet
