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

#include "qnet/cv.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

#include "qnet/error.hpp"

namespace qnet {

namespace {

void require(bool ok, const char *msg) {
    if (!ok) {
        throw DomainError(msg);
    }
}

void check_params(const CvParams &p) {
    require(p.v_a >= 0 && std::isfinite(p.v_a), "v_a must be non-negative");
    require(p.transmittance > 0 && p.transmittance <= 1, "transmittance must lie in (0, 1]");
    require(p.excess_noise >= 0 && std::isfinite(p.excess_noise), "excess noise must be non-negative");
    require(p.p_det > 0 && p.p_det <= 1, "p_det must lie in (0, 1]");
    require(p.v_el >= 0 && std::isfinite(p.v_el), "v_el must be non-negative");
    require(p.beta > 0 && p.beta <= 1, "beta must lie in (0, 1]");
    require(p.r_source_Hz > 0, "r_source_Hz must be positive");
}

double checked_sqrt(double x, double scale, const char *what) {
    if (x < 0) {
        if (x < -1e-12 * std::max(1.0, std::abs(scale))) {
            throw NumericalDomainError(std::string("negative value under square root: ") + what);
        }
        return 0;
    }
    return std::sqrt(x);
}

/// Roots of s^2 - a s + b; returns the symplectic eigenvalues sqrt(s1) >= sqrt(s2).
std::pair<double, double> symplectic_pair(double a, double b, const char *what) {
    if (b < 0) {
        throw NumericalDomainError(std::string("negative determinant term: ") + what);
    }
    double disc = checked_sqrt(a * a - 4 * b, a * a, what);
    double s1 = (a + disc) / 2;
    if (!(s1 > 0)) {
        throw NumericalDomainError(std::string("non-positive eigenvalue: ") + what);
    }
    return {std::sqrt(s1), std::sqrt(b / s1)};
}

double physical(double lambda, const char *what) {
    if (!(lambda >= 1 - kPhysicalityTol)) {
        throw NumericalDomainError(std::string("unphysical symplectic eigenvalue (") + what +
                                   "): " + std::to_string(lambda));
    }
    return std::max(lambda, 1.0);
}

double g_of_eigenvalue(double lambda) {
    return g_function((lambda - 1) / 2);
}

RateResult to_rate(const CvKeyTerms &t, double r_source_Hz) {
    RateResult r;
    r.raw_per_use = t.i_ab;
    r.secret_per_use = std::max(0.0, t.k);
    r.secret_bps = r.secret_per_use * r_source_Hz;
    return r;
}

}  // namespace

std::string_view detection_name(Detection d) {
    return d == Detection::homodyne ? "homodyne" : "heterodyne";
}

double g_function(double x) {
    if (!(x >= 0)) {
        throw DomainError("g_function: negative argument");
    }
    if (x == 0) {
        return 0;
    }
    // (x+1)log2(x+1) - x log2 x without the large-x cancellation.
    return std::log2(x + 1) + x * std::log1p(1 / x) / std::numbers::ln2;
}

double mutual_information(const CvParams &p) {
    check_params(p);
    double gain = p.p_det * p.transmittance;
    if (p.detection == Detection::homodyne) {
        return 0.5 * std::log2(1 + gain * p.v_a / (1 + p.v_el + gain * p.excess_noise));
    }
    return std::log2(1 + gain * p.v_a / (2 + 2 * p.v_el + gain * p.excess_noise));
}

double gaussian_holevo_bound(const CvParams &p, CvHolevoIntermediates *out) {
    check_params(p);
    const double T = p.transmittance;
    const double eta = p.p_det;
    const double V = p.v_a + 1;

    CvHolevoIntermediates m;
    m.v = V;
    m.chi_line = 1 / T - 1 + p.excess_noise;
    if (p.detection == Detection::homodyne) {
        m.chi_det = (1 - eta + p.v_el) / eta;
    } else {
        m.chi_det = (2 - eta + 2 * p.v_el) / eta;
    }
    m.chi_tot = m.chi_line + m.chi_det / T;

    m.a = V * V * (1 - 2 * T) + 2 * T + T * T * (V + m.chi_line) * (V + m.chi_line);
    m.b = T * T * (V * m.chi_line + 1) * (V * m.chi_line + 1);
    const double sb = T * std::abs(V * m.chi_line + 1);
    const double den = T * (V + m.chi_tot);
    const double cd = m.chi_det;
    if (p.detection == Detection::homodyne) {
        m.c = (m.a * cd + V * sb + T * (V + m.chi_line)) / den;
        m.d = sb * (V + sb * cd) / den;
    } else {
        m.c = (m.a * cd * cd + m.b + 1 + 2 * cd * (V * sb + T * (V + m.chi_line)) + 2 * T * (V * V - 1)) /
              (den * den);
        m.d = (V + sb * cd) / den * ((V + sb * cd) / den);
    }

    auto [l1, l2] = symplectic_pair(m.a, m.b, "A, B");
    auto [l3, l4] = symplectic_pair(m.c, m.d, "C, D");
    m.lambda = {physical(l1, "lambda1"), physical(l2, "lambda2"), physical(l3, "lambda3"),
                physical(l4, "lambda4"), 1.0};
    double chi = g_of_eigenvalue(m.lambda[0]) + g_of_eigenvalue(m.lambda[1]) - g_of_eigenvalue(m.lambda[2]) -
                 g_of_eigenvalue(m.lambda[3]);
    if (out != nullptr) {
        *out = m;
    }
    return chi;
}

CvKeyTerms gaussian_key_terms(const CvParams &p) {
    CvKeyTerms t;
    t.i_ab = mutual_information(p);
    t.chi_be = gaussian_holevo_bound(p);
    t.k = p.beta * t.i_ab - t.chi_be;
    return t;
}

RateResult gaussian_skr(const CvParams &p) {
    return to_rate(gaussian_key_terms(p), p.r_source_Hz);
}

namespace {

std::vector<long double> psk_nu_extended(double alpha_sq, int m) {
    if (m < 2) {
        throw DomainError("PSK constellation size must be at least 2");
    }
    if (!(alpha_sq >= 0 && std::isfinite(alpha_sq))) {
        throw DomainError("alpha^2 must be non-negative");
    }
    std::vector<long double> nu(m, 0.0L);
    if (alpha_sq == 0) {
        nu[0] = 1;
        return nu;
    }
    using cld = std::complex<long double>;
    const long double a2 = alpha_sq;
    const long double two_pi = 2 * std::numbers::pi_v<long double>;
    std::vector<cld> e(m);
    for (int j = 0; j < m; j++) {
        long double th = two_pi * j / m;
        e[j] = std::exp(a2 * cld(std::cos(th), std::sin(th)));
    }
    const long double total = std::exp(a2);
    const long double floor = 64 * m * std::numeric_limits<long double>::epsilon() * total;
    for (int k = 0; k < m; k++) {
        cld s = 0;
        for (int j = 0; j < m; j++) {
            long double th = -two_pi * static_cast<long double>((static_cast<long long>(j) * k) % m) / m;
            s += cld(std::cos(th), std::sin(th)) * e[j];
        }
        s /= static_cast<long double>(m);
        if (std::abs(s.imag()) > 1e-10L * total) {
            throw NumericalDomainError("PSK coefficient has a non-negligible imaginary part");
        }
        long double re = s.real();
        if (re < -floor) {
            throw NumericalDomainError("PSK coefficient is negative");
        }
        nu[k] = re <= floor ? 0.0L : re;
    }
    return nu;
}

}  // namespace

std::vector<double> psk_nu(double alpha_sq, int m) {
    std::vector<long double> nu = psk_nu_extended(alpha_sq, m);
    return std::vector<double>(nu.begin(), nu.end());
}

double psk_holevo_bound(const PskParams &p, CvHolevoIntermediates *out) {
    check_params(p.base);
    const CvParams &b = p.base;
    const double T = b.transmittance;
    const double eta = b.p_det;
    const double a2 = p.alpha_sq();
    const int M = p.m;
    std::vector<long double> nu = psk_nu_extended(a2, M);

    double Z = 0;
    if (a2 > 0) {
        long double s32 = 0;
        long double s2 = 0;
        for (int k = 0; k < M; k++) {
            long double cur = nu[k];
            long double next = nu[(k + 1) % M];
            if (cur == 0 || next == 0) {
                continue;
            }
            s32 += cur * std::sqrt(cur / next);
            s2 += cur * cur / next;
        }
        long double ea = std::exp(-static_cast<long double>(a2));
        long double lhs = ea * s2;
        long double inner = lhs - ea * ea * s32 * s32;
        if (inner < 0) {
            if (inner < -1e-12L * lhs) {
                throw NumericalDomainError("negative value under square root: PSK Z");
            }
            inner = 0;
        }
        long double z = 2 * a2 * ea * s32 - std::sqrt(2 * b.excess_noise * a2) * std::sqrt(inner);
        Z = static_cast<double>(std::sqrt(static_cast<long double>(eta * T)) * z);
    }

    CvHolevoIntermediates m;
    m.v = b.v_a + 1;
    m.w = 1 + eta * T * b.v_a + eta * T * b.excess_noise + b.v_el;
    m.z = Z;
    const double V = m.v;
    const double W = m.w;
    const double z2 = Z * Z;
    double delta = V * V + W * W - 2 * z2;
    double det_root = V * W - z2;
    auto [l1, l2] = symplectic_pair(delta, det_root * det_root, "Gamma");
    double l3;
    if (b.detection == Detection::homodyne) {
        l3 = checked_sqrt(V * (V - z2 / W), V * V, "lambda3");
    } else {
        l3 = V - z2 / (W + 1);
    }
    m.a = delta;
    m.b = det_root * det_root;
    m.lambda = {physical(l1, "lambda1"), physical(l2, "lambda2"), physical(l3, "lambda3"), 1.0, 1.0};
    double chi = g_of_eigenvalue(m.lambda[0]) + g_of_eigenvalue(m.lambda[1]) - g_of_eigenvalue(m.lambda[2]);
    if (out != nullptr) {
        *out = m;
    }
    return chi;
}

CvKeyTerms psk_key_terms(const PskParams &p) {
    CvKeyTerms t;
    t.i_ab = mutual_information(p.base);
    t.chi_be = psk_holevo_bound(p);
    t.k = p.base.beta * t.i_ab - t.chi_be;
    return t;
}

RateResult psk_skr(const PskParams &p) {
    return to_rate(psk_key_terms(p), p.base.r_source_Hz);
}

namespace {

void check_cka(const CkaCvParams &p) {
    require(p.n >= 2, "CV conference keys need at least 2 parties");
    require(p.m_mod > 1 && std::isfinite(p.m_mod), "CKA modulation parameter must exceed 1");
    require(p.transmittance > 0 && p.transmittance <= 1, "transmittance must lie in (0, 1]");
    require(p.p_det > 0 && p.p_det <= 1, "p_det must lie in (0, 1]");
    require(p.v_el >= 0, "v_el must be non-negative");
    require(p.beta > 0 && p.beta <= 1, "beta must lie in (0, 1]");
    require(p.r_source_Hz > 0, "r_source_Hz must be positive");
}

CkaCvIntermediates cka_terms(const CkaCvParams &p) {
    check_cka(p);
    const double T = p.transmittance;
    const double mu = p.m_mod;
    const double n = p.n;
    CkaCvIntermediates c;
    c.x = T * mu + (1 - T) * p.omega();
    c.y = mu;
    c.z = std::sqrt(T * (mu * mu - 1));
    const double z2 = T * (mu * mu - 1);
    c.theta = z2 / (n * c.x);
    c.delta1 = c.y - (n - 1) * z2 / (n * c.x);
    c.delta2 = c.y - z2 / (n * c.x);
    return c;
}

}  // namespace

double cv_cka_mutual_information(const CkaCvParams &p) {
    CkaCvIntermediates c = cka_terms(p);
    // Homodyne conditioning of one Bob on the first quadrature of the other.
    double cond = c.delta1 - c.theta * c.theta / c.delta1;
    return 0.5 * std::log2((1 + c.delta1) * (1 + c.delta2) / ((1 + cond) * (1 + c.delta2)));
}

double cv_cka_holevo_bound(const CkaCvParams &p, CkaCvIntermediates *out) {
    CkaCvIntermediates c = cka_terms(p);
    const double T = p.transmittance;
    const double mu = p.m_mod;
    const double n = p.n;
    const double w = p.omega();
    const double z2 = T * (mu * mu - 1);
    c.nu = checked_sqrt(c.y * (c.y - z2 / c.x), c.y * c.y, "nu");
    double lam = n * w * mu + T * (1 + (n - 1 - n * w) * mu);
    double lam_bar = n * w * mu + T * (n - 1 - (n * w - 1) * mu);
    double tau = n * w * (1 - T) + T * (n - 1 + mu);
    double tau_bar = n * w * (1 - T) + T * ((n - 1) * mu + 1);
    c.nu_n = checked_sqrt(lam * lam_bar / (tau * tau_bar), 1.0, "nu_n");
    double chi = 2 * g_of_eigenvalue(physical(c.nu, "nu")) - g_of_eigenvalue(physical(c.nu_n, "nu_n"));
    if (out != nullptr) {
        *out = c;
    }
    return chi;
}

CvKeyTerms cv_cka_key_terms(const CkaCvParams &p) {
    CvKeyTerms t;
    t.i_ab = cv_cka_mutual_information(p);
    t.chi_be = cv_cka_holevo_bound(p);
    t.k = p.beta * t.i_ab - t.chi_be;
    return t;
}

RateResult cv_cka_skr(const CkaCvParams &p) {
    return to_rate(cv_cka_key_terms(p), p.r_source_Hz);
}

}  // namespace qnet
