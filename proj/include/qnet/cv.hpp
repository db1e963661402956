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

#ifndef QNET_CV_HPP
#define QNET_CV_HPP

#include <array>
#include <string_view>
#include <vector>

#include "qnet/dv.hpp"

namespace qnet {

enum class Detection { homodyne, heterodyne };

std::string_view detection_name(Detection d);

/// All noise terms in shot-noise units, excess noise referred to the channel input.
struct CvParams {
    double v_a = 5;
    double transmittance = 1;
    double excess_noise = 0.01;
    double p_det = 0.7;
    double v_el = 0.005;
    double beta = 0.95;
    Detection detection = Detection::homodyne;
    double r_source_Hz = 100e6;
};

struct PskParams {
    CvParams base;
    int m = 4;

    double alpha_sq() const {
        return base.v_a / 2;
    }
};

struct CvHolevoIntermediates {
    double chi_line = 0;
    double chi_det = 0;
    double chi_tot = 0;
    double a = 0;
    double b = 0;
    double c = 0;
    double d = 0;
    std::array<double, 5> lambda{1, 1, 1, 1, 1};
    double v = 0;
    double w = 0;
    double z = 0;
};

struct CkaCvParams {
    double m_mod = 5;
    int n = 3;
    double transmittance = 1;
    double p_det = 0.7;
    double v_el = 0.005;
    double beta = 0.95;
    double r_source_Hz = 100e6;

    double delta() const {
        return (1 - p_det + v_el) / p_det;
    }
    double omega() const {
        return 2 * delta() + 1;
    }
};

/// Unclamped Devetak-Winter terms: k = beta * i_ab - chi_be.
struct CvKeyTerms {
    double i_ab = 0;
    double chi_be = 0;
    double k = 0;
};

/// Symplectic eigenvalues below 1 - kPhysicalityTol are rejected.
constexpr double kPhysicalityTol = 1e-9;

double g_function(double x);

double mutual_information(const CvParams &p);

double gaussian_holevo_bound(const CvParams &p, CvHolevoIntermediates *out = nullptr);
CvKeyTerms gaussian_key_terms(const CvParams &p);
RateResult gaussian_skr(const CvParams &p);

/// nu_0 .. nu_{m-1}; evaluated as complex sums and checked to be real.
std::vector<double> psk_nu(double alpha_sq, int m);
double psk_holevo_bound(const PskParams &p, CvHolevoIntermediates *out = nullptr);
CvKeyTerms psk_key_terms(const PskParams &p);
RateResult psk_skr(const PskParams &p);

struct CkaCvIntermediates {
    double x = 0;
    double y = 0;
    double z = 0;
    double delta1 = 0;
    double delta2 = 0;
    double theta = 0;
    double nu = 1;
    double nu_n = 1;
};

double cv_cka_mutual_information(const CkaCvParams &p);
double cv_cka_holevo_bound(const CkaCvParams &p, CkaCvIntermediates *out = nullptr);
CvKeyTerms cv_cka_key_terms(const CkaCvParams &p);
RateResult cv_cka_skr(const CkaCvParams &p);

}  // namespace qnet

#endif
