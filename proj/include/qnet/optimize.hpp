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

#ifndef QNET_OPTIMIZE_HPP
#define QNET_OPTIMIZE_HPP

#include <functional>

#include "qnet/cv.hpp"

namespace qnet {

struct OptimizeResult {
    double argmax = 0;
    double max = 0;
    bool boundary = false;
    int evaluations = 0;
};

struct OptimizeOptions {
    int coarse_points = 200;
    double rel_tol = 1e-4;
};

/// Log-spaced scan over [lo, hi] followed by golden-section refinement in log space.
/// Ties keep the smallest argument, so an all-zero objective returns (lo, 0, boundary).
OptimizeResult maximize_log_scan(
    const std::function<double(double)> &f, double lo, double hi, const OptimizeOptions &opt = {});

/// Maximizes the clamped key rate per symbol over the modulation variance.
OptimizeResult optimize_modulation(const CvParams &p, double v_lo, double v_hi);
OptimizeResult optimize_modulation(const PskParams &p, double v_lo, double v_hi);

/// Same for the CKA modulation parameter (bracket on m_mod).
OptimizeResult optimize_modulation(const CkaCvParams &p, double lo, double hi);

}  // namespace qnet

#endif
