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

#include "qnet/channel.hpp"

#include <cmath>

#include "qnet/error.hpp"

namespace qnet {

double transmittance(double length_km, double loss_coeff_dB_per_km) {
    if (!(length_km >= 0)) {
        throw DomainError("fiber length must be non-negative");
    }
    if (!(loss_coeff_dB_per_km >= 0)) {
        throw DomainError("fiber loss coefficient must be non-negative");
    }
    return std::pow(10.0, -length_km * loss_coeff_dB_per_km / 10.0);
}

double transmittance(const FiberChannel &ch) {
    return transmittance(ch.length_km, ch.loss_coeff_dB_per_km);
}

}  // namespace qnet
