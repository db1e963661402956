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

#ifndef QNET_CHANNEL_HPP
#define QNET_CHANNEL_HPP

namespace qnet {

struct FiberChannel {
    double length_km = 0;
    double loss_coeff_dB_per_km = 0.18;
    double wavelength_nm = 1550;
};

/// 10^(-length * loss / 10). Loss is always applied as attenuation.
double transmittance(const FiberChannel &ch);

/// Same as `transmittance` for a bare (length, coefficient) pair.
double transmittance(double length_km, double loss_coeff_dB_per_km);

}  // namespace qnet

#endif
