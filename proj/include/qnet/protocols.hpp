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

#ifndef QNET_PROTOCOLS_HPP
#define QNET_PROTOCOLS_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "qnet/catalog.hpp"
#include "qnet/cv.hpp"
#include "qnet/dv.hpp"
#include "qnet/energy.hpp"
#include "qnet/kernels.hpp"

namespace qnet {

enum class Family {
    bb84,
    e91,
    mdi,
    cv_gaussian,
    cv_psk,
    ghz_cka,
    bell_cka,
    bb84_cka,
    cv_cka,
    ncv_qkd,
    alltoall_pairs,
    alltoall_ghz,
};

enum class Encoding { polarization, time_bin, quadrature };
enum class DetectorKind { snspd, ingaas_apd, si_apd, bhd };
enum class DetectionVariant { hom_1p, hom_2p, het_1p, het_2p };
enum class Preset { baseline_table2, table4_repro, custom };

std::string_view family_name(Family f);
std::string_view encoding_name(Encoding e);
std::string_view detector_name(DetectorKind d);
std::string_view variant_name(DetectionVariant v);
std::string_view preset_name(Preset p);

Family parse_family(std::string_view s);
Encoding parse_encoding(std::string_view s);
DetectorKind parse_detector(std::string_view s);
DetectionVariant parse_variant(std::string_view s);
Preset parse_preset(std::string_view s);

bool is_cv_bipartite(Family f);
bool is_multiparty(Family f);

using OverrideValue = std::variant<double, std::string, bool>;

/// Override keys accepted in `ProtocolSpec::overrides`.
///   numbers: mu, qber, p_coupling, p_bsm, p_det, r_source_Hz, loss_dB_per_km, excess_noise, v_el,
///            beta, v_a, v_a_min, v_a_max, m, m_mod, tau_dsp, p_fusion, n_chan
///   strings: laser, detector_id, pump, fusion_mode, classical ("full" or "none")
///   bools:   dsp, source_waveplates, cka_iq_modulator
struct ProtocolSpec {
    Family family = Family::bb84;
    Encoding encoding = Encoding::polarization;
    double wavelength_nm = 1550;
    DetectorKind detector = DetectorKind::snspd;
    std::optional<DetectionVariant> detection_variant;
    std::optional<int> n_parties;
    double distance_km = 0;
    std::optional<double> pairwise_distance_km;
    Preset preset = Preset::baseline_table2;
    std::map<std::string, OverrideValue> overrides;
};

/// Throws ValidationError for unknown override keys, wrong value types or incompatible choices.
void validate_spec(const ProtocolSpec &spec);

struct NetworkTopology {
    int n = 3;
    double star_distance_km = 0;
    double pairwise_distance_km = 0;
};

NetworkTopology topology_from_spec(const ProtocolSpec &spec);

/// Detector component bound to a (kind, wavelength) pair.
std::string detector_component(const ProtocolSpec &spec, const Catalog &cat);

ProtocolSetup build_bb84(const ProtocolSpec &spec, const Catalog &cat);
ProtocolSetup build_e91(const ProtocolSpec &spec, const Catalog &cat);
ProtocolSetup build_mdi(const ProtocolSpec &spec, const Catalog &cat);
ProtocolSetup build_cv_qkd(const ProtocolSpec &spec, const Catalog &cat);
ProtocolSetup build_multiparty(const ProtocolSpec &spec, const NetworkTopology &topo, const Catalog &cat);

/// Dispatches on `spec.family`.
ProtocolSetup build_protocol(const ProtocolSpec &spec, const Catalog &cat);

/// Closed-form energy curve for DV families whose secret rate is proportional to the
/// fiber transmittance. Empty for CV families.
std::optional<kernels::DvCurveParams> dv_curve_model(const ProtocolSpec &spec, const Catalog &cat, double n_target_bits);

}  // namespace qnet

#endif
