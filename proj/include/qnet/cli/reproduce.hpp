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

#ifndef QNET_CLI_REPRODUCE_HPP
#define QNET_CLI_REPRODUCE_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "qnet/catalog.hpp"
#include "qnet/protocols.hpp"

namespace qnet::cli {

const std::vector<std::string> &exhibit_names();

struct ReproduceOptions {
    Preset dv_preset = Preset::table4_repro;
};

struct ReproduceResult {
    std::vector<std::filesystem::path> files;
    bool has_check = false;
    bool pass = true;
    std::string report;
};

/// Writes `<exhibit>.csv` and `<exhibit>.svg` (plus extra files for some exhibits) into `out_dir`.
ReproduceResult reproduce(
    std::string_view exhibit, const std::filesystem::path &out_dir, const Catalog &cat,
    const ReproduceOptions &opt = {});

struct Table4Row {
    std::string protocol;
    double power_W = 0;
    double secret_kbps = 0;
    double expected_power_W = 0;
    double expected_kbps = 0;
    bool power_ok = false;
    bool rate_ok = false;
};

/// BB84, E91 and MDI at 40 km under the table4_repro preset.
std::vector<Table4Row> table4_rows(const Catalog &cat);

}  // namespace qnet::cli

#endif
