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

#ifndef QNET_CLI_TABLE_HPP
#define QNET_CLI_TABLE_HPP

#include <string>
#include <vector>

#include "qnet/cli/scenario.hpp"

namespace qnet::cli {

/// Scientific notation for |x| >= 1e6 or |x| < 1e-3, plain decimal otherwise. Zero is "0".
std::string format_number(double x);

/// Comma-separated, '\n'-terminated; fields are written verbatim.
class CsvWriter {
   public:
    explicit CsvWriter(std::vector<std::string> header);
    void row(const std::vector<std::string> &fields);
    std::string str() const {
        return out_;
    }

   private:
    size_t width_;
    std::string out_;
};

std::vector<std::string> sweep_header(const std::string &parameter);
std::string sweep_to_csv(const SweepTable &t);
std::string sweep_to_json(const SweepTable &t);

}  // namespace qnet::cli

#endif
