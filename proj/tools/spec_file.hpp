// Copyright 2026 The qcond Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "qcond/channel.hpp"

namespace qcond::cli {

// Structural problems with the input document: bad JSON, missing keys, ragged
// arrays. Mathematical problems (non-positive Choi, bad columns) surface as
// qcond::Error instead.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Representation { Kraus, Choi, Conditional, Stochastic };

struct ChannelSpec {
  std::string name;
  std::size_t dim_in = 0;
  std::size_t dim_out = 0;
  Representation representation = Representation::Kraus;
  std::optional<RealMatrix> stochastic;
  std::map<std::string, ComplexMatrix> states;
  std::map<std::string, ComplexMatrix> unitaries;
};

// Reads the document without building the channel so that invariant
// violations in the channel data are reported separately from parse errors.
struct ParsedSpec {
  ChannelSpec spec;
  nlohmann::json channel_data;
};

ParsedSpec parse_spec(const std::string& text);
Channel build_channel(const ParsedSpec& parsed, const Tolerances& tol);

ComplexMatrix complex_matrix(const nlohmann::json& j, const std::string& what);
RealMatrix real_matrix(const nlohmann::json& j, const std::string& what);

const char* to_string(Representation r);

}  // namespace qcond::cli
