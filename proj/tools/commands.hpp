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

#include <cstdint>
#include <optional>
#include <string>

#include "qcond/error.hpp"
#include "qcond/tolerance.hpp"
#include "report.hpp"
#include "spec_file.hpp"

namespace qcond::cli {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kParse = 2,
  kInvariant = 3,
  kNotFaithful = 4,
  kNonDiagonalizable = 5,
  kNotCc = 7,
};

struct Context {
  ParsedSpec parsed;
  Tolerances tol;
  std::uint64_t seed = 0;
};

struct Outcome {
  Json result = Json::object();
  Json residuals = Json::object();
  Json flags = Json::object();
  Json warnings = Json::array();
  int exit_code = kOk;
};

struct StateOptions {
  std::string state;
};

struct BroadcastOptions {
  std::optional<std::string> unitary;
};

struct DecohereOptions {
  std::string state;
  double gamma = 1.0;
  double t = 0.0;
  std::optional<std::string> basis;
};

Outcome run_classify(const Context& ctx);
Outcome run_bayes(const Context& ctx, const StateOptions& opt);
Outcome run_broadcast(const Context& ctx, const BroadcastOptions& opt);
Outcome run_cc_membership(const Context& ctx, const StateOptions& opt);
Outcome run_decohere(const Context& ctx, const DecohereOptions& opt);

// Maps library error codes onto the documented process exit codes.
int exit_code_for(const qcond::Error& e);

}  // namespace qcond::cli
