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
#include <string>
#include <string_view>

#include <json.hpp>

#include "qcond/objects.hpp"

namespace qcond::cli {

using Json = nlohmann::ordered_json;

// Complex entries as [re, im]; matrices row-major.
Json encode(const ComplexMatrix& m);
Json encode(const RealMatrix& m);
Json encode(const RealVector& v);
Json encode_complex(const ComplexVector& v);
Json encode(Complex z);
Json encode_real(double x);

// Pretty printer that writes every double with 17 significant digits so that
// reports round-trip exactly and do not depend on the json library's
// shortest-representation heuristics. Non-finite values become strings.
std::string dump(const Json& j);

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t v);

}  // namespace qcond::cli
