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

#include "spec_file.hpp"

#include <array>

#include "qcond/classify.hpp"
#include "qcond/error.hpp"

namespace qcond::cli {
namespace {

using nlohmann::json;

constexpr std::array<std::pair<const char*, Representation>, 4> kRepresentations{{
    {"kraus", Representation::Kraus},
    {"choi", Representation::Choi},
    {"conditional", Representation::Conditional},
    {"stochastic", Representation::Stochastic},
}};

double real_scalar(const json& j, const std::string& what) {
  if (!j.is_number()) throw ParseError(what + ": expected a number");
  return j.get<double>();
}

Complex complex_scalar(const json& j, const std::string& what) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw ParseError(what + ": expected [re, im]");
}

template <typename Scalar, typename Fn>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> read_matrix(const json& j, const std::string& what, Fn cell) {
  if (!j.is_array() || j.empty()) throw ParseError(what + ": expected a non-empty array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) throw ParseError(what + ": rows must be non-empty arrays");
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m(static_cast<Eigen::Index>(j.size()),
                                                          static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw ParseError(what + ": ragged rows");
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = cell(j[r][c], what);
    }
  }
  return m;
}

std::size_t read_dim(const json& dims, const char* key) {
  if (!dims.contains(key) || !dims[key].is_number_unsigned() || dims[key].get<std::size_t>() == 0) {
    throw ParseError(std::string("dims.") + key + ": expected a positive integer");
  }
  return dims[key].get<std::size_t>();
}

std::map<std::string, ComplexMatrix> named_matrices(const json& doc, const char* key) {
  std::map<std::string, ComplexMatrix> out;
  if (!doc.contains(key)) return out;
  if (!doc[key].is_object()) throw ParseError(std::string(key) + ": expected an object of named matrices");
  for (const auto& [name, value] : doc[key].items()) out.emplace(name, complex_matrix(value, std::string(key) + "." + name));
  return out;
}

void require_shape(const ComplexMatrix& m, std::size_t rows, std::size_t cols, const std::string& what) {
  if (m.rows() != static_cast<Eigen::Index>(rows) || m.cols() != static_cast<Eigen::Index>(cols)) {
    throw Error(ErrorCode::ShapeMismatch, what + ": expected " + std::to_string(rows) + "x" + std::to_string(cols) +
                                              ", got " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

}  // namespace

const char* to_string(Representation r) {
  for (const auto& [key, rep] : kRepresentations)
    if (rep == r) return key;
  return "unknown";
}

ComplexMatrix complex_matrix(const json& j, const std::string& what) {
  return read_matrix<Complex>(j, what, complex_scalar);
}

RealMatrix real_matrix(const json& j, const std::string& what) { return read_matrix<double>(j, what, real_scalar); }

ParsedSpec parse_spec(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
  if (!doc.is_object()) throw ParseError("top level must be an object");

  ParsedSpec out;
  ChannelSpec& spec = out.spec;
  if (!doc.contains("name") || !doc["name"].is_string()) throw ParseError("name: expected a string");
  spec.name = doc["name"].get<std::string>();
  if (!doc.contains("dims") || !doc["dims"].is_object()) throw ParseError("dims: expected {in, out}");
  spec.dim_in = read_dim(doc["dims"], "in");
  spec.dim_out = read_dim(doc["dims"], "out");

  int found = 0;
  for (const auto& [key, rep] : kRepresentations) {
    if (!doc.contains(key)) continue;
    ++found;
    spec.representation = rep;
    out.channel_data = doc[key];
  }
  if (found != 1) throw ParseError("exactly one of kraus, choi, conditional, stochastic is required");

  switch (spec.representation) {
    case Representation::Kraus:
      if (!out.channel_data.is_array() || out.channel_data.empty()) throw ParseError("kraus: expected a list of matrices");
      for (std::size_t i = 0; i < out.channel_data.size(); ++i) complex_matrix(out.channel_data[i], "kraus[" + std::to_string(i) + "]");
      break;
    case Representation::Choi:
    case Representation::Conditional:
      complex_matrix(out.channel_data, to_string(spec.representation));
      break;
    case Representation::Stochastic:
      spec.stochastic = real_matrix(out.channel_data, "stochastic");
      break;
  }
  spec.states = named_matrices(doc, "states");
  spec.unitaries = named_matrices(doc, "unitaries");
  return out;
}

Channel build_channel(const ParsedSpec& parsed, const Tolerances& tol) {
  const ChannelSpec& spec = parsed.spec;
  const std::size_t din = spec.dim_in, dout = spec.dim_out;
  switch (spec.representation) {
    case Representation::Kraus: {
      std::vector<ComplexMatrix> kraus;
      for (std::size_t i = 0; i < parsed.channel_data.size(); ++i) {
        const std::string what = "kraus[" + std::to_string(i) + "]";
        kraus.push_back(complex_matrix(parsed.channel_data[i], what));
        require_shape(kraus.back(), dout, din, what);
      }
      return Channel::from_kraus(std::move(kraus), tol);
    }
    case Representation::Choi:
    case Representation::Conditional: {
      const ComplexMatrix m = complex_matrix(parsed.channel_data, to_string(spec.representation));
      require_shape(m, din * dout, din * dout, to_string(spec.representation));
      // the Choi matrix Σ|i⟩⟨j|⊗Λ(|i⟩⟨j|) is the conditional state π_{B|A}
      return channel_from_conditional(ConditionalState::validate(m, {din, dout}, Side::A, tol), tol);
    }
    case Representation::Stochastic: {
      const RealMatrix& t = *spec.stochastic;
      if (t.rows() != static_cast<Eigen::Index>(dout) || t.cols() != static_cast<Eigen::Index>(din)) {
        throw Error(ErrorCode::ShapeMismatch, "stochastic: expected out x in");
      }
      return classical_channel(t, tol);
    }
  }
  throw ParseError("unreachable representation");
}

}  // namespace qcond::cli
