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

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "qcond/error.hpp"

namespace {

using namespace qcond::cli;

struct Invocation {
  std::string command;
  std::string file;
  std::uint64_t seed = 0;
  double tol_scale = 1.0;
  bool timing = false;
  Json options = Json::object();
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double parse_time(const std::string& s) {
  if (s == "inf" || s == "infinity" || s == "+inf") return INFINITY;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ParseError("--t: not a number: " + s);
  }
  if (used != s.size()) throw ParseError("--t: not a number: " + s);
  return v;
}

int run(const Invocation& inv, const std::function<Outcome(const Context&)>& body) {
  const auto start = std::chrono::steady_clock::now();
  Json report;
  report["tool"] = "qcond";
  report["version"] = QCOND_VERSION;
  report["command"] = inv.command;
  Json options = Json{{"seed", inv.seed}, {"tol_scale", inv.tol_scale}};
  for (const auto& [k, v] : inv.options.items()) options[k] = v;
  report["options"] = options;

  int code = kOk;
  std::string summary;
  try {
    const std::string text = read_file(inv.file);
    report["input"] = Json{{"digest", "fnv1a64:" + hex64(fnv1a64(text))}, {"bytes", text.size()}};
    Context ctx{parse_spec(text), qcond::Tolerances{}.scaled(inv.tol_scale), inv.seed};
    report["input"]["name"] = ctx.parsed.spec.name;
    report["input"]["representation"] = to_string(ctx.parsed.spec.representation);
    Outcome o = body(ctx);
    code = o.exit_code;
    report["status"] = code == kOk ? "ok" : "partial";
    report["result"] = std::move(o.result);
    report["residuals"] = std::move(o.residuals);
    report["flags"] = std::move(o.flags);
    report["warnings"] = std::move(o.warnings);
    summary = report["flags"].dump();
  } catch (const ParseError& e) {
    code = kParse;
    report["status"] = "error";
    report["error"] = Json{{"code", "ParseError"}, {"message", e.what()}};
    summary = e.what();
  } catch (const qcond::Error& e) {
    code = qcond::cli::exit_code_for(e);
    report["status"] = "error";
    report["error"] = Json{{"code", std::string(qcond::to_string(e.code()))}, {"message", e.what()}};
    summary = e.what();
  } catch (const std::exception& e) {
    code = kInternal;
    report["status"] = "error";
    report["error"] = Json{{"code", "Internal"}, {"message", e.what()}};
    summary = e.what();
  }
  report["exit_code"] = code;
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  // wall time breaks byte-identical output, so it is opt-in
  if (inv.timing) {
    report["elapsed_seconds"] = elapsed;
  } else {
    report["elapsed_seconds"] = nullptr;
  }
  std::cout << dump(report);
  std::cerr << "qcond " << inv.command << ": " << report["status"].get<std::string>() << " (exit " << code
            << ", " << std::fixed << std::setprecision(3) << elapsed << "s) " << summary << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qcond: quantum channels as quantum conditional probabilities"};
  app.require_subcommand(1);
  app.fallthrough();

  Invocation inv;
  app.add_option("--seed", inv.seed, "Seed for internal random choices")->default_val(0);
  app.add_option("--tol-scale", inv.tol_scale, "Multiply every numerical threshold")
      ->default_val(1.0)
      ->check(CLI::PositiveNumber);
  app.add_flag("--timing", inv.timing, "Record elapsed wall time (output is no longer reproducible)");

  StateOptions bayes_opt, cc_opt;
  BroadcastOptions bc_opt;
  DecohereOptions dec_opt;
  std::string unitary, basis, t_text = "0";

  auto* classify = app.add_subcommand("classify", "Structural classification of a channel");
  classify->add_option("file", inv.file, "Channel spec file")->required();

  auto* bayes = app.add_subcommand("bayes", "Recovery channel and Bayes identities for a named state");
  bayes->add_option("file", inv.file, "Channel spec file")->required();
  bayes->add_option("--state", bayes_opt.state, "Name of the input state")->required();

  auto* broadcast = app.add_subcommand("broadcast", "Fixed point, damping basis and broadcast state");
  broadcast->add_option("file", inv.file, "Channel spec file")->required();
  broadcast->add_option("--unitary", unitary, "Name of a unitary for spectrum broadcasting");

  auto* cc = app.add_subcommand("cc-membership", "Whether (id ⊗ Λ)ρ_CA is classical-classical");
  cc->add_option("file", inv.file, "Channel spec file")->required();
  cc->add_option("--state", cc_opt.state, "Name of the bipartite state")->required();

  auto* dec = app.add_subcommand("decohere", "Dephasing semigroup applied to a named state");
  dec->add_option("file", inv.file, "Channel spec file")->required();
  dec->add_option("--state", dec_opt.state, "Name of the state")->required();
  dec->add_option("--gamma", dec_opt.gamma, "Dephasing rate")->required();
  dec->add_option("--t", t_text, "Time, or 'inf' for the dephased limit")->required();
  dec->add_option("--basis", basis, "Name of a unitary whose columns are the dephasing basis");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kParse;
  }

  if (*classify) {
    inv.command = "classify";
    return run(inv, run_classify);
  }
  if (*bayes) {
    inv.command = "bayes";
    inv.options["state"] = bayes_opt.state;
    return run(inv, [&](const Context& ctx) { return run_bayes(ctx, bayes_opt); });
  }
  if (*broadcast) {
    inv.command = "broadcast";
    if (!unitary.empty()) {
      bc_opt.unitary = unitary;
      inv.options["unitary"] = unitary;
    }
    return run(inv, [&](const Context& ctx) { return run_broadcast(ctx, bc_opt); });
  }
  if (*cc) {
    inv.command = "cc-membership";
    inv.options["state"] = cc_opt.state;
    return run(inv, [&](const Context& ctx) { return run_cc_membership(ctx, cc_opt); });
  }
  inv.command = "decohere";
  inv.options["state"] = dec_opt.state;
  inv.options["gamma"] = dec_opt.gamma;
  inv.options["t"] = t_text;
  if (!basis.empty()) {
    dec_opt.basis = basis;
    inv.options["basis"] = basis;
  }
  return run(inv, [&](const Context& ctx) {
    DecohereOptions o = dec_opt;
    o.t = parse_time(t_text);
    return run_decohere(ctx, o);
  });
}
