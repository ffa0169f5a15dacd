// Copyright 2026 The payscheme Authors
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


#include "payscheme/cli.h"

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "payscheme/bounds.h"
#include "payscheme/case_studies.h"
#include "payscheme/errors.h"
#include "payscheme/escrow_sim.h"
#include "payscheme/io.h"
#include "payscheme/reductions.h"
#include "payscheme/security.h"
#include "payscheme/synthesis.h"

namespace payscheme {

namespace {

struct Options {
  std::string game;
  std::string scheme;
  std::string target;
  std::string profile;
  std::string output;
  std::string target_out;
  std::string scheme_out;
  std::string lp;
  double delta = 0.0;
  int t = 1;
  std::string objective = "cost";
  bool zero_inflation = false;
  std::string honest_invariant = "off";
  int trials = 10000;
  std::uint64_t seed = 0;
  CommerceParams commerce;
  PvcParams pvc;
  std::vector<double> point;
  std::vector<double> damages;
};

class Context {
 public:
  Context(std::istream& in, std::ostream& out, std::ostream& err)
      : in_(in), out_(out), err_(err) {}

  Json Read(const std::string& path) {
    if (path == "-") {
      if (stdin_used_) {
        throw Error(ErrorCode::kParseError, "standard input read twice");
      }
      stdin_used_ = true;
    }
    return ReadJson(path, in_);
  }
  void Emit(const Json& doc) { out_ << doc.dump(2) << '\n'; }
  std::ostream& err() { return err_; }

 private:
  std::istream& in_;
  std::ostream& out_;
  std::ostream& err_;
  bool stdin_used_ = false;
};

Json Names(const std::vector<std::string>& names, const Eigen::VectorXd& v) {
  Json out = Json::object();
  for (std::size_t k = 0; k < names.size(); ++k) out[names[k]] = Number(v(k));
  return out;
}

std::vector<std::string> LeafIds(const GameTree& tree) {
  std::vector<std::string> ids;
  for (int v : tree.leaf_nodes()) ids.push_back(tree.node(v).id);
  return ids;
}

void AddSchemeFields(Json& doc, const std::vector<std::string>& alphabet,
                     const PaymentScheme& scheme) {
  const Json fields = SchemeFileToJson(alphabet, scheme);
  for (const auto& [key, value] : fields.items()) doc[key] = value;
  const SchemeDiagnostics diag = DiagnoseScheme(scheme);
  doc["column_sums"] = VectorToJson(diag.column_sums);
  doc["self_contained"] = diag.self_contained;
  doc["zero_inflation"] = diag.zero_inflation;
}

int RunSynth(const Options& o, Context& ctx) {
  const GameFile game = ParseGameFile(ctx.Read(o.game));
  const SecurityParams params{o.delta, o.t};
  ValidateParams(params, game.tree.num_players());
  SynthesisOptions options;
  options.objective = o.objective == "minmax" ? Objective::kMinMaxDeposit
                                              : Objective::kWeightedCost;
  options.zero_inflation = o.zero_inflation;
  if (o.honest_invariant == "per-leaf") {
    options.honest_invariance = HonestInvariance::kPerLeaf;
  } else if (o.honest_invariant == "expectation") {
    options.honest_invariance = HonestInvariance::kExpectation;
  }
  const CostVector cost =
      game.costs ? *game.costs
                 : CostVector::Uniform(game.tree.num_players(),
                                       game.info.num_symbols());
  const SynthesisResult result =
      Synthesize(game.tree, game.info, game.intended, params, cost, options);

  Json doc;
  doc["command"] = "synth";
  doc["status"] = std::string(LpStatusName(result.status));
  doc["delta"] = Number(o.delta);
  doc["t"] = o.t;
  doc["objective_kind"] = o.objective;
  doc["num_constraints"] = result.constraints.num_rows();
  if (result.status != LpStatus::kOptimal) {
    ctx.err() << "synth: program is " << LpStatusName(result.status) << '\n';
    ctx.Emit(doc);
    return kExitFailed;
  }
  doc["objective"] = Number(result.objective);
  AddSchemeFields(doc, game.info.alphabet, result.scheme);
  if (!o.output.empty()) {
    WriteJson(o.output, SchemeFileToJson(game.info.alphabet, result.scheme));
  }
  ctx.Emit(doc);
  return kExitOk;
}

int RunVerify(const Options& o, Context& ctx) {
  const GameFile game = ParseGameFile(ctx.Read(o.game));
  const SchemeFile scheme = ParseSchemeFile(ctx.Read(o.scheme), &game);
  const SecurityParams params{o.delta, o.t};
  ValidateParams(params, game.tree.num_players());
  const ConstraintSystem system =
      BuildConstraints(game.tree, game.intended, params);
  const VerifyReport report = CheckConstraints(
      system,
      ImplementedUtilities(game.tree.utility_matrix(), scheme.scheme, game.info));

  const std::vector<std::string> leaves = LeafIds(game.tree);
  const std::vector<std::string>& players = game.tree.players();
  Json violations = Json::array();
  for (const Violation& v : report.violations) {
    const ConstraintRow& row = system.rows[v.row];
    Json coalition = Json::array();
    for (int i : row.coalition) coalition.push_back(players[i]);
    Json entry;
    entry["row"] = v.row;
    entry["subgame"] = row.subgame_id;
    entry["coalition"] = coalition;
    entry["player"] = players[row.player];
    entry["leaf"] = leaves[row.leaf];
    entry["slack"] = Number(v.slack);
    violations.push_back(entry);
  }
  Json doc;
  doc["command"] = "verify";
  doc["pass"] = report.pass;
  doc["delta"] = Number(o.delta);
  doc["t"] = o.t;
  doc["num_constraints"] = report.num_constraints;
  doc["num_violations"] = static_cast<int>(report.violations.size());
  doc["summary"] = std::to_string(report.num_constraints) + " constraints, " +
                   std::to_string(report.violations.size()) + " violations";
  doc["violations"] = violations;
  doc["slacks"] = VectorToJson(report.slacks);
  doc["implemented"] = MatrixToJson(report.implemented);
  ctx.Emit(doc);
  return report.pass ? kExitOk : kExitFailed;
}

int RunImplement(const Options& o, Context& ctx) {
  const GameFile game = ParseGameFile(ctx.Read(o.game));
  const Json target_doc = ctx.Read(o.target);
  const Eigen::MatrixXd target = ParseMatrix(
      target_doc.is_object() && target_doc.contains("target")
          ? target_doc["target"]
          : target_doc,
      "target");
  const Eigen::MatrixXd& u = game.tree.utility_matrix();
  if (target.rows() != u.rows() || target.cols() != u.cols()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "target must be " + std::to_string(u.rows()) + " x " +
                    std::to_string(u.cols()));
  }
  Json doc;
  doc["command"] = "implement";
  PaymentScheme scheme;
  try {
    scheme = SchemeForTarget(u, target, game.info);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kTargetNotImplementable) throw;
    ctx.err() << "implement: " << e.what() << '\n';
    doc["status"] = "not_implementable";
    doc["message"] = e.what();
    ctx.Emit(doc);
    return kExitFailed;
  }
  doc["status"] = "implemented";
  AddSchemeFields(doc, game.info.alphabet, scheme);
  doc["zero_inflation_precondition"] = ZeroInflationPrecondition(u, target);
  doc["residual"] = Number(
      (ImplementedUtilities(u, scheme, game.info) - target).cwiseAbs().maxCoeff());
  if (!o.output.empty()) {
    WriteJson(o.output, SchemeFileToJson(game.info.alphabet, scheme));
  }
  ctx.Emit(doc);
  return kExitOk;
}

int RunBound(const Options& o, Context& ctx) {
  const GameFile game = ParseGameFile(ctx.Read(o.game));
  const SecurityParams params{o.delta, o.t};
  ValidateParams(params, game.tree.num_players());
  Json doc;
  doc["command"] = "bound";
  try {
    const BoundReport r =
        DepositLowerBound(game.tree, game.info, game.intended, params);
    doc["status"] = "ok";
    doc["delta"] = Number(r.delta);
    doc["t"] = r.t;
    doc["alpha"] = r.alpha;
    doc["num_players"] = r.num_players;
    doc["num_symbols"] = r.num_symbols;
    doc["au_norm"] = Number(r.au_norm);
    doc["delta_term_paper"] = Number(r.delta_term_paper);
    doc["delta_term_conservative"] = Number(r.delta_term_conservative);
    doc["utility_term"] = Number(r.utility_term);
    doc["paper_bound"] = Number(r.paper_bound);
    doc["conservative_bound"] = Number(r.conservative_bound);
    doc["minmax_deposit"] = Number(r.minmax_deposit);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNoConstraints) throw;
    ctx.err() << "bound: " << e.what() << '\n';
    doc["status"] = "no_constraints";
    doc["delta"] = Number(o.delta);
    doc["t"] = o.t;
    doc["alpha"] = 0;
    doc["minmax_deposit"] = Number(
        MinMaxDeposit(game.tree, game.info, game.intended, o.t));
  }
  ctx.Emit(doc);
  return kExitOk;
}

int RunSpe(const Options& o, Context& ctx) {
  const GameFile game = ParseGameFile(ctx.Read(o.game));
  const StrategyProfile spe = BackwardInduction(game.tree);
  const std::vector<std::string>& players = game.tree.players();
  const VerifyReport zero = Verify(
      game.tree, game.info,
      PaymentScheme::Zero(game.tree.num_players(), game.info.num_symbols()),
      game.intended, SecurityParams{0.0, 1});
  Json doc;
  doc["command"] = "spe";
  doc["profile"] = ProfileToJson(spe);
  doc["utilities"] = Names(players, ExpectedUtilities(game.tree, spe));
  doc["intended_utilities"] =
      Names(players, ExpectedUtilities(game.tree, game.intended));
  doc["matches_intended"] = spe == game.intended;
  doc["intended_secure_without_payments"] = zero.pass;
  ctx.Emit(doc);
  return kExitOk;
}

int RunSimulate(const Options& o, Context& ctx) {
  const GameFile game = ParseGameFile(ctx.Read(o.game));
  const SchemeFile scheme = ParseSchemeFile(ctx.Read(o.scheme), &game);
  // The profile file overrides the intended moves it names.
  StrategyProfile profile = game.intended;
  if (!o.profile.empty()) {
    const StrategyProfile overlay = ParseProfile(ctx.Read(o.profile));
    for (const auto& [branch, move] : overlay.choices()) {
      profile.Set(branch, move);
    }
  }
  const MonteCarloReport r = MonteCarlo(game.tree, game.info, scheme.scheme,
                                        profile, o.trials, o.seed);
  const Eigen::VectorXd expected =
      ImplementedUtilities(game.tree.utility_matrix(), scheme.scheme,
                           game.info) *
      HonestOutcome(game.tree, game.tree.node(game.tree.root()).id, profile)
          .leaf_weights;
  const std::vector<std::string>& players = game.tree.players();
  Json doc;
  doc["command"] = "simulate";
  doc["trials"] = r.trials;
  doc["seed"] = r.seed;
  doc["profile"] = ProfileToJson(profile);
  doc["mean"] = Names(players, r.mean);
  doc["std_error"] = Names(players, r.std_error);
  doc["expected"] = Names(players, expected);
  doc["symbol_frequencies"] = Names(game.info.alphabet, r.symbol_frequencies);
  doc["leaf_frequencies"] = Names(LeafIds(game.tree), r.leaf_frequencies);
  doc["min_surplus"] = Number(r.min_surplus);
  doc["min_repayment"] = Number(r.min_repayment);
  ctx.Emit(doc);
  return kExitOk;
}

int RunGenCommerce(const Options& o, Context& ctx) {
  const CommerceCase c = BuildCommerce(o.commerce);
  if (!o.target_out.empty()) {
    WriteJson(o.target_out, Json{{"target", MatrixToJson(c.target)}});
  }
  if (!o.scheme_out.empty()) {
    WriteJson(o.scheme_out, SchemeFileToJson(c.info.alphabet, c.closed_form));
  }
  ctx.Emit(GameFileToJson(GameFile{c.tree, c.info, c.honest, std::nullopt}));
  return kExitOk;
}

int RunGenPvc(const Options& o, Context& ctx) {
  const PvcCase c = BuildPvc(o.pvc);
  if (!o.target_out.empty() && c.target.size() > 0) {
    WriteJson(o.target_out, Json{{"target", MatrixToJson(c.target)}});
  }
  if (!o.scheme_out.empty() && c.scheme.lambda.size() > 0) {
    Json doc = SchemeFileToJson(c.info.alphabet, c.scheme);
    doc["column_sums"] = VectorToJson(c.column_sums);
    doc["self_contained"] = c.self_contained;
    doc["paper_threshold"] = Number(c.paper_threshold);
    doc["derived_threshold"] = Number(c.derived_threshold);
    WriteJson(o.scheme_out, doc);
  }
  ctx.err() << "pvc: self-containment needs delta >= " << c.derived_threshold
            << " (without the 1 - eps factor: " << c.paper_threshold << ")\n";
  ctx.Emit(GameFileToJson(GameFile{c.tree, c.info, c.honest, std::nullopt}));
  return kExitOk;
}

int RunGenFromLp(const Options& o, Context& ctx) {
  const Json lp = ctx.Read(o.lp);
  if (!lp.is_object() || !lp.contains("A") || !lp.contains("b")) {
    throw Error(ErrorCode::kParseError, "LP file needs \"A\" and \"b\"");
  }
  const Eigen::MatrixXd a = ParseMatrix(lp["A"], "A");
  const Eigen::VectorXd b = ParseVector(lp["b"], "b");
  const Eigen::VectorXd c = lp.contains("c")
                                ? ParseVector(lp["c"], "c")
                                : Eigen::VectorXd::Ones(a.cols());
  const LpGadgetInstance inst = LpToGame(a, b, c);
  if (!o.scheme_out.empty()) {
    const Eigen::VectorXd x =
        Eigen::Map<const Eigen::VectorXd>(o.point.data(), o.point.size());
    WriteJson(o.scheme_out,
              SchemeFileToJson(inst.info.alphabet, SchemeFromPoint(inst, x)));
  }
  ctx.Emit(GameFileToJson(
      GameFile{inst.tree, inst.info, inst.intended, inst.costs}));
  return kExitOk;
}

int RunGenAla(const Options& o, Context& ctx) {
  const AlaScheme ala = MakeAlaScheme(
      Eigen::Map<const Eigen::VectorXd>(o.damages.data(), o.damages.size()));
  Json doc;
  AddSchemeFields(doc, ala.alphabet, ala.scheme);
  ctx.Emit(doc);
  return kExitOk;
}

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNumericalBreakdown:
      return kExitNumerical;
    case ErrorCode::kTargetNotImplementable:
      return kExitFailed;
    default:
      return kExitInput;
  }
}

void AddSecurityFlags(CLI::App* cmd, Options& o) {
  cmd->add_option("--delta", o.delta, "security margin")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--t", o.t, "largest coalition size")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int Dispatch(const std::vector<std::string>& args, std::istream& in,
             std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Payment schemes for extensive-form games", "payscheme"};
  app.require_subcommand(1);

  CLI::App* synth = app.add_subcommand("synth", "optimal secure payment scheme");
  synth->add_option("GAME", o.game, "game file or -")->required();
  AddSecurityFlags(synth, o);
  synth->add_option("--objective", o.objective, "cost or minmax")
      ->check(CLI::IsMember({"cost", "minmax"}));
  synth->add_flag("--zero-inflation", o.zero_inflation,
                  "column sums of lambda must vanish");
  synth
      ->add_option("--honest-invariant", o.honest_invariant,
                   "off, per-leaf or expectation")
      ->check(CLI::IsMember({"off", "per-leaf", "expectation"}))
      ->expected(0, 1)
      ->default_str("per-leaf");
  synth->add_option("-o,--output", o.output, "also write the scheme file here");

  CLI::App* verify = app.add_subcommand("verify", "check a scheme");
  verify->add_option("GAME", o.game, "game file or -")->required();
  verify->add_option("SCHEME", o.scheme, "scheme file or -")->required();
  AddSecurityFlags(verify, o);

  CLI::App* implement =
      app.add_subcommand("implement", "scheme realizing a target matrix");
  implement->add_option("GAME", o.game, "game file or -")->required();
  implement->add_option("--target", o.target, "target file")->required();
  implement->add_option("-o,--output", o.output, "also write the scheme file");

  CLI::App* bound = app.add_subcommand("bound", "deposit lower bounds");
  bound->add_option("GAME", o.game, "game file or -")->required();
  AddSecurityFlags(bound, o);

  CLI::App* spe = app.add_subcommand("spe", "subgame perfect equilibrium");
  spe->add_option("GAME", o.game, "game file or -")->required();

  CLI::App* simulate =
      app.add_subcommand("simulate", "Monte Carlo run of the escrow contract");
  simulate->add_option("GAME", o.game, "game file or -")->required();
  simulate->add_option("SCHEME", o.scheme, "scheme file or -")->required();
  simulate->add_option("--profile", o.profile, "moves overriding the intended");
  simulate->add_option("--trials", o.trials, "number of episodes")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--seed", o.seed, "master seed");

  CLI::App* gen = app.add_subcommand("gen", "generate instances");
  gen->require_subcommand(1);
  CLI::App* commerce = gen->add_subcommand("commerce", "escrowed commerce");
  commerce->add_option("--x", o.commerce.x, "price");
  commerce->add_option("--xprime", o.commerce.x_prime, "seller value");
  commerce->add_option("--y", o.commerce.y, "buyer value");
  commerce->add_option("--eps", o.commerce.eps, "oracle error");
  commerce->add_option("--target-out", o.target_out, "write the target E");
  commerce->add_option("--scheme-out", o.scheme_out,
                       "write the closed-form scheme");

  CLI::App* pvc = gen->add_subcommand("pvc", "rational MPC from PVC");
  pvc->add_option("--n", o.pvc.n, "parties");
  pvc->add_option("--eps", o.pvc.eps, "deterrence factor");
  pvc->add_option("--uplus", o.pvc.u_plus, "utility of a successful cheat");
  pvc->add_option("--uplus-each", o.pvc.u_plus_each, "per-party u+");
  pvc->add_option("--uminus", o.pvc.u_minus, "utility of an exposed input");
  pvc->add_option("--delta", o.pvc.delta, "security margin");
  pvc->add_flag("--uncollapsed", o.pvc.uncollapsed,
                "keep the detection chance nodes");
  pvc->add_option("--target-out", o.target_out, "write the target E");
  pvc->add_option("--scheme-out", o.scheme_out, "write the derived scheme");

  CLI::App* from_lp = gen->add_subcommand("from-lp", "gadget game of A x >= b");
  from_lp->add_option("--lp", o.lp, "JSON with A, b and c")->required();
  from_lp->add_option("--x", o.point, "point to encode as a scheme");
  from_lp->add_option("--scheme-out", o.scheme_out, "write the encoded point")
      ->needs("--x");

  CLI::App* ala = gen->add_subcommand("ala", "damage scheme");
  ala->add_option("--damages", o.damages, "one damage per player")->required();

  std::vector<std::string> argv_store = {"payscheme"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code == 0) return kExitOk;
    out << Json{{"status", "error"}, {"error", "UsageError"}, {"message", e.what()}}
               .dump(2)
        << '\n';
    return kExitInput;
  }

  Context ctx(in, out, err);
  try {
    if (synth->parsed()) return RunSynth(o, ctx);
    if (verify->parsed()) return RunVerify(o, ctx);
    if (implement->parsed()) return RunImplement(o, ctx);
    if (bound->parsed()) return RunBound(o, ctx);
    if (spe->parsed()) return RunSpe(o, ctx);
    if (simulate->parsed()) return RunSimulate(o, ctx);
    if (commerce->parsed()) return RunGenCommerce(o, ctx);
    if (pvc->parsed()) return RunGenPvc(o, ctx);
    if (from_lp->parsed()) return RunGenFromLp(o, ctx);
    if (ala->parsed()) return RunGenAla(o, ctx);
    throw Error(ErrorCode::kParseError, "no subcommand given");
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    ctx.Emit(Json{{"status", "error"},
                  {"error", std::string(ErrorCodeName(e.code()))},
                  {"message", e.what()}});
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    ctx.Emit(Json{{"status", "error"},
                  {"error", "Internal"},
                  {"message", e.what()}});
    return kExitNumerical;
  }
  return kExitInput;
}

}  // namespace payscheme
