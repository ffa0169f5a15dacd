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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "payscheme/bounds.h"
#include "payscheme/case_studies.h"
#include "payscheme/cli.h"
#include "payscheme/errors.h"
#include "payscheme/info_structure.h"
#include "payscheme/io.h"
#include "payscheme/lp_solver.h"
#include "payscheme/reductions.h"
#include "payscheme/security.h"
#include "payscheme/synthesis.h"
#include "test_util.h"

namespace payscheme {
namespace {

namespace fs = std::filesystem;

// Collects failed checks for one criterion.
class Checker {
 public:
  void Expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    if (failures_++ < 3) {
      if (!detail_.empty()) detail_ += "; ";
      detail_ += what;
    }
  }
  void Note(const std::string& text) {
    if (!note_.empty()) note_ += "; ";
    note_ += text;
  }
  bool ok() const { return failures_ == 0; }
  std::string Summary() const {
    std::string s = std::to_string(checks_) + " checks";
    if (failures_ > 0) s += ", " + std::to_string(failures_) + " failed: " + detail_;
    if (!note_.empty()) s += " [" + note_ + "]";
    return s;
  }

 private:
  int checks_ = 0;
  int failures_ = 0;
  std::string detail_;
  std::string note_;
};

std::string Fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun Call(const std::vector<std::string>& args) {
  std::istringstream in;
  std::ostringstream out, err;
  CliRun r;
  r.code = Dispatch(args, in, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag)
      : path_(fs::temp_directory_path() /
              ("payscheme_accept_" + std::to_string(::getpid()) + "_" + tag)) {
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  std::string operator/(const std::string& name) const { return (path_ / name).string(); }
  void Write(const std::string& name, const std::string& text) const {
    std::ofstream(path_ / name) << text;
  }

 private:
  fs::path path_;
};

// Writes commerce.json, target.json and closed_form.json into `dir`.
bool GenCommerce(const TempDir& dir, Checker& c) {
  const CliRun gen = Call({"gen", "commerce", "--x", "100", "--xprime", "50", "--eps", "0.1",
                           "--target-out", dir / "target.json", "--scheme-out",
                           dir / "closed_form.json"});
  c.Expect(gen.code == 0, "gen commerce exit " + std::to_string(gen.code) + " " + gen.err);
  dir.Write("commerce.json", gen.out);
  return gen.code == 0;
}

void CommerceGolden(Checker& c) {
  const TempDir dir("c1");
  if (!GenCommerce(dir, c)) return;
  const CliRun r = Call({"implement", dir / "commerce.json", "--target", dir / "target.json"});
  c.Expect(r.code == 0, "implement exit " + std::to_string(r.code) + " " + r.err);
  if (r.code != 0) return;
  const Json doc = Json::parse(r.out);
  const Eigen::MatrixXd lambda = ParseMatrix(doc["lambda"], "lambda");
  const Eigen::MatrixXd expected =
      (Eigen::MatrixXd(2, 3) << 0, -25, 225, 0, 56.25, -6.25).finished();
  c.Expect(lambda.rows() == 2 && lambda.cols() == 3 &&
               (lambda - expected).cwiseAbs().maxCoeff() < 1e-9,
           "lambda differs from closed form");
  const Eigen::VectorXd deposits = ParseVector(doc["max_deposits"], "max_deposits");
  c.Expect(deposits.size() == 2, "two deposits expected");
  if (deposits.size() != 2) return;
  c.Expect(std::abs(deposits(0) - 225) < 1e-9, "buyer deposit " + Fmt(deposits(0)));
  c.Expect(std::abs(deposits(1) - 225.0 / 4) < 1e-9, "seller deposit " + Fmt(deposits(1)));
  c.Expect(std::abs(deposits(1) - 57) < 1, "seller deposit not about 57");
  c.Note("deposits " + Fmt(deposits(0)) + ", " + Fmt(deposits(1)));
}

void CommerceSharpness(Checker& c) {
  const TempDir dir("c2");
  if (!GenCommerce(dir, c)) return;
  const CliRun ok = Call({"verify", dir / "commerce.json", dir / "closed_form.json", "--delta",
                          "100", "--t", "1"});
  c.Expect(ok.code == 0, "verify at 100 exit " + std::to_string(ok.code));
  const CliRun bad = Call({"verify", dir / "commerce.json", dir / "closed_form.json", "--delta",
                           "100.001", "--t", "1"});
  c.Expect(bad.code == 1, "verify at 100.001 exit " + std::to_string(bad.code));
  if (bad.code != 1) return;
  const Json doc = Json::parse(bad.out);
  c.Expect(doc["pass"] == false, "pass flag at 100.001");
  c.Expect(doc["num_constraints"] == 3, "constraint count");
  c.Expect(doc["num_violations"] == 3, "binding count " + doc["num_violations"].dump());
}

void PvcCaseStudy(Checker& c) {
  double worst_gap = 0.0;
  for (int n : {2, 3}) {
    for (double eps : {0.1, 0.3, 0.5}) {
      for (double delta : {0.0, 1.0, 2.5}) {
        PvcParams p;
        p.n = n;
        p.eps = eps;
        p.delta = delta;
        const PvcCase pvc = BuildPvc(p);
        const std::string tag = "n=" + std::to_string(n) + " eps=" + Fmt(eps) +
                                " delta=" + Fmt(delta);
        c.Expect(Verify(pvc.tree, pvc.info, pvc.scheme, pvc.honest, {delta, 1}).pass,
                 tag + " fails at delta");
        const VerifyReport above =
            Verify(pvc.tree, pvc.info, pvc.scheme, pvc.honest, {delta + 1e-3, 1});
        c.Expect(!above.pass, tag + " still passes at delta+1e-3");
        worst_gap = std::max(worst_gap, above.slacks.minCoeff() + 1e-3);

        const int m = pvc.tree.num_leaves();
        const Eigen::MatrixXd left = LeftInverse(pvc.info);
        c.Expect(left.cols() == pvc.info.num_symbols() && left.rows() == m,
                 tag + " left inverse shape");
        if (left.cols() == pvc.info.num_symbols()) {
          const Eigen::MatrixXd prod = pvc.info.emission * left;
          c.Expect((prod - Eigen::MatrixXd::Identity(prod.rows(), prod.cols()))
                           .cwiseAbs().maxCoeff() < 1e-8,
                   tag + " Phi * left inverse != I");
        }

        // Oracle: solve Phi^T Lambda^T = (U - E)^T directly.
        const Eigen::MatrixXd rhs = (pvc.tree.utility_matrix() - pvc.target).transpose();
        const Eigen::MatrixXd oracle =
            pvc.info.emission.transpose().colPivHouseholderQr().solve(rhs).transpose();
        const double formula = ((1 - eps) * p.u_plus + delta) / eps;
        c.Expect(std::abs(oracle.maxCoeff() - formula) < 1e-9,
                 tag + " oracle deposit " + Fmt(oracle.maxCoeff()));
        c.Expect(std::abs(DiagnoseScheme(pvc.scheme).max_deposits.maxCoeff() - formula) <
                     1e-9,
                 tag + " derived deposit");
      }
    }
  }
  c.Note("min slack at delta is " + Fmt(worst_gap));
}

void SchemeForTargetSuite(Checker& c) {
  std::mt19937_64 rng(1001);
  int full = 0;
  while (full < 50) {
    const int m = testing::UniformInt(rng, 1, 5);
    const int s = testing::UniformInt(rng, m, 6);
    const InfoStructure info = InfoStructure::Create(
        std::vector<std::string>(s, "x"), testing::RandomStochastic(rng, s, m));
    if (NumericalRank(info.emission) != m) continue;
    ++full;
    const int n = testing::UniformInt(rng, 1, 3);
    for (int k = 0; k < 5; ++k) {
      const Eigen::MatrixXd u = testing::RandomMatrix(rng, n, m);
      const Eigen::MatrixXd e = testing::RandomMatrix(rng, n, m);
      try {
        const PaymentScheme lambda = SchemeForTarget(u, e, info);
        c.Expect((ImplementedUtilities(u, lambda, info) - e).cwiseAbs().maxCoeff() < 1e-8,
                 "full-rank residual");
      } catch (const Error& err) {
        c.Expect(false, std::string("full-rank target rejected: ") + err.what());
      }
    }
  }
  for (int trial = 0; trial < 20; ++trial) {
    const int m = testing::UniformInt(rng, 2, 5);
    const int s = testing::UniformInt(rng, 1, 6);
    Eigen::MatrixXd phi = testing::RandomStochastic(rng, s, m);
    const int a = testing::UniformInt(rng, 0, m - 1);
    int b = testing::UniformInt(rng, 0, m - 2);
    if (b >= a) ++b;
    phi.col(b) = phi.col(a);
    const InfoStructure info = InfoStructure::Create(std::vector<std::string>(s, "x"), phi);
    const int n = testing::UniformInt(rng, 1, 3);
    const Eigen::MatrixXd u = testing::RandomMatrix(rng, n, m);
    const Eigen::MatrixXd lambda = testing::RandomMatrix(rng, n, s);
    // Implementable, except the duplicated pair no longer shifts together.
    Eigen::MatrixXd e = ImplementedUtilities(u, {lambda}, info);
    e(0, a) += 1.0;
    bool rejected = false;
    try {
      SchemeForTarget(u, e, info);
    } catch (const Error& err) {
      rejected = err.code() == ErrorCode::kTargetNotImplementable;
    }
    c.Expect(rejected, "rank-deficient target accepted");
  }
}

void ZeroInflationSuite(Checker& c) {
  std::mt19937_64 rng(1002);
  testing::RandomGameOptions options;
  options.min_symbols = 3;
  options.max_symbols = 6;
  options.chance_share = 0.2;
  int solved = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const testing::RandomGame g = testing::MakeRandomGame(rng, options);
    const int t = testing::UniformInt(rng, 1, std::min(2, g.tree.num_players()));
    SynthesisOptions opts;
    opts.zero_inflation = true;
    opts.objective = trial % 2 == 0 ? Objective::kWeightedCost : Objective::kMinMaxDeposit;
    CostVector cost = CostVector::Uniform(g.tree.num_players(), g.info.num_symbols());
    for (int v = 0; v < cost.weights.size(); ++v) cost.weights(v) = testing::UniformReal(rng, 0, 2);
    const SynthesisResult r = Synthesize(g.tree, g.info, g.profile,
                                         {testing::UniformReal(rng, 0, 2), t}, cost, opts);
    if (r.status != LpStatus::kOptimal) continue;
    ++solved;
    const Eigen::MatrixXd e = ImplementedUtilities(g.tree.utility_matrix(), r.scheme, g.info);
    const Eigen::MatrixXd diff = g.tree.utility_matrix() - e;
    c.Expect(diff.colwise().sum().cwiseAbs().maxCoeff() < 1e-7,
             "column sum of U-E " + Fmt(diff.colwise().sum().cwiseAbs().maxCoeff()));
  }
  c.Expect(solved >= 10, "only " + std::to_string(solved) + " solvable instances");
  c.Note(std::to_string(solved) + " solved instances");
}

void ConstraintOracleSuite(Checker& c) {
  std::mt19937_64 rng(1003);
  testing::RandomGameOptions options;
  options.chance_share = 0.3;
  for (int trial = 0; trial < 200; ++trial) {
    const testing::RandomGame g = testing::MakeRandomGame(rng, options);
    c.Expect(g.tree.num_nodes() <= 12, "tree too large");
    const int t = testing::UniformInt(rng, 1, std::min(2, g.tree.num_players()));
    const ConstraintSystem sys = BuildConstraints(g.tree, g.profile, {0.5, t});
    const auto oracle = testing::ConstraintOracle(g.tree, g.profile).Rows(t);
    c.Expect(testing::SystemRows(sys) == oracle &&
                 static_cast<std::size_t>(sys.num_rows()) == oracle.size(),
             "trial " + std::to_string(trial) + " row sets differ");
  }
}

void LpOracleSuite(Checker& c) {
  std::mt19937_64 rng(1004);
  int optimal = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const LinearProgram lp = testing::RandomIntegerLp(rng);
    const testing::OracleResult oracle = testing::VertexOracle(lp);
    const LpOutcome out = Solve(lp);
    const std::string tag = "trial " + std::to_string(trial);
    c.Expect(out.status == oracle.status, tag + " status");
    if (out.status != LpStatus::kOptimal || oracle.status != LpStatus::kOptimal) continue;
    ++optimal;
    c.Expect(std::abs(out.value - oracle.value) < 1e-7, tag + " optimum");
    c.Expect(testing::FeasibleWithin(lp, out.x, 1e-7), tag + " infeasible point");
  }
  c.Note(std::to_string(optimal) + " optimal programs");
}

void SynthesisSoundness(Checker& c) {
  std::mt19937_64 rng(1005);
  testing::RandomGameOptions options;
  options.min_symbols = 3;
  options.max_symbols = 6;
  options.chance_share = 0.2;
  int solved = 0;
  for (int trial = 0; trial < 5000 && solved < 100; ++trial) {
    const testing::RandomGame g = testing::MakeRandomGame(rng, options);
    const int t = testing::UniformInt(rng, 1, std::min(2, g.tree.num_players()));
    const CostVector cost = CostVector::Uniform(g.tree.num_players(), g.info.num_symbols());
    SynthesisOptions opts;
    opts.objective = Objective::kMinMaxDeposit;
    // Solvable instances: the largest delta is feasible (feasibility is
    // monotone in delta).
    if (Synthesize(g.tree, g.info, g.profile, {2.0, t}, cost, opts).status !=
        LpStatus::kOptimal) {
      continue;
    }
    ++solved;
    double previous = -1e300;
    for (double delta : {0.0, 0.5, 1.0, 2.0}) {
      const SynthesisResult r = Synthesize(g.tree, g.info, g.profile, {delta, t}, cost, opts);
      const std::string tag = "instance " + std::to_string(solved) + " delta " + Fmt(delta);
      c.Expect(r.status == LpStatus::kOptimal, tag + " not optimal");
      if (r.status != LpStatus::kOptimal) break;
      c.Expect(Verify(g.tree, g.info, r.scheme, g.profile, {delta, t}).pass,
               tag + " fails verify");
      c.Expect(r.objective >= previous - 1e-7, tag + " objective decreased");
      previous = r.objective;
    }
  }
  c.Expect(solved == 100, "only " + std::to_string(solved) + " solvable instances");
}

void ReductionRoundTrip(Checker& c) {
  std::mt19937_64 rng(1006);
  int feasible = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int rows = testing::UniformInt(rng, 1, 4), vars = testing::UniformInt(rng, 1, 4);
    Eigen::MatrixXd a(rows, vars);
    for (int i = 0; i < rows; ++i) {
      for (int k = 0; k < vars; ++k) a(i, k) = testing::UniformInt(rng, 0, 4);
      if (a.row(i).sum() == 0) a(i, testing::UniformInt(rng, 0, vars - 1)) = 1;
    }
    Eigen::VectorXd b(rows), x(vars);
    for (int i = 0; i < rows; ++i) b(i) = testing::UniformInt(rng, -2, 8);
    for (int k = 0; k < vars; ++k) x(k) = 0.5 * testing::UniformInt(rng, 0, 6);
    const LpGadgetInstance inst = LpToGame(a, b, Eigen::VectorXd::Ones(vars));
    const PaymentScheme scheme = SchemeFromPoint(inst, x);
    const bool expected = ((a * x - b).array() >= -1e-7).all();
    feasible += expected;
    const std::string tag = "trial " + std::to_string(trial);
    c.Expect(Verify(inst.tree, inst.info, scheme, inst.intended, {0, 1}).pass == expected,
             tag + " verify disagrees with Ax >= b");
    c.Expect(PointFromScheme(inst, scheme) == x, tag + " point not recovered");
  }
  c.Note(std::to_string(feasible) + " feasible points");
}

void EscrowMonteCarlo(Checker& c) {
  const TempDir dir("c10");
  if (!GenCommerce(dir, c)) return;
  dir.Write("profile.json", R"({"sent": "reject"})");
  const std::vector<std::string> args = {"simulate",        dir / "commerce.json",
                                         dir / "closed_form.json", "--profile",
                                         dir / "profile.json", "--trials",
                                         "10000",           "--seed",
                                         "20261016"};
  const CliRun a = Call(args), b = Call(args);
  c.Expect(a.code == 0, "simulate exit " + std::to_string(a.code) + " " + a.err);
  if (a.code != 0) return;
  c.Expect(a.out == b.out, "output not byte-identical");
  const Json doc = Json::parse(a.out);
  for (const std::string player : {"B", "S"}) {
    const double mean = doc["mean"][player].get<double>();
    const double se = doc["std_error"][player].get<double>();
    c.Expect(std::abs(mean + 50) <= 4 * se,
             player + " mean " + Fmt(mean) + " se " + Fmt(se));
    c.Note(player + " mean " + Fmt(mean) + " +- " + Fmt(se));
  }
  c.Expect(doc["min_surplus"].get<double>() >= -1e-9, "negative ledger surplus");
}

void NormIdentities(Checker& c) {
  std::mt19937_64 rng(1011);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = testing::UniformInt(rng, 1, 6), n = testing::UniformInt(rng, 1, 6);
    const Eigen::MatrixXd a = testing::RandomMatrix(rng, m, n);
    const NormReport r = Norms(a);
    const double tol = 1e-9;
    const std::string tag = "matrix " + std::to_string(trial);
    c.Expect(r.one / std::sqrt(m) <= r.two + tol && r.two <= std::sqrt(n) * r.one + tol,
             tag + " one-norm sandwich");
    c.Expect(r.infinity / std::sqrt(n) <= r.two + tol &&
                 r.two <= std::sqrt(m) * r.infinity + tol,
             tag + " infinity-norm sandwich");
    c.Expect(r.max <= r.two + tol && r.two <= std::sqrt(m * n) * r.max + tol,
             tag + " max-norm sandwich");
  }

  testing::RandomGameOptions options;
  options.min_symbols = 3;
  options.max_symbols = 5;
  int checked = 0, covered = 0;
  for (int trial = 0; trial < 300 && checked < 100; ++trial) {
    const testing::RandomGame g = testing::MakeRandomGame(rng, options);
    const SecurityParams params{testing::UniformReal(rng, 0, 3), 1};
    BoundReport r;
    try {
      r = DepositLowerBound(g.tree, g.info, g.profile, params);
    } catch (const Error& err) {
      if (err.code() == ErrorCode::kNoConstraints) continue;
      throw;
    }
    SynthesisOptions opts;
    opts.objective = Objective::kMinMaxDeposit;
    const SynthesisResult s = Synthesize(
        g.tree, g.info, g.profile, params,
        CostVector::Uniform(g.tree.num_players(), g.info.num_symbols()), opts);
    if (s.status != LpStatus::kOptimal) continue;
    ++checked;
    c.Expect(r.conservative_bound <= r.paper_bound + 1e-12, "conservative above paper bound");
    c.Expect(s.objective >= r.minmax_deposit - 1e-7,
             "synthesized " + Fmt(s.objective) + " below relaxation " + Fmt(r.minmax_deposit));
    covered += s.objective >= r.paper_bound - 1e-9;
  }
  c.Expect(checked > 0, "no bound instances");
  c.Note("paper_bound met on " + std::to_string(covered) + "/" + std::to_string(checked) +
         " instances (reported only)");
}

}  // namespace
}  // namespace payscheme

int main() {
  using payscheme::Checker;
  struct Criterion {
    int id;
    const char* name;
    std::function<void(Checker&)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "commerce golden numbers", payscheme::CommerceGolden},
      {2, "commerce security sharpness", payscheme::CommerceSharpness},
      {3, "PVC case study", payscheme::PvcCaseStudy},
      {4, "scheme-for-target property suite", payscheme::SchemeForTargetSuite},
      {5, "zero-inflation property suite", payscheme::ZeroInflationSuite},
      {6, "constraint-builder oracle equivalence", payscheme::ConstraintOracleSuite},
      {7, "LP solver oracle", payscheme::LpOracleSuite},
      {8, "synthesis soundness", payscheme::SynthesisSoundness},
      {9, "reduction round trip", payscheme::ReductionRoundTrip},
      {10, "escrow Monte Carlo", payscheme::EscrowMonteCarlo},
      {11, "norm identities and deposit bounds", payscheme::NormIdentities},
  };
  int failed = 0;
  for (const Criterion& criterion : criteria) {
    Checker checker;
    try {
      criterion.run(checker);
    } catch (const std::exception& e) {
      checker.Expect(false, std::string("exception: ") + e.what());
    }
    failed += !checker.ok();
    std::printf("[%d] %s: %s (%s)\n", criterion.id, criterion.name,
                checker.ok() ? "PASS" : "FAIL", checker.Summary().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
