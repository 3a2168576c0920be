// Copyright 2026 The lowadapt Authors.
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

// Command line front end: run, brute, check, gen.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lowadapt/baselines.h"
#include "lowadapt/errors.h"
#include "lowadapt/harness.h"
#include "lowadapt/instances.h"
#include "lowadapt/maximizers.h"
#include "lowadapt/objectives.h"
#include "lowadapt/oracle.h"
#include "lowadapt/threshold.h"

namespace {

using namespace lowadapt;

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::string mode;
  std::string variant;
  std::string out;
  int workers = 0;
};

void ApplyOverrides(const Overrides& o, ExperimentSpec& spec) {
  if (o.seed) spec.seeds = {*o.seed};
  if (!o.out.empty()) spec.output = o.out;
  if (o.workers > 0) spec.workers = o.workers;
  for (auto& a : spec.algorithms) {
    if (!o.mode.empty()) a.params.mode = ParseMode(o.mode);
    if (!o.variant.empty()) a.params.variant = ParseVariant(o.variant);
  }
}

int CmdRun(const std::string& path, const Overrides& o) {
  ExperimentSpec spec = LoadExperimentSpec(path);
  ApplyOverrides(o, spec);
  const ExperimentReport report = RunExperiment(spec, true);
  if (spec.output.empty()) {
    std::cout << FormatResultsCsv(report.rows);
  } else {
    std::cerr << "wrote " << report.rows.size() << " rows to " << spec.output
              << "\n";
  }
  for (const auto& f : report.failures) std::cerr << "FAIL " << f << "\n";
  return report.ok() ? 0 : 1;
}

void PrintSet(const ElementSet& set) {
  std::cout << "{";
  for (std::size_t i = 0; i < set.size(); ++i) {
    std::cout << (i ? "," : "") << set[i];
  }
  std::cout << "}";
}

int CmdBrute(const std::string& path, const Overrides& o) {
  ExperimentSpec spec = LoadExperimentSpec(path);
  ApplyOverrides(o, spec);
  int status = 0;
  for (double point : spec.sweep_values) {
    for (std::uint64_t seed : spec.seeds) {
      const Instance inst = BuildInstance(spec, point, seed);
      const BruteForceResult opt = BruteForceOpt(inst);
      std::printf("seed %llu sweep %.9g opt %.9g set ",
                  static_cast<unsigned long long>(seed), point, opt.value);
      std::fflush(stdout);
      PrintSet(opt.set);
      std::cout << "\n";
      for (const auto& alg : spec.algorithms) {
        const RunResult run = RunAlgorithm(alg, inst, seed, 1);
        const VerifyReport verify = VerifyRun(inst, run);
        const double ratio = run.value > 0 ? opt.value / run.value : 0.0;
        std::printf("  %s value %.9g ratio %.6g rounds %lld %s\n",
                    alg.label.c_str(), run.value, ratio,
                    static_cast<long long>(run.rounds),
                    verify.ok() ? "ok" : "FAIL");
        if (!verify.ok()) status = 1;
      }
    }
  }
  return status;
}

struct Suite {
  std::string name;
  bool passed = true;
  std::string detail;
};

std::shared_ptr<const SetFunction> SmallObjective(int which, int n,
                                                  std::uint64_t seed) {
  switch (which) {
    case 0:
      return std::make_shared<CutFunction>(
          std::make_shared<WeightedGraph>(GenErdosRenyi(n, 0.5, seed)));
    case 1:
      return std::make_shared<CoverageFunction>(
          std::make_shared<CoverageInstance>(
              GenCoverageInstance(n, 20, 0.3, seed)));
    case 2:
      return std::make_shared<RevenueFunction>(
          std::make_shared<RevenueInstance>(
              GenRevenueInstance(n, 0.5, seed)));
    default: {
      MovieGenParams gen;
      gen.n = n;
      gen.params.lambda = 0.2;
      gen.params.mu = 0.2;
      return std::make_shared<MovieFunction>(
          std::make_shared<MovieInstance>(GenMovieInstance(gen, seed)));
    }
  }
}

Suite CheckSubmodularity(std::uint64_t seed) {
  Suite s{"submodularity", true, ""};
  for (int which = 0; which < 4; ++which) {
    auto f = SmallObjective(which, 9, seed + which);
    const SubmodularityReport r = CheckSubmodularExhaustive(*f);
    if (!r.submodular) {
      s.passed = false;
      s.detail += f->name() + " violates diminishing returns; ";
    }
  }
  if (s.detail.empty()) s.detail = "4 objectives, every triple";
  return s;
}

Suite CheckSampling(std::uint64_t seed) {
  Suite s{"sampling_lemma", true, ""};
  auto f = SmallObjective(0, 12, seed);
  std::vector<ElementId> pool(12);
  for (int i = 0; i < 12; ++i) pool[i] = i;
  for (double p : {0.25, 0.5, 0.75}) {
    const SamplingLemmaReport r = CheckSamplingLemma(*f, pool, p, 2000, seed);
    if (!r.holds) {
      s.passed = false;
      s.detail += "p=" + std::to_string(p) + " mean below bound; ";
    }
  }
  if (s.detail.empty()) s.detail = "cut, p in {0.25, 0.5, 0.75}";
  return s;
}

Suite CheckBinaryTables(std::uint64_t seed) {
  Suite s{"binary_tables", true, ""};
  int tables = 0;
  for (int t = 0; t < 200; ++t) {
    auto f = SmallObjective(t % 4, 14, seed + t);
    Rng rng = Rng(seed).Derive(Stream::kTrial, t);
    std::vector<double> costs(14);
    for (auto& c : costs) c = 0.05 + rng.Uniform01();
    const Problem problem{f.get(), costs, 3.0};
    std::vector<ElementId> x;
    for (int i = 0; i < 14; ++i) {
      if (costs[i] <= problem.budget) x.push_back(i);
    }
    const ElementSet seq = SampleSeq(problem, {}, x, rng);
    auto state = f->NewState();
    const PrefixTable table = BuildPrefixTable(
        problem, *state, 0.0, f->Value({}), x, seq, 0.05 + rng.Uniform01());
    ++tables;
    if (!CheckBinMonotonicity(table, 0.2, true)) {
      s.passed = false;
      s.detail = "table " + std::to_string(t) + " is not monotone";
      return s;
    }
  }
  s.detail = std::to_string(tables) + " tables";
  return s;
}

Suite CheckRuns(std::uint64_t seed) {
  Suite s{"verified_runs", true, ""};
  int runs = 0;
  for (int t = 0; t < 12; ++t) {
    const std::uint64_t inst_seed = seed + t;
    auto f = SmallObjective(t % 4, 40, inst_seed);
    std::vector<RunResult> results;
    QueryLedger l1, l2, l3, l4;
    Rng rng = Rng(inst_seed).Derive(Stream::kAlgorithm);
    const Instance knap = MakeKnapsackInstance(
        f, AssignCosts(CostKind::kUniform01, 40, 0.2, inst_seed));
    ParKnapsackParams params;
    params.variant = Variant::kSeq;
    results.push_back(ParKnapsack(knap, params, l1, rng));
    params.variant = Variant::kBin;
    results.push_back(ParKnapsack(knap, params, l2, rng));
    results.push_back(Greedy(knap, l3));
    const Instance card = MakeCardinalityInstance(f, 5);
    results.push_back(ParCardinal(card, ParKnapsackParams{}, l4, rng));
    for (std::size_t r = 0; r < results.size(); ++r) {
      const VerifyReport v = VerifyRun(r == 3 ? card : knap, results[r]);
      ++runs;
      for (const auto& c : v.checks) {
        if (!c.passed) {
          s.passed = false;
          s.detail += results[r].algorithm + " " + c.name + ": " + c.detail +
                      "; ";
        }
      }
    }
  }
  const AuditCounts audit = ThreshAudit();
  if (audit.violations != 0) {
    s.passed = false;
    s.detail += std::to_string(audit.violations) + " audit violations; ";
  }
  if (s.passed) {
    s.detail = std::to_string(runs) + " runs, " +
               std::to_string(audit.runs_checked) + " kernel audits";
  }
  return s;
}

int CmdCheck(const Overrides& o) {
  const std::uint64_t seed = o.seed.value_or(1);
  ResetThreshAudit();
  const std::vector<Suite> suites = {CheckSubmodularity(seed),
                                     CheckSampling(seed),
                                     CheckBinaryTables(seed), CheckRuns(seed)};
  int status = 0;
  for (const auto& s : suites) {
    std::cout << (s.passed ? "PASS " : "FAIL ") << s.name << ": " << s.detail
              << "\n";
    if (!s.passed) status = 1;
  }
  return status;
}

int CmdGen(int n, double p, const Overrides& o) {
  if (o.out.empty()) throw ContractError("gen needs --out");
  const WeightedGraph g = GenErdosRenyi(n, p, o.seed.value_or(1));
  WriteGraphCsv(o.out, g);
  std::cerr << "wrote G(" << n << ", " << p << ") with " << g.edges().size()
            << " edges to " << o.out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Low-adaptivity submodular maximization under knapsack and "
               "cardinality constraints"};
  app.set_version_flag("--version", std::string(lowadapt::Version()));
  app.require_subcommand(1);

  Overrides o;
  std::uint64_t seed = 0;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "Single seed replacing the listed seeds");
    cmd->add_option("--mode", o.mode, "Parameter mode")
        ->check(CLI::IsMember({"theoretical", "practical"}));
    cmd->add_option("--variant", o.variant, "Threshold kernel")
        ->check(CLI::IsMember({"seq", "bin"}));
    cmd->add_option("--out", o.out, "Output path");
  };

  std::string spec_path;
  auto* run = app.add_subcommand("run", "Run an experiment spec");
  run->add_option("spec", spec_path, "JSON experiment spec")
      ->required()
      ->check(CLI::ExistingFile);
  run->add_option("--workers", o.workers, "Concurrent runs");
  add_common(run);

  auto* brute = app.add_subcommand("brute", "Compare runs to brute force");
  brute->add_option("spec", spec_path, "JSON experiment spec")
      ->required()
      ->check(CLI::ExistingFile);
  add_common(brute);

  auto* check = app.add_subcommand("check", "Run the property suites");
  add_common(check);

  int n = 100;
  double p = 0.1;
  auto* gen = app.add_subcommand("gen", "Write a G(n, p) graph file");
  gen->add_option("--n", n, "Vertices")->check(CLI::PositiveNumber);
  gen->add_option("--p", p, "Edge probability")->check(CLI::Range(0.0, 1.0));
  add_common(gen);

  CLI11_PARSE(app, argc, argv);
  for (auto* cmd : {run, brute, check, gen}) {
    if (cmd->count("--seed") > 0) o.seed = seed;
  }

  try {
    if (*run) return CmdRun(spec_path, o);
    if (*brute) return CmdBrute(spec_path, o);
    if (*check) return CmdCheck(o);
    return CmdGen(n, p, o);
  } catch (const lowadapt::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
