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

#include "lowadapt/harness.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <tuple>

#include "json.hpp"
#include "lowadapt/baselines.h"
#include "lowadapt/errors.h"
#include "parallel.h"

#ifndef LOWADAPT_VERSION
#define LOWADAPT_VERSION "unknown"
#endif

namespace lowadapt {
namespace {

using nlohmann::json;

std::string Fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

bool CloseEnough(double a, double b) {
  return std::abs(a - b) <= kOracleTolerance * std::max(1.0, std::abs(b));
}

double FreshValue(const SetFunction& f, std::span<const ElementId> set) {
  return f.Value(set);
}

void ReadFile(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, 0, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
}

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (!out) throw Error("write failed for " + path);
}

template <typename T>
T Get(const json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

AlgorithmSpec ParseAlgorithm(const json& j) {
  AlgorithmSpec a;
  a.name = j.at("name").get<std::string>();
  a.label = Get<std::string>(j, "label", a.name);
  static const char* kNames[] = {"greedy", "sample_greedy", "par_knapsack",
                                 "par_knapsack_monotone", "par_cardinal"};
  if (std::find(std::begin(kNames), std::end(kNames), a.name) ==
      std::end(kNames)) {
    throw ContractError("unknown algorithm '" + a.name + "'");
  }
  auto& p = a.params;
  p.epsilon = Get<double>(j, "epsilon", p.epsilon);
  if (j.contains("mode")) p.mode = ParseMode(j.at("mode").get<std::string>());
  if (j.contains("variant")) {
    p.variant = ParseVariant(j.at("variant").get<std::string>());
  }
  if (j.contains("alpha")) p.alpha = j.at("alpha").get<double>();
  if (j.contains("ell")) p.ell = j.at("ell").get<std::int64_t>();
  if (j.contains("repetitions")) {
    p.repetitions = j.at("repetitions").get<int>();
  }
  p.verify_monotone = Get<bool>(j, "verify_monotone", p.verify_monotone);
  if (j.contains("p")) {
    if (a.name == "sample_greedy") {
      a.p = j.at("p").get<double>();
    } else {
      p.p = j.at("p").get<double>();
    }
  }
  return a;
}

json AlgorithmToJson(const AlgorithmSpec& a) {
  json j{{"name", a.name}, {"label", a.label}};
  if (a.name == "sample_greedy") {
    j["p"] = a.p;
  } else if (a.name != "greedy") {
    const auto& p = a.params;
    j["epsilon"] = p.epsilon;
    j["mode"] = ModeName(p.mode);
    j["variant"] = VariantName(p.variant);
    if (p.alpha) j["alpha"] = *p.alpha;
    if (p.p) j["p"] = *p.p;
    if (p.ell) j["ell"] = *p.ell;
    if (p.repetitions) j["repetitions"] = *p.repetitions;
    if (a.name == "par_knapsack_monotone") {
      j["verify_monotone"] = p.verify_monotone;
    }
  }
  return j;
}

json SpecToJson(const ExperimentSpec& s) {
  const auto& o = s.objective;
  json obj{{"kind", o.kind}, {"n", o.n}, {"p", o.p}};
  if (!o.graph_file.empty()) obj["graph_file"] = o.graph_file;
  if (!o.tags_file.empty()) obj["tags_file"] = o.tags_file;
  if (o.kind == "movie") {
    obj["tags"] = o.tags;
    obj["tag_density"] = o.tag_density;
    obj["genres"] = o.genres;
    obj["alpha"] = o.movie.alpha;
    obj["beta"] = o.movie.beta;
    obj["lambda"] = o.movie.lambda;
    obj["mu"] = o.movie.mu;
  }
  if (o.kind == "coverage") {
    obj["items"] = o.items;
    obj["density"] = o.density;
  }
  if (o.kind == "modular" && !o.values.empty()) obj["values"] = o.values;
  json constraint{{"kind", s.constraint == ConstraintKind::kKnapsack
                               ? "knapsack"
                               : "cardinality"}};
  if (s.constraint == ConstraintKind::kCardinality) {
    constraint["k"] = s.cardinality;
  }
  json algorithms = json::array();
  for (const auto& a : s.algorithms) algorithms.push_back(AlgorithmToJson(a));
  return json{{"id", s.id},
              {"objective", obj},
              {"cost_model", CostKindName(s.cost_model)},
              {"constraint", constraint},
              {"budget_fraction", s.budget_fraction},
              {"algorithms", algorithms},
              {"seeds", s.seeds},
              {"sweep",
               {{"parameter", s.sweep_parameter}, {"values", s.sweep_values}}},
              {"output", s.output},
              {"workers", s.workers},
              {"timing", s.timing},
              {"probe_sets", s.probe_sets}};
}

std::shared_ptr<const WeightedGraph> MakeGraph(const ObjectiveSpec& o, int n,
                                               std::uint64_t seed) {
  if (!o.graph_file.empty()) {
    auto g = std::make_shared<WeightedGraph>(LoadGraphCsv(o.graph_file));
    if (g->n() == 0) {
      throw EmptyInstanceError(o.graph_file + ": graph has no vertices");
    }
    return g;
  }
  return std::make_shared<WeightedGraph>(GenErdosRenyi(n, o.p, seed));
}

}  // namespace

const char* Version() { return LOWADAPT_VERSION; }

BruteForceResult BruteForceOpt(const Instance& inst) {
  inst.Validate();
  const int m = static_cast<int>(inst.ground.size());
  if (m > kBruteForceCap) {
    throw CapacityError("BruteForceOpt: " + std::to_string(m) +
                        " elements exceed the cap of " +
                        std::to_string(kBruteForceCap));
  }
  const SetFunction& f = *inst.objective;
  BruteForceResult best;
  best.value = f.Value({});
  ElementSet set;
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << m); ++mask) {
    set.clear();
    double cost = 0.0;
    for (int b = 0; b < m; ++b) {
      if (mask >> b & 1) {
        set.push_back(inst.ground[b]);
        cost += inst.costs[inst.ground[b]];
      }
    }
    const bool feasible =
        inst.constraint == ConstraintKind::kCardinality
            ? static_cast<int>(set.size()) <= inst.cardinality
            : cost <= inst.budget * (1.0 + 1e-12);
    if (!feasible) continue;
    const double v = f.Value(set);
    if (v > best.value || (v == best.value && set < best.set)) {
      best.value = v;
      best.set = set;
    }
  }
  return best;
}

bool VerifyReport::ok() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const Check& c) { return c.passed; });
}

const Check* VerifyReport::Find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

VerifyReport VerifyRun(const Instance& inst, const RunResult& result) {
  VerifyReport report;
  const int n = static_cast<int>(inst.ground.size());
  report.checks.push_back({"feasibility", inst.Feasible(result.solution),
                           "cost " + Fmt(inst.Cost(result.solution)) +
                               " budget " + Fmt(inst.budget)});
  const double fresh = FreshValue(*inst.objective, result.solution);
  report.checks.push_back({"value", CloseEnough(result.value, fresh),
                           "reported " + Fmt(result.value) + " fresh " +
                               Fmt(fresh)});
  bool within = true;
  std::string detail = std::to_string(result.cells.size()) + " cells";
  for (const auto& c : result.cells) {
    if (c.iterations > c.iteration_bound) {
      within = false;
      detail = "cell (" + std::to_string(c.i) + "," + std::to_string(c.j) +
               ") ran " + std::to_string(c.iterations) + " > " +
               std::to_string(c.iteration_bound) + " iterations";
      break;
    }
  }
  report.checks.push_back({"iterations", within, detail});
  if (result.algorithm == "par_knapsack") {
    if (result.params.variant == Variant::kSeq) {
      const std::int64_t ceiling = AdaptivityCeiling(result.params, n);
      report.checks.push_back({"adaptivity", result.rounds <= ceiling,
                               std::to_string(result.rounds) + " rounds, " +
                                   "ceiling " + std::to_string(ceiling)});
    } else {
      const double ceiling = QueryCeiling(result.params, n);
      report.checks.push_back(
          {"queries", static_cast<double>(result.queries) <= ceiling,
           std::to_string(result.queries) + " queries, ceiling " +
               Fmt(ceiling)});
    }
  }
  return report;
}

VerifyReport VerifyThresh(const Problem& problem, const ThreshResult& result,
                          const ThreshParams& params, bool test_mode,
                          QueryLedger& ledger) {
  VerifyReport report;
  double cost = 0.0;
  for (ElementId x : result.solution) cost += problem.costs[x];
  report.checks.push_back({"budget", cost <= problem.budget * (1.0 + 1e-12),
                           "cost " + Fmt(cost) + " budget " +
                               Fmt(problem.budget)});
  const double fresh = FreshValue(*problem.f, result.solution);
  report.checks.push_back({"value", CloseEnough(result.value, fresh),
                           "reported " + Fmt(result.value) + " fresh " +
                               Fmt(fresh)});
  const std::int64_t bound = IterationBound(problem.costs, result.filtered,
                                            params.epsilon, params.ell);
  report.checks.push_back({"iterations", result.iterations <= bound,
                           std::to_string(result.iterations) + " of " +
                               std::to_string(bound)});
  if (test_mode && params.ell && result.ctr == *params.ell) {
    const LeftoverCheck lc = CheckLeftoverGood(problem, result, params, ledger);
    report.checks.push_back({"leftover", lc.holds,
                             "f(S) " + Fmt(lc.value) + " rhs " + Fmt(lc.rhs)});
  }
  return report;
}

std::optional<std::string> ProbeNonnegative(const Instance& inst, int sets,
                                            std::uint64_t seed) {
  Rng rng = Rng(seed).Derive(Stream::kProbe, 1);
  const SetFunction& f = *inst.objective;
  const bool cardinality = inst.constraint == ConstraintKind::kCardinality;
  ElementSet order = inst.ground;
  for (int s = 0; s < sets; ++s) {
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[rng.UniformInt(i)]);
    }
    const std::size_t target = rng.UniformInt(order.size() + 1);
    auto state = f.NewState();
    double used = 0.0;
    std::size_t size = 0;
    for (ElementId x : order) {
      if (size == target) break;
      const bool fits = cardinality
                            ? static_cast<int>(size) < inst.cardinality
                            : used + inst.costs[x] <= inst.budget;
      if (!fits) continue;
      state->Insert(x);
      used += inst.costs[x];
      ++size;
    }
    const double v = state->Value();
    if (!(v >= -kOracleTolerance)) {
      return "objective " + f.name() + " is negative (" + Fmt(v) +
             ") on a feasible set of " + std::to_string(size) +
             " elements (probe " + std::to_string(s) + ")";
    }
  }
  return std::nullopt;
}

ExperimentSpec ParseExperimentSpec(const std::string& json_text,
                                   const std::string& source) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(source, 0, e.what());
  }
  ExperimentSpec s;
  try {
    s.id = Get<std::string>(j, "id", s.id);
    const json& o = j.at("objective");
    auto& obj = s.objective;
    obj.kind = o.at("kind").get<std::string>();
    obj.n = Get<int>(o, "n", obj.n);
    obj.p = Get<double>(o, "p", obj.p);
    obj.graph_file = Get<std::string>(o, "graph_file", "");
    obj.tags_file = Get<std::string>(o, "tags_file", "");
    obj.tags = Get<int>(o, "tags", obj.tags);
    obj.tag_density = Get<double>(o, "tag_density", obj.tag_density);
    obj.genres = Get<int>(o, "genres", obj.genres);
    obj.movie.alpha = Get<double>(o, "alpha", obj.movie.alpha);
    obj.movie.beta = Get<double>(o, "beta", obj.movie.beta);
    obj.movie.lambda = Get<double>(o, "lambda", obj.movie.lambda);
    obj.movie.mu = Get<double>(o, "mu", obj.movie.mu);
    obj.items = Get<int>(o, "items", obj.items);
    obj.density = Get<double>(o, "density", obj.density);
    obj.values = Get<std::vector<double>>(o, "values", {});
    static const char* kKinds[] = {"maxcut", "revenue", "movie", "coverage",
                                   "modular"};
    if (std::find(std::begin(kKinds), std::end(kKinds), obj.kind) ==
        std::end(kKinds)) {
      throw ContractError("unknown objective kind '" + obj.kind + "'");
    }

    s.cost_model = ParseCostKind(Get<std::string>(j, "cost_model", "uniform01"));
    if (j.contains("constraint")) {
      const json& c = j.at("constraint");
      const auto kind = Get<std::string>(c, "kind", "knapsack");
      if (kind == "knapsack") {
        s.constraint = ConstraintKind::kKnapsack;
      } else if (kind == "cardinality") {
        s.constraint = ConstraintKind::kCardinality;
        s.cardinality = Get<int>(c, "k", 0);
      } else {
        throw ContractError("unknown constraint kind '" + kind + "'");
      }
    }
    s.budget_fraction = Get<double>(j, "budget_fraction", s.budget_fraction);
    for (const json& a : j.at("algorithms")) {
      s.algorithms.push_back(ParseAlgorithm(a));
    }
    s.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    if (j.contains("sweep")) {
      const json& sw = j.at("sweep");
      s.sweep_parameter = Get<std::string>(sw, "parameter", "budget");
      s.sweep_values = sw.at("values").get<std::vector<double>>();
    }
    s.output = Get<std::string>(j, "output", "");
    s.workers = Get<int>(j, "workers", s.workers);
    s.timing = Get<bool>(j, "timing", s.timing);
    s.probe_sets = Get<int>(j, "probe_sets", s.probe_sets);
  } catch (const json::exception& e) {
    throw ParseError(source, 0, e.what());
  }

  if (s.seeds.empty()) throw ContractError("spec: seeds must be nonempty");
  if (s.algorithms.empty()) {
    throw ContractError("spec: algorithms must be nonempty");
  }
  if (s.sweep_parameter != "budget" && s.sweep_parameter != "size") {
    throw ContractError("spec: sweep parameter must be budget or size");
  }
  if (s.sweep_values.empty()) {
    s.sweep_values.push_back(
        s.sweep_parameter == "size" ? s.objective.n
        : s.constraint == ConstraintKind::kCardinality ? s.cardinality
                                                       : s.budget_fraction);
  }
  if (!std::is_sorted(s.sweep_values.begin(), s.sweep_values.end())) {
    throw ContractError("spec: sweep values must be ascending");
  }
  std::vector<std::string> labels;
  for (const auto& a : s.algorithms) labels.push_back(a.label);
  std::sort(labels.begin(), labels.end());
  if (std::adjacent_find(labels.begin(), labels.end()) != labels.end()) {
    throw ContractError("spec: algorithm labels must be unique");
  }
  if (s.sweep_parameter == "size" &&
      (!s.objective.graph_file.empty() || !s.objective.tags_file.empty())) {
    throw ContractError("spec: a size sweep needs a generated objective");
  }
  if (s.workers < 1) throw ContractError("spec: workers must be >= 1");
  s.source_json = json_text;
  return s;
}

ExperimentSpec LoadExperimentSpec(const std::string& path) {
  std::string text;
  ReadFile(path, text);
  return ParseExperimentSpec(text, path);
}

Instance BuildInstance(const ExperimentSpec& spec, double sweep_value,
                       std::uint64_t seed) {
  const ObjectiveSpec& o = spec.objective;
  const bool size_sweep = spec.sweep_parameter == "size";
  const int n_param = size_sweep ? static_cast<int>(sweep_value) : o.n;
  std::shared_ptr<const SetFunction> objective;
  std::shared_ptr<const WeightedGraph> graph;
  if (o.kind == "maxcut") {
    graph = MakeGraph(o, n_param, seed);
    objective = std::make_shared<CutFunction>(graph);
  } else if (o.kind == "revenue") {
    auto rv = std::make_shared<RevenueInstance>();
    if (o.graph_file.empty()) {
      *rv = GenRevenueInstance(n_param, o.p, seed);
    } else {
      rv->graph = MakeGraph(o, n_param, seed);
      Rng rng = Rng(seed).Derive(Stream::kInstance, 2);
      rv->suggestibility.resize(rv->graph->n());
      for (auto& a : rv->suggestibility) {
        a = SampleLomax(1.0, 2.0, rng.Uniform01());
      }
    }
    graph = rv->graph;
    objective = std::make_shared<RevenueFunction>(rv);
  } else if (o.kind == "movie") {
    std::shared_ptr<MovieInstance> m;
    if (o.tags_file.empty()) {
      MovieGenParams gen;
      gen.n = n_param;
      gen.tags = o.tags;
      gen.tag_density = o.tag_density;
      gen.genres = o.genres;
      gen.params = o.movie;
      m = std::make_shared<MovieInstance>(GenMovieInstance(gen, seed));
    } else {
      const TagMatrix tags = LoadTagMatrix(o.tags_file);
      const int n = static_cast<int>(tags.rows.size());
      Rng rng = Rng(seed).Derive(Stream::kInstance, 1);
      std::vector<double> ratings(n);
      std::vector<int> genres(n);
      for (int i = 0; i < n; ++i) {
        ratings[i] = 5.0 * rng.Uniform01();
        genres[i] = static_cast<int>(rng.UniformInt(std::max(o.genres, 1)));
      }
      m = std::make_shared<MovieInstance>(
          MakeMovieInstance(tags.rows, std::move(ratings), genres, o.movie));
    }
    objective = std::make_shared<MovieFunction>(m);
  } else if (o.kind == "coverage") {
    objective = std::make_shared<CoverageFunction>(
        std::make_shared<CoverageInstance>(
            GenCoverageInstance(n_param, o.items, o.density, seed)));
  } else {
    std::vector<double> values = o.values;
    if (values.empty()) {
      Rng rng = Rng(seed).Derive(Stream::kInstance, 4);
      values.resize(n_param);
      for (auto& v : values) v = rng.Uniform01();
    }
    objective = std::make_shared<ModularFunction>(std::move(values));
  }

  const int n = objective->ground_size();
  if (spec.constraint == ConstraintKind::kCardinality) {
    const int k = spec.sweep_parameter == "budget"
                      ? static_cast<int>(sweep_value)
                      : spec.cardinality;
    return MakeCardinalityInstance(objective, std::min(k, n));
  }
  const double fraction =
      spec.sweep_parameter == "budget" ? sweep_value : spec.budget_fraction;
  const CostModel costs =
      AssignCosts(spec.cost_model, n, fraction, seed, graph.get());
  return MakeKnapsackInstance(objective, costs);
}

RunResult RunAlgorithm(const AlgorithmSpec& algorithm, const Instance& inst,
                       std::uint64_t seed, int workers) {
  QueryLedger ledger;
  Rng rng = Rng(seed).Derive(Stream::kAlgorithm);
  ParKnapsackParams params = algorithm.params;
  params.workers = workers;
  const std::string& name = algorithm.name;
  if (name == "greedy") return Greedy(inst, ledger);
  if (name == "sample_greedy") {
    return SampleGreedy(inst, algorithm.p, ledger, rng);
  }
  if (name == "par_knapsack") return ParKnapsack(inst, params, ledger, rng);
  if (name == "par_knapsack_monotone") {
    return ParKnapsackMonotone(inst, params, ledger, rng);
  }
  if (name == "par_cardinal") return ParCardinal(inst, params, ledger, rng);
  throw ContractError("unknown algorithm '" + name + "'");
}

std::string FormatResultsCsv(const std::vector<ResultRow>& rows) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const auto& r : rows) {
    out += r.experiment_id + "," + r.algorithm + "," + std::to_string(r.seed) +
           "," + Fmt(r.sweep_value) + "," + Fmt(r.value) + "," + Fmt(r.cost) +
           "," + std::to_string(r.rounds) + "," + std::to_string(r.queries) +
           "," + Fmt(r.wall_ms) + "," + r.winner + "\n";
  }
  return out;
}

std::string FormatTrajectoryCsv(const std::vector<ResultRow>& rows) {
  std::string out =
      "experiment_id,algorithm,seed,sweep_value,round,best_value\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.trajectory.size(); ++i) {
      out += r.experiment_id + "," + r.algorithm + "," +
             std::to_string(r.seed) + "," + Fmt(r.sweep_value) + "," +
             std::to_string(i + 1) + "," + Fmt(r.trajectory[i]) + "\n";
    }
  }
  return out;
}

ExperimentReport RunExperiment(const ExperimentSpec& spec, bool write_files) {
  ExperimentReport report;
  const std::size_t seeds = spec.seeds.size();
  const std::size_t algs = spec.algorithms.size();
  for (double point : spec.sweep_values) {
    std::vector<Instance> instances;
    instances.reserve(seeds);
    for (std::uint64_t seed : spec.seeds) {
      instances.push_back(BuildInstance(spec, point, seed));
      if (spec.probe_sets > 0) {
        if (auto bad =
                ProbeNonnegative(instances.back(), spec.probe_sets, seed)) {
          throw ContractError("instance probe failed (seed " +
                              std::to_string(seed) + ", sweep value " +
                              Fmt(point) + "): " + *bad);
        }
      }
    }
    std::vector<std::optional<ResultRow>> rows(seeds * algs);
    std::vector<std::string> failures(seeds * algs);
    internal::ParallelFor(seeds * algs, spec.workers, [&](std::size_t t) {
      const std::size_t s = t / algs;
      const AlgorithmSpec& alg = spec.algorithms[t % algs];
      const std::string where = alg.label + " seed " +
                                std::to_string(spec.seeds[s]) +
                                " sweep " + Fmt(point);
      RunResult run;
      try {
        run = RunAlgorithm(alg, instances[s], spec.seeds[s], 1);
      } catch (const InvariantViolation& e) {
        failures[t] = where + ": " + e.what();
        return;
      }
      const VerifyReport verify = VerifyRun(instances[s], run);
      for (const auto& c : verify.checks) {
        if (!c.passed) {
          failures[t] += where + ": " + c.name + " check failed (" +
                         c.detail + ") ";
        }
      }
      ResultRow row;
      row.experiment_id = spec.id;
      row.algorithm = alg.label;
      row.seed = spec.seeds[s];
      row.sweep_value = point;
      row.value = run.value;
      row.cost = run.cost;
      row.rounds = run.rounds;
      row.queries = run.queries;
      row.wall_ms = spec.timing ? run.wall_ms : 0.0;
      row.winner = WinnerName(run.winner);
      row.trajectory = std::move(run.trajectory);
      rows[t] = std::move(row);
    });
    for (auto& r : rows) {
      if (r) report.rows.push_back(std::move(*r));
    }
    for (auto& f : failures) {
      if (!f.empty()) report.failures.push_back(std::move(f));
    }
  }
  std::stable_sort(report.rows.begin(), report.rows.end(),
                   [](const ResultRow& a, const ResultRow& b) {
                     return std::tie(a.algorithm, a.seed, a.sweep_value) <
                            std::tie(b.algorithm, b.seed, b.sweep_value);
                   });
  if (write_files && !spec.output.empty()) {
    WriteFile(spec.output, FormatResultsCsv(report.rows));
    WriteFile(spec.output + ".trajectory.csv",
              FormatTrajectoryCsv(report.rows));
    const json sidecar{{"version", Version()}, {"spec", SpecToJson(spec)}};
    WriteFile(spec.output + ".json", sidecar.dump(2) + "\n");
  }
  return report;
}

}  // namespace lowadapt
