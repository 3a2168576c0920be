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

#include "lowadapt/instances.h"

#include <zlib.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <string_view>
#include <utility>

#include "lowadapt/errors.h"
#include "lowadapt/rng.h"

namespace lowadapt {
namespace {

bool EndsWith(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

std::string ReadAll(const std::string& path) {
  if (EndsWith(path, ".gz")) {
    gzFile file = gzopen(path.c_str(), "rb");
    if (file == nullptr) throw ParseError(path, 0, "cannot open file");
    std::string out;
    char buffer[1 << 16];
    int got;
    while ((got = gzread(file, buffer, sizeof(buffer))) > 0) {
      out.append(buffer, got);
    }
    const bool failed = got < 0;
    gzclose(file);
    if (failed) throw ParseError(path, 0, "gzip stream is corrupt");
    return out;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, 0, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(Trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

template <typename T>
bool ParseNumber(std::string_view s, T& out) {
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

// Invokes fn(line_number, content) for every non-blank, non-comment line.
template <typename Fn>
void ForEachLine(const std::string& text, Fn&& fn) {
  long number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    ++number;
    const auto line =
        Trim(std::string_view(text).substr(start, end - start));
    if (!line.empty() && line.front() != '#') fn(number, line);
    start = end + 1;
  }
}

std::vector<double> UniformCosts(int n, Rng rng) {
  std::vector<double> costs(n);
  // 1 - U with U in [0, 1) lies in (0, 1].
  for (auto& c : costs) c = 1.0 - rng.Uniform01();
  return costs;
}

std::vector<double> IncidentCosts(const WeightedGraph& g) {
  const int n = g.n();
  std::vector<double> costs(n);
  double smallest = std::numeric_limits<double>::infinity();
  for (int v = 0; v < n; ++v) {
    costs[v] = g.weighted_degree(v);
    if (costs[v] > 0.0) smallest = std::min(smallest, costs[v]);
  }
  if (!std::isfinite(smallest)) return std::vector<double>(n, 1.0);
  double total = 0.0;
  for (auto& c : costs) {
    if (c <= 0.0) c = smallest;
    total += c;
  }
  for (auto& c : costs) c *= n / total;
  return costs;
}

}  // namespace

CostKind ParseCostKind(const std::string& name) {
  if (name == "uniform01") return CostKind::kUniform01;
  if (name == "incident") return CostKind::kIncidentWeight;
  if (name == "unit") return CostKind::kUnit;
  throw ContractError("unknown cost model '" + name + "'");
}

std::string CostKindName(CostKind kind) {
  switch (kind) {
    case CostKind::kUniform01:
      return "uniform01";
    case CostKind::kIncidentWeight:
      return "incident";
    case CostKind::kUnit:
      return "unit";
  }
  return "unknown";
}

double Instance::Cost(std::span<const ElementId> set) const {
  double total = 0.0;
  for (ElementId x : set) total += costs[x];
  return total;
}

bool Instance::Feasible(std::span<const ElementId> set) const {
  ElementSet sorted(set.begin(), set.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    return false;
  }
  for (ElementId x : sorted) {
    if (!std::binary_search(ground.begin(), ground.end(), x)) return false;
  }
  if (constraint == ConstraintKind::kCardinality) {
    return static_cast<int>(sorted.size()) <= cardinality;
  }
  return Cost(sorted) <= budget * (1.0 + 1e-12);
}

void Instance::Validate() const {
  if (!objective) throw ContractError("Instance: missing objective");
  if (costs.size() != std::size_t(n())) {
    throw ContractError("Instance: one cost per element required");
  }
  if (!std::is_sorted(ground.begin(), ground.end())) {
    throw ContractError("Instance: ground set must be ascending");
  }
  for (ElementId x : ground) {
    if (x < 0 || x >= n()) throw ContractError("Instance: bad ground id");
    if (!(costs[x] > 0.0) || !std::isfinite(costs[x])) {
      throw ContractError("Instance: costs must be positive and finite");
    }
    if (costs[x] > budget) {
      throw ContractError("Instance: element cost exceeds budget");
    }
  }
  if (constraint == ConstraintKind::kCardinality &&
      (cardinality < 0 || cardinality > n())) {
    throw ContractError("Instance: cardinality must lie in [0, n]");
  }
}

WeightedGraph GenErdosRenyi(int n, double p, std::uint64_t seed) {
  if (n < 1) throw ContractError("GenErdosRenyi: n must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ContractError("GenErdosRenyi: p must lie in [0, 1]");
  }
  Rng rng = Rng(seed).Derive(Stream::kInstance, 0);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(p * n * (n - 1) / 2 * 1.1) + 16);
  for (ElementId u = 0; u < n; ++u) {
    for (ElementId v = u + 1; v < n; ++v) {
      if (rng.Uniform01() < p) edges.push_back({u, v, rng.Uniform01()});
    }
  }
  return WeightedGraph(n, std::move(edges));
}

double SampleLomax(double lambda, double alpha, double u) {
  if (!(lambda > 0.0) || !(alpha > 0.0)) {
    throw ContractError("SampleLomax: lambda and alpha must be positive");
  }
  if (!(u >= 0.0 && u < 1.0)) {
    throw ContractError("SampleLomax: u must lie in [0, 1)");
  }
  return lambda * (std::pow(1.0 - u, -1.0 / alpha) - 1.0);
}

CostModel AssignCosts(CostKind kind, int n, double budget_fraction,
                      std::uint64_t seed, const WeightedGraph* graph) {
  if (n < 1) throw ContractError("AssignCosts: n must be >= 1");
  if (!(budget_fraction > 0.0 && budget_fraction <= 1.0)) {
    throw ContractError("AssignCosts: budget fraction must lie in (0, 1]");
  }
  CostModel model;
  model.kind = kind;
  model.budget_fraction = budget_fraction;
  switch (kind) {
    case CostKind::kUniform01:
      model.costs = UniformCosts(n, Rng(seed).Derive(Stream::kCosts, 0));
      break;
    case CostKind::kIncidentWeight:
      if (graph == nullptr || graph->n() != n) {
        throw ContractError("AssignCosts: incident costs need the graph");
      }
      model.costs = IncidentCosts(*graph);
      break;
    case CostKind::kUnit:
      model.costs.assign(n, 1.0);
      break;
  }
  double total = 0.0;
  for (double c : model.costs) total += c;
  model.budget = budget_fraction * total;
  for (ElementId x = 0; x < n; ++x) {
    if (model.costs[x] <= model.budget) {
      model.ground.push_back(x);
    } else {
      ++model.dropped;
    }
  }
  if (model.ground.empty()) {
    throw EmptyInstanceError("AssignCosts: every element exceeds the budget");
  }
  return model;
}

Instance MakeKnapsackInstance(std::shared_ptr<const SetFunction> objective,
                              const CostModel& costs) {
  Instance inst;
  inst.objective = std::move(objective);
  inst.costs = costs.costs;
  inst.budget = costs.budget;
  inst.ground = costs.ground;
  inst.constraint = ConstraintKind::kKnapsack;
  inst.Validate();
  return inst;
}

Instance MakeCardinalityInstance(std::shared_ptr<const SetFunction> objective,
                                 int k) {
  Instance inst;
  inst.objective = std::move(objective);
  const int n = inst.n();
  if (k < 0 || k > n) {
    throw ContractError("MakeCardinalityInstance: k must lie in [0, n]");
  }
  inst.costs.assign(n, 1.0);
  inst.budget = k;
  inst.cardinality = k;
  inst.constraint = ConstraintKind::kCardinality;
  if (k > 0) {
    inst.ground.resize(n);
    for (ElementId x = 0; x < n; ++x) inst.ground[x] = x;
  }
  inst.Validate();
  return inst;
}

MovieInstance GenMovieInstance(const MovieGenParams& gen,
                               std::uint64_t seed) {
  if (gen.n < 1 || gen.tags < 1 || gen.genres < 1) {
    throw ContractError("GenMovieInstance: sizes must be positive");
  }
  Rng rng = Rng(seed).Derive(Stream::kInstance, 1);
  std::vector<std::vector<double>> tags(gen.n, std::vector<double>(gen.tags));
  std::vector<double> ratings(gen.n);
  std::vector<int> genres(gen.n);
  for (int i = 0; i < gen.n; ++i) {
    for (auto& t : tags[i]) {
      t = rng.Bernoulli(gen.tag_density) ? rng.Uniform01() : 0.0;
    }
    ratings[i] = 5.0 * rng.Uniform01();
    genres[i] = static_cast<int>(rng.UniformInt(gen.genres));
  }
  return MakeMovieInstance(tags, std::move(ratings), genres, gen.params);
}

RevenueInstance GenRevenueInstance(int n, double p, std::uint64_t seed) {
  RevenueInstance rv;
  rv.graph = std::make_shared<WeightedGraph>(GenErdosRenyi(n, p, seed));
  Rng rng = Rng(seed).Derive(Stream::kInstance, 2);
  rv.suggestibility.resize(n);
  for (auto& a : rv.suggestibility) a = SampleLomax(1.0, 2.0, rng.Uniform01());
  rv.Validate();
  return rv;
}

CoverageInstance GenCoverageInstance(int n, int items, double density,
                                     std::uint64_t seed) {
  if (n < 1 || items < 1) {
    throw ContractError("GenCoverageInstance: sizes must be positive");
  }
  Rng rng = Rng(seed).Derive(Stream::kInstance, 3);
  CoverageInstance c;
  c.item_weights.resize(items);
  for (auto& w : c.item_weights) w = rng.Uniform01();
  c.covers.resize(n);
  for (auto& cover : c.covers) {
    for (int item = 0; item < items; ++item) {
      if (rng.Bernoulli(density)) cover.push_back(item);
    }
  }
  return c;
}

WeightedGraph LoadGraphCsv(const std::string& path) {
  const std::string text = ReadAll(path);
  std::map<std::pair<std::int64_t, std::int64_t>, double> weights;
  ForEachLine(text, [&](long number, std::string_view line) {
    const auto fields = SplitFields(line);
    if (fields.size() != 2 && fields.size() != 3) {
      throw ParseError(path, number, "expected u,v[,w]");
    }
    std::int64_t u = 0, v = 0;
    double w = 1.0;
    if (!ParseNumber(fields[0], u) || !ParseNumber(fields[1], v) ||
        (fields.size() == 3 && !ParseNumber(fields[2], w))) {
      throw ParseError(path, number, "malformed number");
    }
    if (u == v) throw ParseError(path, number, "self-loop");
    if (!std::isfinite(w) || w < 0.0) {
      throw ParseError(path, number, "weight must be finite and >= 0");
    }
    weights[{std::min(u, v), std::max(u, v)}] += w;
  });
  std::vector<std::int64_t> ids;
  for (const auto& [key, w] : weights) {
    ids.push_back(key.first);
    ids.push_back(key.second);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  auto dense = [&](std::int64_t id) {
    return static_cast<ElementId>(
        std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };
  std::vector<Edge> edges;
  edges.reserve(weights.size());
  for (const auto& [key, w] : weights) {
    edges.push_back({dense(key.first), dense(key.second), w});
  }
  return WeightedGraph(static_cast<int>(ids.size()), std::move(edges));
}

void WriteGraphCsv(const std::string& path, const WeightedGraph& graph) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << "# u,v,w\n";
  out.precision(17);
  for (const auto& e : graph.edges()) {
    out << e.u << ',' << e.v << ',' << e.w << '\n';
  }
  if (!out) throw Error("write failed for " + path);
}

TagMatrix LoadTagMatrix(const std::string& path) {
  const std::string text = ReadAll(path);
  struct Entry {
    std::int64_t movie;
    std::int64_t tag;
    double score;
  };
  std::vector<Entry> entries;
  bool first = true;
  ForEachLine(text, [&](long number, std::string_view line) {
    const auto fields = SplitFields(line);
    Entry e{};
    const bool ok = fields.size() == 3 && ParseNumber(fields[0], e.movie) &&
                    ParseNumber(fields[1], e.tag) &&
                    ParseNumber(fields[2], e.score);
    const bool header = first && !ok && fields.size() == 3;
    first = false;
    if (header) return;
    if (!ok || !std::isfinite(e.score)) {
      throw ParseError(path, number, "expected movie_id,tag_id,score");
    }
    entries.push_back(e);
  });
  if (entries.empty()) throw ParseError(path, 0, "no tag rows");
  TagMatrix m;
  for (const auto& e : entries) {
    m.movie_ids.push_back(e.movie);
    m.tag_ids.push_back(e.tag);
  }
  for (auto* ids : {&m.movie_ids, &m.tag_ids}) {
    std::sort(ids->begin(), ids->end());
    ids->erase(std::unique(ids->begin(), ids->end()), ids->end());
  }
  auto index = [](const std::vector<std::int64_t>& ids, std::int64_t id) {
    return std::lower_bound(ids.begin(), ids.end(), id) - ids.begin();
  };
  m.rows.assign(m.movie_ids.size(), std::vector<double>(m.tag_ids.size()));
  for (const auto& e : entries) {
    double score = e.score;
    if (score < 0.0 || score > 1.0) {
      score = std::clamp(score, 0.0, 1.0);
      ++m.clamped;
    }
    m.rows[index(m.movie_ids, e.movie)][index(m.tag_ids, e.tag)] = score;
  }
  return m;
}

}  // namespace lowadapt
