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

#include "lowadapt/threshold.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "lowadapt/errors.h"

namespace lowadapt {
namespace {

std::atomic<std::int64_t> g_runs_checked{0};
std::atomic<std::int64_t> g_violations{0};

void Audit(bool ok, const std::string& what) {
  g_runs_checked.fetch_add(1);
  if (!ok) {
    g_violations.fetch_add(1);
    throw InvariantViolation(what);
  }
}

double Checked(double v, const char* context, ElementId x) {
  if (!std::isfinite(v)) {
    throw NumericError(std::string(context) + ": non-finite answer at element " +
                       std::to_string(x));
  }
  return v;
}

void ValidateParams(const Problem& problem, const ThreshParams& params) {
  if (problem.f == nullptr) throw ContractError("threshold: missing objective");
  if (problem.costs.size() != std::size_t(problem.f->ground_size())) {
    throw ContractError("threshold: one cost per element required");
  }
  if (!(params.tau > 0.0) || !std::isfinite(params.tau)) {
    throw ContractError("threshold: tau must be positive");
  }
  if (!(params.epsilon > 0.0 && params.epsilon < 1.0)) {
    throw ContractError("threshold: epsilon must lie in (0, 1)");
  }
  if (params.ell && *params.ell < 1) {
    throw ContractError("threshold: ell must be >= 1");
  }
}

// X sorted by (cost, id) without duplicates.
ElementSet SortByCost(std::span<const double> costs,
                      std::span<const ElementId> x) {
  ElementSet sorted(x.begin(), x.end());
  std::sort(sorted.begin(), sorted.end(), [&](ElementId a, ElementId b) {
    return costs[a] != costs[b] ? costs[a] < costs[b] : a < b;
  });
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  return sorted;
}

// Positions into the cost-sorted x. `used` is c(S); every element of x
// must fit next to S.
std::vector<int> SampleSequence(std::span<const double> costs, double budget,
                                double used, std::span<const ElementId> x,
                                Rng& rng) {
  std::vector<int> pool(x.size());
  for (std::size_t q = 0; q < x.size(); ++q) pool[q] = static_cast<int>(q);
  std::size_t live = pool.size();
  std::vector<int> sequence;
  while (live > 0) {
    const auto r = rng.UniformInt(live);
    const int pos = pool[r];
    sequence.push_back(pos);
    used += costs[x[pos]];
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(r));
    --live;
    while (live > 0 && used + costs[x[pool[live - 1]]] > budget) --live;
  }
  return sequence;
}

struct Bits {
  std::size_t words = 0;
  std::vector<std::uint64_t> data;

  void Reset(std::size_t rows, std::size_t width) {
    words = (width + 63) / 64;
    data.assign(rows * words, 0);
  }
  void Set(std::size_t row, std::size_t col) {
    data[row * words + col / 64] |= std::uint64_t{1} << (col % 64);
  }
  bool Get(std::size_t row, std::size_t col) const {
    return (data[row * words + col / 64] >> (col % 64)) & 1;
  }
};

// Fills the membership part of a row from a state positioned at S + A_i.
// Returns the number of gain queries issued.
std::int64_t FillRow(const Problem& p, const EvalState& work,
                     std::span<const ElementId> x,
                     const std::vector<char>& in_prefix, double used,
                     double tau, bool all_negatives, PrefixRow& row,
                     Bits* good, std::size_t good_row) {
  std::int64_t queries = 0;
  for (std::size_t q = 0; q < x.size(); ++q) {
    if (in_prefix[q]) continue;
    const ElementId a = x[q];
    const double c = p.costs[a];
    const bool fits = used + c <= p.budget;
    if (!fits && !all_negatives) break;  // x is sorted by cost
    const double g = Checked(work.Gain(a), "prefix marginal", a);
    ++queries;
    if (g < 0.0) row.negative_mass_all -= g;
    if (!fits) continue;
    ++row.feasible;
    if (g >= tau * c) {
      ++row.good;
      row.good_cost += c;
      row.good_gain += g;
      if (good != nullptr) good->Set(good_row, q);
    }
    if (g < 0.0) row.negative_mass -= g;
  }
  return queries;
}

double CostOf(std::span<const double> costs, std::span<const ElementId> x) {
  double total = 0.0;
  for (ElementId a : x) total += costs[a];
  return total;
}

// Density filter shared by both variants: f(empty) and every marginal
// f(x | empty) in one batch.
struct FilterOutcome {
  ElementSet kept;  // cost-sorted
  double empty_value = 0.0;
};

FilterOutcome InitialFilter(const Problem& p, const EvalState& empty,
                            std::span<const ElementId> x, double tau,
                            QueryLedger& ledger) {
  ValidateIds(x, p.f->ground_size());
  FilterOutcome out;
  out.empty_value = Checked(empty.Value(), "f(empty)", -1);
  std::int64_t queries = 1;
  for (ElementId a : SortByCost(p.costs, x)) {
    if (!(p.costs[a] > 0.0)) {
      throw ContractError("threshold: costs must be positive");
    }
    if (p.costs[a] > p.budget) continue;
    const double g = Checked(empty.Gain(a), "singleton marginal", a);
    ++queries;
    if (g >= tau * p.costs[a]) out.kept.push_back(a);
  }
  ledger.Charge(queries);
  return out;
}

}  // namespace

ElementSet SampleSeq(const Problem& problem, std::span<const ElementId> s,
                     std::span<const ElementId> x, Rng& rng) {
  const int n = static_cast<int>(problem.costs.size());
  ValidateIds(s, n);
  ValidateIds(x, n);
  const double used = CostOf(problem.costs, s);
  if (used > problem.budget) throw ContractError("SampleSeq: c(S) > B");
  std::vector<char> in_s(n, 0);
  for (ElementId a : s) in_s[a] = 1;
  for (ElementId a : x) {
    if (in_s[a]) throw ContractError("SampleSeq: S and X intersect");
    if (used + problem.costs[a] > problem.budget) {
      throw ContractError("SampleSeq: element does not fit next to S");
    }
  }
  const ElementSet sorted = SortByCost(problem.costs, x);
  ElementSet out;
  for (int pos : SampleSequence(problem.costs, problem.budget, used, sorted,
                                rng)) {
    out.push_back(sorted[pos]);
  }
  return out;
}

bool CostCondition(const PrefixTable& table, int i, double eps) {
  return table.rows.at(i - 1).good_cost <= (1.0 - eps) * table.candidate_cost;
}

bool ValueCondition(const PrefixTable& table, int i, double eps,
                    ValueRule rule) {
  const PrefixRow& row = table.rows.at(i - 1);
  const double rhs = rule == ValueRule::kSequential
                         ? row.negative_mass
                         : row.negative_mass_all + row.prefix_negative_mass;
  return eps * row.good_gain <= rhs;
}

KStar FindKStar(const PrefixTable& table, double eps, bool value_enabled,
                ValueRule rule) {
  const int d = static_cast<int>(table.rows.size());
  if (d == 0) throw ContractError("FindKStar: empty prefix table");
  KStar k;
  for (int i = 1; i <= d && k.i_star == 0; ++i) {
    if (CostCondition(table, i, eps)) k.i_star = i;
  }
  if (k.i_star == 0) {
    throw ContractError("FindKStar: cost condition never holds");
  }
  if (value_enabled) {
    for (int j = 1; j <= d; ++j) {
      if (ValueCondition(table, j, eps, rule)) {
        k.j_star = j;
        break;
      }
    }
  }
  k.k_star = k.j_star ? std::min(k.i_star, *k.j_star) : k.i_star;
  return k;
}

BinarySearchResult BinarySearchKStar(
    int d, const std::function<ProbeOutcome(int)>& probe) {
  if (d < 1) throw ContractError("BinarySearchKStar: empty sequence");
  BinarySearchResult out;
  std::map<int, ProbeOutcome> seen;
  int lo = 1;
  int hi = d;
  while (lo < hi) {
    const int mid = (lo + hi) / 2;
    const ProbeOutcome o = probe(mid);
    out.probed.push_back(mid);
    seen[mid] = o;
    if (o.cost || o.value) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  out.k_star = hi;
  if (auto it = seen.find(hi); it != seen.end()) {
    out.value_triggered = it->second.value && !it->second.cost;
  }
  return out;
}

bool CheckBinMonotonicity(const PrefixTable& table, double eps,
                          bool value_enabled) {
  bool c1_seen = false;
  bool c2_seen = false;
  for (int i = 1; i <= static_cast<int>(table.rows.size()); ++i) {
    const bool c1 = CostCondition(table, i, eps);
    const bool c2 =
        value_enabled && ValueCondition(table, i, eps, ValueRule::kBinary);
    if ((c1_seen && !c1) || (c2_seen && !c2)) return false;
    c1_seen = c1_seen || c1;
    c2_seen = c2_seen || c2;
  }
  return true;
}

PrefixTable BuildPrefixTable(const Problem& problem, const EvalState& s,
                             double s_cost, double s_value,
                             std::span<const ElementId> x,
                             std::span<const ElementId> sequence, double tau,
                             QueryLedger* ledger) {
  const ElementSet sorted = SortByCost(problem.costs, x);
  PrefixTable table;
  table.sequence.assign(sequence.begin(), sequence.end());
  table.candidate_cost = CostOf(problem.costs, sorted);
  std::vector<char> in_prefix(sorted.size(), 0);
  auto work = s.Clone();
  double used = s_cost;
  double prev = s_value;
  double prefix_negative = 0.0;
  std::int64_t queries = 0;
  for (ElementId a : sequence) {
    const auto it = std::find(sorted.begin(), sorted.end(), a);
    if (it == sorted.end()) {
      throw ContractError("BuildPrefixTable: sequence element outside X");
    }
    in_prefix[it - sorted.begin()] = 1;
    work->Insert(a);
    used += problem.costs[a];
    PrefixRow row;
    row.cost = used;
    row.value = Checked(work->Value(), "prefix value", a);
    ++queries;
    row.head_gain = row.value - prev;
    prev = row.value;
    if (row.head_gain < 0.0) prefix_negative -= row.head_gain;
    row.prefix_negative_mass = prefix_negative;
    queries += FillRow(problem, *work, sorted, in_prefix, used, tau, true,
                       row, nullptr, 0);
    table.rows.push_back(row);
  }
  if (ledger != nullptr) ledger->Charge(queries);
  return table;
}

const char* TriggerName(Trigger t) {
  switch (t) {
    case Trigger::kCost:
      return "cost";
    case Trigger::kValue:
      return "value";
    case Trigger::kExhausted:
      return "exhausted";
  }
  return "unknown";
}

std::int64_t IterationBound(std::span<const double> costs,
                            std::span<const ElementId> x, double eps,
                            std::optional<std::int64_t> ell) {
  const std::int64_t extra = ell.value_or(0) + 1;
  if (x.empty()) return extra;
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (ElementId a : x) {
    lo = std::min(lo, costs[a]);
    hi = std::max(hi, costs[a]);
  }
  const double spread = std::log(static_cast<double>(x.size()) * (hi / lo));
  return static_cast<std::int64_t>(std::ceil(spread / eps)) + extra;
}

ThreshResult ThreshSeq(const Problem& problem, std::span<const ElementId> x,
                       const ThreshParams& params, QueryLedger& ledger,
                       Rng& rng) {
  ValidateParams(problem, params);
  const std::int64_t r0 = ledger.rounds();
  const std::int64_t q0 = ledger.queries();
  const double eps = params.epsilon;
  auto state = problem.f->NewState();

  ThreshResult result;
  FilterOutcome filter = InitialFilter(problem, *state, x, params.tau, ledger);
  result.filtered = filter.kept;
  result.iteration_bound =
      IterationBound(problem.costs, result.filtered, eps, params.ell);
  double s_cost = 0.0;
  double s_value = filter.empty_value;
  result.trajectory.emplace_back(ledger.rounds() - r0, s_value);

  ElementSet live = std::move(filter.kept);
  Bits good;
  while (!live.empty() && (!params.ell || result.ctr < *params.ell)) {
    const std::vector<int> seq =
        SampleSequence(problem.costs, problem.budget, s_cost, live, rng);
    const int d = static_cast<int>(seq.size());
    PrefixTable table;
    table.candidate_cost = CostOf(problem.costs, live);
    table.rows.resize(d);
    good.Reset(d, live.size());
    std::vector<char> in_prefix(live.size(), 0);
    auto work = state->Clone();
    double used = s_cost;
    double prev = s_value;
    double prefix_negative = 0.0;
    std::int64_t queries = 0;
    for (int i = 0; i < d; ++i) {
      const ElementId a = live[seq[i]];
      table.sequence.push_back(a);
      in_prefix[seq[i]] = 1;
      work->Insert(a);
      used += problem.costs[a];
      PrefixRow& row = table.rows[i];
      row.cost = used;
      row.value = Checked(work->Value(), "prefix value", a);
      ++queries;
      row.head_gain = row.value - prev;
      prev = row.value;
      if (row.head_gain < 0.0) prefix_negative -= row.head_gain;
      row.prefix_negative_mass = prefix_negative;
      queries += FillRow(problem, *work, live, in_prefix, used, params.tau,
                         false, row, &good, i);
    }
    ledger.Charge(queries);

    const KStar k = FindKStar(table, eps, params.ell.has_value());
    for (int i = 0; i < k.k_star; ++i) {
      state->Insert(table.sequence[i]);
      result.preliminary.push_back(table.sequence[i]);
    }
    s_cost = table.rows[k.k_star - 1].cost;
    s_value = table.rows[k.k_star - 1].value;
    ElementSet next;
    for (std::size_t q = 0; q < live.size(); ++q) {
      if (good.Get(k.k_star - 1, q)) next.push_back(live[q]);
    }
    if (k.value_triggered()) ++result.ctr;

    IterationTrace t;
    t.k_star = k.k_star;
    t.trigger = k.value_triggered() ? Trigger::kValue
                : k.k_star == d     ? Trigger::kExhausted
                                    : Trigger::kCost;
    t.sequence_length = d;
    t.candidates = static_cast<int>(live.size());
    t.good_after = static_cast<int>(next.size());
    result.trace.push_back(t);
    ++result.iterations;
    result.trajectory.emplace_back(ledger.rounds() - r0, s_value);
    live = std::move(next);
  }

  result.solution = result.preliminary;
  result.value = result.preliminary_value = s_value;
  result.cost = s_cost;
  result.rounds = ledger.rounds() - r0;
  result.queries = ledger.queries() - q0;
  Audit(s_cost <= problem.budget,
        "ThreshSeq: solution cost " + std::to_string(s_cost) +
            " exceeds budget " + std::to_string(problem.budget));
  Audit(result.iterations <= result.iteration_bound,
        "ThreshSeq: " + std::to_string(result.iterations) +
            " iterations exceed the bound " +
            std::to_string(result.iteration_bound));
  return result;
}

ThreshResult ThreshBin(const Problem& problem, std::span<const ElementId> x,
                       const ThreshParams& params, QueryLedger& ledger,
                       Rng& rng) {
  ValidateParams(problem, params);
  const std::int64_t r0 = ledger.rounds();
  const std::int64_t q0 = ledger.queries();
  const double eps = params.epsilon;
  const bool value_enabled = params.ell.has_value();
  auto state = problem.f->NewState();

  ThreshResult result;
  FilterOutcome filter = InitialFilter(problem, *state, x, params.tau, ledger);
  result.filtered = filter.kept;
  result.iteration_bound =
      IterationBound(problem.costs, result.filtered, eps, params.ell);
  const double empty_value = filter.empty_value;
  double s_cost = 0.0;
  std::optional<double> s_value = empty_value;
  result.trajectory.emplace_back(ledger.rounds() - r0, empty_value);

  ElementSet live = std::move(filter.kept);
  while (!live.empty() && (!value_enabled || result.ctr < *params.ell)) {
    if (!s_value) {
      throw InvariantViolation("ThreshBin: f(S) unknown with candidates left");
    }
    const std::vector<int> seq =
        SampleSequence(problem.costs, problem.budget, s_cost, live, rng);
    const int d = static_cast<int>(seq.size());
    const double candidate_cost = CostOf(problem.costs, live);

    struct Probe {
      PrefixRow row;
      ElementSet good;
    };
    std::map<int, Probe> probes;
    auto probe = [&](int i) {
      auto work = state->Clone();
      std::vector<char> in_prefix(live.size(), 0);
      double used = s_cost;
      double prev = *s_value;
      Probe p;
      std::int64_t queries = 0;
      for (int t = 0; t < i; ++t) {
        const ElementId a = live[seq[t]];
        in_prefix[seq[t]] = 1;
        work->Insert(a);
        used += problem.costs[a];
        const double v = Checked(work->Value(), "prefix value", a);
        ++queries;
        if (v - prev < 0.0) p.row.prefix_negative_mass -= v - prev;
        p.row.head_gain = v - prev;
        prev = v;
      }
      p.row.cost = used;
      p.row.value = prev;
      Bits bits;
      bits.Reset(1, live.size());
      queries += FillRow(problem, *work, live, in_prefix, used, params.tau,
                         true, p.row, &bits, 0);
      ledger.Charge(queries);
      for (std::size_t q = 0; q < live.size(); ++q) {
        if (bits.Get(0, q)) p.good.push_back(live[q]);
      }
      ProbeOutcome o;
      o.cost = p.row.good_cost <= (1.0 - eps) * candidate_cost;
      o.value = value_enabled &&
                eps * p.row.good_gain <=
                    p.row.negative_mass_all + p.row.prefix_negative_mass;
      probes[i] = std::move(p);
      return o;
    };
    const BinarySearchResult bs = BinarySearchKStar(d, probe);

    for (int t = 0; t < bs.k_star; ++t) {
      const ElementId a = live[seq[t]];
      state->Insert(a);
      s_cost += problem.costs[a];
      result.preliminary.push_back(a);
    }
    ElementSet next;
    if (auto it = probes.find(bs.k_star); it != probes.end()) {
      s_value = it->second.row.value;
      next = std::move(it->second.good);
    } else {
      s_value.reset();
    }
    if (bs.value_triggered) ++result.ctr;

    IterationTrace t;
    t.k_star = bs.k_star;
    t.trigger = bs.value_triggered ? Trigger::kValue
                : bs.k_star == d   ? Trigger::kExhausted
                                   : Trigger::kCost;
    t.sequence_length = d;
    t.candidates = static_cast<int>(live.size());
    t.good_after = static_cast<int>(next.size());
    t.probes = static_cast<int>(bs.probed.size());
    result.trace.push_back(t);
    ++result.iterations;
    if (s_value) result.trajectory.emplace_back(ledger.rounds() - r0, *s_value);
    live = std::move(next);
  }

  // Filter: f(s_t | s_1..s_{t-1}) for the induced order, one batch.
  const ElementSet& order = result.preliminary;
  double preliminary_value = empty_value;
  if (!order.empty()) {
    auto fresh = problem.f->NewState();
    double prev = empty_value;
    for (ElementId a : order) {
      fresh->Insert(a);
      const double v = Checked(fresh->Value(), "filter value", a);
      if (v - prev > 0.0) result.solution.push_back(a);
      prev = v;
    }
    ledger.Charge(static_cast<std::int64_t>(order.size()));
    preliminary_value = prev;
  }
  result.preliminary_value = preliminary_value;
  result.cost = CostOf(problem.costs, result.solution);
  if (result.solution.size() == order.size()) {
    result.value = preliminary_value;
  } else if (result.solution.empty()) {
    result.value = empty_value;
  } else {
    auto kept = problem.f->NewState();
    for (ElementId a : result.solution) kept->Insert(a);
    result.value = Checked(kept->Value(), "filtered value", -1);
    ledger.Charge(1);
  }
  result.rounds = ledger.rounds() - r0;
  result.queries = ledger.queries() - q0;
  result.trajectory.emplace_back(result.rounds, result.value);

  const double tol = kOracleTolerance * std::max(1.0, std::abs(preliminary_value));
  const std::int64_t depth = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(std::ceil(
             std::log2(static_cast<double>(result.filtered.size()) + 1.0))));
  Audit(result.cost <= s_cost && s_cost <= problem.budget,
        "ThreshBin: cost chain c(S-bar) <= c(S) <= B violated");
  Audit(result.value >= preliminary_value - tol,
        "ThreshBin: filtering decreased the value");
  Audit(result.iterations <= result.iteration_bound,
        "ThreshBin: " + std::to_string(result.iterations) +
            " iterations exceed the bound " +
            std::to_string(result.iteration_bound));
  Audit(result.rounds <= 4 * depth * result.iteration_bound,
        "ThreshBin: " + std::to_string(result.rounds) +
            " rounds exceed the ceiling");
  return result;
}

AuditCounts ThreshAudit() {
  return {g_runs_checked.load(), g_violations.load()};
}

void ResetThreshAudit() {
  g_runs_checked.store(0);
  g_violations.store(0);
}

LeftoverCheck CheckLeftoverGood(const Problem& problem,
                                const ThreshResult& result,
                                const ThreshParams& params,
                                QueryLedger& ledger) {
  if (!params.ell) {
    throw ContractError("CheckLeftoverGood: value condition disabled");
  }
  const int n = problem.f->ground_size();
  std::vector<char> in_s(n, 0);
  auto state = problem.f->NewState();
  for (ElementId a : result.preliminary) {
    in_s[a] = 1;
    state->Insert(a);
  }
  const double s_cost = CostOf(problem.costs, result.preliminary);
  LeftoverCheck check;
  check.value = result.preliminary_value;
  std::int64_t queries = 0;
  for (ElementId a : result.filtered) {
    if (in_s[a] || problem.costs[a] + s_cost > problem.budget) continue;
    const double g = Checked(state->Gain(a), "leftover marginal", a);
    ++queries;
    if (g >= params.tau * problem.costs[a]) check.good_mass += g;
  }
  ledger.Charge(queries);
  check.rhs = params.epsilon * static_cast<double>(*params.ell) *
              check.good_mass;
  check.holds =
      check.value >= check.rhs - kOracleTolerance * std::max(1.0, check.rhs);
  return check;
}

int SubmodMaxRepetitions(double eps) {
  if (!(eps > 0.0)) throw ContractError("SubmodMax: epsilon must be > 0");
  const double reps = std::ceil(std::log(1.0 / eps) / eps);
  return reps < 1.0 ? 1 : static_cast<int>(reps);
}

bool BetterCandidate(double value_a, double cost_a,
                     std::span<const ElementId> a, double value_b,
                     double cost_b, std::span<const ElementId> b) {
  if (value_a != value_b) return value_a > value_b;
  if (cost_a != cost_b) return cost_a < cost_b;
  ElementSet sa(a.begin(), a.end());
  ElementSet sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  return sa < sb;
}

SubmodMaxResult SubmodMax(const SetFunction& f,
                          std::span<const ElementId> pool, int repetitions,
                          QueryLedger& ledger, Rng& rng,
                          std::span<const double> costs) {
  if (repetitions < 1) {
    throw ContractError("SubmodMax: repetitions must be >= 1");
  }
  ValidateIds(pool, f.ground_size());
  auto cost_of = [&](std::span<const ElementId> s) {
    return costs.empty() ? static_cast<double>(s.size()) : CostOf(costs, s);
  };
  SubmodMaxResult out;
  if (pool.empty()) {
    out.empty_value = out.value = EvaluateBatch(ledger, f, {{}})[0];
    return out;
  }

  std::vector<QueryLedger> children = ledger.Fork(repetitions + 1);
  auto empty = f.NewState();
  out.empty_value = Checked(empty->Value(), "f(empty)", -1);
  ElementId best_single = -1;
  for (ElementId a : pool) {
    const double v = out.empty_value + Checked(empty->Gain(a), "singleton", a);
    const ElementSet one{a};
    if (best_single < 0 ||
        BetterCandidate(v, cost_of(one), one, out.best_singleton_value,
                        cost_of(ElementSet{best_single}),
                        ElementSet{best_single})) {
      best_single = a;
      out.best_singleton_value = v;
    }
  }
  children[0].Charge(1 + static_cast<std::int64_t>(pool.size()));

  out.solution = {};
  out.value = out.empty_value;
  double best_cost = 0.0;
  auto offer = [&](ElementSet s, double v) {
    const double c = cost_of(s);
    if (BetterCandidate(v, c, s, out.value, best_cost, out.solution)) {
      out.solution = std::move(s);
      out.value = v;
      best_cost = c;
    }
  };
  offer(ElementSet{best_single}, out.best_singleton_value);
  for (int j = 1; j <= repetitions; ++j) {
    Rng draw = rng.Derive(Stream::kSample, static_cast<std::uint64_t>(j));
    ElementSet half;
    for (ElementId a : pool) {
      if (draw.Bernoulli(0.5)) half.push_back(a);
    }
    auto st = f.NewState();
    for (ElementId a : half) st->Insert(a);
    const double v = Checked(st->Value(), "random half", -1);
    children[j].Charge(1);
    out.sample_values.push_back(v);
    offer(std::move(half), v);
  }
  ledger.Join(children);
  return out;
}

}  // namespace lowadapt
