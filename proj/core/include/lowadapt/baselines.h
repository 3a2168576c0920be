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

// Sequential baselines with lazy evaluations: greedy by marginal value and
// sample greedy by marginal density.

#ifndef LOWADAPT_BASELINES_H_
#define LOWADAPT_BASELINES_H_

#include <cstdint>
#include <queue>
#include <vector>

#include "lowadapt/instances.h"
#include "lowadapt/maximizers.h"
#include "lowadapt/oracle.h"
#include "lowadapt/rng.h"

namespace lowadapt {

// Max-heap of stale upper bounds. Entries order by key descending, then id
// ascending; `version` records the solution size at evaluation time.
class LazyHeap {
 public:
  struct Entry {
    double key = 0.0;
    ElementId id = -1;
    std::int64_t version = 0;
    double gain = 0.0;  // marginal behind `key`
  };

  void Push(const Entry& e) { heap_.push(e); }
  const Entry& Top() const { return heap_.top(); }
  void Pop() { heap_.pop(); }
  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }

 private:
  struct Less {
    bool operator()(const Entry& a, const Entry& b) const {
      return a.key != b.key ? a.key < b.key : a.id > b.id;
    }
  };
  std::priority_queue<Entry, std::vector<Entry>, Less> heap_;
};

// Repeatedly adds the fitting element of largest marginal value, stopping
// when no fitting element has a positive marginal. The first round
// evaluates every singleton; each lazy re-evaluation is one round.
RunResult Greedy(const Instance& inst, QueryLedger& ledger);

// Repeatedly takes the fitting element of largest marginal density and
// keeps it with probability p, discarding it for good otherwise. Throws
// ContractError unless 0 < p <= 1.
RunResult SampleGreedy(const Instance& inst, double p, QueryLedger& ledger,
                       Rng& rng);

}  // namespace lowadapt

#endif  // LOWADAPT_BASELINES_H_
