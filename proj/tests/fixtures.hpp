#pragma once

// Shared test fixtures: the 16-row explicit dataset used throughout the
// unit suites (4 table pages, 8-entry index leaves, 4 distinct values per
// column, colA(i) = i mod 4, colB(i) = floor(i/4) mod 4) and a tiny
// deterministic RNG for property-style tests.

#include <cstdint>
#include <vector>

#include "robmap/exec.hpp"
#include "robmap/storage.hpp"

namespace robmap::testing {

inline DatasetConfig t16_config() {
  DatasetConfig cfg;
  cfg.row_count = 16;
  cfg.rows_per_table_page = 4;
  cfg.entries_per_index_page = 8;
  cfg.distinct_a = 4;
  cfg.distinct_b = 4;
  cfg.seed = 0;
  cfg.value_mode = ValueMode::kExplicit;
  for (std::uint64_t i = 0; i < 16; ++i) {
    cfg.explicit_a.push_back(i % 4);
    cfg.explicit_b.push_back((i / 4) % 4);
  }
  return cfg;
}

inline Query query_ab(Value va, Value vb, OutputFlavor flavor = OutputFlavor::kRowIds) {
  Query q;
  q.threshold_a = va;
  q.threshold_b = vb;
  q.output_flavor = flavor;
  return q;
}

inline Query query_a(Value va, OutputFlavor flavor = OutputFlavor::kRows) {
  Query q;
  q.threshold_a = va;
  q.output_flavor = flavor;
  return q;
}

// xorshift-style generator: deterministic across platforms, no <random>.
class TestRng {
 public:
  explicit TestRng(std::uint64_t seed) : state_(seed ^ 0x9E3779B97F4A7C15ULL) { next(); }

  std::uint64_t next() {
    state_ ^= state_ << 13;
    state_ ^= state_ >> 7;
    state_ ^= state_ << 17;
    return state_;
  }

  std::uint64_t below(std::uint64_t bound) { return bound == 0 ? 0 : next() % bound; }

 private:
  std::uint64_t state_;
};

// Reference predicate evaluation straight off the row array, no ledger.
inline std::vector<RowId> brute_force_rowids(const Dataset& ds, const Query& q) {
  std::vector<RowId> out;
  for (RowId r = 0; r < ds.row_count(); ++r) {
    const bool pass_a = !q.threshold_a.has_value() || ds.col_a(r) < *q.threshold_a;
    const bool pass_b = !q.threshold_b.has_value() || ds.col_b(r) < *q.threshold_b;
    if (pass_a && pass_b) out.push_back(r);
  }
  return out;
}

}  // namespace robmap::testing
