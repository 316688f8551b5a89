#pragma once

// Deterministic synthetic storage layer: a paged heap table with three
// sorted leaf-page indexes, plus the access ledger that turns operator
// behavior into exact, reproducible cost units. There is no real I/O;
// a "page access" is a counter update classified sequential or random.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "robmap/errors.hpp"

namespace robmap {

using RowId = std::uint64_t;
using Value = std::uint64_t;
using PageId = std::uint64_t;
using Cost = std::uint64_t;

// Page-bearing structures a ledger can charge. Inner B-tree levels are
// modeled as cached, so only leaf and table pages ever appear here.
enum class StructureId : std::uint8_t {
  kTable = 0,
  kIndexA = 1,
  kIndexB = 2,
  kIndexAb = 3,
};
inline constexpr std::size_t kStructureCount = 4;

enum class AccessClass : std::uint8_t { kRandom, kSequential };
enum class ScratchDirection : std::uint8_t { kWrite, kRead };

// Cost units per page touch. Integer weights keep every measured cost
// exact, so surfaces and reports are byte-reproducible.
struct CostWeights {
  Cost seq_weight = 1;
  Cost rand_weight = 10;
  Cost scratch_weight = 1;

  void validate() const;  // throws ConfigError
  bool operator==(const CostWeights&) const = default;
};

// Per-execution counters of page and scratch traffic; the sole source of
// measured cost. One ledger per plan execution, never shared.
class AccessLedger {
 public:
  // Sequential iff this structure's previous access in this execution was
  // to exactly the preceding page. Counters only ever increase.
  AccessClass record_access(StructureId structure, PageId page);

  void record_scratch(std::uint64_t pages, ScratchDirection direction);
  void add_rows_examined(std::uint64_t rows = 1) { rows_examined_ += rows; }

  std::uint64_t seq_pages() const { return seq_pages_; }
  std::uint64_t rand_pages() const { return rand_pages_; }
  std::uint64_t scratch_pages_written() const { return scratch_written_; }
  std::uint64_t scratch_pages_read() const { return scratch_read_; }
  std::uint64_t rows_examined() const { return rows_examined_; }
  std::optional<PageId> last_page(StructureId structure) const;

  // seq*seq_weight + rand*rand_weight + (scratch written+read)*scratch_weight
  Cost cost(const CostWeights& weights) const;

  bool operator==(const AccessLedger&) const = default;

 private:
  std::uint64_t seq_pages_ = 0;
  std::uint64_t rand_pages_ = 0;
  std::uint64_t scratch_written_ = 0;
  std::uint64_t scratch_read_ = 0;
  std::uint64_t rows_examined_ = 0;
  std::array<std::optional<PageId>, kStructureCount> last_page_{};
};

enum class ValueMode : std::uint8_t { kPermutation, kExplicit };

struct DatasetConfig {
  std::uint64_t row_count = std::uint64_t{1} << 20;        // N, power of two
  std::uint64_t rows_per_table_page = 64;                  // P_t
  std::uint64_t entries_per_index_page = 256;              // P_i
  std::uint64_t distinct_a = std::uint64_t{1} << 16;       // D_A, divides N
  std::uint64_t distinct_b = std::uint64_t{1} << 16;       // D_B, divides N
  std::uint64_t seed = 0;
  ValueMode value_mode = ValueMode::kPermutation;
  std::vector<Value> explicit_a;  // kExplicit only; size N, exact multiplicities
  std::vector<Value> explicit_b;

  void validate() const;  // throws ConfigError
  bool operator==(const DatasetConfig&) const = default;
};

struct SingleIndexEntry {
  Value key;
  RowId rowid;
  bool operator==(const SingleIndexEntry&) const = default;
};

struct PairIndexEntry {
  Value a;
  Value b;
  RowId rowid;
  bool operator==(const PairIndexEntry&) const = default;
};

// Position of the first entry >= a search key: leaf page plus slot within
// it. Entries numbered densely, so entry == page * P_i + slot.
struct IndexPos {
  std::uint64_t entry;
  PageId page;
  std::uint64_t slot;
  bool operator==(const IndexPos&) const = default;
};

// Immutable after construction; any number of readers may share it.
class Dataset {
 public:
  const DatasetConfig& config() const { return config_; }
  std::uint64_t row_count() const { return config_.row_count; }

  Value col_a(RowId row) const { return col_a_[row]; }
  Value col_b(RowId row) const { return col_b_[row]; }

  std::uint64_t table_page_count() const;
  std::uint64_t index_leaf_page_count() const;  // same for all three indexes
  PageId table_page_of(RowId row) const { return row / config_.rows_per_table_page; }
  PageId leaf_page_of(std::uint64_t entry_index) const {
    return entry_index / config_.entries_per_index_page;
  }

  const std::vector<SingleIndexEntry>& index_a() const { return index_a_; }
  const std::vector<SingleIndexEntry>& index_b() const { return index_b_; }
  const std::vector<PairIndexEntry>& index_ab() const { return index_ab_; }

  // First entry >= key; charges nothing (inner nodes are cached). The
  // caller charges the first leaf page when it actually reads entries.
  // A key past the last entry yields the one-past-end position.
  IndexPos locate_key_a(Value key) const;
  IndexPos locate_key_b(Value key) const;
  IndexPos locate_key_ab(Value a, Value b) const;

  bool operator==(const Dataset&) const = default;

 private:
  friend Dataset build_dataset(const DatasetConfig& config);

  DatasetConfig config_;
  std::vector<Value> col_a_;  // indexed by rowid; table pages are implicit
  std::vector<Value> col_b_;
  std::vector<SingleIndexEntry> index_a_;   // sorted by (key, rowid)
  std::vector<SingleIndexEntry> index_b_;
  std::vector<PairIndexEntry> index_ab_;    // sorted by (a, b, rowid)
};

// Pure function of config: identical config (including seed) yields a
// bit-identical dataset. Throws ConfigError on invariant violations.
Dataset build_dataset(const DatasetConfig& config);

}  // namespace robmap
