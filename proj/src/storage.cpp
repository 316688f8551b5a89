#include "robmap/storage.hpp"

#include <algorithm>
#include <string>

namespace robmap {

namespace {

// Odd 64-bit multiplier (2^64 / golden ratio); odd mod any power of two,
// so i -> (kMult*i + offset) mod N is a bijection on [0, N).
constexpr std::uint64_t kValueMultiplier = 0x9E3779B97F4A7C15ULL;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

bool is_power_of_two(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

unsigned log2_exact(std::uint64_t v) {
  unsigned bits = 0;
  while ((std::uint64_t{1} << bits) < v) ++bits;
  return bits;
}

std::uint64_t reverse_low_bits(std::uint64_t v, unsigned bits) {
  std::uint64_t out = 0;
  for (unsigned i = 0; i < bits; ++i) {
    out = (out << 1) | ((v >> i) & 1u);
  }
  return out;
}

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

// Every value in [0, distinct) must occur exactly rows/distinct times;
// that is what makes swept selectivities exact instead of approximate.
void check_multiplicities(const std::vector<Value>& column, std::uint64_t distinct,
                          std::uint64_t rows, const char* name) {
  std::vector<std::uint64_t> counts(distinct, 0);
  for (Value v : column) {
    if (v >= distinct) {
      throw ConfigError(std::string(name) + ": value " + std::to_string(v) +
                        " out of range [0, " + std::to_string(distinct) + ")");
    }
    ++counts[v];
  }
  const std::uint64_t want = rows / distinct;
  for (std::uint64_t v = 0; v < distinct; ++v) {
    if (counts[v] != want) {
      throw ConfigError(std::string(name) + ": value " + std::to_string(v) + " occurs " +
                        std::to_string(counts[v]) + " times, expected " + std::to_string(want));
    }
  }
}

}  // namespace

void CostWeights::validate() const {
  if (seq_weight == 0 || rand_weight == 0 || scratch_weight == 0) {
    throw ConfigError("cost weights must all be > 0");
  }
  if (rand_weight < seq_weight) {
    throw ConfigError("rand_weight must be >= seq_weight");
  }
}

AccessClass AccessLedger::record_access(StructureId structure, PageId page) {
  auto& last = last_page_[static_cast<std::size_t>(structure)];
  const bool sequential = last.has_value() && page == *last + 1;
  last = page;
  if (sequential) {
    ++seq_pages_;
    return AccessClass::kSequential;
  }
  ++rand_pages_;
  return AccessClass::kRandom;
}

void AccessLedger::record_scratch(std::uint64_t pages, ScratchDirection direction) {
  if (direction == ScratchDirection::kWrite) {
    scratch_written_ += pages;
  } else {
    scratch_read_ += pages;
  }
}

std::optional<PageId> AccessLedger::last_page(StructureId structure) const {
  return last_page_[static_cast<std::size_t>(structure)];
}

Cost AccessLedger::cost(const CostWeights& weights) const {
  return seq_pages_ * weights.seq_weight + rand_pages_ * weights.rand_weight +
         (scratch_written_ + scratch_read_) * weights.scratch_weight;
}

void DatasetConfig::validate() const {
  if (row_count == 0 || rows_per_table_page == 0 || entries_per_index_page == 0 ||
      distinct_a == 0 || distinct_b == 0) {
    throw ConfigError("dataset parameters must all be >= 1");
  }
  if (row_count % distinct_a != 0) {
    throw ConfigError("distinct_a (" + std::to_string(distinct_a) +
                      ") must divide row_count (" + std::to_string(row_count) + ")");
  }
  if (row_count % distinct_b != 0) {
    throw ConfigError("distinct_b (" + std::to_string(distinct_b) +
                      ") must divide row_count (" + std::to_string(row_count) + ")");
  }
  if (value_mode == ValueMode::kPermutation) {
    if (!is_power_of_two(row_count)) {
      throw ConfigError("permutation mode requires a power-of-two row_count");
    }
    if (!explicit_a.empty() || !explicit_b.empty()) {
      throw ConfigError("explicit column arrays are only allowed in explicit mode");
    }
  } else {
    if (explicit_a.size() != row_count || explicit_b.size() != row_count) {
      throw ConfigError("explicit mode requires col_a and col_b arrays of length row_count");
    }
  }
}

std::uint64_t Dataset::table_page_count() const {
  return ceil_div(config_.row_count, config_.rows_per_table_page);
}

std::uint64_t Dataset::index_leaf_page_count() const {
  return ceil_div(config_.row_count, config_.entries_per_index_page);
}

IndexPos Dataset::locate_key_a(Value key) const {
  auto it = std::lower_bound(index_a_.begin(), index_a_.end(), key,
                             [](const SingleIndexEntry& e, Value k) { return e.key < k; });
  const std::uint64_t entry = static_cast<std::uint64_t>(it - index_a_.begin());
  return {entry, leaf_page_of(entry), entry % config_.entries_per_index_page};
}

IndexPos Dataset::locate_key_b(Value key) const {
  auto it = std::lower_bound(index_b_.begin(), index_b_.end(), key,
                             [](const SingleIndexEntry& e, Value k) { return e.key < k; });
  const std::uint64_t entry = static_cast<std::uint64_t>(it - index_b_.begin());
  return {entry, leaf_page_of(entry), entry % config_.entries_per_index_page};
}

IndexPos Dataset::locate_key_ab(Value a, Value b) const {
  const std::pair<Value, Value> key{a, b};
  auto it = std::lower_bound(index_ab_.begin(), index_ab_.end(), key,
                             [](const PairIndexEntry& e, const std::pair<Value, Value>& k) {
                               return std::pair<Value, Value>{e.a, e.b} < k;
                             });
  const std::uint64_t entry = static_cast<std::uint64_t>(it - index_ab_.begin());
  return {entry, leaf_page_of(entry), entry % config_.entries_per_index_page};
}

Dataset build_dataset(const DatasetConfig& config) {
  config.validate();
  const std::uint64_t n = config.row_count;

  Dataset ds;
  ds.config_ = config;

  if (config.value_mode == ValueMode::kExplicit) {
    ds.col_a_ = config.explicit_a;
    ds.col_b_ = config.explicit_b;
  } else {
    // One affine bijection q(i) = (m*i + offset) mod N drives both columns:
    // colA takes q's high bits, colB the bit-reversed low bits. Marginal
    // counts are exact for every threshold, and joint counts are exact
    // (floored at one row) for all power-of-two threshold pairs, which is
    // what the selectivity grids sweep. Values are uncorrelated with rowid
    // order. Two independent affine maps would instead make colB a fixed
    // function of colA whenever D_A = D_B.
    const unsigned bits = log2_exact(n);
    const std::uint64_t mask = n - 1;
    const std::uint64_t offset = splitmix64(config.seed) & mask;
    const std::uint64_t bucket_a = n / config.distinct_a;
    const std::uint64_t bucket_b = n / config.distinct_b;
    ds.col_a_.resize(n);
    ds.col_b_.resize(n);
    for (std::uint64_t i = 0; i < n; ++i) {
      const std::uint64_t q = (kValueMultiplier * i + offset) & mask;
      ds.col_a_[i] = q / bucket_a;
      ds.col_b_[i] = reverse_low_bits(q, bits) / bucket_b;
    }
  }

  check_multiplicities(ds.col_a_, config.distinct_a, n, "col_a");
  check_multiplicities(ds.col_b_, config.distinct_b, n, "col_b");

  // Counting sort by key keeps rowids ascending within each key, which is
  // exactly (key, rowid) order.
  auto build_single = [n](const std::vector<Value>& column, std::uint64_t distinct) {
    std::vector<std::uint64_t> pos(distinct + 1, 0);
    for (Value v : column) ++pos[v + 1];
    for (std::uint64_t v = 0; v < distinct; ++v) pos[v + 1] += pos[v];
    std::vector<SingleIndexEntry> index(n);
    for (RowId i = 0; i < n; ++i) {
      index[pos[column[i]]++] = SingleIndexEntry{column[i], i};
    }
    return index;
  };
  ds.index_a_ = build_single(ds.col_a_, config.distinct_a);
  ds.index_b_ = build_single(ds.col_b_, config.distinct_b);

  ds.index_ab_.resize(n);
  for (RowId i = 0; i < n; ++i) {
    ds.index_ab_[i] = PairIndexEntry{ds.col_a_[i], ds.col_b_[i], i};
  }
  std::sort(ds.index_ab_.begin(), ds.index_ab_.end(),
            [](const PairIndexEntry& x, const PairIndexEntry& y) {
              return std::tie(x.a, x.b, x.rowid) < std::tie(y.a, y.b, y.rowid);
            });

  return ds;
}

}  // namespace robmap
