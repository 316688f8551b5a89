#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>

#include "fixtures.hpp"
#include "robmap/storage.hpp"

using namespace robmap;
using robmap::testing::TestRng;

TEST_CASE("cost weights validate") {
  CostWeights ok;
  CHECK_NOTHROW(ok.validate());
  CostWeights zero{0, 10, 1};
  CHECK_THROWS_AS(zero.validate(), ConfigError);
  CostWeights inverted{5, 2, 1};
  CHECK_THROWS_AS(inverted.validate(), ConfigError);
}

TEST_CASE("dataset config rejects invalid shapes") {
  DatasetConfig cfg;

  SUBCASE("divisibility violation") {
    cfg.row_count = 16;
    cfg.distinct_a = 3;
    cfg.distinct_b = 4;
    CHECK_THROWS_AS(build_dataset(cfg), ConfigError);
  }
  SUBCASE("zero-sized parameter") {
    cfg.rows_per_table_page = 0;
    CHECK_THROWS_AS(build_dataset(cfg), ConfigError);
  }
  SUBCASE("permutation mode requires power-of-two rows") {
    cfg.row_count = 12;
    cfg.distinct_a = 4;
    cfg.distinct_b = 4;
    CHECK_THROWS_AS(build_dataset(cfg), ConfigError);
  }
  SUBCASE("explicit arrays must have exact multiplicities") {
    cfg = robmap::testing::t16_config();
    cfg.explicit_a[0] = 1;  // value 0 now occurs 3 times, value 1 five times
    CHECK_THROWS_AS(build_dataset(cfg), ConfigError);
  }
  SUBCASE("explicit arrays must match row_count") {
    cfg = robmap::testing::t16_config();
    cfg.explicit_b.pop_back();
    CHECK_THROWS_AS(build_dataset(cfg), ConfigError);
  }
}

TEST_CASE("T16 fixture geometry") {
  const Dataset ds = build_dataset(robmap::testing::t16_config());
  CHECK(ds.table_page_count() == 4);
  CHECK(ds.index_leaf_page_count() == 2);
  CHECK(ds.index_a().size() == 16);
  CHECK(ds.index_b().size() == 16);
  CHECK(ds.index_ab().size() == 16);

  CHECK(std::is_sorted(ds.index_a().begin(), ds.index_a().end(),
                       [](const SingleIndexEntry& x, const SingleIndexEntry& y) {
                         return std::pair{x.key, x.rowid} < std::pair{y.key, y.rowid};
                       }));
  CHECK(std::is_sorted(ds.index_ab().begin(), ds.index_ab().end(),
                       [](const PairIndexEntry& x, const PairIndexEntry& y) {
                         return std::tuple{x.a, x.b, x.rowid} < std::tuple{y.a, y.b, y.rowid};
                       }));

  // First four index_a entries are the a=0 rowids in ascending order.
  CHECK(ds.index_a()[0].rowid == 0);
  CHECK(ds.index_a()[1].rowid == 4);
  CHECK(ds.index_a()[2].rowid == 8);
  CHECK(ds.index_a()[3].rowid == 12);
}

TEST_CASE("default config table page count") {
  const Dataset ds = build_dataset(DatasetConfig{});
  CHECK(ds.table_page_count() == 16384);  // 2^20 / 64
}

TEST_CASE("locate_key positions") {
  const Dataset ds = build_dataset(robmap::testing::t16_config());

  const IndexPos at1 = ds.locate_key_a(1);
  CHECK(at1.page == 0);
  CHECK(at1.slot == 4);

  const IndexPos at0 = ds.locate_key_a(0);
  CHECK(at0.page == 0);
  CHECK(at0.slot == 0);

  const IndexPos past = ds.locate_key_a(4);
  CHECK(past.entry == 16);  // one past the end

  const IndexPos ab = ds.locate_key_ab(1, 0);
  CHECK(ab.entry == 4);  // four (a=0, *) entries precede
}

TEST_CASE("build_dataset is deterministic in config and seed") {
  DatasetConfig cfg;
  cfg.row_count = 1 << 12;
  cfg.distinct_a = 1 << 6;
  cfg.distinct_b = 1 << 6;
  cfg.seed = 7;
  const Dataset first = build_dataset(cfg);
  const Dataset second = build_dataset(cfg);
  CHECK(first == second);

  cfg.seed = 8;
  const Dataset reseeded = build_dataset(cfg);
  bool any_difference = false;
  for (RowId r = 0; r < cfg.row_count && !any_difference; ++r) {
    any_difference = reseeded.col_a(r) != first.col_a(r);
  }
  CHECK(any_difference);
}

TEST_CASE("permutation mode has exact marginal selectivities") {
  DatasetConfig cfg;
  cfg.row_count = 1 << 16;
  cfg.distinct_a = 1 << 8;
  cfg.distinct_b = 1 << 8;
  cfg.seed = 42;
  const Dataset ds = build_dataset(cfg);

  // Brute-force count for every threshold, both columns.
  std::vector<std::uint64_t> hist_a(cfg.distinct_a, 0), hist_b(cfg.distinct_b, 0);
  for (RowId r = 0; r < cfg.row_count; ++r) {
    ++hist_a[ds.col_a(r)];
    ++hist_b[ds.col_b(r)];
  }
  const std::uint64_t per_value = cfg.row_count / cfg.distinct_a;
  for (Value v = 0; v < cfg.distinct_a; ++v) {
    CHECK(hist_a[v] == per_value);
    CHECK(hist_b[v] == per_value);
  }
}

TEST_CASE("permutation mode has exact joint counts at swept thresholds") {
  DatasetConfig cfg;
  cfg.row_count = 1 << 16;
  cfg.distinct_a = 1 << 8;
  cfg.distinct_b = 1 << 8;
  cfg.seed = 3;
  const Dataset ds = build_dataset(cfg);

  for (unsigned i = 0; i <= 8; ++i) {
    for (unsigned j = 0; j <= 8; ++j) {
      const Value va = cfg.distinct_a >> i;
      const Value vb = cfg.distinct_b >> j;
      std::uint64_t count = 0;
      for (RowId r = 0; r < cfg.row_count; ++r) {
        if (ds.col_a(r) < va && ds.col_b(r) < vb) ++count;
      }
      CHECK(count == cfg.row_count >> (i + j));
    }
  }
}

TEST_CASE("full-range threshold keeps every row") {
  DatasetConfig cfg;
  cfg.row_count = 1 << 10;
  cfg.distinct_a = 1 << 5;
  cfg.distinct_b = 1 << 5;
  for (std::uint64_t seed : {0ULL, 1ULL, 99ULL}) {
    cfg.seed = seed;
    const Dataset ds = build_dataset(cfg);
    std::uint64_t count = 0;
    for (RowId r = 0; r < cfg.row_count; ++r) {
      if (ds.col_a(r) < cfg.distinct_a) ++count;
    }
    CHECK(count == cfg.row_count);
  }
}

TEST_CASE("ledger classification examples") {
  AccessLedger ledger;
  CHECK(ledger.record_access(StructureId::kTable, 0) == AccessClass::kRandom);
  CHECK(ledger.record_access(StructureId::kTable, 1) == AccessClass::kSequential);
  CHECK(ledger.record_access(StructureId::kTable, 3) == AccessClass::kRandom);
  CHECK(ledger.seq_pages() == 1);
  CHECK(ledger.rand_pages() == 2);

  // Tracking is per structure: a fresh structure starts random again.
  CHECK(ledger.record_access(StructureId::kIndexA, 4) == AccessClass::kRandom);
  CHECK(ledger.record_access(StructureId::kTable, 4) == AccessClass::kSequential);
}

TEST_CASE("scratch counters are additive") {
  AccessLedger ledger;
  ledger.record_scratch(0, ScratchDirection::kWrite);
  CHECK(ledger.scratch_pages_written() == 0);
  CHECK(ledger.scratch_pages_read() == 0);

  ledger.record_scratch(3, ScratchDirection::kWrite);
  ledger.record_scratch(3, ScratchDirection::kRead);
  CHECK(ledger.scratch_pages_written() == 3);
  CHECK(ledger.scratch_pages_read() == 3);

  ledger.record_scratch(1, ScratchDirection::kWrite);
  ledger.record_scratch(2, ScratchDirection::kWrite);
  CHECK(ledger.scratch_pages_written() == 6);
}

TEST_CASE("ledger cost formula") {
  const CostWeights defaults;
  {
    AccessLedger ledger;
    ledger.record_access(StructureId::kTable, 5);  // random
    ledger.record_access(StructureId::kTable, 6);
    ledger.record_access(StructureId::kTable, 7);
    ledger.record_access(StructureId::kTable, 8);  // 3 sequential
    CHECK(ledger.cost(defaults) == 13);
  }
  {
    AccessLedger ledger;
    CHECK(ledger.cost(defaults) == 0);
  }
  {
    AccessLedger ledger;
    ledger.record_access(StructureId::kTable, 3);
    ledger.record_access(StructureId::kTable, 9);  // 2 random
    ledger.record_scratch(1, ScratchDirection::kWrite);
    ledger.record_scratch(1, ScratchDirection::kRead);
    CHECK(ledger.cost(defaults) == 22);
  }
}

TEST_CASE("classification agrees with a replay oracle") {
  TestRng rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    AccessLedger ledger;
    std::map<StructureId, PageId> oracle_last;
    std::uint64_t oracle_seq = 0, oracle_rand = 0, calls = 0;
    for (int step = 0; step < 200; ++step) {
      const auto sid = static_cast<StructureId>(rng.below(kStructureCount));
      const PageId page = rng.below(32);
      // One-line oracle: sequential iff previous page of this structure + 1.
      const auto it = oracle_last.find(sid);
      if (it != oracle_last.end() && page == it->second + 1) {
        ++oracle_seq;
      } else {
        ++oracle_rand;
      }
      oracle_last[sid] = page;
      ledger.record_access(sid, page);
      ++calls;
    }
    CHECK(ledger.seq_pages() == oracle_seq);
    CHECK(ledger.rand_pages() == oracle_rand);
    CHECK(ledger.seq_pages() + ledger.rand_pages() == calls);
  }
}

TEST_CASE("cost is monotone in every counter") {
  const CostWeights defaults;
  AccessLedger ledger;
  Cost prev = ledger.cost(defaults);
  TestRng rng(11);
  for (int step = 0; step < 100; ++step) {
    switch (rng.below(3)) {
      case 0: ledger.record_access(StructureId::kTable, rng.below(64)); break;
      case 1: ledger.record_scratch(rng.below(4), ScratchDirection::kWrite); break;
      default: ledger.record_scratch(rng.below(4), ScratchDirection::kRead); break;
    }
    const Cost now = ledger.cost(defaults);
    CHECK(now >= prev);
    prev = now;
  }
}
