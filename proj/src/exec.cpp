#include "robmap/exec.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

namespace robmap {

namespace {

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

// Charge a page access unless the structure's current page is already the
// target; the last-read page of each structure stays pinned for free.
void touch_page(AccessLedger& ledger, StructureId sid, PageId page) {
  if (ledger.last_page(sid) != page) ledger.record_access(sid, page);
}

struct SingleIndexRef {
  StructureId sid;
  const std::vector<SingleIndexEntry>* entries;
};

SingleIndexRef single_index(const Dataset& ds, IndexColumn which) {
  if (which == IndexColumn::kA) return {StructureId::kIndexA, &ds.index_a()};
  return {StructureId::kIndexB, &ds.index_b()};
}

Value scan_threshold(const Query& q, IndexColumn which) {
  return which == IndexColumn::kA ? *q.threshold_a : *q.threshold_b;
}

// The predicate on the other column, applied after the row is fetched.
std::optional<Value> residual_threshold(const Query& q, IndexColumn which) {
  return which == IndexColumn::kA ? q.threshold_b : q.threshold_a;
}

// Reads the leaf prefix of a single-column index holding keys < threshold
// and returns its rowids in index order. Pages are charged only while
// qualifying entries are consumed, so an empty range reads nothing.
std::vector<RowId> scan_single_prefix(const Dataset& ds, AccessLedger& ledger, IndexColumn which,
                                      Value threshold) {
  const SingleIndexRef index = single_index(ds, which);
  const std::uint64_t end = which == IndexColumn::kA ? ds.locate_key_a(threshold).entry
                                                     : ds.locate_key_b(threshold).entry;
  std::vector<RowId> rowids;
  rowids.reserve(end);
  for (std::uint64_t k = 0; k < end; ++k) {
    touch_page(ledger, index.sid, ds.leaf_page_of(k));
    ledger.add_rows_examined();
    rowids.push_back((*index.entries)[k].rowid);
  }
  return rowids;
}

// Bitmap-ordered fetch with a sequential-sweep fallback: visit the distinct
// table pages of `rowids` in ascending order, unless fetching them at the
// random rate is estimated to cost more than sweeping the whole table.
// Evaluates an optional residual predicate per collected rowid and returns
// the survivors, sorted.
std::vector<RowId> fetch_via_bitmap(const Dataset& ds, AccessLedger& ledger,
                                    std::vector<RowId> rowids, const CostWeights& weights,
                                    std::optional<Value> residual, IndexColumn residual_column) {
  std::sort(rowids.begin(), rowids.end());

  std::uint64_t distinct_pages = 0;
  PageId prev = 0;
  bool have_prev = false;
  for (RowId r : rowids) {
    const PageId page = ds.table_page_of(r);
    if (!have_prev || page != prev) {
      ++distinct_pages;
      prev = page;
      have_prev = true;
    }
  }

  const std::uint64_t total_pages = ds.table_page_count();
  if (distinct_pages * weights.rand_weight > total_pages * weights.seq_weight) {
    // Sweep every table page in order and keep only marked rows.
    for (PageId p = 0; p < total_pages; ++p) {
      ledger.record_access(StructureId::kTable, p);
    }
  } else {
    have_prev = false;
    for (RowId r : rowids) {
      const PageId page = ds.table_page_of(r);
      if (!have_prev || page != prev) {
        ledger.record_access(StructureId::kTable, page);
        prev = page;
        have_prev = true;
      }
    }
  }

  std::vector<RowId> out;
  out.reserve(rowids.size());
  for (RowId r : rowids) {
    ledger.add_rows_examined();
    if (residual.has_value()) {
      const Value v = residual_column == IndexColumn::kA ? ds.col_a(r) : ds.col_b(r);
      if (v >= *residual) continue;
    }
    out.push_back(r);
  }
  return out;
}

bool row_matches(const Dataset& ds, RowId r, const Query& q) {
  if (q.threshold_a.has_value() && ds.col_a(r) >= *q.threshold_a) return false;
  if (q.threshold_b.has_value() && ds.col_b(r) >= *q.threshold_b) return false;
  return true;
}

// Leaf phase shared by covering_scan_ab and covering_fetch_ab: read the
// contiguous a < va prefix of the composite index, filtering b per entry.
std::vector<RowId> covering_leaf_scan(const Dataset& ds, AccessLedger& ledger, const Query& q) {
  const Value va = *q.threshold_a;
  const Value vb = *q.threshold_b;
  const std::uint64_t end = ds.locate_key_ab(va, 0).entry;
  const auto& index = ds.index_ab();
  std::vector<RowId> out;
  for (std::uint64_t k = 0; k < end; ++k) {
    touch_page(ledger, StructureId::kIndexAb, ds.leaf_page_of(k));
    ledger.add_rows_examined();
    if (index[k].b < vb) out.push_back(index[k].rowid);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

void Query::validate(const DatasetConfig& config) const {
  if (!threshold_a.has_value() && !threshold_b.has_value()) {
    throw ConfigError("query needs at least one threshold");
  }
  if (threshold_a.has_value() && *threshold_a > config.distinct_a) {
    throw ConfigError("threshold_a out of range [0, distinct_a]");
  }
  if (threshold_b.has_value() && *threshold_b > config.distinct_b) {
    throw ConfigError("threshold_b out of range [0, distinct_b]");
  }
}

void ExecConfig::validate() const {
  if (hash_memory == 0) throw ConfigError("hash_memory must be >= 1");
  weights.validate();
}

std::string_view plan_name(PlanId plan) {
  switch (plan) {
    case PlanId::kTableScan: return "TableScan";
    case PlanId::kTradIndexA: return "TradIndexA";
    case PlanId::kTradIndexB: return "TradIndexB";
    case PlanId::kImprovedIndexA: return "ImprovedIndexA";
    case PlanId::kImprovedIndexB: return "ImprovedIndexB";
    case PlanId::kMergeIntersect: return "MergeIntersect";
    case PlanId::kHashIntersectAb: return "HashIntersectAB";
    case PlanId::kHashIntersectBa: return "HashIntersectBA";
    case PlanId::kCoveringScanAb: return "CoveringScanAB";
    case PlanId::kMdamAb: return "MdamAB";
    case PlanId::kCoveringFetchAb: return "CoveringFetchAB";
  }
  return "?";
}

std::optional<PlanId> plan_from_name(std::string_view name) {
  for (PlanId p : kAllPlans) {
    if (plan_name(p) == name) return p;
  }
  return std::nullopt;
}

bool plan_applicable(PlanId plan, const Query& query) {
  const bool has_a = query.threshold_a.has_value();
  const bool has_b = query.threshold_b.has_value();
  const bool rowids = query.output_flavor == OutputFlavor::kRowIds;
  switch (plan) {
    case PlanId::kTableScan: return has_a || has_b;
    case PlanId::kTradIndexA:
    case PlanId::kImprovedIndexA: return has_a;
    case PlanId::kTradIndexB:
    case PlanId::kImprovedIndexB: return has_b;
    case PlanId::kMergeIntersect:
    case PlanId::kHashIntersectAb:
    case PlanId::kHashIntersectBa:
    case PlanId::kCoveringScanAb:
    case PlanId::kMdamAb: return has_a && has_b && rowids;
    case PlanId::kCoveringFetchAb: return has_a && has_b;
  }
  return false;
}

std::vector<RowId> table_scan(const Dataset& ds, AccessLedger& ledger, const Query& query) {
  const std::uint64_t rows = ds.row_count();
  const std::uint64_t per_page = ds.config().rows_per_table_page;
  const std::uint64_t pages = ds.table_page_count();
  std::vector<RowId> out;
  for (PageId p = 0; p < pages; ++p) {
    ledger.record_access(StructureId::kTable, p);
    const RowId hi = std::min<RowId>(rows, (p + 1) * per_page);
    for (RowId r = p * per_page; r < hi; ++r) {
      ledger.add_rows_examined();
      if (row_matches(ds, r, query)) out.push_back(r);
    }
  }
  return out;
}

std::vector<RowId> trad_index_scan(const Dataset& ds, AccessLedger& ledger, const Query& query,
                                   IndexColumn which) {
  const std::vector<RowId> range =
      scan_single_prefix(ds, ledger, which, scan_threshold(query, which));
  const std::optional<Value> residual = residual_threshold(query, which);
  const IndexColumn residual_col = which == IndexColumn::kA ? IndexColumn::kB : IndexColumn::kA;

  // Fetch each qualifying row's table page immediately, in index order.
  std::vector<RowId> out;
  out.reserve(range.size());
  for (RowId r : range) {
    touch_page(ledger, StructureId::kTable, ds.table_page_of(r));
    ledger.add_rows_examined();
    if (residual.has_value()) {
      const Value v = residual_col == IndexColumn::kA ? ds.col_a(r) : ds.col_b(r);
      if (v >= *residual) continue;
    }
    out.push_back(r);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<RowId> improved_index_scan(const Dataset& ds, AccessLedger& ledger,
                                       const Query& query, IndexColumn which,
                                       const CostWeights& weights) {
  std::vector<RowId> range = scan_single_prefix(ds, ledger, which, scan_threshold(query, which));
  const IndexColumn residual_col = which == IndexColumn::kA ? IndexColumn::kB : IndexColumn::kA;
  return fetch_via_bitmap(ds, ledger, std::move(range), weights,
                          residual_threshold(query, which), residual_col);
}

std::vector<RowId> merge_intersect(const Dataset& ds, AccessLedger& ledger, const Query& query) {
  // Both ranges are scanned unconditionally; an empty a-range does not
  // short-circuit the b-side.
  std::vector<RowId> lhs = scan_single_prefix(ds, ledger, IndexColumn::kA, *query.threshold_a);
  std::vector<RowId> rhs = scan_single_prefix(ds, ledger, IndexColumn::kB, *query.threshold_b);
  // Sorting the rowid lists is CPU work and carries no cost weight.
  std::sort(lhs.begin(), lhs.end());
  std::sort(rhs.begin(), rhs.end());
  std::vector<RowId> out;
  out.reserve(std::min(lhs.size(), rhs.size()));
  std::set_intersection(lhs.begin(), lhs.end(), rhs.begin(), rhs.end(), std::back_inserter(out));
  return out;
}

std::vector<RowId> hash_intersect(const Dataset& ds, AccessLedger& ledger, const Query& query,
                                  IndexColumn build, const ExecConfig& exec) {
  std::vector<RowId> side_a = scan_single_prefix(ds, ledger, IndexColumn::kA, *query.threshold_a);
  std::vector<RowId> side_b = scan_single_prefix(ds, ledger, IndexColumn::kB, *query.threshold_b);
  std::vector<RowId>& build_side = build == IndexColumn::kA ? side_a : side_b;
  std::vector<RowId>& probe_side = build == IndexColumn::kA ? side_b : side_a;

  const std::uint64_t k_build = build_side.size();
  const std::uint64_t k_probe = probe_side.size();
  const std::uint64_t memory = exec.hash_memory;
  const std::uint64_t page = ds.config().entries_per_index_page;
  if (k_build > memory) {
    std::uint64_t build_pages = 0;
    std::uint64_t probe_pages = 0;
    if (exec.spill_policy == SpillPolicy::kAbrupt) {
      // Both inputs are written out and re-read in full.
      build_pages = ceil_div(k_build, page);
      probe_pages = ceil_div(k_probe, page);
    } else {
      // Only the overflow fraction f = (k_build - memory) / k_build of each
      // input spills.
      const std::uint64_t overflow = k_build - memory;
      build_pages = ceil_div(overflow, page);
      probe_pages = ceil_div(overflow * k_probe, k_build * page);
    }
    ledger.record_scratch(build_pages + probe_pages, ScratchDirection::kWrite);
    ledger.record_scratch(build_pages + probe_pages, ScratchDirection::kRead);
  }

  std::unordered_set<RowId> table(build_side.begin(), build_side.end());
  std::vector<RowId> out;
  out.reserve(std::min(k_build, k_probe));
  for (RowId r : probe_side) {
    if (table.count(r) != 0) out.push_back(r);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<RowId> covering_scan_ab(const Dataset& ds, AccessLedger& ledger, const Query& query) {
  return covering_leaf_scan(ds, ledger, query);
}

std::vector<RowId> mdam_scan_ab(const Dataset& ds, AccessLedger& ledger, const Query& query) {
  const Value va = *query.threshold_a;
  const Value vb = *query.threshold_b;
  const auto& index = ds.index_ab();
  std::vector<RowId> out;
  // Probe each leading value and read just the b < vb prefix of its group;
  // probes are free, and a page is charged only when it differs from the
  // last leaf page this execution read.
  for (Value a = 0; a < va; ++a) {
    const std::uint64_t start = ds.locate_key_ab(a, 0).entry;
    const std::uint64_t end = ds.locate_key_ab(a, vb).entry;
    for (std::uint64_t k = start; k < end; ++k) {
      touch_page(ledger, StructureId::kIndexAb, ds.leaf_page_of(k));
      ledger.add_rows_examined();
      out.push_back(index[k].rowid);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<RowId> covering_fetch_ab(const Dataset& ds, AccessLedger& ledger, const Query& query,
                                     const CostWeights& weights) {
  // The index covers the predicate, but rows are fetched anyway (bitmap
  // order, sweep switch), modeling row-level versioning that forces visits
  // to the main table.
  std::vector<RowId> matches = covering_leaf_scan(ds, ledger, query);
  return fetch_via_bitmap(ds, ledger, std::move(matches), weights, std::nullopt, IndexColumn::kA);
}

PlanResult execute_plan(const Dataset& dataset, PlanId plan, const Query& query,
                        const ExecConfig& exec) {
  query.validate(dataset.config());
  exec.validate();
  if (!plan_applicable(plan, query)) {
    throw ConfigError(std::string("plan ") + std::string(plan_name(plan)) +
                      " is not applicable to this query form");
  }

  AccessLedger ledger;
  std::vector<RowId> rowids;
  switch (plan) {
    case PlanId::kTableScan: rowids = table_scan(dataset, ledger, query); break;
    case PlanId::kTradIndexA:
      rowids = trad_index_scan(dataset, ledger, query, IndexColumn::kA);
      break;
    case PlanId::kTradIndexB:
      rowids = trad_index_scan(dataset, ledger, query, IndexColumn::kB);
      break;
    case PlanId::kImprovedIndexA:
      rowids = improved_index_scan(dataset, ledger, query, IndexColumn::kA, exec.weights);
      break;
    case PlanId::kImprovedIndexB:
      rowids = improved_index_scan(dataset, ledger, query, IndexColumn::kB, exec.weights);
      break;
    case PlanId::kMergeIntersect: rowids = merge_intersect(dataset, ledger, query); break;
    case PlanId::kHashIntersectAb:
      rowids = hash_intersect(dataset, ledger, query, IndexColumn::kA, exec);
      break;
    case PlanId::kHashIntersectBa:
      rowids = hash_intersect(dataset, ledger, query, IndexColumn::kB, exec);
      break;
    case PlanId::kCoveringScanAb: rowids = covering_scan_ab(dataset, ledger, query); break;
    case PlanId::kMdamAb: rowids = mdam_scan_ab(dataset, ledger, query); break;
    case PlanId::kCoveringFetchAb:
      rowids = covering_fetch_ab(dataset, ledger, query, exec.weights);
      break;
  }

  PlanResult result;
  result.result_count = rowids.size();
  std::uint64_t checksum = 0;
  for (RowId r : rowids) checksum += r;  // mod 2^64 by wraparound
  result.result_checksum = checksum;
  result.cost = ledger.cost(exec.weights);
  result.ledger = ledger;
  return result;
}

}  // namespace robmap
