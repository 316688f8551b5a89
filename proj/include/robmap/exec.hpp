#pragma once

// The catalog of forced query-execution plans. Every plan actually
// materializes the query result over the dataset while charging an
// AccessLedger; nothing is estimated and no plan is ever chosen by an
// optimizer. Result sets must agree across all applicable plans.

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "robmap/storage.hpp"

namespace robmap {

enum class OutputFlavor : std::uint8_t { kRowIds, kRows };

// Predicate form: colA < threshold_a AND colB < threshold_b, with an
// absent threshold meaning always-true. rows output forces table fetches
// for plans that do not already perform them; rowids lets plans covered
// by an index skip fetching entirely.
struct Query {
  std::optional<Value> threshold_a;
  std::optional<Value> threshold_b;
  OutputFlavor output_flavor = OutputFlavor::kRowIds;

  void validate(const DatasetConfig& config) const;  // throws ConfigError
  bool operator==(const Query&) const = default;
};

enum class PlanId : std::uint8_t {
  kTableScan,
  kTradIndexA,
  kTradIndexB,
  kImprovedIndexA,
  kImprovedIndexB,
  kMergeIntersect,
  kHashIntersectAb,
  kHashIntersectBa,
  kCoveringScanAb,
  kMdamAb,
  kCoveringFetchAb,
};

inline constexpr std::array<PlanId, 11> kAllPlans = {
    PlanId::kTableScan,       PlanId::kTradIndexA,      PlanId::kTradIndexB,
    PlanId::kImprovedIndexA,  PlanId::kImprovedIndexB,  PlanId::kMergeIntersect,
    PlanId::kHashIntersectAb, PlanId::kHashIntersectBa, PlanId::kCoveringScanAb,
    PlanId::kMdamAb,          PlanId::kCoveringFetchAb,
};

std::string_view plan_name(PlanId plan);
std::optional<PlanId> plan_from_name(std::string_view name);

enum class IndexColumn : std::uint8_t { kA, kB };
enum class SpillPolicy : std::uint8_t { kAbrupt, kGraceful };

struct ExecConfig {
  std::uint64_t hash_memory = std::uint64_t{1} << 16;  // entries
  SpillPolicy spill_policy = SpillPolicy::kAbrupt;
  CostWeights weights;

  void validate() const;  // throws ConfigError
  bool operator==(const ExecConfig&) const = default;
};

struct PlanResult {
  std::uint64_t result_count = 0;
  std::uint64_t result_checksum = 0;  // sum of qualifying rowids mod 2^64
  Cost cost = 0;
  AccessLedger ledger;
};

// A plan applies when the thresholds it scans are present and, for plans
// answered entirely from covering indexes, the query asks for rowids.
bool plan_applicable(PlanId plan, const Query& query);

// Dispatches to the plan below, with a fresh ledger. Throws ConfigError
// for an inapplicable plan/query pairing or out-of-domain thresholds.
PlanResult execute_plan(const Dataset& dataset, PlanId plan, const Query& query,
                        const ExecConfig& exec);

// Individual plans. Each returns the sorted qualifying rowids and charges
// the ledger as it goes. Exposed for direct testing.
std::vector<RowId> table_scan(const Dataset& ds, AccessLedger& ledger, const Query& query);
std::vector<RowId> trad_index_scan(const Dataset& ds, AccessLedger& ledger, const Query& query,
                                   IndexColumn which);
std::vector<RowId> improved_index_scan(const Dataset& ds, AccessLedger& ledger,
                                       const Query& query, IndexColumn which,
                                       const CostWeights& weights);
std::vector<RowId> merge_intersect(const Dataset& ds, AccessLedger& ledger, const Query& query);
std::vector<RowId> hash_intersect(const Dataset& ds, AccessLedger& ledger, const Query& query,
                                  IndexColumn build, const ExecConfig& exec);
std::vector<RowId> covering_scan_ab(const Dataset& ds, AccessLedger& ledger, const Query& query);
std::vector<RowId> mdam_scan_ab(const Dataset& ds, AccessLedger& ledger, const Query& query);
std::vector<RowId> covering_fetch_ab(const Dataset& ds, AccessLedger& ledger, const Query& query,
                                     const CostWeights& weights);

}  // namespace robmap
