#pragma once

// Cost-surface CSV schema. Column header (exact):
//   axis1_exp,axis2_exp,plan,cost_units,rand_pages,seq_pages,scratch_read,
//   scratch_write,rows_examined,result_count,result_checksum
// axis2_exp is empty for 1-D sweeps. Rows are sorted by (exponents, plan
// name). A leading '#' metadata line carries the grid axes and output
// flavor so read(write(s)) == s for every field.

#include <string>

#include "robmap/sweep.hpp"

namespace robmap {

inline constexpr std::string_view kSurfaceCsvHeader =
    "axis1_exp,axis2_exp,plan,cost_units,rand_pages,seq_pages,scratch_read,scratch_write,"
    "rows_examined,result_count,result_checksum";

std::string write_surface_csv(const CostSurface& surface);

// Throws ValidationError on header mismatch, non-numeric cells, duplicate
// (point, plan) rows, or an incomplete point x plan matrix.
CostSurface read_surface_csv(const std::string& text);

}  // namespace robmap
