#pragma once

#include <cstdint>
#include <vector>

namespace streamlb {

// Skew S = (W - U) / (M - U) where M is the total message count, U = ceil(M/R)
// is the per-reducer ideal, and W = max M_i. 0 means perfectly balanced, 1
// means a single reducer processed everything. Degenerate inputs with M <= U
// (only possible when M < R) evaluate to 0. Rejects an all-zero list.
double compute_skew(const std::vector<std::uint64_t>& processed);

}  // namespace streamlb
