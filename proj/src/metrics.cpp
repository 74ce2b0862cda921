#include "streamlb/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace streamlb {

double compute_skew(const std::vector<std::uint64_t>& processed) {
  if (processed.empty()) {
    throw std::invalid_argument("skew needs at least one reducer count");
  }
  const std::uint64_t total =
      std::accumulate(processed.begin(), processed.end(), std::uint64_t{0});
  if (total == 0) {
    throw std::invalid_argument("skew is undefined for an all-zero run");
  }
  const std::uint64_t reducers = processed.size();
  const std::uint64_t ideal = (total + reducers - 1) / reducers;  // ceil(M/R)
  const std::uint64_t worst = *std::max_element(processed.begin(), processed.end());
  if (total <= ideal) return 0.0;
  return static_cast<double>(worst - ideal) / static_cast<double>(total - ideal);
}

}  // namespace streamlb
