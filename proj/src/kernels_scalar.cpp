#include <bit>

#include "matchlab/kernels.hpp"

namespace matchlab::kernels::scalar {

std::size_t count_supersets(std::span<const std::uint64_t> masks,
                            std::uint64_t query) {
  std::size_t count = 0;
  for (std::uint64_t m : masks) count += (m & query) == query;
  return count;
}

std::size_t count_masks(std::span<const std::uint64_t> masks, std::uint64_t must,
                        std::uint64_t avoid) {
  std::size_t count = 0;
  for (std::uint64_t m : masks) count += ((m & must) == must) & ((m & avoid) == 0);
  return count;
}

std::size_t filter_masks(std::span<const std::uint64_t> masks,
                         std::uint64_t must, std::uint64_t avoid,
                         std::vector<std::uint32_t>& out) {
  const std::size_t before = out.size();
  for (std::size_t i = 0; i < masks.size(); ++i) {
    const std::uint64_t m = masks[i];
    if ((m & must) == must && (m & avoid) == 0) {
      out.push_back(static_cast<std::uint32_t>(i));
    }
  }
  return out.size() - before;
}

std::size_t and_popcount(std::span<const std::uint64_t> a,
                         std::span<const std::uint64_t> b) {
  std::size_t total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) total += std::popcount(a[i] & b[i]);
  return total;
}

}  // namespace matchlab::kernels::scalar
