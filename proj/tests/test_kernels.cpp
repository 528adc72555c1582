#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "matchlab/kernels.hpp"
#include "matchlab/rng.hpp"

using namespace matchlab;
using namespace matchlab::kernels;

namespace {

std::vector<std::uint64_t> random_masks(std::size_t count, Rng& rng, int density_shift) {
  std::vector<std::uint64_t> out(count);
  for (auto& m : out) {
    m = rng();
    for (int i = 0; i < density_shift; ++i) m &= rng();
  }
  return out;
}

}  // namespace

TEST_CASE("scalar kernels on hand examples") {
  const std::vector<std::uint64_t> masks = {0b0111, 0b0101, 0b1100, 0b0001, 0b1111};
  CHECK(scalar::count_supersets(masks, 0b0101) == 3);
  CHECK(scalar::count_supersets(masks, 0) == 5);
  CHECK(scalar::count_masks(masks, 0b0001, 0b1000) == 3);
  std::vector<std::uint32_t> idx;
  CHECK(scalar::filter_masks(masks, 0b0100, 0b0010, idx) == 2);
  CHECK(idx == std::vector<std::uint32_t>{1, 2});
  const std::vector<std::uint64_t> a = {~0ULL, 0b1010};
  const std::vector<std::uint64_t> b = {0xFFULL, 0b0110};
  CHECK(scalar::and_popcount(a, b) == 9);
}

TEST_CASE("dispatch reports a usable variant") {
  CHECK(isa_available(Isa::scalar));
  CHECK(isa_available(active_isa()));
  CHECK(isa_name(Isa::scalar) == "scalar");
}

#if defined(MATCHLAB_HAVE_AVX2)
TEST_CASE("avx2 variants equal the scalar reference") {
  if (!isa_available(Isa::avx2)) return;
  Rng rng(2024);
  // Lengths straddle the 4-lane width so the tails get exercised.
  for (std::size_t len : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 63u, 64u, 65u, 1000u}) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto masks = random_masks(len, rng, trial % 3);
      const std::uint64_t must = rng() & rng() & rng();
      const std::uint64_t avoid = rng() & rng() & rng() & ~must;
      CHECK(avx2::count_supersets(masks, must) == scalar::count_supersets(masks, must));
      CHECK(avx2::count_supersets(masks, masks.empty() ? 0 : masks[0]) ==
            scalar::count_supersets(masks, masks.empty() ? 0 : masks[0]));
      CHECK(avx2::count_masks(masks, must, avoid) == scalar::count_masks(masks, must, avoid));
      std::vector<std::uint32_t> x = {99}, y = {99};
      CHECK(avx2::filter_masks(masks, must, avoid, x) == scalar::filter_masks(masks, must, avoid, y));
      CHECK(x == y);
      const auto other = random_masks(len, rng, 0);
      CHECK(avx2::and_popcount(masks, other) == scalar::and_popcount(masks, other));
    }
  }
}

TEST_CASE("forcing the active variant changes dispatch only") {
  if (!isa_available(Isa::avx2)) return;
  Rng rng(7);
  const auto masks = random_masks(257, rng, 1);
  set_active_isa(Isa::scalar);
  const auto s = count_masks(masks, 1, 2);
  set_active_isa(Isa::avx2);
  CHECK(active_isa() == Isa::avx2);
  CHECK(count_masks(masks, 1, 2) == s);
}
#endif

TEST_CASE("and_popcount rejects ragged input") {
  const std::vector<std::uint64_t> a = {1, 2}, b = {1};
  CHECK_THROWS(and_popcount(a, b));
}
