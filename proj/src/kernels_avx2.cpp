// Compiled with -mavx2 -mpopcnt; only reached after a runtime CPU check.
#include <immintrin.h>

#include <bit>

#include "matchlab/kernels.hpp"

namespace matchlab::kernels::avx2 {

namespace {

// Per-lane all-ones where (m & must) == must and (m & avoid) == 0.
inline __m256i match_lanes(__m256i m, __m256i must, __m256i avoid) {
  const __m256i zero = _mm256_setzero_si256();
  const __m256i has = _mm256_cmpeq_epi64(_mm256_and_si256(m, must), must);
  const __m256i clear = _mm256_cmpeq_epi64(_mm256_and_si256(m, avoid), zero);
  return _mm256_and_si256(has, clear);
}

inline int lane_mask(__m256i lanes) {
  return _mm256_movemask_pd(_mm256_castsi256_pd(lanes));
}

}  // namespace

std::size_t count_supersets(std::span<const std::uint64_t> masks,
                            std::uint64_t query) {
  const std::size_t n = masks.size();
  const std::uint64_t* p = masks.data();
  const __m256i q = _mm256_set1_epi64x(static_cast<long long>(query));
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i m = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + i));
    // Equal lanes are -1, so subtracting counts them.
    acc = _mm256_sub_epi64(acc, _mm256_cmpeq_epi64(_mm256_and_si256(m, q), q));
  }
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  std::size_t count = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < n; ++i) count += (p[i] & query) == query;
  return count;
}

std::size_t count_masks(std::span<const std::uint64_t> masks, std::uint64_t must,
                        std::uint64_t avoid) {
  const std::size_t n = masks.size();
  const std::uint64_t* p = masks.data();
  const __m256i vmust = _mm256_set1_epi64x(static_cast<long long>(must));
  const __m256i vavoid = _mm256_set1_epi64x(static_cast<long long>(avoid));
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i m = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + i));
    acc = _mm256_sub_epi64(acc, match_lanes(m, vmust, vavoid));
  }
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  std::size_t count = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < n; ++i) count += ((p[i] & must) == must) & ((p[i] & avoid) == 0);
  return count;
}

std::size_t filter_masks(std::span<const std::uint64_t> masks,
                         std::uint64_t must, std::uint64_t avoid,
                         std::vector<std::uint32_t>& out) {
  const std::size_t before = out.size();
  const std::size_t n = masks.size();
  const std::uint64_t* p = masks.data();
  const __m256i vmust = _mm256_set1_epi64x(static_cast<long long>(must));
  const __m256i vavoid = _mm256_set1_epi64x(static_cast<long long>(avoid));
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i m = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + i));
    for (int bits = lane_mask(match_lanes(m, vmust, vavoid)); bits; bits &= bits - 1) {
      out.push_back(static_cast<std::uint32_t>(i + std::countr_zero(static_cast<unsigned>(bits))));
    }
  }
  for (; i < n; ++i) {
    if ((p[i] & must) == must && (p[i] & avoid) == 0) {
      out.push_back(static_cast<std::uint32_t>(i));
    }
  }
  return out.size() - before;
}

std::size_t and_popcount(std::span<const std::uint64_t> a,
                         std::span<const std::uint64_t> b) {
  // No vector popcount in AVX2; the nibble-table method wins only on long
  // rows, so unroll scalar popcnt over the vector AND.
  const std::size_t n = a.size();
  const std::uint64_t* pa = a.data();
  const std::uint64_t* pb = b.data();
  std::size_t t0 = 0, t1 = 0, t2 = 0, t3 = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i x = _mm256_and_si256(
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(pa + i)),
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(pb + i)));
    t0 += _mm_popcnt_u64(static_cast<std::uint64_t>(_mm256_extract_epi64(x, 0)));
    t1 += _mm_popcnt_u64(static_cast<std::uint64_t>(_mm256_extract_epi64(x, 1)));
    t2 += _mm_popcnt_u64(static_cast<std::uint64_t>(_mm256_extract_epi64(x, 2)));
    t3 += _mm_popcnt_u64(static_cast<std::uint64_t>(_mm256_extract_epi64(x, 3)));
  }
  std::size_t total = t0 + t1 + t2 + t3;
  for (; i < n; ++i) total += std::popcount(pa[i] & pb[i]);
  return total;
}

}  // namespace matchlab::kernels::avx2
