#pragma once

// Data-parallel inner loops over packed 64-bit masks.
//
// Every kernel has a scalar reference implementation and, on x86-64, an AVX2
// implementation. The public entry points dispatch once, at first use, to
// the best variant the running CPU supports. MATCHLAB_ISA=scalar in the
// environment pins the scalar path.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace matchlab::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);
/// True when the variant was compiled in and the CPU supports it.
bool isa_available(Isa isa);
/// Variant the dispatching entry points currently use.
Isa active_isa();
/// Overrides dispatch (tests, benchmarks). Throws if unavailable.
void set_active_isa(Isa isa);

/// Number of masks m with (m & query) == query.
std::size_t count_supersets(std::span<const std::uint64_t> masks,
                            std::uint64_t query);

/// Number of masks m with (m & must) == must and (m & avoid) == 0.
std::size_t count_masks(std::span<const std::uint64_t> masks, std::uint64_t must,
                        std::uint64_t avoid);

/// Appends to `out` the indices i with (masks[i] & must) == must and
/// (masks[i] & avoid) == 0, in increasing order. Returns the number appended.
std::size_t filter_masks(std::span<const std::uint64_t> masks,
                         std::uint64_t must, std::uint64_t avoid,
                         std::vector<std::uint32_t>& out);

/// Sum over i of popcount(a[i] & b[i]). Spans must have equal length.
std::size_t and_popcount(std::span<const std::uint64_t> a,
                         std::span<const std::uint64_t> b);

namespace scalar {
std::size_t count_supersets(std::span<const std::uint64_t> masks,
                            std::uint64_t query);
std::size_t count_masks(std::span<const std::uint64_t> masks, std::uint64_t must,
                        std::uint64_t avoid);
std::size_t filter_masks(std::span<const std::uint64_t> masks,
                         std::uint64_t must, std::uint64_t avoid,
                         std::vector<std::uint32_t>& out);
std::size_t and_popcount(std::span<const std::uint64_t> a,
                         std::span<const std::uint64_t> b);
}  // namespace scalar

#if defined(MATCHLAB_HAVE_AVX2)
namespace avx2 {
std::size_t count_supersets(std::span<const std::uint64_t> masks,
                            std::uint64_t query);
std::size_t count_masks(std::span<const std::uint64_t> masks, std::uint64_t must,
                        std::uint64_t avoid);
std::size_t filter_masks(std::span<const std::uint64_t> masks,
                         std::uint64_t must, std::uint64_t avoid,
                         std::vector<std::uint32_t>& out);
std::size_t and_popcount(std::span<const std::uint64_t> a,
                         std::span<const std::uint64_t> b);
}  // namespace avx2
#endif

}  // namespace matchlab::kernels
