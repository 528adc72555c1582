#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "matchlab/kernels.hpp"

namespace matchlab::kernels {

namespace {

Isa detect() {
  if (const char* env = std::getenv("MATCHLAB_ISA")) {
    if (std::string(env) == "scalar") return Isa::scalar;
  }
  return isa_available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  return isa == Isa::avx2 ? "avx2" : "scalar";
}

bool isa_available(Isa isa) {
  if (isa == Isa::scalar) return true;
#if defined(MATCHLAB_HAVE_AVX2)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
#else
  return false;
#endif
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (!isa_available(isa)) {
    throw std::runtime_error("kernel variant not available: " + std::string(isa_name(isa)));
  }
  current().store(isa, std::memory_order_relaxed);
}

std::size_t count_supersets(std::span<const std::uint64_t> masks,
                            std::uint64_t query) {
#if defined(MATCHLAB_HAVE_AVX2)
  if (active_isa() == Isa::avx2) return avx2::count_supersets(masks, query);
#endif
  return scalar::count_supersets(masks, query);
}

std::size_t count_masks(std::span<const std::uint64_t> masks, std::uint64_t must,
                        std::uint64_t avoid) {
#if defined(MATCHLAB_HAVE_AVX2)
  if (active_isa() == Isa::avx2) return avx2::count_masks(masks, must, avoid);
#endif
  return scalar::count_masks(masks, must, avoid);
}

std::size_t filter_masks(std::span<const std::uint64_t> masks,
                         std::uint64_t must, std::uint64_t avoid,
                         std::vector<std::uint32_t>& out) {
#if defined(MATCHLAB_HAVE_AVX2)
  if (active_isa() == Isa::avx2) return avx2::filter_masks(masks, must, avoid, out);
#endif
  return scalar::filter_masks(masks, must, avoid, out);
}

std::size_t and_popcount(std::span<const std::uint64_t> a,
                         std::span<const std::uint64_t> b) {
  if (a.size() != b.size()) throw std::invalid_argument("and_popcount: length mismatch");
#if defined(MATCHLAB_HAVE_AVX2)
  if (active_isa() == Isa::avx2) return avx2::and_popcount(a, b);
#endif
  return scalar::and_popcount(a, b);
}

}  // namespace matchlab::kernels
