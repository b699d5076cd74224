#include "sand/kernels.hpp"

#include <bit>

namespace sand::kernels {
namespace {

void range_mask(const double* xs, const double* ys, std::size_t n, double cx,
                double cy, double r2, std::uint8_t* out) {
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - cx;
    const double dy = ys[i] - cy;
    const double dx2 = dx * dx;
    const double dy2 = dy * dy;
    out[i] = (dx2 + dy2 <= r2) ? 1 : 0;
  }
}

std::uint64_t and_count(const std::uint64_t* a, const std::uint64_t* b,
                        std::size_t n) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < n; ++i) total += std::popcount(a[i] & b[i]);
  return total;
}

std::uint64_t andnot_count(const std::uint64_t* a, const std::uint64_t* b,
                           std::size_t n) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < n; ++i) total += std::popcount(a[i] & ~b[i]);
  return total;
}

void or_into(std::uint64_t* dst, const std::uint64_t* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] |= src[i];
}

bool is_subset(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if ((a[i] & ~b[i]) != 0) return false;
  }
  return true;
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{Isa::Scalar, range_mask, and_count,
                                 andnot_count, or_into,   is_subset};
  return table;
}

}  // namespace sand::kernels
