#pragma once

// Data-parallel inner loops used by coverage precomputation and the set-cover
// solver. Each kernel has a portable scalar reference and, on x86-64, an AVX2
// variant. The variant is chosen once at runtime from CPUID; SAND_ISA=scalar
// in the environment forces the reference path.
//
// All variants are required to produce bit-identical results. The range test
// uses only IEEE add/sub/mul/compare (no FMA) so the vector and scalar paths
// round identically.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace sand::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa);

struct KernelTable {
  Isa isa;

  // out[i] = 1 if (xs[i]-cx)^2 + (ys[i]-cy)^2 <= r2 else 0.
  void (*range_mask)(const double* xs, const double* ys, std::size_t n,
                     double cx, double cy, double r2, std::uint8_t* out);

  // popcount(a & b) over n words.
  std::uint64_t (*and_count)(const std::uint64_t* a, const std::uint64_t* b,
                             std::size_t n);

  // popcount(a & ~b) over n words.
  std::uint64_t (*andnot_count)(const std::uint64_t* a,
                                const std::uint64_t* b, std::size_t n);

  // dst |= src over n words.
  void (*or_into)(std::uint64_t* dst, const std::uint64_t* src, std::size_t n);

  // True iff a & ~b == 0, i.e. a is a subset of b.
  bool (*is_subset)(const std::uint64_t* a, const std::uint64_t* b,
                    std::size_t n);
};

const KernelTable& scalar_table();

// nullptr when the binary or CPU lacks AVX2.
const KernelTable* avx2_table();

bool cpu_has_avx2();

// Table selected for this process.
const KernelTable& active();

}  // namespace sand::kernels
