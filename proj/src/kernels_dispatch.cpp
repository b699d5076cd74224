#include <cstdlib>
#include <cstring>

#include "sand/kernels.hpp"

namespace sand::kernels {

const KernelTable* avx2_table_impl();

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
#else
  return false;
#endif
}

const KernelTable* avx2_table() {
  if (!cpu_has_avx2()) return nullptr;
  return avx2_table_impl();
}

const KernelTable& active() {
  static const KernelTable* selected = [] {
    const char* forced = std::getenv("SAND_ISA");
    if (forced != nullptr && std::strcmp(forced, "scalar") == 0) {
      return &scalar_table();
    }
    const KernelTable* vec = avx2_table();
    return vec != nullptr ? vec : &scalar_table();
  }();
  return *selected;
}

}  // namespace sand::kernels
