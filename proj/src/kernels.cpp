#include "bms/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace bms::kern {

const Ops* avx2_table();  // defined in kernels_avx2.cpp

bool avx2_supported() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const Ops* avx2() {
  return avx2_supported() ? avx2_table() : nullptr;
}

namespace {
const Ops& select() {
  if (const char* env = std::getenv("BMS_KERNELS")) {
    if (std::strcmp(env, "scalar") == 0) return scalar();
    if (std::strcmp(env, "avx2") == 0 && avx2()) return *avx2();
  }
  if (const Ops* v = avx2()) return *v;
  return scalar();
}
}  // namespace

const Ops& active() {
  static const Ops& chosen = select();
  return chosen;
}

}  // namespace bms::kern
