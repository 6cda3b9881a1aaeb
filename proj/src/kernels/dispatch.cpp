#include <cstdlib>
#include <string>

#include "qdsim/kernels.hpp"

namespace qdsim::kernels {

#if defined(QDSIM_HAVE_AVX2)
const Kernels& avx2_kernels();
#endif
#if defined(QDSIM_HAVE_AVX512)
const Kernels& avx512_kernels();
#endif

namespace {

// __builtin_cpu_supports needs literal arguments, hence one probe per set.
bool cpu_has_avx2() {
#if defined(__GNUC__) && (defined(__x86_64__) || defined(__i386__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

bool cpu_has_avx512() {
#if defined(__GNUC__) && (defined(__x86_64__) || defined(__i386__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx512f") && __builtin_cpu_supports("avx512dq");
#else
  return false;
#endif
}

const Kernels* find_by_name(std::string_view name) {
  if (name == "scalar") return &scalar_kernels();
#if defined(QDSIM_HAVE_AVX2)
  if (name == "avx2" && cpu_has_avx2()) return &avx2_kernels();
#endif
#if defined(QDSIM_HAVE_AVX512)
  if (name == "avx512" && cpu_has_avx512()) return &avx512_kernels();
#endif
  return nullptr;
}

const Kernels* widest_supported() {
#if defined(QDSIM_HAVE_AVX512)
  if (const Kernels* k = find_by_name("avx512")) return k;
#endif
#if defined(QDSIM_HAVE_AVX2)
  if (const Kernels* k = find_by_name("avx2")) return k;
#endif
  return &scalar_kernels();
}

const Kernels* initial_choice() {
  if (const char* env = std::getenv("QDSIM_KERNELS")) {
    if (const Kernels* k = find_by_name(env)) return k;
    // Unknown/unsupported request in the environment: fall through to auto
    // rather than abort; select_kernels() reports failures explicitly.
  }
  return widest_supported();
}

const Kernels*& active_slot() {
  static const Kernels* active = initial_choice();
  return active;
}

}  // namespace

const Kernels& active_kernels() { return *active_slot(); }

std::vector<std::string> available_kernels() {
  std::vector<std::string> names{"scalar"};
#if defined(QDSIM_HAVE_AVX2)
  if (find_by_name("avx2")) names.emplace_back("avx2");
#endif
#if defined(QDSIM_HAVE_AVX512)
  if (find_by_name("avx512")) names.emplace_back("avx512");
#endif
  return names;
}

bool select_kernels(std::string_view name) {
  if (name == "auto") {
    active_slot() = widest_supported();
    return true;
  }
  if (const Kernels* k = find_by_name(name)) {
    active_slot() = k;
    return true;
  }
  return false;
}

}  // namespace qdsim::kernels
