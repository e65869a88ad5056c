#include <cstdlib>
#include <string_view>

#include "geoequiv/kernels.hpp"

namespace geoequiv::kernels {

#if defined(GEOEQUIV_HAVE_AVX2)
const KernelTable& avx2_table();
#endif
#if defined(GEOEQUIV_HAVE_NEON)
const KernelTable& neon_table();
#endif

namespace {

bool cpu_has_avx2() {
#if defined(GEOEQUIV_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable& select() {
  const char* forced = std::getenv("GEOEQUIV_KERNELS");
  const std::string_view want = forced ? forced : "";
  for (const KernelTable* t : available()) {
    if (!want.empty() && t->name == want) return *t;
  }
  if (want == "scalar") return scalar_table();
  // available() lists the widest variant last.
  return *available().back();
}

}  // namespace

std::vector<const KernelTable*> available() {
  std::vector<const KernelTable*> out{&scalar_table()};
#if defined(GEOEQUIV_HAVE_AVX2)
  if (cpu_has_avx2()) out.push_back(&avx2_table());
#endif
#if defined(GEOEQUIV_HAVE_NEON)
  out.push_back(&neon_table());
#endif
  return out;
}

const KernelTable& active() {
  static const KernelTable& table = select();
  return table;
}

}  // namespace geoequiv::kernels
