#include "synth/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>

namespace synth::kernels {

const KernelTable& active_kernels() {
  static const KernelTable* chosen = [] {
    const char* env = std::getenv("SYNTH_KERNEL");
    std::string want = env != nullptr ? env : "auto";
    if (want == "scalar") return &scalar_kernels();
    if (want == "avx2") {
      const KernelTable* t = avx2_kernels();
      if (t == nullptr) {
        throw std::runtime_error("SYNTH_KERNEL=avx2 requested but AVX2 is unavailable");
      }
      return t;
    }
    if (want != "auto") {
      throw std::runtime_error("unknown SYNTH_KERNEL value: " + want);
    }
    const KernelTable* t = avx2_kernels();
    return t != nullptr ? t : &scalar_kernels();
  }();
  return *chosen;
}

}
