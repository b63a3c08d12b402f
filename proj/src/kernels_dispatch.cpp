// Runtime kernel selection: AVX2 when the CPU supports it, scalar otherwise.
// Overridable via LATGAS_KERNELS=scalar|avx2 or kernels::set_kernel().

#include <cstdlib>
#include <stdexcept>

#include "latgas/kernels.hpp"

namespace latgas::kernels {

namespace {

struct Selection {
  ModeStepFn step;
  DotFn dot;
  const char* name;
};

Selection resolve(const std::string& name) {
  if (name == "scalar") return {&mode_step_scalar, &dot_scalar, "scalar"};
  if (name == "avx2") {
    if (!avx2_available()) throw std::runtime_error("kernels: avx2 requested but unavailable");
    return {&mode_step_avx2, &dot_avx2, "avx2"};
  }
  if (name == "auto") {
    if (avx2_available()) return {&mode_step_avx2, &dot_avx2, "avx2"};
    return {&mode_step_scalar, &dot_scalar, "scalar"};
  }
  throw std::invalid_argument("kernels: unknown kernel name '" + name + "'");
}

Selection& current() {
  static Selection sel = [] {
    const char* env = std::getenv("LATGAS_KERNELS");
    return resolve(env ? env : "auto");
  }();
  return sel;
}

}  // namespace

ModeStepFn mode_step() { return current().step; }
DotFn dot() { return current().dot; }
const char* active_name() { return current().name; }
void set_kernel(const std::string& name) { current() = resolve(name); }

}  // namespace latgas::kernels
