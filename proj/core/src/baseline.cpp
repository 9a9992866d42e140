#include "gabdual/baseline.hpp"

#include "gabdual/gabor.hpp"

namespace gabdual {

RealVector truncation_dual_circular(const Window& g, long a, long M, long L, const SupportSpec& s) {
  const GaborParams p(a, M, L);
  const WRSystem wr(periodize(g, L), p);
  return DualSupportedProjector(wr, s).least_norm();
}

Window truncation_dual(const Window& g, long a, long M, long L, const SupportSpec& s) {
  return Window::from_circular(truncation_dual_circular(g, a, M, L, s), L);
}

}  // namespace gabdual
