#pragma once

#include "gabdual/constraint.hpp"
#include "gabdual/signal.hpp"

namespace gabdual {

/// Truncation method: the least-norm solution of the WR system with the
/// columns outside the support deleted. Throws InfeasibleConstraint when no
/// dual with that support exists.
RealVector truncation_dual_circular(const Window& g, long a, long M, long L, const SupportSpec& s);

Window truncation_dual(const Window& g, long a, long M, long L, const SupportSpec& s);

}  // namespace gabdual
