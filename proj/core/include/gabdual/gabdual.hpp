#pragma once

#include "gabdual/baseline.hpp"
#include "gabdual/constraint.hpp"
#include "gabdual/functionals.hpp"
#include "gabdual/gabor.hpp"
#include "gabdual/linalg.hpp"
#include "gabdual/metrics.hpp"
#include "gabdual/prox.hpp"
#include "gabdual/signal.hpp"
#include "gabdual/solver.hpp"
#include "gabdual/types.hpp"
