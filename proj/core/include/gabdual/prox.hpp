#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>

#include "gabdual/gabor.hpp"
#include "gabdual/types.hpp"

namespace gabdual {

// ---------------------------------------------------------------------------
// Elementwise proximity operators. "gamma" is the full step multiplying the
// functional: prox_{gamma f}(y) = argmin_x 1/2 ||y - x||^2 + gamma f(x).

/// sgn(y) max(|y| - mu, 0)
RealVector prox_l1(const RealVector& y, double mu);
/// Complex soft threshold y max(1 - mu / |y|, 0).
ComplexVector prox_l1(const ComplexVector& y, double mu);

/// Soft threshold with a per-entry threshold.
RealVector prox_weighted_l1(const RealVector& y, const RealVector& thresholds);
ComplexVector prox_weighted_l1(const ComplexVector& y, const RealVector& thresholds);

/// prox of gamma var(|x|): weighted soft threshold with gamma l^2 / sqrt(L).
RealVector prox_var_time(const RealVector& y, double gamma);
/// prox of gamma var(x^2) = gamma ||w x||^2: y / (1 + 2 gamma w^2).
RealVector prox_envar_time(const RealVector& y, double gamma);
/// prox of gamma ||grad F x||^2: y / (1 + 2 gamma psi).
RealVector prox_gradF(const RealVector& y, double gamma);

using RealProx = std::function<RealVector(const RealVector&, double)>;
using ComplexProx = std::function<ComplexVector(const ComplexVector&, double)>;

/// prox of f o F for the unitary DFT F: y -> F^{-1} prox_f(F y).
///
/// Real inputs map to real outputs whenever prox_f preserves Hermitian
/// symmetry (true for every weight here, all weights being even in k); the
/// imaginary round-off is discarded.
RealProx conjugate_by_dft(ComplexProx prox);

// ---------------------------------------------------------------------------
// S0 norm ||W o G_{g,1,L} x||_1 via ADMM.

struct AdmmConfig {
  /// Relative primal and dual residual threshold.
  double tol = 1e-8;
  int max_iter = 50;
  /// Penalty; 0 selects 1 / (L ||g||^2), balancing y and G* z in the x-update.
  double rho = 0.0;
  /// Residual balancing (rho doubled/halved when one residual dominates by 10x).
  bool adapt_rho = true;
};

/// Scaled ADMM variables carried between calls for warm starts.
struct AdmmState {
  ComplexMatrix z;  // split variable, z ~ G x (half spectrum, rows 0..L/2)
  ComplexMatrix u;  // scaled multiplier (half spectrum)
  RealVector synth_z;  // Re G* z
  RealVector synth_u;  // Re G* u
  double rho = 0.0;
  [[nodiscard]] bool empty() const { return z.size() == 0; }
};

struct S0ProxResult {
  RealVector x;
  double primal_residual = 0.0;  // ||G x - z|| / max(||G x||, ||z||)
  double dual_residual = 0.0;    // rho ||G* (z - z_old)|| / ||rho G* u||
  int iterations = 0;
  bool converged = false;
};

/// Approximates argmin_x 1/2 ||y - x||^2 + gamma ||W o G x||_1.
///
/// The x-update is closed form because G* G = L Id for the unit-norm gauge
/// window; the z-update is a (weighted) complex soft threshold. `weight` may be
/// null for the unweighted norm. When `state` is given, ADMM starts from it and
/// leaves the final iterates there.
S0ProxResult prox_s0(const RealVector& y, double gamma, const FullStft& stft, const RealMatrix* weight,
                     const AdmmConfig& cfg, AdmmState* state = nullptr);

/// Convenience overload building the STFT from the gauge window; throws
/// InvalidArgument when gauss is not unit norm.
S0ProxResult prox_s0(const RealVector& y, double gamma, const RealVector& gauss, const RealMatrix* weight,
                     const AdmmConfig& cfg, AdmmState* state = nullptr);

// ---------------------------------------------------------------------------

enum class PriorKind { l1, weighted_l1_var, weighted_l2_envar, grad, s0, s0_weighted, l2 };
enum class Domain { time, frequency };

PriorKind parse_prior_kind(std::string_view name);
std::string_view to_string(PriorKind kind);
Domain parse_domain(std::string_view name);
std::string_view to_string(Domain domain);

/// A weighted convex prior lambda f(x) (time domain) or lambda f(F x)
/// (frequency domain) with its proximity operator.
///
///   l1                 ||x||_1
///   weighted_l1_var    var(|x|)
///   weighted_l2_envar  var(|x|^2)
///   grad               ||grad x||^2   (frequency: ||grad F x||^2)
///   s0, s0_weighted    ||G x||_1, ||W o G x||_1   (joint, domain ignored)
///   l2                 ||x||^2
///
/// Auxiliary data (weights, gauge STFT) is built lazily for the signal length
/// of the first call and cached. S0 priors also keep their ADMM iterates
/// between prox calls, so an instance must not be shared between threads.
class Prior {
 public:
  Prior(PriorKind kind, Domain domain, double lambda);

  [[nodiscard]] PriorKind kind() const { return kind_; }
  [[nodiscard]] Domain domain() const { return domain_; }
  [[nodiscard]] double lambda() const { return lambda_; }
  [[nodiscard]] std::string name() const;

  /// lambda * f(x)
  [[nodiscard]] double evaluate(const RealVector& x) const;

  /// prox_{gamma lambda f}(y)
  RealVector prox(const RealVector& y, double gamma);

  void set_admm(const AdmmConfig& cfg) { admm_ = cfg; }
  [[nodiscard]] const AdmmConfig& admm() const { return admm_; }
  /// Drops ADMM warm-start state.
  void reset();

 private:
  struct Aux;
  [[nodiscard]] const Aux& aux(long L) const;

  PriorKind kind_;
  Domain domain_;
  double lambda_;
  AdmmConfig admm_;
  AdmmState state_;
  mutable std::shared_ptr<const Aux> aux_;
};

}  // namespace gabdual
