#include "gabdual/prox.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gabdual/functionals.hpp"
#include "gabdual/signal.hpp"

namespace gabdual {
namespace {

double soft(double v, double t) {
  const double mag = std::abs(v) - t;
  return mag > 0.0 ? std::copysign(mag, v) : 0.0;
}

Complex soft(Complex v, double t) {
  const double mag = std::abs(v);
  return mag > t ? v * (1.0 - t / mag) : Complex(0.0, 0.0);
}

template <typename Vec>
Vec scale_by(const Vec& y, const RealVector& multiplier) {
  Vec out = y;
  for (long i = 0; i < y.size(); ++i) out[i] *= multiplier[i];
  return out;
}

RealVector quadratic_multiplier(const RealVector& weight, double gamma) {
  return (1.0 + 2.0 * gamma * weight.array()).inverse().matrix();
}

}  // namespace

RealVector prox_l1(const RealVector& y, double mu) {
  if (mu < 0.0) throw InvalidArgument("prox_l1: threshold must be nonnegative");
  RealVector out(y.size());
  for (long i = 0; i < y.size(); ++i) out[i] = soft(y[i], mu);
  return out;
}

ComplexVector prox_l1(const ComplexVector& y, double mu) {
  if (mu < 0.0) throw InvalidArgument("prox_l1: threshold must be nonnegative");
  ComplexVector out(y.size());
  for (long i = 0; i < y.size(); ++i) out[i] = soft(y[i], mu);
  return out;
}

RealVector prox_weighted_l1(const RealVector& y, const RealVector& thresholds) {
  if (thresholds.size() != y.size()) throw InvalidArgument("prox_weighted_l1: size mismatch");
  RealVector out(y.size());
  for (long i = 0; i < y.size(); ++i) out[i] = soft(y[i], thresholds[i]);
  return out;
}

ComplexVector prox_weighted_l1(const ComplexVector& y, const RealVector& thresholds) {
  if (thresholds.size() != y.size()) throw InvalidArgument("prox_weighted_l1: size mismatch");
  ComplexVector out(y.size());
  for (long i = 0; i < y.size(); ++i) out[i] = soft(y[i], thresholds[i]);
  return out;
}

RealVector prox_var_time(const RealVector& y, double gamma) {
  return prox_weighted_l1(y, gamma * functional::variance_weight(y.size()));
}

RealVector prox_envar_time(const RealVector& y, double gamma) {
  return scale_by(y, quadratic_multiplier(functional::energy_weight(y.size()), gamma));
}

RealVector prox_gradF(const RealVector& y, double gamma) {
  return scale_by(y, quadratic_multiplier(functional::gradient_symbol(y.size()), gamma));
}

RealProx conjugate_by_dft(ComplexProx prox) {
  return [prox = std::move(prox)](const RealVector& y, double gamma) -> RealVector {
    return idft(prox(dft(y), gamma)).real();
  };
}

// ---------------------------------------------------------------------------

S0ProxResult prox_s0(const RealVector& y, double gamma, const FullStft& stft, const RealMatrix* weight,
                     const AdmmConfig& cfg, AdmmState* state) {
  const long L = stft.length();
  if (y.size() != L) throw InvalidArgument("prox_s0: signal length does not match the STFT");
  if (gamma < 0.0) throw InvalidArgument("prox_s0: gamma must be nonnegative");
  if (weight != nullptr && (weight->rows() != L || weight->cols() != L)) {
    throw InvalidArgument("prox_s0: TF weight must be L x L");
  }
  S0ProxResult result;
  if (gamma == 0.0) {
    result.x = y;
    result.converged = true;
    return result;
  }

  // G* G = c Id for the full STFT. All matrices below hold the half spectrum
  // (rows 0..L/2); norms count every row with its multiplicity.
  const double c = static_cast<double>(L) * stft.window().squaredNorm();
  const long H = stft.half_rows();
  RealVector mult(H);
  for (long m = 0; m < H; ++m) mult[m] = stft.row_multiplicity(m);

  AdmmState local;
  AdmmState& s = state != nullptr ? *state : local;
  if (s.empty() || s.z.rows() != H || s.z.cols() != L) {
    stft.forward_half(y, s.z);
    s.synth_z = c * y;
    s.u = ComplexMatrix::Zero(H, L);
    s.synth_u = RealVector::Zero(L);
    s.rho = cfg.rho > 0.0 ? cfg.rho : 1.0 / c;
  }

  // Residuals are relative; the floors keep them meaningful when the
  // solution (and with it G x and z) shrinks to zero.
  const double y_norm = y.norm();
  const double primal_floor = std::max(1e-4 * std::sqrt(c) * y_norm, std::numeric_limits<double>::min());
  const double dual_floor = std::max(1e-4 * y_norm, std::numeric_limits<double>::min());

  ComplexMatrix gx(H, L);
  RealVector synth_z_new(L);
  RealVector x = y;
  for (int it = 0; it < cfg.max_iter; ++it) {
    const double rho = s.rho;
    x = (y + rho * (s.synth_z - s.synth_u)) / (1.0 + rho * c);
    stft.forward_half(x, gx);

    // z <- soft(G x + u), u <- G x + u - z, fused with the residual sums.
    const double base = gamma / rho;
    double primal2 = 0.0, gx2 = 0.0, z2 = 0.0;
    for (long n = 0; n < L; ++n) {
      for (long m = 0; m < H; ++m) {
        const Complex g_mn = gx(m, n);
        const Complex v = s.u(m, n) + g_mn;
        const double t = weight != nullptr ? base * (*weight)(m, n) : base;
        const double mag = std::sqrt(v.real() * v.real() + v.imag() * v.imag());
        const Complex z = mag > t ? v * (1.0 - t / mag) : Complex(0.0, 0.0);
        s.z(m, n) = z;
        s.u(m, n) = v - z;
        primal2 += mult[m] * std::norm(g_mn - z);
        gx2 += mult[m] * std::norm(g_mn);
        z2 += mult[m] * std::norm(z);
      }
    }

    stft.adjoint_half(s.z, synth_z_new);
    s.synth_u += c * x - synth_z_new;

    const double primal = std::sqrt(primal2);
    const double dual = rho * (synth_z_new - s.synth_z).norm();
    result.primal_residual = primal / std::max({std::sqrt(gx2), std::sqrt(z2), primal_floor});
    result.dual_residual = dual / std::max(rho * s.synth_u.norm(), dual_floor);
    s.synth_z.swap(synth_z_new);
    result.iterations = it + 1;

    if (result.primal_residual <= cfg.tol && result.dual_residual <= cfg.tol) {
      result.converged = true;
      break;
    }
    if (cfg.adapt_rho) {
      if (primal > 10.0 * dual) {
        s.rho *= 2.0;
        s.u *= 0.5;
        s.synth_u *= 0.5;
      } else if (dual > 10.0 * primal) {
        s.rho *= 0.5;
        s.u *= 2.0;
        s.synth_u *= 2.0;
      }
    }
  }
  result.x = std::move(x);
  return result;
}

S0ProxResult prox_s0(const RealVector& y, double gamma, const RealVector& gauss, const RealMatrix* weight,
                     const AdmmConfig& cfg, AdmmState* state) {
  if (std::abs(gauss.norm() - 1.0) > 1e-10) throw InvalidArgument("prox_s0: gauge window must have unit l2 norm");
  return prox_s0(y, gamma, FullStft(gauss), weight, cfg, state);
}

// ---------------------------------------------------------------------------

PriorKind parse_prior_kind(std::string_view name) {
  if (name == "l1") return PriorKind::l1;
  if (name == "weighted_l1_var" || name == "var") return PriorKind::weighted_l1_var;
  if (name == "weighted_l2_envar" || name == "envar") return PriorKind::weighted_l2_envar;
  if (name == "grad") return PriorKind::grad;
  if (name == "s0") return PriorKind::s0;
  if (name == "s0_weighted" || name == "s0w") return PriorKind::s0_weighted;
  if (name == "l2") return PriorKind::l2;
  throw InvalidArgument("unknown prior kind '" + std::string(name) + "'");
}

std::string_view to_string(PriorKind kind) {
  switch (kind) {
    case PriorKind::l1: return "l1";
    case PriorKind::weighted_l1_var: return "weighted_l1_var";
    case PriorKind::weighted_l2_envar: return "weighted_l2_envar";
    case PriorKind::grad: return "grad";
    case PriorKind::s0: return "s0";
    case PriorKind::s0_weighted: return "s0_weighted";
    case PriorKind::l2: return "l2";
  }
  return "unknown";
}

Domain parse_domain(std::string_view name) {
  if (name == "time") return Domain::time;
  if (name == "frequency" || name == "freq") return Domain::frequency;
  throw InvalidArgument("unknown domain '" + std::string(name) + "'");
}

std::string_view to_string(Domain domain) {
  return domain == Domain::time ? "time" : "frequency";
}

struct Prior::Aux {
  long L = 0;
  RealVector variance_weight;
  RealVector energy_weight;
  RealVector gradient_symbol;
  std::unique_ptr<FullStft> stft;
  RealMatrix tf_weight;
};

Prior::Prior(PriorKind kind, Domain domain, double lambda) : kind_(kind), domain_(domain), lambda_(lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw InvalidArgument("Prior: lambda must be a nonnegative number");
  if (kind == PriorKind::s0 || kind == PriorKind::s0_weighted) domain_ = Domain::time;
}

std::string Prior::name() const {
  std::string n(to_string(kind_));
  if (kind_ != PriorKind::s0 && kind_ != PriorKind::s0_weighted) {
    n += ":";
    n += to_string(domain_);
  }
  return n;
}

void Prior::reset() { state_ = AdmmState{}; }

const Prior::Aux& Prior::aux(long L) const {
  if (aux_ && aux_->L == L) return *aux_;
  auto a = std::make_shared<Aux>();
  a->L = L;
  switch (kind_) {
    case PriorKind::weighted_l1_var: a->variance_weight = functional::variance_weight(L); break;
    case PriorKind::weighted_l2_envar: a->energy_weight = functional::energy_weight(L); break;
    case PriorKind::grad: a->gradient_symbol = functional::gradient_symbol(L); break;
    case PriorKind::s0_weighted:
      a->tf_weight = functional::s0_weight(L);
      [[fallthrough]];
    case PriorKind::s0: a->stft = std::make_unique<FullStft>(gauss_gauge(L)); break;
    default: break;
  }
  aux_ = std::move(a);
  return *aux_;
}

double Prior::evaluate(const RealVector& x) const {
  const Aux& a = aux(x.size());
  const bool freq = domain_ == Domain::frequency;
  double value = 0.0;
  switch (kind_) {
    case PriorKind::l1: value = freq ? functional::l1(dft(x)) : functional::l1(x); break;
    case PriorKind::weighted_l1_var:
      value = freq ? functional::variance(dft(x)) : functional::variance(x);
      break;
    case PriorKind::weighted_l2_envar:
      value = freq ? functional::energy_variance(dft(x)) : functional::energy_variance(x);
      break;
    case PriorKind::grad:
      value = freq ? functional::gradient_squared(dft(x)) : functional::gradient_squared(x);
      break;
    case PriorKind::s0: value = functional::s0(*a.stft, x); break;
    case PriorKind::s0_weighted: value = functional::s0(*a.stft, x, &a.tf_weight); break;
    case PriorKind::l2: value = x.squaredNorm(); break;
  }
  return lambda_ * value;
}

RealVector Prior::prox(const RealVector& y, double gamma) {
  const Aux& a = aux(y.size());
  const double g = gamma * lambda_;
  const bool freq = domain_ == Domain::frequency;
  switch (kind_) {
    case PriorKind::l1:
      if (!freq) return prox_l1(y, g);
      return idft(prox_l1(dft(y), g)).real();
    case PriorKind::weighted_l1_var: {
      const RealVector t = g * a.variance_weight;
      if (!freq) return prox_weighted_l1(y, t);
      return idft(prox_weighted_l1(dft(y), t)).real();
    }
    case PriorKind::weighted_l2_envar: {
      const RealVector mult = quadratic_multiplier(a.energy_weight, g);
      if (!freq) return scale_by(y, mult);
      return idft(scale_by(dft(y), mult)).real();
    }
    case PriorKind::grad: {
      // ||grad x||^2 is diagonal in frequency, ||grad F x||^2 in time.
      const RealVector mult = quadratic_multiplier(a.gradient_symbol, g);
      if (freq) return scale_by(y, mult);
      return idft(scale_by(dft(y), mult)).real();
    }
    case PriorKind::s0:
      return prox_s0(y, g, *a.stft, nullptr, admm_, &state_).x;
    case PriorKind::s0_weighted:
      return prox_s0(y, g, *a.stft, &a.tf_weight, admm_, &state_).x;
    case PriorKind::l2:
      return y / (1.0 + 2.0 * g);
  }
  return y;
}

}  // namespace gabdual
