#include "ilm/model.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ilm/errors.hpp"

namespace ilm {

double ipow(double x, int n) {
  double result = 1.0;
  while (n > 0) {
    if (n & 1) result *= x;
    x *= x;
    n >>= 1;
  }
  return result;
}

void validate_powers(int p, int q) {
  if (p < 2 || q <= p) {
    throw PreconditionError("powers must satisfy 2 <= p < q, got p=" + std::to_string(p) +
                            " q=" + std::to_string(q));
  }
}

void validate(const ModelParams& params) {
  validate_powers(params.p, params.q);
  if (!std::isfinite(params.eps) || params.eps < 0.0) {
    throw PreconditionError("eps must be finite and nonnegative");
  }
  if (!std::isfinite(params.gamma) || params.gamma <= 0.0) {
    throw PreconditionError("gamma must be positive");
  }
  const double gc = gamma_crit(params.p, params.q);
  if (params.gamma >= gc) {
    throw NoCompetingRoots("gamma=" + std::to_string(params.gamma) +
                           " is not below the critical value " + std::to_string(gc));
  }
}

double f_eval(double u, const ModelParams& params) {
  const double m = std::abs(u);
  return u * (1.0 - ipow(m, params.p - 1) + params.gamma * ipow(m, params.q - 1));
}

double fprime_eval(double u, const ModelParams& params) {
  const double m = std::abs(u);
  return 1.0 - params.p * ipow(m, params.p - 1) + params.gamma * params.q * ipow(m, params.q - 1);
}

double gamma_crit(int p, int q) {
  validate_powers(p, q);
  const double r = static_cast<double>(q - p) / (q - 1);
  return static_cast<double>(p - 1) / (q - 1) * std::pow(r, static_cast<double>(q - p) / (p - 1));
}

double u_double_root(int p, int q) {
  validate_powers(p, q);
  return std::pow(static_cast<double>(q - 1) / (q - p), 1.0 / (p - 1));
}

namespace {

// g(u) = f(u)/u for u > 0; shares the sign of f on the positive axis.
struct Reduced {
  const ModelParams& params;
  double g(double u) const {
    return 1.0 - ipow(u, params.p - 1) + params.gamma * ipow(u, params.q - 1);
  }
  double dg(double u) const {
    return -(params.p - 1) * ipow(u, params.p - 2) +
           params.gamma * (params.q - 1) * ipow(u, params.q - 2);
  }
};

// Newton steps past the residual tolerance, until the correction stops shrinking.
double polish(const Reduced& r, double x) {
  double last = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 8; ++it) {
    const double d = r.dg(x);
    if (d == 0.0) break;
    const double step = r.g(x) / d;
    if (!(std::abs(step) < last)) break;
    last = std::abs(step);
    x -= step;
  }
  return x;
}

double refine_root(const Reduced& r, double lo, double hi) {
  constexpr double kTol = 1e-13;
  constexpr int kMaxIter = 200;
  const double g_lo = r.g(lo);
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < kMaxIter; ++it) {
    const double gx = r.g(x);
    if (std::abs(x * gx) < kTol) return polish(r, x);
    if ((gx > 0.0) == (g_lo > 0.0)) {
      lo = x;
    } else {
      hi = x;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) return x;
    const double d = r.dg(x);
    double next = d != 0.0 ? x - gx / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    x = next;
  }
  throw NoConvergence("root refinement exceeded 200 iterations");
}

}  // namespace

RootPair find_roots(const ModelParams& params) {
  validate(params);
  const Reduced r{params};
  RootPair out;
  out.gamma_crit = gamma_crit(params.p, params.q);
  out.u_pq = u_double_root(params.p, params.q);

  out.a = refine_root(r, 0.0, out.u_pq);

  double upper = 2.0 * out.u_pq;
  while (r.g(upper) <= 0.0) {
    upper *= 2.0;
    if (!std::isfinite(upper)) throw NoConvergence("could not bracket the large root");
  }
  out.A = refine_root(r, out.u_pq, upper);

  out.dfa = fprime_eval(out.a, params);
  out.dfA = fprime_eval(out.A, params);
  if (!(out.dfa < 0.0 && out.dfA > 0.0 && out.a < out.u_pq && out.u_pq < out.A)) {
    throw NoConvergence("root ordering or derivative signs violated");
  }
  return out;
}

NormalizedParams normalize_physical(const PhysicalParams& phys, int p, int q) {
  validate_powers(p, q);
  if (!(phys.C > 0.0 && phys.kappa > 0.0 && phys.Gamma_def > 0.0 && phys.omega > 0.0)) {
    throw PreconditionError("physical parameters must be positive");
  }
  const double ratio = phys.omega / phys.kappa;
  NormalizedParams out;
  out.params.p = p;
  out.params.q = q;
  out.params.eps = phys.C / phys.omega;
  out.params.gamma =
      phys.Gamma_def / phys.omega * std::pow(ratio, static_cast<double>(q - 1) / (p - 1));
  out.amplitude_scale = std::pow(ratio, 1.0 / (p - 1));
  return out;
}

namespace {

template <class T>
Functionals functionals(std::span<const T> u, const ModelParams& params) {
  Functionals out;
  const double cp = 2.0 / (params.p + 1);
  const double cq = 2.0 * params.gamma / (params.q + 1);
  T prev{};
  for (const T& x : u) {
    const double m = std::abs(x);
    out.H += params.eps * std::norm(x - prev) - cp * ipow(m, params.p + 1) +
             cq * ipow(m, params.q + 1);
    out.Q += m * m;
    prev = x;
  }
  if (!u.empty()) out.H += params.eps * std::norm(prev);
  out.Lambda = out.H + out.Q;
  return out;
}

}  // namespace

Functionals energy_mass(std::span<const double> u, const ModelParams& params) {
  return functionals(u, params);
}

Functionals energy_mass(std::span<const std::complex<double>> u, const ModelParams& params) {
  return functionals(u, params);
}

Functionals energy_mass(const LatticeProfile& profile, const ModelParams& params) {
  return functionals(std::span<const double>(profile.values), params);
}

}  // namespace ilm
