#include "ilm/continuation.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "ilm/errors.hpp"
#include "ilm/solver.hpp"

namespace ilm {

namespace {

using Vec = Eigen::VectorXd;

double hermite(double tau, double h, double e0, double d0, double e1, double d1) {
  const double t2 = tau * tau;
  const double t3 = t2 * tau;
  return (2 * t3 - 3 * t2 + 1) * e0 + (t3 - 2 * t2 + tau) * h * d0 + (-2 * t3 + 3 * t2) * e1 +
         (t3 - t2) * h * d1;
}

double sym_defect(const std::vector<double>& u, int s) {
  const std::size_t m = u.size();
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double d = u[i] - s * u[m - 1 - i];
    num += d * d;
    den += u[i] * u[i];
  }
  return den > 0.0 ? std::sqrt(num / den) : 0.0;
}

// Symmetry of the profile linearly interpolated at fraction theta between two points.
int turning_symmetry(const BranchPoint& a, const BranchPoint& b, double theta) {
  const auto& ua = a.profile.values;
  const auto& ub = b.profile.values;
  if (ua.empty() || ua.size() != ub.size()) return 0;
  std::vector<double> u(ua.size());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = (1 - theta) * ua[i] + theta * ub[i];
  return profile_symmetry(u, 1e-3);
}

std::string symmetry_name(int s) { return s > 0 ? "R" : "-R"; }

Code apply_symmetry(const Code& c, int s) {
  return s > 0 ? c.reversed() : c.reversed().negated();
}

struct Corrector {
  const ModelParams& base;
  int m;

  Eigen::MatrixXd bordered(const Vec& x, const Vec& t) const {
    ModelParams prm = base;
    prm.eps = x(m);
    std::vector<double> u(x.data(), x.data() + m);
    const SymTridiag lp = jacobian(std::span<const double>(u), prm);
    const std::vector<double> lap = laplacian(u);
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(m + 1, m + 1);
    for (int i = 0; i < m; ++i) {
      j(i, i) = -lp.diag[i];
      if (i + 1 < m) j(i, i + 1) = j(i + 1, i) = -lp.off[i];
      j(i, m) = lap[i];
    }
    j.row(m) = t.transpose();
    return j;
  }

  Vec residual_of(const Vec& x) const {
    ModelParams prm = base;
    prm.eps = x(m);
    std::vector<double> u(x.data(), x.data() + m);
    const std::vector<double> r = residual(std::span<const double>(u), prm);
    return Eigen::Map<const Vec>(r.data(), m);
  }

  Vec tangent(const Vec& x, const Vec& t_prev) const {
    Vec rhs = Vec::Zero(m + 1);
    rhs(m) = 1.0;
    Vec t = bordered(x, t_prev).partialPivLu().solve(rhs);
    t.normalize();
    if (t.dot(t_prev) < 0.0) t = -t;
    return t;
  }
};

}  // namespace

int profile_symmetry(const std::vector<double>& u, double tol) {
  if (sym_defect(u, 1) < tol) return 1;
  if (sym_defect(u, -1) < tol) return -1;
  return 0;
}

std::optional<Code> identify_code(const LatticeProfile& profile, const RootPair& roots) {
  const double tol = 0.25 * roots.a;
  std::vector<Symbol> symbols;
  int first = -1;
  int last = -1;
  const auto& v = profile.values;
  for (int i = 0; i < profile.window(); ++i) {
    const double x = std::abs(v[i]);
    if (x < tol) continue;
    if (first < 0) first = i;
    if (last >= 0 && i != last + 1) return std::nullopt;
    last = i;
    if (std::abs(x - roots.a) < tol) {
      symbols.push_back(v[i] > 0 ? Symbol::SmallPlus : Symbol::SmallMinus);
    } else if (std::abs(x - roots.A) < tol) {
      symbols.push_back(v[i] > 0 ? Symbol::LargePlus : Symbol::LargeMinus);
    } else {
      return std::nullopt;
    }
  }
  if (symbols.empty()) return std::nullopt;
  return Code(std::move(symbols));
}

std::optional<BifurcationEvent> detect_fold(const BranchPoint& a, const BranchPoint& b) {
  if (!(a.deps_ds * b.deps_ds < 0.0)) return std::nullopt;
  const double theta = a.deps_ds / (a.deps_ds - b.deps_ds);
  if (a.jac_neg == b.jac_neg && turning_symmetry(a, b, theta) != 0) return std::nullopt;
  BifurcationEvent ev;
  ev.kind = BifurcationEvent::Kind::Fold;
  ev.eps_at = hermite(theta, b.s - a.s, a.eps, a.deps_ds, b.eps, b.deps_ds);
  ev.detail = "unidentified";
  return ev;
}

std::optional<BifurcationEvent> detect_pitchfork(const BranchPoint& a, const BranchPoint& b) {
  const bool turn = a.deps_ds * b.deps_ds < 0.0;
  if (!turn && a.jac_neg != b.jac_neg && a.symmetry != 0 && a.symmetry == b.symmetry &&
      (a.crit_parity == -1 || b.crit_parity == -1)) {
    BifurcationEvent ev;
    ev.kind = BifurcationEvent::Kind::Pitchfork;
    const double denom = a.crit_eig - b.crit_eig;
    const double theta = denom != 0.0 ? std::clamp(a.crit_eig / denom, 0.0, 1.0) : 0.5;
    ev.eps_at = a.eps + theta * (b.eps - a.eps);
    ev.detail = "symmetry breaking on the " + symmetry_name(a.symmetry) + "-symmetric branch";
    return ev;
  }
  if (turn && a.jac_neg == b.jac_neg) {
    const double theta = a.deps_ds / (a.deps_ds - b.deps_ds);
    const int sym = turning_symmetry(a, b, theta);
    if (sym == 0) return std::nullopt;
    BifurcationEvent ev;
    ev.kind = BifurcationEvent::Kind::Pitchfork;
    ev.eps_at = hermite(theta, b.s - a.s, a.eps, a.deps_ds, b.eps, b.deps_ds);
    ev.detail = "connects to a " + symmetry_name(sym) + "-symmetric branch";
    return ev;
  }
  return std::nullopt;
}

namespace {

BranchPoint make_point(const Vec& x, int m, const LatticeProfile& layout, const ModelParams& base,
                       const ContinuationSettings& settings) {
  BranchPoint pt;
  pt.eps = x(m);
  pt.profile = layout;
  pt.profile.values.assign(x.data(), x.data() + m);
  ModelParams prm = base;
  prm.eps = pt.eps;
  const Functionals fn = energy_mass(pt.profile, prm);
  pt.Q = fn.Q;
  pt.H = fn.H;
  pt.residual = max_abs(residual(pt.profile, prm));

  Eigen::VectorXd vals;
  Eigen::MatrixXd vecs;
  eigensystem(jacobian(pt.profile, prm), vals, vecs);
  Eigen::Index k = 0;
  vals.cwiseAbs().minCoeff(&k);
  pt.crit_eig = vals(k);
  pt.jac_min_sv = std::abs(vals(k));
  pt.jac_neg = static_cast<int>((vals.array() < 0.0).count());
  pt.symmetry = profile_symmetry(pt.profile.values, 1e-7);
  if (pt.symmetry != 0) {
    const Eigen::VectorXd v = vecs.col(k);
    const Eigen::VectorXd sv = pt.symmetry * v.reverse();
    const double c = v.dot(sv);
    pt.crit_parity = c > 0.9 ? 1 : (c < -0.9 ? -1 : 0);
  }
  if (settings.classify) {
    try {
      pt.verdict = analyze_full(pt.profile, prm).verdict;
    } catch (const Error&) {
      pt.verdict = Verdict::Inconclusive;
    }
  }
  return pt;
}

// Bisection on the sign of the L+ eigenvalue closest to zero along a branch without turning points.
double bisect_crossing(const BranchPoint& a, const BranchPoint& b, const ModelParams& base,
                       double tol) {
  double lo = a.eps;
  double hi = b.eps;
  const bool lo_sign = a.crit_eig > 0.0;
  NewtonSettings ns;
  ns.tol = tol;
  ns.max_enlargements = 0;
  ns.boundary_tol = 1.0;
  for (int it = 0; it < 60 && std::abs(hi - lo) > 1e-10; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double theta = (mid - a.eps) / (b.eps - a.eps);
    LatticeProfile guess = a.profile;
    for (std::size_t i = 0; i < guess.values.size(); ++i) {
      guess.values[i] = (1 - theta) * a.profile.values[i] + theta * b.profile.values[i];
    }
    ModelParams prm = base;
    prm.eps = mid;
    const LatticeProfile sol = newton_solve(guess, prm, ns).profile;
    const Eigen::VectorXd vals = eigenvalues(jacobian(sol, prm));
    Eigen::Index k = 0;
    vals.cwiseAbs().minCoeff(&k);
    if ((vals(k) > 0.0) == lo_sign) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

Branch continue_branch(const Code& c, const ModelParams& params_base, double eps_max, double step,
                       const ContinuationSettings& settings) {
  if (!(step > 0.0) || !(eps_max > step)) throw PreconditionError("need 0 < step < eps_max");
  ModelParams base = params_base;
  base.eps = step;
  const RootPair roots = find_roots(base);

  NewtonSettings ns;
  ns.tol = settings.tol;
  ns.buffer = settings.buffer;
  NewtonResult start;
  try {
    start = newton_solve(seed_profile(c, roots, settings.buffer), base, ns);
  } catch (const Error& e) {
    throw InitialSolveFailed(std::string("initial solve at eps=step failed: ") + e.what());
  }

  const LatticeProfile layout = start.profile;
  const int m = layout.window();
  const Corrector corr{base, m};

  Vec x(m + 1);
  for (int i = 0; i < m; ++i) x(i) = layout.values[i];
  x(m) = step;
  Vec ez = Vec::Zero(m + 1);
  ez(m) = 1.0;
  Vec t = corr.tangent(x, ez);

  Branch br;
  BranchPoint first = make_point(x, m, layout, base, settings);
  first.deps_ds = t(m);
  br.points.push_back(std::move(first));

  double h = std::clamp(step, settings.step_min, settings.step_max);
  while (true) {
    if (static_cast<int>(br.points.size()) > settings.max_steps) {
      br.termination = "maximum number of steps";
      break;
    }
    Vec y = x + h * t;
    bool ok = false;
    int iters = 0;
    for (; iters <= settings.max_corrector; ++iters) {
      const Vec r = corr.residual_of(y);
      const double g = t.dot(y - x) - h;
      const double rn = r.cwiseAbs().maxCoeff();
      if (!std::isfinite(rn)) break;
      if (rn < settings.tol && std::abs(g) < 1e-10) {
        ok = true;
        break;
      }
      if (iters == settings.max_corrector) break;
      Vec rhs(m + 1);
      rhs.head(m) = r;
      rhs(m) = g;
      y -= corr.bordered(y, t).partialPivLu().solve(rhs);
    }
    if (!ok) {
      h *= 0.5;
      if (h < settings.step_min) {
        br.termination = "step size below minimum";
        break;
      }
      continue;
    }

    const Vec t_new = corr.tangent(y, t);
    BranchPoint pt = make_point(y, m, layout, base, settings);
    pt.s = br.points.back().s + (y - x).norm();
    pt.deps_ds = t_new(m);
    x = y;
    t = t_new;

    const BranchPoint& prev = br.points.back();
    const int idx = static_cast<int>(br.points.size()) - 1;
    if (auto ev = detect_fold(prev, pt)) {
      ev->after_point = idx;
      br.events.push_back(*ev);
    } else if (auto pv = detect_pitchfork(prev, pt)) {
      pv->after_point = idx;
      if (prev.deps_ds * pt.deps_ds > 0.0 && settings.refine_pitchfork) {
        try {
          pv->eps_at = bisect_crossing(prev, pt, base, settings.tol);
        } catch (const Error&) {
          // keep the secant estimate
        }
      }
      br.events.push_back(*pv);
    }
    br.points.push_back(std::move(pt));

    if (iters <= settings.fast_iterations) h = std::min(h * settings.grow, settings.step_max);

    const BranchPoint& last = br.points.back();
    if (last.eps >= eps_max) {
      br.termination = "reached eps_max";
      break;
    }
    if (last.eps <= 0.5 * step && last.deps_ds < 0.0) {
      br.termination = "returned to the anticontinuum limit";
      if (auto code = identify_code(last.profile, roots)) br.endpoint_code = to_string(canonicalize(*code));
      break;
    }
    const auto& v = last.profile.values;
    if (std::max(std::abs(v.front()), std::abs(v.back())) > settings.boundary_tol) {
      br.termination = "profile reached the window boundary";
      break;
    }
  }

  for (auto& ev : br.events) {
    if (ev.kind == BifurcationEvent::Kind::Pitchfork && ev.detail.rfind("connects", 0) == 0) {
      const int sym = ev.detail.find("-R-") != std::string::npos ? -1 : 1;
      ev.detail += "; mirror arm " + to_string(canonicalize(apply_symmetry(c, sym)));
    }
  }
  for (auto it = br.events.rbegin(); it != br.events.rend(); ++it) {
    if (it->kind != BifurcationEvent::Kind::Fold) continue;
    if (!br.endpoint_code.empty()) it->detail = "merges with branch (" + br.endpoint_code + ")";
    break;
  }
  return br;
}

std::string to_string(BifurcationEvent::Kind k) {
  return k == BifurcationEvent::Kind::Fold ? "Fold" : "Pitchfork";
}

}  // namespace ilm
