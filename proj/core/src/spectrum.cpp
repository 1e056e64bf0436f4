#include "ilm/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "ilm/errors.hpp"

namespace ilm {

namespace {

constexpr double kComplexTol = 1e-9;
constexpr double kNegTol = 1e-9;
constexpr double kZeroTol = 1e-8;
constexpr double kOverlapMin = 0.999;
constexpr double kDegeneracyTol = 1e-9;
constexpr double kCoincideTol = 1e-8;

double dot(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double norm2(std::span<const double> x) { return std::sqrt(dot(x, x)); }

EigenSystem general_eigs(const Eigen::MatrixXd& m) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, true);
  if (es.info() != Eigen::Success) throw EigenFailure("general eigensolver did not converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

// Rotates a complex eigenvector of a real eigenvalue onto the real axis.
std::vector<double> real_vector(const Eigen::VectorXcd& v) {
  Eigen::Index k = 0;
  v.cwiseAbs().maxCoeff(&k);
  const std::complex<double> phase = std::abs(v(k)) > 0.0 ? std::conj(v(k)) / std::abs(v(k)) : 1.0;
  std::vector<double> w(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) w[static_cast<std::size_t>(i)] = (v(i) * phase).real();
  return w;
}

double min_abs_eigenvalue(const SymTridiag& t) {
  return eigenvalues(t).cwiseAbs().minCoeff();
}

}  // namespace

LinearOps build_full_ops(const LatticeProfile& profile, const ModelParams& params) {
  const auto& u = profile.values;
  const std::size_t m = u.size();
  LinearOps ops;
  ops.Lminus.diag.resize(m);
  ops.Lplus.diag.resize(m);
  ops.Lminus.off.assign(m > 0 ? m - 1 : 0, -params.eps);
  ops.Lplus.off = ops.Lminus.off;
  for (std::size_t i = 0; i < m; ++i) {
    const double x = std::abs(u[i]);
    const double xp = ipow(x, params.p - 1);
    const double xq = ipow(x, params.q - 1);
    ops.Lminus.diag[i] = 2.0 * params.eps + 1.0 - xp + params.gamma * xq;
    ops.Lplus.diag[i] = 2.0 * params.eps + 1.0 - params.p * xp + params.gamma * params.q * xq;
  }
  ops.phase_mode = u;
  const double un = norm2(u);
  ops.phase_residual = un > 0.0 ? norm2(ops.Lminus.apply(u)) / un : 0.0;
  return ops;
}

TruncatedPencil build_truncated(const Code& c, const RootPair& roots) {
  const int n = c.size();
  TruncatedPencil t;
  t.seed.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) t.seed[i] = sign(c[i]) * (is_small(c[i]) ? roots.a : roots.A);
  t.Lm_t.diag.resize(static_cast<std::size_t>(n));
  t.Lm_t.off.assign(static_cast<std::size_t>(n - 1), -1.0);
  t.Lp_t.diag.resize(static_cast<std::size_t>(n));
  t.Lp_t.off.assign(static_cast<std::size_t>(n - 1), 0.0);
  for (int i = 0; i < n; ++i) {
    const double left = i > 0 ? t.seed[i - 1] : 0.0;
    const double right = i + 1 < n ? t.seed[i + 1] : 0.0;
    t.Lm_t.diag[i] = (left + right) / t.seed[i];
    t.Lp_t.diag[i] = is_small(c[i]) ? roots.dfa : roots.dfA;
  }
  return t;
}

EigenSystem truncated_eigs(const TruncatedPencil& pencil) {
  return general_eigs(pencil.Lp_t.dense() * pencil.Lm_t.dense());
}

EigenSystem full_eigs(const LinearOps& ops) {
  return general_eigs(ops.Lplus.dense() * ops.Lminus.dense());
}

KreinResult krein_signature(std::span<const double> w, const SymTridiag& Lplus) {
  if (min_abs_eigenvalue(Lplus) <= 1e-12 * std::max(1.0, Lplus.norm_inf())) {
    throw SingularLplus("L+ is numerically singular");
  }
  const std::vector<double> x = solve(Lplus, w);
  KreinResult out;
  out.value = dot(x, w);
  out.sign = out.value > 0.0 ? 1 : (out.value < 0.0 ? -1 : 0);
  out.degenerate = std::abs(out.value) < kDegeneracyTol * norm2(x) * norm2(w);
  return out;
}

SigmaResult sigma_quantity(const Code& c, const RootPair& roots) {
  const int n = c.size();
  const int k = small_count(c);
  SigmaResult out;
  out.value = k * roots.a * roots.a / roots.dfa + (n - k) * roots.A * roots.A / roots.dfA;
  out.sigma0 = out.value < 0.0 ? 1 : 0;
  out.degenerate = std::abs(out.value) < kDegeneracyTol * (roots.a * roots.a + roots.A * roots.A);
  return out;
}

SpectrumReport classify(const ClassifyInput& in) {
  SpectrumReport rep;
  rep.sigma = in.sigma;
  const Eigen::Index n = in.eig.values.size();
  bool inconclusive = false;
  auto flag = [&](const std::string& msg) {
    rep.diagnostics.push_back(msg);
    inconclusive = true;
  };

  double scale = 1.0;
  for (Eigen::Index j = 0; j < n; ++j) scale = std::max(scale, std::abs(in.eig.values(j)));

  Eigen::Index zero_idx = -1;
  const double un = norm2(in.phase_mode);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::VectorXcd& v = in.eig.vectors.col(j);
    std::complex<double> ip = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) ip += std::conj(v(i)) * in.phase_mode[static_cast<std::size_t>(i)];
    const double ov = un > 0.0 ? std::abs(ip) / (v.norm() * un) : 0.0;
    if (ov > rep.zero_mode_overlap) {
      rep.zero_mode_overlap = ov;
      zero_idx = j;
    }
  }
  if (zero_idx < 0 || rep.zero_mode_overlap < kOverlapMin) {
    flag("phase mode not identified among eigenvectors");
  } else {
    rep.zero_mode_check = std::abs(in.eig.values(zero_idx));
    if (rep.zero_mode_check > kZeroTol * scale) flag("phase-mode eigenvalue is not zero");
  }

  bool lplus_ok = true;
  try {
    if (min_abs_eigenvalue(in.Lplus) <= 1e-12 * std::max(1.0, in.Lplus.norm_inf())) {
      lplus_ok = false;
      flag("L+ is numerically singular; Krein signatures unavailable");
    }
  } catch (const Error& e) {
    lplus_ok = false;
    flag(e.what());
  }

  bool any_negative = false;
  for (Eigen::Index j = 0; j < n; ++j) {
    ClassifiedEigenvalue ce;
    ce.lambda = in.eig.values(j);
    const double mag = std::abs(ce.lambda);
    if (j == zero_idx) {
      ce.tag = EigenTag::Zero;
    } else if (std::abs(ce.lambda.imag()) > kComplexTol * std::max(1.0, mag)) {
      ce.tag = EigenTag::Complex;
      if (ce.lambda.imag() > 0.0) ++rep.counts.Nc;
    } else if (std::abs(ce.lambda.real()) <= kZeroTol * scale) {
      ce.tag = EigenTag::NearZero;
      flag("zero eigenvalue has multiplicity > 1");
    } else {
      const bool negative = ce.lambda.real() < -kNegTol * scale;
      ce.tag = negative ? EigenTag::RealNegative : EigenTag::RealPositive;
      any_negative = any_negative || negative;
      if (lplus_ok) {
        const KreinResult kr = krein_signature(real_vector(in.eig.vectors.col(j)), in.Lplus);
        ce.krein = kr.sign;
        ce.krein_value = kr.value;
        if (kr.degenerate) flag("degenerate Krein quadratic form");
        if (negative) {
          (kr.sign > 0 ? rep.counts.Nr_plus : rep.counts.Nr_minus) += 1;
        } else {
          (kr.sign > 0 ? rep.counts.Ni_plus : rep.counts.Ni_minus) += 1;
        }
      }
    }
    rep.eigenvalues.push_back(ce);
  }

  if (in.truncated) {
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) {
        if (i == zero_idx || j == zero_idx) continue;
        if (std::abs(in.eig.values(i) - in.eig.values(j)) < kCoincideTol * scale) {
          flag("coincident truncated eigenvalues; the full problem must decide");
          i = n;
          break;
        }
      }
    }
  }

  const double ztol_p = 1e-10 * std::max(1.0, in.Lplus.norm_inf());
  const double ztol_m = 1e-10 * std::max(1.0, in.Lminus.norm_inf());
  rep.n_Lplus = inertia(in.Lplus, ztol_p).neg;
  rep.n_Lminus = inertia(in.Lminus, ztol_m).neg;

  if (in.sigma.degenerate) {
    flag("sigma quantity is degenerate");
  } else if (lplus_ok) {
    const auto& c = rep.counts;
    const bool id1 = c.Nc + c.Nr_minus + c.Ni_minus == rep.n_Lplus - in.sigma.sigma0;
    const bool id2 = c.Nc + c.Nr_plus + c.Ni_minus == rep.n_Lminus;
    rep.identities_hold = id1 && id2;
    if (!id1) flag("count identity Nc + Nr- + Ni- = n(L+) - sigma violated");
    if (!id2) flag("count identity Nc + Nr+ + Ni- = n(L-) violated");
  }

  if (inconclusive) {
    rep.verdict = Verdict::Inconclusive;
  } else if (rep.counts.Nc > 0 || any_negative) {
    rep.verdict = Verdict::Unstable;
  } else {
    rep.verdict = Verdict::Stable;
  }
  return rep;
}

SpectrumReport analyze_truncated(const Code& c, const RootPair& roots) {
  const TruncatedPencil pencil = build_truncated(c, roots);
  ClassifyInput in;
  in.eig = truncated_eigs(pencil);
  in.Lplus = pencil.Lp_t;
  in.Lminus = pencil.Lm_t;
  in.phase_mode = pencil.seed;
  in.sigma = sigma_quantity(c, roots);
  in.truncated = true;
  return classify(in);
}

SpectrumReport analyze_full(const LatticeProfile& profile, const ModelParams& params) {
  const LinearOps ops = build_full_ops(profile, params);
  ClassifyInput in;
  in.eig = full_eigs(ops);
  in.Lplus = ops.Lplus;
  in.Lminus = ops.Lminus;
  in.phase_mode = ops.phase_mode;
  try {
    const std::vector<double> x = solve(ops.Lplus, ops.phase_mode);
    in.sigma.value = dot(x, ops.phase_mode);
    in.sigma.sigma0 = in.sigma.value < 0.0 ? 1 : 0;
    in.sigma.degenerate =
        std::abs(in.sigma.value) < kDegeneracyTol * norm2(x) * norm2(ops.phase_mode);
  } catch (const SingularLplus&) {
    in.sigma.degenerate = true;
  }
  SpectrumReport rep = classify(in);
  if (ops.phase_residual > 1e-9) {
    rep.diagnostics.push_back("phase mode residual ||L- u||/||u|| = " +
                              std::to_string(ops.phase_residual));
  }
  return rep;
}

PredictedInertia predict_inertia(const Code& c, const RootPair& roots) {
  const int n = c.size();
  const int n0 = flips(c);
  const int k = small_count(c);
  if (k == 0) return {n0, 1, n - n0 - 1, 1};
  if (k == n) return {n - n0 - 1, 1, n0, 2};
  const bool definite = n0 == 0;
  const bool alternating = n0 == n - 1;
  if (!definite && !alternating) throw NotApplicable("code is not in one of the four analytic families");
  const SigmaResult s = sigma_quantity(c, roots);
  if (s.degenerate) throw NotApplicable("sigma quantity is degenerate");
  if (definite) return {k - s.sigma0, 1, n - k - (1 - s.sigma0), 3};
  return {n - k - (1 - s.sigma0), 1, k - s.sigma0, 4};
}

Inertia pencil_inertia(const EigenSystem& eig, double zero_tol) {
  Inertia out;
  for (Eigen::Index j = 0; j < eig.values.size(); ++j) {
    const std::complex<double> l = eig.values(j);
    if (std::abs(l.imag()) > kComplexTol * std::max(1.0, std::abs(l))) continue;
    if (l.real() < -zero_tol) {
      ++out.neg;
    } else if (l.real() > zero_tol) {
      ++out.pos;
    } else {
      ++out.zero;
    }
  }
  return out;
}

TheoremCheck theorem_conditions(const Code& c, const RootPair& roots) {
  const int n = c.size();
  const int k = small_count(c);
  const double sa = roots.a * roots.a / roots.dfa;
  const double sA = roots.A * roots.A / roots.dfA;
  TheoremCheck out;
  if (flips(c) == 0 && k == 1) {
    out.condition = 'C';
    out.value = sa + (n - 1) * sA;
    out.holds = out.value < 0.0;
    out.prediction = out.holds ? "constrained minimizer of H at fixed Q; spectrally and orbitally stable"
                               : "condition (C) fails; no prediction";
    return out;
  }
  if (flips(c) == n - 1 && k == n - 1) {
    out.condition = 'D';
    out.value = (n - 1) * sa + sA;
    out.holds = out.value > 0.0;
    out.prediction = out.holds ? "spectrally stable; not a constrained minimizer of H at fixed Q"
                               : "condition (D) fails; no prediction";
    return out;
  }
  throw NotApplicable("code does not have the shape of condition (C) or (D)");
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Stable: return "Stable";
    case Verdict::Unstable: return "Unstable";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::string to_string(EigenTag t) {
  switch (t) {
    case EigenTag::Zero: return "zero";
    case EigenTag::NearZero: return "near-zero";
    case EigenTag::RealNegative: return "real-negative";
    case EigenTag::RealPositive: return "real-positive";
    case EigenTag::Complex: return "complex";
  }
  return "?";
}

}  // namespace ilm
