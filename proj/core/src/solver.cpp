#include "ilm/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ilm/errors.hpp"

namespace ilm {

LatticeProfile seed_profile(const Code& c, const RootPair& roots, int buffer) {
  if (buffer < 1) throw PreconditionError("buffer must be at least 1");
  LatticeProfile out;
  out.core_begin = buffer;
  out.core_size = c.size();
  out.offset = 1 - buffer;
  out.values.assign(static_cast<std::size_t>(c.size() + 2 * buffer), 0.0);
  for (int i = 0; i < c.size(); ++i) {
    const double amp = is_small(c[i]) ? roots.a : roots.A;
    out.values[static_cast<std::size_t>(buffer + i)] = sign(c[i]) * amp;
  }
  return out;
}

LatticeProfile pad(const LatticeProfile& profile, int extra) {
  LatticeProfile out = profile;
  out.values.insert(out.values.begin(), static_cast<std::size_t>(extra), 0.0);
  out.values.insert(out.values.end(), static_cast<std::size_t>(extra), 0.0);
  out.core_begin += extra;
  out.offset -= extra;
  return out;
}

LatticeProfile reflect(const LatticeProfile& profile) {
  LatticeProfile out = profile;
  std::reverse(out.values.begin(), out.values.end());
  out.core_begin = profile.window() - profile.core_begin - profile.core_size;
  return out;
}

std::vector<double> laplacian(std::span<const double> u) {
  const std::size_t m = u.size();
  std::vector<double> out(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double left = i > 0 ? u[i - 1] : 0.0;
    const double right = i + 1 < m ? u[i + 1] : 0.0;
    out[i] = left - 2.0 * u[i] + right;
  }
  return out;
}

std::vector<double> residual(std::span<const double> u, const ModelParams& params) {
  std::vector<double> r = laplacian(u);
  for (std::size_t i = 0; i < u.size(); ++i) r[i] = params.eps * r[i] - f_eval(u[i], params);
  return r;
}

std::vector<double> residual(const LatticeProfile& profile, const ModelParams& params) {
  return residual(std::span<const double>(profile.values), params);
}

SymTridiag jacobian(std::span<const double> u, const ModelParams& params) {
  SymTridiag t;
  const std::size_t m = u.size();
  t.diag.resize(m);
  t.off.assign(m > 0 ? m - 1 : 0, -params.eps);
  for (std::size_t i = 0; i < m; ++i) t.diag[i] = 2.0 * params.eps + fprime_eval(u[i], params);
  return t;
}

SymTridiag jacobian(const LatticeProfile& profile, const ModelParams& params) {
  return jacobian(std::span<const double>(profile.values), params);
}

double max_abs(std::span<const double> v) {
  double best = 0.0;
  for (double x : v) best = std::max(best, std::abs(x));
  return best;
}

namespace {

void newton_iterate(std::vector<double>& u, const ModelParams& params, const NewtonSettings& s,
                    NewtonResult& out) {
  for (int k = 0;; ++k) {
    const std::vector<double> r = residual(std::span<const double>(u), params);
    const double rn = max_abs(r);
    out.residual_history.push_back(rn);
    if (!std::isfinite(rn)) throw NoConvergence("Newton iterate became non-finite");
    if (rn < s.tol) return;
    if (k == s.max_iter) {
      throw NoConvergence("Newton did not converge in " + std::to_string(s.max_iter) +
                          " iterations (residual " + std::to_string(rn) + ")");
    }
    const std::vector<double> delta = solve(jacobian(std::span<const double>(u), params), r);
    for (std::size_t i = 0; i < u.size(); ++i) u[i] += delta[i];
    ++out.iterations;
  }
}

}  // namespace

NewtonResult newton_solve(const LatticeProfile& seed, const ModelParams& params,
                          const NewtonSettings& settings) {
  if (seed.window() < 3) throw PreconditionError("window must hold at least 3 sites");
  if (settings.tol <= 0.0 || settings.max_iter < 1 || settings.buffer < 1) {
    throw PreconditionError("invalid Newton settings");
  }
  NewtonResult out;
  out.profile = seed;
  while (true) {
    newton_iterate(out.profile.values, params, settings, out);

    const auto& v = out.profile.values;
    for (int i = 0; i < seed.core_size; ++i) {
      const double want = seed.values[static_cast<std::size_t>(seed.core_begin + i)];
      const double got = v[static_cast<std::size_t>(out.profile.core_begin + i)];
      if (got == 0.0 || (got > 0.0) != (want > 0.0)) {
        throw SignPatternBroken("interior site " + std::to_string(i + 1) +
                                " changed sign during the solve");
      }
    }

    if (std::max(std::abs(v.front()), std::abs(v.back())) < settings.boundary_tol) return out;
    if (out.enlargements == settings.max_enlargements) {
      throw WindowTooSmall("boundary amplitude above tolerance after " +
                           std::to_string(out.enlargements) + " enlargements");
    }
    out.profile = pad(out.profile, std::max(1, out.profile.core_begin));
    ++out.enlargements;
  }
}

NewtonResult solve_code(const Code& c, const ModelParams& params, const NewtonSettings& settings) {
  const RootPair roots = find_roots(params);
  return newton_solve(seed_profile(c, roots, settings.buffer), params, settings);
}

}  // namespace ilm
