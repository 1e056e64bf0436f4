#include "ilm/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "ilm/errors.hpp"

namespace ilm {

namespace {

double norm2(const CVec& u) {
  double s = 0.0;
  for (const auto& x : u) s += std::norm(x);
  return std::sqrt(s);
}

}  // namespace

CVec rhs(const CVec& u, const ModelParams& params) {
  const std::size_t m = u.size();
  CVec out(m);
  const std::complex<double> i1(0.0, 1.0);
  for (std::size_t n = 0; n < m; ++n) {
    const std::complex<double> left = n > 0 ? u[n - 1] : 0.0;
    const std::complex<double> right = n + 1 < m ? u[n + 1] : 0.0;
    const double a = std::abs(u[n]);
    const double g = -1.0 + ipow(a, params.p - 1) - params.gamma * ipow(a, params.q - 1);
    out[n] = i1 * (params.eps * (left - 2.0 * u[n] + right) + g * u[n]);
  }
  return out;
}

CVec to_complex(const LatticeProfile& profile) {
  return CVec(profile.values.begin(), profile.values.end());
}

CVec perturb(const LatticeProfile& profile, double rel, std::uint64_t seed) {
  CVec u = to_complex(profile);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  CVec delta(u.size());
  for (int i = 0; i < profile.core_size; ++i) {
    const double re = dist(rng);
    const double im = dist(rng);
    delta[static_cast<std::size_t>(profile.core_begin + i)] = {re, im};
  }
  const double dn = norm2(delta);
  if (dn == 0.0) return u;
  const double scale = rel * norm2(u) / dn;
  for (std::size_t i = 0; i < u.size(); ++i) u[i] += scale * delta[i];
  return u;
}

double orbital_deviation(const CVec& u0, const CVec& u) {
  std::complex<double> z = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) z += std::conj(u0[i]) * u[i];
  const std::complex<double> rot = std::abs(z) > 0.0 ? z / std::abs(z) : 1.0;
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += std::norm(u[i] - rot * u0[i]);
  return std::sqrt(s);
}

EvolutionSeries evolve(const CVec& initial, const ModelParams& params, double t_max, double dt,
                       const EvolveSettings& settings) {
  if (!(dt > 0.0) || !(t_max > 0.0)) throw PreconditionError("evolve needs dt > 0 and t_max > 0");
  if (initial.empty()) throw PreconditionError("initial profile is empty");
  validate_powers(params.p, params.q);

  EvolutionSeries out;
  out.norm0 = norm2(initial);
  CVec u = initial;
  const std::size_t m = u.size();
  const long steps = std::lround(std::ceil(t_max / dt - 1e-9));
  const int every = std::max(1, settings.sample_every);

  auto record = [&](double t) {
    const Functionals fn = energy_mass(std::span<const std::complex<double>>(u), params);
    out.samples.push_back({t, fn.Q, fn.H, orbital_deviation(initial, u)});
    if (std::max(std::abs(u.front()), std::abs(u.back())) > 10.0 * settings.boundary_tol) {
      out.boundary_warning = true;
    }
  };
  record(0.0);

  CVec k1, k2, k3, k4, tmp(m);
  for (long step = 1; step <= steps; ++step) {
    k1 = rhs(u, params);
    for (std::size_t i = 0; i < m; ++i) tmp[i] = u[i] + 0.5 * dt * k1[i];
    k2 = rhs(tmp, params);
    for (std::size_t i = 0; i < m; ++i) tmp[i] = u[i] + 0.5 * dt * k2[i];
    k3 = rhs(tmp, params);
    for (std::size_t i = 0; i < m; ++i) tmp[i] = u[i] + dt * k3[i];
    k4 = rhs(tmp, params);
    double peak = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      u[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      peak = std::max(peak, std::abs(u[i]));
    }
    const double t = step * dt;
    if (!(peak <= settings.blowup)) {
      out.diverged = true;
      record(t);
      break;
    }
    if (step % every == 0 || step == steps) record(t);
  }
  out.final_state = {out.samples.back().t, u};
  return out;
}

double growth_rate(const EvolutionSeries& series, const GrowthFitOptions& opts) {
  const auto& s = series.samples;
  if (s.size() < 2) throw NotGrowing("too few samples");
  const double t_end = s.back().t;
  const double hi = series.norm0 > 0.0 ? opts.ceiling_fraction * series.norm0
                                       : std::numeric_limits<double>::infinity();
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t cross = 0;
  while (cross < s.size() && s[cross].deviation < hi) ++cross;
  if (cross < s.size()) {
    // escaped: fit the last decade before the ceiling
    end = cross;
    begin = end;
    while (begin > 0 && s[begin - 1].deviation > hi / opts.floor_factor) --begin;
  } else {
    std::vector<double> early;
    for (std::size_t i = 1; i < s.size() && s[i].t <= 0.1 * t_end; ++i) early.push_back(s[i].deviation);
    if (early.empty()) early.push_back(s[1].deviation);
    std::nth_element(early.begin(), early.begin() + early.size() / 2, early.end());
    const double level = early[early.size() / 2];
    if (!(level > 0.0)) throw NotGrowing("deviation is zero at early times");
    const double lo = opts.floor_factor * level;
    while (begin < s.size() && !(s[begin].deviation > lo)) ++begin;
    end = begin;
    while (end < s.size() && s[end].deviation > lo) ++end;
  }
  if (static_cast<int>(end - begin) < opts.min_samples) throw NotGrowing("no exponential window found");

  double st = 0, sy = 0, stt = 0, sty = 0;
  const double n = static_cast<double>(end - begin);
  for (std::size_t i = begin; i < end; ++i) {
    const double y = std::log(s[i].deviation);
    st += s[i].t;
    sy += y;
    stt += s[i].t * s[i].t;
    sty += s[i].t * y;
  }
  const double slope = (n * sty - st * sy) / (n * stt - st * st);
  if (!(slope > 0.0)) throw NotGrowing("fitted slope is not positive");
  return slope;
}

}  // namespace ilm
