#pragma once

#include <complex>
#include <span>

#include "ilm/profile.hpp"

namespace ilm {

struct ModelParams {
  int p = 3;
  int q = 4;
  double gamma = 0.2;
  double eps = 0.0;
};

struct RootPair {
  double a = 0.0;
  double A = 0.0;
  double dfa = 0.0;
  double dfA = 0.0;
  double gamma_crit = 0.0;
  double u_pq = 0.0;
};

struct PhysicalParams {
  double C = 1.0;
  double kappa = 1.0;
  double Gamma_def = 1.0;
  double omega = 1.0;
};

struct NormalizedParams {
  ModelParams params;
  double amplitude_scale = 1.0;
};

struct Functionals {
  double H = 0.0;
  double Q = 0.0;
  double Lambda = 0.0;
};

// x^n for n >= 0 by repeated squaring.
double ipow(double x, int n);

// Throws PreconditionError unless 2 <= p < q.
void validate_powers(int p, int q);

// Checks powers, eps >= 0 and gamma > 0. gamma >= gamma_crit throws NoCompetingRoots.
void validate(const ModelParams& params);

double f_eval(double u, const ModelParams& params);
double fprime_eval(double u, const ModelParams& params);

double gamma_crit(int p, int q);
double u_double_root(int p, int q);

RootPair find_roots(const ModelParams& params);

NormalizedParams normalize_physical(const PhysicalParams& phys, int p, int q);

// Zero Dirichlet padding: links to the sites just outside the window are included.
Functionals energy_mass(std::span<const double> u, const ModelParams& params);
Functionals energy_mass(std::span<const std::complex<double>> u, const ModelParams& params);
Functionals energy_mass(const LatticeProfile& profile, const ModelParams& params);

}  // namespace ilm
