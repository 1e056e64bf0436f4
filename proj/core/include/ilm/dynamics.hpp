#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <vector>

#include "ilm/model.hpp"
#include "ilm/profile.hpp"

namespace ilm {

using CVec = std::vector<std::complex<double>>;

struct EvolutionState {
  double t = 0.0;
  CVec amplitudes;
};

struct EvolutionSample {
  double t = 0.0;
  double Q = 0.0;
  double H = 0.0;
  double deviation = 0.0;
};

struct EvolutionSeries {
  std::vector<EvolutionSample> samples;
  double norm0 = 0.0;  // ||u(0)||_2
  bool diverged = false;
  bool boundary_warning = false;
  EvolutionState final_state;
};

struct EvolveSettings {
  int sample_every = 100;
  double blowup = 1e6;
  double boundary_tol = 1e-10;
};

struct GrowthFitOptions {
  // If deviation reaches ceiling_fraction * norm0, the window is the stretch just below
  // that crossing spanning a factor floor_factor. Otherwise it starts once deviation
  // exceeds floor_factor times the median of the first tenth of the run.
  double floor_factor = 10.0;
  double ceiling_fraction = 0.1;
  int min_samples = 10;
};

// i u_t + eps (u_{n+1} - 2u_n + u_{n-1}) - u + |u|^{p-1}u - gamma |u|^{q-1}u = 0, classical RK4.
EvolutionSeries evolve(const CVec& initial, const ModelParams& params, double t_max, double dt,
                       const EvolveSettings& settings = {});

// Right-hand side du/dt.
CVec rhs(const CVec& u, const ModelParams& params);

CVec to_complex(const LatticeProfile& profile);

// Adds a seeded uniform complex perturbation on the code sites with ||delta||_2 = rel * ||u||_2.
CVec perturb(const LatticeProfile& profile, double rel, std::uint64_t seed);

// min over alpha of ||u - e^{i alpha} u0||_2.
double orbital_deviation(const CVec& u0, const CVec& u);

double growth_rate(const EvolutionSeries& series, const GrowthFitOptions& opts = {});

}  // namespace ilm
