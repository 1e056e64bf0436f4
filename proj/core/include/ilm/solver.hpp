#pragma once

#include <span>
#include <vector>

#include "ilm/codes.hpp"
#include "ilm/model.hpp"
#include "ilm/profile.hpp"
#include "ilm/tridiag.hpp"

namespace ilm {

struct NewtonSettings {
  double tol = 1e-12;
  int max_iter = 50;
  double boundary_tol = 1e-10;
  int buffer = 20;
  int max_enlargements = 3;
};

struct NewtonResult {
  LatticeProfile profile;
  int iterations = 0;
  int enlargements = 0;
  std::vector<double> residual_history;
};

// Code sites at window indices [buffer, buffer+N); site numbering starts at 1 on the first code site.
LatticeProfile seed_profile(const Code& c, const RootPair& roots, int buffer);

// Adds `extra` zero sites on both sides.
LatticeProfile pad(const LatticeProfile& profile, int extra);

// Window reversal u_i -> u_{M-1-i}; the core stays centered when padding is symmetric.
LatticeProfile reflect(const LatticeProfile& profile);

std::vector<double> laplacian(std::span<const double> u);
std::vector<double> residual(std::span<const double> u, const ModelParams& params);
std::vector<double> residual(const LatticeProfile& profile, const ModelParams& params);

// The operator L+ (diagonal 2 eps + f'(u), off-diagonal -eps). The residual's Jacobian is -L+.
SymTridiag jacobian(std::span<const double> u, const ModelParams& params);
SymTridiag jacobian(const LatticeProfile& profile, const ModelParams& params);

double max_abs(std::span<const double> v);

NewtonResult newton_solve(const LatticeProfile& seed, const ModelParams& params,
                          const NewtonSettings& settings = {});

// Convenience: seed from the code and solve at params.eps.
NewtonResult solve_code(const Code& c, const ModelParams& params, const NewtonSettings& settings = {});

}  // namespace ilm
