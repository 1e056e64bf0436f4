#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ilm/codes.hpp"
#include "ilm/model.hpp"
#include "ilm/profile.hpp"
#include "ilm/spectrum.hpp"

namespace ilm {

struct ContinuationSettings {
  double step_min = 1e-6;
  double step_max = 5e-3;
  double grow = 1.3;
  int fast_iterations = 3;
  int max_corrector = 12;
  double tol = 1e-12;
  int max_steps = 20000;
  int buffer = 20;
  double boundary_tol = 1e-8;
  bool classify = true;
  bool refine_pitchfork = true;
};

struct BranchPoint {
  double eps = 0.0;
  LatticeProfile profile;
  double Q = 0.0;
  double H = 0.0;
  Verdict verdict = Verdict::Inconclusive;
  double jac_min_sv = 0.0;

  double s = 0.0;          // arclength
  double deps_ds = 0.0;    // eps-component of the unit tangent
  int jac_neg = 0;         // negative eigenvalues of L+
  double crit_eig = 0.0;   // eigenvalue of L+ closest to zero
  int symmetry = 0;        // +1: R-symmetric, -1: -R-symmetric, 0: neither
  int crit_parity = 0;     // parity of the critical eigenvector under the symmetry, 0 if n/a
  double residual = 0.0;
};

struct BifurcationEvent {
  enum class Kind { Fold, Pitchfork };
  Kind kind = Kind::Fold;
  double eps_at = 0.0;
  std::string detail;
  int after_point = 0;  // event lies between points[after_point] and points[after_point + 1]
};

struct Branch {
  std::vector<BranchPoint> points;
  std::vector<BifurcationEvent> events;
  std::string termination;
  std::string endpoint_code;  // canonical code at a detected ACL endpoint, empty otherwise
};

// Starts from the seed of `c` at eps = step; `step` is also the initial arclength step.
Branch continue_branch(const Code& c, const ModelParams& params_base, double eps_max, double step,
                       const ContinuationSettings& settings = {});

std::optional<BifurcationEvent> detect_fold(const BranchPoint& a, const BranchPoint& b);
std::optional<BifurcationEvent> detect_pitchfork(const BranchPoint& a, const BranchPoint& b);

// +1 / -1 if the profile is R / -R symmetric to relative tolerance `tol`, else 0.
int profile_symmetry(const std::vector<double>& u, double tol);

// Reads the ACL code off a profile at small eps; nullopt if sites do not match {0, +-a, +-A}.
std::optional<Code> identify_code(const LatticeProfile& profile, const RootPair& roots);

std::string to_string(BifurcationEvent::Kind k);

}  // namespace ilm
