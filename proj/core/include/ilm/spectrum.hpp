#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ilm/codes.hpp"
#include "ilm/model.hpp"
#include "ilm/profile.hpp"
#include "ilm/tridiag.hpp"

namespace ilm {

struct LinearOps {
  SymTridiag Lminus;
  SymTridiag Lplus;
  std::vector<double> phase_mode;
  double phase_residual = 0.0;  // ||L- u|| / ||u||
};

struct TruncatedPencil {
  SymTridiag Lm_t;
  SymTridiag Lp_t;  // diagonal; off-diagonals are zero
  std::vector<double> seed;
};

struct EigenSystem {
  Eigen::VectorXcd values;
  Eigen::MatrixXcd vectors;
};

struct KreinResult {
  double value = 0.0;
  int sign = 0;
  bool degenerate = false;
};

struct SigmaResult {
  double value = 0.0;
  int sigma0 = 0;
  bool degenerate = false;
};

enum class Verdict { Stable, Unstable, Inconclusive };
enum class EigenTag { Zero, NearZero, RealNegative, RealPositive, Complex };

struct ClassifiedEigenvalue {
  std::complex<double> lambda;
  EigenTag tag = EigenTag::RealPositive;
  int krein = 0;  // +1/-1 for real nonzero eigenvalues, 0 otherwise
  double krein_value = 0.0;
};

struct IndexCounts {
  int Nc = 0;
  int Nr_plus = 0;
  int Nr_minus = 0;
  int Ni_plus = 0;
  int Ni_minus = 0;
};

struct SpectrumReport {
  std::vector<ClassifiedEigenvalue> eigenvalues;
  IndexCounts counts;
  int n_Lplus = 0;
  int n_Lminus = 0;
  SigmaResult sigma;
  Verdict verdict = Verdict::Inconclusive;
  double zero_mode_check = 0.0;  // |lambda| of the identified phase mode
  double zero_mode_overlap = 0.0;
  bool identities_hold = false;
  std::vector<std::string> diagnostics;
};

struct ClassifyInput {
  EigenSystem eig;
  SymTridiag Lplus;
  SymTridiag Lminus;
  std::vector<double> phase_mode;
  SigmaResult sigma;
  bool truncated = false;
};

struct PredictedInertia {
  int neg = 0;
  int zero = 0;
  int pos = 0;
  int family = 0;  // 1: large only, 2: small only, 3: a+/A+ only, 4: sign-alternating
};

struct TheoremCheck {
  char condition = 'C';
  double value = 0.0;
  bool holds = false;
  std::string prediction;
};

LinearOps build_full_ops(const LatticeProfile& profile, const ModelParams& params);
TruncatedPencil build_truncated(const Code& c, const RootPair& roots);

EigenSystem truncated_eigs(const TruncatedPencil& pencil);
EigenSystem full_eigs(const LinearOps& ops);

KreinResult krein_signature(std::span<const double> w, const SymTridiag& Lplus);
SigmaResult sigma_quantity(const Code& c, const RootPair& roots);

SpectrumReport classify(const ClassifyInput& in);

SpectrumReport analyze_truncated(const Code& c, const RootPair& roots);
SpectrumReport analyze_full(const LatticeProfile& profile, const ModelParams& params);

PredictedInertia predict_inertia(const Code& c, const RootPair& roots);
Inertia pencil_inertia(const EigenSystem& eig, double zero_tol);
TheoremCheck theorem_conditions(const Code& c, const RootPair& roots);

std::string to_string(Verdict v);
std::string to_string(EigenTag t);

}  // namespace ilm
