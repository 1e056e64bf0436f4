#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace ilm {

// Symmetric tridiagonal matrix: diag has n entries, off has n-1.
struct SymTridiag {
  std::vector<double> diag;
  std::vector<double> off;

  int size() const { return static_cast<int>(diag.size()); }
  std::vector<double> apply(std::span<const double> x) const;
  Eigen::MatrixXd dense() const;
  double norm_inf() const;
};

struct Inertia {
  int neg = 0;
  int zero = 0;
  int pos = 0;
  friend bool operator==(const Inertia&, const Inertia&) = default;
};

// Solves T x = b by Gaussian elimination with partial pivoting.
// Throws SingularLplus on an exactly zero pivot.
std::vector<double> solve(const SymTridiag& t, std::span<const double> b);

// Number of eigenvalues strictly below `shift` (Sturm count via LDL^T pivots).
int count_below(const SymTridiag& t, double shift);

Inertia inertia(const SymTridiag& t, double zero_tol);
Inertia inertia(const Eigen::MatrixXd& symmetric, double zero_tol);

// Ascending eigenvalues; eigenvectors as columns when requested.
Eigen::VectorXd eigenvalues(const SymTridiag& t);
void eigensystem(const SymTridiag& t, Eigen::VectorXd& values, Eigen::MatrixXd& vectors);

}  // namespace ilm
