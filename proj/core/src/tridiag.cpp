#include "ilm/tridiag.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "ilm/errors.hpp"

namespace ilm {

std::vector<double> SymTridiag::apply(std::span<const double> x) const {
  const int n = size();
  std::vector<double> y(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double s = diag[i] * x[i];
    if (i > 0) s += off[i - 1] * x[i - 1];
    if (i + 1 < n) s += off[i] * x[i + 1];
    y[i] = s;
  }
  return y;
}

Eigen::MatrixXd SymTridiag::dense() const {
  const int n = size();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    m(i, i) = diag[i];
    if (i + 1 < n) m(i, i + 1) = m(i + 1, i) = off[i];
  }
  return m;
}

double SymTridiag::norm_inf() const {
  double best = 0.0;
  const int n = size();
  for (int i = 0; i < n; ++i) {
    double row = std::abs(diag[i]);
    if (i > 0) row += std::abs(off[i - 1]);
    if (i + 1 < n) row += std::abs(off[i]);
    best = std::max(best, row);
  }
  return best;
}

// Port of the LAPACK dgtsv elimination; `dl` doubles as the second superdiagonal fill-in.
std::vector<double> solve(const SymTridiag& t, std::span<const double> rhs) {
  const int n = t.size();
  std::vector<double> d = t.diag;
  std::vector<double> dl = t.off;
  std::vector<double> du = t.off;
  std::vector<double> b(rhs.begin(), rhs.end());
  auto singular = [] { throw SingularLplus("tridiagonal matrix is singular"); };

  for (int i = 0; i + 1 < n; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      if (d[i] == 0.0) singular();
      const double fact = dl[i] / d[i];
      d[i + 1] -= fact * du[i];
      b[i + 1] -= fact * b[i];
      dl[i] = 0.0;
    } else {
      const double fact = d[i] / dl[i];
      d[i] = dl[i];
      double temp = d[i + 1];
      d[i + 1] = du[i] - fact * temp;
      if (i + 2 < n) {
        dl[i] = du[i + 1];
        du[i + 1] = -fact * dl[i];
      } else {
        dl[i] = 0.0;
      }
      du[i] = temp;
      temp = b[i];
      b[i] = b[i + 1];
      b[i + 1] = temp - fact * b[i + 1];
    }
  }
  if (n == 0) return b;
  if (d[n - 1] == 0.0) singular();
  b[n - 1] /= d[n - 1];
  if (n > 1) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
  for (int i = n - 3; i >= 0; --i) {
    b[i] = (b[i] - du[i] * b[i + 1] - dl[i] * b[i + 2]) / d[i];
  }
  return b;
}

int count_below(const SymTridiag& t, double shift) {
  const int n = t.size();
  int count = 0;
  double d = 1.0;
  const double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
  for (int i = 0; i < n; ++i) {
    const double b2 = i > 0 ? t.off[i - 1] * t.off[i - 1] : 0.0;
    d = (t.diag[i] - shift) - (i > 0 ? b2 / d : 0.0);
    if (d == 0.0) d = -tiny;
    if (d < 0.0) ++count;
  }
  return count;
}

Inertia inertia(const SymTridiag& t, double zero_tol) {
  Inertia out;
  out.neg = count_below(t, -zero_tol);
  const int upto = count_below(t, zero_tol);
  out.zero = upto - out.neg;
  out.pos = t.size() - upto;
  return out;
}

Inertia inertia(const Eigen::MatrixXd& symmetric, double zero_tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(symmetric, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw EigenFailure("symmetric eigensolver failed");
  Inertia out;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double v = es.eigenvalues()(i);
    if (v < -zero_tol) {
      ++out.neg;
    } else if (v > zero_tol) {
      ++out.pos;
    } else {
      ++out.zero;
    }
  }
  return out;
}

namespace {

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tridiag_solver(const SymTridiag& t, int options) {
  const int n = t.size();
  Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(t.diag.data(), n);
  Eigen::VectorXd e(std::max(n - 1, 0));
  for (int i = 0; i + 1 < n; ++i) e(i) = t.off[i];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(d, e, options);
  if (es.info() != Eigen::Success) throw EigenFailure("tridiagonal eigensolver failed");
  return es;
}

}  // namespace

Eigen::VectorXd eigenvalues(const SymTridiag& t) {
  return tridiag_solver(t, Eigen::EigenvaluesOnly).eigenvalues();
}

void eigensystem(const SymTridiag& t, Eigen::VectorXd& values, Eigen::MatrixXd& vectors) {
  auto es = tridiag_solver(t, Eigen::ComputeEigenvectors);
  values = es.eigenvalues();
  vectors = es.eigenvectors();
}

}  // namespace ilm
