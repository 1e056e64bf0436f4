#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "ilm/codes.hpp"
#include "ilm/spectrum.hpp"

namespace ilm {

enum class ScanMode { TruncatedOnly, FullAtEps };

struct ScanRequest {
  int p = 3;
  int q = 4;
  std::vector<double> deltas;
  int n_min = 1;
  int n_max = 1;
  ScanMode mode = ScanMode::TruncatedOnly;
  double eps = 0.01;  // used by FullAtEps
  unsigned threads = 1;
  int n_limit = 10;
};

struct CodeVerdict {
  Code code;
  Verdict verdict = Verdict::Inconclusive;
  std::string diagnostic;
};

struct ScanRow {
  int N = 0;
  double delta = 0.0;
  std::vector<Code> stable;
  std::vector<Code> inconclusive;
  int total_checked = 0;
  std::vector<CodeVerdict> verdicts;  // every code, in canonical order
};

std::vector<ScanRow> run_scan(const ScanRequest& req);

struct SweepPoint {
  double gamma = 0.0;
  std::vector<std::complex<double>> eigenvalues;  // sorted by real part, then imaginary part
  std::vector<EigenTag> tags;
};

std::vector<SweepPoint> sweep_gamma(const Code& c, int p, int q, std::span<const double> grid);

// n points evenly spaced on [lo, hi].
std::vector<double> linear_grid(double lo, double hi, int n);

std::string scan_csv(const std::vector<ScanRow>& rows);
std::string scan_table(const std::vector<ScanRow>& rows);
std::string sweep_csv(const std::vector<SweepPoint>& points);

// %.17g formatting used by every text output.
std::string fmt17(double x);

}  // namespace ilm
