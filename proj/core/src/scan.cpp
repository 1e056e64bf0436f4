#include "ilm/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <sstream>
#include <thread>

#include "ilm/errors.hpp"
#include "ilm/solver.hpp"

namespace ilm {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

CodeVerdict judge(const Code& c, const RootPair& roots, const ScanRequest& req, double gamma) {
  CodeVerdict out{c, Verdict::Inconclusive, {}};
  try {
    SpectrumReport rep;
    if (req.mode == ScanMode::TruncatedOnly) {
      rep = analyze_truncated(c, roots);
    } else {
      ModelParams prm{req.p, req.q, gamma, req.eps};
      rep = analyze_full(solve_code(c, prm).profile, prm);
    }
    out.verdict = rep.verdict;
    if (rep.verdict == Verdict::Inconclusive && !rep.diagnostics.empty()) out.diagnostic = rep.diagnostics.front();
  } catch (const Error& e) {
    out.verdict = Verdict::Inconclusive;
    out.diagnostic = e.what();
  }
  return out;
}

template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& body) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

std::vector<ScanRow> run_scan(const ScanRequest& req) {
  validate_powers(req.p, req.q);
  if (req.deltas.empty()) throw PreconditionError("scan needs at least one delta");
  for (double d : req.deltas) {
    if (!(d > 0.0 && d < 1.0)) throw PreconditionError("delta values must lie strictly inside (0,1)");
  }
  if (req.n_min < 1 || req.n_max < req.n_min || req.n_max > req.n_limit) {
    throw PreconditionError("code length range must lie within [1, " + std::to_string(req.n_limit) + "]");
  }
  if (req.mode == ScanMode::FullAtEps && !(req.eps > 0.0)) throw PreconditionError("FullAtEps needs eps > 0");

  const double gc = gamma_crit(req.p, req.q);
  std::vector<ScanRow> rows;
  for (int n = req.n_min; n <= req.n_max; ++n) {
    const std::vector<Code> codes = enumerate_irreducible(n, req.n_limit, req.threads);
    for (double delta : req.deltas) {
      const double gamma = delta * gc;
      const RootPair roots = find_roots({req.p, req.q, gamma, 0.0});
      ScanRow row;
      row.N = n;
      row.delta = delta;
      row.total_checked = static_cast<int>(codes.size());
      row.verdicts.resize(codes.size());
      parallel_for(codes.size(), req.threads,
                   [&](std::size_t i) { row.verdicts[i] = judge(codes[i], roots, req, gamma); });
      for (const auto& cv : row.verdicts) {
        if (cv.verdict == Verdict::Stable) row.stable.push_back(cv.code);
        if (cv.verdict == Verdict::Inconclusive) row.inconclusive.push_back(cv.code);
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<SweepPoint> sweep_gamma(const Code& c, int p, int q, std::span<const double> grid) {
  validate_powers(p, q);
  std::vector<SweepPoint> out;
  for (double gamma : grid) {
    const RootPair roots = find_roots({p, q, gamma, 0.0});
    const SpectrumReport rep = analyze_truncated(c, roots);
    std::vector<ClassifiedEigenvalue> ev = rep.eigenvalues;
    std::sort(ev.begin(), ev.end(), [](const auto& x, const auto& y) {
      if (x.lambda.real() != y.lambda.real()) return x.lambda.real() < y.lambda.real();
      return x.lambda.imag() < y.lambda.imag();
    });
    SweepPoint pt;
    pt.gamma = gamma;
    for (const auto& e : ev) {
      pt.eigenvalues.push_back(e.lambda);
      pt.tags.push_back(e.tag);
    }
    out.push_back(std::move(pt));
  }
  return out;
}

std::vector<double> linear_grid(double lo, double hi, int n) {
  if (n < 1) throw PreconditionError("grid needs at least one point");
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) g[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  return g;
}

std::string scan_csv(const std::vector<ScanRow>& rows) {
  std::ostringstream os;
  os << "N,delta,code,verdict\n";
  for (const auto& row : rows) {
    for (const auto& cv : row.verdicts) {
      os << row.N << ',' << fmt17(row.delta) << ",\"" << to_string(cv.code) << "\"," << to_string(cv.verdict)
         << '\n';
    }
  }
  return os.str();
}

std::string scan_table(const std::vector<ScanRow>& rows) {
  std::vector<double> deltas;
  std::vector<int> ns;
  for (const auto& r : rows) {
    if (std::find(deltas.begin(), deltas.end(), r.delta) == deltas.end()) deltas.push_back(r.delta);
    if (std::find(ns.begin(), ns.end(), r.N) == ns.end()) ns.push_back(r.N);
  }
  auto cell_lines = [&](int n, double d) {
    std::vector<std::string> lines;
    for (const auto& r : rows) {
      if (r.N != n || r.delta != d) continue;
      for (const auto& c : r.stable) lines.push_back(family_name(c));
      for (const auto& c : r.inconclusive) lines.push_back(family_name(c) + " *");
    }
    if (lines.empty()) lines.push_back("-");
    return lines;
  };
  std::vector<std::size_t> width(deltas.size(), 0);
  for (std::size_t j = 0; j < deltas.size(); ++j) {
    char head[32];
    std::snprintf(head, sizeof head, "delta=%g", deltas[j]);
    width[j] = std::string(head).size();
    for (int n : ns) {
      for (const auto& l : cell_lines(n, deltas[j])) width[j] = std::max(width[j], l.size());
    }
  }
  std::ostringstream os;
  auto pad = [](const std::string& s, std::size_t w) { return s + std::string(w - s.size(), ' '); };
  auto rule = [&] {
    os << "+----";
    for (auto w : width) os << '+' << std::string(w + 2, '-');
    os << "+\n";
  };
  rule();
  os << "| N  ";
  for (std::size_t j = 0; j < deltas.size(); ++j) {
    char head[32];
    std::snprintf(head, sizeof head, "delta=%g", deltas[j]);
    os << "| " << pad(head, width[j]) << ' ';
  }
  os << "|\n";
  rule();
  for (int n : ns) {
    std::vector<std::vector<std::string>> cells;
    std::size_t height = 0;
    for (double d : deltas) {
      cells.push_back(cell_lines(n, d));
      height = std::max(height, cells.back().size());
    }
    for (std::size_t k = 0; k < height; ++k) {
      os << "| " << (k == 0 ? pad(std::to_string(n), 3) : std::string(3, ' '));
      for (std::size_t j = 0; j < deltas.size(); ++j) {
        const std::string s = k < cells[j].size() ? cells[j][k] : "";
        os << "| " << pad(s, width[j]) << ' ';
      }
      os << "|\n";
    }
    rule();
  }
  os << "* inconclusive (degenerate sigma or multiple zero eigenvalue)\n";
  return os.str();
}

std::string sweep_csv(const std::vector<SweepPoint>& points) {
  std::ostringstream os;
  os << "gamma,index,re,im,tag\n";
  for (const auto& pt : points) {
    for (std::size_t i = 0; i < pt.eigenvalues.size(); ++i) {
      os << fmt17(pt.gamma) << ',' << i << ',' << fmt17(pt.eigenvalues[i].real()) << ','
         << fmt17(pt.eigenvalues[i].imag()) << ',' << to_string(pt.tags[i]) << '\n';
    }
  }
  return os.str();
}

}  // namespace ilm
