// Acceptance checks: one PASS/FAIL line per criterion. Exit status is the number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <ilm/ilm.hpp>

#include "oracles.hpp"
#include "paper_tables.hpp"

using namespace ilm;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

Code random_code(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> d(0, 3);
  std::vector<Symbol> s(static_cast<std::size_t>(n));
  for (auto& x : s) x = static_cast<Symbol>(d(rng));
  return Code(s);
}

std::set<Code> canon_set(const std::vector<Code>& codes) {
  std::set<Code> s;
  for (const Code& c : codes) s.insert(canonicalize(c));
  return s;
}

// ---------------------------------------------------------------------------

Outcome c1_gamma_crit() {
  const double g34 = 2.0 / (3.0 * std::sqrt(3.0));
  const bool ok = gamma_crit(2, 3) == 0.25 && gamma_crit(3, 5) == 0.25 &&
                  std::abs(gamma_crit(3, 4) - g34) < 1e-12;
  return {ok, "gamma(2,3)=" + fmt17(gamma_crit(2, 3)) + " gamma(3,5)=" + fmt17(gamma_crit(3, 5)) +
                  " |gamma(3,4)-2/(3 sqrt 3)|=" + fmt("%.2e", std::abs(gamma_crit(3, 4) - g34))};
}

Outcome c2_roots() {
  const RootPair r35 = find_roots({3, 5, 0.2, 0.0});
  const RootPair r23 = find_roots({2, 3, 0.125, 0.0});
  const double e1 = std::abs(r35.a * r35.a - (5 - std::sqrt(5.0)) / 2);
  const double e2 = std::abs(r35.A * r35.A - (5 + std::sqrt(5.0)) / 2);
  const double e3 = std::abs(r23.a - (4 - 2 * std::sqrt(2.0)));
  const double e4 = std::abs(r23.A - (4 + 2 * std::sqrt(2.0)));
  const double worst = std::max({e1, e2, e3, e4});
  return {worst < 1e-10, "max error " + fmt("%.2e", worst)};
}

Outcome c3_counts() {
  const std::size_t n1 = enumerate_irreducible(1).size();
  const std::size_t n2 = enumerate_irreducible(2).size();
  const std::size_t n3 = enumerate_irreducible(3).size();
  bool even_ok = true;
  std::string even;
  for (int n = 2; n <= 10; n += 2) {
    const std::size_t e = enumerate_irreducible(n, 10, 4).size();
    even_ok = even_ok && e == count_irreducible(n);
    even += " N=" + std::to_string(n) + ":" + std::to_string(e);
  }
  const bool small_ok = n1 == 2 && n2 == 6 && n3 == 18;
  std::string d = "enumerated N=1,2,3 -> " + std::to_string(n1) + "," + std::to_string(n2) + "," +
                  std::to_string(n3) + " (required 2,6,18); even N closed form agrees:" + (even_ok ? "yes" : "no") +
                  even + "; N=3 closed form " + std::to_string(count_irreducible(3)) + ", Burnside " +
                  std::to_string(oracle::burnside_count(3));
  return {small_ok && even_ok, d};
}

Outcome c4_two_by_two() {
  const RootPair r = find_roots({3, 4, 0.2, 0.0});
  struct Case {
    const char* code;
    double nonzero;
    Verdict verdict;
  };
  double worst = 0.0;
  bool verdicts = true;
  std::string d;
  for (const Case& k : {Case{"a+,a-", -2 * r.dfa, Verdict::Stable}, Case{"A+,A+", 2 * r.dfA, Verdict::Stable},
                        Case{"A+,A-", -2 * r.dfA, Verdict::Unstable}}) {
    const Code c = parse_code(k.code);
    const EigenSystem e = truncated_eigs(build_truncated(c, r));
    std::vector<double> got{e.values(0).real(), e.values(1).real()};
    std::vector<double> want{0.0, k.nonzero};
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    for (int i = 0; i < 2; ++i) worst = std::max({worst, std::abs(got[i] - want[i]), std::abs(e.values(i).imag())});
    const Verdict v = analyze_truncated(c, r).verdict;
    verdicts = verdicts && v == k.verdict;
    d += std::string(" (") + k.code + ")=" + to_string(v);
  }
  return {worst < 1e-12 && verdicts, "max error " + fmt("%.2e", worst) + ";" + d};
}

Outcome c5_inertia() {
  const RootPair r = find_roots({3, 4, 0.5 * gamma_crit(3, 4), 0.0});
  std::mt19937_64 rng(20240501);
  std::uniform_int_distribution<int> len(1, 8);
  int pass = 0;
  for (int t = 0; t < 200; ++t) {
    const Code c = random_code(rng, len(rng));
    const int n = c.size(), f = flips(c), k = small_count(c);
    const TruncatedPencil p = build_truncated(c, r);
    if (inertia(p.Lm_t, 1e-10) == Inertia{f, 1, n - f - 1} && inertia(p.Lp_t, 1e-10) == Inertia{k, 0, n - k}) ++pass;
  }
  return {pass == 200, std::to_string(pass) + "/200 codes"};
}

Outcome c6_identities() {
  const ModelParams prm{3, 4, 0.5 * gamma_crit(3, 4), 0.01};
  int checked = 0, held = 0, degenerate = 0;
  std::string first_bad;
  for (int n = 1; n <= 5; ++n) {
    for (const Code& c : enumerate_irreducible(n)) {
      SpectrumReport rep;
      try {
        rep = analyze_full(solve_code(c, prm).profile, prm);
      } catch (const Error& e) {
        if (first_bad.empty()) first_bad = to_string(c) + ": " + e.what();
        ++checked;
        continue;
      }
      if (rep.sigma.degenerate) {
        ++degenerate;
        continue;
      }
      ++checked;
      if (rep.identities_hold) {
        ++held;
      } else if (first_bad.empty()) {
        first_bad = to_string(c) + (rep.diagnostics.empty() ? "" : ": " + rep.diagnostics.front());
      }
    }
  }
  std::string d = std::to_string(held) + "/" + std::to_string(checked) + " non-degenerate codes, " +
                  std::to_string(degenerate) + " degenerate skipped";
  if (!first_bad.empty()) d += "; first failure " + first_bad;
  return {checked > 0 && held == checked, d};
}

Outcome c7_scaling() {
  const Code c = parse_code("A+,A+");
  const ModelParams base{3, 4, 0.2, 0.0};
  const RootPair r = find_roots(base);
  const double lt = 2 * r.dfA;
  std::vector<double> err;
  for (double eps : {1e-2, 5e-3}) {
    ModelParams prm = base;
    prm.eps = eps;
    const SpectrumReport rep = analyze_full(solve_code(c, prm).profile, prm);
    double best = 1e300;
    for (const auto& e : rep.eigenvalues) {
      if (e.tag == EigenTag::Zero) continue;
      const double d = std::abs(e.lambda / eps - lt);
      best = std::min(best, d);
    }
    err.push_back(best);
  }
  const double ratio = err[0] / err[1];
  return {ratio > 1.6 && ratio < 2.4,
          "err(1e-2)=" + fmt("%.4e", err[0]) + " err(5e-3)=" + fmt("%.4e", err[1]) + " ratio " + fmt("%.4f", ratio)};
}

Outcome c8_sigma35() {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> g(0.01, 0.24);
  std::uniform_int_distribution<int> half(1, 5);
  double worst_sigma = 0.0, worst_sum = 0.0;
  for (int gi = 0; gi < 10; ++gi) {
    const double gam = g(rng);
    const RootPair r = find_roots({3, 5, gam, 0.0});
    worst_sum = std::max(worst_sum, std::abs(r.a * r.a + r.A * r.A - 1.0 / gam));
    for (int t = 0; t < 50; ++t) {
      const int k = half(rng);
      std::vector<Symbol> s;
      for (int i = 0; i < k; ++i) s.push_back(rng() & 1 ? Symbol::SmallPlus : Symbol::SmallMinus);
      for (int i = 0; i < k; ++i) s.push_back(rng() & 1 ? Symbol::LargePlus : Symbol::LargeMinus);
      std::shuffle(s.begin(), s.end(), rng);
      worst_sigma = std::max(worst_sigma, std::abs(sigma_quantity(Code(s), r).value));
    }
  }
  return {worst_sigma < 1e-12 && worst_sum < 1e-12,
          "max |sigma| " + fmt("%.2e", worst_sigma) + ", max |a^2+A^2-1/gamma| " + fmt("%.2e", worst_sum)};
}

Outcome c9_tables() {
  int cells = 0, matched = 0;
  std::string first_bad;
  auto check_table = [&](int p, int q, const std::vector<tables::Cell>& table) {
    int n_max = 0;
    for (const auto& cell : table) n_max = std::max(n_max, cell.n);
    ScanRequest req;
    req.p = p;
    req.q = q;
    req.deltas = tables::deltas();
    req.n_min = 1;
    req.n_max = n_max;
    req.threads = 4;
    const auto rows = run_scan(req);
    for (const auto& cell : table) {
      const auto row = std::find_if(rows.begin(), rows.end(),
                                    [&](const ScanRow& r) { return r.N == cell.n && r.delta == cell.delta; });
      std::set<Code> want;
      for (const auto& e : cell.stable) want.insert(canonicalize(tables::expand_entry(e, cell.n)));
      const auto got = canon_set(row->stable);
      const bool ok = cell.complete ? got == want : std::includes(got.begin(), got.end(), want.begin(), want.end());
      ++cells;
      if (ok) {
        ++matched;
      } else if (first_bad.empty()) {
        first_bad = "(" + std::to_string(p) + "," + std::to_string(q) + ") N=" + std::to_string(cell.n) +
                    " delta=" + fmt("%g", cell.delta);
      }
    }
  };
  check_table(2, 3, tables::table_23());
  check_table(3, 4, tables::table_34());

  int red = 0, red_ok = 0;
  ScanRequest req;
  req.p = 3;
  req.q = 5;
  req.deltas = tables::deltas();
  for (const auto& [n, entry] : tables::red_35()) {
    const Code c = canonicalize(tables::expand_entry(entry, n));
    for (double d : req.deltas) {
      const RootPair r = find_roots({3, 5, d * 0.25, 0.0});
      ++red;
      if (analyze_truncated(c, r).verdict == Verdict::Inconclusive) {
        ++red_ok;
      } else if (first_bad.empty()) {
        first_bad = "(3,5) " + entry + " delta=" + fmt("%g", d) + " not inconclusive";
      }
    }
  }
  std::string d = std::to_string(matched) + "/" + std::to_string(cells) + " table cells, " + std::to_string(red_ok) +
                  "/" + std::to_string(red) + " red (code, delta) pairs inconclusive";
  if (!first_bad.empty()) d += "; first mismatch " + first_bad;
  return {matched == cells && red_ok == red, d};
}

Outcome c10_sweeps() {
  const int pts = 40;
  auto grid_for = [&](int p, int q) {
    const double gc = gamma_crit(p, q);
    return linear_grid(0.005 * gc, 0.999 * gc, pts);
  };
  const Code a55 = expand_stacked({5, 5, StackedCode::Variant::Plus});
  const Code a54 = expand_stacked({5, 4, StackedCode::Variant::Minus});
  auto has_tag = [](const SweepPoint& p, EigenTag t) {
    return std::find(p.tags.begin(), p.tags.end(), t) != p.tags.end();
  };

  const auto s34 = sweep_gamma(a55, 3, 4, grid_for(3, 4));
  int neg34 = 0;
  for (const auto& p : s34) neg34 += has_tag(p, EigenTag::RealNegative);

  const auto s36 = sweep_gamma(a55, 3, 6, grid_for(3, 6));
  int neg36_top = 0;
  for (int i = pts - pts / 10; i < pts; ++i) neg36_top += has_tag(s36[i], EigenTag::RealNegative);

  const auto m34 = sweep_gamma(a54, 3, 4, grid_for(3, 4));
  int complex_mid = 0;
  for (int i = 1; i + 1 < pts; ++i) complex_mid += has_tag(m34[i], EigenTag::Complex);
  const bool ends_real = !has_tag(m34.front(), EigenTag::Complex) && !has_tag(m34.back(), EigenTag::Complex);

  const bool ok = neg34 == pts && neg36_top == 0 && complex_mid > 0 && ends_real;
  return {ok, "A+(5,5) (3,4) negative at " + std::to_string(neg34) + "/" + std::to_string(pts) +
                  "; (3,6) negative on top 10%: " + std::to_string(neg36_top) + "; A-(5,4) complex at " +
                  std::to_string(complex_mid) + " interior points, extremes real: " + (ends_real ? "yes" : "no")};
}

Outcome c11_bifurcations() {
  const Code c = parse_code("A+,a-");
  auto first_event = [&](double gam, BifurcationEvent::Kind want, double& at) {
    const Branch br = continue_branch(c, {3, 4, gam, 0.0}, 0.3, 1e-3);
    for (const auto& ev : br.events) {
      if (ev.kind == want) {
        at = ev.eps_at;
        return true;
      }
    }
    at = br.events.empty() ? -1.0 : br.events.front().eps_at;
    return false;
  };
  double fold = 0.0, pitch = 0.0;
  const bool has_fold = first_event(0.12, BifurcationEvent::Kind::Fold, fold);
  const bool has_pitch = first_event(0.22, BifurcationEvent::Kind::Pitchfork, pitch);
  const bool ok = has_fold && std::abs(fold - 0.105) <= 0.01 && has_pitch && std::abs(pitch - 0.099) <= 0.01;
  std::string d = std::string("gamma=0.12: ") + (has_fold ? "fold at eps=" : "no fold; first event at ") +
                  fmt("%.6f", fold) + " (target 0.105+-0.01); gamma=0.22: " +
                  (has_pitch ? "pitchfork at eps=" : "no pitchfork; first event at ") + fmt("%.6f", pitch) +
                  " (target 0.099+-0.01)";
  return {ok, d};
}

Outcome c12_dynamics() {
  const ModelParams prm{3, 4, 0.2, 0.01};
  const double t_max = 50.0, dt = 1e-3;

  const auto st = solve_code(parse_code("A+,A+"), prm);
  const auto s0 = evolve(to_complex(st.profile), prm, t_max, dt);
  double dev = 0.0, qd = 0.0;
  for (const auto& x : s0.samples) {
    dev = std::max(dev, x.deviation / s0.norm0);
    qd = std::max(qd, std::abs(x.Q - s0.samples[0].Q) / s0.samples[0].Q);
  }
  const bool stationary = dev < 1e-6 && qd < 1e-6;

  const auto un = solve_code(parse_code("A+,A-"), prm);
  const SpectrumReport rep = analyze_full(un.profile, prm);
  double im_omega = 0.0;
  for (const auto& e : rep.eigenvalues) im_omega = std::max(im_omega, std::abs(std::sqrt(e.lambda).imag()));
  double rate = 0.0;
  bool rate_ok = false;
  try {
    rate = growth_rate(evolve(perturb(un.profile, 1e-3, 1), prm, t_max, dt));
    rate_ok = rate > 0.5 * im_omega && rate < 2.0 * im_omega;
  } catch (const NotGrowing&) {
    rate = 0.0;
  }

  const auto sb = solve_code(parse_code("a+,a-"), prm);
  const auto s2 = evolve(perturb(sb.profile, 1e-3, 1), prm, t_max, dt);
  double bdev = 0.0;
  for (const auto& x : s2.samples) bdev = std::max(bdev, x.deviation / s2.norm0);
  const bool bounded = !s2.diverged && bdev < 1e-2;

  return {stationary && rate_ok && bounded,
          "stationary dev " + fmt("%.2e", dev) + " Q drift " + fmt("%.2e", qd) + "; (A+,A-) rate " +
              fmt("%.5f", rate) + " vs max Im omega " + fmt("%.5f", im_omega) + "; (a+,a-) max dev " +
              fmt("%.2e", bdev)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"critical coupling closed forms", c1_gamma_crit},
      {"roots against closed forms", c2_roots},
      {"irreducible code counts", c3_counts},
      {"2x2 truncated spectra and verdicts", c4_two_by_two},
      {"Sturm and symbol inertia laws", c5_inertia},
      {"index count identities, full problem", c6_identities},
      {"eigenvalue scaling in eps", c7_scaling},
      {"balanced (3,5) codes have zero sigma", c8_sigma35},
      {"stable-code tables", c9_tables},
      {"eigenvalue sweeps in gamma", c10_sweeps},
      {"fold and pitchfork locations", c11_bifurcations},
      {"time evolution", c12_dynamics},
  };
  int failures = 0;
  int idx = 0;
  for (const auto& [name, fn] : criteria) {
    ++idx;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failures += !o.pass;
    std::printf("%s %2d %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", idx, name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
