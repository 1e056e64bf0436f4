#include "cli.hpp"

#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <ilm/ilm.hpp>

namespace ilm::cli {

namespace {

using nlohmann::json;

constexpr const char* kSchema = "ilm/1";

struct Globals {
  std::string format = "auto";
  std::string out;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

struct ModelOpts {
  int p = 3;
  int q = 4;
  double gamma = 0.2;
  double eps = 0.01;
};

void add_model(CLI::App* sc, ModelOpts& m, bool with_gamma = true, bool with_eps = true) {
  sc->add_option("--p", m.p, "focusing power")->capture_default_str();
  sc->add_option("--q", m.q, "defocusing power")->capture_default_str();
  if (with_gamma) sc->add_option("--gamma", m.gamma, "defocusing strength")->capture_default_str();
  if (with_eps) sc->add_option("--eps", m.eps, "coupling")->capture_default_str();
}

ModelParams params_of(const ModelOpts& m) { return {m.p, m.q, m.gamma, m.eps}; }

json header(const std::string& command) { return json{{"schema", kSchema}, {"command", command}}; }

json profile_json(const LatticeProfile& p) {
  return json{{"offset", p.offset}, {"core_begin", p.core_begin}, {"core_size", p.core_size}, {"values", p.values}};
}

LatticeProfile profile_from_json(const json& j) {
  LatticeProfile p;
  p.offset = j.at("offset").get<int>();
  p.core_begin = j.at("core_begin").get<int>();
  p.core_size = j.at("core_size").get<int>();
  p.values = j.at("values").get<std::vector<double>>();
  return p;
}

json report_json(const SpectrumReport& r) {
  json ev = json::array();
  for (const auto& e : r.eigenvalues) {
    ev.push_back({{"re", e.lambda.real()}, {"im", e.lambda.imag()}, {"tag", to_string(e.tag)}, {"krein", e.krein}});
  }
  return json{{"verdict", to_string(r.verdict)},
              {"eigenvalues", ev},
              {"counts",
               {{"Nc", r.counts.Nc},
                {"Nr_plus", r.counts.Nr_plus},
                {"Nr_minus", r.counts.Nr_minus},
                {"Ni_plus", r.counts.Ni_plus},
                {"Ni_minus", r.counts.Ni_minus}}},
              {"n_Lplus", r.n_Lplus},
              {"n_Lminus", r.n_Lminus},
              {"sigma", {{"value", r.sigma.value}, {"sigma0", r.sigma.sigma0}, {"degenerate", r.sigma.degenerate}}},
              {"zero_mode_check", r.zero_mode_check},
              {"zero_mode_overlap", r.zero_mode_overlap},
              {"identities_hold", r.identities_hold},
              {"diagnostics", r.diagnostics}};
}

std::string report_csv(const SpectrumReport& r) {
  std::ostringstream os;
  os << "index,re,im,tag,krein\n";
  for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) {
    const auto& e = r.eigenvalues[i];
    os << i << ',' << fmt17(e.lambda.real()) << ',' << fmt17(e.lambda.imag()) << ',' << to_string(e.tag) << ','
       << e.krein << '\n';
  }
  return os.str();
}

std::string report_table(const SpectrumReport& r) {
  std::ostringstream os;
  os << "verdict: " << to_string(r.verdict) << '\n';
  os << "n(L+) = " << r.n_Lplus << ", n(L-) = " << r.n_Lminus << ", sigma = " << fmt17(r.sigma.value)
     << (r.sigma.degenerate ? " (degenerate)" : "") << '\n';
  os << "Nc=" << r.counts.Nc << " Nr+=" << r.counts.Nr_plus << " Nr-=" << r.counts.Nr_minus
     << " Ni+=" << r.counts.Ni_plus << " Ni-=" << r.counts.Ni_minus << '\n';
  for (const auto& e : r.eigenvalues) {
    os << "  " << fmt17(e.lambda.real()) << (e.lambda.imag() < 0 ? " - " : " + ") << fmt17(std::abs(e.lambda.imag()))
       << "i  " << to_string(e.tag);
    if (e.krein != 0) os << "  krein " << (e.krein > 0 ? '+' : '-');
    os << '\n';
  }
  for (const auto& d : r.diagnostics) os << "note: " << d << '\n';
  return os.str();
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

int exit_code(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Precondition: return 1;
    case ErrorKind::Domain: return 2;
    case ErrorKind::Numerical: return 3;
  }
  return 3;
}

void check_format(const std::string& f, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (f == a) return;
  }
  throw PreconditionError("format '" + f + "' is not available for this command");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Intrinsic localized modes of lattices with competing power nonlinearities"};
  app.name("ilm");
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value file; keys are command.option or grouped under [command]");
  app.allow_config_extras(false);

  Globals g;
  bool dump_config = false;
  app.add_option("--format", g.format, "json, csv or table (auto picks per command)")
      ->check(CLI::IsMember({"auto", "json", "csv", "table"}))
      ->capture_default_str();
  app.add_option("--out", g.out, "write the result to this file instead of stdout");
  app.add_option("--seed", g.seed, "seed for randomized routines")->capture_default_str();
  app.add_option("--threads", g.threads, "worker threads for scans")->check(CLI::Range(1u, 256u))->capture_default_str();
  app.add_flag("--dump-config", dump_config, "print the effective configuration and exit")->configurable(false);

  std::function<std::string()> action;
  auto fmt_or = [&](const char* dflt) { return g.format == "auto" ? std::string(dflt) : g.format; };

  // roots
  ModelOpts rm;
  rm.eps = 0.0;
  auto* roots = app.add_subcommand("roots", "nonzero roots a < A of the nonlinearity");
  add_model(roots, rm, true, false);
  roots->callback([&] {
    action = [&] {
      const std::string f = fmt_or("json");
      check_format(f, {"json", "csv", "table"});
      const RootPair r = find_roots(params_of(rm));
      if (f == "csv") {
        return "a,A,dfa,dfA,gamma_crit,u_pq\n" + fmt17(r.a) + "," + fmt17(r.A) + "," + fmt17(r.dfa) + "," +
               fmt17(r.dfA) + "," + fmt17(r.gamma_crit) + "," + fmt17(r.u_pq) + "\n";
      }
      if (f == "table") {
        return "a          " + fmt17(r.a) + "\nA          " + fmt17(r.A) + "\nf'(a)      " + fmt17(r.dfa) +
               "\nf'(A)      " + fmt17(r.dfA) + "\ngamma_crit " + fmt17(r.gamma_crit) + "\nu_pq       " +
               fmt17(r.u_pq) + "\n";
      }
      json j = header("roots");
      j.update({{"p", rm.p}, {"q", rm.q}, {"gamma", rm.gamma}, {"a", r.a}, {"A", r.A}, {"dfa", r.dfa},
                {"dfA", r.dfA}, {"gamma_crit", r.gamma_crit}, {"u_pq", r.u_pq}});
      return dump(j);
    };
  });

  // codes
  int codes_n = 1;
  bool count_only = false;
  auto* codes = app.add_subcommand("codes", "irreducible codes of a given length");
  codes->add_option("--n", codes_n, "code length")->required();
  codes->add_flag("--count-only", count_only, "print only the number of codes");
  codes->callback([&] {
    action = [&] {
      if (count_only) return std::to_string(enumerate_irreducible(codes_n, 10, g.threads).size()) + "\n";
      const auto list = enumerate_irreducible(codes_n, 10, g.threads);
      const std::string f = fmt_or("json");
      check_format(f, {"json", "csv", "table"});
      std::ostringstream os;
      if (f == "csv") {
        os << "code,family\n";
        for (const Code& c : list) os << '"' << to_string(c) << "\"," << family_name(c) << '\n';
        return os.str();
      }
      if (f == "table") {
        for (const Code& c : list) os << to_string(c) << "  " << family_name(c) << '\n';
        return os.str();
      }
      json j = header("codes");
      std::vector<std::string> texts;
      for (const Code& c : list) texts.push_back(to_string(c));
      j.update({{"n", codes_n}, {"count", list.size()}, {"codes", texts}});
      return dump(j);
    };
  });

  // solve
  ModelOpts sm;
  std::string solve_code_text;
  NewtonSettings ns;
  auto* solve = app.add_subcommand("solve", "Newton solve of the steady state seeded by a code");
  add_model(solve, sm);
  solve->add_option("--code", solve_code_text, "code, e.g. \"A+,a-\"")->required();
  solve->add_option("--buffer", ns.buffer, "zero sites on each side of the code")->capture_default_str();
  solve->add_option("--tol", ns.tol, "residual tolerance")->capture_default_str();
  solve->callback([&] {
    action = [&] {
      const std::string f = fmt_or("json");
      check_format(f, {"json", "csv"});
      const ModelParams prm = params_of(sm);
      const NewtonResult res = solve_code(parse_code(solve_code_text), prm, ns);
      if (f == "csv") {
        std::ostringstream os;
        os << "n,u_n\n";
        for (int i = 0; i < res.profile.window(); ++i) os << res.profile.offset + i << ',' << fmt17(res.profile.values[i]) << '\n';
        return os.str();
      }
      const Functionals fn = energy_mass(res.profile, prm);
      json j = header("solve");
      j.update({{"code", to_string(parse_code(solve_code_text))}, {"p", sm.p}, {"q", sm.q}, {"gamma", sm.gamma},
                {"eps", sm.eps}, {"iterations", res.iterations}, {"enlargements", res.enlargements},
                {"residual", res.residual_history.back()}, {"H", fn.H}, {"Q", fn.Q}, {"Lambda", fn.Lambda},
                {"profile", profile_json(res.profile)}});
      return dump(j);
    };
  });

  // spectrum
  ModelOpts pm;
  std::string spec_code, profile_file;
  bool truncated = false;
  auto* spectrum = app.add_subcommand("spectrum", "linear stability of a code or a solved profile");
  add_model(spectrum, pm);
  auto* code_opt = spectrum->add_option("--code", spec_code, "code to analyse");
  auto* file_opt = spectrum->add_option("--profile-file", profile_file, "JSON written by the solve command")
                       ->check(CLI::ExistingFile);
  code_opt->excludes(file_opt);
  spectrum->add_flag("--truncated", truncated, "use the N x N truncated problem at eps -> 0");
  spectrum->callback([&] {
    action = [&] {
      const std::string f = fmt_or("json");
      check_format(f, {"json", "csv", "table"});
      SpectrumReport rep;
      json extra = json::object();
      ModelParams prm = params_of(pm);
      if (!profile_file.empty()) {
        if (truncated) throw PreconditionError("--truncated needs --code, not a profile file");
        std::ifstream in(profile_file);
        const json pj = json::parse(in);
        // Model parameters stored with the profile apply unless given on the command line.
        if (spectrum->count("--p") == 0 && pj.contains("p")) prm.p = pj.at("p").get<int>();
        if (spectrum->count("--q") == 0 && pj.contains("q")) prm.q = pj.at("q").get<int>();
        if (spectrum->count("--gamma") == 0 && pj.contains("gamma")) prm.gamma = pj.at("gamma").get<double>();
        if (spectrum->count("--eps") == 0 && pj.contains("eps")) prm.eps = pj.at("eps").get<double>();
        rep = analyze_full(profile_from_json(pj.at("profile")), prm);
      } else {
        if (spec_code.empty()) throw PreconditionError("spectrum needs --code or --profile-file");
        const Code c = parse_code(spec_code);
        if (truncated) {
          const RootPair r = find_roots(prm);
          rep = analyze_truncated(c, r);
          try {
            const PredictedInertia pi = predict_inertia(c, r);
            extra["predicted_inertia"] = {{"neg", pi.neg}, {"zero", pi.zero}, {"pos", pi.pos}, {"family", pi.family}};
          } catch (const NotApplicable&) {
          }
          try {
            const TheoremCheck tc = theorem_conditions(c, r);
            extra["condition"] = {{"name", std::string(1, tc.condition)},
                                  {"value", tc.value},
                                  {"holds", tc.holds},
                                  {"prediction", tc.prediction}};
          } catch (const NotApplicable&) {
          }
        } else {
          rep = analyze_full(solve_code(c, prm).profile, prm);
        }
        extra["code"] = to_string(c);
      }
      if (f == "csv") return report_csv(rep);
      if (f == "table") return report_table(rep);
      json j = header("spectrum");
      j.update({{"p", prm.p}, {"q", prm.q}, {"gamma", prm.gamma}, {"eps", truncated ? 0.0 : prm.eps},
                {"truncated", truncated}});
      j.update(extra);
      j.update(report_json(rep));
      return dump(j);
    };
  });

  // branch
  ModelOpts bm;
  std::string branch_code;
  double eps_max = 0.3;
  double step = 1e-3;
  ContinuationSettings cs;
  auto* branch = app.add_subcommand("branch", "pseudo-arclength continuation in eps");
  add_model(branch, bm, true, false);
  branch->add_option("--code", branch_code, "code at the anticontinuum limit")->required();
  branch->add_option("--eps-max", eps_max, "stop once eps exceeds this")->capture_default_str();
  branch->add_option("--step", step, "starting eps and initial arclength step")->capture_default_str();
  branch->add_option("--step-max", cs.step_max, "largest arclength step")->capture_default_str();
  branch->add_option("--max-steps", cs.max_steps, "step budget")->capture_default_str();
  branch->callback([&] {
    action = [&] {
      const std::string f = fmt_or("json");
      check_format(f, {"json", "csv"});
      const Code c = parse_code(branch_code);
      const Branch br = continue_branch(c, params_of(bm), eps_max, step, cs);
      if (f == "csv") {
        std::ostringstream os;
        os << "s,eps,Q,H,verdict,jac_neg,deps_ds\n";
        for (const auto& p : br.points) {
          os << fmt17(p.s) << ',' << fmt17(p.eps) << ',' << fmt17(p.Q) << ',' << fmt17(p.H) << ','
             << to_string(p.verdict) << ',' << p.jac_neg << ',' << fmt17(p.deps_ds) << '\n';
        }
        return os.str();
      }
      json ev = json::array();
      for (const auto& e : br.events) {
        ev.push_back({{"kind", to_string(e.kind)}, {"eps", e.eps_at}, {"detail", e.detail}, {"after_point", e.after_point}});
      }
      json j = header("branch");
      j.update({{"code", to_string(c)}, {"p", bm.p}, {"q", bm.q}, {"gamma", bm.gamma}, {"points", br.points.size()},
                {"eps_last", br.points.back().eps}, {"termination", br.termination}, {"events", ev}});
      if (!br.endpoint_code.empty()) j["endpoint_code"] = br.endpoint_code;
      return dump(j);
    };
  });

  // scan
  ScanRequest sr;
  sr.deltas = {0.2, 0.4, 0.6, 0.96, 0.996};
  int scan_n = 0;
  std::string scan_mode = "truncated";
  auto* scan = app.add_subcommand("scan", "classify every irreducible code over a (N, delta) grid");
  scan->add_option("--p", sr.p, "focusing power")->capture_default_str();
  scan->add_option("--q", sr.q, "defocusing power")->capture_default_str();
  scan->add_option("--delta", sr.deltas, "gamma / gamma_crit values")->capture_default_str();
  scan->add_option("--n", scan_n, "single code length (overrides --n-min/--n-max)");
  scan->add_option("--n-min", sr.n_min, "shortest code length")->capture_default_str();
  scan->add_option("--n-max", sr.n_max, "longest code length")->capture_default_str();
  scan->add_option("--mode", scan_mode, "truncated or full")
      ->check(CLI::IsMember({"truncated", "full"}))
      ->capture_default_str();
  scan->add_option("--eps", sr.eps, "coupling for --mode full")->capture_default_str();
  scan->callback([&] {
    action = [&] {
      const std::string f = fmt_or("json");
      check_format(f, {"json", "csv", "table"});
      if (scan_n > 0) sr.n_min = sr.n_max = scan_n;
      sr.mode = scan_mode == "full" ? ScanMode::FullAtEps : ScanMode::TruncatedOnly;
      sr.threads = g.threads;
      const auto rows = run_scan(sr);
      if (f == "csv") return scan_csv(rows);
      if (f == "table") return scan_table(rows);
      json jr = json::array();
      for (const auto& r : rows) {
        std::vector<std::string> st, inc;
        for (const Code& c : r.stable) st.push_back(to_string(c));
        for (const Code& c : r.inconclusive) inc.push_back(to_string(c));
        jr.push_back({{"N", r.N}, {"delta", r.delta}, {"total_checked", r.total_checked}, {"stable", st},
                      {"inconclusive", inc}});
      }
      json j = header("scan");
      j.update({{"p", sr.p}, {"q", sr.q}, {"mode", scan_mode}, {"rows", jr}});
      if (sr.mode == ScanMode::FullAtEps) j["eps"] = sr.eps;
      return dump(j);
    };
  });

  // sweep
  int sw_p = 3, sw_q = 4, sw_points = 40;
  double sw_lo = 0.005, sw_hi = 0.999;
  std::string sw_code;
  auto* sweep = app.add_subcommand("sweep", "truncated eigenvalues of one code along a gamma grid");
  sweep->add_option("--p", sw_p, "focusing power")->capture_default_str();
  sweep->add_option("--q", sw_q, "defocusing power")->capture_default_str();
  sweep->add_option("--code", sw_code, "code to follow")->required();
  sweep->add_option("--points", sw_points, "grid size")->capture_default_str();
  sweep->add_option("--delta-lo", sw_lo, "first grid point as a fraction of gamma_crit")->capture_default_str();
  sweep->add_option("--delta-hi", sw_hi, "last grid point as a fraction of gamma_crit")->capture_default_str();
  sweep->callback([&] {
    action = [&] {
      const std::string f = fmt_or("csv");
      check_format(f, {"json", "csv"});
      if (!(sw_lo > 0.0 && sw_hi < 1.0 && sw_lo <= sw_hi)) throw PreconditionError("need 0 < delta-lo <= delta-hi < 1");
      const double gc = gamma_crit(sw_p, sw_q);
      const auto pts = sweep_gamma(parse_code(sw_code), sw_p, sw_q, linear_grid(sw_lo * gc, sw_hi * gc, sw_points));
      if (f == "csv") return sweep_csv(pts);
      json jp = json::array();
      for (const auto& p : pts) {
        json ev = json::array();
        for (std::size_t i = 0; i < p.eigenvalues.size(); ++i) {
          ev.push_back({{"re", p.eigenvalues[i].real()}, {"im", p.eigenvalues[i].imag()}, {"tag", to_string(p.tags[i])}});
        }
        jp.push_back({{"gamma", p.gamma}, {"eigenvalues", ev}});
      }
      json j = header("sweep");
      j.update({{"code", sw_code}, {"p", sw_p}, {"q", sw_q}, {"points", jp}});
      return dump(j);
    };
  });

  // evolve
  ModelOpts em;
  std::string ev_code;
  double t_max = 50.0, dt = 1e-3, rel = 1e-3;
  EvolveSettings es;
  auto* evolve_cmd = app.add_subcommand("evolve", "time evolution of a solved profile, optionally perturbed");
  add_model(evolve_cmd, em);
  evolve_cmd->add_option("--code", ev_code, "code of the stationary state")->required();
  evolve_cmd->add_option("--t-max", t_max, "final time")->capture_default_str();
  evolve_cmd->add_option("--dt", dt, "time step")->capture_default_str();
  evolve_cmd->add_option("--perturb", rel, "relative size of the random perturbation (0 for none)")->capture_default_str();
  evolve_cmd->add_option("--sample-every", es.sample_every, "steps between recorded samples")->capture_default_str();
  evolve_cmd->callback([&] {
    action = [&] {
      const std::string f = fmt_or("csv");
      check_format(f, {"json", "csv"});
      const ModelParams prm = params_of(em);
      const LatticeProfile prof = solve_code(parse_code(ev_code), prm).profile;
      const CVec init = rel > 0.0 ? perturb(prof, rel, g.seed) : to_complex(prof);
      const EvolutionSeries s = evolve(init, prm, t_max, dt, es);
      if (f == "csv") {
        std::ostringstream os;
        os << "t,Q,H,deviation\n";
        for (const auto& x : s.samples) os << fmt17(x.t) << ',' << fmt17(x.Q) << ',' << fmt17(x.H) << ',' << fmt17(x.deviation) << '\n';
        return os.str();
      }
      json j = header("evolve");
      json rate = nullptr;
      try {
        rate = growth_rate(s);
      } catch (const NotGrowing&) {
      }
      json samples = json::array();
      for (const auto& x : s.samples) samples.push_back({{"t", x.t}, {"Q", x.Q}, {"H", x.H}, {"deviation", x.deviation}});
      j.update({{"code", ev_code}, {"p", em.p}, {"q", em.q}, {"gamma", em.gamma}, {"eps", em.eps}, {"seed", g.seed},
                {"perturb", rel}, {"norm0", s.norm0}, {"diverged", s.diverged},
                {"boundary_warning", s.boundary_warning}, {"growth_rate", rate}, {"samples", samples}});
      return dump(j);
    };
  });

  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 1;
  }

  if (dump_config) {
    out << app.config_to_str(true, false);
    return 0;
  }

  try {
    const std::string text = action();
    if (g.out.empty()) {
      out << text;
    } else {
      std::ofstream f(g.out, std::ios::binary);
      if (!f) throw PreconditionError("cannot open output file " + g.out);
      f << text;
    }
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e);
  } catch (const json::exception& e) {
    err << "error: bad profile file: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace ilm::cli
