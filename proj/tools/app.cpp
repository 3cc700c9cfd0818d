#include "app.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "problem_file.hpp"
#include "robustab/homotopy.hpp"
#include "robustab/interval.hpp"
#include "robustab/oracle.hpp"
#include "robustab/roots.hpp"
#include "svg.hpp"

namespace robustab::cli {

namespace {

using ojson = nlohmann::ordered_json;

struct Globals {
  bool json = false;
  bool quiet = false;
  std::optional<std::uint64_t> seed;
};

std::string fixed2(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  std::string s = buf;
  return s == "-0.00" ? "0.00" : s;
}

std::string g17(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw SchemaError("cannot write '" + path + "'");
  f << content;
  f.close();
  if (!f) throw SchemaError("failed writing '" + path + "'");
}

ojson coeffs_json(const RealPolynomial& p) {
  ojson a = ojson::array();
  for (double c : trimmed_coeffs(p)) a.push_back(c);
  return a;
}

std::optional<RootSet> roots_or_none(const RealPolynomial& p) {
  if (p.is_zero() || *p.degree() == 0) return std::nullopt;
  return all_roots(p);
}

std::string roots_line(const std::optional<RootSet>& roots, const RealPolynomial& p) {
  if (p.is_zero()) return "zero polynomial";
  if (!roots) return "none (constant)";
  std::string s;
  for (const auto& r : roots->roots) {
    if (!s.empty()) s += ", ";
    s += format_root(r.location);
    if (r.multiplicity > 1) s += " (x" + std::to_string(r.multiplicity) + ")";
  }
  return s;
}

ojson roots_json(const std::optional<RootSet>& roots) {
  ojson a = ojson::array();
  if (!roots) return a;
  for (const auto& r : roots->roots) {
    a.push_back({{"re", r.location.real()}, {"im", r.location.imag()}, {"multiplicity", r.multiplicity}});
  }
  return a;
}

ojson verdict_json(const StabilityVerdict& v) {
  ojson j;
  j["status"] = std::string(to_string(v.status));
  j["method"] = std::string(to_string(v.method));
  if (v.witness_root) j["witness_root"] = {v.witness_root->real(), v.witness_root->imag()};
  if (v.witness_index) j["witness_index"] = *v.witness_index;
  return j;
}

int status_exit(const StabilityVerdict& v) { return v.stable() ? kExitStable : kExitUnstable; }

std::string cert_path_beside(const std::string& input) {
  std::filesystem::path p(input);
  p.replace_extension(".cert.json");
  return p.string();
}

// ---- check ---------------------------------------------------------------

ojson certificate_json(const Problem& prob, const KharitonovVerdict& kv, const std::array<std::optional<RootSet>, 4>& roots) {
  ojson c;
  c["tool"] = "robustab";
  c["version"] = kVersion;
  c["input_digest"] = input_digest(prob);
  c["input"] = problem_to_json(prob);
  c["verdict"] = std::string(to_string(kv.verdict.status));
  c["degree_drop"] = prob.box.degree_drop();
  c["negated"] = kv.negated;
  ojson ks = ojson::array();
  for (std::size_t j = 0; j < 4; ++j) {
    ojson k;
    k["name"] = "k" + std::to_string(j + 1);
    k["coefficients"] = coeffs_json(kv.quad.k[j]);
    k["verdict"] = verdict_json(kv.per_poly[j]);
    k["roots"] = roots_json(roots[j]);
    ks.push_back(std::move(k));
  }
  c["kharitonov"] = std::move(ks);
  if (!kv.verdict.stable()) {
    ojson w;
    if (kv.failing_index) w["kharitonov_index"] = *kv.failing_index + 1;
    if (kv.witness_member) w["member"] = coeffs_json(*kv.witness_member);
    if (kv.verdict.witness_root) w["root"] = {kv.verdict.witness_root->real(), kv.verdict.witness_root->imag()};
    c["witness"] = std::move(w);
  }
  return c;
}

int cmd_check(const Globals& g, const std::string& file, const std::string& cert_out, std::ostream& out) {
  const Problem prob = load_problem(file);
  const KharitonovVerdict kv = kharitonov_test(prob.box);
  std::array<std::optional<RootSet>, 4> roots;
  for (std::size_t j = 0; j < 4; ++j) roots[j] = roots_or_none(kv.quad.k[j]);

  if (!g.quiet) {
    out << "robustab " << kVersion << " certificate\n";
    out << "input    " << file << " (" << input_digest(prob) << ")\n";
    out << "order    " << prob.box.order() << (prob.box.degree_drop() ? " (degree drop)" : " (degree invariant)") << "\n";
    if (kv.negated) out << "note     leading upper bound is not positive; the test ran on -P\n";
    for (std::size_t j = 0; j < 4; ++j) {
      out << "k" << j + 1 << " = " << to_string(kv.quad.k[j]) << "\n";
      out << "     " << to_string(kv.per_poly[j].status) << " (" << to_string(kv.per_poly[j].method)
          << "); roots: " << roots_line(roots[j], kv.quad.k[j]) << "\n";
    }
    if (kv.verdict.stable()) {
      out << "verdict  STABLE: all four Kharitonov polynomials are Hurwitz stable, so every member of the box is Hurwitz stable\n";
    } else {
      out << "verdict  " << to_string(kv.verdict.status) << ": ";
      if (kv.failing_index) out << "k" << *kv.failing_index + 1 << " is not Hurwitz stable";
      else out << "the box contains the zero polynomial";
      if (kv.verdict.witness_root) out << " (witness root " << format_root(*kv.verdict.witness_root) << ")";
      out << "\n";
    }
  }

  std::string path = cert_out;
  if (path.empty() && g.json) path = cert_path_beside(file);
  if (!path.empty()) {
    write_file(path, certificate_json(prob, kv, roots).dump(2) + "\n");
    if (!g.quiet) out << "certificate written to " << path << "\n";
  }
  return status_exit(kv.verdict);
}

// ---- kpolys --------------------------------------------------------------

int cmd_kpolys(const Globals& g, const std::string& file, std::ostream& out) {
  const Problem prob = load_problem(file);
  const KharitonovQuad q = kharitonov_polys(prob.box);
  if (g.json) {
    ojson j;
    for (std::size_t i = 0; i < 4; ++i) j["k" + std::to_string(i + 1)] = coeffs_json(q.k[i]);
    j["h_minus"] = coeffs_json(q.h_minus);
    j["h_plus"] = coeffs_json(q.h_plus);
    j["g_minus"] = coeffs_json(q.g_minus);
    j["g_plus"] = coeffs_json(q.g_plus);
    out << j.dump(2) << "\n";
  } else if (!g.quiet) {
    for (std::size_t i = 0; i < 4; ++i) out << "k" << i + 1 << " = " << to_string(q.k[i]) << "\n";
    out << "h-(w) = " << to_string(q.h_minus, "w") << "\n";
    out << "h+(w) = " << to_string(q.h_plus, "w") << "\n";
    out << "g-(w) = " << to_string(q.g_minus, "w") << "\n";
    out << "g+(w) = " << to_string(q.g_plus, "w") << "\n";
  }
  return kExitStable;
}

// ---- rect ----------------------------------------------------------------

std::string sweep_csv(const std::vector<RectangleSample>& samples) {
  std::string csv = "omega,h_minus,h_plus,g_minus,g_plus,contains_zero\r\n";
  for (const auto& s : samples) {
    csv += g17(s.omega) + "," + g17(s.h_minus) + "," + g17(s.h_plus) + "," + g17(s.g_minus) + "," + g17(s.g_plus) + "," +
           (s.contains_zero ? "1" : "0") + "\r\n";
  }
  return csv;
}

int cmd_rect(const Globals& g, const std::string& file, std::optional<double> omega_max, std::optional<int> steps,
             const std::string& svg_path, const std::string& csv_path, std::ostream& out) {
  const Problem prob = load_problem(file);
  const double w_max = omega_max.value_or(prob.omega_max.value_or(10.0));
  const int n_steps = steps.value_or(prob.steps.value_or(1000));
  if (!(w_max > 0.0)) throw SchemaError("--omega-max must be positive");
  if (n_steps < 2) throw SchemaError("--steps must be at least 2");

  const auto samples = rectangle_sweep(prob.box, w_max, n_steps);
  std::vector<double> flagged;
  for (const auto& s : samples) {
    if (s.contains_zero) flagged.push_back(s.omega);
  }
  if (!csv_path.empty()) write_file(csv_path, sweep_csv(samples));
  if (!svg_path.empty()) write_file(svg_path, rectangle_svg(samples));

  if (g.json) {
    ojson j;
    j["omega_max"] = w_max;
    j["steps"] = n_steps;
    j["samples"] = samples.size();
    j["flagged"] = flagged;
    out << j.dump(2) << "\n";
  } else if (!g.quiet) {
    out << "sweep    w in [0, " << format_number(w_max) << "], " << n_steps << " steps, " << samples.size()
        << " samples after refinement\n";
    out << "flagged  " << flagged.size() << " samples with 0 inside the rectangle\n";
    for (std::size_t i = 0; i < flagged.size() && i < 20; ++i) out << "  w = " << g17(flagged[i]) << "\n";
    if (flagged.size() > 20) out << "  ...\n";
    if (!csv_path.empty()) out << "csv      " << csv_path << "\n";
    if (!svg_path.empty()) out << "svg      " << svg_path << "\n";
  }
  return kExitStable;
}

// ---- roots ---------------------------------------------------------------

int cmd_roots(const Globals& g, const std::string& file, const std::string& svg_path, std::ostream& out) {
  const Problem prob = load_problem(file);
  const KharitonovQuad q = kharitonov_polys(prob.box);
  std::array<std::optional<RootSet>, 4> roots;
  std::array<RootSet, 4> plot;
  for (std::size_t j = 0; j < 4; ++j) {
    roots[j] = roots_or_none(q.k[j]);
    if (roots[j]) plot[j] = *roots[j];
  }
  if (!svg_path.empty()) write_file(svg_path, roots_svg(plot));
  if (g.json) {
    ojson j;
    for (std::size_t i = 0; i < 4; ++i) {
      j["k" + std::to_string(i + 1)] = {{"coefficients", coeffs_json(q.k[i])}, {"roots", roots_json(roots[i])}};
    }
    out << j.dump(2) << "\n";
  } else if (!g.quiet) {
    for (std::size_t i = 0; i < 4; ++i) {
      out << "k" << i + 1 << " = " << to_string(q.k[i]) << "\n";
      out << "   roots: " << roots_line(roots[i], q.k[i]) << "\n";
    }
    if (!svg_path.empty()) out << "svg      " << svg_path << "\n";
  }
  return kExitStable;
}

// ---- oracle --------------------------------------------------------------

int cmd_oracle(const Globals& g, const std::string& file, const std::string& mode, std::size_t count, std::size_t per_axis,
               unsigned threads, const Hooks& hooks, std::ostream& out) {
  const Problem prob = load_problem(file);
  const std::uint64_t seed = g.seed.value_or(prob.seed.value_or(42));
  SamplePlan plan;
  if (mode == "vertices") {
    plan = SamplePlan::vertices();
  } else if (mode == "grid") {
    plan = SamplePlan::grid(per_axis);
  } else if (mode == "random") {
    plan = SamplePlan::random(count, seed);
  } else {
    throw SchemaError("--mode must be vertices, grid or random");
  }
  OracleOptions opts;
  opts.threads = threads;
  const CrossValidation cv = cross_validate(prob.box, plan, opts, hooks.decider);

  if (g.json) {
    ojson j;
    j["plan"] = {{"mode", std::string(to_string(plan.mode))}};
    if (plan.mode == SamplePlan::Mode::Random) {
      j["plan"]["count"] = plan.count;
      j["plan"]["seed"] = plan.seed;
    } else if (plan.mode == SamplePlan::Mode::Grid) {
      j["plan"]["per_axis"] = plan.per_axis;
    }
    j["tested"] = cv.oracle.tested;
    j["unstable_count"] = cv.oracle.unstable_count;
    j["oracle_verdict"] = std::string(to_string(cv.oracle.verdict));
    j["kharitonov_verdict"] = std::string(to_string(cv.test.verdict.status));
    j["agreement"] = std::string(to_string(cv.agreement));
    j["witness_certified"] = cv.witness_certified;
    ojson ws = ojson::array();
    for (const auto& w : cv.oracle.unstable_witnesses) {
      ws.push_back({{"member", coeffs_json(w.member)}, {"root", {w.root.real(), w.root.imag()}}});
    }
    j["witnesses"] = std::move(ws);
    out << j.dump(2) << "\n";
  } else if (!g.quiet) {
    out << "plan       " << to_string(plan.mode);
    if (plan.mode == SamplePlan::Mode::Random) out << ", " << plan.count << " members, seed " << plan.seed;
    if (plan.mode == SamplePlan::Mode::Grid) out << ", " << plan.per_axis << " points per axis";
    out << "\n";
    out << "tested     " << cv.oracle.tested << " members, " << cv.oracle.unstable_count << " not Hurwitz stable\n";
    out << "oracle     " << to_string(cv.oracle.verdict) << "\n";
    out << "kharitonov " << to_string(cv.test.verdict.status) << "\n";
    out << "agreement  " << to_string(cv.agreement) << "\n";
    for (std::size_t i = 0; i < cv.oracle.unstable_witnesses.size() && i < 5; ++i) {
      const auto& w = cv.oracle.unstable_witnesses[i];
      out << "  witness  " << to_string(w.member) << "  root " << format_root(w.root) << "\n";
    }
  }
  if (cv.agreement == Agreement::Contradiction) return kExitContradiction;
  return status_exit(cv.test.verdict);
}

// ---- homotopy ------------------------------------------------------------

RealPolynomial parse_poly(const std::string& text) {
  std::vector<double> c;
  if (!text.empty() && text.front() == '[') {
    try {
      const auto j = nlohmann::json::parse(text);
      for (const auto& v : j) c.push_back(v.get<double>());
    } catch (const nlohmann::json::exception& e) {
      throw SchemaError("cannot parse polynomial '" + text + "': " + e.what());
    }
  } else {
    std::string token;
    std::istringstream in(text);
    std::string s;
    for (char ch : text) s += (ch == ',' ? ' ' : ch);
    std::istringstream tokens(s);
    while (tokens >> token) {
      double v = 0.0;
      auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
      if (ec != std::errc{} || end != token.data() + token.size()) {
        throw SchemaError("cannot parse polynomial coefficient '" + token + "'");
      }
      c.push_back(v);
    }
  }
  if (c.empty()) throw SchemaError("polynomial '" + text + "' has no coefficients");
  try {
    return RealPolynomial(std::move(c));
  } catch (const InvalidArgument& e) {
    throw SchemaError(e.what());
  }
}

RealPolynomial poly_from_file_or_text(const std::string& arg, int k_index) {
  if (std::filesystem::is_regular_file(arg)) {
    const Problem prob = load_problem(arg);
    const IntervalPolynomial box = prob.box.hi().back() > 0.0 ? prob.box : prob.box.negated();
    const KharitonovQuad q = kharitonov_polys(box);
    if (k_index >= 1 && k_index <= 4) return q.k[static_cast<std::size_t>(k_index - 1)];
    const std::size_t n = box.order();
    for (std::size_t j = 0; j < 4; ++j) {
      if (kharitonov_takes_upper(j, n)) return q.k[j];
    }
  }
  return parse_poly(arg);
}

int cmd_homotopy(const Globals& g, const std::string& from, const std::string& to, const std::string& family,
                 double refine, int steps, int k_index, std::ostream& out) {
  std::optional<PolynomialPath> path;
  if (!family.empty()) {
    path = PolynomialPath::named(family);
    if (!path) throw SchemaError("unknown family '" + family + "' (known: faedo-loop, faedo-half)");
  } else {
    if (from.empty() || to.empty()) throw SchemaError("homotopy needs --family or both --from and --to");
    path = PolynomialPath::convex(poly_from_file_or_text(from, k_index), parse_poly(to));
  }
  if (!(refine > 0.0)) throw SchemaError("--refine must be positive");
  CrossingOptions opts;
  opts.refine_tol = refine;
  opts.steps = steps;
  const CrossingResult r = find_crossing(*path, opts);

  if (g.json) {
    ojson j;
    j["path"] = path->name();
    j["domain"] = {path->a(), path->b()};
    j["outcome"] = std::string(to_string(r.outcome));
    j["hypotheses"] = {{"start_stable", r.hypotheses.start_stable}, {"leading_nonzero", r.hypotheses.leading_nonzero}};
    if (r.hypotheses.leading_vanishes_at) j["hypotheses"]["leading_vanishes_at"] = *r.hypotheses.leading_vanishes_at;
    if (r.witness) {
      j["t_star"] = r.witness->t_star;
      j["omega_star"] = r.witness->omega_star;
      j["residual"] = r.witness->residual;
    }
    if (!r.note.empty()) j["note"] = r.note;
    out << j.dump(2) << "\n";
  } else if (!g.quiet) {
    out << "path       " << path->name() << " on [" << format_number(path->a()) << ", " << format_number(path->b())
        << "]\n";
    out << "start      " << to_string(path->at(path->a())) << (r.hypotheses.start_stable ? " (stable)" : " (not stable)")
        << "\n";
    out << "leading    " << (r.hypotheses.leading_nonzero ? "nonzero on [a, b)" : "vanishes inside [a, b)");
    if (r.hypotheses.leading_vanishes_at) out << " at t = " << format_number(*r.hypotheses.leading_vanishes_at);
    out << "\n";
    out << "outcome    " << to_string(r.outcome) << "\n";
    if (r.witness) {
      out << "t*         " << g17(r.witness->t_star) << "\n";
      out << "w*         " << g17(r.witness->omega_star) << "\n";
      out << "residual   " << g17(r.witness->residual) << "\n";
    }
    if (!r.note.empty()) out << "note       " << r.note << "\n";
  }
  return r.outcome == CrossingOutcome::StableAll ? kExitStable : kExitUnstable;
}

}  // namespace

std::string format_root(Complex z) {
  const std::string re = fixed2(z.real());
  const std::string im = fixed2(std::abs(z.imag()));
  if (im == "0.00") return re;
  return re + (z.imag() < 0 ? "-" : "+") + im + "i";
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Hooks& hooks) {
  CLI::App app{"robustab: robust Hurwitz stability of interval polynomials"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  std::uint64_t seed = 0;
  app.add_flag("--json", g.json, "Machine-readable JSON output (check: write a certificate next to the input)");
  auto* seed_opt = app.add_option("--seed", seed, "Seed for randomized sampling");
  app.add_flag("--quiet", g.quiet, "Suppress human-readable output");

  std::string file;
  auto* check = app.add_subcommand("check", "Decide robust stability of the box and print a certificate");
  check->add_option("file", file, "Problem JSON file")->required();
  std::string cert_out;
  check->add_option("--cert", cert_out, "Write the JSON certificate to this path");

  auto* kpolys = app.add_subcommand("kpolys", "Print the Kharitonov polynomials and h+-/g+-");
  kpolys->add_option("file", file, "Problem JSON file")->required();

  auto* rect = app.add_subcommand("rect", "Sweep the Kharitonov rectangle over frequency");
  rect->add_option("file", file, "Problem JSON file")->required();
  std::optional<double> omega_max;
  std::optional<int> steps;
  std::string svg_path;
  std::string csv_path;
  rect->add_option("--omega-max", omega_max, "Upper end of the frequency range");
  rect->add_option("--steps", steps, "Number of uniform grid intervals");
  rect->add_option("--svg", svg_path, "Write an SVG plot of the rectangles");
  rect->add_option("--csv", csv_path, "Write the sweep as CSV");

  auto* roots = app.add_subcommand("roots", "Roots of each Kharitonov polynomial");
  roots->add_option("file", file, "Problem JSON file")->required();
  roots->add_option("--svg", svg_path, "Write an SVG scatter of the roots");

  auto* oracle = app.add_subcommand("oracle", "Cross-check the four-polynomial test against brute-force sampling");
  oracle->add_option("file", file, "Problem JSON file")->required();
  std::string mode = "random";
  std::size_t count = 10000;
  std::size_t per_axis = 3;
  unsigned threads = 1;
  oracle->add_option("--mode", mode, "vertices | grid | random")->check(CLI::IsMember({"vertices", "grid", "random"}));
  oracle->add_option("--count", count, "Members drawn in random mode");
  oracle->add_option("--k", per_axis, "Points per axis in grid mode");
  oracle->add_option("--threads", threads, "Worker threads for member checks");

  auto* homotopy = app.add_subcommand("homotopy", "Track stability along a polynomial path and locate a crossing");
  std::string from;
  std::string to;
  std::string family;
  double refine = 1e-10;
  int path_steps = 200;
  int k_index = 0;
  homotopy->add_option("--from", from, "Start polynomial: problem file or ascending coefficients '1,2,3'");
  homotopy->add_option("--to", to, "End polynomial as ascending coefficients");
  homotopy->add_option("--family", family, "Built-in family: faedo-loop | faedo-half");
  homotopy->add_option("--refine", refine, "Bisection tolerance in t");
  homotopy->add_option("--steps", path_steps, "Sweep grid intervals")->check(CLI::Range(2, 10'000'000));
  homotopy->add_option("--k", k_index, "Kharitonov polynomial (1-4) to start from when --from is a file")
      ->check(CLI::Range(1, 4));

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitStable : kExitInputError;
  }
  if (*seed_opt) g.seed = seed;

  try {
    if (*check) return cmd_check(g, file, cert_out, out);
    if (*kpolys) return cmd_kpolys(g, file, out);
    if (*rect) return cmd_rect(g, file, omega_max, steps, svg_path, csv_path, out);
    if (*roots) return cmd_roots(g, file, svg_path, out);
    if (*oracle) return cmd_oracle(g, file, mode, count, per_axis, threads, hooks, out);
    if (*homotopy) return cmd_homotopy(g, from, to, family, refine, path_steps, k_index, out);
  } catch (const SchemaError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace robustab::cli
