// afval: command-line front end for the valuation and inequality experiments.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Eigenvalues>
#include <json.hpp>

#include "afval/body_io.hpp"
#include "afval/error.hpp"
#include "afval/harmonics.hpp"
#include "afval/inequalities.hpp"
#include "afval/report.hpp"

using namespace afval;
using ojson = nlohmann::ordered_json;

namespace {

struct Options {
  std::optional<int> n;
  std::optional<int> degree;
  std::string family;
  std::optional<double> cos2;
  std::optional<double> c0;
  std::optional<double> c1;
  std::vector<std::string> bodies;
  std::string function;
  std::string grid;
  std::optional<int> resolution;
  int samples = 20000;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string csv;
  int kmax = 6;
  double eps = 0.05;
  std::string route;
  int m = 0;
  int cases = 10000;
  bool bracket = false;
  double bracket_width = 1e-3;
};

[[noreturn]] void usage(const std::string& msg) { throw Error(ErrorKind::invalid_argument, msg); }

// ---------------------------------------------------------------------------
// option groups

void add_valuation(CLI::App* c, Options& o) {
  c->add_option("--degree", o.degree, "valuation degree (2 or 3)");
  c->add_option("--n", o.n, "complex dimension");
  c->add_option("--family", o.family, "phi | psi | raw");
  c->add_option("--cos2", o.cos2, "cos^2 of the Kahler angle");
  c->add_option("--c0", o.c0, "coefficient of mu_{k,0}");
  c->add_option("--c1", o.c1, "coefficient of mu_{k,1}");
}

void add_grid(CLI::App* c, Options& o) {
  c->add_option("--grid", o.grid, "product | monte-carlo");
  c->add_option("--resolution", o.resolution, "product points per axis, or Monte Carlo sample count");
  c->add_option("--seed", o.seed, "root seed");
}

void add_output(CLI::App* c, Options& o) {
  c->add_option("--out", o.out, "report path (default stdout)");
  c->add_option("--csv", o.csv, "flat CSV rows");
}

void add_bodies(CLI::App* c, Options& o) {
  c->add_option("--body", o.bodies, "body document (repeatable)");
}

// ---------------------------------------------------------------------------
// resolution of the run configuration

struct Resolved {
  ojson config;
  std::vector<BodyPtr> bodies;
};

Resolved resolve_common(const std::string& command, const Options& o) {
  Resolved r;
  r.config["command"] = command;
  ojson docs = ojson::array();
  for (const auto& p : o.bodies) {
    r.bodies.push_back(load_body(p));
    docs.push_back({{"path", p}, {"document", serialize_body(*r.bodies.back())}});
  }
  if (!docs.empty()) r.config["bodies"] = docs;
  return r;
}

int resolve_n(const Options& o, const std::vector<BodyPtr>& bodies) {
  int n = 0;
  if (o.n) n = *o.n;
  else if (!bodies.empty()) n = bodies.front()->n();
  else usage("--n is required");
  for (const auto& b : bodies)
    if (b->n() != n) usage("body dimension n = " + std::to_string(b->n()) + " differs from n = " + std::to_string(n));
  return n;
}

UnitaryValuation resolve_valuation(const Options& o, int n, ojson& config) {
  const std::string fam = o.family.empty() ? "raw" : o.family;
  UnitaryValuation mu;
  if (fam == "phi" || fam == "psi") {
    if (!o.cos2) usage("--family " + fam + " needs --cos2");
    if (o.c0 || o.c1) usage("--c0/--c1 only go with --family raw");
    const int deg = fam == "phi" ? 2 : 3;
    if (o.degree && *o.degree != deg) usage("--family " + fam + " has degree " + std::to_string(deg));
    mu = fam == "phi" ? UnitaryValuation::phi(*o.cos2, n) : UnitaryValuation::psi(*o.cos2, n);
  } else if (fam == "raw") {
    if (!o.c0 || !o.c1 || !o.degree) usage("raw valuations need --degree, --c0 and --c1");
    mu = UnitaryValuation::raw(*o.degree, *o.c0, *o.c1, n);
  } else {
    usage("unknown family '" + fam + "' (phi | psi | raw)");
  }
  config["valuation"] = {{"degree", mu.degree()},
                         {"n", n},
                         {"family", to_string(mu.family)},
                         {"cos2theta", mu.family == Family::raw ? ojson(nullptr) : ojson(mu.cos2theta)},
                         {"c0", mu.coeffs.c0},
                         {"c1", mu.coeffs.c1}};
  return mu;
}

std::uint64_t resolve_seed(const Options& o, ojson& config) {
  const std::uint64_t s = o.seed.value_or(1);
  config["seed"] = s;
  return s;
}

SphereGrid resolve_grid(const Options& o, int n, ojson& config) {
  GridMethod method = n == 2 ? GridMethod::product : GridMethod::monte_carlo;
  if (!o.grid.empty()) {
    method = parse_grid_method(o.grid);
    if (method == GridMethod::monte_carlo && !o.seed) usage("a Monte Carlo grid needs an explicit --seed");
  }
  const int res = o.resolution.value_or(method == GridMethod::product ? 64 : 200000);
  const std::uint64_t seed = o.seed.value_or(1);
  SphereGrid g = build_grid(n, method, res, seed);
  config["grid"] = {{"method", to_string(method)}, {"resolution", res}, {"nodes", g.size()}};
  if (method == GridMethod::monte_carlo) config["grid"]["seed"] = seed;
  return g;
}

struct Output {
  ojson doc;
  std::string csv;
};

void emit(const Options& o, const Output& out) {
  write_text(o.out, out.doc.dump(2) + "\n");
  if (!o.csv.empty()) write_text(o.csv, out.csv);
}

Output reports_output(ojson config, const std::vector<InequalityReport>& reports) {
  Output out;
  out.doc["config"] = std::move(config);
  ojson rs = ojson::array();
  out.csv = report_csv_header();
  for (const auto& r : reports) {
    rs.push_back(report_json(r));
    out.csv += report_csv_row(r);
    std::cerr << r.name << ": " << to_string(r.verdict) << " (gap " << format_double(r.gap) << ", tolerance "
              << format_double(r.tolerance) << ", " << r.runtime << " s)\n";
  }
  out.doc["reports"] = rs;
  return out;
}

int exit_for(const std::vector<InequalityReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed(); }) ? 0 : 1;
}

// ---------------------------------------------------------------------------
// commands

int cmd_hyperbolicity(const Options& o) {
  auto r = resolve_common("hyperbolicity", o);
  const int n = resolve_n(o, r.bodies);
  const auto mu = resolve_valuation(o, n, r.config);
  const std::uint64_t seed = resolve_seed(o, r.config);
  r.config["cases"] = o.cases;
  r.config["kmax"] = o.kmax;

  const auto rc = in_hyperbolicity_range(mu.coeffs);
  const std::string status = rc.strict ? "strict" : rc.closed ? "closed-only" : "outside";
  ojson res;
  res["status"] = status;
  res["in_closed_cone"] = rc.closed;
  res["strict"] = rc.strict;
  res["violated"] = rc.violated;
  double min_gap = 0.0;
  int negative = 0;
  if (mu.degree() == 3) {
    ojson ev = ojson::array();
    for (const auto& e : hessian_q_eigenvalues(mu.coeffs))
      ev.push_back({{"value", e.value}, {"multiplicity", e.multiplicity}});
    res["hessian_eigenvalues"] = ev;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hessian_q_matrix(mu.coeffs), Eigen::EigenvaluesOnly);
    std::vector<double> num(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    res["hessian_eigenvalues_numeric"] = num;
    const auto w = hyperbolicity_witness(mu.coeffs);
    res["witness"] = {{"max_eigenvalue", w.max_eigenvalue}, {"found", w.witness.has_value()}};
    if (w.witness) {
      res["witness"]["diagonal"] = w.diagonal;
      res["witness"]["rank"] = w.rank;
    }
    const auto s = garding_sweep(mu.coeffs, o.cases, seed);
    res["garding_sweep"] = {{"cases", s.cases},
                            {"min_relative_gap", s.min_relative_gap},
                            {"negative", s.negative},
                            {"equality_hits", s.equality_hits},
                            {"equality_mismatches", s.equality_mismatches}};
    min_gap = s.min_relative_gap;
    negative = s.negative;
  } else {
    const auto sp = spectral_parameters(mu.coeffs);
    res["spectral_parameters"] = {{"alpha", sp.alpha}, {"beta", sp.beta}, {"scale", sp.scale}};
    const auto sign = spectrum_sign_pattern(mu.coeffs, o.kmax);
    res["sign_pattern"] = {{"constant_positive", sign.constant_positive},
                           {"linear_zero", sign.linear_zero},
                           {"rest_negative", sign.rest_negative}};
  }
  Output out;
  out.doc["config"] = r.config;
  out.doc["result"] = res;
  std::string violated;
  for (const auto& v : rc.violated) violated += (violated.empty() ? "" : "; ") + v;
  out.csv = csv_line({"degree", "n", "c0", "c1", "status", "violated", "min_relative_gap", "negative"}) +
            csv_line({std::to_string(mu.degree()), std::to_string(n), format_double(mu.coeffs.c0),
                      format_double(mu.coeffs.c1), status, violated, format_double(min_gap),
                      std::to_string(negative)});
  std::cerr << "cone: " << status << "\n";
  emit(o, out);
  return rc.closed ? 0 : 1;
}

int cmd_eval(const Options& o) {
  auto r = resolve_common("eval", o);
  if (r.bodies.size() != 1) usage("eval takes exactly one --body");
  const int n = resolve_n(o, r.bodies);
  const auto mu = resolve_valuation(o, n, r.config);
  const auto& body = r.bodies.front();
  const std::string route = o.route.empty() ? (body->smooth() ? "both" : "grassmannian") : o.route;
  if (route != "operator" && route != "grassmannian" && route != "both")
    usage("--route must be operator | grassmannian | both");
  if (route != "grassmannian" && !body->smooth())
    usage("the operator route needs a smooth body; use --route grassmannian for " + body->type_name());
  r.config["route"] = route;

  Output out;
  out.csv = csv_line({"route", "value", "se", "quad_tol"});
  ojson values = ojson::array();
  std::optional<Estimate> op, gr;
  if (route != "grassmannian") {
    const SphereGrid grid = resolve_grid(o, n, r.config);
    std::vector<Slot> slots(static_cast<std::size_t>(mu.degree()), Slot(body));
    MixedOptions mo;
    op = eval_mixed(mu, slots, grid, mo);
    values.push_back({{"route", "operator"}, {"value", op->value}, {"se", op->se}, {"quad_tol", op->quad_tol}});
    out.csv += csv_line({"operator", format_double(op->value), format_double(op->se), format_double(op->quad_tol)});
  }
  if (route != "operator") {
    const std::uint64_t seed = resolve_seed(o, r.config);
    r.config["samples"] = o.samples;
    gr = grassmannian_linear(mu, {body}, Eigen::VectorXd::Ones(1), o.samples, seed);
    values.push_back({{"route", "grassmannian"}, {"value", gr->value}, {"se", gr->se}});
    out.csv += csv_line({"grassmannian", format_double(gr->value), format_double(gr->se), "0"});
  }
  out.doc["config"] = r.config;
  out.doc["values"] = values;
  int code = 0;
  if (op && gr) {
    const auto rep = make_report("route_agreement", CheckKind::identity, op->value, gr->value,
                                 std::hypot(op->se, gr->se), op->quad_tol);
    out.doc["agreement"] = report_json(rep);
    code = rep.passed() ? 0 : 1;
    std::cerr << "route agreement: " << to_string(rep.verdict) << "\n";
  }
  emit(o, out);
  return code;
}

int cmd_spectrum(const Options& o) {
  auto r = resolve_common("spectrum", o);
  const int n = resolve_n(o, r.bodies);
  const auto mu = resolve_valuation(o, n, r.config);
  r.config["kmax"] = o.kmax;
  const auto rows = spectrum_table(mu.coeffs, o.kmax);
  const auto sp = spectral_parameters(mu.coeffs);
  const auto sign = spectrum_sign_pattern(mu.coeffs, o.kmax);
  Output out;
  out.doc["config"] = r.config;
  out.doc["operator"] = mu.degree() == 2 ? "D_mu" : "D_mu_B";
  out.doc["spectral_parameters"] = {{"alpha", sp.alpha}, {"beta", sp.beta}, {"scale", sp.scale}};
  out.doc["window"] = spectrum_window(mu.coeffs);
  out.doc["sign_pattern"] = {{"constant_positive", sign.constant_positive},
                             {"linear_zero", sign.linear_zero},
                             {"rest_negative", sign.rest_negative}};
  ojson table = ojson::array();
  out.csv = csv_line({"k", "l", "laplace", "jn", "eigenvalue"});
  for (const auto& row : rows) {
    table.push_back(
        {{"k", row.k}, {"l", row.l}, {"laplace", row.laplace}, {"jn", row.jn}, {"eigenvalue", row.eigenvalue}});
    out.csv += csv_line({std::to_string(row.k), std::to_string(row.l), format_double(row.laplace),
                         format_double(row.jn), format_double(row.eigenvalue)});
  }
  out.doc["rows"] = table;
  emit(o, out);
  return 0;
}

int cmd_af(const Options& o) {
  auto r = resolve_common("af", o);
  const int n = resolve_n(o, r.bodies);
  const auto mu = resolve_valuation(o, n, r.config);
  std::vector<Slot> slots;
  if (!o.function.empty()) {
    std::ifstream in(o.function);
    if (!in) usage("cannot read " + o.function);
    const auto doc = nlohmann::json::parse(in, nullptr, true, true);
    if (!doc.contains("function")) throw Error(ErrorKind::schema, "function: missing field");
    slots.emplace_back(parse_function_node(doc["function"], n, "function"));
    r.config["function"] = {{"path", o.function}, {"document", doc}};
  }
  for (const auto& b : r.bodies) slots.emplace_back(b);
  if (static_cast<int>(slots.size()) != mu.degree())
    usage("af needs " + std::to_string(mu.degree()) + " slots (f, L[, M]) from --function/--body");
  const SphereGrid grid = resolve_grid(o, n, r.config);
  const auto rep = af_check(mu, slots, grid);
  const std::vector<InequalityReport> reps{rep};
  emit(o, reports_output(r.config, reps));
  return exit_for(reps);
}

int cmd_counterexample(const Options& o) {
  auto r = resolve_common("counterexample", o);
  const int n = o.n.value_or(2);
  if (!o.cos2) usage("--cos2 is required");
  r.config["n"] = n;
  r.config["cos2theta"] = *o.cos2;
  r.config["eps"] = o.eps;
  const SphereGrid grid = resolve_grid(o, n, r.config);
  const auto rep = counterexample_run(n, *o.cos2, o.eps, grid);
  const std::vector<InequalityReport> reps{rep};
  Output out = reports_output(r.config, reps);
  if (o.bracket) {
    const double thr = (n + 1.0) / (2.0 * n);
    const auto b = threshold_bracket(n, o.eps, std::max(0.0, thr - 0.2), 1.0, o.bracket_width, grid);
    out.doc["bracket"] = {{"lo", b.lo},
                          {"hi", b.hi},
                          {"width", o.bracket_width},
                          {"evaluations", b.evaluations},
                          {"threshold", thr},
                          {"contains_threshold", b.lo - o.bracket_width <= thr && thr <= b.hi + o.bracket_width}};
  }
  emit(o, out);
  return exit_for(reps);
}

int cmd_iso(const Options& o) {
  auto r = resolve_common("iso", o);
  if (r.bodies.size() != 1) usage("iso takes exactly one --body");
  if (!o.cos2) usage("--cos2 is required");
  const int n = resolve_n(o, r.bodies);
  r.config["cos2theta"] = *o.cos2;
  r.config["samples"] = o.samples;
  const std::uint64_t seed = resolve_seed(o, r.config);
  const SphereGrid grid = resolve_grid(o, n, r.config);
  const auto reps = iso_check(*o.cos2, r.bodies.front(), o.samples, seed, grid);
  emit(o, reports_output(r.config, reps));
  return exit_for(reps);
}

int cmd_bm(const Options& o) {
  auto r = resolve_common("bm", o);
  const int n = resolve_n(o, r.bodies);
  const auto mu = resolve_valuation(o, n, r.config);
  const int m = o.m ? o.m : mu.degree();
  r.config["m"] = m;
  const SphereGrid grid = resolve_grid(o, n, r.config);
  const std::vector<InequalityReport> reps{bm_check(mu, m, r.bodies, grid)};
  emit(o, reports_output(r.config, reps));
  return exit_for(reps);
}

int cmd_mu_der(const Options& o) {
  auto r = resolve_common("mu-der", o);
  if (r.bodies.size() != 1) usage("mu-der takes exactly one --body");
  if (!o.cos2) usage("--cos2 is required");
  const int n = resolve_n(o, r.bodies);
  r.config["cos2theta"] = *o.cos2;
  const SphereGrid grid = resolve_grid(o, n, r.config);
  const std::vector<InequalityReport> reps{mu_der_check(*o.cos2, r.bodies.front(), grid)};
  emit(o, reports_output(r.config, reps));
  return exit_for(reps);
}

int cmd_quermass(const Options& o) {
  auto r = resolve_common("quermass", o);
  if (r.bodies.size() != 1) usage("quermass takes exactly one --body");
  const int n = resolve_n(o, r.bodies);
  const auto mu = resolve_valuation(o, n, r.config);
  const SphereGrid grid = resolve_grid(o, n, r.config);
  const auto reps = muquer_check(mu, r.bodies.front(), grid);
  emit(o, reports_output(r.config, reps));
  return exit_for(reps);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unitary area measures: hyperbolicity, spectra and mixed-valuation inequalities"};
  app.require_subcommand(1);
  Options o;

  auto* hyp = app.add_subcommand("hyperbolicity", "cone membership, Hess q spectrum, Garding sweep");
  add_valuation(hyp, o);
  hyp->add_option("--cases", o.cases, "Garding sweep size");
  hyp->add_option("--seed", o.seed, "root seed");
  hyp->add_option("--kmax", o.kmax, "degree bound for the sign pattern");
  add_output(hyp, o);

  auto* ev = app.add_subcommand("eval", "evaluate a valuation on a body");
  add_valuation(ev, o);
  add_bodies(ev, o);
  add_grid(ev, o);
  ev->add_option("--samples", o.samples, "orbit samples");
  ev->add_option("--route", o.route, "operator | grassmannian | both");
  add_output(ev, o);

  auto* sp = app.add_subcommand("spectrum", "eigenvalues of D_mu / D_mu_B on H_{k,l}");
  add_valuation(sp, o);
  sp->add_option("--kmax", o.kmax, "largest k + l");
  add_output(sp, o);

  auto* af = app.add_subcommand("af", "Aleksandrov-Fenchel check mu(f,L[,M])^2 >= mu(f,f[,M]) mu(L,L[,M])");
  add_valuation(af, o);
  add_bodies(af, o);
  af->add_option("--function", o.function, "function document for slot f");
  add_grid(af, o);
  add_output(af, o);

  auto* ce = app.add_subcommand("counterexample", "perturbed-ball counterexample beyond the threshold");
  ce->add_option("--n", o.n, "complex dimension");
  ce->add_option("--cos2", o.cos2, "cos^2 of the Kahler angle");
  ce->add_option("--eps", o.eps, "perturbation size");
  ce->add_flag("--bracket", o.bracket, "also bracket the sign change in cos^2");
  ce->add_option("--bracket-width", o.bracket_width, "bracket width");
  add_grid(ce, o);
  add_output(ce, o);

  auto* iso = app.add_subcommand("iso", "isoperimetric-type inequalities between orbit integrals");
  iso->add_option("--cos2", o.cos2, "cos^2 of the Kahler angle");
  add_bodies(iso, o);
  add_grid(iso, o);
  iso->add_option("--samples", o.samples, "orbit samples");
  add_output(iso, o);

  auto* bm = app.add_subcommand("bm", "Brunn-Minkowski check");
  add_valuation(bm, o);
  add_bodies(bm, o);
  bm->add_option("--m", o.m, "number of varying slots (default: degree)");
  add_grid(bm, o);
  add_output(bm, o);

  auto* md = app.add_subcommand("mu-der", "identity psi_theta(K,K,B) = 4/3 phi_theta'(K)");
  md->add_option("--cos2", o.cos2, "cos^2 of the Kahler angle");
  add_bodies(md, o);
  add_grid(md, o);
  add_output(md, o);

  auto* qm = app.add_subcommand("quermass", "mu(K,B,B)^3 >= mu(B)^2 mu(K) and mu(K,K,B)^3 >= mu(B) mu(K)^2");
  add_valuation(qm, o);
  add_bodies(qm, o);
  add_grid(qm, o);
  add_output(qm, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*hyp) return cmd_hyperbolicity(o);
    if (*ev) return cmd_eval(o);
    if (*sp) return cmd_spectrum(o);
    if (*af) return cmd_af(o);
    if (*ce) return cmd_counterexample(o);
    if (*iso) return cmd_iso(o);
    if (*bm) return cmd_bm(o);
    if (*md) return cmd_mu_der(o);
    if (*qm) return cmd_quermass(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
