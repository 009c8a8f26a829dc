#include <clocale>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qgls/config.hpp"
#include "qgls/fixpoint.hpp"
#include "qgls/gls.hpp"
#include "qgls/serialize.hpp"
#include "qgls/tail.hpp"
#include "qgls/transfer.hpp"
#include "qgls/verify.hpp"

namespace {

using qgls::jout::Value;

struct CommonOpts {
  std::string input;
  std::string output;
  std::string format = "json";
  double tol = 1e-9;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool needs_input = true) {
  if (needs_input)
    cmd->add_option("--input", opts.input, "path to the JSON configuration")
        ->required();
  cmd->add_option("--output", opts.output, "output path (default: stdout)");
  cmd->add_option("--format", opts.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--tol", opts.tol, "relative tolerance override");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw qgls::ConfigError("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const CommonOpts& opts, const std::string& payload) {
  if (opts.output.empty()) {
    std::cout << payload;
    if (!payload.empty() && payload.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(opts.output, std::ios::binary);
  if (!out) throw qgls::Error("cannot open output file: " + opts.output);
  out << payload;
}

qgls::config::Document load(const CommonOpts& opts) {
  return qgls::config::parse_document(read_file(opts.input));
}

const qgls::FunctionRep& need_function(const qgls::config::Document& doc) {
  if (!doc.function)
    throw qgls::ConfigError("$.function: missing required section");
  return *doc.function;
}

const qgls::PsiFunction& need_psi(const qgls::config::Document& doc) {
  if (!doc.psi) throw qgls::ConfigError("$.psi: missing required section");
  return *doc.psi;
}

std::string num(double v) { return qgls::jout::format_shortest(v); }

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

int run_norm(const CommonOpts& opts, double p) {
  const qgls::config::Document doc = load(opts);
  const qgls::NormResult r = qgls::lp_quasinorm(need_function(doc), p, opts.tol);
  if (opts.format == "csv") {
    emit(opts, qgls::jout::to_csv({"p", "value", "abs_error_estimate", "converged"},
                                  {{num(r.p), num(r.value),
                                    num(r.abs_error_estimate),
                                    r.converged ? "true" : "false"}}));
    return 0;
  }
  Value out = Value::object();
  out.set("op", Value::string("norm"));
  out.set("p", Value::number(r.p));
  out.set("value", Value::number(r.value));
  out.set("abs_error_estimate", Value::number(r.abs_error_estimate));
  out.set("converged", Value::boolean(r.converged));
  out.set("config", qgls::config::echo_document(doc));
  emit(opts, out.dump(2));
  return 0;
}

int run_gls_norm(const CommonOpts& opts) {
  const qgls::config::Document doc = load(opts);
  const qgls::PsiFunction& psi = need_psi(doc);
  const qgls::GlsNormResult r = qgls::gls_norm(need_function(doc), psi, opts.tol);
  if (opts.format == "csv") {
    std::vector<std::vector<std::string>> rows;
    for (const auto& [p, ratio] : r.profile) {
      const double psi_v = psi(p);
      rows.push_back({num(p), num(ratio * psi_v), num(psi_v), num(ratio)});
    }
    emit(opts, qgls::jout::to_csv({"p", "norm", "psi", "ratio"}, rows));
    return 0;
  }
  Value out = Value::object();
  out.set("op", Value::string("gls-norm"));
  out.set("value", Value::number(r.value));
  out.set("argmax_p", Value::number(r.argmax_p));
  out.set("endpoint_limit", Value::boolean(r.endpoint_limit));
  out.set("divergent", Value::boolean(r.divergent));
  Value profile = Value::array();
  for (const auto& [p, ratio] : r.profile) {
    Value row = Value::object();
    row.set("p", Value::number(p));
    row.set("ratio", Value::number(ratio));
    profile.push(std::move(row));
  }
  out.set("profile", std::move(profile));
  out.set("config", qgls::config::echo_document(doc));
  emit(opts, out.dump(2));
  return 0;
}

int run_natural(const CommonOpts& opts) {
  const qgls::config::Document doc = load(opts);
  if (!doc.natural)
    throw qgls::ConfigError("$.natural: missing required section");
  const qgls::PsiFunction psi =
      qgls::natural_function(need_function(doc), doc.natural->a, doc.natural->b,
                             doc.natural->grid_size, opts.tol);
  Value out = Value::object();
  out.set("op", Value::string("natural-fn"));
  out.set("psi", qgls::config::psi_to_json(psi));
  out.set("config", qgls::config::echo_document(doc));
  emit(opts, out.dump(2));
  return 0;
}

int run_fundamental(const CommonOpts& opts) {
  const qgls::config::Document doc = load(opts);
  if (!doc.fundamental)
    throw qgls::ConfigError("$.fundamental: missing required section");
  const qgls::FundamentalBoundsReport report =
      qgls::fundamental_bounds_check(need_psi(doc), doc.fundamental->delta_grid);
  if (opts.format == "csv") {
    std::vector<std::vector<std::string>> rows;
    for (const auto& row : report.rows)
      rows.push_back({num(row.delta), num(row.phi),
                      row.left_checked ? num(row.left_bound) : "",
                      num(row.right_bound), row.holds ? "true" : "false"});
    emit(opts, qgls::jout::to_csv(
                   {"delta", "phi", "left_bound", "right_bound", "holds"}, rows));
    return report.all_hold ? 0 : 1;
  }
  Value out = Value::object();
  out.set("op", Value::string("fundamental"));
  Value rows = Value::array();
  for (const auto& row : report.rows) {
    Value r = Value::object();
    r.set("delta", Value::number(row.delta));
    r.set("phi", Value::number(row.phi));
    if (row.left_checked) r.set("left_bound", Value::number(row.left_bound));
    r.set("right_bound", Value::number(row.right_bound));
    r.set("holds", Value::boolean(row.holds));
    rows.push(std::move(r));
  }
  out.set("rows", std::move(rows));
  out.set("all_hold", Value::boolean(report.all_hold));
  out.set("config", qgls::config::echo_document(doc));
  emit(opts, out.dump(2));
  return report.all_hold ? 0 : 1;
}

std::string csv_of_tail_report(const qgls::TailBoundReport& report) {
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < report.u_grid.size(); ++i) {
    std::vector<std::string> row;
    row.push_back(num(report.u_grid[i]));
    row.push_back(i < report.exact_or_empirical_tail.size()
                      ? num(report.exact_or_empirical_tail[i])
                      : "");
    row.push_back(i < report.tcheby_bound.size() ? num(report.tcheby_bound[i]) : "");
    row.push_back(i < report.optimal_p_bound.size() ? num(report.optimal_p_bound[i])
                                                    : "");
    row.push_back(i < report.gap_ratio.size() ? num(report.gap_ratio[i]) : "");
    rows.push_back(std::move(row));
  }
  return qgls::jout::to_csv({"u", "tail", "tcheby", "optimal_p", "gap_ratio"},
                            rows);
}

Value json_of_tail_report(const qgls::TailBoundReport& report) {
  Value rows = Value::array();
  for (std::size_t i = 0; i < report.u_grid.size(); ++i) {
    Value row = Value::object();
    row.set("u", Value::number(report.u_grid[i]));
    row.set("log_u", Value::number(report.log_u[i]));
    if (i < report.exact_or_empirical_tail.size())
      row.set("tail", Value::number(report.exact_or_empirical_tail[i]));
    if (i < report.tcheby_bound.size())
      row.set("tcheby", Value::number(report.tcheby_bound[i]));
    if (i < report.optimal_p_bound.size())
      row.set("optimal_p", Value::number(report.optimal_p_bound[i]));
    if (i < report.gap_ratio.size())
      row.set("gap_ratio", Value::number(report.gap_ratio[i]));
    rows.push(std::move(row));
  }
  return rows;
}

int run_tail(const CommonOpts& opts) {
  const qgls::config::Document doc = load(opts);
  if (!doc.tail) throw qgls::ConfigError("$.tail: missing required section");
  const qgls::FunctionRep& f = need_function(doc);

  qgls::TailBoundReport report;
  if (!doc.tail->log_x_grid.empty()) {
    if (!f.is_tail_defined() || !f.tail_data().tail.is_analytic())
      throw qgls::ConfigError(
          "$.tail.log_x_grid: the exponent-choice estimate needs an analytic tail");
    report = qgls::optimal_p_tail_estimate(f.tail_data().tail.analytic_params(),
                                           doc.tail->c.value_or(1.0),
                                           doc.tail->log_x_grid, opts.tol);
  } else {
    if (doc.tail->u_grid.empty())
      throw qgls::ConfigError("$.tail.u_grid: missing required field");
    const qgls::TailFunction tail =
        f.is_tail_defined() ? f.tail_data().tail : qgls::tail_of(f, doc.tail->u_grid);
    if (doc.psi) {
      const qgls::GlsNormResult g = qgls::gls_norm(f, *doc.psi, opts.tol);
      report = qgls::tcheby_tail_bound(g.value, *doc.psi, doc.tail->u_grid, {},
                                       tail);
    } else {
      for (double u : doc.tail->u_grid) {
        report.u_grid.push_back(u);
        report.log_u.push_back(std::log(u));
        const double t = tail(u);
        report.exact_or_empirical_tail.push_back(t);
        report.log_tail.push_back(t > 0 ? std::log(t) : -qgls::kInf);
      }
    }
  }
  if (opts.format == "csv") {
    emit(opts, csv_of_tail_report(report));
    return 0;
  }
  Value out = Value::object();
  out.set("op", Value::string("tail"));
  out.set("rows", json_of_tail_report(report));
  out.set("config", qgls::config::echo_document(doc));
  emit(opts, out.dump(2));
  return 0;
}

int run_boyd(const CommonOpts& opts) {
  const qgls::config::Document doc = load(opts);
  if (!doc.boyd) throw qgls::ConfigError("$.boyd: missing required section");
  const qgls::BoydEstimate est =
      qgls::boyd_indices(need_psi(doc), need_function(doc), doc.boyd->s_grid);
  Value out = Value::object();
  out.set("op", Value::string("boyd"));
  out.set("gamma1", Value::number(est.gamma1));
  out.set("gamma2", Value::number(est.gamma2));
  auto fit_json = [](const qgls::BoydEstimate::Fit& fit) {
    Value v = Value::object();
    v.set("slope", Value::number(fit.slope));
    v.set("intercept", Value::number(fit.intercept));
    v.set("residual_rel", Value::number(fit.residual_rel));
    Value pts = Value::array();
    for (std::size_t i = 0; i < fit.log_s.size(); ++i) {
      Value pt = Value::object();
      pt.set("log_s", Value::number(fit.log_s[i]));
      pt.set("log_ratio", Value::number(fit.log_ratio[i]));
      pts.push(std::move(pt));
    }
    v.set("points", std::move(pts));
    return v;
  };
  out.set("small_s_fit", fit_json(est.small_s));
  out.set("large_s_fit", fit_json(est.large_s));
  out.set("config", qgls::config::echo_document(doc));
  emit(opts, out.dump(2));
  return 0;
}

int run_fixpoint(const CommonOpts& opts) {
  const qgls::config::Document doc = load(opts);
  if (!doc.fixpoint)
    throw qgls::ConfigError("$.fixpoint: missing required section");
  const qgls::config::FixpointSpec& spec = *doc.fixpoint;

  qgls::QuasiMetricSpace space =
      spec.space_kind == "lp_sampled"
          ? qgls::lp_sampled_space(
                spec.p, spec.piece_measures.empty()
                            ? std::vector<double>(spec.x0.size(),
                                                  1.0 / spec.x0.size())
                            : spec.piece_measures)
          : qgls::squared_euclidean_space();
  if (spec.K) space.K_triangle = *spec.K;
  if (spec.K_quad) space.K_quad = *spec.K_quad;
  space.validate();

  const double scale = spec.scale;
  const std::vector<double> offset = spec.offset;
  qgls::ContractionProblem problem{
      space,
      [scale, offset](const qgls::Point& x) {
        qgls::Point y(x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
          y[i] = scale * x[i] + (i < offset.size() ? offset[i] : 0.0);
        return y;
      },
      spec.alpha, spec.x0};
  const qgls::ContractionMode mode = spec.mode == "quadrilateral"
                                         ? qgls::ContractionMode::Quadrilateral
                                         : qgls::ContractionMode::TriangleSquared;
  const qgls::ContractionCertificate cert =
      qgls::solve(problem, mode, {spec.target_bound, spec.max_iterations});

  Value out = Value::object();
  out.set("op", Value::string("fixpoint"));
  out.set("mode", Value::string(mode == qgls::ContractionMode::Quadrilateral
                                    ? "quadrilateral"
                                    : "triangle_squared"));
  out.set("K", Value::number(cert.K_used));
  out.set("alpha", Value::number(cert.alpha));
  out.set("d0", Value::number(cert.d0));
  Value iterations = Value::array();
  for (const auto& it : cert.iterations) {
    Value row = Value::object();
    row.set("n", Value::integer(static_cast<long long>(it.n)));
    row.set("step_dist", Value::number(it.step_distance));
    row.set("bound", Value::number(it.bound));
    iterations.push(std::move(row));
  }
  out.set("iterations", std::move(iterations));
  std::string digest_src;
  for (double v : cert.final_point) {
    digest_src += qgls::jout::format_number(v);
    digest_src += ',';
  }
  char digest[17];
  std::snprintf(digest, sizeof(digest), "%016llx",
                static_cast<unsigned long long>(fnv1a(digest_src)));
  out.set("final_point_digest", Value::string(digest));
  out.set("n_iters", Value::integer(static_cast<long long>(cert.n_iters)));
  out.set("config", qgls::config::echo_document(doc));
  emit(opts, out.dump(2));
  return 0;
}

int run_transfer(const CommonOpts& opts) {
  const qgls::config::Document doc = load(opts);
  if (!doc.transfer)
    throw qgls::ConfigError("$.transfer: missing required section");
  const qgls::config::TransferSpec& spec = *doc.transfer;
  const qgls::PsiFunction& psi = need_psi(doc);

  qgls::ConcreteOperator op = [&]() {
    if (spec.operator_kind == "identity") return qgls::identity_operator();
    if (spec.operator_kind == "dilation")
      return qgls::dilation_operator(spec.factor);
    if (spec.operator_kind == "scaling")
      return qgls::scaling_operator(spec.factor);
    throw qgls::ConfigError("$.transfer.operator.kind: unknown operator");
  }();
  qgls::OperatorBoundProfile theta = [&]() {
    if (spec.theta_kind == "constant")
      return qgls::OperatorBoundProfile::constant(spec.theta_value, psi.lower(),
                                                  psi.upper());
    if (spec.theta_kind == "power_of_s")
      return qgls::OperatorBoundProfile::power_of_s(spec.theta_value,
                                                    psi.lower(), psi.upper());
    if (spec.theta_kind == "tabulated")
      return qgls::OperatorBoundProfile::tabulated(
          spec.theta_p_nodes, spec.theta_values, psi.lower(), psi.upper());
    throw qgls::ConfigError("$.transfer.theta.kind: unknown bound profile");
  }();

  const qgls::TransferReport report =
      qgls::verify_transfer_norm(op, theta, psi, spec.corpus, opts.tol);
  Value out = Value::object();
  out.set("op", Value::string("transfer"));
  out.set("operator_tag", Value::string(report.operator_tag));
  out.set("theta_kind", Value::string(report.theta_kind));
  out.set("max_ratio", Value::number(report.max_ratio));
  Value per = Value::array();
  for (const auto& entry : report.per_function) {
    Value row = Value::object();
    row.set("id", Value::string(entry.id));
    row.set("ratio", Value::number(entry.ratio));
    per.push(std::move(row));
  }
  out.set("per_function", std::move(per));
  out.set("config", qgls::config::echo_document(doc));
  emit(opts, out.dump(2));
  return 0;
}

int run_verify(const CommonOpts& opts, const std::string& suite) {
  const std::vector<qgls::verify::CheckResult> results =
      qgls::verify::run_suite(suite);
  const bool ok = qgls::verify::all_passed(results) && !results.empty();
  if (opts.format == "csv") {
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : results)
      rows.push_back({r.name, r.pass ? "PASS" : "FAIL", r.detail});
    emit(opts, qgls::jout::to_csv({"check", "result", "detail"}, rows));
    return ok ? 0 : 1;
  }
  Value out = Value::object();
  out.set("op", Value::string("verify"));
  Value checks = Value::array();
  for (const auto& r : results) {
    Value row = Value::object();
    row.set("name", Value::string(r.name));
    row.set("pass", Value::boolean(r.pass));
    row.set("detail", Value::string(r.detail));
    checks.push(std::move(row));
  }
  out.set("checks", std::move(checks));
  out.set("all_pass", Value::boolean(ok));
  emit(opts, out.dump(2));
  return ok ? 0 : 1;
}

void report_error(const std::string& type, const std::string& message) {
  Value err = Value::object();
  Value body = Value::object();
  body.set("type", Value::string(type));
  body.set("message", Value::string(message));
  err.set("error", std::move(body));
  std::cerr << err.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  std::setlocale(LC_ALL, "C");
  CLI::App app{"quasi-Grand-Lebesgue space toolkit"};
  app.require_subcommand(1);

  CommonOpts norm_opts, gls_opts, natural_opts, fund_opts, tail_opts, boyd_opts,
      fix_opts, transfer_opts, verify_opts;
  double norm_p = 0.5;
  std::string verify_suite;

  CLI::App* norm = app.add_subcommand("norm", "L_p quasi-norm of a function");
  add_common(norm, norm_opts);
  norm->add_option("--p", norm_p, "exponent in (0,1]")->required();

  CLI::App* gls = app.add_subcommand("gls-norm", "Grand-Lebesgue norm");
  add_common(gls, gls_opts);

  CLI::App* natural = app.add_subcommand("natural-fn", "tabulate p -> ||f||_p");
  add_common(natural, natural_opts);

  CLI::App* fundamental =
      app.add_subcommand("fundamental", "fundamental function with bounds");
  add_common(fundamental, fund_opts);

  CLI::App* tail = app.add_subcommand("tail", "tail function and tail bounds");
  add_common(tail, tail_opts);

  CLI::App* boyd = app.add_subcommand("boyd", "dilation growth exponents");
  add_common(boyd, boyd_opts);

  CLI::App* fixpoint =
      app.add_subcommand("fixpoint", "certified contraction iteration");
  add_common(fixpoint, fix_opts);

  CLI::App* transfer =
      app.add_subcommand("transfer", "operator bound transfer report");
  add_common(transfer, transfer_opts);

  CLI::App* verify = app.add_subcommand("verify", "run the invariant suite");
  add_common(verify, verify_opts, false);
  verify->add_option("--suite", verify_suite, "name filter (substring)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() != 0) report_error("ConfigError", e.what());
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (norm->parsed()) return run_norm(norm_opts, norm_p);
    if (gls->parsed()) return run_gls_norm(gls_opts);
    if (natural->parsed()) return run_natural(natural_opts);
    if (fundamental->parsed()) return run_fundamental(fund_opts);
    if (tail->parsed()) return run_tail(tail_opts);
    if (boyd->parsed()) return run_boyd(boyd_opts);
    if (fixpoint->parsed()) return run_fixpoint(fix_opts);
    if (transfer->parsed()) return run_transfer(transfer_opts);
    if (verify->parsed()) return run_verify(verify_opts, verify_suite);
  } catch (const qgls::ConfigError& e) {
    report_error("ConfigError", e.what());
    return 2;
  } catch (const qgls::Error& e) {
    report_error("ComputationError", e.what());
    return 1;
  } catch (const std::exception& e) {
    report_error("InternalError", e.what());
    return 1;
  }
  return 2;
}
