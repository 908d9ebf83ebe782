#include "heunkit/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "heunkit/asymptotics.hpp"
#include "heunkit/errors.hpp"
#include "heunkit/integralform.hpp"
#include "heunkit/params.hpp"
#include "heunkit/recurrence.hpp"
#include "heunkit/series3trf.hpp"
#include "heunkit/transforms192.hpp"

namespace heunkit {

namespace {

using Cell = std::variant<double, std::string, bool>;

struct Table {
  std::vector<std::string> cols;
  std::vector<std::vector<Cell>> rows;
};

std::string fmt_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_cell(const Cell& c) {
  if (auto d = std::get_if<double>(&c)) return fmt_number(*d);
  if (auto b = std::get_if<bool>(&c)) return *b ? "true" : "false";
  const std::string& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

std::string json_cell(const Cell& c) {
  if (auto d = std::get_if<double>(&c)) return std::isfinite(*d) ? fmt_number(*d) : "null";
  if (auto b = std::get_if<bool>(&c)) return *b ? "true" : "false";
  return nlohmann::json(std::get<std::string>(c)).dump();
}

void write_table(const Table& t, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << "[";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      out << (r ? ",\n " : "\n ") << "{";
      for (std::size_t c = 0; c < t.cols.size(); ++c)
        out << (c ? ", " : "") << nlohmann::json(t.cols[c]).dump() << ": " << json_cell(t.rows[r][c]);
      out << "}";
    }
    out << "\n]\n";
    return;
  }
  for (std::size_t c = 0; c < t.cols.size(); ++c) out << (c ? "," : "") << t.cols[c];
  out << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << csv_cell(row[c]);
    out << "\n";
  }
}

struct RunConfig {
  double a = 0, q = 0, alpha = 1, beta = 1, gamma = 1, delta = 1;
  std::string lambda_kind = "first";
  std::string x_list;
  std::string x_grid;
  std::string engine = "recurrence";
  std::string format = "csv";
  double tol = 1e-8;
  int N = 200;
  int M = 30;
  int I_max = 60;
  int n_depth = 0;
  std::string caps, beta_caps, variant = "S";
  std::string transform, registry, branch;
  std::vector<double> xs;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("cannot parse number '" + item + "'");
    }
  }
  return out;
}

std::vector<double> resolve_xs(const RunConfig& cfg) {
  std::vector<double> xs;
  if (!cfg.x_list.empty()) xs = parse_list(cfg.x_list);
  if (!cfg.x_grid.empty()) {
    std::string g = cfg.x_grid;
    for (char& c : g)
      if (c == ':') c = ',';
    const auto v = parse_list(g);
    if (v.size() != 3 || !(v[2] > 0.0) || !(v[1] >= v[0])) throw UsageError("--x-grid expects start:stop:step with step > 0");
    const long count = std::lround(std::floor((v[1] - v[0]) / v[2] + 1e-9));
    if (count > 1000000) throw UsageError("--x-grid too large");
    for (long k = 0; k <= count; ++k) xs.push_back(v[0] + k * v[2]);
  }
  if (xs.empty()) throw UsageError("no evaluation points: use --x or --x-grid");
  for (std::size_t i = 1; i < xs.size() && !cfg.x_grid.empty(); ++i)
    if (!(xs[i] > xs[i - 1])) throw UsageError("grid must be strictly increasing");
  return xs;
}

std::vector<int> parse_caps(const std::string& s) {
  std::vector<int> out;
  for (double v : parse_list(s)) {
    if (!(v >= 0.0) || v != std::floor(v)) throw UsageError("caps must be nonnegative integers");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

TrfVariant parse_variant(const std::string& v) {
  if (v == "S") return TrfVariant::PolyBTerm_S;
  if (v == "B") return TrfVariant::PolyBTerm_B;
  throw UsageError("--variant must be S or B");
}

HeunParams params_of(const RunConfig& c) { return make_params(c.a, c.q, c.alpha, c.beta, c.gamma, c.delta); }

IndicialRoot root_of(const RunConfig& c, const HeunParams& p) {
  return root_of_kind(p, c.lambda_kind == "second" ? RootKind::SecondKind : RootKind::FirstKind);
}

int cmd_eval(const RunConfig& cfg, std::ostream& out) {
  const HeunParams p = params_of(cfg);
  const IndicialRoot r = root_of(cfg, p);
  const Normalization c0 = default_normalization(r, p);
  Table t{{"x", "value", "tail_estimate", "in_region"}, {}};
  if (cfg.engine == "recurrence") {
    const SeriesSolution s = build_series(p, r, c0, cfg.N);
    for (double x : cfg.xs) {
      const SeriesValue v = eval_series(s, x);
      t.rows.push_back({x, v.value, v.last_term, classify_region(p.a, x).contains_x});
    }
  } else if (cfg.engine == "trf3") {
    for (double x : cfg.xs) {
      TrfResult res;
      if (!cfg.caps.empty())
        res = build_3trf_poly_Bterm(p, r, c0, parse_caps(cfg.caps), x, parse_variant(cfg.variant),
                                    cfg.beta_caps.empty() ? std::vector<int>{} : parse_caps(cfg.beta_caps));
      else
        res = build_3trf_infinite(p, r, c0, cfg.M, cfg.I_max, x);
      const double tail = res.partials.empty() ? 0.0 : std::fabs(res.partials.back());
      t.rows.push_back({x, res.value, tail, classify_region(p.a, x).contains_x});
    }
  } else {
    throw UsageError("--engine must be recurrence or trf3");
  }
  write_table(t, cfg.format, out);
  return kExitOk;
}

std::string interval_text(const RegionReport& rep) {
  if (rep.a_branch == RegionRow::NoSolution) return "no solution";
  std::string s;
  for (std::size_t i = 0; i < rep.intervals.size(); ++i) {
    if (i) s += " U ";
    s += "(" + fmt_number(rep.intervals[i].lo) + ", " + fmt_number(rep.intervals[i].hi) + ")";
  }
  return s;
}

int cmd_region(const RunConfig& cfg, std::ostream& out) {
  Table t{{"a", "row", "intervals", "x", "inside"}, {}};
  for (double x : cfg.xs) {
    const RegionReport rep = classify_region(cfg.a, x);
    t.rows.push_back({cfg.a, std::string(to_string(rep.a_branch)), interval_text(rep), x, rep.contains_x});
  }
  write_table(t, cfg.format, out);
  return kExitOk;
}

double rel_diff(double u, double v) {
  const double scale = std::max(std::fabs(u), std::fabs(v));
  if (scale == 0.0) return 0.0;
  const double d = std::fabs(u - v) / scale;
  return std::isnan(d) ? std::numeric_limits<double>::infinity() : d;
}

int cmd_compare(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const HeunParams p = params_of(cfg);
  const IndicialRoot r = root_of(cfg, p);
  const Normalization c0 = default_normalization(r, p);
  if (cfg.n_depth < 0 || cfg.n_depth > 3) throw UsageError("--n-depth must be 0..3");
  const bool poly = !cfg.caps.empty();
  std::vector<int> caps, bcaps;
  TrfVariant variant = TrfVariant::InfiniteSeries;
  if (poly) {
    caps = parse_caps(cfg.caps);
    variant = parse_variant(cfg.variant);
    if (!cfg.beta_caps.empty()) bcaps = parse_caps(cfg.beta_caps);
  }
  Table t{{"x", "recurrence", "trf3", "rel_recurrence_trf3"}, {}};
  for (int n = 1; n <= cfg.n_depth; ++n) {
    const std::string k = std::to_string(n);
    t.cols.insert(t.cols.end(), {"y" + k + "_series", "y" + k + "_integral", "rel_y" + k});
  }
  const SeriesSolution s = build_series(p, r, c0, cfg.N);
  SubSeriesSpec spec;
  spec.m = poly ? static_cast<int>(caps.size()) - 1 : cfg.M;
  spec.I_max = cfg.I_max;
  spec.variant = variant;
  spec.index_caps = caps;
  spec.beta_caps = bcaps;
  const TrfModel model = make_trf_model(p, r, spec);
  if (cfg.n_depth > spec.m) throw UsageError("--n-depth exceeds the number of sub-series");
  double worst = 0.0;
  for (double x : cfg.xs) {
    if (!classify_region(p.a, x).contains_x)
      throw Error(ErrorCode::OutsideRegion, "asymptotics", "x = " + fmt_number(x) + " outside the convergence region");
    if (!(std::fabs(x) < std::min(1.0, std::fabs(p.a))))
      throw Error(ErrorCode::OutsideRegion, "recurrence", "x = " + fmt_number(x) + " outside the disc |x| < min(1, |a|)");
    const double vr = eval_series(s, x).value;
    const double vt = poly ? build_3trf_poly_Bterm(p, r, c0, caps, x, variant, bcaps).value
                           : build_3trf_infinite(p, r, c0, cfg.M, cfg.I_max, x).value;
    std::vector<Cell> row{x, vr, vt, rel_diff(vr, vt)};
    worst = std::max(worst, rel_diff(vr, vt));
    for (int n = 1; n <= cfg.n_depth; ++n) {
      const double ys = trf_sub_term(model, p, c0, n, x);
      double yi;
      if (poly) {
        std::vector<double> dc(caps.begin(), caps.end()), db(bcaps.begin(), bcaps.end());
        yi = eval_subintegral_poly(p, r, c0, n, dc, x, {}, variant, db);
      } else {
        if (n > 2) throw UsageError("the infinite-series integral form supports --n-depth <= 2");
        yi = eval_subintegral_infinite_structural(p, r, c0, n, x, std::min(cfg.I_max, 40));
      }
      row.insert(row.end(), {ys, yi, rel_diff(ys, yi)});
      worst = std::max(worst, rel_diff(ys, yi));
    }
    t.rows.push_back(row);
  }
  write_table(t, cfg.format, out);
  if (worst > cfg.tol) {
    err << "compare: max relative discrepancy " << fmt_number(worst) << " exceeds tol " << fmt_number(cfg.tol) << "\n";
    return kExitVerification;
  }
  return kExitOk;
}

std::vector<LocalTransform> load_registry(const RunConfig& cfg) {
  if (cfg.registry.empty()) return builtin_transforms();
  std::ifstream in(cfg.registry);
  if (!in) throw UsageError("cannot read registry file " + cfg.registry);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_registry(ss.str());
}

double try_asymptotic(const LocalTransform& t, const HeunParams& p, double x, AsymptoticBranch b) {
  try {
    return transform_asymptotic(t, p, x, b);
  } catch (const Error&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

int cmd_transform(const RunConfig& cfg, std::ostream& out) {
  const HeunParams p = params_of(cfg);
  const auto reg = load_registry(cfg);
  if (cfg.transform.empty()) throw UsageError("--transform is required");
  const LocalTransform& tr = find_transform(reg, cfg.transform);
  EngineOptions opt;
  opt.N = cfg.N;
  if (cfg.engine == "trf3") {
    opt.engine = Engine::TRF3;
    if (!cfg.caps.empty()) {
      opt.caps = parse_caps(cfg.caps);
      opt.variant = parse_variant(cfg.variant);
      if (!cfg.beta_caps.empty()) opt.beta_caps = parse_caps(cfg.beta_caps);
    }
  } else if (cfg.engine != "recurrence") {
    throw UsageError("--engine must be recurrence or trf3");
  }
  Table t{{"transform", "x", "xi", "a_mapped", "prefactor", "series", "value", "tail_estimate", "asymptotic_infinite",
           "asymptotic_near_minus_one", "asymptotic_large_a"},
          {}};
  for (double x : cfg.xs) {
    const TransformValue v = apply_transform(tr, p, x, opt);
    t.rows.push_back({tr.id, x, v.xi, v.mapped.a, v.prefactor, v.series, v.value, v.tail_estimate,
                      try_asymptotic(tr, p, x, AsymptoticBranch::Infinite),
                      try_asymptotic(tr, p, x, AsymptoticBranch::NearMinusOne),
                      try_asymptotic(tr, p, x, AsymptoticBranch::LargeA)});
  }
  write_table(t, cfg.format, out);
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const HeunParams p = params_of(cfg);
  const auto reg = load_registry(cfg);
  std::vector<const LocalTransform*> chosen;
  if (cfg.transform.empty() || cfg.transform == "all")
    for (const auto& t : reg) chosen.push_back(&t);
  else
    chosen.push_back(&find_transform(reg, cfg.transform));
  const Engine engine = cfg.engine == "trf3" ? Engine::TRF3 : Engine::Recurrence;
  Table t{{"transform", "x", "residual", "passed", "error"}, {}};
  bool ok = true;
  for (const LocalTransform* tr : chosen) {
    const ResidualReport rep = residual_verify(*tr, p, cfg.xs, cfg.N, cfg.tol, engine);
    ok = ok && rep.passed;
    for (std::size_t i = 0; i < rep.xs.size(); ++i)
      t.rows.push_back({tr->id, rep.xs[i], rep.residuals[i],
                        rep.errors[i].empty() && rep.residuals[i] <= cfg.tol, rep.errors[i]});
  }
  write_table(t, cfg.format, out);
  if (!ok) {
    err << "verify: residual above tol " << fmt_number(cfg.tol) << " or failed samples\n";
    return kExitVerification;
  }
  return kExitOk;
}

void env_defaults(RunConfig& cfg) {
  if (const char* s = std::getenv("HEUNKIT_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(s, &end);
    if (end != s && v > 0.0) cfg.tol = v;
  }
  if (const char* s = std::getenv("HEUNKIT_MAXTERMS")) {
    char* end = nullptr;
    const long v = std::strtol(s, &end, 10);
    if (end != s && v > 0 && v < 1000000) cfg.N = static_cast<int>(v);
  }
}

void add_param_flags(CLI::App* sub, RunConfig& cfg, bool full) {
  sub->add_option("--a", cfg.a, "singular point a")->required();
  sub->add_option("--x", cfg.x_list, "evaluation point(s), comma separated");
  sub->add_option("--x-grid", cfg.x_grid, "start:stop:step");
  sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  if (!full) return;
  sub->add_option("--q", cfg.q, "accessory parameter");
  sub->add_option("--alpha", cfg.alpha);
  sub->add_option("--beta", cfg.beta);
  sub->add_option("--gamma", cfg.gamma);
  sub->add_option("--delta", cfg.delta);
  sub->add_option("--lambda-kind", cfg.lambda_kind, "indicial root")->check(CLI::IsMember({"first", "second"}));
  sub->add_option("--engine", cfg.engine, "recurrence or trf3");
  sub->add_option("--tol", cfg.tol, "tolerance (env HEUNKIT_TOL)");
  sub->add_option("--N", cfg.N, "recurrence order (env HEUNKIT_MAXTERMS)")->check(CLI::Range(1, 100000));
  sub->add_option("--M", cfg.M, "outer depth of the nested sums")->check(CLI::Range(0, 200));
  sub->add_option("--imax", cfg.I_max, "inner index cap")->check(CLI::Range(1, 2000));
  sub->add_option("--caps", cfg.caps, "alpha_0,...,alpha_M for the B-terminated forms");
  sub->add_option("--beta-caps", cfg.beta_caps, "beta_0,...,beta_M for variant B");
  sub->add_option("--variant", cfg.variant, "S or B");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  env_defaults(cfg);
  CLI::App app{"heunkit: local solutions of the general Heun equation"};
  app.require_subcommand(1);
  auto* eval = app.add_subcommand("eval", "evaluate the local solution at x");
  auto* region = app.add_subcommand("region", "convergence region of the frozen-coefficient series");
  auto* compare = app.add_subcommand("compare", "cross-check recurrence, nested sums and integral forms");
  auto* transform = app.add_subcommand("transform", "evaluate a transformed local solution");
  auto* verify = app.add_subcommand("verify", "residual check of transformed local solutions");
  add_param_flags(eval, cfg, true);
  add_param_flags(region, cfg, false);
  add_param_flags(compare, cfg, true);
  compare->add_option("--n-depth", cfg.n_depth, "also compare integral sub-terms y_1..y_n");
  add_param_flags(transform, cfg, true);
  add_param_flags(verify, cfg, true);
  for (auto* sub : {transform, verify}) {
    sub->add_option("--transform", cfg.transform, "transform id (verify: 'all' by default)");
    sub->add_option("--registry", cfg.registry, "registry file replacing the built-in transforms");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*region && cfg.x_list.empty() && cfg.x_grid.empty())
      cfg.xs = {std::numeric_limits<double>::quiet_NaN()};
    else
      cfg.xs = resolve_xs(cfg);
    if (*eval) return cmd_eval(cfg, out);
    if (*region) return cmd_region(cfg, out);
    if (*compare) return cmd_compare(cfg, out, err);
    if (*transform) return cmd_transform(cfg, out);
    if (*verify) return cmd_verify(cfg, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace heunkit
