#include "heunkit/transforms192.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "heunkit/asymptotics.hpp"
#include "heunkit/errors.hpp"

namespace heunkit {

Env param_env(const HeunParams& p) {
  return {{"a", p.a},         {"q", p.q},         {"alpha", p.alpha},       {"beta", p.beta},
          {"gamma", p.gamma}, {"delta", p.delta}, {"epsilon", p.epsilon()}};
}

HeunParams map_params(const LocalTransform& t, const HeunParams& p) {
  const Env env = param_env(p);
  return make_params(t.a.eval(env), t.q.eval(env), t.alpha.eval(env), t.beta.eval(env), t.gamma.eval(env),
                     t.delta.eval(env));
}

Jet2 map_variable_jet(const LocalTransform& t, const HeunParams& p, double x) {
  Env env = param_env(p);
  env["x"] = x;
  return t.xi.eval_jet(env, "x");
}

double map_variable(const LocalTransform& t, const HeunParams& p, double x) { return map_variable_jet(t, p, x).v; }

Jet2 prefactor_jet(const LocalTransform& t, const HeunParams& p, double x) {
  Env env = param_env(p);
  env["x"] = x;
  Jet2 out = Jet2::constant(1.0);
  for (const auto& term : t.prefactor) out = out * pow(term.base.eval_jet(env, "x"), term.exponent.eval(env));
  return out;
}

namespace {

// Table-1 region of (a', xi) and the disc |xi| < min(1, |a'|) where the series at 0 converges.
void require_mapped_region(const HeunParams& mp, double xi) {
  if (!classify_region(mp.a, xi).contains_x || !(std::fabs(xi) < std::min(1.0, std::fabs(mp.a))))
    throw Error(ErrorCode::OutsideMappedRegion, "transforms192",
                "xi = " + std::to_string(xi) + " outside the convergence region for a' = " + std::to_string(mp.a));
}

}  // namespace

SeriesSolution trf3_series(const HeunParams& p, const IndicialRoot& r, Normalization c0, int N) {
  if (r.kind == RootKind::SecondKind && is_integer(r.lambda))
    throw Error(ErrorCode::DegenerateSecondKind, "series3trf", "1-gamma is an integer");
  SubSeriesSpec spec;
  spec.m = N;
  spec.I_max = std::max(1, (N + 1) / 2);
  const TrfModel model = make_trf_model(p, r, spec);
  SeriesSolution s;
  s.root = r;
  s.c0 = c0.c0;
  s.truncation_order = N;
  for (int k = 0; k <= N; ++k) s.coeffs_ext.push_back(coefficient_of_order(model, p, c0, k));
  s.coeffs.assign(s.coeffs_ext.begin(), s.coeffs_ext.end());
  return s;
}

TransformValue apply_transform(const LocalTransform& t, const HeunParams& p, double x, const EngineOptions& opt) {
  TransformValue out;
  out.mapped = map_params(t, p);
  out.xi = map_variable(t, p, x);
  require_mapped_region(out.mapped, out.xi);
  out.prefactor = prefactor_jet(t, p, x).v;
  const IndicialRoot root = root_of_kind(out.mapped, RootKind::FirstKind);
  if (opt.engine == Engine::Recurrence) {
    const SeriesSolution s = build_series(out.mapped, root, {1.0}, opt.N);
    const SeriesValue v = eval_series(s, out.xi);
    out.series = v.value;
    out.tail_estimate = v.last_term;
  } else if (opt.variant == TrfVariant::InfiniteSeries) {
    const int M = std::min(opt.N, 30);
    const TrfResult r = build_3trf_adaptive(out.mapped, root, {1.0}, out.xi, 1e-14, M, 60);
    out.series = r.value;
    out.tail_estimate = r.partials.empty() ? 0.0 : std::fabs(r.partials.back());
  } else {
    const TrfResult r = build_3trf_poly_Bterm(out.mapped, root, {1.0}, opt.caps, out.xi, opt.variant, opt.beta_caps);
    out.series = r.value;
    out.tail_estimate = r.partials.empty() ? 0.0 : std::fabs(r.partials.back());
  }
  out.value = out.prefactor * out.series;
  return out;
}

const char* to_string(AsymptoticBranch b) {
  switch (b) {
    case AsymptoticBranch::Infinite: return "infinite";
    case AsymptoticBranch::NearMinusOne: return "near-minus-one";
    case AsymptoticBranch::LargeA: return "large-a";
  }
  return "?";
}

double transform_asymptotic(const LocalTransform& t, const HeunParams& p, double x, AsymptoticBranch branch) {
  const double ap = t.a.eval(param_env(p));
  const double xi = map_variable(t, p, x);
  try {
    switch (branch) {
      case AsymptoticBranch::Infinite: return geometric_tail(ap, xi);
      case AsymptoticBranch::NearMinusOne: return tail_near_minus_one(ap, xi, t.odd_branch);
      case AsymptoticBranch::LargeA: return tail_large_a(ap, xi);
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::OutsideRegion)
      throw Error(ErrorCode::OutsideMappedRegion, "transforms192", e.what());
    throw;
  }
  return 0.0;
}

ResidualReport residual_verify(const LocalTransform& t, const HeunParams& p, const std::vector<double>& xs, int N,
                               double tol, Engine engine) {
  ResidualReport rep;
  rep.tol = tol;
  rep.xs = xs;
  bool ok = !xs.empty();
  for (double x : xs) {
    try {
      if (x == 0.0 || x == 1.0 || x == p.a)
        throw Error(ErrorCode::SingularPoint, "transforms192", "sample at a singular point");
      const HeunParams mp = map_params(t, p);
      const Jet2 xi = map_variable_jet(t, p, x);
      require_mapped_region(mp, xi.v);
      const IndicialRoot root = root_of_kind(mp, RootKind::FirstKind);
      const SeriesSolution s =
          engine == Engine::Recurrence ? build_series(mp, root, {1.0}, N) : trf3_series(mp, root, {1.0}, N);
      const Derivs h = eval_series_derivs(s, xi.v);
      const Jet2 P = prefactor_jet(t, p, x);
      // G(x) = H(xi(x))
      const long double G = h.y, G1 = h.y1 * xi.d, G2 = h.y2 * xi.d * xi.d + h.y1 * xi.dd;
      Derivs y;
      y.y = P.v * G;
      y.y1 = P.d * G + P.v * G1;
      y.y2 = P.dd * G + 2 * P.d * G1 + P.v * G2;
      const double res = static_cast<double>(std::fabs(heun_lhs(p, x, y)));
      rep.residuals.push_back(res);
      rep.errors.emplace_back();
      rep.max_residual = std::max(rep.max_residual, std::isfinite(res) ? res : std::numeric_limits<double>::infinity());
      if (!(res <= tol)) ok = false;
    } catch (const std::exception& e) {
      rep.residuals.push_back(std::numeric_limits<double>::quiet_NaN());
      rep.errors.emplace_back(e.what());
      ok = false;
    }
  }
  rep.passed = ok;
  return rep;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void parse_fail(int line, const std::string& why) {
  throw Error(ErrorCode::RegistryParse, "transforms192", "line " + std::to_string(line) + ": " + why);
}

void finish(LocalTransform& t, int line, std::vector<LocalTransform>& out) {
  for (const Expr* e : {&t.a, &t.q, &t.alpha, &t.beta, &t.gamma, &t.delta, &t.xi})
    if (e->empty()) parse_fail(line, "transform '" + t.id + "' is missing a parameter or variable map");
  for (const Expr* e : {&t.a, &t.q, &t.alpha, &t.beta, &t.gamma, &t.delta})
    if (e->depends_on("x")) parse_fail(line, "parameter maps of '" + t.id + "' may not use x");
  out.push_back(t);
}

}  // namespace

std::vector<LocalTransform> parse_registry(const std::string& text) {
  std::vector<LocalTransform> out;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  bool open = false;
  LocalTransform cur;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']') parse_fail(lineno, "bad header");
      if (open) finish(cur, lineno, out);
      cur = LocalTransform{};
      cur.id = trim(line.substr(1, line.size() - 2));
      if (cur.id.empty()) parse_fail(lineno, "empty id");
      open = true;
      continue;
    }
    if (!open) parse_fail(lineno, "entry before the first [id] header");
    const auto eq = line.find('=');
    if (eq == std::string::npos) parse_fail(lineno, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key == "label") {
      cur.label = val;
    } else if (key == "prefactor") {
      const auto semi = val.find(';');
      if (semi == std::string::npos) parse_fail(lineno, "prefactor needs 'base ; exponent'");
      PrefactorTerm pt{Expr::parse(trim(val.substr(0, semi))), Expr::parse(trim(val.substr(semi + 1)))};
      if (pt.exponent.depends_on("x")) parse_fail(lineno, "prefactor exponent may not use x");
      cur.prefactor.push_back(pt);
    } else if (key == "odd_branch") {
      cur.odd_branch = Expr::parse(val).eval({});
    } else {
      Expr e = Expr::parse(val);
      if (key == "a") cur.a = e;
      else if (key == "q") cur.q = e;
      else if (key == "alpha") cur.alpha = e;
      else if (key == "beta") cur.beta = e;
      else if (key == "gamma") cur.gamma = e;
      else if (key == "delta") cur.delta = e;
      else if (key == "xi") cur.xi = e;
      else if (key == "epsilon") cur.epsilon = e;
      else parse_fail(lineno, "unknown key '" + key + "'");
    }
  }
  if (open) finish(cur, lineno, out);
  return out;
}

std::string serialize_registry(const std::vector<LocalTransform>& ts) {
  std::ostringstream os;
  os.precision(17);
  for (const auto& t : ts) {
    os << "[" << t.id << "]\n";
    if (!t.label.empty()) os << "label = " << t.label << "\n";
    for (const auto& pt : t.prefactor) os << "prefactor = " << pt.base.text() << " ; " << pt.exponent.text() << "\n";
    os << "a = " << t.a.text() << "\n";
    os << "q = " << t.q.text() << "\n";
    os << "alpha = " << t.alpha.text() << "\n";
    os << "beta = " << t.beta.text() << "\n";
    os << "gamma = " << t.gamma.text() << "\n";
    os << "delta = " << t.delta.text() << "\n";
    os << "xi = " << t.xi.text() << "\n";
    if (!t.epsilon.empty()) os << "epsilon = " << t.epsilon.text() << "\n";
    os << "odd_branch = " << t.odd_branch << "\n\n";
  }
  return os.str();
}

const std::string& builtin_registry_text() {
  static const std::string text = R"(# Nine local solutions of the Heun equation obtained from Hl(a, q; alpha, beta, gamma, delta; x)
# by a prefactor, a parameter map and a Moebius change of variable.

[delta_flip]
label = (1-x)^(1-delta) Hl(a, q-(delta-1)gamma a; alpha-delta+1, beta-delta+1, gamma, 2-delta; x)
prefactor = 1 - x ; 1 - delta
a = a
q = q - (delta - 1)*gamma*a
alpha = alpha - delta + 1
beta = beta - delta + 1
gamma = gamma
delta = 2 - delta
xi = x
epsilon = epsilon
odd_branch = 0

[gamma_delta_flip]
label = x^(1-gamma) (1-x)^(1-delta) Hl(a, q-(gamma+delta-2)a-(gamma-1)(alpha+beta-gamma-delta+1); alpha-gamma-delta+2, beta-gamma-delta+2, 2-gamma, 2-delta; x)
prefactor = x ; 1 - gamma
prefactor = 1 - x ; 1 - delta
a = a
q = q - (gamma + delta - 2)*a - (gamma - 1)*(alpha + beta - gamma - delta + 1)
alpha = alpha - gamma - delta + 2
beta = beta - gamma - delta + 2
gamma = 2 - gamma
delta = 2 - delta
xi = x
epsilon = epsilon
odd_branch = 0

[reflect]
label = Hl(1-a, -q+alpha beta; alpha, beta, delta, gamma; 1-x)
a = 1 - a
q = -q + alpha*beta
alpha = alpha
beta = beta
gamma = delta
delta = gamma
xi = 1 - x
epsilon = epsilon
odd_branch = 1

[reflect_delta_flip]
label = (1-x)^(1-delta) Hl(1-a, -q+(delta-1)gamma a+(alpha-delta+1)(beta-delta+1); alpha-delta+1, beta-delta+1, 2-delta, gamma; 1-x)
prefactor = 1 - x ; 1 - delta
a = 1 - a
q = -q + (delta - 1)*gamma*a + (alpha - delta + 1)*(beta - delta + 1)
alpha = alpha - delta + 1
beta = beta - delta + 1
gamma = 2 - delta
delta = gamma
xi = 1 - x
epsilon = epsilon
odd_branch = 1

[invert]
label = x^(-alpha) Hl(1/a, (q+alpha((alpha-gamma-delta+1)a-beta+delta))/a; alpha, alpha-gamma+1, alpha-beta+1, delta; 1/x)
prefactor = x ; -alpha
a = 1/a
q = (q + alpha*((alpha - gamma - delta + 1)*a - beta + delta))/a
alpha = alpha
beta = alpha - gamma + 1
gamma = alpha - beta + 1
delta = delta
xi = 1/x
epsilon = epsilon
odd_branch = 1

[mobius_beta]
label = (1-x/a)^(-beta) Hl(1-a, -q+gamma beta; -alpha+gamma+delta, beta, gamma, delta; (1-a)x/(x-a))
prefactor = 1 - x/a ; -beta
a = 1 - a
q = -q + gamma*beta
alpha = -alpha + gamma + delta
beta = beta
gamma = gamma
delta = delta
xi = (1 - a)*x/(x - a)
epsilon = beta - alpha + 1
odd_branch = 1

[mobius_beta_delta_flip]
label = (1-x)^(1-delta) (1-x/a)^(-beta+delta-1) Hl(1-a, -q+gamma((delta-1)a+beta-delta+1); -alpha+gamma+1, beta-delta+1, gamma, 2-delta; (1-a)x/(x-a))
prefactor = 1 - x ; 1 - delta
prefactor = 1 - x/a ; -beta + delta - 1
a = 1 - a
q = -q + gamma*((delta - 1)*a + beta - delta + 1)
alpha = -alpha + gamma + 1
beta = beta - delta + 1
gamma = gamma
delta = 2 - delta
xi = (1 - a)*x/(x - a)
epsilon = beta - alpha + 1
odd_branch = 1

[invert_shift]
label = x^(-alpha) Hl((a-1)/a, (-q+alpha(delta a+beta-delta))/a; alpha, alpha-gamma+1, delta, alpha-beta+1; (x-1)/x)
prefactor = x ; -alpha
a = (a - 1)/a
q = (-q + alpha*(delta*a + beta - delta))/a
alpha = alpha
beta = alpha - gamma + 1
gamma = delta
delta = alpha - beta + 1
xi = (x - 1)/x
epsilon = epsilon
odd_branch = 1

[mobius_alpha]
label = ((x-a)/(1-a))^(-alpha) Hl(a, q-(beta-delta)alpha; alpha, -beta+gamma+delta, delta, gamma; a(x-1)/(x-a))
prefactor = (x - a)/(1 - a) ; -alpha
a = a
q = q - (beta - delta)*alpha
alpha = alpha
beta = -beta + gamma + delta
gamma = delta
delta = gamma
xi = a*(x - 1)/(x - a)
epsilon = alpha - beta + 1
odd_branch = 1
)";
  return text;
}

const std::vector<LocalTransform>& builtin_transforms() {
  static const std::vector<LocalTransform> ts = parse_registry(builtin_registry_text());
  return ts;
}

const LocalTransform& find_transform(const std::vector<LocalTransform>& ts, const std::string& id) {
  for (const auto& t : ts)
    if (t.id == id) return t;
  throw Error(ErrorCode::UnknownTransform, "transforms192", "no transform named '" + id + "'");
}

}  // namespace heunkit
