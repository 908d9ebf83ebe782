// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "heunkit/asymptotics.hpp"
#include "heunkit/cli.hpp"
#include "heunkit/errors.hpp"
#include "heunkit/hyper2f1.hpp"
#include "heunkit/integralform.hpp"
#include "heunkit/recurrence.hpp"
#include "heunkit/series3trf.hpp"
#include "heunkit/transforms192.hpp"
#include "support.hpp"

using namespace heunkit;
using testsupport::rel_err;
using testsupport::uniform;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

bool near_integer(double v, double gap) { return std::fabs(v - std::round(v)) < gap; }

// a in [-5,5] minus {0} and (-1-1e-3, -1+1e-3); the rest in [-3,3]; gamma keeps both roots regular.
HeunParams draw_reorganization_params() {
  for (;;) {
    const double a = uniform(-5, 5);
    if (a == 0.0 || std::fabs(a + 1) < 1e-3) continue;
    const double g = uniform(-3, 3);
    if (near_integer(g, 1e-2)) continue;
    return make_params(a, uniform(-3, 3), uniform(-3, 3), uniform(-3, 3), g, uniform(-3, 3));
  }
}

Outcome reorganization_identity() {
  int draws = 0, checks = 0;
  double worst = 0;
  while (draws < 60) {
    const HeunParams p = draw_reorganization_params();
    ++draws;
    for (RootKind kind : {RootKind::FirstKind, RootKind::SecondKind}) {
      const IndicialRoot r = root_of_kind(p, kind);
      const SeriesSolution s = build_series(p, r, {1.0}, 12);
      SubSeriesSpec spec;
      spec.m = 12;
      spec.I_max = 6;
      const TrfModel model = make_trf_model(p, r, spec);
      for (int k = 0; k <= 12; ++k) {
        const double got = static_cast<double>(coefficient_of_order(model, p, {1.0}, k));
        const double want = s.coeffs[k];
        const double e = want == 0.0 ? std::fabs(got) : std::fabs(got - want) / std::fabs(want);
        worst = std::max(worst, e);
        ++checks;
      }
    }
  }
  return {worst <= 1e-10, std::to_string(draws) + " draws x 2 roots, k<=12, " + std::to_string(checks) +
                              " coefficients, max rel err " + fmt("%.2e", worst) + " (tol 1e-10)"};
}

Outcome polynomial_termination() {
  // Cap prefixes alpha_0 <= alpha_1 <= alpha_2 in {0,1,2}; the outer sum continues
  // at the last cap up to depth 40 so that the comparison is not limited by truncation.
  std::vector<std::vector<int>> prefixes;
  for (int c0 = 0; c0 <= 2; ++c0)
    for (int c1 = c0; c1 <= 2; ++c1)
      for (int c2 = c1; c2 <= 2; ++c2) prefixes.push_back({c0, c1, c2});
  const int depth = 40;
  double worst = 0, worst_infinite = 0;
  int points = 0, zero_hits = 0, zero_checks = 0;
  for (TrfVariant v : {TrfVariant::PolyBTerm_S, TrfVariant::PolyBTerm_B}) {
    for (const auto& pre : prefixes) {
      std::vector<int> caps(pre);
      while (static_cast<int>(caps.size()) <= depth) caps.push_back(pre.back());
      std::vector<int> bcaps(caps.size(), 2);
      for (RootKind kind : {RootKind::FirstKind, RootKind::SecondKind}) {
        const double a = uniform(1.5, 4.0);
        const double g = kind == RootKind::FirstKind ? uniform(0.6, 1.8) : uniform(0.2, 0.8);
        const double lam = kind == RootKind::FirstKind ? 0.0 : 1.0 - g;
        const double alpha = bterm_alpha(caps[0], lam);
        const double beta = v == TrfVariant::PolyBTerm_B ? bterm_alpha(bcaps[0], lam) : uniform(-1.5, 1.5);
        const HeunParams p = make_params(a, uniform(-1, 1), alpha, beta, g, uniform(0.2, 1.2));
        const IndicialRoot r = root_of_kind(p, kind);
        const Normalization c0 = default_normalization(r, p);
        // The B factor (n-1+lambda+alpha) must vanish at n = 2 alpha_0 + 1.
        ++zero_checks;
        zero_hits += coeff_B(p, r, 2 * caps[0] + 1) == 0.0;
        if (v == TrfVariant::PolyBTerm_B) {
          ++zero_checks;
          zero_hits += coeff_B(p, r, 2 * bcaps[0] + 1) == 0.0;
        }
        const SeriesSolution s = build_series(p, r, c0, 600);
        for (int k = 0; k < 20 / static_cast<int>(prefixes.size()) + 1; ++k) {
          const double x = testsupport::region_point(a, 0.5, true);
          const double want = eval_series(s, x).value;
          const double got = build_3trf_poly_Bterm(p, r, c0, caps, x, v, v == TrfVariant::PolyBTerm_B ? bcaps : std::vector<int>{}).value;
          worst = std::max(worst, rel_err(got, want));
          worst_infinite = std::max(worst_infinite, rel_err(build_3trf_infinite(p, r, c0, depth, 60, x).value, want));
          ++points;
        }
      }
    }
  }
  const bool zeros_ok = zero_hits == zero_checks;
  return {worst <= 1e-11 && zeros_ok,
          std::to_string(points) + " points over " + std::to_string(prefixes.size()) +
              " cap prefixes x 2 variants x 2 roots; capped-form max rel err " + fmt("%.2e", worst) +
              " (tol 1e-11); B_n zero at predicted index " + std::to_string(zero_hits) + "/" +
              std::to_string(zero_checks) + "; same parameters through the uncapped nested sums " +
              fmt("%.2e", worst_infinite)};
}

Outcome coefficient_limits() {
  // Draws keep the first-order constants of A_n a/(1+a) - 1 and -a B_n - 1 below 10.
  double worst = 0;
  for (int t = 0; t < 20; ++t) {
    const double a = (t % 2 == 0) ? uniform(0.5, 5.0) : uniform(-5.0, -2.5);
    const HeunParams p = make_params(a, uniform(-1, 1), uniform(-1, 1), uniform(-1, 1), uniform(-1, 1), uniform(-1, 1));
    const IndicialRoot r = root_of_kind(p, RootKind::FirstKind);
    const double eA = std::fabs(coeff_A(p, r, 1000000) * a / (1 + a) - 1);
    const double eB = std::fabs(coeff_B(p, r, 1000000) * (-a) - 1);
    worst = std::max({worst, eA, eB});
  }
  return {worst < 1e-5, "20 parameter sets, n = 1e6, max deviation " + fmt("%.2e", worst) + " (tol 1e-5)"};
}

Outcome region_fidelity() {
  const double s2 = std::sqrt(2.0);
  const double specials[] = {1.0, -3 - 2 * s2, -3 + 2 * s2, 0.0};
  int mismatches = 0, endpoint_fail = 0, endpoints = 0;
  double worst = 0;
  for (int t = 0; t < 10000; ++t) {
    const double a = (t % 100 == 0) ? specials[(t / 100) % 4] : uniform(-10, 10);
    const double x = uniform(-12, 12);
    const RegionReport rep = classify_region(a, x);
    const bool raw = a != 0.0 && std::fabs(-x * x / a + (1 + a) * x / a) < 1.0;
    mismatches += rep.contains_x != raw;
    for (const Interval& iv : rep.intervals)
      for (double e : {iv.lo, iv.hi}) {
        const double d = std::fabs(std::fabs(-e * e / a + (1 + a) * e / a) - 1);
        worst = std::max(worst, d);
        endpoint_fail += d > 1e-12;
        ++endpoints;
      }
  }
  return {mismatches == 0 && endpoint_fail == 0,
          "10000 (a,x), " + std::to_string(mismatches) + " mismatches, " + std::to_string(endpoints) +
              " endpoints, max ||f|-1| " + fmt("%.2e", worst) + " (tol 1e-12)"};
}

Outcome hypergeometric_reduction() {
  double worst = 0;
  int n = 0;
  while (n < 100) {
    const HeunParams p = draw_reorganization_params();
    const double x = testsupport::region_point(p.a, 0.9, false);
    if (std::isnan(x)) continue;
    const double z = -x * x / p.a;
    const double want = gauss_2f1(p.alpha / 2, p.beta / 2, 0.5 + p.gamma / 2, z);
    SubSeriesSpec spec;
    spec.m = 0;
    spec.I_max = 3000;
    const TrfModel model = make_trf_model(p, root_of_kind(p, RootKind::FirstKind), spec);
    const double got = trf_sub_term(model, p, {1.0}, 0, x);
    worst = std::max(worst, std::fabs(got - want) / std::max(1.0, std::fabs(want)));
    ++n;
  }
  return {worst <= 1e-12, "100 points, max rel err " + fmt("%.2e", worst) + " (tol 1e-12)"};
}

HeunParams kernel_params(double alpha, double beta) {
  return make_params(uniform(1.2, 4), uniform(-1, 1), alpha, beta, uniform(1.1, 2.5), uniform(0.2, 1.5));
}

Outcome kernel_identity() {
  double worst = 0;
  int count = 0;
  for (int draw = 0; draw < 20; ++draw) {
    for (TrfVariant v : {TrfVariant::PolyBTerm_S, TrfVariant::PolyBTerm_B, TrfVariant::InfiniteSeries}) {
      std::vector<int> caps(4), bcaps(4);
      caps[0] = testsupport::uniform_int(0, 2);
      for (int i = 1; i < 4; ++i) caps[i] = std::min(4, caps[i - 1] + testsupport::uniform_int(0, 1));
      for (int i = 0; i < 4; ++i) bcaps[i] = std::min(4, caps[i] + testsupport::uniform_int(0, 1));
      for (int i = 1; i < 4; ++i) bcaps[i] = std::max(bcaps[i], bcaps[i - 1]);
      HeunParams p = v == TrfVariant::InfiniteSeries
                         ? kernel_params(uniform(-2, 2), uniform(-2, 2))
                         : kernel_params(bterm_alpha(caps[0], 0),
                                         v == TrfVariant::PolyBTerm_B ? bterm_alpha(bcaps[0], 0) : uniform(-2, 2));
      SubSeriesSpec spec;
      spec.m = 3;
      spec.variant = v;
      spec.index_caps = caps;
      spec.beta_caps = bcaps;
      spec.I_max = 40;
      const TrfModel model = make_trf_model(p, root_of_kind(p, RootKind::FirstKind), spec);
      const double z = uniform(-0.5, 0.5);
      for (int l = 1; l <= 3; ++l)
        for (int ip = 0; ip <= caps[l - 1]; ++ip) {
          const double want = kernel_pochhammer_sum(model, l, ip, z);
          const double got = kernel_integral(model, l, ip, z);
          worst = std::max(worst, std::fabs(got - want) / std::max(1.0, std::fabs(want)));
          ++count;
        }
    }
  }
  return {worst <= 1e-8, "20 draws x 3 variants, " + std::to_string(count) + " kernels, max err " + fmt("%.2e", worst) +
                             " (tol 1e-8)"};
}

Outcome subintegrals() {
  double w1p = 0, w2p = 0, w1i = 0, w2i = 0;
  for (int t = 0; t < 10; ++t) {
    // Polynomial: alpha-capped and alpha/beta-capped alternate.
    const TrfVariant v = t % 2 == 0 ? TrfVariant::PolyBTerm_S : TrfVariant::PolyBTerm_B;
    std::vector<int> caps(3), bcaps(3);
    caps[0] = testsupport::uniform_int(0, 2);
    for (int i = 1; i < 3; ++i) caps[i] = std::min(4, caps[i - 1] + testsupport::uniform_int(0, 1));
    for (int i = 0; i < 3; ++i) bcaps[i] = caps[i] + 1;
    const double a = t % 3 == 0 ? uniform(-4, -1.2) : uniform(1.2, 4);
    const HeunParams p = make_params(a, uniform(-1, 1), bterm_alpha(caps[0], 0),
                                     v == TrfVariant::PolyBTerm_B ? bterm_alpha(bcaps[0], 0) : uniform(-1.5, 1.5),
                                     uniform(0.3, 1.8), uniform(0.2, 1.2));
    const IndicialRoot r = root_of_kind(p, RootKind::FirstKind);
    const double x = testsupport::region_point(a, 0.7, false);
    SubSeriesSpec spec;
    spec.m = 2;
    spec.variant = v;
    spec.index_caps = caps;
    spec.beta_caps = bcaps;
    const TrfModel model = make_trf_model(p, r, spec);
    const std::vector<double> dc(caps.begin(), caps.end()), db(bcaps.begin(), bcaps.end());
    w1p = std::max(w1p, rel_err(eval_subintegral_poly(p, r, {1.0}, 1, dc, x, {}, v, db), trf_sub_term(model, p, {1.0}, 1, x)));
    w2p = std::max(w2p, rel_err(eval_subintegral_poly(p, r, {1.0}, 2, dc, x, {}, v, db), trf_sub_term(model, p, {1.0}, 2, x)));

    // Infinite series.
    const double ai = t % 3 == 0 ? uniform(-4, -1.2) : uniform(1.2, 4);
    const HeunParams q = make_params(ai, uniform(-1, 1), uniform(-1.5, 1.5), uniform(-1.5, 1.5), uniform(0.3, 1.8),
                                     uniform(0.2, 1.2));
    const IndicialRoot rq = root_of_kind(q, RootKind::FirstKind);
    const double xi = testsupport::region_point(ai, 0.7, false);
    const TrfResult ser = build_3trf_infinite(q, rq, {1.0}, 2, 60, xi);
    w1i = std::max(w1i, rel_err(eval_subintegral_infinite_structural(q, rq, {1.0}, 1, xi, 60), ser.partials[1]));
    w2i = std::max(w2i, rel_err(eval_subintegral_infinite_structural(q, rq, {1.0}, 2, xi, 60), ser.partials[2]));
  }
  return {w1p <= 1e-8 && w1i <= 1e-8 && w2p <= 1e-6 && w2i <= 1e-6,
          "10 points each; polynomial y1 " + fmt("%.2e", w1p) + ", y2 " + fmt("%.2e", w2p) + "; infinite y1 " +
              fmt("%.2e", w1i) + ", y2 " + fmt("%.2e", w2i) + " (tol 1e-8 / 1e-6)"};
}

Outcome transforms() {
  int passed = 0, total = 0, control_caught = 0;
  double worst_res = 0;
  for (const LocalTransform& t : builtin_transforms()) {
    for (double a : {2.5, 0.35, -1.8}) {
      const HeunParams p = testsupport::linear_instance(t, a);
      const std::vector<double> xs = testsupport::transform_samples(t, p, 5);
      const ResidualReport rep = residual_verify(t, p, xs, 60, 1e-8);
      ++total;
      passed += rep.passed && xs.size() == 5;
      worst_res = std::max(worst_res, rep.max_residual);
      if (a == 2.5) {
        LocalTransform bad = t;
        bad.q = Expr::parse("(" + t.q.text() + ") + 0.5");
        control_caught += !residual_verify(bad, p, xs, 60, 1e-8).passed;
      }
    }
  }
  double worst_form = 0;
  int form_points = 0, short_branches = 0;
  for (const LocalTransform& t : builtin_transforms())
    for (AsymptoticBranch br : {AsymptoticBranch::Infinite, AsymptoticBranch::NearMinusOne, AsymptoticBranch::LargeA}) {
      int hits = 0;
      for (int tries = 0; tries < 50000 && hits < 100; ++tries) {
        const double a = uniform(-6, 6);
        if (std::fabs(a) < 0.05 || std::fabs(a - 1) < 0.05) continue;
        const double x = uniform(-4, 4);
        if (std::fabs(x) < 1e-3 || std::fabs(x - a) < 1e-3) continue;
        const HeunParams p = make_params(a, 0.3, 0.4, 0.5, 0.6, 0.7);
        double got;
        try {
          got = transform_asymptotic(t, p, x, br);
        } catch (const Error&) {
          continue;
        }
        const double want = testsupport::printed_asymptotic(t.id, br, a, x);
        worst_form = std::max(worst_form, std::fabs(got - want) / std::max(1.0, std::fabs(want)));
        ++hits;
      }
      form_points += hits;
      short_branches += hits < 100;
    }
  const int ntrans = static_cast<int>(builtin_transforms().size());
  return {passed == total && control_caught == ntrans && worst_form <= 1e-12 && short_branches == 0,
          "residual " + std::to_string(passed) + "/" + std::to_string(total) + " instances, max " +
              fmt("%.2e", worst_res) + " (tol 1e-8); closed forms " + std::to_string(form_points) +
              " points, max err " + fmt("%.2e", worst_form) + " (tol 1e-12); mutated q caught " +
              std::to_string(control_caught) + "/" + std::to_string(ntrans)};
}

int cli(std::vector<std::string> args, std::string* out_text = nullptr) {
  args.insert(args.begin(), "heunkit");
  std::vector<const char*> argv;
  for (const auto& s : args) argv.push_back(s.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  return code;
}

Outcome cli_contract() {
  const std::vector<std::string> golden = {"compare", "--a", "3", "--q", "0.7", "--alpha", "0.3", "--beta", "1.2",
                                           "--gamma", "1.4", "--delta", "0.6", "--x", "0.3,0.5"};
  const int ok = cli(golden);
  std::vector<std::string> tight = golden;
  tight.insert(tight.end(), {"--tol", "1e-12"});
  const int breach = cli(tight);
  std::string region_out;
  const int region = cli({"region", "--a", "0"}, &region_out);
  const bool no_solution = region_out.find("no solution") != std::string::npos;
  return {ok == 0 && breach == 4 && region == 0 && no_solution,
          "compare golden exit " + std::to_string(ok) + ", tightened tol exit " + std::to_string(breach) +
              ", region --a 0 " + (no_solution ? "prints" : "does not print") + " \"no solution\""};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all = {
      {1, "reorganization identity", 10, reorganization_identity},
      {2, "polynomial termination", 5, polynomial_termination},
      {3, "asymptotic limits", 1, coefficient_limits},
      {4, "region table fidelity", 2, region_fidelity},
      {5, "hypergeometric reduction", 1, hypergeometric_reduction},
      {6, "beta/contour kernel identity", 30, kernel_identity},
      {7, "integral vs series sub-terms", 60, subintegrals},
      {8, "transforms and closed forms", 30, transforms},
      {9, "CLI contract", 1, cli_contract},
  };
  int failures = 0;
  for (const auto& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = o.pass && in_time;
    failures += !pass;
    std::printf("criterion %d %s: %s | %s | %.2fs (budget %gs)%s\n", c.id, c.name, pass ? "PASS" : "FAIL",
                o.detail.c_str(), secs, c.budget_s, in_time ? "" : " over budget");
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
