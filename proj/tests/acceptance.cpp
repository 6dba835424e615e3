// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failed criteria.  Every tolerance is pinned here; reference constants come
// from the zeta evaluator (itself certified to 1e-12 relative error).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "mmf/diagnostics.hpp"
#include "mmf/experiment.hpp"
#include "mmf/limitlaw.hpp"
#include "mmf/stats.hpp"
#include "oracles.hpp"

using namespace mmf;

namespace {

struct Harness {
  int failed = 0;
  int current = 0;
  bool current_ok = true;
  std::chrono::steady_clock::time_point started;

  void begin(int id) {
    current = id;
    current_ok = true;
    started = std::chrono::steady_clock::now();
  }

  void check(bool ok, const std::string& detail) {
    std::printf("        %-4s %s\n", ok ? "ok" : "MISS", detail.c_str());
    if (!ok) current_ok = false;
  }

  void end(const std::string& name) {
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    std::printf("[%2d] %s  %s  (%.1fs)\n", current, current_ok ? "PASS" : "FAIL", name.c_str(),
                secs);
    std::fflush(stdout);
    if (!current_ok) ++failed;
  }
};

std::string fmt(const char* pattern, double a, double b, double tol) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), pattern, a, b, std::abs(a - b), tol);
  return buf;
}

const SpfTable& table() {
  static SpfTable t(1'000'000);
  return t;
}

}  // namespace

// 1. coprimality over rectangle(3000,3000), exact, vs 6/pi^2
static void criterion_1(Harness& h) {
  h.begin(1);
  auto t0 = std::chrono::steady_clock::now();
  EmpiricalDistribution d =
      exact_distribution(builtin_gcd(2), rectangle({3000, 3000}), table());
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  double p1 = d.mass_at(Rational(1));
  double target = 6.0 / (std::numbers::pi * std::numbers::pi);
  h.check(std::abs(p1 - target) <= 0.01,
          fmt("P{GCD=1} = %.6f vs 6/pi^2 = %.6f, diff %.6f <= %.2g", p1, target, 0.01));
  h.check(secs < 60.0, "single-threaded runtime " + std::to_string(secs) + "s < 60s");
  h.end("coprimality on rectangle(3000,3000) within 0.01 of 6/pi^2");
}

// 2. zeta law pmf: d=2 hyperbolic(2,1e5) Monte Carlo, d=3 rectangle(300^3) exact
static void criterion_2(Harness& h) {
  h.begin(2);
  {
    LatticeDomain hyp = hyperbolic(2, 100'000);
    RandomStream rng(20250808);
    SamplerOptions sopt;
    sopt.strategy = SampleStrategy::Materialized;
    EmpiricalDistribution mc =
        monte_carlo_distribution(builtin_gcd(2), hyp, table(), 100'000, rng, sopt);
    for (std::int64_t j = 1; j <= 5; ++j) {
      double emp = mc.mass_at(Rational(j));
      double ref = zeta_law_pmf(2, j);
      char buf[160];
      std::snprintf(buf, sizeof(buf),
                    "d=2 hyperbolic(2,1e5) MC: j=%lld |%.5f - %.5f| = %.5f vs 0.02",
                    static_cast<long long>(j), emp, ref, std::abs(emp - ref));
      h.check(std::abs(emp - ref) <= 0.02, buf);
    }
  }
  {
    EmpiricalDistribution ex =
        exact_distribution(builtin_gcd(3), rectangle({300, 300, 300}), table());
    for (std::int64_t j = 1; j <= 5; ++j) {
      double emp = ex.mass_at(Rational(j));
      double ref = zeta_law_pmf(3, j);
      char buf[160];
      std::snprintf(buf, sizeof(buf),
                    "d=3 rectangle(300^3) exact: j=%lld |%.5f - %.5f| = %.5f vs 0.01",
                    static_cast<long long>(j), emp, ref, std::abs(emp - ref));
      h.check(std::abs(emp - ref) <= 0.01, buf);
    }
  }
  h.end("zeta law pmf at j in 1..5 (d=2 MC tol 0.02, d=3 exact tol 0.01)");
}

// 3. geometric exponent limit on rectangles
static void criterion_3(Harness& h) {
  h.begin(3);
  const std::int64_t n = 1'000'000;
  for (std::int64_t p : {2, 3, 5}) {
    // exact marginal counts by enumeration of the d=1 rectangle
    std::vector<std::int64_t> counts(32, 0);
    LatticeDomain line = rectangle({n});
    line.for_each([&](PointView x) { ++counts[table().lambda_p(x[0], p)]; });
    double worst = 0;
    bool formula_ok = true;
    for (int j = 0; j <= 6; ++j) {
      // floor-formula oracle must match the enumerated counts exactly
      std::int64_t pj = 1;
      for (int k = 0; k < j; ++k) pj *= p;
      std::int64_t oracle_count = n / pj - n / (pj * p);
      formula_ok = formula_ok && counts[j] == oracle_count;
      double exact = static_cast<double>(counts[j]) / static_cast<double>(n);
      double geo = (1.0 - 1.0 / double(p)) * std::pow(double(p), -j);
      worst = std::max(worst, std::abs(exact - geo));
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "d=1 marginal p=%lld: counts match floor formula, max_j<=6 err %.2e <= 2e-5",
                  static_cast<long long>(p), worst);
    h.check(formula_ok && worst <= 2e-5, buf);
  }
  // joint d=2 on rectangle(1000,1000), brute force, TV against the product law
  for (std::int64_t p : {2, 3, 5}) {
    constexpr int kCap = 30;
    std::vector<std::vector<std::int64_t>> joint(kCap + 1,
                                                 std::vector<std::int64_t>(kCap + 1, 0));
    LatticeDomain sq = rectangle({1000, 1000});
    sq.for_each([&](PointView x) {
      int a = table().lambda_p(x[0], p);
      int b = table().lambda_p(x[1], p);
      ++joint[a][b];
    });
    double tv = 0;
    for (int a = 0; a <= kCap; ++a) {
      for (int b = 0; b <= kCap; ++b) {
        double emp = static_cast<double>(joint[a][b]) / 1e6;
        double geo = (1.0 - 1.0 / double(p)) * std::pow(double(p), -a) *
                     (1.0 - 1.0 / double(p)) * std::pow(double(p), -b);
        tv += std::abs(emp - geo);
      }
    }
    tv += 2.0 * std::pow(double(p), -(kCap + 1));  // product-law mass beyond the grid
    tv /= 2.0;
    char buf[128];
    std::snprintf(buf, sizeof(buf), "d=2 joint p=%lld rectangle(1000,1000): TV %.5f <= 0.005",
                  static_cast<long long>(p), tv);
    h.check(tv <= 0.005, buf);
  }
  h.end("geometric exponent limit (marginals 2e-5, joint TV 0.005)");
}

// 4. universality of M(F) for the coprime indicator
static void criterion_4(Harness& h) {
  h.begin(4);
  MultiplicativeFunction cp = builtin_coprime_indicator(2);
  MeanValueResult mv = mean_value(cp, 10'000, 1e-10);
  double ep = mv.value.real();
  double zeta2_inv = 1.0 / zeta(2.0, 1e-12);
  h.check(std::abs(ep - zeta2_inv) <= 1e-4,
          fmt("Euler product %.6f vs 1/zeta(2) = %.6f, diff %.2e <= %.2g", ep, zeta2_inv, 1e-4));
  struct Leg {
    const char* name;
    LatticeDomain domain;
  };
  std::vector<Leg> legs;
  legs.push_back({"rectangle(1500,1500)", rectangle({1500, 1500})});
  legs.push_back({"ball(2,3e6)", ball(2, 3'000'000)});
  legs.push_back({"hyperbolic(2,2e5)", hyperbolic(2, 200'000)});
  for (const auto& leg : legs) {
    double m = empirical_mean(cp, leg.domain, table()).real();
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%s: mean %.6f vs %.6f, diff %.5f <= 0.015", leg.name, m,
                  ep, std::abs(m - ep));
    h.check(std::abs(m - ep) <= 0.015, buf);
  }
  h.end("universality of M(coprime): all domains within 0.015 of the Euler product");
}

// 5. GCD moment in d=3 over rectangle(200^3)
static void criterion_5(Harness& h) {
  h.begin(5);
  double m = empirical_mean(builtin_gcd(3), rectangle({200, 200, 200}), table()).real();
  double ref = gcd_limit_moment(3, 1.0);
  h.check(std::abs(m - ref) <= 0.03,
          fmt("mean GCD %.5f vs zeta(2)/zeta(3) = %.5f, diff %.5f <= %.2g", m, ref, 0.03));
  h.end("GCD moment d=3 within 0.03 of zeta(2)/zeta(3)");
}

// 6. LCM-ratio universality across rectangle / hyperbolic / F_infinity
static void criterion_6(Harness& h) {
  h.begin(6);
  MultiplicativeFunction lr = builtin_lcm_ratio(2);
  const std::int64_t n_draws = 100'000;

  RandomStream rng_rect(611);
  EmpiricalDistribution rect_mc = monte_carlo_distribution(
      lr, rectangle({100'000, 100'000}), table(), n_draws, rng_rect);

  RandomStream rng_hyp(612);
  SamplerOptions sopt;
  sopt.strategy = SampleStrategy::Materialized;
  EmpiricalDistribution hyp_mc = monte_carlo_distribution(
      lr, hyperbolic(2, 1'000'000), table(), n_draws, rng_hyp, sopt);

  LimitSampleConfig cfg;
  cfg.dim = 2;
  cfg.prime_cutoff = 1000;
  RandomStream rng_inf(613);
  EmpiricalDistribution f_inf = f_infinity_distribution(lr, cfg, n_draws, rng_inf);

  double ks_rh = ks_distance(rect_mc, hyp_mc);
  double ks_rf = ks_distance(rect_mc, f_inf);
  double ks_hf = ks_distance(hyp_mc, f_inf);
  char buf[160];
  std::snprintf(buf, sizeof(buf), "KS(rectangle(1e5,1e5), hyperbolic(2,1e6)) = %.4f <= 0.02",
                ks_rh);
  h.check(ks_rh <= 0.02, buf);
  std::snprintf(buf, sizeof(buf), "KS(rectangle, F_inf cutoff 1e3) = %.4f <= 0.02", ks_rf);
  h.check(ks_rf <= 0.02, buf);
  std::snprintf(buf, sizeof(buf), "KS(hyperbolic, F_inf cutoff 1e3) = %.4f <= 0.02", ks_hf);
  h.check(ks_hf <= 0.02, buf);
  h.end("LCM/(X1 X2) universality at N=1e5 (all pairwise KS <= 0.02)");
}

// 7. regular-growth diagnostics
static void criterion_7(Harness& h) {
  h.begin(7);
  DomainFamily hyp;
  for (std::int64_t n : {1000, 10'000, 100'000})
    hyp.members.emplace_back(n, hyperbolic(2, static_cast<double>(n)));
  DiagnosticsOptions opt;
  opt.with_k_estimate = false;
  opt.vanhove_threshold = 0.25;
  DiagnosticsReport rep = diagnose(hyp, opt);
  bool decreasing = true;
  double final_worst = 0;
  for (std::size_t s = 0; s < rep.shift_set.size(); ++s) {
    for (std::size_t r = 1; r < rep.per_n.size(); ++r)
      decreasing = decreasing &&
                   rep.per_n[r].shifts[s].ratio < rep.per_n[r - 1].shifts[s].ratio;
    final_worst = std::max(final_worst, rep.per_n.back().shifts[s].ratio);
  }
  h.check(decreasing, "hyperbolic family: every unit-shift ratio strictly decreases");
  char buf[128];
  std::snprintf(buf, sizeof(buf), "hyperbolic family: final ratio %.4f <= 0.25", final_worst);
  h.check(final_worst <= 0.25, buf);
  h.check(rep.regular_growth_consistent, "hyperbolic family flagged consistent");

  DomainFamily rects;
  for (std::int64_t n : {10, 100, 1000}) rects.members.emplace_back(n, rectangle({n, n}));
  DiagnosticsReport rrep = diagnose(rects, opt);
  bool exact = true;
  for (std::size_t r = 0; r < rrep.per_n.size(); ++r) {
    double expect = 2.0 / static_cast<double>(rrep.per_n[r].n);
    for (std::size_t s = 0; s < rrep.shift_set.size(); ++s)
      exact = exact && rrep.per_n[r].shifts[s].ratio == expect;
  }
  h.check(exact, "rectangle family: unit-shift ratio equals 2/n per axis exactly");
  h.end("van Hove diagnostics (hyperbolic decreasing to <= 0.25; rectangles exact 2/n)");
}

// 8. K-bound on a 30x30 grid
static void criterion_8(Harness& h) {
  h.begin(8);
  struct Entry {
    const char* name;
    LatticeDomain domain;
  };
  std::vector<Entry> sublevels;
  sublevels.push_back({"hyperbolic(2,1e4)", hyperbolic(2, 10'000)});
  sublevels.push_back({"hyperbolic(3,3000)", hyperbolic(3, 3000)});
  sublevels.push_back({"sym_poly(2,3,500)", sym_poly_hyperbolic(2, 3, 500)});
  sublevels.push_back({"tetrahedron((1,1),500)", tetrahedron({1, 1}, 500)});
  sublevels.push_back({"tetrahedron((2,3),800)", tetrahedron({2, 3}, 800)});
  auto fmax = [](PointView x) {
    double m = 0;
    for (Coord c : x) m = std::max(m, static_cast<double>(c));
    return m;
  };
  sublevels.push_back({"max-sublevel(2,300)", monotone_sublevel(2, fmax, 300)});
  for (const auto& e : sublevels) {
    KEstimate k = estimate_K(e.domain, 30, 30);
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%s: K-estimate %.6f <= 1 (argmax a=%lld b=%lld)", e.name,
                  k.value, static_cast<long long>(k.a), static_cast<long long>(k.b));
    h.check(k.value <= 1.0, buf);
  }
  KEstimate kb = estimate_K(ball(2, 10'000), 30, 30);
  char buf[128];
  std::snprintf(buf, sizeof(buf), "ball(2,1e4): K-estimate %.6f finite and <= 2", kb.value);
  h.check(kb.value <= 2.0 && kb.value > 0.0, buf);
  h.end("K-bound: sublevel domains <= 1 exactly, ball(2,1e4) <= 2, grid a,b <= 30");
}

// 9. residue uniformity on the ball family
static void criterion_9(Harness& h) {
  h.begin(9);
  std::vector<std::int64_t> moduli{2, 3};
  std::vector<double> errs;
  for (std::int64_t n : {1000, 10'000, 100'000})
    errs.push_back(residue_uniformity_error(ball(2, static_cast<double>(n)), moduli));
  char buf[160];
  std::snprintf(buf, sizeof(buf), "errors at n=1e3,1e4,1e5: %.5f, %.5f, %.5f", errs[0], errs[1],
                errs[2]);
  h.check(errs[1] < errs[0] && errs[2] < errs[1], std::string("decreasing: ") + buf);
  std::snprintf(buf, sizeof(buf), "final error %.5f <= 0.01", errs[2]);
  h.check(errs[2] <= 0.01, buf);
  h.end("residue uniformity, moduli (2,3), ball family (decreasing; final <= 0.01)");
}

// 10. cardinality asymptotics
static void criterion_10(Harness& h) {
  h.begin(10);
  LatticeDomain hyp = hyperbolic(2, 1'000'000);
  std::int64_t card = hyp.cardinality();
  std::int64_t oracle_card = 0;
  for (std::int64_t k = 1; k <= 1'000'000; ++k) oracle_card += 1'000'000 / k;
  h.check(card == oracle_card, "enumeration count equals the divisor-sum oracle");
  double ratio = static_cast<double>(card) / (1e6 * std::log(1e6));
  char buf[128];
  std::snprintf(buf, sizeof(buf), "#H(2,1e6)/(1e6 ln 1e6) = %.5f in [1.0, 1.05]", ratio);
  h.check(ratio >= 1.0 && ratio <= 1.05, buf);

  LatticeDomain tet = tetrahedron({1, 1}, 2000);
  std::int64_t tcard = tet.cardinality();
  h.check(tcard == 2000 * 1999 / 2, "tetrahedron((1,1),2000) count equals n(n-1)/2");
  double tratio = 2.0 * static_cast<double>(tcard) / (2000.0 * 2000.0);
  std::snprintf(buf, sizeof(buf), "2*#T/n^2 = %.5f within 5%% of 1", tratio);
  h.check(std::abs(tratio - 1.0) <= 0.05, buf);
  h.end("cardinality asymptotics for hyperbolic and tetrahedral domains");
}

// 11. condensed property suites, all green within 5 minutes
static void criterion_11(Harness& h) {
  h.begin(11);
  auto t0 = std::chrono::steady_clock::now();

  bool roundtrip = true;
  {
    PrimeExponentVector v;
    for (std::int64_t n = 1; n <= 1'000'000 && roundtrip; ++n) {
      table().factorize_into(n, v);
      roundtrip = v.to_rational() == Rational(n);
    }
  }
  h.check(roundtrip, "factorization round-trip for all n <= 1e6");

  {
    bool mult = true;
    std::uint64_t state = 20'250'808;
    auto next = [&state] {
      state = splitmix64(state);
      return state;
    };
    std::vector<MultiplicativeFunction> fns{builtin_gcd(2), builtin_lcm_ratio(2),
                                            builtin_coprime_indicator(2)};
    int done = 0;
    while (done < 10'000 && mult) {
      std::int64_t m1 = 1 + static_cast<std::int64_t>(next() % 60);
      std::int64_t m2 = 1 + static_cast<std::int64_t>(next() % 60);
      std::int64_t n1 = 1 + static_cast<std::int64_t>(next() % 60);
      std::int64_t n2 = 1 + static_cast<std::int64_t>(next() % 60);
      if (oracle::gcd(m1 * m2, n1 * n2) != 1) continue;
      ++done;
      for (const auto& f : fns) {
        std::vector<Coord> prod{m1 * n1, m2 * n2}, a{m1, m2}, b{n1, n2};
        mult = mult && evaluate(f, prod, table()).rational() ==
                           (evaluate(f, a, table()) * evaluate(f, b, table())).rational();
      }
    }
    h.check(mult, "multiplicativity of builtins on 1e4 coprime point pairs");
  }

  {
    LatticeDomain w = weyl_chamber(2, 40);
    std::int64_t m = w.cardinality();
    RandomStream rng(777);
    SamplerOptions sopt;
    sopt.strategy = SampleStrategy::Materialized;
    std::map<std::vector<Coord>, std::int64_t> freq;
    const std::int64_t draws = 1'000'000;
    std::vector<Coord> buf;
    for (std::int64_t i = 0; i < draws; ++i) {
      sample_uniform_into(w, rng, sopt, buf);
      ++freq[buf];
    }
    double band = 4.0 * std::sqrt(std::log(double(m)) / double(draws));
    bool ok = true;
    for (const auto& [pt, c] : freq)
      ok = ok && std::abs(double(c) / double(draws) - 1.0 / double(m)) < band;
    h.check(ok, "sampler uniformity band 4*sqrt(ln m / N) at m=820, N=1e6");
  }

  {
    std::vector<EmpiricalDistribution> ds;
    auto mk = [](std::vector<std::pair<std::int64_t, std::uint64_t>> counts) {
      std::map<Rational, std::uint64_t> m;
      for (auto [k, c] : counts) m[Rational(k)] = c;
      return EmpiricalDistribution::from_exact_counts(std::move(m));
    };
    ds.push_back(mk({{1, 5}, {2, 3}, {5, 2}}));
    ds.push_back(mk({{1, 1}, {3, 1}}));
    ds.push_back(mk({{2, 7}, {5, 3}}));
    bool metric = true;
    for (const auto& a : ds)
      for (const auto& b : ds) {
        metric = metric && std::abs(tv_distance(a, b) - tv_distance(b, a)) < 1e-15;
        metric = metric && ks_distance(a, b) <= tv_distance(a, b) + 1e-15;
        for (const auto& c : ds) {
          metric =
              metric && tv_distance(a, c) <= tv_distance(a, b) + tv_distance(b, c) + 1e-12;
          metric =
              metric && ks_distance(a, c) <= ks_distance(a, b) + ks_distance(b, c) + 1e-12;
        }
      }
    h.check(metric, "TV/KS metric axioms on distribution triples");
  }

  {
    LatticeDomain hyp = hyperbolic(2, 80);
    bool sym = true;
    std::vector<std::vector<Coord>> shifts{{1, 0}, {0, 1}, {2, 3}, {-1, 2}};
    for (const auto& c : shifts) {
      std::vector<Coord> neg{-c[0], -c[1]};
      sym = sym && symdiff_shift_count(hyp, c) == symdiff_shift_count(hyp, neg);
    }
    std::vector<Coord> e1{1, 0}, e2{0, 1}, diag{1, 1};
    sym = sym && symdiff_shift_count(hyp, diag) <=
                     symdiff_shift_count(hyp, e1) + symdiff_shift_count(hyp, e2);
    h.check(sym, "delta(c) symmetry and unit-step triangle property");
  }

  {
    EmpiricalDistribution d =
        exact_distribution(builtin_gcd(2), rectangle({100, 100}), table());
    std::uint64_t sum = 0;
    for (std::uint64_t c : d.counts()) sum += c;
    h.check(sum == d.total_count() && d.total_count() == 10'000,
            "exact pmf counts resum to the total (normalization is exact)");
  }

  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  h.check(secs < 300.0, "property suite runtime " + std::to_string(secs) + "s < 5 min");
  h.end("property suites: round-trip, multiplicativity, sampler band, metrics, delta, pmf");
}

int main() {
  std::printf("acceptance suite, library mmf %s\n", kLibraryVersion);
  Harness h;
  criterion_1(h);
  criterion_2(h);
  criterion_3(h);
  criterion_4(h);
  criterion_5(h);
  criterion_6(h);
  criterion_7(h);
  criterion_8(h);
  criterion_9(h);
  criterion_10(h);
  criterion_11(h);
  std::printf("%d of 11 criteria passed\n", 11 - h.failed);
  return h.failed;
}
