#include <doctest.h>

#include <cmath>
#include <sstream>

#include "mmf/stats.hpp"
#include "oracles.hpp"

using namespace mmf;

namespace {

const SpfTable& table() {
  static SpfTable t(1'000'000);
  return t;
}

EmpiricalDistribution hand(std::vector<std::pair<std::int64_t, std::uint64_t>> counts) {
  std::map<Rational, std::uint64_t> m;
  for (auto [k, c] : counts) m[Rational(k)] = c;
  return EmpiricalDistribution::from_exact_counts(std::move(m));
}

}  // namespace

TEST_CASE("exact distribution of gcd on a small rectangle") {
  EmpiricalDistribution d =
      exact_distribution(builtin_gcd(2), rectangle({4, 4}), table());
  CHECK(d.kind() == EmpiricalDistribution::KeyKind::Exact);
  CHECK(d.mass_at(Rational(1)) == doctest::Approx(11.0 / 16));
  CHECK(d.total_count() == 16);
  // exact normalization: integer counts resum to the total
  std::uint64_t sum = 0;
  for (std::uint64_t c : d.counts()) sum += c;
  CHECK(sum == d.total_count());
  Rational exact_total(0);
  for (std::uint64_t c : d.counts())
    exact_total = exact_total + Rational(static_cast<std::int64_t>(c),
                                         static_cast<std::int64_t>(d.total_count()));
  CHECK(exact_total == Rational(1));
}

TEST_CASE("constant function gives a point mass") {
  EmpiricalDistribution d =
      exact_distribution(builtin_one(2), rectangle({7, 9}), table());
  CHECK(d.support_size() == 1);
  CHECK(d.mass_at(Rational(1)) == 1.0);
}

TEST_CASE("exact distribution on hyperbolic(2,10) matches brute force") {
  EmpiricalDistribution d =
      exact_distribution(builtin_gcd(2), hyperbolic(2, 10), table());
  std::map<std::int64_t, std::int64_t> brute;
  std::int64_t total = 0;
  for (std::int64_t a = 1; a <= 10; ++a)
    for (std::int64_t b = 1; a * b <= 10; ++b) {
      ++brute[oracle::gcd(a, b)];
      ++total;
    }
  CHECK(total == 27);
  for (const auto& [g, c] : brute)
    CHECK(d.mass_at(Rational(g)) == doctest::Approx(double(c) / double(total)));
}

TEST_CASE("exact distribution budget error") {
  DistributionOptions opt;
  opt.enumeration_budget = 100;
  CHECK_THROWS_AS(exact_distribution(builtin_gcd(2), rectangle({100, 100}), table(), opt),
                  Error);
}

TEST_CASE("lcm ratio distribution keys are reduced fractions") {
  EmpiricalDistribution d =
      exact_distribution(builtin_lcm_ratio(2), rectangle({6, 6}), table());
  // values 1/g for g = gcd; mass at 1 equals coprime fraction
  std::int64_t coprime = 0;
  for (std::int64_t a = 1; a <= 6; ++a)
    for (std::int64_t b = 1; b <= 6; ++b)
      if (oracle::gcd(a, b) == 1) ++coprime;
  CHECK(d.mass_at(Rational(1)) == doctest::Approx(double(coprime) / 36));
  CHECK(d.mass_at(Rational(1, 2)) > 0);
}

TEST_CASE("monte carlo close to exact and deterministic") {
  LatticeDomain r = rectangle({10, 10});
  EmpiricalDistribution exact = exact_distribution(builtin_gcd(2), r, table());
  RandomStream rng(99);
  const std::int64_t n = 100'000;
  EmpiricalDistribution mc =
      monte_carlo_distribution(builtin_gcd(2), r, table(), n, rng);
  CHECK(tv_distance(mc, exact) < 4.0 / std::sqrt(double(n)));
  // bit-identical repeat with the same seed
  RandomStream rng2(99);
  EmpiricalDistribution mc2 =
      monte_carlo_distribution(builtin_gcd(2), r, table(), n, rng2);
  CHECK(tv_distance(mc, mc2) == 0.0);
  CHECK(mc.exact_keys() == mc2.exact_keys());
  CHECK(mc.counts() == mc2.counts());
  // single draw is a point mass
  RandomStream rng3(1);
  EmpiricalDistribution single =
      monte_carlo_distribution(builtin_gcd(2), r, table(), 1, rng3);
  CHECK(single.support_size() == 1);
  CHECK(single.total_mass() == 1.0);
}

TEST_CASE("monte carlo matches exact across test domains at two budgets") {
  std::vector<LatticeDomain> zoo{hyperbolic(2, 500), ball(2, 3000)};
  for (const auto& d : zoo) {
    EmpiricalDistribution exact = exact_distribution(builtin_gcd(2), d, table());
    for (std::int64_t n : {std::int64_t(10'000), std::int64_t(100'000)}) {
      RandomStream rng(7 + static_cast<std::uint64_t>(n));
      SamplerOptions sopt;
      sopt.strategy = SampleStrategy::Materialized;
      EmpiricalDistribution mc =
          monte_carlo_distribution(builtin_gcd(2), d, table(), n, rng, sopt);
      CHECK(tv_distance(mc, exact) < 4.0 / std::sqrt(double(n)));
    }
  }
}

TEST_CASE("tv distance") {
  EmpiricalDistribution p = hand({{1, 3}, {2, 1}});
  EmpiricalDistribution q = hand({{1, 2}, {2, 2}});
  CHECK(tv_distance(p, p) == 0.0);
  CHECK(tv_distance(p, q) == doctest::Approx(0.25));
  EmpiricalDistribution a = hand({{1, 1}});
  EmpiricalDistribution b = hand({{2, 1}});
  CHECK(tv_distance(a, b) == doctest::Approx(1.0));
}

TEST_CASE("ks distance") {
  EmpiricalDistribution p = hand({{1, 3}, {2, 1}});
  EmpiricalDistribution q = hand({{1, 2}, {2, 2}});
  CHECK(ks_distance(p, p) == 0.0);
  CHECK(ks_distance(p, q) == doctest::Approx(0.25));
  EmpiricalDistribution zero = hand({{0, 1}});
  EmpiricalDistribution one = hand({{1, 1}});
  CHECK(ks_distance(zero, one) == doctest::Approx(1.0));
}

TEST_CASE("metric axioms on sampled triples") {
  std::vector<EmpiricalDistribution> ds{hand({{1, 5}, {2, 3}, {5, 2}}),
                                        hand({{1, 1}, {3, 1}}),
                                        hand({{2, 7}, {5, 3}}),
                                        hand({{1, 2}, {2, 2}, {3, 2}, {4, 2}})};
  for (const auto& a : ds) {
    for (const auto& b : ds) {
      CHECK(tv_distance(a, b) == doctest::Approx(tv_distance(b, a)));
      CHECK(ks_distance(a, b) == doctest::Approx(ks_distance(b, a)));
      CHECK(tv_distance(a, b) >= 0);
      CHECK(tv_distance(a, b) <= 1);
      CHECK(ks_distance(a, b) <= tv_distance(a, b) + 1e-12);
      for (const auto& c : ds) {
        CHECK(tv_distance(a, c) <= tv_distance(a, b) + tv_distance(b, c) + 1e-12);
        CHECK(ks_distance(a, c) <= ks_distance(a, b) + ks_distance(b, c) + 1e-12);
      }
    }
  }
}

TEST_CASE("mixed key kinds are rejected") {
  EmpiricalDistribution exact = hand({{1, 1}});
  std::map<std::pair<std::int64_t, std::int64_t>, std::uint64_t> cells;
  cells[{10, 0}] = 1;
  EmpiricalDistribution binned = EmpiricalDistribution::from_binned_counts(cells, 1e-9);
  CHECK_THROWS_AS(tv_distance(exact, binned), Error);
  EmpiricalDistribution binned2 = EmpiricalDistribution::from_binned_counts(cells, 1e-6);
  CHECK_THROWS_AS(tv_distance(binned, binned2), Error);  // grids differ
}

TEST_CASE("complex-valued functions land on the binned grid") {
  MultiplicativeFunction noisy(2, "noisy", [](std::int64_t p, std::span<const std::int32_t> e) {
    std::int64_t s = 0;
    for (auto v : e) s += v;
    return Value::complex(std::exp(static_cast<double>(s) / static_cast<double>(p)));
  });
  EmpiricalDistribution d = exact_distribution(noisy, rectangle({12, 12}), table());
  CHECK(d.kind() == EmpiricalDistribution::KeyKind::Binned);
  CHECK(d.total_mass() == doctest::Approx(1.0));
  CHECK_NOTHROW(ks_distance(d, d));
}

TEST_CASE("zeta law reference pmf") {
  EmpiricalDistribution ref = zeta_law_reference(2, 100'000);
  CHECK(ref.mass_at(Rational(1)) == doctest::Approx(0.607927).epsilon(1e-5));
  CHECK(ref.total_mass() > 0.99999);
  CHECK(ref.total_mass() < 1.0);
}

TEST_CASE("convergence sweep: gcd on rectangles vs the zeta law") {
  DomainFamily fam;
  for (std::int64_t n : {100, 300, 1000}) fam.members.emplace_back(n, rectangle({n, n}));
  EmpiricalDistribution ref = zeta_law_reference(2, 100'000);
  RandomStream rng(123);
  SweepBudget budget;
  ConvergenceReport rep = convergence_sweep(builtin_gcd(2), fam, ref, "zeta law d=2",
                                            table(), budget, rng);
  REQUIRE(rep.rows.size() == 3);
  CHECK(rep.rows[0].method == "exact");
  CHECK(rep.rows[0].tv > rep.rows[1].tv);
  CHECK(rep.rows[1].tv > rep.rows[2].tv);
  CHECK(rep.rows[2].tv < 0.01);
}

TEST_CASE("convergence sweep: constant function is at distance zero") {
  DomainFamily fam;
  for (std::int64_t n : {10, 20, 40}) fam.members.emplace_back(n, rectangle({n, n}));
  EmpiricalDistribution ref =
      EmpiricalDistribution::from_exact_pmf({{Rational(1), 1.0}});
  RandomStream rng(5);
  ConvergenceReport rep = convergence_sweep(builtin_one(2), fam, ref, "point mass",
                                            table(), SweepBudget{}, rng);
  for (const auto& row : rep.rows) {
    CHECK(row.tv == 0.0);
    CHECK(row.ks == 0.0);
  }
}

TEST_CASE("universality trend: lcm ratio distances to F_infinity shrink") {
  MultiplicativeFunction lr = builtin_lcm_ratio(2);
  LimitSampleConfig cfg;
  cfg.dim = 2;
  cfg.prime_cutoff = 1000;
  RandomStream ref_rng(2025);
  EmpiricalDistribution ref = f_infinity_distribution(lr, cfg, 100'000, ref_rng);
  SweepBudget budget;
  budget.mc_samples = 100'000;
  for (const char* kind : {"rectangle", "hyperbolic"}) {
    DomainFamily fam;
    if (std::string(kind) == "rectangle") {
      // small-n bias (P{gcd=1} = 0.63 at n=10) dominates the reference noise
      fam.members.emplace_back(10, rectangle({10, 10}));
      fam.members.emplace_back(1000, rectangle({1000, 1000}));
    } else {
      fam.members.emplace_back(1000, hyperbolic(2, 1000));
      fam.members.emplace_back(100'000, hyperbolic(2, 100'000));
    }
    RandomStream rng(31337);
    ConvergenceReport rep =
        convergence_sweep(lr, fam, ref, "sampled F_infinity", table(), budget, rng);
    CHECK(rep.rows[1].ks < rep.rows[0].ks);
  }
}

TEST_CASE("distribution JSON serialization") {
  EmpiricalDistribution d =
      exact_distribution(builtin_gcd(2), rectangle({4, 4}), table());
  nlohmann::json j = d.to_json();
  CHECK(j["kind"] == "exact");
  CHECK(j["total_count"] == 16);
  CHECK(j["support"][0]["value"] == "1");
  CHECK(j["support"][0]["count"] == 11);
  CHECK(j["support"][0]["mass"].get<double>() == doctest::Approx(11.0 / 16));
}

TEST_CASE("csv output uses fraction strings") {
  EmpiricalDistribution d =
      exact_distribution(builtin_lcm_ratio(2), rectangle({4, 4}), table());
  std::ostringstream os;
  d.write_csv(os);
  std::string text = os.str();
  CHECK(text.rfind("value,mass\n", 0) == 0);
  CHECK(text.find("1/2,") != std::string::npos);
}
