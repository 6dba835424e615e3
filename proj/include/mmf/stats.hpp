#ifndef MMF_STATS_HPP
#define MMF_STATS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mmf/limitlaw.hpp"
#include "mmf/multfunc.hpp"

namespace mmf {

// A probability mass function over exact-rational keys (preferred) or over
// reals binned on a stated grid.  Distributions built by counting keep the
// integer counts, so the exact path sums to exactly 1.
class EmpiricalDistribution {
 public:
  enum class KeyKind { Exact, Binned };

  static EmpiricalDistribution from_exact_counts(std::map<Rational, std::uint64_t> counts);
  static EmpiricalDistribution from_binned_counts(
      std::map<std::pair<std::int64_t, std::int64_t>, std::uint64_t> counts, double grid);
  // analytic references (masses, no counts); keys ascending
  static EmpiricalDistribution from_exact_pmf(std::vector<std::pair<Rational, double>> pmf);

  KeyKind kind() const { return kind_; }
  double grid() const { return grid_; }
  std::size_t support_size() const { return mass_.size(); }
  bool has_counts() const { return total_ > 0; }
  std::uint64_t total_count() const { return total_; }

  double total_mass() const;
  double mass_at(const Rational& key) const;  // exact path only

  // aligned views of support and masses
  const std::vector<Rational>& exact_keys() const { return exact_keys_; }
  const std::vector<std::pair<std::int64_t, std::int64_t>>& binned_keys() const {
    return binned_keys_;
  }
  const std::vector<double>& masses() const { return mass_; }
  const std::vector<std::uint64_t>& counts() const { return count_; }

  nlohmann::json to_json() const;
  void write_csv(std::ostream& out) const;  // header "value,mass"

 private:
  KeyKind kind_ = KeyKind::Exact;
  double grid_ = 0;
  std::vector<Rational> exact_keys_;
  std::vector<std::pair<std::int64_t, std::int64_t>> binned_keys_;  // (re, im) cells
  std::vector<double> mass_;
  std::vector<std::uint64_t> count_;
  std::uint64_t total_ = 0;
};

// (1/2) sum |P - Q| over the union support; keys must live on the same grid
double tv_distance(const EmpiricalDistribution& p, const EmpiricalDistribution& q);
// sup |CDF_P - CDF_Q|; keys must be orderable as reals
double ks_distance(const EmpiricalDistribution& p, const EmpiricalDistribution& q);

// value grid for binning non-exact values (design default 1e-9)
struct DistributionOptions {
  double bin_grid = 1e-9;
  std::int64_t enumeration_budget = 50'000'000;
  int threads = 1;
};

EmpiricalDistribution exact_distribution(const MultiplicativeFunction& f, const LatticeDomain& d,
                                         const SpfTable& table,
                                         const DistributionOptions& opt = {});

EmpiricalDistribution monte_carlo_distribution(const MultiplicativeFunction& f,
                                               const LatticeDomain& d, const SpfTable& table,
                                               std::int64_t samples, RandomStream& rng,
                                               const SamplerOptions& sampler = {},
                                               const DistributionOptions& opt = {});

// truncated analytic zeta-law pmf on j = 1..j_max (exact-rational keys)
EmpiricalDistribution zeta_law_reference(int dim, std::int64_t j_max = 100'000);

// empirical pmf of N draws of the truncated F_inf product
EmpiricalDistribution f_infinity_distribution(const MultiplicativeFunction& f,
                                              const LimitSampleConfig& cfg, std::int64_t samples,
                                              RandomStream& rng, double bin_grid = 1e-9);

struct ConvergenceEntry {
  std::int64_t n = 0;
  std::int64_t cardinality = 0;
  std::string method;  // "exact" or "monte_carlo"
  std::int64_t samples = 0;
  double tv = 0;
  double ks = 0;
};

struct ConvergenceReport {
  std::vector<ConvergenceEntry> rows;
  std::string reference;
  nlohmann::json to_json() const;
};

struct SweepBudget {
  std::int64_t exact_cap = 20'000'000;  // enumerate exactly up to this cardinality
  std::int64_t mc_samples = 100'000;
};

// on_distribution, when set, receives each per-n distribution (histogram sink)
ConvergenceReport convergence_sweep(
    const MultiplicativeFunction& f, const DomainFamily& family,
    const EmpiricalDistribution& reference, const std::string& reference_desc,
    const SpfTable& table, const SweepBudget& budget, RandomStream& rng,
    const SamplerOptions& sampler = {}, const DistributionOptions& opt = {},
    const std::function<void(std::int64_t, const EmpiricalDistribution&)>& on_distribution =
        nullptr);

}  // namespace mmf

#endif
