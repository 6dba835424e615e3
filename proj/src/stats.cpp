#include "mmf/stats.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace mmf {

EmpiricalDistribution EmpiricalDistribution::from_exact_counts(
    std::map<Rational, std::uint64_t> counts) {
  EmpiricalDistribution d;
  d.kind_ = KeyKind::Exact;
  for (const auto& [k, c] : counts) d.total_ += c;
  if (d.total_ == 0) throw_config("distribution with no observations");
  for (const auto& [k, c] : counts) {
    d.exact_keys_.push_back(k);
    d.count_.push_back(c);
    d.mass_.push_back(static_cast<double>(c) / static_cast<double>(d.total_));
  }
  return d;
}

EmpiricalDistribution EmpiricalDistribution::from_binned_counts(
    std::map<std::pair<std::int64_t, std::int64_t>, std::uint64_t> counts, double grid) {
  if (!(grid > 0)) throw_config("binned distribution needs a positive grid");
  EmpiricalDistribution d;
  d.kind_ = KeyKind::Binned;
  d.grid_ = grid;
  for (const auto& [k, c] : counts) d.total_ += c;
  if (d.total_ == 0) throw_config("distribution with no observations");
  for (const auto& [k, c] : counts) {
    d.binned_keys_.push_back(k);
    d.count_.push_back(c);
    d.mass_.push_back(static_cast<double>(c) / static_cast<double>(d.total_));
  }
  return d;
}

EmpiricalDistribution EmpiricalDistribution::from_exact_pmf(
    std::vector<std::pair<Rational, double>> pmf) {
  EmpiricalDistribution d;
  d.kind_ = KeyKind::Exact;
  for (auto& [k, m] : pmf) {
    if (m < 0) throw_config("negative mass");
    d.exact_keys_.push_back(k);
    d.mass_.push_back(m);
  }
  if (!std::is_sorted(d.exact_keys_.begin(), d.exact_keys_.end()))
    throw_config("pmf keys must be ascending");
  return d;
}

double EmpiricalDistribution::total_mass() const {
  double s = 0;
  for (double m : mass_) s += m;
  return s;
}

double EmpiricalDistribution::mass_at(const Rational& key) const {
  if (kind_ != KeyKind::Exact) throw_config("mass_at: not an exact-keyed distribution");
  auto it = std::lower_bound(exact_keys_.begin(), exact_keys_.end(), key);
  if (it == exact_keys_.end() || !(*it == key)) return 0.0;
  return mass_[static_cast<std::size_t>(it - exact_keys_.begin())];
}

nlohmann::json EmpiricalDistribution::to_json() const {
  nlohmann::json support = nlohmann::json::array();
  for (std::size_t i = 0; i < mass_.size(); ++i) {
    nlohmann::json row;
    if (kind_ == KeyKind::Exact) {
      row["value"] = exact_keys_[i].to_string();
    } else {
      row["value"] = static_cast<double>(binned_keys_[i].first) * grid_;
      if (binned_keys_[i].second != 0)
        row["value_im"] = static_cast<double>(binned_keys_[i].second) * grid_;
    }
    row["mass"] = mass_[i];
    if (!count_.empty()) row["count"] = count_[i];
    support.push_back(std::move(row));
  }
  nlohmann::json j = {{"kind", kind_ == KeyKind::Exact ? "exact" : "binned"},
                      {"support", support}};
  if (kind_ == KeyKind::Binned) j["grid"] = grid_;
  if (total_ > 0) j["total_count"] = total_;
  return j;
}

void EmpiricalDistribution::write_csv(std::ostream& out) const {
  out << "value,mass\n";
  for (std::size_t i = 0; i < mass_.size(); ++i) {
    if (kind_ == KeyKind::Exact) {
      out << exact_keys_[i].to_string();
    } else {
      out << (static_cast<double>(binned_keys_[i].first) * grid_);
      if (binned_keys_[i].second != 0)
        out << "+" << (static_cast<double>(binned_keys_[i].second) * grid_) << "i";
    }
    out << "," << mass_[i] << "\n";
  }
}

namespace {

void require_comparable(const EmpiricalDistribution& p, const EmpiricalDistribution& q) {
  if (p.kind() != q.kind()) throw_config("distributions use different key kinds");
  if (p.kind() == EmpiricalDistribution::KeyKind::Binned && p.grid() != q.grid())
    throw_config("distributions use different bin grids");
}

// walk the union of two ascending key sequences
template <typename Key, typename Fn>
void union_walk(const std::vector<Key>& ka, const std::vector<double>& ma,
                const std::vector<Key>& kb, const std::vector<double>& mb, Fn&& fn) {
  std::size_t i = 0, j = 0;
  while (i < ka.size() || j < kb.size()) {
    if (j == kb.size() || (i < ka.size() && ka[i] < kb[j])) {
      fn(ma[i], 0.0);
      ++i;
    } else if (i == ka.size() || kb[j] < ka[i]) {
      fn(0.0, mb[j]);
      ++j;
    } else {
      fn(ma[i], mb[j]);
      ++i;
      ++j;
    }
  }
}

}  // namespace

double tv_distance(const EmpiricalDistribution& p, const EmpiricalDistribution& q) {
  require_comparable(p, q);
  double acc = 0;
  if (p.kind() == EmpiricalDistribution::KeyKind::Exact) {
    union_walk(p.exact_keys(), p.masses(), q.exact_keys(), q.masses(),
               [&](double a, double b) { acc += std::abs(a - b); });
  } else {
    union_walk(p.binned_keys(), p.masses(), q.binned_keys(), q.masses(),
               [&](double a, double b) { acc += std::abs(a - b); });
  }
  return acc / 2.0;
}

double ks_distance(const EmpiricalDistribution& p, const EmpiricalDistribution& q) {
  require_comparable(p, q);
  double fa = 0, fb = 0, best = 0;
  if (p.kind() == EmpiricalDistribution::KeyKind::Exact) {
    union_walk(p.exact_keys(), p.masses(), q.exact_keys(), q.masses(), [&](double a, double b) {
      fa += a;
      fb += b;
      best = std::max(best, std::abs(fa - fb));
    });
  } else {
    for (const auto& k : p.binned_keys())
      if (k.second != 0) throw_config("ks_distance: keys are not real-orderable");
    for (const auto& k : q.binned_keys())
      if (k.second != 0) throw_config("ks_distance: keys are not real-orderable");
    union_walk(p.binned_keys(), p.masses(), q.binned_keys(), q.masses(), [&](double a, double b) {
      fa += a;
      fb += b;
      best = std::max(best, std::abs(fa - fb));
    });
  }
  return best;
}

namespace {

// Accumulates Values; exact keys while every value is exact, degrades to the
// binned grid as soon as a complex value shows up.
class Accumulator {
 public:
  explicit Accumulator(double grid) : grid_(grid) {}

  void add(const Value& v) {
    if (exact_mode_ && v.is_exact()) {
      ++exact_[v.rational()];
      return;
    }
    if (exact_mode_) demote();
    std::complex<double> z = v.as_complex();
    ++binned_[cell(z)];
  }

  void merge(Accumulator&& o) {
    if (exact_mode_ && !o.exact_mode_) demote();
    if (!exact_mode_ && o.exact_mode_) o.demote();
    if (exact_mode_) {
      for (const auto& [k, c] : o.exact_) exact_[k] += c;
    } else {
      for (const auto& [k, c] : o.binned_) binned_[k] += c;
    }
  }

  EmpiricalDistribution finish() {
    if (exact_mode_) return EmpiricalDistribution::from_exact_counts(std::move(exact_));
    return EmpiricalDistribution::from_binned_counts(std::move(binned_), grid_);
  }

 private:
  std::pair<std::int64_t, std::int64_t> cell(std::complex<double> z) const {
    return {static_cast<std::int64_t>(std::llround(z.real() / grid_)),
            static_cast<std::int64_t>(std::llround(z.imag() / grid_))};
  }

  void demote() {
    for (const auto& [k, c] : exact_) binned_[cell({k.to_double(), 0.0})] += c;
    exact_.clear();
    exact_mode_ = false;
  }

  double grid_;
  bool exact_mode_ = true;
  std::map<Rational, std::uint64_t> exact_;
  std::map<std::pair<std::int64_t, std::int64_t>, std::uint64_t> binned_;
};

}  // namespace

EmpiricalDistribution exact_distribution(const MultiplicativeFunction& f, const LatticeDomain& d,
                                         const SpfTable& table, const DistributionOptions& opt) {
  if (f.dim() != d.dim()) throw_config("exact_distribution: dimension mismatch");
  if (d.cardinality() > opt.enumeration_budget)
    throw_resource("exact_distribution: enumeration budget exceeded; use monte_carlo_distribution");
  int threads = std::max(1, opt.threads);
  Coord lo = d.box_lo()[0], hi = d.box_hi()[0];
  int blocks = static_cast<int>(std::min<std::int64_t>(threads, hi - lo + 1));
  std::vector<Accumulator> acc(static_cast<std::size_t>(blocks), Accumulator(opt.bin_grid));
  auto work = [&](int b) {
    Coord width = hi - lo + 1;
    Coord b_lo = lo + width * b / blocks;
    Coord b_hi = lo + width * (b + 1) / blocks - 1;
    auto cur = d.cursor(b_lo, b_hi);
    std::vector<Coord> buf(static_cast<std::size_t>(d.dim()));
    while (cur->next(buf)) acc[static_cast<std::size_t>(b)].add(evaluate(f, buf, table));
  };
  if (blocks == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int b = 0; b < blocks; ++b) pool.emplace_back(work, b);
    for (auto& t : pool) t.join();
  }
  for (int b = 1; b < blocks; ++b) acc[0].merge(std::move(acc[static_cast<std::size_t>(b)]));
  return acc[0].finish();
}

EmpiricalDistribution monte_carlo_distribution(const MultiplicativeFunction& f,
                                               const LatticeDomain& d, const SpfTable& table,
                                               std::int64_t samples, RandomStream& rng,
                                               const SamplerOptions& sampler,
                                               const DistributionOptions& opt) {
  if (f.dim() != d.dim()) throw_config("monte_carlo_distribution: dimension mismatch");
  if (samples < 1) throw_config("monte_carlo_distribution: needs at least one sample");
  int threads = std::max(1, opt.threads);
  int blocks = static_cast<int>(std::min<std::int64_t>(threads, samples));
  std::vector<Accumulator> acc(static_cast<std::size_t>(blocks), Accumulator(opt.bin_grid));
  auto work = [&](int b) {
    RandomStream stream = rng.fork(static_cast<std::uint64_t>(b));
    std::int64_t n = samples / blocks + (b < samples % blocks ? 1 : 0);
    std::vector<Coord> buf;
    for (std::int64_t i = 0; i < n; ++i) {
      sample_uniform_into(d, stream, sampler, buf);
      acc[static_cast<std::size_t>(b)].add(evaluate(f, buf, table));
    }
  };
  if (blocks == 1) {
    work(0);
  } else {
    // pre-warm shared caches (materialization, rejection probe) deterministically
    {
      RandomStream warm = rng.fork(0);
      std::vector<Coord> buf;
      sample_uniform_into(d, warm, sampler, buf);
    }
    std::vector<std::thread> pool;
    for (int b = 0; b < blocks; ++b) pool.emplace_back(work, b);
    for (auto& t : pool) t.join();
  }
  for (int b = 1; b < blocks; ++b) acc[0].merge(std::move(acc[static_cast<std::size_t>(b)]));
  return acc[0].finish();
}

EmpiricalDistribution zeta_law_reference(int dim, std::int64_t j_max) {
  if (dim < 2) throw_numeric("zeta_law_reference: requires d >= 2");
  std::vector<std::pair<Rational, double>> pmf;
  double zd = zeta(dim, 1e-12);
  for (std::int64_t j = 1; j <= j_max; ++j)
    pmf.emplace_back(Rational(j), 1.0 / (zd * std::pow(static_cast<double>(j), dim)));
  return EmpiricalDistribution::from_exact_pmf(std::move(pmf));
}

EmpiricalDistribution f_infinity_distribution(const MultiplicativeFunction& f,
                                              const LimitSampleConfig& cfg, std::int64_t samples,
                                              RandomStream& rng, double bin_grid) {
  Accumulator acc(bin_grid);
  for (std::int64_t i = 0; i < samples; ++i) acc.add(sample_F_infinity(f, cfg, rng).value);
  return acc.finish();
}

nlohmann::json ConvergenceReport::to_json() const {
  nlohmann::json rows_json = nlohmann::json::array();
  for (const auto& r : rows)
    rows_json.push_back({{"n", r.n},
                         {"cardinality", r.cardinality},
                         {"method", r.method},
                         {"samples", r.samples},
                         {"tv", r.tv},
                         {"ks", r.ks}});
  return {{"reference", reference}, {"rows", rows_json}};
}

ConvergenceReport convergence_sweep(
    const MultiplicativeFunction& f, const DomainFamily& family,
    const EmpiricalDistribution& reference, const std::string& reference_desc,
    const SpfTable& table, const SweepBudget& budget, RandomStream& rng,
    const SamplerOptions& sampler, const DistributionOptions& opt,
    const std::function<void(std::int64_t, const EmpiricalDistribution&)>& on_distribution) {
  ConvergenceReport rep;
  rep.reference = reference_desc;
  std::uint64_t member_index = 0;
  for (const auto& [n, d] : family.members) {
    ConvergenceEntry row;
    row.n = n;
    row.cardinality = d.cardinality();
    EmpiricalDistribution dist = [&] {
      if (row.cardinality <= budget.exact_cap) {
        row.method = "exact";
        row.samples = row.cardinality;
        return exact_distribution(f, d, table, opt);
      }
      row.method = "monte_carlo";
      row.samples = budget.mc_samples;
      RandomStream stream = rng.fork(member_index);
      return monte_carlo_distribution(f, d, table, budget.mc_samples, stream, sampler, opt);
    }();
    row.tv = tv_distance(dist, reference);
    row.ks = ks_distance(dist, reference);
    if (on_distribution) on_distribution(n, dist);
    rep.rows.push_back(row);
    ++member_index;
  }
  return rep;
}

}  // namespace mmf
