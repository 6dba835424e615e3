#include "mmf/diagnostics.hpp"

#include <algorithm>
#include <unordered_set>

namespace mmf {

namespace {

struct VecHash {
  std::size_t operator()(const std::vector<Coord>& v) const {
    std::uint64_t h = 0x9E3779B97F4A7C15ULL;
    for (Coord c : v) h = splitmix64(h ^ static_cast<std::uint64_t>(c));
    return static_cast<std::size_t>(h);
  }
};

}  // namespace

std::int64_t symdiff_shift_count(const LatticeDomain& d, std::span<const Coord> c) {
  if (static_cast<int>(c.size()) != d.dim()) throw_config("shift dimension mismatch");
  std::int64_t count = 0;
  std::vector<Coord> y(c.size());
  d.for_each([&](PointView x) {
    // x in D \ (D + c)  iff  x - c not in D
    for (std::size_t i = 0; i < c.size(); ++i) y[i] = x[i] - c[i];
    if (!d.contains(y)) ++count;
    // x + c in (D + c) \ D  iff  x + c not in D
    for (std::size_t i = 0; i < c.size(); ++i) y[i] = x[i] + c[i];
    if (!d.contains(y)) ++count;
  });
  return count;
}

double van_hove_ratio(const LatticeDomain& d, std::span<const Coord> c) {
  return static_cast<double>(symdiff_shift_count(d, c)) / static_cast<double>(d.cardinality());
}

double neighborhood_growth_ratio(const LatticeDomain& d) {
  int dim = d.dim();
  std::int64_t offsets = 1;
  for (int i = 0; i < dim; ++i) offsets *= 3;
  std::unordered_set<std::vector<Coord>, VecHash> outside;
  std::vector<Coord> y(static_cast<std::size_t>(dim));
  d.for_each([&](PointView x) {
    for (std::int64_t o = 0; o < offsets; ++o) {
      std::int64_t t = o;
      bool zero = true;
      for (int i = 0; i < dim; ++i) {
        int delta = static_cast<int>(t % 3) - 1;
        t /= 3;
        y[i] = x[i] + delta;
        if (delta != 0) zero = false;
      }
      if (zero) continue;
      if (!d.contains(y)) outside.insert(y);
    }
  });
  return static_cast<double>(outside.size()) / static_cast<double>(d.cardinality());
}

std::int64_t residue_count(const LatticeDomain& d, std::span<const std::int64_t> residues,
                           std::span<const std::int64_t> moduli) {
  if (static_cast<int>(residues.size()) != d.dim() || static_cast<int>(moduli.size()) != d.dim())
    throw_config("residue_count: residue/modulus arity mismatch");
  for (std::size_t k = 0; k < moduli.size(); ++k) {
    if (moduli[k] < 1) throw_config("residue_count: moduli must be >= 1");
    if (residues[k] < 0 || residues[k] >= moduli[k])
      throw_config("residue_count: residue out of range");
  }
  std::int64_t count = 0;
  d.for_each([&](PointView x) {
    for (std::size_t k = 0; k < moduli.size(); ++k)
      if (x[k] % moduli[k] != residues[k]) return;
    ++count;
  });
  return count;
}

double residue_uniformity_error(const LatticeDomain& d, std::span<const std::int64_t> moduli) {
  if (static_cast<int>(moduli.size()) != d.dim())
    throw_config("uniformity: modulus arity mismatch");
  std::int64_t classes = 1;
  for (std::int64_t m : moduli) {
    if (m < 1) throw_config("uniformity: moduli must be >= 1");
    classes *= m;
  }
  std::vector<std::int64_t> counts(static_cast<std::size_t>(classes), 0);
  d.for_each([&](PointView x) {
    std::int64_t idx = 0;
    for (std::size_t k = 0; k < moduli.size(); ++k) idx = idx * moduli[k] + (x[k] % moduli[k]);
    ++counts[idx];
  });
  double total = static_cast<double>(d.cardinality());
  double uniform = 1.0 / static_cast<double>(classes);
  double err = 0;
  for (std::int64_t c : counts)
    err = std::max(err, std::abs(static_cast<double>(c) / total - uniform));
  return err;
}

std::int64_t divisibility_count(const LatticeDomain& d, int axis_i, std::int64_t a,
                                std::optional<int> axis_j, std::int64_t b) {
  if (axis_i < 0 || axis_i >= d.dim()) throw_config("divisibility_count: axis out of range");
  if (a < 1 || b < 1) throw_config("divisibility_count: divisors must be >= 1");
  if (axis_j) {
    if (*axis_j < 0 || *axis_j >= d.dim()) throw_config("divisibility_count: axis out of range");
    if (*axis_j == axis_i) throw_config("divisibility_count: axes must differ");
  }
  std::int64_t count = 0;
  d.for_each([&](PointView x) {
    if (x[axis_i] % a != 0) return;
    if (axis_j && x[*axis_j] % b != 0) return;
    ++count;
  });
  return count;
}

KEstimate estimate_K(const LatticeDomain& d, std::int64_t a_max, std::int64_t b_max) {
  if (d.dim() < 2) throw_config("estimate_K: requires d >= 2");
  if (a_max < 1 || b_max < 1) throw_config("estimate_K: grid bounds must be >= 1");
  int dim = d.dim();
  std::int64_t dmax = std::max(a_max, b_max);
  // counts[(i*dim + j)*a_max*b_max + (a-1)*b_max + (b-1)]
  std::vector<std::int64_t> counts(
      static_cast<std::size_t>(dim) * dim * a_max * b_max, 0);
  std::vector<std::vector<std::int64_t>> divs(static_cast<std::size_t>(dim));
  d.for_each([&](PointView x) {
    for (int i = 0; i < dim; ++i) {
      divs[i].clear();
      for (std::int64_t a = 1; a <= dmax && a <= x[i]; ++a)
        if (x[i] % a == 0) divs[i].push_back(a);
    }
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) {
        if (i == j) continue;
        std::size_t base = (static_cast<std::size_t>(i) * dim + j) *
                           static_cast<std::size_t>(a_max) * static_cast<std::size_t>(b_max);
        for (std::int64_t a : divs[i]) {
          if (a > a_max) break;
          std::size_t row = base + static_cast<std::size_t>(a - 1) * b_max;
          for (std::int64_t b : divs[j]) {
            if (b > b_max) break;
            ++counts[row + static_cast<std::size_t>(b - 1)];
          }
        }
      }
    }
  });
  double total = static_cast<double>(d.cardinality());
  KEstimate best;
  best.a_max = a_max;
  best.b_max = b_max;
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      if (i == j) continue;
      std::size_t base = (static_cast<std::size_t>(i) * dim + j) *
                         static_cast<std::size_t>(a_max) * static_cast<std::size_t>(b_max);
      for (std::int64_t a = 1; a <= a_max; ++a) {
        for (std::int64_t b = 1; b <= b_max; ++b) {
          std::int64_t c = counts[base + static_cast<std::size_t>(a - 1) * b_max + (b - 1)];
          double v = static_cast<double>(a) * static_cast<double>(b) * static_cast<double>(c) / total;
          if (v > best.value) {
            best.value = v;
            best.axis_i = i;
            best.axis_j = j;
            best.a = a;
            best.b = b;
          }
        }
      }
    }
  }
  return best;
}

std::vector<std::pair<std::int64_t, double>> boundary_slice_ratio(const DomainFamily& family,
                                                                  int axis) {
  std::vector<std::pair<std::int64_t, double>> out;
  for (const auto& [n, d] : family.members) {
    if (!d.is_sublevel()) throw_config("boundary_slice_ratio: family is not sublevel-built");
    if (d.dim() < 2) throw_config("boundary_slice_ratio: requires d >= 2");
    if (axis < 0 || axis >= d.dim()) throw_config("boundary_slice_ratio: axis out of range");
    int dim = d.dim();
    SublevelFn f = d.sublevel_fn();
    auto pinned = [f, axis, dim](PointView y) {
      std::vector<Coord> x(static_cast<std::size_t>(dim));
      for (int i = 0, k = 0; i < dim; ++i) x[i] = (i == axis) ? 1 : y[k++];
      return f(x);
    };
    LatticeDomain slice = monotone_sublevel(dim - 1, pinned, d.sublevel_threshold());
    out.emplace_back(n, static_cast<double>(slice.cardinality()) /
                            static_cast<double>(d.cardinality()));
  }
  return out;
}

DiagnosticsReport diagnose(const DomainFamily& family, const DiagnosticsOptions& opt) {
  if (family.members.empty()) throw_config("diagnose: empty family");
  int dim = family.members.front().second.dim();

  DiagnosticsReport rep;
  rep.vanhove_threshold = opt.vanhove_threshold;
  rep.moduli = opt.moduli;

  // shift set: +-e_k, plus the whole unit neighborhood when requested
  for (int k = 0; k < dim; ++k) {
    std::vector<Coord> c(static_cast<std::size_t>(dim), 0);
    c[k] = 1;
    rep.shift_set.push_back(c);
    c[k] = -1;
    rep.shift_set.push_back(c);
  }
  if (!opt.unit_shifts_only) {
    std::int64_t offsets = 1;
    for (int i = 0; i < dim; ++i) offsets *= 3;
    for (std::int64_t o = 0; o < offsets; ++o) {
      std::vector<Coord> c(static_cast<std::size_t>(dim));
      std::int64_t t = o;
      int nonzero = 0;
      for (int i = 0; i < dim; ++i) {
        c[i] = static_cast<Coord>(t % 3) - 1;
        t /= 3;
        if (c[i] != 0) ++nonzero;
      }
      if (nonzero >= 2) rep.shift_set.push_back(c);
    }
  }

  for (const auto& [n, d] : family.members) {
    DomainDiagnostics row;
    row.n = n;
    row.domain_spec = d.spec();
    row.cardinality = d.cardinality();
    for (const auto& c : rep.shift_set) {
      ShiftDiagnostics s;
      s.c = c;
      s.delta = symdiff_shift_count(d, c);
      s.ratio = static_cast<double>(s.delta) / static_cast<double>(row.cardinality);
      row.shifts.push_back(std::move(s));
    }
    for (const auto& m : opt.moduli) row.residue_errors.push_back(residue_uniformity_error(d, m));
    if (opt.with_k_estimate && dim >= 2) row.k_estimate = estimate_K(d, opt.a_max, opt.b_max);
    if (opt.with_neighborhood) row.neighborhood_ratio = neighborhood_growth_ratio(d);
    if (d.spec().is_object() && d.spec().value("type", "") == "difference")
      row.difference_ratio = static_cast<double>(d.right_part()->cardinality()) /
                             static_cast<double>(d.left_part()->cardinality());
    rep.per_n.push_back(std::move(row));
  }

  // consistent with regular growth: every shift ratio sequence strictly
  // decreasing across the family and ending below the threshold; fewer than
  // three members give no trend to judge
  bool consistent = rep.per_n.size() >= 3;
  for (std::size_t s = 0; s < rep.shift_set.size() && consistent; ++s) {
    for (std::size_t r = 1; r < rep.per_n.size(); ++r) {
      if (!(rep.per_n[r].shifts[s].ratio < rep.per_n[r - 1].shifts[s].ratio)) {
        consistent = false;
        break;
      }
    }
    if (consistent && !(rep.per_n.back().shifts[s].ratio <= opt.vanhove_threshold))
      consistent = false;
  }
  rep.regular_growth_consistent = consistent;

  bool decreasing = !opt.moduli.empty() && rep.per_n.size() >= 2;
  for (std::size_t m = 0; m < opt.moduli.size() && decreasing; ++m) {
    for (std::size_t r = 1; r < rep.per_n.size(); ++r) {
      if (!(rep.per_n[r].residue_errors[m] <= rep.per_n[r - 1].residue_errors[m])) {
        decreasing = false;
        break;
      }
    }
  }
  rep.residue_errors_decreasing = decreasing;
  return rep;
}

DiagnosticsReport regular_growth_check(const DomainFamily& family, bool unit_shifts_only,
                                       double vanhove_threshold) {
  if (family.members.size() < 3)
    throw_config("regular_growth_check: needs at least 3 family members");
  DiagnosticsOptions opt;
  opt.unit_shifts_only = unit_shifts_only;
  opt.with_k_estimate = false;
  opt.vanhove_threshold = vanhove_threshold;
  return diagnose(family, opt);
}

UniformityReport uniformity_report(const DomainFamily& family,
                                   const std::vector<std::vector<std::int64_t>>& moduli) {
  if (family.members.empty()) throw_config("uniformity_report: empty family");
  UniformityReport rep;
  rep.moduli = moduli;
  rep.errors.resize(moduli.size());
  for (std::size_t m = 0; m < moduli.size(); ++m)
    for (const auto& [n, d] : family.members)
      rep.errors[m].emplace_back(n, residue_uniformity_error(d, moduli[m]));
  bool decreasing = !moduli.empty() && family.members.size() >= 2;
  for (const auto& seq : rep.errors)
    for (std::size_t r = 1; r < seq.size(); ++r)
      decreasing = decreasing && seq[r].second <= seq[r - 1].second;
  rep.decreasing = decreasing;
  return rep;
}

nlohmann::json DiagnosticsReport::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : per_n) {
    nlohmann::json shifts_json = nlohmann::json::array();
    for (const auto& s : row.shifts)
      shifts_json.push_back({{"c", s.c}, {"delta", s.delta}, {"ratio", s.ratio}});
    nlohmann::json j = {{"domain_spec", row.domain_spec},
                        {"n", row.n},
                        {"cardinality", row.cardinality},
                        {"shifts", shifts_json},
                        {"residue_errors", row.residue_errors}};
    if (row.k_estimate) {
      j["K_estimate"] = row.k_estimate->value;
      j["K_argmax"] = {{"i", row.k_estimate->axis_i},
                       {"j", row.k_estimate->axis_j},
                       {"a", row.k_estimate->a},
                       {"b", row.k_estimate->b}};
      j["grid"] = {{"a_max", row.k_estimate->a_max}, {"b_max", row.k_estimate->b_max}};
    }
    if (row.neighborhood_ratio) j["neighborhood_ratio"] = *row.neighborhood_ratio;
    if (row.difference_ratio) j["difference_ratio"] = *row.difference_ratio;
    rows.push_back(std::move(j));
  }
  return {{"reports", rows},
          {"shift_set", shift_set},
          {"moduli", moduli},
          {"regular_growth_consistent", regular_growth_consistent},
          {"vanhove_threshold", vanhove_threshold},
          {"residue_errors_decreasing", residue_errors_decreasing}};
}

}  // namespace mmf
