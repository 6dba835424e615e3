#ifndef MMF_DIAGNOSTICS_HPP
#define MMF_DIAGNOSTICS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "mmf/domain.hpp"

namespace mmf {

// Numerical evidence for the standing hypotheses on a domain (family): regular
// growth via shifted symmetric differences, residue-class uniformity, and the
// divisibility bound with constant K.  Evidence, never proof: every flag comes
// with the thresholds that produced it.

// #(D symdiff (D + c)), via membership tests of x - c and x + c over members
std::int64_t symdiff_shift_count(const LatticeDomain& d, std::span<const Coord> c);

// delta(c) / #D, in [0, 2]
double van_hove_ratio(const LatticeDomain& d, std::span<const Coord> c);

// #(D^1 \ D) / #D with D^1 the sup-metric 1-neighborhood in Z^d
double neighborhood_growth_ratio(const LatticeDomain& d);

// members with x_k = j_k (mod m_k) for all k
std::int64_t residue_count(const LatticeDomain& d, std::span<const std::int64_t> residues,
                           std::span<const std::int64_t> moduli);

// members with a | x_axis_i and (optionally) b | x_axis_j; axes are 0-based
std::int64_t divisibility_count(const LatticeDomain& d, int axis_i, std::int64_t a,
                                std::optional<int> axis_j = std::nullopt, std::int64_t b = 1);

struct KEstimate {
  double value = 0;
  int axis_i = 0, axis_j = 0;
  std::int64_t a = 1, b = 1;
  std::int64_t a_max = 1, b_max = 1;
};

// max over i != j, a <= a_max, b <= b_max of a*b*#(D cap Z_i(a) cap Z_j(b))/#D;
// an empirical lower bound on any admissible K, scanned on a finite grid
KEstimate estimate_K(const LatticeDomain& d, std::int64_t a_max, std::int64_t b_max);

// #D_{n,i}/#D_n for a monotone-sublevel family, where D_{n,i} pins the i-th
// argument of f to 1 (0-based axis)
std::vector<std::pair<std::int64_t, double>> boundary_slice_ratio(const DomainFamily& family,
                                                                  int axis);

struct ShiftDiagnostics {
  std::vector<Coord> c;
  std::int64_t delta = 0;
  double ratio = 0;
};

struct DomainDiagnostics {
  std::int64_t n = 0;
  nlohmann::json domain_spec;
  std::int64_t cardinality = 0;
  std::vector<ShiftDiagnostics> shifts;
  std::vector<double> residue_errors;  // aligned with the moduli list
  std::optional<KEstimate> k_estimate;
  std::optional<double> neighborhood_ratio;
  // for difference-built domains: #D2/#D1, the quantity whose limsup must
  // stay below 1 for the difference to inherit regular growth
  std::optional<double> difference_ratio;
};

struct DiagnosticsOptions {
  bool unit_shifts_only = true;  // false adds the full {-1,0,1}^d neighborhood of shifts
  std::vector<std::vector<std::int64_t>> moduli;
  std::int64_t a_max = 30, b_max = 30;
  bool with_k_estimate = true;
  bool with_neighborhood = false;
  double vanhove_threshold = 0.25;
};

struct DiagnosticsReport {
  std::vector<DomainDiagnostics> per_n;
  std::vector<std::vector<Coord>> shift_set;
  std::vector<std::vector<std::int64_t>> moduli;
  bool regular_growth_consistent = false;
  double vanhove_threshold = 0;
  bool residue_errors_decreasing = false;
  nlohmann::json to_json() const;
};

DiagnosticsReport diagnose(const DomainFamily& family, const DiagnosticsOptions& opt);

// Regular-growth check proper: shift ratios only, family must have >= 3
// members (the "consistent" flag needs a trend to look at).
DiagnosticsReport regular_growth_check(const DomainFamily& family, bool unit_shifts_only = true,
                                       double vanhove_threshold = 0.25);

// convenience: the per-n max-over-residues error |#D^(j,m)/#D - 1/prod(m)|
double residue_uniformity_error(const LatticeDomain& d, std::span<const std::int64_t> moduli);

struct UniformityReport {
  std::vector<std::vector<std::int64_t>> moduli;
  // per modulus tuple, the (n, max error) sequence
  std::vector<std::vector<std::pair<std::int64_t, double>>> errors;
  bool decreasing = false;
};

UniformityReport uniformity_report(const DomainFamily& family,
                                   const std::vector<std::vector<std::int64_t>>& moduli);

}  // namespace mmf

#endif
