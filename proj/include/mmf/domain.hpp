#ifndef MMF_DOMAIN_HPP
#define MMF_DOMAIN_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "mmf/error.hpp"
#include "mmf/rng.hpp"

namespace mmf {

using Coord = std::int64_t;
using PointView = std::span<const Coord>;

struct Point {
  std::vector<Coord> coords;
};

// Pull-based enumeration in lexicographic coordinate order.
class Cursor {
 public:
  virtual ~Cursor() = default;
  // writes the next member into out (size dim); false once exhausted
  virtual bool next(std::span<Coord> out) = 0;
};

// f on [1,inf)^d, nondecreasing in each coordinate (caller-asserted)
using SublevelFn = std::function<double(PointView)>;
// body membership on [0,inf)^d coordinates
using BodyPredicate = std::function<bool(std::span<const double>)>;

// A finite nonempty subset of N^d = {1,2,...}^d, immutable after construction.
// Carries a membership predicate, a bounding rectangle, and a lexicographic
// enumeration strategy; cardinality and materialization are cached lazily.
class LatticeDomain {
 public:
  int dim() const;
  const nlohmann::json& spec() const;

  // full membership test: positivity, bounding box, then the predicate
  bool contains(PointView x) const;

  std::span<const Coord> box_lo() const;
  std::span<const Coord> box_hi() const;

  std::int64_t cardinality() const;  // cached; throws Config on empty combinators

  std::unique_ptr<Cursor> cursor() const;
  // restrict enumeration to x1 in [x1_lo, x1_hi] (parallel partitioning hook)
  std::unique_ptr<Cursor> cursor(Coord x1_lo, Coord x1_hi) const;

  void for_each(const std::function<void(PointView)>& fn) const;

  // sublevel-built domains keep their defining function for diagnostics
  bool is_sublevel() const;
  double sublevel_threshold() const;
  const SublevelFn& sublevel_fn() const;

  // combinator structure (union/intersection/difference), empty otherwise
  std::optional<LatticeDomain> left_part() const;
  std::optional<LatticeDomain> right_part() const;

  struct Impl;
  explicit LatticeDomain(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  const Impl& impl() const { return *impl_; }
  std::shared_ptr<const Impl> impl_ptr() const { return impl_; }

 private:
  std::shared_ptr<const Impl> impl_;
};

// --- constructors -----------------------------------------------------------

LatticeDomain rectangle(std::vector<Coord> sides);

// general coordinate-aligned box prod [lo_i, hi_i] with lo_i >= 1
LatticeDomain rectangle_box(std::vector<Coord> lo, std::vector<Coord> hi);

// {x in N^d : f(x) <= threshold}; enumeration exploits monotonicity with
// scan-and-cut; a decrease of f along a scanned ray raises a numeric error
LatticeDomain monotone_sublevel(int dim, SublevelFn f, double threshold,
                                nlohmann::json spec = nullptr);

LatticeDomain hyperbolic(int dim, double n);                      // x1...xd <= n
LatticeDomain sym_poly_hyperbolic(int ell, int dim, double n);    // P_ell(x) <= n
LatticeDomain tetrahedron(std::vector<double> a, double n);       // sum a_i x_i <= n
LatticeDomain ball(int dim, double n);                            // sum x_i^2 <= n
LatticeDomain weyl_chamber(int dim, Coord n);                     // x1 <= ... <= xd <= n

// {x in N^d : body(x/scale)}; body must be a compact convex subset of
// prod [body_lo_i, body_hi_i] with nonempty interior (caller assertion)
LatticeDomain dilated_body(int dim, BodyPredicate body, std::span<const double> body_lo,
                           std::span<const double> body_hi, double scale);

LatticeDomain domain_union(const LatticeDomain& a, const LatticeDomain& b);
LatticeDomain domain_intersection(const LatticeDomain& a, const LatticeDomain& b);
LatticeDomain domain_difference(const LatticeDomain& a, const LatticeDomain& b);

// the bounding rectangle Pi as a domain of its own
LatticeDomain bounding_box(const LatticeDomain& d);

// --- sampling ----------------------------------------------------------------

enum class SampleStrategy { Auto, Materialized, Rejection };

struct SamplerOptions {
  SampleStrategy strategy = SampleStrategy::Auto;
  std::int64_t materialize_cap = 20'000'000;
  double acceptance_floor = 1e-6;
};

// exactly uniform over members; materialized draws by index, rejection draws
// uniform in the bounding box and retests membership
Point sample_uniform(const LatticeDomain& d, RandomStream& rng, const SamplerOptions& opt = {});
void sample_uniform_into(const LatticeDomain& d, RandomStream& rng, const SamplerOptions& opt,
                         std::vector<Coord>& out);

// --- families ----------------------------------------------------------------

struct DomainFamily {
  // ordered by the growth parameter n
  std::vector<std::pair<std::int64_t, LatticeDomain>> members;
};

// CSV export, one point per row, header "x1,...,xd"
void write_points_csv(const LatticeDomain& d, std::ostream& out);

}  // namespace mmf

#endif
