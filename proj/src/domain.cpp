#include "mmf/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <optional>
#include <ostream>

namespace mmf {

namespace {

enum class Kind { Rectangle, Sublevel, Weyl, BoxFilter, Union, Intersection, Difference };

__int128 box_volume(std::span<const Coord> lo, std::span<const Coord> hi) {
  __int128 v = 1;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (hi[i] < lo[i]) return 0;
    v *= (hi[i] - lo[i] + 1);
    if (v > (__int128(1) << 100)) return __int128(1) << 100;  // saturate
  }
  return v;
}

}  // namespace

struct LatticeDomain::Impl {
  int dim = 0;
  Kind kind = Kind::Rectangle;
  nlohmann::json spec;
  std::vector<Coord> lo, hi;

  // Sublevel
  SublevelFn f;
  double threshold = 0;

  // BoxFilter (dilated bodies)
  std::function<bool(PointView)> pred;

  // Weyl
  Coord weyl_n = 0;

  // combinators
  std::shared_ptr<const Impl> left, right;

  // caches
  mutable std::mutex mu;
  mutable std::optional<std::int64_t> card;
  mutable std::shared_ptr<const std::vector<Coord>> points;  // flattened, dim-major
  mutable std::optional<double> rejection_rate;

  bool member(PointView x) const;
  std::unique_ptr<Cursor> make_cursor(Coord x1_lo, Coord x1_hi) const;
  std::int64_t count() const;
  std::shared_ptr<const std::vector<Coord>> materialize(std::int64_t cap) const;
  double probe_rejection(double floor) const;
};

// membership without the positivity/bbox gate (callers guarantee x in box)
bool LatticeDomain::Impl::member(PointView x) const {
  switch (kind) {
    case Kind::Rectangle:
      return true;
    case Kind::Sublevel:
      return f(x) <= threshold;
    case Kind::Weyl: {
      for (int i = 0; i + 1 < dim; ++i)
        if (x[i] > x[i + 1]) return false;
      return x[dim - 1] <= weyl_n;
    }
    case Kind::BoxFilter:
      return pred(x);
    case Kind::Union: {
      auto inside = [&](const Impl& d) {
        for (int i = 0; i < d.dim; ++i)
          if (x[i] < d.lo[i] || x[i] > d.hi[i]) return false;
        return d.member(x);
      };
      return inside(*left) || inside(*right);
    }
    case Kind::Intersection:
      return left->member(x) && right->member(x);
    case Kind::Difference: {
      if (!left->member(x)) return false;
      for (int i = 0; i < dim; ++i)
        if (x[i] < right->lo[i] || x[i] > right->hi[i]) return true;
      return !right->member(x);
    }
  }
  return false;
}

// --- cursors -----------------------------------------------------------------

namespace {

using Impl = LatticeDomain::Impl;

class OdometerCursor : public Cursor {
 public:
  OdometerCursor(std::vector<Coord> lo, std::vector<Coord> hi,
                 std::function<bool(PointView)> keep = nullptr)
      : lo_(std::move(lo)), hi_(std::move(hi)), keep_(std::move(keep)), cur_(lo_) {
    for (std::size_t i = 0; i < lo_.size(); ++i)
      if (lo_[i] > hi_[i]) done_ = true;
  }

  bool next(std::span<Coord> out) override {
    while (!done_) {
      if (!started_) {
        started_ = true;
      } else {
        int k = static_cast<int>(cur_.size()) - 1;
        while (k >= 0) {
          if (++cur_[k] <= hi_[k]) break;
          cur_[k] = lo_[k];
          --k;
        }
        if (k < 0) { done_ = true; return false; }
      }
      if (!keep_ || keep_(cur_)) {
        std::copy(cur_.begin(), cur_.end(), out.begin());
        return true;
      }
    }
    return false;
  }

 private:
  std::vector<Coord> lo_, hi_;
  std::function<bool(PointView)> keep_;
  std::vector<Coord> cur_;
  bool started_ = false;
  bool done_ = false;
};

class SublevelCursor : public Cursor {
 public:
  SublevelCursor(const Impl* d, Coord x1_lo, Coord x1_hi)
      : d_(d), x1_hi_(x1_hi), cur_(static_cast<std::size_t>(d->dim), 1) {
    cur_[0] = x1_lo;
  }

  bool next(std::span<Coord> out) override {
    if (done_) return false;
    if (!started_) {
      started_ = true;
      if (cur_[0] > x1_hi_) { done_ = true; return false; }
      double v = d_->f(cur_);
      if (v <= d_->threshold) {
        ray_f_ = v;
        std::copy(cur_.begin(), cur_.end(), out.begin());
        return true;
      }
      // f nondecreasing in x1: nothing at larger x1 either
      done_ = true;
      return false;
    }
    int dim = d_->dim;
    int k = dim - 1;
    while (k >= 0) {
      ++cur_[k];
      for (int j = k + 1; j < dim; ++j) cur_[j] = 1;
      if (k == 0 && cur_[0] > x1_hi_) { done_ = true; return false; }
      double v = d_->f(cur_);
      if (k == dim - 1) {
        if (v < ray_f_)
          throw_numeric("monotone_sublevel: f decreased along a scanned ray (contract violation)");
      }
      if (v <= d_->threshold) {
        ray_f_ = v;
        std::copy(cur_.begin(), cur_.end(), out.begin());
        return true;
      }
      --k;  // cut: larger values of this coordinate cannot re-enter the sublevel set
    }
    done_ = true;
    return false;
  }

 private:
  const Impl* d_;
  Coord x1_hi_;
  std::vector<Coord> cur_;
  double ray_f_ = -std::numeric_limits<double>::infinity();
  bool started_ = false;
  bool done_ = false;
};

class WeylCursor : public Cursor {
 public:
  WeylCursor(int dim, Coord n, Coord x1_lo, Coord x1_hi)
      : n_(n), x1_hi_(std::min(x1_hi, n)), cur_(static_cast<std::size_t>(dim), x1_lo) {}

  bool next(std::span<Coord> out) override {
    if (done_) return false;
    if (!started_) {
      started_ = true;
      if (cur_[0] > x1_hi_) { done_ = true; return false; }
      std::copy(cur_.begin(), cur_.end(), out.begin());
      return true;
    }
    int dim = static_cast<int>(cur_.size());
    int k = dim - 1;
    while (k >= 0) {
      if (cur_[k] + 1 <= n_ && (k > 0 || cur_[k] + 1 <= x1_hi_)) {
        Coord v = cur_[k] + 1;
        for (int j = k; j < dim; ++j) cur_[j] = v;  // minimal nondecreasing suffix
        std::copy(cur_.begin(), cur_.end(), out.begin());
        return true;
      }
      --k;
    }
    done_ = true;
    return false;
  }

 private:
  Coord n_, x1_hi_;
  std::vector<Coord> cur_;
  bool started_ = false;
  bool done_ = false;
};

class FilterCursor : public Cursor {
 public:
  FilterCursor(std::unique_ptr<Cursor> inner, std::function<bool(PointView)> keep, int dim)
      : inner_(std::move(inner)), keep_(std::move(keep)), buf_(static_cast<std::size_t>(dim)) {}

  bool next(std::span<Coord> out) override {
    while (inner_->next(buf_)) {
      if (keep_(buf_)) {
        std::copy(buf_.begin(), buf_.end(), out.begin());
        return true;
      }
    }
    return false;
  }

 private:
  std::unique_ptr<Cursor> inner_;
  std::function<bool(PointView)> keep_;
  std::vector<Coord> buf_;
};

class MergeCursor : public Cursor {
 public:
  MergeCursor(std::unique_ptr<Cursor> a, std::unique_ptr<Cursor> b, int dim)
      : a_(std::move(a)), b_(std::move(b)), abuf_(static_cast<std::size_t>(dim)),
        bbuf_(static_cast<std::size_t>(dim)) {
    a_valid_ = a_->next(abuf_);
    b_valid_ = b_->next(bbuf_);
  }

  bool next(std::span<Coord> out) override {
    if (!a_valid_ && !b_valid_) return false;
    int cmp;
    if (!a_valid_) cmp = 1;
    else if (!b_valid_) cmp = -1;
    else cmp = lex_compare(abuf_, bbuf_);
    if (cmp <= 0) {
      std::copy(abuf_.begin(), abuf_.end(), out.begin());
      if (cmp == 0) b_valid_ = b_->next(bbuf_);  // drop duplicate
      a_valid_ = a_->next(abuf_);
    } else {
      std::copy(bbuf_.begin(), bbuf_.end(), out.begin());
      b_valid_ = b_->next(bbuf_);
    }
    return true;
  }

 private:
  static int lex_compare(const std::vector<Coord>& x, const std::vector<Coord>& y) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] < y[i]) return -1;
      if (x[i] > y[i]) return 1;
    }
    return 0;
  }

  std::unique_ptr<Cursor> a_, b_;
  std::vector<Coord> abuf_, bbuf_;
  bool a_valid_ = false, b_valid_ = false;
};

}  // namespace

std::unique_ptr<Cursor> LatticeDomain::Impl::make_cursor(Coord x1_lo, Coord x1_hi) const {
  x1_lo = std::max(x1_lo, lo[0]);
  x1_hi = std::min(x1_hi, hi[0]);
  switch (kind) {
    case Kind::Rectangle: {
      auto l = lo; auto h = hi;
      l[0] = x1_lo; h[0] = x1_hi;
      return std::make_unique<OdometerCursor>(std::move(l), std::move(h));
    }
    case Kind::Sublevel:
      return std::make_unique<SublevelCursor>(this, x1_lo, x1_hi);
    case Kind::Weyl:
      return std::make_unique<WeylCursor>(dim, weyl_n, x1_lo, x1_hi);
    case Kind::BoxFilter: {
      auto l = lo; auto h = hi;
      l[0] = x1_lo; h[0] = x1_hi;
      return std::make_unique<OdometerCursor>(std::move(l), std::move(h), pred);
    }
    case Kind::Union:
      return std::make_unique<MergeCursor>(left->make_cursor(x1_lo, x1_hi),
                                           right->make_cursor(x1_lo, x1_hi), dim);
    case Kind::Intersection: {
      auto keep = [r = right](PointView x) {
        for (int i = 0; i < r->dim; ++i)
          if (x[i] < r->lo[i] || x[i] > r->hi[i]) return false;
        return r->member(x);
      };
      return std::make_unique<FilterCursor>(left->make_cursor(x1_lo, x1_hi), keep, dim);
    }
    case Kind::Difference: {
      auto keep = [r = right](PointView x) {
        for (int i = 0; i < r->dim; ++i)
          if (x[i] < r->lo[i] || x[i] > r->hi[i]) return true;
        return !r->member(x);
      };
      return std::make_unique<FilterCursor>(left->make_cursor(x1_lo, x1_hi), keep, dim);
    }
  }
  return nullptr;
}

std::int64_t LatticeDomain::Impl::count() const {
  {
    std::lock_guard<std::mutex> g(mu);
    if (card) return *card;
  }
  std::int64_t n = 0;
  if (kind == Kind::Rectangle) {
    __int128 v = box_volume(lo, hi);
    if (v > std::numeric_limits<std::int64_t>::max())
      throw_resource("cardinality exceeds 64-bit range");
    n = static_cast<std::int64_t>(v);
  } else if (kind == Kind::Weyl) {
    // multisets of size dim from weyl_n values: C(n+d-1, d)
    __int128 c = 1;
    for (int i = 1; i <= dim; ++i) {
      c = c * (weyl_n - 1 + i) / i;  // exact at each step
      if (c > std::numeric_limits<std::int64_t>::max())
        throw_resource("cardinality exceeds 64-bit range");
    }
    n = static_cast<std::int64_t>(c);
  } else {
    auto cur = make_cursor(lo[0], hi[0]);
    std::vector<Coord> buf(static_cast<std::size_t>(dim));
    while (cur->next(buf)) ++n;
  }
  std::lock_guard<std::mutex> g(mu);
  card = n;
  return n;
}

std::shared_ptr<const std::vector<Coord>> LatticeDomain::Impl::materialize(std::int64_t cap) const {
  {
    std::lock_guard<std::mutex> g(mu);
    if (points) return points;
  }
  auto pts = std::make_shared<std::vector<Coord>>();
  auto cur = make_cursor(lo[0], hi[0]);
  std::vector<Coord> buf(static_cast<std::size_t>(dim));
  std::int64_t n = 0;
  while (cur->next(buf)) {
    if (++n > cap)
      throw_resource("materialization cap exceeded (" + std::to_string(cap) +
                     " points); use the rejection strategy");
    pts->insert(pts->end(), buf.begin(), buf.end());
  }
  std::lock_guard<std::mutex> g(mu);
  if (!card) card = n;
  if (!points) points = pts;
  return points;
}

// Probe draws come from a domain-private deterministic stream so that caller
// streams advance only by actual sampling attempts.
double LatticeDomain::Impl::probe_rejection(double floor) const {
  {
    std::lock_guard<std::mutex> g(mu);
    if (rejection_rate) return *rejection_rate;
  }
  double rate = 1.0;
  if (kind != Kind::Rectangle) {
    RandomStream probe(0xC0FFEE5EEDULL);
    std::vector<Coord> buf(static_cast<std::size_t>(dim));
    std::int64_t trials = 0, accepts = 0;
    std::int64_t max_trials = static_cast<std::int64_t>(std::ceil(20.0 / floor));
    while (trials < 1000 || (accepts == 0 && trials < max_trials)) {
      for (int i = 0; i < dim; ++i) buf[i] = probe.range(lo[i], hi[i]);
      ++trials;
      if (member(buf)) ++accepts;
    }
    rate = static_cast<double>(accepts) / static_cast<double>(trials);
    if (rate < floor)
      throw_resource("rejection acceptance probability " + std::to_string(rate) +
                     " below floor " + std::to_string(floor) +
                     " after probe; materialize the domain instead");
  }
  std::lock_guard<std::mutex> g(mu);
  rejection_rate = rate;
  return rate;
}

// --- LatticeDomain forwarding --------------------------------------------------

int LatticeDomain::dim() const { return impl_->dim; }
const nlohmann::json& LatticeDomain::spec() const { return impl_->spec; }
std::span<const Coord> LatticeDomain::box_lo() const { return impl_->lo; }
std::span<const Coord> LatticeDomain::box_hi() const { return impl_->hi; }

bool LatticeDomain::contains(PointView x) const {
  if (static_cast<int>(x.size()) != impl_->dim) return false;
  for (int i = 0; i < impl_->dim; ++i)
    if (x[i] < 1 || x[i] < impl_->lo[i] || x[i] > impl_->hi[i]) return false;
  return impl_->member(x);
}

std::int64_t LatticeDomain::cardinality() const {
  std::int64_t n = impl_->count();
  if (n == 0) throw_config("empty domain");
  return n;
}

std::unique_ptr<Cursor> LatticeDomain::cursor() const {
  return impl_->make_cursor(impl_->lo[0], impl_->hi[0]);
}

std::unique_ptr<Cursor> LatticeDomain::cursor(Coord x1_lo, Coord x1_hi) const {
  return impl_->make_cursor(x1_lo, x1_hi);
}

void LatticeDomain::for_each(const std::function<void(PointView)>& fn) const {
  auto cur = cursor();
  std::vector<Coord> buf(static_cast<std::size_t>(impl_->dim));
  std::int64_t n = 0;
  while (cur->next(buf)) {
    ++n;
    fn(buf);
  }
  if (n == 0) throw_config("empty domain");
}

bool LatticeDomain::is_sublevel() const { return impl_->kind == Kind::Sublevel; }

std::optional<LatticeDomain> LatticeDomain::left_part() const {
  if (!impl_->left) return std::nullopt;
  return LatticeDomain(impl_->left);
}

std::optional<LatticeDomain> LatticeDomain::right_part() const {
  if (!impl_->right) return std::nullopt;
  return LatticeDomain(impl_->right);
}

double LatticeDomain::sublevel_threshold() const {
  if (!is_sublevel()) throw_config("domain was not built as a monotone sublevel set");
  return impl_->threshold;
}

const SublevelFn& LatticeDomain::sublevel_fn() const {
  if (!is_sublevel()) throw_config("domain was not built as a monotone sublevel set");
  return impl_->f;
}

// --- constructors --------------------------------------------------------------

namespace {

std::shared_ptr<Impl> base_impl(int dim, Kind kind) {
  if (dim < 1) throw_config("domain dimension must be >= 1");
  auto impl = std::make_shared<Impl>();
  impl->dim = dim;
  impl->kind = kind;
  impl->lo.assign(static_cast<std::size_t>(dim), 1);
  impl->hi.assign(static_cast<std::size_t>(dim), 1);
  return impl;
}

// largest x >= 1 with g(x) <= t, assuming g nondecreasing and eventually > t;
// requires g(1) <= t
Coord last_below(const std::function<double(Coord)>& g, double t) {
  Coord hi = 1;
  while (g(hi * 2) <= t) {
    hi *= 2;
    if (hi > (Coord(1) << 60)) throw_resource("sublevel set appears unbounded along an axis");
  }
  Coord a = hi, b = hi * 2;  // g(a) <= t < g(b)
  while (b - a > 1) {
    Coord m = a + (b - a) / 2;
    if (g(m) <= t) a = m; else b = m;
  }
  return a;
}

}  // namespace

LatticeDomain rectangle(std::vector<Coord> sides) {
  if (sides.empty()) throw_config("rectangle: needs at least one side");
  for (Coord s : sides)
    if (s < 1) throw_config("rectangle: sides must be >= 1");
  auto impl = base_impl(static_cast<int>(sides.size()), Kind::Rectangle);
  impl->hi.assign(sides.begin(), sides.end());
  impl->spec = {{"type", "rectangle"}, {"dims", sides}};
  return LatticeDomain(std::move(impl));
}

LatticeDomain rectangle_box(std::vector<Coord> lo, std::vector<Coord> hi) {
  if (lo.empty() || lo.size() != hi.size()) throw_config("rectangle_box: bad bounds");
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (lo[i] < 1 || hi[i] < lo[i]) throw_config("rectangle_box: bounds out of range");
  auto impl = base_impl(static_cast<int>(lo.size()), Kind::Rectangle);
  impl->lo = lo;
  impl->hi = hi;
  impl->spec = {{"type", "rectangle_box"}, {"lo", lo}, {"hi", hi}};
  return LatticeDomain(std::move(impl));
}

LatticeDomain monotone_sublevel(int dim, SublevelFn f, double threshold, nlohmann::json spec) {
  auto impl = base_impl(dim, Kind::Sublevel);
  impl->f = std::move(f);
  impl->threshold = threshold;
  std::vector<Coord> probe(static_cast<std::size_t>(dim), 1);
  if (impl->f(probe) > threshold) throw_config("monotone_sublevel: empty sublevel set");
  for (int i = 0; i < dim; ++i) {
    auto axis = [&](Coord x) {
      probe.assign(static_cast<std::size_t>(dim), 1);
      probe[i] = x;
      return impl->f(probe);
    };
    impl->hi[i] = last_below(axis, threshold);
  }
  impl->spec = spec.is_null() ? nlohmann::json{{"type", "custom_sublevel"}} : std::move(spec);
  return LatticeDomain(std::move(impl));
}

LatticeDomain hyperbolic(int dim, double n) {
  if (dim < 1) throw_config("hyperbolic: d must be >= 1");
  if (n < 1) throw_config("hyperbolic: empty domain (n < 1)");
  auto f = [](PointView x) {
    double p = 1;
    for (Coord c : x) p *= static_cast<double>(c);
    return p;
  };
  return monotone_sublevel(dim, f, n, {{"type", "hyperbolic"}, {"d", dim}, {"n", n}});
}

LatticeDomain sym_poly_hyperbolic(int ell, int dim, double n) {
  if (dim < 2 || ell < 2 || ell > dim) throw_config("sym_poly: requires 2 <= ell <= d");
  auto f = [ell, dim](PointView x) {
    // P_ell via Newton's identity-free DP over e_k of prefixes
    std::vector<double> e(static_cast<std::size_t>(ell) + 1, 0.0);
    e[0] = 1.0;
    for (int i = 0; i < dim; ++i) {
      double xi = static_cast<double>(x[i]);
      for (int k = std::min(ell, i + 1); k >= 1; --k) e[k] += e[k - 1] * xi;
    }
    return e[ell];
  };
  return monotone_sublevel(dim, f, n,
                           {{"type", "sym_poly"}, {"ell", ell}, {"d", dim}, {"n", n}});
}

LatticeDomain tetrahedron(std::vector<double> a, double n) {
  if (a.empty()) throw_config("tetrahedron: needs coefficients");
  for (double c : a)
    if (!(c > 0)) throw_config("tetrahedron: coefficients must be positive");
  int dim = static_cast<int>(a.size());
  auto f = [coef = a](PointView x) {
    double s = 0;
    for (std::size_t i = 0; i < coef.size(); ++i) s += coef[i] * static_cast<double>(x[i]);
    return s;
  };
  return monotone_sublevel(dim, f, n, {{"type", "tetrahedron"}, {"a", a}, {"n", n}});
}

LatticeDomain ball(int dim, double n) {
  if (dim < 1) throw_config("ball: d must be >= 1");
  if (n < dim) throw_config("ball: empty domain (n < d)");
  auto f = [](PointView x) {
    double s = 0;
    for (Coord c : x) s += static_cast<double>(c) * static_cast<double>(c);
    return s;
  };
  return monotone_sublevel(dim, f, n, {{"type", "ball"}, {"d", dim}, {"n", n}});
}

LatticeDomain weyl_chamber(int dim, Coord n) {
  if (dim < 1) throw_config("weyl_chamber: d must be >= 1");
  if (n < 1) throw_config("weyl_chamber: n must be >= 1");
  auto impl = base_impl(dim, Kind::Weyl);
  impl->weyl_n = n;
  impl->hi.assign(static_cast<std::size_t>(dim), n);
  impl->spec = {{"type", "weyl"}, {"d", dim}, {"n", n}};
  return LatticeDomain(std::move(impl));
}

LatticeDomain dilated_body(int dim, BodyPredicate body, std::span<const double> body_lo,
                           std::span<const double> body_hi, double scale) {
  if (dim < 1) throw_config("dilated_body: d must be >= 1");
  if (!(scale > 0)) throw_config("dilated_body: scale must be positive");
  if (static_cast<int>(body_lo.size()) != dim || static_cast<int>(body_hi.size()) != dim)
    throw_config("dilated_body: box bounds must match dimension");
  auto impl = base_impl(dim, Kind::BoxFilter);
  bool nonempty_box = true;
  for (int i = 0; i < dim; ++i) {
    impl->lo[i] = std::max<Coord>(1, static_cast<Coord>(std::floor(body_lo[i] * scale)));
    impl->hi[i] = static_cast<Coord>(std::ceil(body_hi[i] * scale));
    if (impl->hi[i] < impl->lo[i]) nonempty_box = false;
  }
  if (!nonempty_box) throw_config("dilated_body: empty intersection with N^d");
  impl->pred = [body = std::move(body), scale, dim](PointView x) {
    std::vector<double> u(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) u[i] = static_cast<double>(x[i]) / scale;
    return body(u);
  };
  impl->spec = {{"type", "dilated_body"}, {"scale", scale}};
  // nonemptiness of the lattice set itself is verified eagerly
  auto cur = impl->make_cursor(impl->lo[0], impl->hi[0]);
  std::vector<Coord> buf(static_cast<std::size_t>(dim));
  if (!cur->next(buf)) throw_config("dilated_body: empty intersection with N^d");
  return LatticeDomain(std::move(impl));
}

namespace {

std::shared_ptr<Impl> combo_impl(const LatticeDomain& a, const LatticeDomain& b, Kind kind,
                                 const char* name) {
  if (a.dim() != b.dim()) throw_config(std::string(name) + ": dimension mismatch");
  auto impl = base_impl(a.dim(), kind);
  impl->left = a.impl_ptr();
  impl->right = b.impl_ptr();
  impl->spec = {{"type", name}, {"left", a.spec()}, {"right", b.spec()}};
  return impl;
}

}  // namespace

LatticeDomain domain_union(const LatticeDomain& a, const LatticeDomain& b) {
  auto impl = combo_impl(a, b, Kind::Union, "union");
  for (int i = 0; i < a.dim(); ++i) {
    impl->lo[i] = std::min(a.box_lo()[i], b.box_lo()[i]);
    impl->hi[i] = std::max(a.box_hi()[i], b.box_hi()[i]);
  }
  return LatticeDomain(std::move(impl));
}

LatticeDomain domain_intersection(const LatticeDomain& a, const LatticeDomain& b) {
  auto impl = combo_impl(a, b, Kind::Intersection, "intersection");
  for (int i = 0; i < a.dim(); ++i) {
    impl->lo[i] = std::max(a.box_lo()[i], b.box_lo()[i]);
    impl->hi[i] = std::min(a.box_hi()[i], b.box_hi()[i]);
  }
  return LatticeDomain(std::move(impl));
}

LatticeDomain domain_difference(const LatticeDomain& a, const LatticeDomain& b) {
  auto impl = combo_impl(a, b, Kind::Difference, "difference");
  impl->lo = std::vector<Coord>(a.box_lo().begin(), a.box_lo().end());
  impl->hi = std::vector<Coord>(a.box_hi().begin(), a.box_hi().end());
  return LatticeDomain(std::move(impl));
}

LatticeDomain bounding_box(const LatticeDomain& d) {
  return rectangle_box(std::vector<Coord>(d.box_lo().begin(), d.box_lo().end()),
                       std::vector<Coord>(d.box_hi().begin(), d.box_hi().end()));
}

// --- sampling --------------------------------------------------------------------

void sample_uniform_into(const LatticeDomain& d, RandomStream& rng, const SamplerOptions& opt,
                         std::vector<Coord>& out) {
  const auto& impl = d.impl();
  int dim = d.dim();
  out.resize(static_cast<std::size_t>(dim));

  SampleStrategy strategy = opt.strategy;
  if (strategy == SampleStrategy::Auto) {
    if (impl.kind == Kind::Rectangle) {
      strategy = SampleStrategy::Rejection;  // box draws always accept
    } else {
      __int128 vol = box_volume(d.box_lo(), d.box_hi());
      strategy = (vol <= opt.materialize_cap) ? SampleStrategy::Materialized
                                              : SampleStrategy::Rejection;
    }
  }

  if (strategy == SampleStrategy::Materialized) {
    auto pts = impl.materialize(opt.materialize_cap);
    std::int64_t count = static_cast<std::int64_t>(pts->size()) / dim;
    if (count == 0) throw_config("empty domain");
    std::int64_t idx = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(count)));
    std::copy(pts->begin() + idx * dim, pts->begin() + (idx + 1) * dim, out.begin());
    return;
  }

  double rate = impl.probe_rejection(opt.acceptance_floor);
  std::int64_t max_attempts =
      static_cast<std::int64_t>(std::ceil(200.0 / std::max(rate, opt.acceptance_floor)));
  for (std::int64_t attempt = 0; attempt < max_attempts; ++attempt) {
    for (int i = 0; i < dim; ++i) out[i] = rng.range(impl.lo[i], impl.hi[i]);
    if (impl.member(out)) return;
  }
  throw_resource("rejection sampling failed to accept within the attempt budget");
}

Point sample_uniform(const LatticeDomain& d, RandomStream& rng, const SamplerOptions& opt) {
  Point p;
  sample_uniform_into(d, rng, opt, p.coords);
  return p;
}

void write_points_csv(const LatticeDomain& d, std::ostream& out) {
  for (int i = 0; i < d.dim(); ++i) out << (i ? "," : "") << "x" << (i + 1);
  out << "\n";
  d.for_each([&](PointView x) {
    for (int i = 0; i < d.dim(); ++i) out << (i ? "," : "") << x[i];
    out << "\n";
  });
}

}  // namespace mmf
