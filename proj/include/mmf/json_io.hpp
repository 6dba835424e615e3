#ifndef MMF_JSON_IO_HPP
#define MMF_JSON_IO_HPP

#include <json.hpp>

#include "mmf/domain.hpp"
#include "mmf/multfunc.hpp"

namespace mmf {

// Domain spec schema: {"type": ..., ...params}.  Supported types: rectangle
// {dims:[...]}, hyperbolic {d,n}, sym_poly {ell,d,n}, tetrahedron {a:[...],n},
// ball {d,n}, weyl {d,n}, rectangle_box {lo,hi}, and the combinators
// union/intersection/difference {left,right}.  Dilated bodies and custom
// sublevel functions are library-only (predicates do not serialize).
LatticeDomain domain_from_json(const nlohmann::json& spec);

// Family spec: a domain spec with "n_list" in place of "n"; rectangles use
// {"type":"rectangle","d":k,"n_list":[...]} meaning n x ... x n cubes, or an
// explicit {"members":[spec,...]} list.
DomainFamily family_from_json(const nlohmann::json& spec);

// {"name": builtin, "s": exponent (gcd_power only)}
MultiplicativeFunction function_from_json(const nlohmann::json& spec, int dim);

}  // namespace mmf

#endif
