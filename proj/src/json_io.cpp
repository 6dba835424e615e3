#include "mmf/json_io.hpp"

namespace mmf {

namespace {

using nlohmann::json;

[[noreturn]] void bad_spec(const std::string& what) { throw_config("domain spec: " + what); }

std::int64_t get_int(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) bad_spec(std::string("missing integer '") + key + "'");
  return j[key].get<std::int64_t>();
}

double get_num(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) bad_spec(std::string("missing number '") + key + "'");
  return j[key].get<double>();
}

}  // namespace

LatticeDomain domain_from_json(const json& spec) {
  if (!spec.is_object() || !spec.contains("type") || !spec["type"].is_string())
    bad_spec("expected an object with a 'type' field");
  const std::string type = spec["type"].get<std::string>();
  if (type == "rectangle") {
    if (!spec.contains("dims") || !spec["dims"].is_array()) bad_spec("rectangle needs 'dims'");
    return rectangle(spec["dims"].get<std::vector<Coord>>());
  }
  if (type == "rectangle_box") {
    if (!spec.contains("lo") || !spec.contains("hi")) bad_spec("rectangle_box needs 'lo'/'hi'");
    return rectangle_box(spec["lo"].get<std::vector<Coord>>(),
                         spec["hi"].get<std::vector<Coord>>());
  }
  if (type == "hyperbolic") return hyperbolic(static_cast<int>(get_int(spec, "d")), get_num(spec, "n"));
  if (type == "sym_poly")
    return sym_poly_hyperbolic(static_cast<int>(get_int(spec, "ell")),
                               static_cast<int>(get_int(spec, "d")), get_num(spec, "n"));
  if (type == "tetrahedron") {
    if (!spec.contains("a") || !spec["a"].is_array()) bad_spec("tetrahedron needs 'a'");
    return tetrahedron(spec["a"].get<std::vector<double>>(), get_num(spec, "n"));
  }
  if (type == "ball") return ball(static_cast<int>(get_int(spec, "d")), get_num(spec, "n"));
  if (type == "weyl") return weyl_chamber(static_cast<int>(get_int(spec, "d")), get_int(spec, "n"));
  if (type == "union" || type == "intersection" || type == "difference") {
    if (!spec.contains("left") || !spec.contains("right"))
      bad_spec(type + " needs 'left' and 'right'");
    LatticeDomain l = domain_from_json(spec["left"]);
    LatticeDomain r = domain_from_json(spec["right"]);
    if (type == "union") return domain_union(l, r);
    if (type == "intersection") return domain_intersection(l, r);
    return domain_difference(l, r);
  }
  bad_spec("unknown type '" + type + "'");
}

DomainFamily family_from_json(const json& spec) {
  DomainFamily fam;
  if (spec.is_object() && spec.contains("members") && spec["members"].is_array()) {
    std::int64_t idx = 0;
    for (const auto& m : spec["members"]) {
      LatticeDomain d = domain_from_json(m);
      std::int64_t n = m.contains("n") ? m["n"].get<std::int64_t>() : ++idx;
      fam.members.emplace_back(n, std::move(d));
    }
  } else {
    if (!spec.is_object() || !spec.contains("n_list") || !spec["n_list"].is_array())
      throw_config("family spec: needs 'n_list' or 'members'");
    auto ns = spec["n_list"].get<std::vector<std::int64_t>>();
    if (ns.empty()) throw_config("family spec: empty n_list");
    for (std::size_t i = 1; i < ns.size(); ++i)
      if (ns[i] <= ns[i - 1]) throw_config("family spec: n_list must be strictly increasing");
    const std::string type = spec.value("type", "");
    for (std::int64_t n : ns) {
      json member = spec;
      member.erase("n_list");
      if (type == "rectangle") {
        int d = static_cast<int>(get_int(spec, "d"));
        member.erase("d");
        member["dims"] = std::vector<Coord>(static_cast<std::size_t>(d), n);
      } else {
        member["n"] = n;
      }
      fam.members.emplace_back(n, domain_from_json(member));
    }
  }
  for (std::size_t i = 1; i < fam.members.size(); ++i)
    if (fam.members[i].second.dim() != fam.members.front().second.dim())
      throw_config("family spec: mixed dimensions");
  return fam;
}

MultiplicativeFunction function_from_json(const json& spec, int dim) {
  if (!spec.is_object() || !spec.contains("name") || !spec["name"].is_string())
    throw_config("function spec: expected an object with a 'name' field");
  double s = spec.value("s", 1.0);
  return builtin_by_name(spec["name"].get<std::string>(), dim, s);
}

}  // namespace mmf
