#ifndef JWB_SERIALIZE_HPP
#define JWB_SERIALIZE_HPP

#include <json.hpp>

#include "jwb/bundles.hpp"
#include "jwb/cubic_jordan.hpp"

namespace jwb {

using Json = nlohmann::ordered_json;

// All rationals travel as strings "p/q" so exactness survives serialization.

Json tower_to_json(const FieldTower& t);
TowerPtr tower_from_json(const Json& j);

struct NamedAlgebra {
  std::string name;
  CubicJordanAlgebra algebra;
  Json meta;
};

Json algebra_to_json(const NamedAlgebra& a);
NamedAlgebra algebra_from_json(const Json& j);

VerifyOptions verify_options_from_json(const Json& j);  // validates seed/samples

// Builds one algebra from a config entry {"name", "kind", ...}.
NamedAlgebra build_from_config(const Json& spec, const TowerPtr& tower);

bundles::CurveContext curve_from_json(const Json& j);

Json load_json_file(const std::string& path);  // parse errors carry positions

}  // namespace jwb

#endif
