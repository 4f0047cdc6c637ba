#include "jwb/serialize.hpp"

#include <fstream>

#include "jwb/composition.hpp"
#include "jwb/constructions.hpp"
#include "jwb/tits_process.hpp"

namespace jwb {

namespace {

std::vector<Rat> rats_from_json(const Json& j) {
  std::vector<Rat> out;
  for (const auto& s : j) out.push_back(rat_parse(s.get<std::string>()));
  return out;
}

Json rats_to_json(const std::vector<Rat>& v) {
  Json j = Json::array();
  for (const Rat& q : v) j.push_back(rat_str(q));
  return j;
}

Scalar scalar_from_json(const Json& j, const TowerPtr& t) {
  if (j.is_string()) return Scalar::constant(t, rat_parse(j.get<std::string>()));
  return Scalar(t, rats_from_json(j));
}

}  // namespace

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error("parse error in '" + path + "' at byte " + std::to_string(e.byte) + ": " +
                e.what());
  }
}

Json tower_to_json(const FieldTower& t) {
  Json exts = Json::array();
  for (int i = 0; i < t.num_exts(); ++i) {
    const Extension& e = t.ext(i);
    Json je;
    je["name"] = e.name;
    je["minpoly"] = rats_to_json(e.minpoly);
    if (!e.autos.empty()) {
      Json autos;
      for (const auto& [name, image] : e.autos) autos[name] = rats_to_json(image);
      je["automorphisms"] = autos;
    }
    exts.push_back(je);
  }
  Json j;
  j["extensions"] = exts;
  return j;
}

TowerPtr tower_from_json(const Json& j) {
  std::vector<Extension> exts;
  for (const auto& je : j.value("extensions", Json::array())) {
    Extension e;
    e.name = je.at("name").get<std::string>();
    e.minpoly = rats_from_json(je.at("minpoly"));
    if (je.contains("automorphisms"))
      for (const auto& [name, image] : je.at("automorphisms").items())
        e.autos[name] = rats_from_json(image);
    exts.push_back(std::move(e));
  }
  if (exts.empty()) return FieldTower::rationals();
  return FieldTower::make(std::move(exts));
}

Json algebra_to_json(const NamedAlgebra& a) {
  const CubicForm& cf = a.algebra.form();
  const int n = cf.n;
  Json j;
  j["format"] = "jwb-algebra-v1";
  j["name"] = a.name;
  j["dim"] = n;
  j["tower"] = tower_to_json(*cf.tower);
  {
    Json bp = Json::array();
    for (const Scalar& s : cf.basepoint) bp.push_back(rats_to_json(s.coeffs()));
    j["basepoint"] = bp;
  }
  {
    Json th = Json::array();
    for (int i = 0; i < n; ++i)
      for (int jj = i; jj < n; ++jj)
        for (int k = jj; k < n; ++k) {
          const Scalar& v = cf.theta.at(i, jj, k);
          if (v.is_zero()) continue;
          th.push_back(Json::array({i, jj, k, rats_to_json(v.coeffs())}));
        }
    j["theta"] = th;
  }
  {
    Json sh = Json::array();
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int jj = i; jj < n; ++jj) {
          const Scalar& v = cf.sharp.at(k, i, jj);
          if (v.is_zero()) continue;
          sh.push_back(Json::array({k, i, jj, rats_to_json(v.coeffs())}));
        }
    j["sharp"] = sh;
  }
  j["meta"] = a.meta.is_null() ? Json::object() : a.meta;
  return j;
}

NamedAlgebra algebra_from_json(const Json& j) {
  if (j.value("format", "") != "jwb-algebra-v1") throw Error("unrecognized algebra file format");
  TowerPtr tower = tower_from_json(j.at("tower"));
  const int n = j.at("dim").get<int>();
  CubicMap theta(tower, n);
  for (const auto& row : j.at("theta")) {
    Scalar v(tower, rats_from_json(row.at(3)));
    theta.set_sym(row.at(0).get<int>(), row.at(1).get<int>(), row.at(2).get<int>(), v);
  }
  QuadraticVecMap sharp(tower, n);
  for (const auto& row : j.at("sharp")) {
    Scalar v(tower, rats_from_json(row.at(3)));
    sharp.set_sym(row.at(0).get<int>(), row.at(1).get<int>(), row.at(2).get<int>(), v);
  }
  Vec basepoint;
  for (const auto& s : j.at("basepoint")) basepoint.push_back(Scalar(tower, rats_from_json(s)));
  if (static_cast<int>(basepoint.size()) != n) throw Error("corrupt file: basepoint length");
  CubicForm cf{tower, n, std::move(theta), std::move(sharp), std::move(basepoint)};
  NamedAlgebra out{j.value("name", "algebra"), CubicJordanAlgebra(std::move(cf)),
                   j.value("meta", Json::object())};
  return out;
}

VerifyOptions verify_options_from_json(const Json& j) {
  VerifyOptions opt;
  opt.seed = j.value("seed", 0ULL);
  opt.samples = j.value("samples", 200L);
  opt.coeff_box = j.value("coeff_box", 3L);
  opt.base_change_disc = j.value("base_change_disc", 5L);
  if (opt.samples <= 0) throw Error("config error: samples must be positive");
  if (opt.coeff_box <= 0) throw Error("config error: coeff_box must be positive");
  return opt;
}

namespace {

AssocAlgebra assoc_from_config(const Json& spec, const TowerPtr& tower) {
  std::string which = spec.at("algebra").get<std::string>();
  if (which == "base") return base_field_algebra(tower);
  if (which == "mat3") return matrix_algebra(tower);
  if (which == "etale-split3") return etale_split3(tower);
  if (which == "etale-k-quadratic")
    return etale_k_quadratic(tower, rat_parse(spec.at("b").get<std::string>()),
                             rat_parse(spec.at("c").get<std::string>()));
  if (which == "cubic-field") {
    std::vector<Rat> mp = rats_from_json(spec.at("minpoly"));
    if (mp.size() != 3) throw Error("cubic-field minpoly needs three coefficients");
    return cubic_field_algebra(tower, mp[0], mp[1], mp[2]);
  }
  throw Error("unknown associative algebra '" + which + "'");
}

CompositionAlgebra composition_from_config(const Json& spec, const TowerPtr& tower) {
  std::string coeff = spec.at("coefficients").get<std::string>();
  if (coeff == "zorn") return zorn(tower);
  if (coeff == "base") return comp_base(tower);
  if (coeff == "cayley") {
    CompositionAlgebra c = comp_base(tower);
    for (const auto& m : spec.at("mus"))
      c = cayley_dickson(c, Scalar::constant(tower, rat_parse(m.get<std::string>())));
    return c;
  }
  throw Error("unknown composition algebra '" + coeff + "'");
}

}  // namespace

NamedAlgebra build_from_config(const Json& spec, const TowerPtr& tower) {
  std::string name = spec.at("name").get<std::string>();
  std::string kind = spec.at("kind").get<std::string>();
  Json meta;
  meta["kind"] = kind;

  if (kind == "aplus") {
    AssocAlgebra a = assoc_from_config(spec, tower);
    meta["algebra"] = spec.at("algebra");
    return {name, a.plus(), meta};
  }
  if (kind == "h3") {
    CompositionAlgebra c = composition_from_config(spec, tower);
    Json g = spec.value("gamma", Json::array({"1", "1", "1"}));
    HermitianParams gamma{Scalar::constant(tower, rat_parse(g.at(0).get<std::string>())),
                          Scalar::constant(tower, rat_parse(g.at(1).get<std::string>())),
                          Scalar::constant(tower, rat_parse(g.at(2).get<std::string>()))};
    meta["coefficients"] = spec.at("coefficients");
    meta["gamma"] = g;
    return {name, hermitian_h3(c, gamma), meta};
  }
  if (kind == "first-tits") {
    AssocAlgebra a = assoc_from_config(spec, tower);
    Scalar mu = Scalar::constant(tower, rat_parse(spec.at("mu").get<std::string>()));
    if (mu.is_zero()) throw Error("mu must be invertible");
    meta["algebra"] = spec.at("algebra");
    meta["mu"] = spec.at("mu");
    return {name, first_tits(a, mu), meta};
  }
  if (kind == "tits-process") {
    // B = Mat3 over the quadratic etale K given by x^2 + b x + c.
    Rat b = rat_parse(spec.at("K").at("b").get<std::string>());
    Rat c = rat_parse(spec.at("K").at("c").get<std::string>());
    QuadEtale k = QuadEtale::from_minpoly(tower, b, c);
    KAlgebra bb = kalgebra_mat3(k);
    KElem mu = k.one();
    if (spec.contains("mu")) {
      const Json& m = spec.at("mu");
      mu = KElem{Scalar::constant(tower, rat_parse(m.at(0).get<std::string>())),
                 Scalar::constant(tower, rat_parse(m.at(1).get<std::string>()))};
    }
    KVec u = bb.unit();
    if (spec.contains("u")) {
      u.clear();
      for (const auto& entry : spec.at("u"))
        u.push_back(KElem{Scalar::constant(tower, rat_parse(entry.at(0).get<std::string>())),
                          Scalar::constant(tower, rat_parse(entry.at(1).get<std::string>()))});
      if (static_cast<int>(u.size()) != bb.dim()) throw Error("u has wrong length");
    }
    TitsProcess tp(std::move(bb), std::move(u), mu);
    meta["K"] = spec.at("K");
    return {name, tp.algebra(), meta};
  }
  throw Error("unknown construction kind '" + kind + "'");
}

bundles::CurveContext curve_from_json(const Json& j) {
  using namespace bundles;
  CurveContext ctx = [&] {
    if (j.at("genus").get<int>() == 0) return CurveContext::genus0(j.value("rational", true));
    std::string t = j.value("type", "I");
    EllipticType ty = t == "I" ? EllipticType::I : t == "II" ? EllipticType::II : EllipticType::III;
    return CurveContext::elliptic(ty);
  }();
  for (const auto& e : j.value("extensions", Json::array())) {
    ExtensionDecl d;
    d.name = e.at("name").get<std::string>();
    d.degree = e.value("degree", 2);
    d.galois = e.value("galois", true);
    d.splitting = e.value("splitting", false);
    for (const auto& a : e.value("automorphisms", Json::array()))
      d.aut_names.push_back(a.get<std::string>());
    ctx.add_extension(std::move(d));
  }
  for (const auto& s : j.value("symbols", Json::array()))
    ctx.add_symbol({s.at("name").get<std::string>(), s.value("order", 0), s.value("degree", 0L),
                    s.value("home", std::string())});
  for (const auto& d : j.value("indecomposables", Json::array()))
    ctx.add_indec({d.at("name").get<std::string>(), d.value("rank", 2), d.value("degree", 0L),
                   d.value("home", std::string()),
                   d.value("dual", d.at("name").get<std::string>()),
                   d.value("absolutely_indecomposable", true)});
  for (const auto& g : j.value("galois", Json::array())) {
    std::map<std::string, int> image;
    for (const auto& [sym, e] : g.at("image").items()) image[sym] = e.get<int>();
    ctx.set_galois_image(g.at("automorphism").get<std::string>(),
                         g.at("symbol").get<std::string>(), std::move(image));
  }
  ctx.validate();
  return ctx;
}

}  // namespace jwb
