#include "equistate/io/json.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "equistate/error.hpp"

namespace equistate::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::Parse, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string str(const json& j) {
  if (!j.is_string()) bad("expected a string, got " + j.dump());
  return j.get<std::string>();
}

std::string face_name(Face f) { return f == Face::Front ? "front" : "back"; }

Face parse_face(const std::string& s) {
  if (s == "front") return Face::Front;
  if (s == "back") return Face::Back;
  bad("unknown face '" + s + "'");
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

json to_json(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return equistate::to_string(c);
}

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  return parse_rational(str(j));
}

json to_json(const Dyadic& d) { return d.to_string(); }

Dyadic dyadic_from_json(const json& j) { return Dyadic::parse(str(j)); }

json to_json(const BallReal& b) {
  json j;
  j["mid"] = to_json(b.mid);
  j["rad"] = to_json(b.rad);
  j["approx"] = b.mid.to_double();
  return j;
}

BallReal ball_from_json(const json& j) { return BallReal(dyadic_from_json(field(j, "mid")), dyadic_from_json(field(j, "rad"))); }

SpherePoint parse_sphere_point(std::string_view s) {
  if (s == "inf" || s == "infinity") return SpherePoint::infinity();
  return SpherePoint(GaussianRational::parse(s));
}

TilePoint parse_tile_point(std::string_view s) {
  if (s.size() < 4 || (s[0] != 'F' && s[0] != 'B') || s[1] != '(' || s.back() != ')')
    bad("tile point must look like F(a,b,c) or B(a,b,c)");
  auto parts = split(s.substr(2, s.size() - 3), ',');
  if (parts.size() != 3) bad("tile point needs three barycentric coordinates");
  return TilePoint(s[0] == 'F' ? Face::Front : Face::Back,
                   {parse_rational(parts[0]), parse_rational(parts[1]), parse_rational(parts[2])});
}

MeasurePoint parse_point(std::string_view s, Space space) {
  if (space == Space::TriSphere) return parse_tile_point(s);
  return parse_sphere_point(s);
}

json to_json(const SpherePoint& p) {
  if (p.is_infinity()) return "inf";
  json j;
  j["re"] = to_json(p.re());
  j["im"] = to_json(p.im());
  return j;
}

json to_json(const TilePoint& p) {
  json j;
  j["face"] = face_name(p.face());
  j["bary"] = json::array({to_json(p[0]), to_json(p[1]), to_json(p[2])});
  return j;
}

json to_json(const MeasurePoint& p) {
  if (auto* s = std::get_if<SpherePoint>(&p)) return to_json(*s);
  return to_json(std::get<TilePoint>(p));
}

MeasurePoint point_from_json(const json& j, Space space) {
  if (space == Space::RiemannSphere) {
    if (j.is_string()) return parse_sphere_point(j.get<std::string>());
    return SpherePoint(rational_from_json(field(j, "re")), j.contains("im") ? rational_from_json(j.at("im")) : Rational(0));
  }
  const json& b = field(j, "bary");
  if (!b.is_array() || b.size() != 3) bad("bary must hold three coordinates");
  return TilePoint(parse_face(str(field(j, "face"))),
                   {rational_from_json(b[0]), rational_from_json(b[1]), rational_from_json(b[2])});
}

json to_json(const FiniteMeasure& mu) {
  json j;
  j["space"] = std::string(to_string(mu.space()));
  j["mass"] = mu.mass() == FiniteMeasure::Mass::Probability ? "probability" : "sub";
  j["displacement"] = to_json(mu.displacement());
  json atoms = json::array();
  for (const auto& a : mu.atoms()) {
    json e;
    e["point"] = to_json(a.point);
    e["weight"] = to_json(a.weight);
    atoms.push_back(e);
  }
  j["atoms"] = atoms;
  return j;
}

FiniteMeasure measure_from_json(const json& j) {
  Space space = parse_space(str(field(j, "space")));
  auto mass = FiniteMeasure::Mass::Probability;
  if (j.contains("mass") && str(j.at("mass")) == "sub") mass = FiniteMeasure::Mass::Sub;
  std::vector<Atom> atoms;
  const json& arr = field(j, "atoms");
  if (!arr.is_array()) bad("atoms must be an array");
  for (const auto& a : arr) atoms.push_back({point_from_json(field(a, "point"), space), rational_from_json(field(a, "weight"))});
  FiniteMeasure mu(space, std::move(atoms), mass);
  if (j.contains("displacement")) mu.set_displacement(dyadic_from_json(j.at("displacement")));
  return mu;
}

std::string measure_csv(const FiniteMeasure& mu) {
  std::ostringstream os;
  os.precision(17);
  if (mu.space() == Space::RiemannSphere) {
    os << "point,re,im,weight\n";
    for (const auto& a : mu.atoms()) {
      const auto& p = std::get<SpherePoint>(a.point);
      if (p.is_infinity()) os << "inf,inf,inf," << a.weight.get_d() << "\n";
      else os << p.to_string() << "," << p.re().get_d() << "," << p.im().get_d() << "," << a.weight.get_d() << "\n";
    }
  } else {
    os << "point,face,x,y,weight\n";
    const double h = std::sqrt(3.0) / 2;
    for (const auto& a : mu.atoms()) {
      const auto& p = std::get<TilePoint>(a.point);
      // A at the top, B bottom left, C bottom right
      double x = p[0].get_d() * 0.5 + p[2].get_d();
      double y = p[0].get_d() * h;
      os << p.to_string() << "," << face_name(p.face()) << "," << x << "," << y << "," << a.weight.get_d() << "\n";
    }
  }
  return os.str();
}

json to_json(const RationalMap& f) {
  json j;
  json num = json::array(), den = json::array();
  for (int k = 0; k <= f.num().degree(); ++k) num.push_back(f.num().coeff(k).to_string());
  for (int k = 0; k <= f.den().degree(); ++k) den.push_back(f.den().coeff(k).to_string());
  j["num"] = num;
  j["den"] = den;
  j["expr"] = f.to_string();
  return j;
}

RationalMap map_from_json(const json& j) {
  if (j.is_string()) return RationalMap::parse(j.get<std::string>());
  auto poly = [](const json& a) {
    if (!a.is_array()) bad("polynomial coefficients must be an array");
    std::vector<GaussianRational> c;
    for (const auto& x : a) c.push_back(x.is_number_integer() ? GaussianRational(Rational(x.get<long>()))
                                                              : GaussianRational::parse(str(x)));
    return Polynomial(c);
  };
  return RationalMap(poly(field(j, "num")), poly(field(j, "den")));
}

json to_json(const Potential& p) {
  json j;
  switch (p.op()) {
    case Potential::Op::Const:
      j["op"] = "const";
      j["value"] = to_json(p.value());
      break;
    case Potential::Op::Basis:
      j["op"] = "basis";
      j["point"] = to_json(p.point());
      break;
    case Potential::Op::Hat:
      j["op"] = "hat";
      j["center"] = to_json(p.point());
      j["r"] = to_json(p.hat_r());
      j["eps"] = to_json(p.hat_eps());
      break;
    case Potential::Op::Sum:
    case Potential::Op::Prod: {
      j["op"] = p.op() == Potential::Op::Sum ? "sum" : "prod";
      json kids = json::array();
      for (const auto& c : p.children()) kids.push_back(to_json(c));
      j["terms"] = kids;
      break;
    }
    case Potential::Op::Scale:
      j["op"] = "scale";
      j["factor"] = to_json(p.value());
      j["arg"] = to_json(p.children()[0]);
      break;
  }
  return j;
}

Potential potential_from_json(const json& j) {
  if (j.is_string()) return parse_potential(j.get<std::string>());
  std::string op = str(field(j, "op"));
  auto point = [](const json& x) { return std::get<SpherePoint>(point_from_json(x, Space::RiemannSphere)); };
  if (op == "const") return Potential::constant(rational_from_json(field(j, "value")));
  if (op == "basis") return Potential::basis(point(field(j, "point")));
  if (op == "hat")
    return Potential::hat(point(field(j, "center")), rational_from_json(field(j, "r")), rational_from_json(field(j, "eps")));
  if (op == "sum" || op == "prod") {
    std::vector<Potential> kids;
    for (const auto& c : field(j, "terms")) kids.push_back(potential_from_json(c));
    return op == "sum" ? Potential::sum(std::move(kids)) : Potential::prod(std::move(kids));
  }
  if (op == "scale") return Potential::scale(rational_from_json(field(j, "factor")), potential_from_json(field(j, "arg")));
  bad("unknown potential op '" + op + "'");
}

Potential parse_potential(std::string_view s) {
  std::string t(s);
  if (!t.empty() && (t.front() == '{')) {
    json j;
    try {
      j = json::parse(t);
    } catch (const json::exception& e) {
      bad(std::string("potential JSON: ") + e.what());
    }
    return potential_from_json(j);
  }
  auto colon = t.find(':');
  if (colon == std::string::npos) bad("potential must look like const:q, basis:p or hat:c,r,eps");
  std::string kind = t.substr(0, colon), arg = t.substr(colon + 1);
  if (kind == "const") return Potential::constant(parse_rational(arg));
  if (kind == "basis") return Potential::basis(parse_sphere_point(arg));
  if (kind == "hat") {
    auto parts = split(arg, ',');
    if (parts.size() != 3) bad("hat needs center,r,eps");
    return Potential::hat(parse_sphere_point(parts[0]), parse_rational(parts[1]), parse_rational(parts[2]));
  }
  bad("unknown potential kind '" + kind + "'");
}

json to_json(const PressureResult& r) {
  json j;
  j["value"] = r.value.mid.to_double();
  j["value_mid"] = to_json(r.value.mid);
  j["radius"] = to_json(r.value.rad);
  j["lower"] = r.value.lower().to_double();
  j["upper"] = r.value.upper().to_double();
  j["N_used"] = r.n_used;
  j["anchor"] = to_json(r.anchor);
  j["anchor_index"] = r.anchor_index.get_str();
  j["c0_used"] = to_json(r.c0_used);
  j["R_used"] = to_json(r.r_used);
  j["certified"] = r.certified;
  j["mode"] = r.mode;
  return j;
}

json to_json(const TileComplex& c) {
  json j;
  j["rule"] = std::string(to_string(c.rule));
  j["level"] = c.level;
  json tiles = json::array(), parent = json::array();
  for (std::size_t id = 0; id < c.tiles.size(); ++id) {
    const Tile& t = c.tiles[id];
    json e;
    e["id"] = id;
    e["face"] = face_name(t.face);
    json verts = json::array();
    for (const auto& v : t.coords) verts.push_back(json::array({to_json(v[0]), to_json(v[1]), to_json(v[2])}));
    e["verts"] = verts;
    e["orientation"] = t.orientation;
    e["target"] = face_name(t.target);
    tiles.push_back(e);
    parent.push_back(t.parent);
  }
  j["tiles"] = tiles;
  j["parent"] = parent;
  return j;
}

json to_json(const Patch& p) {
  json j;
  if (p.kind == Patch::Kind::Ball) {
    j["kind"] = "ball";
    j["center"] = to_json(p.center);
    j["radius"] = to_json(p.radius);
  } else {
    j["kind"] = "tile";
    j["face"] = face_name(p.tile.face);
    json verts = json::array();
    for (const auto& v : p.tile.coords) verts.push_back(json::array({to_json(v[0]), to_json(v[1]), to_json(v[2])}));
    j["verts"] = verts;
  }
  return j;
}

json to_json(const TestFunction& t) {
  json j;
  j["center"] = to_json(t.center);
  j["r"] = to_json(t.r);
  j["eps"] = to_json(t.eps);
  return j;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    bad(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
  out << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace equistate::io
