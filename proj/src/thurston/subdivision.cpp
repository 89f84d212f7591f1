#include "equistate/thurston/subdivision.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "equistate/error.hpp"
#include "equistate/sphere/sphere_point.hpp"

namespace equistate {

namespace {

Bary bary(long a, long b, long c, long den) { return {Rational(a, den), Rational(b, den), Rational(c, den)}; }

Face other(Face f) { return f == Face::Front ? Face::Back : Face::Front; }

Rational det3(const std::array<Bary, 3>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// Level-one template on a single 0-tile: each entry lists the points sent to
// A, B and C. Barycentric denominators are kept small.
std::vector<std::array<Bary, 3>> rule_table(Rule rule) {
  Bary a = bary(1, 0, 0, 1), b = bary(0, 1, 0, 1), c = bary(0, 0, 1, 1);
  Bary d = bary(0, 1, 1, 2), e = bary(1, 0, 1, 2), f = bary(1, 1, 0, 2);
  if (rule == Rule::G1) {
    Bary o = bary(1, 1, 1, 3);
    return {{a, f, o}, {b, f, o}, {b, d, o}, {c, d, o}, {c, e, o}, {a, e, o}};
  }
  // the median from C splits the face in two; each half is fanned from an interior point
  Bary p = bary(1, 3, 2, 6), q = bary(3, 1, 2, 6);
  return {{b, f, p}, {b, d, p}, {c, d, p}, {c, f, p}, {c, e, q}, {a, e, q}, {a, f, q}, {c, f, q}};
}

int sign(const Rational& q) { return sgn(q); }

// Inverse of the matrix whose columns are the tile vertices.
std::array<Bary, 3> inverse_columns(const std::array<Bary, 3>& v) {
  Rational det = det3(v);
  // v[k][i] is entry (i, k)
  auto m = [&](int i, int k) -> const Rational& { return v[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)]; };
  std::array<Bary, 3> inv;
  for (int r = 0; r < 3; ++r) {
    for (int col = 0; col < 3; ++col) {
      int i0 = (col + 1) % 3, i1 = (col + 2) % 3, k0 = (r + 1) % 3, k1 = (r + 2) % 3;
      Rational cof = m(i0, k0) * m(i1, k1) - m(i0, k1) * m(i1, k0);
      Rational x = cof / det;
      x.canonicalize();
      inv[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] = x;
    }
  }
  return inv;
}

Bary solve(const std::array<Bary, 3>& inv, const Bary& p) {
  Bary l;
  for (std::size_t r = 0; r < 3; ++r) l[r] = inv[r][0] * p[0] + inv[r][1] * p[1] + inv[r][2] * p[2];
  return l;
}

bool nonnegative(const Bary& l) { return l[0] >= 0 && l[1] >= 0 && l[2] >= 0; }

// Orientation-preserving charts send tiles with the sense of A, B, C to
// their own face and the others across.
Tile make_tile(Face face, std::array<Bary, 3> coords) {
  Tile t;
  t.face = face;
  t.coords = std::move(coords);
  t.orientation = sign(det3(t.coords)) > 0 ? 1 : -1;
  t.target = t.orientation > 0 ? face : other(face);
  return t;
}

TileComplex children(const TileComplex& c) {
  static const std::vector<std::array<Bary, 3>> tables[2] = {rule_table(Rule::G1), rule_table(Rule::G2)};
  const auto& table = tables[c.rule == Rule::G1 ? 0 : 1];
  TileComplex out;
  out.rule = c.rule;
  out.level = c.level + 1;
  out.tiles.reserve(c.tiles.size() * table.size());
  for (std::size_t id = 0; id < c.tiles.size(); ++id) {
    const Tile& parent = c.tiles[id];
    for (const auto& tmpl : table) {
      // g^n carries the child onto this template copy inside its 0-tile
      std::array<Bary, 3> coords;
      for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t i = 0; i < 3; ++i)
          coords[j][i] = tmpl[j][0] * parent.coords[0][i] + tmpl[j][1] * parent.coords[1][i] +
                         tmpl[j][2] * parent.coords[2][i];
      Tile child = make_tile(parent.face, coords);
      child.container = static_cast<std::int64_t>(id);
      out.tiles.push_back(std::move(child));
    }
  }
  return out;
}

}  // namespace

std::string_view to_string(Rule r) { return r == Rule::G1 ? "g1" : "g2"; }

Rule parse_rule(std::string_view s) {
  if (s == "g1") return Rule::G1;
  if (s == "g2") return Rule::G2;
  throw Error(ErrorKind::Parse, "unknown subdivision rule '" + std::string(s) + "'");
}

int rule_degree(Rule r) { return r == Rule::G1 ? 6 : 8; }

TilePoint Tile::barycenter() const {
  Bary s;
  for (std::size_t i = 0; i < 3; ++i) s[i] = (coords[0][i] + coords[1][i] + coords[2][i]) / 3;
  return TilePoint(face, s);
}

TileComplex base_complex(Rule rule) {
  TileComplex c;
  c.rule = rule;
  std::array<Bary, 3> id{bary(1, 0, 0, 1), bary(0, 1, 0, 1), bary(0, 0, 1, 1)};
  for (Face f : {Face::Front, Face::Back}) {
    c.tiles.push_back(make_tile(f, id));
  }
  return c;
}

TileComplex subdivide(const TileComplex& c, Rule rule) {
  if (c.rule != rule) throw Error(ErrorKind::RuleMismatch, "complex was generated by another rule");
  TileComplex out = children(c);
  if (c.level == 0) {
    for (auto& t : out.tiles) t.parent = t.target == Face::Front ? 0 : 1;
    return out;
  }
  // g maps each child onto the level-n tile with the image barycenter
  std::map<TilePoint, std::size_t> index;
  for (std::size_t i = 0; i < c.tiles.size(); ++i) index.emplace(c.tiles[i].barycenter(), i);
  SubdivisionMap g(rule);
  for (auto& t : out.tiles) {
    auto it = index.find(g(t.barycenter()));
    if (it == index.end()) throw Error(ErrorKind::InvalidArgument, "tile image is not a tile");
    t.parent = static_cast<std::int64_t>(it->second);
  }
  return out;
}

TileComplex tile_complex(Rule rule, int n) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "negative level");
  TileComplex c = base_complex(rule);
  for (int k = 0; k < n; ++k) c = subdivide(c, rule);
  return c;
}

std::vector<std::vector<std::size_t>> adjacency(const TileComplex& c) {
  std::map<std::pair<TilePoint, TilePoint>, std::vector<std::size_t>> edges;
  for (std::size_t id = 0; id < c.tiles.size(); ++id) {
    const Tile& t = c.tiles[id];
    for (int k = 0; k < 3; ++k) {
      TilePoint u = t.vertex(k), v = t.vertex((k + 1) % 3);
      if (v < u) std::swap(u, v);
      edges[{u, v}].push_back(id);
    }
  }
  std::vector<std::vector<std::size_t>> adj(c.tiles.size());
  for (const auto& [e, ids] : edges)
    for (std::size_t a : ids)
      for (std::size_t b : ids)
        if (a != b) adj[a].push_back(b);
  for (auto& v : adj) std::sort(v.begin(), v.end());
  return adj;
}

SubdivisionMap::SubdivisionMap(Rule rule) : rule_(rule), one_(subdivide(base_complex(rule), rule)) {

  for (const auto& t : one_.tiles) inverse_.push_back(inverse_columns(t.coords));
}

std::vector<std::size_t> SubdivisionMap::tiles_containing(const TilePoint& p) const {
  std::vector<std::size_t> ids;
  for (std::size_t i = 0; i < one_.tiles.size(); ++i) {
    // boundary points belong to both faces
    if (!p.on_boundary() && one_.tiles[i].face != p.face()) continue;
    if (nonnegative(solve(inverse_[i], p.coords()))) ids.push_back(i);
  }
  return ids;
}

TilePoint SubdivisionMap::operator()(const TilePoint& p) const {
  for (std::size_t i = 0; i < one_.tiles.size(); ++i) {
    if (!p.on_boundary() && one_.tiles[i].face != p.face()) continue;
    Bary l = solve(inverse_[i], p.coords());
    if (nonnegative(l)) return TilePoint(one_.tiles[i].target, l);
  }
  throw Error(ErrorKind::InvalidArgument, "point lies in no 1-tile");
}

int SubdivisionMap::local_degree(const TilePoint& p) const {
  auto n = static_cast<int>(tiles_containing(p).size());
  return (*this)(p).on_boundary() ? n / 2 : n;
}

std::vector<SubdivisionMap::Preimage> SubdivisionMap::preimages(const TilePoint& x) const {
  std::set<TilePoint> seen;
  std::vector<Preimage> out;
  for (const auto& t : one_.tiles) {
    if (!x.on_boundary() && t.target != x.face()) continue;
    Bary y;
    for (std::size_t i = 0; i < 3; ++i) y[i] = x[0] * t.coords[0][i] + x[1] * t.coords[1][i] + x[2] * t.coords[2][i];
    TilePoint p(t.face, y);
    if (seen.insert(p).second) out.push_back({p, local_degree(p)});
  }
  return out;
}

TilePoint eval_map(const SubdivisionMap& m, const TilePoint& p, int) { return m(p); }

FiniteMeasure tile_measure(const TileComplex& c) {
  Rational w(1, static_cast<long>(c.tiles.size()));
  std::vector<Atom> atoms;
  atoms.reserve(c.tiles.size());
  for (const auto& t : c.tiles) atoms.push_back({t.barycenter(), w});
  return FiniteMeasure(Space::TriSphere, std::move(atoms));
}

FiniteMeasure mme_tile_measure(Rule rule, int n) { return tile_measure(tile_complex(rule, n)); }

std::vector<std::size_t> flower(const TileComplex& c, const TilePoint& v) {
  std::vector<std::size_t> ids;
  for (std::size_t id = 0; id < c.tiles.size(); ++id)
    for (int k = 0; k < 3; ++k)
      if (c.tiles[id].vertex(k) == v) {
        ids.push_back(id);
        break;
      }
  if (ids.empty()) throw Error(ErrorKind::NotAVertex, v.to_string() + " is not a vertex of the level-" +
                                                          std::to_string(c.level) + " complex");
  return ids;
}

BallReal max_tile_diameter(const TileComplex& c, std::int64_t prec) {
  Rational best = 0;
  for (const auto& t : c.tiles)
    for (std::size_t k = 0; k < 3; ++k) best = std::max(best, planar_distance_squared(t.coords[k], t.coords[(k + 1) % 3]));
  return sqrt_rational(best, prec);
}

}  // namespace equistate
