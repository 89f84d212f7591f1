#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "equistate/measure/measure.hpp"
#include "equistate/thurston/tri_point.hpp"

namespace equistate {

enum class Rule { G1, G2 };

std::string_view to_string(Rule r);
/// "g1" or "g2"; throws Parse otherwise.
Rule parse_rule(std::string_view s);
/// 6 for g1, 8 for g2.
int rule_degree(Rule r);

using Bary = std::array<Rational, 3>;

/// An n-tile. Vertices are listed in label order: g^n sends vertex k to the
/// 0-tile vertex k (A, B, C) of the `target` face.
struct Tile {
  Face face = Face::Front;
  std::array<Bary, 3> coords;  // barycentrics on `face`
  /// +1 when the vertices run in the same rotational sense as A, B, C on `face`.
  int orientation = 1;
  Face target = Face::Front;
  /// Level n-1 tile containing this one (-1 at level 0).
  std::int64_t container = -1;
  /// Level n-1 tile that g maps this one onto (-1 at level 0).
  std::int64_t parent = -1;

  TilePoint vertex(int k) const { return TilePoint(face, coords[static_cast<std::size_t>(k)]); }
  TilePoint barycenter() const;
};

struct TileComplex {
  Rule rule = Rule::G1;
  int level = 0;
  std::vector<Tile> tiles;
};

/// The two 0-tiles.
TileComplex base_complex(Rule rule);
/// Next level. Throws RuleMismatch when c was built with another rule.
TileComplex subdivide(const TileComplex& c, Rule rule);
TileComplex tile_complex(Rule rule, int n);

/// Tiles sharing an edge, per tile id, in increasing id order.
std::vector<std::vector<std::size_t>> adjacency(const TileComplex& c);

/// The piecewise affine map, one chart per 1-tile.
class SubdivisionMap {
 public:
  explicit SubdivisionMap(Rule rule);

  Rule rule() const { return rule_; }
  int degree() const { return rule_degree(rule_); }
  const TileComplex& level_one() const { return one_; }

  TilePoint operator()(const TilePoint& p) const;

  struct Preimage {
    TilePoint point;
    int local_degree;
  };
  /// Distinct preimages with local degrees summing to the degree.
  std::vector<Preimage> preimages(const TilePoint& x) const;
  /// Ids of 1-tiles whose closure contains p.
  std::vector<std::size_t> tiles_containing(const TilePoint& p) const;
  /// Local degree of the map at p, from incident tile counts.
  int local_degree(const TilePoint& p) const;

 private:
  Rule rule_;
  TileComplex one_;
  std::vector<std::array<Bary, 3>> inverse_;  // per 1-tile, rows of the inverse vertex matrix
};

/// Image under the map. The tile chosen for boundary points is the first
/// containing 1-tile; all choices agree. level_hint is accepted for interface
/// symmetry and ignored.
TilePoint eval_map(const SubdivisionMap& m, const TilePoint& p, int level_hint = 1);

/// Atoms at n-tile barycenters, each of weight 1/(2 deg^n).
FiniteMeasure mme_tile_measure(Rule rule, int n);
FiniteMeasure tile_measure(const TileComplex& c);

/// Ids of the tiles having v as a vertex. Throws NotAVertex.
std::vector<std::size_t> flower(const TileComplex& c, const TilePoint& v);

/// Largest side length over all tiles, with rad <= 2^-prec.
BallReal max_tile_diameter(const TileComplex& c, std::int64_t prec);

}  // namespace equistate
