#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "sgdf/rational.hpp"
#include "sgdf/word.hpp"

namespace sgdf {

// Plane point (a, b*sqrt(3)) with exact rational a, b. Every vertex of a
// level-n cell has denominators dividing 2^(n+1) in this basis (p_2 already
// carries a factor 1/2), so scaling by 2^(n+1) yields exact integer keys for
// equality, shared-vertex detection and bucketing.
struct DyadicPoint {
  Rational a;  // x coordinate
  Rational b;  // y coordinate divided by sqrt(3)

  friend bool operator==(const DyadicPoint& l, const DyadicPoint& r) {
    return l.a == r.a && l.b == r.b;
  }

  // (da)^2 + 3*(db)^2, exact.
  Rational squared_distance_to(const DyadicPoint& o) const;
  // Euclidean distance in binary64.
  double distance_to(const DyadicPoint& o) const;

  double x() const { return a.get_d(); }
  double y() const;

  // (a*2^level, b*2^level); throws if either is not an integer at this level.
  std::pair<std::int64_t, std::int64_t> scaled(int level) const;
};

// Order by (a, b); used for canonical vertex listings.
bool lex_less(const DyadicPoint& l, const DyadicPoint& r);

// p_0 = (0,0), p_1 = (1,0), p_2 = (1/2, sqrt(3)/2).
const DyadicPoint& corner(int i);

// f_i(p) = (p + p_i) / 2.
DyadicPoint contract(int digit, const DyadicPoint& p);

DyadicPoint midpoint(const DyadicPoint& p, const DyadicPoint& q);

// f_w(p) = f_{w_1} o ... o f_{w_n} (p).
DyadicPoint apply_map(const Word& w, const DyadicPoint& p);

// P_w = f_{w_1...w_{n-1}}(p_{w_n}); rejects the empty word.
DyadicPoint cell_anchor(const Word& w);

// (f_w(p_0), f_w(p_1), f_w(p_2)).
std::array<DyadicPoint, 3> cell_vertices(const Word& w);

// V_n, deduplicated and sorted by lex_less. |V_n| = (3^{n+1}+3)/2.
std::vector<DyadicPoint> vertex_set(int n);

// Exact containment of p in the closed triangle spanned by v. The (a, b)
// basis is an affine image of the plane, so barycentric signs carry over.
bool triangle_contains(const std::array<DyadicPoint, 3>& v, const DyadicPoint& p);

// A vertex address of p: some word w with P_w = p (aliases are equally
// valid). Integer barycentric descent; throws when p is not a vertex of any
// level or lies off the gasket.
Word locate_vertex(const DyadicPoint& p);

// Visits every level-n cell in canonical word order together with its vertex
// triple and its anchor (anchor meaningful for level >= 1).
using CellVisitor =
    std::function<void(const Word&, const std::array<DyadicPoint, 3>&, const DyadicPoint&)>;
void for_each_cell(int level, const CellVisitor& visit);

}  // namespace sgdf
