#pragma once

#include <array>
#include <iosfwd>

#include "sgdf/cell_function.hpp"
#include "sgdf/energy.hpp"
#include "sgdf/rational.hpp"
#include "sgdf/word.hpp"

namespace sgdf {

using Triple = std::array<Rational, 3>;

// Harmonic function on the gasket determined by its corner values through
// the 1/5-2/5 extension rule. All identities about these functions are
// exact, so everything here stays in rational arithmetic.
struct GoodFunction {
  Rational x0, x1, x2;

  Triple triple() const { return {x0, x1, x2}; }
  // S = (x0-x1)^2 + (x1-x2)^2 + (x0-x2)^2.
  Rational energy_seed() const;
};

// Midpoint values (m01, m12, m02) from corner values (a, b, c):
//   m01 = (2a+2b+c)/5, m12 = (a+2b+2c)/5, m02 = (2a+b+2c)/5.
Triple extend_once(const Rational& a, const Rational& b, const Rational& c);
Triple extend_once(const Triple& t);

// Corner triple of child cell `digit` given the parent corner triple.
Triple child_triple(const Triple& t, int digit);

// Corner values of U on V_w; O(|w|).
Triple cell_triple(const GoodFunction& U, const Word& w);

// U(P_w), |w| >= 1. Consistent across aliases P_{wij} = P_{wji}, P_{wii} = P_{wi}.
Rational evaluate(const GoodFunction& U, const Word& w);

// U at an exact vertex point of the gasket (descends through the containing
// cells; throws if the point is not a vertex of any level).
Rational evaluate_at_point(const GoodFunction& U, const DyadicPoint& p);

// Exact P_{|w|} U(w) via the (3,1,1)/5 rule on the parent triple.
Rational exact_cell_average(const GoodFunction& U, const Word& w);
RationalCellFunction exact_cell_averages(const GoodFunction& U, int level);

struct ClosedFormEnergies {
  Rational A;  // (2/3) [ (3/5)^n - (3/5)^{2n} ] S, n >= 1
  Rational B;  // (3/5)^n S, n >= 0
  Rational D;  // (5/3)^n A = (2/3) (1 - (3/5)^n) S
};
ClosedFormEnergies closed_form_energies(const GoodFunction& U, int n);

// sup_n D_n(U) = (2/3) S (monotone limit of the closed form).
Rational sup_D(const GoodFunction& U);

VertexFunction<Rational> good_vertex_function(const GoodFunction& U, int level);

// Values on the complementary vertices of the sibling cells so that the
// extension relation reproduces the prescribed child corner values:
// given values on V_w for w sitting as child `child` of its parent, returns
// the parent corner triple (agreeing with the child at corner `child`) and
// the value at the far midpoint. extend_once on `parent` reproduces the
// child's midpoint values exactly.
struct LiftedBoundary {
  Triple parent;
  Rational far_midpoint;
};
LiftedBoundary lift_boundary(int child, const Triple& child_values);

// A good function with U(P_x) != U(P_y), exact; throws when the two
// addresses denote the same point.
GoodFunction separation_witness(const Word& x_addr, const Word& y_addr);

// {"x0": {"num": "...", "den": "..."}, ...} with exact values.
void write_good_function_json(std::ostream& out, const GoodFunction& U);
GoodFunction read_good_function_json(std::istream& in);
GoodFunction parse_good_function(const std::string& comma_separated);  // "1,0,0" or "1/2,0,3/4"

}  // namespace sgdf
