#pragma once

#include <vector>

#include "sgdf/cell_function.hpp"
#include "sgdf/energy.hpp"
#include "sgdf/good_function.hpp"
#include "sgdf/rng.hpp"

namespace sgdf {

// Continuous function that is harmonic (good) on every level-L cell, glued
// through shared vertex values on V_L. L = 0 is a plain good function. For
// these functions cell averages, corner values, all the discrete energies
// and sup_n D_n are exact:
//   n <= L:  direct graph energy of the exact averages,
//   n = L+k: D_n = (2/3)(5/3)^L S_tot (1-(3/5)^k) + (3/5)^k D_L,
// where S_tot sums the corner-difference seed over the leaf cells. The
// second line follows from the per-leaf closed form plus the fact that each
// leaf interface contributes one edge per level whose average difference
// contracts by 3/5 per level.
class HarmonicSpline {
 public:
  HarmonicSpline(int level, VertexFunction<Rational> values);
  static HarmonicSpline from_good(const GoodFunction& U, int level = 0);
  // Seeded random vertex data with rational entries.
  static HarmonicSpline random(int level, Rng& rng, long max_den = 8);

  int level() const { return level_; }
  const VertexFunction<Rational>& data() const { return data_; }

  // Corner values of u on V_w for |w| >= level.
  Triple cell_triple(const Word& w) const;
  // u(P_w), |w| >= 1.
  Rational evaluate(const Word& vertex_addr) const;
  Rational evaluate_at_point(const DyadicPoint& p) const;
  PointProvider provider() const;  // binary64 view for quadratures

  Rational integral() const;  // over the whole gasket, mass 1
  RationalCellFunction averages(int m) const;

  Rational A_exact(int n) const;  // graph-energy route; A_0 = 0
  Rational D_exact(int n) const;  // closed form for n > level
  Rational D_limit() const;       // lim_n D_n = (2/3)(5/3)^level S_tot
  Rational sup_D() const;
  const Rational& seed_total() const { return seed_total_; }

  HarmonicSpline compose_child(int digit) const;  // u o f_i

  // Hat energy of the main construction:
  //   hat(u) = sum_i (u(p_i) - integral u)^2 over the three corners,
  //   hat_energy(n) = (5/3)^n sum_{|w|=n} hat(u o f_w), exact.
  Rational hat_energy(int n) const;

 private:
  int level_ = 0;
  VertexFunction<Rational> data_;
  Rational seed_total_;  // S_tot
  Rational a_leaf_;      // A_{level}
  Rational d_leaf_;      // D_{level}
};

}  // namespace sgdf
