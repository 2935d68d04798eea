#include <doctest.h>

#include <cmath>

#include "sgdf/energy.hpp"
#include "sgdf/good_function.hpp"
#include "sgdf/rng.hpp"

using namespace sgdf;

namespace {

CellFunction random_cells(int level, Rng& rng) {
  CellFunction u;
  u.level = level;
  u.values.resize(word_count(level));
  for (auto& v : u.values) v = rng.uniform(-1.0, 1.0);
  return u;
}

}  // namespace

TEST_CASE("graph_energy: basics and exactness") {
  const CellGraph g1 = build_graph(1);

  CHECK(graph_energy(CellFunction::constant(1, 3.7), g1).raw == 0.0);

  CellFunction u{1, {1.0, 0.0, 0.0}};
  const auto e = graph_energy(u, g1);
  CHECK(e.raw == doctest::Approx(2.0));
  CHECK(e.scaled == doctest::Approx(10.0 / 3.0));

  RationalCellFunction q{1, {Rational(1), Rational(0), Rational(0)}};
  const auto er = graph_energy(q, g1);
  CHECK(er.raw == Rational(2));
  CHECK(er.scaled == frac(10, 3));

  CellFunction wrong{2, std::vector<double>(9, 0.0)};
  CHECK_THROWS_AS(graph_energy(wrong, g1), std::invalid_argument);
}

TEST_CASE("mean_value: block means and the projection chain") {
  CellFunction u{2, {1, 0, 0, 0, 0, 0, 0, 0, 0}};
  const CellFunction m = mean_value(u, 1);
  CHECK(m.values[0] == doctest::Approx(1.0 / 3.0));
  CHECK(m.values[1] == 0.0);
  CHECK(m.values[2] == 0.0);

  for (double v : mean_value(CellFunction::constant(3, 2.5), 1).values)
    CHECK(v == doctest::Approx(2.5));
  CHECK_THROWS_AS(mean_value(u, 2), std::invalid_argument);

  // M_{n,m1} o M_{n+m1,m2} = M_{n,m1+m2}, exactly in rational arithmetic.
  Rng rng(3);
  RationalCellFunction deep;
  deep.level = 4;
  deep.values.resize(word_count(4));
  for (auto& v : deep.values) v = rng.rational(9);
  const auto two_step = mean_value(mean_value(deep, 2), 1);
  const auto one_step = mean_value(deep, 1);
  CHECK(two_step.values == one_step.values);
}

TEST_CASE("restrict_to: prefix blocks and the energy decomposition") {
  Rng rng(5);
  const CellFunction u = random_cells(2, rng);
  CHECK(restrict_to(u, Word::parse("")).values == u.values);

  const CellFunction first = restrict_to(u, Word::parse("0"));
  CHECK(first.level == 1);
  CHECK(first.values == std::vector<double>(u.values.begin(), u.values.begin() + 3));
  CHECK_THROWS_AS(restrict_to(first, Word::parse("012")), std::invalid_argument);

  // sum_w A_k(u o f_w) <= A_{n+k}(u): block energies never exceed the total.
  const CellGraph g3 = build_graph(3);
  const CellGraph g1 = build_graph(1);
  for (int trial = 0; trial < 20; ++trial) {
    const CellFunction deep = random_cells(3, rng);
    double blocks = 0.0;
    for (const Word& w : all_words(2)) blocks += graph_energy(restrict_to(deep, w), g1).raw;
    CHECK(blocks <= graph_energy(deep, g3).raw + 1e-12);
  }
}

TEST_CASE("cell_averages: constants, harmonic exactness, consistency") {
  const auto constant = [](const DyadicPoint&) { return 4.25; };
  const CellFunction c = cell_averages(constant, 2, 6);
  for (double v : c.values) CHECK(v == doctest::Approx(4.25));

  // Harmonic data: vertex means equal true averages at any depth, so the
  // quadrature agrees with the exact averages to rounding.
  const GoodFunction U{Rational(1), Rational(0), Rational(0)};
  const auto provider = [&U](const DyadicPoint& p) { return to_double(evaluate_at_point(U, p)); };
  const CellFunction approx = cell_averages(provider, 1, 11);
  CHECK(approx.values[0] == doctest::Approx(0.6).epsilon(1e-6));
  CHECK(approx.values[1] == doctest::Approx(0.2).epsilon(1e-6));
  CHECK(approx.values[2] == doctest::Approx(0.2).epsilon(1e-6));

  // Averages at n equal means of averages at n+m for the same quadrature.
  const CellFunction fine = cell_averages(provider, 3, 6);
  const CellFunction coarse = cell_averages(provider, 1, 6);
  const CellFunction reduced = mean_value(fine, 1);
  for (std::size_t i = 0; i < coarse.values.size(); ++i)
    CHECK(coarse.values[i] == doctest::Approx(reduced.values[i]).epsilon(1e-14));

  CHECK_THROWS_AS(cell_averages(constant, 3, 2), std::invalid_argument);
}

TEST_CASE("an_dn against hand-computed values") {
  const GoodFunction U{Rational(1), Rational(0), Rational(0)};
  const CellGraph g1 = build_graph(1);
  const auto averages = exact_cell_averages(U, 1);
  const auto ad = an_dn(averages, g1);
  CHECK(ad.A == frac(8, 25));
  CHECK(ad.D == frac(8, 15));

  // Provider route through the quadrature.
  const auto provider = [&U](const DyadicPoint& p) { return to_double(evaluate_at_point(U, p)); };
  const auto ad_q = an_dn(PointProvider(provider), g1, 5);
  CHECK(ad_q.A == doctest::Approx(0.32).epsilon(1e-9));
  CHECK(ad_q.D == doctest::Approx(8.0 / 15.0).epsilon(1e-9));

  // D_n = (4/3)(1 - (3/5)^n) for this boundary triple.
  for (int n = 1; n <= 5; ++n) {
    const auto adn = an_dn(exact_cell_averages(U, n), build_graph(n));
    CHECK(adn.D == frac(4, 3) * (1 - pow_frac(frac(3, 5), n)));
  }
}

TEST_CASE("vertex_pair_energy: constants, corner seed, good function") {
  const auto constant = make_vertex_function<Rational>(
      2, [](const DyadicPoint&) { return frac(7, 3); });
  CHECK(vertex_pair_energy(constant, 2) == Rational(0));

  // n = 0: the single cell contributes the three corner differences.
  const GoodFunction U{Rational(1), Rational(0), Rational(0)};
  CHECK(vertex_pair_energy(good_vertex_function(U, 0), 0) == Rational(2));
  CHECK(vertex_pair_energy(good_vertex_function(U, 1), 1) == frac(6, 5));

  // Missing vertex data is an error.
  VertexFunction<Rational> incomplete = good_vertex_function(U, 0);
  CHECK_THROWS_AS(vertex_pair_energy(incomplete, 1), std::invalid_argument);
}

TEST_CASE("weak monotonicity ratios stay under 36") {
  Rng rng(90001);
  double worst = 0.0;
  for (int n = 1; n <= 3; ++n) {
    for (int m = 1; m <= 3; ++m) {
      const CellGraph gc = build_graph(n);
      const CellGraph gf = build_graph(n + m);
      for (int trial = 0; trial < 12; ++trial) {
        CellFunction u;
        u.level = n + m;
        u.values.resize(word_count(n + m));
        for (auto& v : u.values) v = rng.uniform();
        const double ratio = weak_mono_ratio(u, n, gc, gf);
        worst = std::max(worst, ratio);
        CHECK(ratio <= 36.0);
      }
    }
  }
  CHECK(worst > 0.0);

  const CellGraph g1 = build_graph(1);
  const CellGraph g2 = build_graph(2);
  CHECK_THROWS_AS(weak_mono_ratio(CellFunction::constant(2, 1.0), 1, g1, g2),
                  std::domain_error);
}

TEST_CASE("energy invariants: shift, scaling, nonnegativity") {
  Rng rng(42);
  const CellGraph g = build_graph(3);
  for (int trial = 0; trial < 15; ++trial) {
    CellFunction u = random_cells(3, rng);
    const double base = graph_energy(u, g).raw;
    CHECK(base >= 0.0);

    CellFunction shifted = u;
    for (auto& v : shifted.values) v += 0.77;
    CHECK(graph_energy(shifted, g).raw == doctest::Approx(base).epsilon(1e-12));

    CellFunction scaled = u;
    for (auto& v : scaled.values) v *= -3.0;
    CHECK(graph_energy(scaled, g).raw == doctest::Approx(9.0 * base).epsilon(1e-12));
  }
}

TEST_CASE("weak-mono corollary on computed profiles") {
  // sup_{n<=N} D_n <= 36 min_{n in [N/2, N]} D_n for nonconstant averages.
  const GoodFunction U{frac(5, 7), frac(-2, 3), Rational(1)};
  const int N = 8;
  std::vector<double> D;
  for (int n = 1; n <= N; ++n)
    D.push_back(to_double(closed_form_energies(U, n).D));
  double sup = 0.0;
  for (double d : D) sup = std::max(sup, d);
  double tail_min = D.back();
  for (int n = N / 2; n <= N; ++n) tail_min = std::min(tail_min, D[static_cast<std::size_t>(n - 1)]);
  CHECK(sup <= 36.0 * tail_min * (1.0 + 1e-12));
}
