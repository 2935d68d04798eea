#include "sgdf/harmonic_spline.hpp"

#include <stdexcept>

#include "sgdf/graph.hpp"
#include "sgdf/point.hpp"

namespace sgdf {

HarmonicSpline::HarmonicSpline(int level, VertexFunction<Rational> values)
    : level_(level), data_(std::move(values)) {
  if (level < 0) throw std::invalid_argument("HarmonicSpline: negative level");
  if (data_.level != level)
    throw std::invalid_argument("HarmonicSpline: vertex data level mismatch");
  if (data_.points.size() != (3 * word_count(level) + 3) / 2)
    throw std::invalid_argument("HarmonicSpline: vertex data must cover V_level");

  seed_total_ = 0;
  for_each_cell(level_,
                [&](const Word&, const std::array<DyadicPoint, 3>& vs, const DyadicPoint&) {
                  const Rational a = data_.at(vs[0]), b = data_.at(vs[1]), c = data_.at(vs[2]);
                  const Rational d01 = a - b, d12 = b - c, d02 = a - c;
                  seed_total_ += d01 * d01 + d12 * d12 + d02 * d02;
                });
  a_leaf_ = A_exact(level_);
  d_leaf_ = pow_frac(frac(5, 3), level_) * a_leaf_;
}

HarmonicSpline HarmonicSpline::from_good(const GoodFunction& U, int level) {
  return HarmonicSpline(level, good_vertex_function(U, level));
}

HarmonicSpline HarmonicSpline::random(int level, Rng& rng, long max_den) {
  auto values = make_vertex_function<Rational>(
      level, [&](const DyadicPoint&) { return rng.rational(max_den); });
  return HarmonicSpline(level, std::move(values));
}

Triple HarmonicSpline::cell_triple(const Word& w) const {
  if (w.level() < level_)
    throw std::invalid_argument("HarmonicSpline::cell_triple: word coarser than leaves");
  const Word leaf = w.prefix(level_);
  const auto vs = cell_vertices(leaf);
  Triple t = {data_.at(vs[0]), data_.at(vs[1]), data_.at(vs[2])};
  for (int i = level_; i < w.level(); ++i) t = child_triple(t, w.digit(i));
  return t;
}

Rational HarmonicSpline::evaluate(const Word& vertex_addr) const {
  if (vertex_addr.empty())
    throw std::invalid_argument("HarmonicSpline::evaluate: empty word");
  if (vertex_addr.level() <= level_) return data_.at(cell_anchor(vertex_addr));
  const Triple t = cell_triple(vertex_addr.parent());
  return t[static_cast<std::size_t>(vertex_addr.last())];
}

Rational HarmonicSpline::evaluate_at_point(const DyadicPoint& p) const {
  // Any alias of the vertex gives the same value: gluing is continuous.
  return evaluate(locate_vertex(p));
}

PointProvider HarmonicSpline::provider() const {
  return [self = *this](const DyadicPoint& p) { return to_double(self.evaluate_at_point(p)); };
}

Rational HarmonicSpline::integral() const {
  // Leaves carry measure 3^-level and the integral of a good function over
  // its cell is the corner mean.
  Rational total = 0;
  for_each_cell(level_,
                [&](const Word&, const std::array<DyadicPoint, 3>& vs, const DyadicPoint&) {
                  total += data_.at(vs[0]) + data_.at(vs[1]) + data_.at(vs[2]);
                });
  return total / (3 * Rational(static_cast<long>(word_count(level_))));
}

namespace {

void leaf_averages_below(const Triple& t, int remaining, std::vector<Rational>& out,
                         std::size_t& cursor) {
  if (remaining == 0) {
    out[cursor++] = (t[0] + t[1] + t[2]) / 3;
    return;
  }
  for (int d = 0; d < 3; ++d) leaf_averages_below(child_triple(t, d), remaining - 1, out, cursor);
}

void hat_below(const Triple& t, int remaining, const std::vector<Rational>& averages,
               std::size_t& cursor, Rational& acc) {
  if (remaining == 0) {
    const Rational& mean = averages[cursor++];
    for (int i = 0; i < 3; ++i) {
      const Rational d = t[static_cast<std::size_t>(i)] - mean;
      acc += d * d;
    }
    return;
  }
  for (int d = 0; d < 3; ++d) hat_below(child_triple(t, d), remaining - 1, averages, cursor, acc);
}

}  // namespace

RationalCellFunction HarmonicSpline::averages(int m) const {
  if (m < 0) throw std::invalid_argument("HarmonicSpline::averages: negative level");
  if (m < level_) return mean_value(averages(level_), m);
  RationalCellFunction out;
  out.level = m;
  out.values.resize(word_count(m));
  std::size_t cursor = 0;
  for_each_cell(level_,
                [&](const Word&, const std::array<DyadicPoint, 3>& vs, const DyadicPoint&) {
                  const Triple t = {data_.at(vs[0]), data_.at(vs[1]), data_.at(vs[2])};
                  leaf_averages_below(t, m - level_, out.values, cursor);
                });
  return out;
}

Rational HarmonicSpline::A_exact(int n) const {
  if (n < 0) throw std::invalid_argument("HarmonicSpline::A_exact: negative level");
  if (n == 0) return Rational(0);
  const CellGraph g = build_graph(n);
  return graph_energy(averages(n), g).raw;
}

Rational HarmonicSpline::D_exact(int n) const {
  if (n < 1) throw std::invalid_argument("HarmonicSpline::D_exact: level must be >= 1");
  if (n <= level_) return pow_frac(frac(5, 3), n) * A_exact(n);
  const int k = n - level_;
  const Rational shrink = pow_frac(frac(3, 5), k);
  return frac(2, 3) * pow_frac(frac(5, 3), level_) * seed_total_ * (1 - shrink) +
         shrink * d_leaf_;
}

Rational HarmonicSpline::D_limit() const {
  return frac(2, 3) * pow_frac(frac(5, 3), level_) * seed_total_;
}

Rational HarmonicSpline::sup_D() const {
  Rational best = 0;
  for (int n = 1; n <= level_; ++n) {
    const Rational d = D_exact(n);
    if (d > best) best = d;
  }
  // Beyond the leaf level D_n moves monotonically from D_{level+1} toward
  // the limit (2/3)(5/3)^level S_tot.
  const Rational limit = D_limit();
  const Rational first = D_exact(level_ + 1);
  if (first > best) best = first;
  if (limit > best) best = limit;
  return best;
}

HarmonicSpline HarmonicSpline::compose_child(int digit) const {
  if (digit < 0 || digit > 2)
    throw std::invalid_argument("HarmonicSpline::compose_child: bad digit");
  if (level_ == 0) {
    const Triple base = {data_.at(corner(0)), data_.at(corner(1)), data_.at(corner(2))};
    const Triple t = child_triple(base, digit);
    return from_good(GoodFunction{t[0], t[1], t[2]}, 0);
  }
  auto values = make_vertex_function<Rational>(
      level_ - 1, [&](const DyadicPoint& q) { return data_.at(contract(digit, q)); });
  return HarmonicSpline(level_ - 1, std::move(values));
}

Rational HarmonicSpline::hat_energy(int n) const {
  if (n < 0) throw std::invalid_argument("HarmonicSpline::hat_energy: negative level");
  const RationalCellFunction avg = averages(n);
  Rational acc = 0;
  if (n >= level_) {
    std::size_t cursor = 0;
    for_each_cell(level_,
                  [&](const Word&, const std::array<DyadicPoint, 3>& vs, const DyadicPoint&) {
                    const Triple t = {data_.at(vs[0]), data_.at(vs[1]), data_.at(vs[2])};
                    hat_below(t, n - level_, avg.values, cursor, acc);
                  });
  } else {
    for_each_cell(n, [&](const Word& w, const std::array<DyadicPoint, 3>& vs, const DyadicPoint&) {
      const Rational& mean = avg.values[static_cast<std::size_t>(w.index())];
      for (const auto& p : vs) {
        const Rational d = data_.at(p) - mean;
        acc += d * d;
      }
    });
  }
  return pow_frac(frac(5, 3), n) * acc;
}

}  // namespace sgdf
