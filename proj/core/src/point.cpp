#include "sgdf/point.hpp"

#include <cmath>
#include <map>
#include <tuple>
#include <stdexcept>

namespace sgdf {

Rational DyadicPoint::squared_distance_to(const DyadicPoint& o) const {
  const Rational da = a - o.a;
  const Rational db = b - o.b;
  return da * da + 3 * db * db;
}

double DyadicPoint::distance_to(const DyadicPoint& o) const {
  return std::sqrt(to_double(squared_distance_to(o)));
}

double DyadicPoint::y() const { return b.get_d() * std::sqrt(3.0); }

std::pair<std::int64_t, std::int64_t> DyadicPoint::scaled(int level) const {
  mpz_class two_n;
  mpz_ui_pow_ui(two_n.get_mpz_t(), 2, static_cast<unsigned long>(level));
  const auto scale = [&](const Rational& q) {
    mpz_class num = q.get_num() * two_n;
    if (!mpz_divisible_p(num.get_mpz_t(), q.get_den().get_mpz_t()))
      throw std::domain_error("DyadicPoint::scaled: coordinate not dyadic at this level");
    mpz_class v = num / q.get_den();
    if (!v.fits_slong_p())
      throw std::overflow_error("DyadicPoint::scaled: scaled coordinate too large");
    return static_cast<std::int64_t>(v.get_si());
  };
  return {scale(a), scale(b)};
}

bool lex_less(const DyadicPoint& l, const DyadicPoint& r) {
  const int c = cmp(l.a, r.a);
  if (c != 0) return c < 0;
  return cmp(l.b, r.b) < 0;
}

const DyadicPoint& corner(int i) {
  static const std::array<DyadicPoint, 3> corners = {
      DyadicPoint{Rational(0), Rational(0)},
      DyadicPoint{Rational(1), Rational(0)},
      DyadicPoint{frac(1, 2), frac(1, 2)},
  };
  if (i < 0 || i > 2) throw std::invalid_argument("corner: index outside {0,1,2}");
  return corners[static_cast<std::size_t>(i)];
}

DyadicPoint contract(int digit, const DyadicPoint& p) {
  const DyadicPoint& c = corner(digit);
  return {(p.a + c.a) / 2, (p.b + c.b) / 2};
}

DyadicPoint midpoint(const DyadicPoint& p, const DyadicPoint& q) {
  return {(p.a + q.a) / 2, (p.b + q.b) / 2};
}

DyadicPoint apply_map(const Word& w, const DyadicPoint& p) {
  // f_w = f_{w_1} o ... o f_{w_n}: apply the innermost map first.
  DyadicPoint out = p;
  for (int i = w.level() - 1; i >= 0; --i) out = contract(w.digit(i), out);
  return out;
}

DyadicPoint cell_anchor(const Word& w) {
  if (w.empty()) throw std::invalid_argument("cell_anchor: empty word has no anchor");
  return apply_map(w.parent(), corner(w.last()));
}

std::array<DyadicPoint, 3> cell_vertices(const Word& w) {
  return {apply_map(w, corner(0)), apply_map(w, corner(1)), apply_map(w, corner(2))};
}

namespace {

void walk_cells(std::vector<std::uint8_t>& digits, int remaining,
                const std::array<DyadicPoint, 3>& vertices, const DyadicPoint& anchor,
                const CellVisitor& visit) {
  if (remaining == 0) {
    visit(Word(digits), vertices, anchor);
    return;
  }
  for (int d = 0; d < 3; ++d) {
    // Child d keeps vertex d, the other two move to edge midpoints.
    std::array<DyadicPoint, 3> child;
    for (int j = 0; j < 3; ++j)
      child[static_cast<std::size_t>(j)] =
          (j == d) ? vertices[static_cast<std::size_t>(d)]
                   : midpoint(vertices[static_cast<std::size_t>(j)],
                              vertices[static_cast<std::size_t>(d)]);
    digits.push_back(static_cast<std::uint8_t>(d));
    walk_cells(digits, remaining - 1, child, vertices[static_cast<std::size_t>(d)], visit);
    digits.pop_back();
  }
}

}  // namespace

void for_each_cell(int level, const CellVisitor& visit) {
  if (level < 0) throw std::invalid_argument("for_each_cell: negative level");
  std::vector<std::uint8_t> digits;
  digits.reserve(static_cast<std::size_t>(level));
  const std::array<DyadicPoint, 3> root = {corner(0), corner(1), corner(2)};
  walk_cells(digits, level, root, corner(0), visit);
}

namespace {
Rational orient(const DyadicPoint& o, const DyadicPoint& u, const DyadicPoint& w) {
  return (u.a - o.a) * (w.b - o.b) - (u.b - o.b) * (w.a - o.a);
}
}  // namespace

bool triangle_contains(const std::array<DyadicPoint, 3>& v, const DyadicPoint& p) {
  const Rational d = orient(v[0], v[1], v[2]);
  Rational c0 = orient(p, v[1], v[2]);
  Rational c1 = orient(v[0], p, v[2]);
  Rational c2 = orient(v[0], v[1], p);
  if (d < 0) {
    c0 = -c0;
    c1 = -c1;
    c2 = -c2;
  }
  return c0 >= 0 && c1 >= 0 && c2 >= 0;
}

Word locate_vertex(const DyadicPoint& p) {
  const std::size_t bits = std::max(mpz_sizeinbase(p.a.get_den().get_mpz_t(), 2),
                                    mpz_sizeinbase(p.b.get_den().get_mpz_t(), 2));
  if (bits > 28) throw std::invalid_argument("locate_vertex: denominators too deep");
  const int k = static_cast<int>(bits) + 2;

  std::int64_t px, py;
  try {
    std::tie(px, py) = p.scaled(k);
  } catch (const std::exception&) {
    throw std::invalid_argument("locate_vertex: point is not dyadic");
  }

  using P2 = std::array<std::int64_t, 2>;
  const auto orient2 = [](const P2& o, const P2& u, const P2& w) {
    return (u[0] - o[0]) * (w[1] - o[1]) - (u[1] - o[1]) * (w[0] - o[0]);
  };
  const auto contains = [&](const std::array<P2, 3>& v, const P2& q) {
    // The standard corner order is positively oriented.
    return orient2(q, v[1], v[2]) >= 0 && orient2(v[0], q, v[2]) >= 0 &&
           orient2(v[0], v[1], q) >= 0;
  };

  std::array<P2, 3> v = {P2{0, 0}, P2{std::int64_t(1) << k, 0},
                         P2{std::int64_t(1) << (k - 1), std::int64_t(1) << (k - 1)}};
  const P2 q{px, py};
  std::vector<std::uint8_t> digits;
  for (int step = 0; step <= k + 1; ++step) {
    for (int j = 0; j < 3; ++j) {
      if (v[static_cast<std::size_t>(j)] == q) {
        digits.push_back(static_cast<std::uint8_t>(j));
        return Word(std::move(digits));
      }
    }
    bool descended = false;
    for (int d = 0; d < 3 && !descended; ++d) {
      std::array<P2, 3> child;
      bool integral = true;
      for (int j = 0; j < 3 && integral; ++j) {
        for (int c = 0; c < 2; ++c) {
          const std::int64_t sum =
              v[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)] +
              v[static_cast<std::size_t>(d)][static_cast<std::size_t>(c)];
          if (sum & 1) {
            integral = false;
            break;
          }
          child[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)] = sum / 2;
        }
      }
      if (integral && contains(child, q)) {
        digits.push_back(static_cast<std::uint8_t>(d));
        v = child;
        descended = true;
      }
    }
    if (!descended)
      throw std::invalid_argument("locate_vertex: point is not on the gasket");
  }
  throw std::invalid_argument("locate_vertex: point is not a vertex of any level");
}

std::vector<DyadicPoint> vertex_set(int n) {
  std::map<std::pair<std::int64_t, std::int64_t>, DyadicPoint> seen;
  for_each_cell(n, [&](const Word&, const std::array<DyadicPoint, 3>& vs, const DyadicPoint&) {
    for (const auto& v : vs) seen.emplace(v.scaled(n + 1), v);
  });
  std::vector<DyadicPoint> out;
  out.reserve(seen.size());
  for (auto& [key, p] : seen) out.push_back(p);
  return out;  // map order on scaled keys equals lex_less order
}

}  // namespace sgdf
