#include "sgdf/good_function.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "sgdf/point.hpp"

namespace sgdf {

Rational GoodFunction::energy_seed() const {
  const Rational d01 = x0 - x1, d12 = x1 - x2, d02 = x0 - x2;
  return d01 * d01 + d12 * d12 + d02 * d02;
}

Triple extend_once(const Rational& a, const Rational& b, const Rational& c) {
  return {(2 * a + 2 * b + c) / 5, (a + 2 * b + 2 * c) / 5, (2 * a + b + 2 * c) / 5};
}

Triple extend_once(const Triple& t) { return extend_once(t[0], t[1], t[2]); }

Triple child_triple(const Triple& t, int digit) {
  const Triple m = extend_once(t);  // (m01, m12, m02)
  switch (digit) {
    case 0:
      return {t[0], m[0], m[2]};
    case 1:
      return {m[0], t[1], m[1]};
    case 2:
      return {m[2], m[1], t[2]};
    default:
      throw std::invalid_argument("child_triple: digit outside {0,1,2}");
  }
}

Triple cell_triple(const GoodFunction& U, const Word& w) {
  Triple t = U.triple();
  for (int i = 0; i < w.level(); ++i) t = child_triple(t, w.digit(i));
  return t;
}

Rational evaluate(const GoodFunction& U, const Word& w) {
  if (w.empty()) throw std::invalid_argument("evaluate: empty word addresses no vertex");
  const Triple t = cell_triple(U, w.parent());
  return t[static_cast<std::size_t>(w.last())];
}

Rational evaluate_at_point(const GoodFunction& U, const DyadicPoint& p) {
  return evaluate(U, locate_vertex(p));
}

Rational exact_cell_average(const GoodFunction& U, const Word& w) {
  if (w.empty()) throw std::invalid_argument("exact_cell_average: empty word");
  const Triple t = cell_triple(U, w.parent());
  const Rational sum = t[0] + t[1] + t[2];
  return (sum + 2 * t[static_cast<std::size_t>(w.last())]) / 5;
}

namespace {

void walk_averages(const Triple& t, int remaining, std::vector<Rational>& out,
                   std::size_t& cursor) {
  if (remaining == 0) return;
  const Rational sum = t[0] + t[1] + t[2];
  for (int d = 0; d < 3; ++d) {
    if (remaining == 1) {
      out[cursor++] = (sum + 2 * t[static_cast<std::size_t>(d)]) / 5;
    } else {
      walk_averages(child_triple(t, d), remaining - 1, out, cursor);
    }
  }
}

}  // namespace

RationalCellFunction exact_cell_averages(const GoodFunction& U, int level) {
  if (level < 1) throw std::invalid_argument("exact_cell_averages: level must be >= 1");
  RationalCellFunction out;
  out.level = level;
  out.values.resize(word_count(level));
  std::size_t cursor = 0;
  walk_averages(U.triple(), level, out.values, cursor);
  return out;
}

ClosedFormEnergies closed_form_energies(const GoodFunction& U, int n) {
  if (n < 0) throw std::invalid_argument("closed_form_energies: negative level");
  const Rational S = U.energy_seed();
  const Rational r = pow_frac(frac(3, 5), n);
  ClosedFormEnergies out;
  out.B = r * S;
  if (n == 0) {
    // X_0 has no edges.
    out.A = 0;
    out.D = 0;
  } else {
    out.A = frac(2, 3) * (r - r * r) * S;
    out.D = frac(2, 3) * (1 - r) * S;
  }
  return out;
}

Rational sup_D(const GoodFunction& U) { return frac(2, 3) * U.energy_seed(); }

VertexFunction<Rational> good_vertex_function(const GoodFunction& U, int level) {
  struct Entry {
    DyadicPoint point;
    Rational value;
  };
  std::map<std::pair<std::int64_t, std::int64_t>, Entry> seen;

  // Walk cells carrying corner triples; every vertex is visited through each
  // cell containing it, which doubles as a well-definedness check.
  struct Frame {
    Triple t;
    std::array<DyadicPoint, 3> v;
    int remaining;
  };
  std::vector<Frame> stack;
  stack.push_back({U.triple(), {corner(0), corner(1), corner(2)}, level});
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    if (f.remaining == 0) {
      for (int i = 0; i < 3; ++i) {
        const auto key = f.v[static_cast<std::size_t>(i)].scaled(level + 1);
        const auto it = seen.find(key);
        if (it == seen.end()) {
          seen.emplace(key, Entry{f.v[static_cast<std::size_t>(i)],
                                  f.t[static_cast<std::size_t>(i)]});
        } else if (it->second.value != f.t[static_cast<std::size_t>(i)]) {
          throw std::logic_error("good_vertex_function: extension not well-defined");
        }
      }
      continue;
    }
    for (int d = 2; d >= 0; --d) {
      Frame child;
      child.remaining = f.remaining - 1;
      child.t = child_triple(f.t, d);
      for (int j = 0; j < 3; ++j)
        child.v[static_cast<std::size_t>(j)] =
            (j == d) ? f.v[static_cast<std::size_t>(d)]
                     : midpoint(f.v[static_cast<std::size_t>(j)],
                                f.v[static_cast<std::size_t>(d)]);
      stack.push_back(std::move(child));
    }
  }

  VertexFunction<Rational> out;
  out.level = level;
  out.points.reserve(seen.size());
  out.values.reserve(seen.size());
  std::size_t idx = 0;
  for (auto& [key, entry] : seen) {
    out.points.push_back(entry.point);
    out.values.push_back(entry.value);
    out.index.emplace(key, idx++);
  }
  return out;
}

LiftedBoundary lift_boundary(int child, const Triple& c) {
  if (child < 0 || child > 2) throw std::invalid_argument("lift_boundary: bad child index");
  const std::size_t i = static_cast<std::size_t>(child);
  const std::size_t j = (child == 0) ? 1 : 0;
  const std::size_t k = (child == 2) ? 1 : 2;
  // c[j] sits at the midpoint between parent corners i and j, c[k] at the
  // midpoint between i and k; solve the 3x3 extension system for the rest.
  LiftedBoundary out;
  out.parent[i] = c[i];
  out.parent[j] = (-2 * c[i] + 10 * c[j] - 5 * c[k]) / 3;
  out.parent[k] = (-2 * c[i] - 5 * c[j] + 10 * c[k]) / 3;
  out.far_midpoint = (-c[i] + 2 * c[j] + 2 * c[k]) / 3;
  return out;
}

namespace {

// P_{wii} = P_{wi}: strip repeated trailing digits.
Word normalize_vertex_address(const Word& w) {
  if (w.empty())
    throw std::invalid_argument("separation_witness: empty word addresses no vertex");
  std::vector<std::uint8_t> digits(w.digits());
  while (digits.size() >= 2 && digits[digits.size() - 1] == digits[digits.size() - 2])
    digits.pop_back();
  return Word(std::move(digits));
}

// The level-l cells containing P_v, for normalized v. A corner p_i lies in
// i^l only; a junction P_{w'ij} lies in the two corner chains w'i j^t, w'j i^t.
std::vector<Word> containing_cells(const Word& v, int level) {
  const int m = v.level();
  if (m == 1) return {Word::repeated(v.digit(0), level)};
  if (level < m - 1) return {v.prefix(level)};
  const int i = v.digit(m - 2);
  const int j = v.digit(m - 1);
  const Word base = v.prefix(m - 2);
  const int t = level - (m - 1);
  return {base.child(i).concat(Word::repeated(j, t)),
          base.child(j).concat(Word::repeated(i, t))};
}

}  // namespace

GoodFunction separation_witness(const Word& x_addr, const Word& y_addr) {
  const Word x = normalize_vertex_address(x_addr);
  const Word y = normalize_vertex_address(y_addr);
  if (cell_anchor(x) == cell_anchor(y))
    throw std::invalid_argument("separation_witness: addresses denote the same point");

  // Deepest cell containing both points.
  Word common;  // level 0
  for (int level = 1; level <= x.level() + y.level() + 2; ++level) {
    const auto cx = containing_cells(x, level);
    const auto cy = containing_cells(y, level);
    Word next;
    bool found = false;
    for (const Word& a : cx)
      for (const Word& b : cy)
        if (a == b) {
          next = a;
          found = true;
        }
    if (!found) break;
    common = next;
  }

  // Children of the common cell holding x and y; distinct by maximality.
  const int child_level = common.level() + 1;
  int ci = -1, cj = -1;
  for (const Word& a : containing_cells(x, child_level))
    if (a.prefix(common.level()) == common) ci = a.digit(common.level());
  for (const Word& b : containing_cells(y, child_level))
    if (b.prefix(common.level()) == common) cj = b.digit(common.level());
  if (ci < 0 || cj < 0 || ci == cj)
    throw std::logic_error("separation_witness: failed to split the points");

  // Indicator of corner ci on V_common separates inside the common cell;
  // lift it to corner values on V_0.
  Triple t = {Rational(ci == 0 ? 1 : 0), Rational(ci == 1 ? 1 : 0), Rational(ci == 2 ? 1 : 0)};
  Word w = common;
  while (!w.empty()) {
    t = lift_boundary(w.last(), t).parent;
    w = w.parent();
  }
  const GoodFunction U{t[0], t[1], t[2]};
  if (evaluate(U, x) == evaluate(U, y))
    throw std::logic_error("separation_witness: postcondition failed");
  return U;
}

void write_good_function_json(std::ostream& out, const GoodFunction& U) {
  nlohmann::ordered_json j;
  const auto put = [&](const char* name, const Rational& q) {
    j[name] = {{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
  };
  put("x0", U.x0);
  put("x1", U.x1);
  put("x2", U.x2);
  out << j.dump(2) << '\n';
}

GoodFunction read_good_function_json(std::istream& in) {
  nlohmann::json j;
  in >> j;
  const auto get = [&](const char* name) {
    const auto& field = j.at(name);
    Rational q(mpz_class(field.at("num").get<std::string>(), 10),
               mpz_class(field.at("den").get<std::string>(), 10));
    if (q.get_den() == 0)
      throw std::invalid_argument("good function json: zero denominator");
    q.canonicalize();
    return q;
  };
  return {get("x0"), get("x1"), get("x2")};
}

GoodFunction parse_good_function(const std::string& text) {
  std::array<Rational, 3> values;
  std::stringstream ss(text);
  std::string part;
  std::size_t i = 0;
  while (std::getline(ss, part, ',')) {
    if (i >= 3) throw std::invalid_argument("parse_good_function: expected three values");
    values[i++] = parse_rational(part);
  }
  if (i != 3) throw std::invalid_argument("parse_good_function: expected three values");
  return {values[0], values[1], values[2]};
}

}  // namespace sgdf
