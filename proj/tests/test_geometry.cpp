#include <doctest.h>

#include <map>
#include <set>
#include <sstream>

#include "sgdf/graph.hpp"
#include "sgdf/point.hpp"
#include "sgdf/rng.hpp"
#include "sgdf/word.hpp"

using namespace sgdf;

namespace {

// Independent oracle: f_w(x) = 2^-n x + sum_i 2^-i p_{w_i}, no composition.
DyadicPoint affine_map_oracle(const Word& w, const DyadicPoint& p) {
  const int n = w.level();
  const Rational scale = pow_frac(frac(1, 2), n);
  DyadicPoint out{p.a * scale, p.b * scale};
  for (int i = 1; i <= n; ++i) {
    const DyadicPoint& c = corner(w.digit(i - 1));
    const Rational weight = pow_frac(frac(1, 2), i);
    out.a += c.a * weight;
    out.b += c.b * weight;
  }
  return out;
}

Word random_word(Rng& rng, int level) {
  std::vector<std::uint8_t> digits(static_cast<std::size_t>(level));
  for (auto& d : digits) d = static_cast<std::uint8_t>(rng.below(3));
  return Word(std::move(digits));
}

// Brute-force pairwise cell intersection over exact scaled coordinates.
struct OracleEdge {
  std::size_t i, j;
  bool type1;
  std::pair<std::int64_t, std::int64_t> shared;
};

std::vector<OracleEdge> brute_force_edges(int n) {
  const std::size_t cells = word_count(n);
  std::vector<std::array<std::pair<std::int64_t, std::int64_t>, 3>> verts(cells);
  std::vector<std::pair<std::int64_t, std::int64_t>> anchors(cells);
  for (std::size_t idx = 0; idx < cells; ++idx) {
    const Word w = Word::from_index(n, idx);
    const auto vs = cell_vertices(w);
    for (int k = 0; k < 3; ++k) verts[idx][static_cast<std::size_t>(k)] = vs[static_cast<std::size_t>(k)].scaled(n + 1);
    anchors[idx] = cell_anchor(w).scaled(n + 1);
  }
  std::vector<OracleEdge> edges;
  for (std::size_t i = 0; i < cells; ++i) {
    for (std::size_t j = i + 1; j < cells; ++j) {
      int hits = 0;
      std::pair<std::int64_t, std::int64_t> shared{};
      for (const auto& a : verts[i])
        for (const auto& b : verts[j])
          if (a == b) {
            ++hits;
            shared = a;
          }
      if (hits > 0) {
        CHECK(hits == 1);  // equal-level cells meet in at most one point
        edges.push_back({i, j, anchors[i] != anchors[j], shared});
      }
    }
  }
  return edges;
}

}  // namespace

TEST_CASE("words: parsing, indexing and order") {
  CHECK(Word::parse("").level() == 0);
  CHECK(Word::parse("0120").str() == "0120");
  CHECK_THROWS_AS(Word::parse("013"), std::invalid_argument);
  CHECK(Word::repeated(2, 4).str() == "2222");
  CHECK(word_count(5) == 243);

  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const int level = static_cast<int>(rng.integer(0, 8));
    const Word w = random_word(rng, level);
    CHECK(Word::from_index(level, w.index()) == w);
  }
  // Canonical order on a level is the base-3 index order.
  const auto words = all_words(3);
  for (std::size_t i = 0; i + 1 < words.size(); ++i) {
    CHECK(words[i] < words[i + 1]);
    CHECK(words[i].index() == i);
  }
  CHECK(Word::parse("012").parent() == Word::parse("01"));
  CHECK(Word::parse("01").concat(Word::parse("2")) == Word::parse("012"));
  CHECK_THROWS_AS(Word::from_index(2, 9), std::invalid_argument);
}

TEST_CASE("apply_map: identity, single steps, affine oracle") {
  CHECK(apply_map(Word::parse(""), corner(1)) == corner(1));

  const DyadicPoint f0p1 = apply_map(Word::parse("0"), corner(1));
  CHECK(f0p1.a == frac(1, 2));
  CHECK(f0p1.b == Rational(0));

  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const Word w = random_word(rng, static_cast<int>(rng.integer(0, 6)));
    const DyadicPoint p = corner(static_cast<int>(rng.below(3)));
    const DyadicPoint via_composition = apply_map(w, p);
    const DyadicPoint via_formula = affine_map_oracle(w, p);
    CHECK(via_composition == via_formula);
  }
  // The concrete two-step value f_21(p_0) from composing f_2 then f_1.
  const DyadicPoint q = apply_map(Word::parse("21"), corner(0));
  CHECK(q == affine_map_oracle(Word::parse("21"), corner(0)));
}

TEST_CASE("cell anchors and vertices") {
  CHECK(cell_anchor(Word::parse("0")) == corner(0));
  const DyadicPoint p01 = cell_anchor(Word::parse("01"));
  CHECK(p01.a == frac(1, 2));
  CHECK(p01.b == Rational(0));
  CHECK_THROWS_AS(cell_anchor(Word::parse("")), std::invalid_argument);

  // P_{w01} = P_{w10} and P_{wii} = P_{wi}.
  Rng rng(13);
  for (int trial = 0; trial < 60; ++trial) {
    const Word w = random_word(rng, static_cast<int>(rng.integer(0, 5)));
    const int i = static_cast<int>(rng.below(3));
    const int j = static_cast<int>(rng.below(3));
    if (i != j)
      CHECK(cell_anchor(w.child(i).child(j)) == cell_anchor(w.child(j).child(i)));
    CHECK(cell_anchor(w.child(i).child(i)) == cell_anchor(w.child(i)));
  }

  const auto v0 = cell_vertices(Word::parse(""));
  CHECK(v0[0] == corner(0));
  CHECK(v0[1] == corner(1));
  CHECK(v0[2] == corner(2));

  const auto v2 = cell_vertices(Word::parse("2"));
  CHECK(v2[0].a == frac(1, 4));
  CHECK(v2[0].b == frac(1, 4));
  CHECK(v2[1].a == frac(3, 4));
  CHECK(v2[1].b == frac(1, 4));
  CHECK(v2[2].a == frac(1, 2));
  CHECK(v2[2].b == frac(1, 2));

  // V_w = {P_{w0}, P_{w1}, P_{w2}}.
  for (int trial = 0; trial < 40; ++trial) {
    const Word w = random_word(rng, static_cast<int>(rng.integer(1, 5)));
    const auto vs = cell_vertices(w);
    for (int i = 0; i < 3; ++i)
      CHECK(vs[static_cast<std::size_t>(i)] == cell_anchor(w.child(i)));
  }
}

TEST_CASE("vertex sets: sizes and exact dedup") {
  CHECK(vertex_set(0).size() == 3);
  CHECK(vertex_set(1).size() == 6);
  CHECK(vertex_set(3).size() == 42);
  for (int n = 0; n <= 6; ++n)
    CHECK(vertex_set(n).size() == (3 * word_count(n) + 3) / 2);

  // Against an independent dedup of all cell corners.
  for (int n = 1; n <= 5; ++n) {
    std::set<std::pair<std::int64_t, std::int64_t>> points;
    for (const Word& w : all_words(n))
      for (const auto& v : cell_vertices(w)) points.insert(v.scaled(n + 1));
    const auto vs = vertex_set(n);
    CHECK(vs.size() == points.size());
    for (const auto& v : vs) CHECK(points.count(v.scaled(n + 1)) == 1);
    // Sorted canonically.
    for (std::size_t i = 0; i + 1 < vs.size(); ++i) CHECK(lex_less(vs[i], vs[i + 1]));
  }
}

TEST_CASE("triangle containment and vertex location") {
  const std::array<DyadicPoint, 3> root = {corner(0), corner(1), corner(2)};
  CHECK(triangle_contains(root, corner(0)));
  CHECK(triangle_contains(root, DyadicPoint{frac(1, 2), frac(1, 6)}));  // hull interior
  CHECK_FALSE(triangle_contains(root, DyadicPoint{Rational(2), Rational(0)}));

  Rng rng(19);
  for (int trial = 0; trial < 80; ++trial) {
    const Word w = random_word(rng, static_cast<int>(rng.integer(1, 7)));
    const DyadicPoint p = cell_anchor(w);
    const Word found = locate_vertex(p);
    CHECK(cell_anchor(found) == p);
  }
  CHECK_THROWS_AS(locate_vertex(DyadicPoint{frac(1, 2), frac(1, 6)}), std::invalid_argument);
  CHECK_THROWS_AS(locate_vertex(DyadicPoint{Rational(5), Rational(5)}), std::invalid_argument);
  CHECK_THROWS_AS(locate_vertex(DyadicPoint{frac(1, 3), frac(1, 3)}), std::invalid_argument);
}

TEST_CASE("squared distances are exact and consistent with equality") {
  Rng rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const Word w1 = random_word(rng, 4);
    const Word w2 = random_word(rng, 4);
    const DyadicPoint p = cell_anchor(w1.child(0));
    const DyadicPoint q = cell_anchor(w2.child(1));
    const Rational d2 = p.squared_distance_to(q);
    CHECK((d2 == 0) == (p == q));
    CHECK(d2 >= 0);
  }
  CHECK(corner(0).squared_distance_to(corner(1)) == Rational(1));
  CHECK(corner(0).squared_distance_to(corner(2)) == Rational(1));
}

TEST_CASE("build_graph: counts, kinds and the brute-force oracle") {
  const CellGraph g1 = build_graph(1);
  CHECK(g1.edges.size() == 3);
  for (const Edge& e : g1.edges) CHECK(e.kind == EdgeKind::I);

  const CellGraph g2 = build_graph(2);
  CHECK(g2.edges.size() == 12);
  int type1 = 0, type2 = 0;
  for (const Edge& e : g2.edges) (e.kind == EdgeKind::I ? type1 : type2)++;
  CHECK(type1 == 9);
  CHECK(type2 == 3);

  // Level-3 classification of the two named pairs.
  const CellGraph g3 = build_graph(3);
  const auto find_edge = [&](const char* a, const char* b) {
    for (const Edge& e : g3.edges)
      if (e.w1 == Word::parse(a) && e.w2 == Word::parse(b)) return e;
    FAIL("edge not found");
    return g3.edges.front();
  };
  CHECK(find_edge("000", "001").kind == EdgeKind::I);
  CHECK(find_edge("001", "010").kind == EdgeKind::II);

  for (int n = 1; n <= 5; ++n) {
    const CellGraph g = build_graph(n);
    CHECK(g.edges.size() == (3 * word_count(n) - 3) / 2);
    CHECK(is_connected(g));

    const auto oracle = brute_force_edges(n);
    REQUIRE(oracle.size() == g.edges.size());
    for (std::size_t k = 0; k < oracle.size(); ++k) {
      CHECK(oracle[k].i == g.edges[k].i1);
      CHECK(oracle[k].j == g.edges[k].i2);
      CHECK(oracle[k].type1 == (g.edges[k].kind == EdgeKind::I));
      CHECK(oracle[k].shared == g.edges[k].shared_point.scaled(n + 1));
    }

    // Type-II census: sum of 3^k for k < n.
    std::size_t expect_type2 = 0;
    for (int k = 1; k < n; ++k) expect_type2 += word_count(k);
    std::size_t got_type2 = 0;
    for (const Edge& e : g.edges)
      if (e.kind == EdgeKind::II) ++got_type2;
    CHECK(got_type2 == expect_type2);
  }

  CHECK_THROWS_AS(build_graph(0), std::invalid_argument);
}

TEST_CASE("edge shared points are the cell intersections") {
  // The stored point is a vertex of both cells, and the cells share no other.
  const CellGraph g = build_graph(3);
  for (const Edge& e : g.edges) {
    const auto v1 = cell_vertices(e.w1);
    const auto v2 = cell_vertices(e.w2);
    int shared = 0;
    for (const auto& a : v1)
      for (const auto& b : v2)
        if (a == b) {
          ++shared;
          CHECK(a == e.shared_point);
        }
    CHECK(shared == 1);
    // Kind matches the anchor comparison.
    CHECK((e.kind == EdgeKind::I) == (cell_anchor(e.w1) != cell_anchor(e.w2)));
  }
}

TEST_CASE("type2_origin: named example, rejection, round trip") {
  const CellGraph g3 = build_graph(3);
  for (const Edge& e : g3.edges) {
    if (e.w1 == Word::parse("001") && e.w2 == Word::parse("010")) {
      const auto [k, origin] = type2_origin(e);
      CHECK(k == 2);
      CHECK(origin.w1 == Word::parse("00"));
      CHECK(origin.w2 == Word::parse("01"));
      CHECK(origin.kind == EdgeKind::I);
    }
    if (e.kind == EdgeKind::I) CHECK_THROWS_AS(type2_origin(e), std::invalid_argument);
  }

  // Every type-II edge reconstructs exactly from its origin.
  for (int n = 2; n <= 5; ++n) {
    const CellGraph g = build_graph(n);
    for (const Edge& e : g.edges) {
      if (e.kind != EdgeKind::II) continue;
      const auto [k, origin] = type2_origin(e);
      CHECK(k >= 1);
      CHECK(k < n);
      const int i = origin.w1.last();
      const int j = origin.w2.last();
      CHECK(e.w1 == origin.w1.concat(Word::repeated(j, n - k)));
      CHECK(e.w2 == origin.w2.concat(Word::repeated(i, n - k)));
      // The origin is itself an edge of X_k.
      CHECK(cell_anchor(origin.w1) != cell_anchor(origin.w2));
    }
  }
}

TEST_CASE("graph csv is canonical") {
  const CellGraph g1 = build_graph(1);
  std::ostringstream out;
  write_graph_csv(out, g1);
  CHECK(out.str() ==
        "level,w1,w2,kind,shared_a_num,shared_a_den,shared_b_num,shared_b_den\n"
        "1,0,1,I,1,2,0,1\n"
        "1,0,2,I,1,4,1,4\n"
        "1,1,2,I,3,4,1,4\n");
}
