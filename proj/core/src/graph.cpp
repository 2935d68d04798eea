#include "sgdf/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace sgdf {

CellGraph build_graph(int level) {
  if (level < 1) throw std::invalid_argument("build_graph: level must be >= 1");

  CellGraph g;
  g.level = level;
  g.words = all_words(level);

  std::vector<DyadicPoint> anchors(g.words.size());

  // Cells of equal level meet only at vertices, and every vertex outside V_0
  // belongs to exactly two cells, so bucketing vertices finds all edges.
  struct Incidence {
    std::size_t cell;
    DyadicPoint point;
  };
  std::map<std::pair<std::int64_t, std::int64_t>, std::vector<Incidence>> buckets;

  for_each_cell(level, [&](const Word& w, const std::array<DyadicPoint, 3>& vs,
                           const DyadicPoint& anchor) {
    const std::size_t idx = static_cast<std::size_t>(w.index());
    anchors[idx] = anchor;
    for (const auto& v : vs) buckets[v.scaled(level + 1)].push_back({idx, v});
  });

  for (auto& [key, incidences] : buckets) {
    if (incidences.size() == 1) continue;
    if (incidences.size() != 2)
      throw std::logic_error("build_graph: vertex shared by more than two cells");
    std::size_t a = incidences[0].cell, b = incidences[1].cell;
    if (a == b) throw std::logic_error("build_graph: cell repeats a vertex");
    if (a > b) std::swap(a, b);
    Edge e;
    e.w1 = g.words[a];
    e.w2 = g.words[b];
    e.i1 = a;
    e.i2 = b;
    e.shared_point = incidences[0].point;
    e.kind = (anchors[a] == anchors[b]) ? EdgeKind::II : EdgeKind::I;
    g.edges.push_back(std::move(e));
  }

  std::sort(g.edges.begin(), g.edges.end(),
            [](const Edge& l, const Edge& r) { return std::pair(l.i1, l.i2) < std::pair(r.i1, r.i2); });
  return g;
}

bool is_connected(const CellGraph& g) {
  const std::size_t n = g.words.size();
  if (n == 0) return true;
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  const auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Edge& e : g.edges) parent[find(e.i1)] = find(e.i2);
  const std::size_t root = find(0);
  for (std::size_t i = 1; i < n; ++i)
    if (find(i) != root) return false;
  return true;
}

std::pair<int, Edge> type2_origin(const Edge& e) {
  if (e.kind != EdgeKind::II)
    throw std::invalid_argument("type2_origin: edge is not of type II");
  const int n = e.w1.level();
  for (int k = n - 1; k >= 1; --k) {
    const int j = e.w2.digit(k - 1);
    const int i = e.w1.digit(k - 1);
    bool suffix_ok = true;
    for (int t = k; t < n && suffix_ok; ++t)
      suffix_ok = (e.w1.digit(t) == j) && (e.w2.digit(t) == i);
    if (!suffix_ok) continue;

    const Word v1 = e.w1.prefix(k);
    const Word v2 = e.w2.prefix(k);
    // The origin must itself be a type-I edge: touching cells with
    // distinct anchors.
    const auto verts1 = cell_vertices(v1);
    const auto verts2 = cell_vertices(v2);
    Edge origin;
    bool touching = false;
    for (const auto& p : verts1) {
      for (const auto& q : verts2) {
        if (p == q) {
          origin.shared_point = p;
          touching = true;
        }
      }
    }
    if (!touching) continue;
    if (cell_anchor(v1) == cell_anchor(v2)) continue;
    origin.w1 = v1;
    origin.w2 = v2;
    origin.i1 = static_cast<std::size_t>(v1.index());
    origin.i2 = static_cast<std::size_t>(v2.index());
    origin.kind = EdgeKind::I;
    return {k, origin};
  }
  throw std::logic_error("type2_origin: no type-I origin found");
}

void write_graph_csv(std::ostream& out, const CellGraph& g) {
  out << "level,w1,w2,kind,shared_a_num,shared_a_den,shared_b_num,shared_b_den\n";
  for (const Edge& e : g.edges) {
    out << g.level << ',' << e.w1.str() << ',' << e.w2.str() << ','
        << (e.kind == EdgeKind::I ? "I" : "II") << ','
        << e.shared_point.a.get_num().get_str() << ',' << e.shared_point.a.get_den().get_str()
        << ',' << e.shared_point.b.get_num().get_str() << ','
        << e.shared_point.b.get_den().get_str() << '\n';
  }
}

}  // namespace sgdf
