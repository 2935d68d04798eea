#pragma once

#include <cstddef>
#include <iosfwd>
#include <utility>
#include <vector>

#include "sgdf/point.hpp"
#include "sgdf/word.hpp"

namespace sgdf {

// Two distinct equal-level cells meet in at most one point. The edge is of
// type I when the anchors differ and of type II when they coincide.
enum class EdgeKind { I, II };

struct Edge {
  Word w1, w2;                  // w1 < w2 lexicographically
  std::size_t i1 = 0, i2 = 0;   // canonical indices of w1, w2
  EdgeKind kind = EdgeKind::I;
  DyadicPoint shared_point;     // the single point of K_{w1} ∩ K_{w2}
};

// X_n: vertex set W_n with one edge per touching pair of cells.
// |edges| = (3^{n+1}-3)/2.
struct CellGraph {
  int level = 0;
  std::vector<Word> words;  // canonical order
  std::vector<Edge> edges;  // sorted by (w1, w2)
};

CellGraph build_graph(int level);  // level >= 1

bool is_connected(const CellGraph& g);

// For a type-II edge at level n, the unique level k < n and type-I edge
// (v1, v2) with w1 = v1 j^{n-k}, w2 = v2 i^{n-k}, where i, j are the last
// digits of v1, v2. Rejects type-I input.
std::pair<int, Edge> type2_origin(const Edge& e);

// header: level,w1,w2,kind,shared_a_num,shared_a_den,shared_b_num,shared_b_den
void write_graph_csv(std::ostream& out, const CellGraph& g);

}  // namespace sgdf
