#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "sgdf/graph.hpp"
#include "sgdf/rational.hpp"

namespace sgdf {

// Y-circuit arms. All Delta-Y algebra is exact.
struct StarTriple {
  Rational r1, r2, r3;
};
struct DeltaTriple {
  Rational r12, r23, r31;
};

// R_i = product of the two delta arms meeting node i over the arm sum, and
// back; the two maps are mutually inverse.
StarTriple delta_to_star(const DeltaTriple& d);
DeltaTriple star_to_delta(const StarTriple& s);

// Corner-circuit arm resistance of X_n: computed by the recursion
// r_{n+1} = (5/3) r_n + 1/3 from r_1 = 1/3 and checked against the closed
// form (1/2)(5/3)^n - 1/2 at every step, exactly.
Rational corner_resistance_r(int n);

template <class T>
struct BasicResistorNetwork {
  struct Link {
    int i, j;
    T conductance;
  };
  int node_count = 0;
  std::vector<Link> links;
};
using ResistorNetwork = BasicResistorNetwork<double>;
using RationalResistorNetwork = BasicResistorNetwork<Rational>;

// Unit conductance per graph edge; node order = canonical word order.
ResistorNetwork network_from_graph(const CellGraph& g);

// Shorting merges a node set into one node; cutting removes links. Both keep
// the node count (shorted nodes alias the representative).
ResistorNetwork short_nodes(const ResistorNetwork& net, const std::vector<int>& nodes);
ResistorNetwork cut_links(const ResistorNetwork& net, const std::vector<std::size_t>& link_ids);

struct SolveStats {
  double residual = 0.0;
  int iterations = 0;
  bool direct = false;
};

// Potential difference for a unit current between a and b, with b grounded.
// Direct factorization for small systems, Jacobi-preconditioned CG above,
// always verified to relative residual <= 1e-10 (falls back to the direct
// factorization when the iteration stalls).
double effective_resistance(const ResistorNetwork& net, int a, int b,
                            SolveStats* stats = nullptr);

// Exact elimination; meant for small networks (<= 50 nodes).
Rational effective_resistance_exact(const RationalResistorNetwork& net, int a, int b);

double pair_resistance(const CellGraph& g, const Word& w1, const Word& w2);

// R_n(w, i^n) for every word and corner, three grounded factorizations.
struct CornerResistances {
  int level = 0;
  std::array<std::vector<double>, 3> toward;  // toward[i][word index]
};
CornerResistances corner_resistances(const CellGraph& g);

struct CornerBoundRow {
  Word w;
  int corner = 0;
  double R = 0.0;
  double bound = 0.0;
  double ratio = 0.0;
};
struct CornerBoundAudit {
  int level = 0;
  double max_ratio = 0.0;
  std::vector<CornerBoundRow> rows;  // all (w, corner) pairs, w != corner word
};
CornerBoundAudit corner_bound_audit(const CellGraph& g);

// header: i,j,conductance
void write_network_csv(std::ostream& out, const ResistorNetwork& net);
ResistorNetwork read_network_csv(std::istream& in);

}  // namespace sgdf
