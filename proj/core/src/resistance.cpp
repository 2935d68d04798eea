#include "sgdf/resistance.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace sgdf {

namespace {
void require_positive(const Rational& r, const char* what) {
  if (r <= 0) throw std::domain_error(std::string(what) + ": resistance must be positive");
}
}  // namespace

StarTriple delta_to_star(const DeltaTriple& d) {
  require_positive(d.r12, "delta_to_star");
  require_positive(d.r23, "delta_to_star");
  require_positive(d.r31, "delta_to_star");
  const Rational sum = d.r12 + d.r23 + d.r31;
  return {d.r12 * d.r31 / sum, d.r12 * d.r23 / sum, d.r23 * d.r31 / sum};
}

DeltaTriple star_to_delta(const StarTriple& s) {
  require_positive(s.r1, "star_to_delta");
  require_positive(s.r2, "star_to_delta");
  require_positive(s.r3, "star_to_delta");
  const Rational cross = s.r1 * s.r2 + s.r2 * s.r3 + s.r3 * s.r1;
  return {cross / s.r3, cross / s.r1, cross / s.r2};
}

Rational corner_resistance_r(int n) {
  if (n < 1) throw std::invalid_argument("corner_resistance_r: n must be >= 1");
  Rational r = frac(1, 3);
  for (int k = 1; k <= n; ++k) {
    if (k > 1) r = frac(5, 3) * r + frac(1, 3);
    const Rational closed = (pow_frac(frac(5, 3), k) - 1) / 2;
    if (r != closed)
      throw std::logic_error("corner_resistance_r: recursion disagrees with closed form");
  }
  return r;
}

ResistorNetwork network_from_graph(const CellGraph& g) {
  ResistorNetwork net;
  net.node_count = static_cast<int>(g.words.size());
  net.links.reserve(g.edges.size());
  for (const Edge& e : g.edges)
    net.links.push_back({static_cast<int>(e.i1), static_cast<int>(e.i2), 1.0});
  return net;
}

ResistorNetwork short_nodes(const ResistorNetwork& net, const std::vector<int>& nodes) {
  if (nodes.size() < 2) return net;
  const int rep = *std::min_element(nodes.begin(), nodes.end());
  std::vector<int> remap(static_cast<std::size_t>(net.node_count));
  std::iota(remap.begin(), remap.end(), 0);
  for (int v : nodes) remap[static_cast<std::size_t>(v)] = rep;
  ResistorNetwork out;
  out.node_count = net.node_count;
  for (const auto& l : net.links) {
    const int i = remap[static_cast<std::size_t>(l.i)];
    const int j = remap[static_cast<std::size_t>(l.j)];
    if (i == j) continue;  // link swallowed by the short
    out.links.push_back({i, j, l.conductance});
  }
  return out;
}

ResistorNetwork cut_links(const ResistorNetwork& net, const std::vector<std::size_t>& link_ids) {
  const std::set<std::size_t> drop(link_ids.begin(), link_ids.end());
  ResistorNetwork out;
  out.node_count = net.node_count;
  for (std::size_t k = 0; k < net.links.size(); ++k)
    if (!drop.count(k)) out.links.push_back(net.links[k]);
  return out;
}

namespace {

// Nodes reachable from a; used to reject disconnected queries and to solve
// on the relevant component only.
std::vector<int> component_of(const ResistorNetwork& net, int a) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(net.node_count));
  for (const auto& l : net.links) {
    adj[static_cast<std::size_t>(l.i)].push_back(l.j);
    adj[static_cast<std::size_t>(l.j)].push_back(l.i);
  }
  std::vector<int> label(static_cast<std::size_t>(net.node_count), -1);
  std::vector<int> stack = {a};
  label[static_cast<std::size_t>(a)] = 0;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int w : adj[static_cast<std::size_t>(v)]) {
      if (label[static_cast<std::size_t>(w)] < 0) {
        label[static_cast<std::size_t>(w)] = 0;
        stack.push_back(w);
      }
    }
  }
  return label;
}

constexpr double kResidualContract = 1e-10;
constexpr int kDirectNodeLimit = 1000;

}  // namespace

double effective_resistance(const ResistorNetwork& net, int a, int b, SolveStats* stats) {
  if (a == b) throw std::invalid_argument("effective_resistance: identical terminals");
  if (a < 0 || b < 0 || a >= net.node_count || b >= net.node_count)
    throw std::invalid_argument("effective_resistance: terminal outside network");
  for (const auto& l : net.links) {
    if (l.i == l.j) throw std::invalid_argument("effective_resistance: self-loop");
    if (!(l.conductance > 0.0))
      throw std::invalid_argument("effective_resistance: conductance must be positive");
  }
  const std::vector<int> reach = component_of(net, a);
  if (reach[static_cast<std::size_t>(b)] < 0)
    throw std::invalid_argument("effective_resistance: terminals not connected");

  // Ground b: reduced Laplacian on the reachable nodes minus b.
  std::vector<int> reduced(static_cast<std::size_t>(net.node_count), -1);
  int dim = 0;
  for (int v = 0; v < net.node_count; ++v)
    if (reach[static_cast<std::size_t>(v)] == 0 && v != b) reduced[static_cast<std::size_t>(v)] = dim++;

  using Sparse = Eigen::SparseMatrix<double>;
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(net.links.size() * 4);
  for (const auto& l : net.links) {
    const int ri = reduced[static_cast<std::size_t>(l.i)];
    const int rj = reduced[static_cast<std::size_t>(l.j)];
    if (ri < 0 && rj < 0) continue;
    if (ri >= 0) triplets.emplace_back(ri, ri, l.conductance);
    if (rj >= 0) triplets.emplace_back(rj, rj, l.conductance);
    if (ri >= 0 && rj >= 0) {
      triplets.emplace_back(ri, rj, -l.conductance);
      triplets.emplace_back(rj, ri, -l.conductance);
    }
  }
  Sparse L(dim, dim);
  L.setFromTriplets(triplets.begin(), triplets.end());

  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(dim);
  rhs[reduced[static_cast<std::size_t>(a)]] = 1.0;

  SolveStats local;
  Eigen::VectorXd v;
  bool solved = false;
  if (dim > kDirectNodeLimit) {
    Eigen::ConjugateGradient<Sparse, Eigen::Lower | Eigen::Upper,
                             Eigen::DiagonalPreconditioner<double>>
        cg;
    cg.setTolerance(1e-13);
    cg.setMaxIterations(50 * dim);
    cg.compute(L);
    v = cg.solve(rhs);
    local.iterations = static_cast<int>(cg.iterations());
    local.residual = (L * v - rhs).norm() / rhs.norm();
    solved = (cg.info() == Eigen::Success) && local.residual <= kResidualContract;
  }
  if (!solved) {
    Eigen::SimplicialLDLT<Sparse> ldlt(L);
    if (ldlt.info() != Eigen::Success)
      throw std::runtime_error("effective_resistance: singular reduced Laplacian");
    v = ldlt.solve(rhs);
    local.direct = true;
    local.residual = (L * v - rhs).norm() / rhs.norm();
    if (local.residual > kResidualContract)
      throw std::runtime_error("effective_resistance: residual above contract");
  }
  if (stats) *stats = local;
  return v[reduced[static_cast<std::size_t>(a)]];
}

Rational effective_resistance_exact(const RationalResistorNetwork& net, int a, int b) {
  if (net.node_count > 50)
    throw std::invalid_argument("effective_resistance_exact: network too large for exact mode");
  if (a == b) throw std::invalid_argument("effective_resistance_exact: identical terminals");
  const int n = net.node_count;
  // Dense reduced Laplacian, b grounded.
  std::vector<int> reduced(static_cast<std::size_t>(n), -1);
  int dim = 0;
  for (int v = 0; v < n; ++v)
    if (v != b) reduced[static_cast<std::size_t>(v)] = dim++;
  std::vector<std::vector<Rational>> m(static_cast<std::size_t>(dim),
                                       std::vector<Rational>(static_cast<std::size_t>(dim + 1)));
  for (const auto& l : net.links) {
    require_positive(l.conductance, "effective_resistance_exact");
    const int ri = reduced[static_cast<std::size_t>(l.i)];
    const int rj = reduced[static_cast<std::size_t>(l.j)];
    if (ri >= 0) m[ri][ri] += l.conductance;
    if (rj >= 0) m[rj][rj] += l.conductance;
    if (ri >= 0 && rj >= 0) {
      m[ri][rj] -= l.conductance;
      m[rj][ri] -= l.conductance;
    }
  }
  m[static_cast<std::size_t>(reduced[static_cast<std::size_t>(a)])]
   [static_cast<std::size_t>(dim)] = 1;

  // Gaussian elimination with exact pivots.
  for (int col = 0; col < dim; ++col) {
    int pivot = -1;
    for (int row = col; row < dim; ++row)
      if (m[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] != 0) {
        pivot = row;
        break;
      }
    if (pivot < 0)
      throw std::invalid_argument("effective_resistance_exact: singular system (disconnected?)");
    std::swap(m[static_cast<std::size_t>(col)], m[static_cast<std::size_t>(pivot)]);
    const Rational diag = m[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
    for (int row = 0; row < dim; ++row) {
      if (row == col) continue;
      const Rational factor =
          m[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] / diag;
      if (factor == 0) continue;
      for (int k = col; k <= dim; ++k)
        m[static_cast<std::size_t>(row)][static_cast<std::size_t>(k)] -=
            factor * m[static_cast<std::size_t>(col)][static_cast<std::size_t>(k)];
    }
  }
  const int ra = reduced[static_cast<std::size_t>(a)];
  return m[static_cast<std::size_t>(ra)][static_cast<std::size_t>(dim)] /
         m[static_cast<std::size_t>(ra)][static_cast<std::size_t>(ra)];
}

double pair_resistance(const CellGraph& g, const Word& w1, const Word& w2) {
  if (w1.level() != g.level || w2.level() != g.level)
    throw std::invalid_argument("pair_resistance: word level mismatch");
  if (w1 == w2) throw std::invalid_argument("pair_resistance: identical words");
  return effective_resistance(network_from_graph(g), static_cast<int>(w1.index()),
                              static_cast<int>(w2.index()));
}

CornerResistances corner_resistances(const CellGraph& g) {
  const int n = static_cast<int>(g.words.size());
  CornerResistances out;
  out.level = g.level;

  using Sparse = Eigen::SparseMatrix<double>;
  for (int corner_digit = 0; corner_digit < 3; ++corner_digit) {
    const int ground = static_cast<int>(Word::repeated(corner_digit, g.level).index());
    std::vector<int> reduced(static_cast<std::size_t>(n), -1);
    int dim = 0;
    for (int v = 0; v < n; ++v)
      if (v != ground) reduced[static_cast<std::size_t>(v)] = dim++;

    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(g.edges.size() * 4);
    for (const Edge& e : g.edges) {
      const int ri = reduced[e.i1];
      const int rj = reduced[e.i2];
      if (ri >= 0) triplets.emplace_back(ri, ri, 1.0);
      if (rj >= 0) triplets.emplace_back(rj, rj, 1.0);
      if (ri >= 0 && rj >= 0) {
        triplets.emplace_back(ri, rj, -1.0);
        triplets.emplace_back(rj, ri, -1.0);
      }
    }
    Sparse L(dim, dim);
    L.setFromTriplets(triplets.begin(), triplets.end());
    Eigen::SimplicialLDLT<Sparse> ldlt(L);
    if (ldlt.info() != Eigen::Success)
      throw std::runtime_error("corner_resistances: factorization failed");

    auto& column = out.toward[static_cast<std::size_t>(corner_digit)];
    column.assign(static_cast<std::size_t>(n), 0.0);
    for (int w = 0; w < n; ++w) {
      if (w == ground) continue;
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(dim);
      rhs[reduced[static_cast<std::size_t>(w)]] = 1.0;
      const Eigen::VectorXd v = ldlt.solve(rhs);
      column[static_cast<std::size_t>(w)] = v[reduced[static_cast<std::size_t>(w)]];
    }
  }
  return out;
}

CornerBoundAudit corner_bound_audit(const CellGraph& g) {
  const CornerResistances table = corner_resistances(g);
  const double bound = 2.5 * std::pow(5.0 / 3.0, g.level);
  CornerBoundAudit out;
  out.level = g.level;
  for (int corner_digit = 0; corner_digit < 3; ++corner_digit) {
    const std::size_t ground =
        static_cast<std::size_t>(Word::repeated(corner_digit, g.level).index());
    for (std::size_t w = 0; w < g.words.size(); ++w) {
      if (w == ground) continue;  // R_n(i^n, i^n) excluded
      const double r = table.toward[static_cast<std::size_t>(corner_digit)][w];
      CornerBoundRow row{g.words[w], corner_digit, r, bound, r / bound};
      out.max_ratio = std::max(out.max_ratio, row.ratio);
      out.rows.push_back(std::move(row));
    }
  }
  return out;
}

void write_network_csv(std::ostream& out, const ResistorNetwork& net) {
  out << "i,j,conductance\n";
  char buf[64];
  for (const auto& l : net.links) {
    std::snprintf(buf, sizeof buf, "%.17g", l.conductance);
    out << l.i << ',' << l.j << ',' << buf << '\n';
  }
}

ResistorNetwork read_network_csv(std::istream& in) {
  ResistorNetwork net;
  std::string line;
  if (!std::getline(in, line) || line.rfind("i,j,conductance", 0) != 0)
    throw std::invalid_argument("read_network_csv: missing header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream row(line);
    std::string f1, f2, f3;
    if (!std::getline(row, f1, ',') || !std::getline(row, f2, ',') || !std::getline(row, f3, ','))
      throw std::invalid_argument("read_network_csv: malformed row '" + line + "'");
    ResistorNetwork::Link l{std::stoi(f1), std::stoi(f2), std::stod(f3)};
    net.node_count = std::max({net.node_count, l.i + 1, l.j + 1});
    net.links.push_back(l);
  }
  return net;
}

}  // namespace sgdf
