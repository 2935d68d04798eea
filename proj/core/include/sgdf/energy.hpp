#pragma once

#include <cmath>
#include <functional>
#include <iosfwd>
#include <map>
#include <vector>

#include "sgdf/cell_function.hpp"
#include "sgdf/graph.hpp"
#include "sgdf/point.hpp"

namespace sgdf {

// Values on the vertex set V_level, with exact point lookup.
template <class T>
struct VertexFunction {
  int level = 0;
  std::vector<DyadicPoint> points;  // sorted by lex_less
  std::vector<T> values;
  std::map<std::pair<std::int64_t, std::int64_t>, std::size_t> index;

  const T& at(const DyadicPoint& p) const {
    const auto it = index.find(p.scaled(level + 1));
    if (it == index.end())
      throw std::invalid_argument("VertexFunction::at: point not in V_n");
    return values[it->second];
  }
};

template <class T>
VertexFunction<T> make_vertex_function(int level,
                                       const std::function<T(const DyadicPoint&)>& f) {
  VertexFunction<T> out;
  out.level = level;
  out.points = vertex_set(level);
  out.values.reserve(out.points.size());
  for (std::size_t i = 0; i < out.points.size(); ++i) {
    out.values.push_back(f(out.points[i]));
    out.index.emplace(out.points[i].scaled(level + 1), i);
  }
  return out;
}

// Point-evaluable function on the gasket; arguments are exact vertices.
using PointProvider = std::function<double(const DyadicPoint&)>;

template <class T>
struct EnergyPair {
  T raw;     // E_n
  T scaled;  // G_n = (5/3)^n E_n
};

namespace detail {
template <class T>
T scale_factor(int level) {
  if constexpr (std::is_same_v<T, double>)
    return std::pow(5.0 / 3.0, level);
  else
    return pow_frac(frac(5, 3), level);
}
}  // namespace detail

// E_n(u,u) = sum over edges of (u(w1)-u(w2))^2, exact for rational input.
template <class T>
EnergyPair<T> graph_energy(const BasicCellFunction<T>& u, const CellGraph& g) {
  if (u.level != g.level) throw std::invalid_argument("graph_energy: level mismatch");
  T raw{};
  if constexpr (std::is_same_v<T, double>) {
    KahanSum s;
    for (const Edge& e : g.edges) {
      const double d = u.values[e.i1] - u.values[e.i2];
      s.add(d * d);
    }
    raw = s.value();
  } else {
    for (const Edge& e : g.edges) {
      const T d = u.values[e.i1] - u.values[e.i2];
      raw += d * d;
    }
  }
  return {raw, raw * detail::scale_factor<T>(g.level)};
}

template <class T>
struct AnDn {
  T A;  // E_n(P_n u, P_n u)
  T D;  // (5/3)^n A_n
};

template <class T>
AnDn<T> an_dn(const BasicCellFunction<T>& averages, const CellGraph& g) {
  const auto e = graph_energy(averages, g);
  return {e.raw, e.scaled};
}

// Provider route: averages by quadrature, then the graph energy.
AnDn<double> an_dn(const PointProvider& u, const CellGraph& g, int quad_depth);

// P_n u by quadrature: refine each level-n cell to quad_depth and average the
// provider over the three vertices of every leaf cell with equal weights
// (leaf measure 3^-quad_depth). Exact in the limit for continuous u, and
// already exact at any depth for functions whose leaf vertex means equal
// leaf averages (harmonic data).
CellFunction cell_averages(const PointProvider& u, int n, int quad_depth);

// B_n(u) = sum over level-n cells of the squared differences over the three
// unordered vertex pairs of the cell.
template <class T>
T vertex_pair_energy(const VertexFunction<T>& u, int n) {
  T total{};
  KahanSum kahan;
  for_each_cell(n, [&](const Word&, const std::array<DyadicPoint, 3>& vs, const DyadicPoint&) {
    const T* v0 = &u.at(vs[0]);
    const T* v1 = &u.at(vs[1]);
    const T* v2 = &u.at(vs[2]);
    if constexpr (std::is_same_v<T, double>) {
      const double d01 = *v0 - *v1, d12 = *v1 - *v2, d02 = *v0 - *v2;
      kahan.add(d01 * d01);
      kahan.add(d12 * d12);
      kahan.add(d02 * d02);
    } else {
      const T d01 = *v0 - *v1, d12 = *v1 - *v2, d02 = *v0 - *v2;
      total += d01 * d01 + d12 * d12 + d02 * d02;
    }
  });
  if constexpr (std::is_same_v<T, double>) return kahan.value();
  return total;
}

// G_n(M_{n,m} u) / G_{n+m}(u); throws when the denominator vanishes
// (constant input).
double weak_mono_ratio(const CellFunction& u, int n, const CellGraph& g_coarse,
                       const CellGraph& g_fine);

struct EnergyProfile {
  std::vector<double> A;  // A[i] = A_{i+1}
  std::vector<double> D;  // D[i] = D_{i+1}
  double sup_D() const;
};

}  // namespace sgdf
