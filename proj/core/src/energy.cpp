#include "sgdf/energy.hpp"

#include <stdexcept>

namespace sgdf {

CellFunction cell_averages(const PointProvider& u, int n, int quad_depth) {
  if (quad_depth < n)
    throw std::invalid_argument("cell_averages: quad_depth must be >= level");
  CellFunction leaf;
  leaf.level = quad_depth;
  leaf.values.resize(word_count(quad_depth));
  for_each_cell(quad_depth,
                [&](const Word& w, const std::array<DyadicPoint, 3>& vs, const DyadicPoint&) {
                  leaf.values[static_cast<std::size_t>(w.index())] =
                      (u(vs[0]) + u(vs[1]) + u(vs[2])) / 3.0;
                });
  if (quad_depth == n) return leaf;
  return mean_value(leaf, n);
}

AnDn<double> an_dn(const PointProvider& u, const CellGraph& g, int quad_depth) {
  return an_dn(cell_averages(u, g.level, quad_depth), g);
}

double weak_mono_ratio(const CellFunction& u, int n, const CellGraph& g_coarse,
                       const CellGraph& g_fine) {
  if (g_coarse.level != n || g_fine.level != u.level || u.level <= n)
    throw std::invalid_argument("weak_mono_ratio: inconsistent levels");
  const double g_nm = graph_energy(u, g_fine).scaled;
  if (g_nm == 0.0)
    throw std::domain_error("weak_mono_ratio: constant input, zero fine energy");
  const CellFunction coarse = mean_value(u, n);
  const double g_n = graph_energy(coarse, g_coarse).scaled;
  return g_n / g_nm;
}

double EnergyProfile::sup_D() const {
  double s = 0.0;
  for (double d : D) s = std::max(s, d);
  return s;
}

}  // namespace sgdf
