#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "sgdf/cell_function.hpp"
#include "sgdf/energy.hpp"
#include "sgdf/good_function.hpp"
#include "sgdf/harmonic_spline.hpp"
#include "sgdf/rng.hpp"

namespace sgdf {

// alpha = log3/log2, the Hausdorff dimension.
double hausdorff_dimension();
// beta* = log5/log2, the walk dimension; the series degenerate at and above it.
double walk_dimension();

// D_n supplier for the beta-indexed series. sup_D is exact for harmonic data
// (closed forms), otherwise the observed maximum; the truncation certificate
// folds the weak-monotonicity factor 36 into the tail majorant when the sup
// is only observed.
struct ProfileSource {
  std::function<double(int)> Dn;  // n >= 1
  int max_level = 0;              // largest n Dn may be asked for
  double sup_D = 0.0;
  bool sup_exact = false;
};
ProfileSource profile_source(const GoodFunction& U);
ProfileSource profile_source(const HarmonicSpline& u);
ProfileSource profile_source(const EnergyProfile& profile);

// One evaluation of the series E_beta = sum_n 2^{(beta-beta*)n} D_n with a
// geometric tail bound. `certified` reports whether the tail bound dropped
// below rel_tol * partial sum before max_level ran out.
struct BetaSeries {
  double alpha = 0.0;
  double beta_star = 0.0;
  double beta = 0.0;
  double value = 0.0;
  double tail_bound = 0.0;
  int levels_used = 0;
  bool certified = false;
  std::vector<double> partial;  // running partial sums (first 100000 levels)
};
BetaSeries discrete_Ebeta(const ProfileSource& src, double beta, double rel_tol);

// Pair quadrature over level-m cells: anchors, exact squared anchor
// distances, and the leaf averages at m and m+1. Pairs with coincident
// anchors are refined one level, with coincident sub-anchors excluded.
class BesovGrid {
 public:
  explicit BesovGrid(int m);  // 9^m pair terms; m capped by pair_budget

  int depth() const { return m_; }

  // Squared average differences bucketed by exact squared anchor distance;
  // one pass serves every beta.
  struct PairBuckets {
    std::map<std::int64_t, double> at_m;     // unordered off-diagonal pairs
    std::map<std::int64_t, double> refined;  // ordered sub-pairs of d=0 pairs
  };
  PairBuckets bucket_pairs(const std::vector<double>& avg_m,
                           const std::vector<double>& avg_m1) const;

  // Stable-like double integral with kernel |x-y|^-(alpha+beta).
  double double_integral(const PairBuckets& buckets, double beta) const;
  double double_integral(const std::vector<double>& avg_m,
                         const std::vector<double>& avg_m1, double beta) const;

  struct Seminorms {
    double b22 = 0.0;
    double b2inf = 0.0;
    std::vector<double> level_terms;  // weighted term per n = 1..n_max
  };
  // Metric-measure Besov sums restricted to pairs with d < 2^-n, n <= n_max.
  Seminorms metric_seminorms(const std::vector<double>& avg_m, double beta, int n_max) const;

  static int pair_budget_max_depth();  // largest accepted m

 private:
  int m_;
  std::vector<std::pair<std::int64_t, std::int64_t>> anchors_m_;   // scaled 2^m
  std::vector<std::pair<std::int64_t, std::int64_t>> anchors_m1_;  // scaled 2^(m+1)
};

double double_integral_Ebeta(const HarmonicSpline& u, double beta, int depth);
double double_integral_Ebeta(const PointProvider& u, double beta, int depth);

BesovGrid::Seminorms metric_besov_seminorms(const HarmonicSpline& u, double beta, int depth,
                                            int n_max);
BesovGrid::Seminorms metric_besov_seminorms(const PointProvider& u, double beta, int depth,
                                            int n_max);

// (beta*-beta) E_beta along a grid of offsets; the asserted half of the Abel
// sandwich is value*log2 <= sup D_n (1 + tol).
struct ProbeRow {
  double beta = 0.0;
  double eps = 0.0;
  double value = 0.0;        // (beta*-beta) E_beta
  double value_log2 = 0.0;   // value * log 2
  double sup_D = 0.0;
  bool certified = false;
  bool pass = false;
};
std::vector<ProbeRow> abel_probe(const ProfileSource& src, const std::vector<double>& eps_list,
                                 double series_rel_tol = 1e-6, double verdict_tol = 1e-9);
const std::vector<double>& default_eps_grid();  // {1e-1, 3e-2, 1e-2, 3e-3, 1e-3}

// Continuity bound machinery.
double holder_constant(double beta);                     // c of the explicit bound
double holder_F(const GoodFunction& U, double beta);     // sup_n 2^{(beta-alpha)n} A_n
struct HolderAudit {
  double beta = 0.0;
  double c = 0.0;
  double F = 0.0;
  double max_ratio = 0.0;
  std::size_t pairs = 0;
};
HolderAudit holder_audit(const GoodFunction& U, double beta, std::size_t pair_count,
                         int max_level, Rng& rng);

// Hat-energy sandwich: D_n <= 6 hat^(n) and hat^(n) <= 3 c^2 36 sup_k D_k,
// with c taken at beta = beta*.
struct HatSandwich {
  double ebar = 0.0;    // hat^(n)
  double cesaro = 0.0;  // mean of hat^(1..n)
  double Dn = 0.0;
  double sup_D = 0.0;
  double lower_lhs = 0.0, lower_rhs = 0.0;  // D_n vs 6 hat^(n)
  double upper_lhs = 0.0, upper_rhs = 0.0;  // hat^(n) vs 3 c^2 36 sup_D
  bool lower_ok = false, upper_ok = false;
};
HatSandwich hat_energy_sandwich(const HarmonicSpline& u, int n);

// (5/3)^n sum_w D_k(u o f_w) <= D_{n+k}(u); the slack is exactly the scaled
// energy of the edges joining distinct level-n blocks.
template <class T>
struct DecompAudit {
  T lhs;
  T rhs;
  T slack;
  T interface_energy;
};
DecompAudit<Rational> self_similar_decomp(const RationalCellFunction& u, int n, int k,
                                          const CellGraph& g_fine, const CellGraph& g_block);
DecompAudit<double> self_similar_decomp(const CellFunction& u, int n, int k,
                                        const CellGraph& g_fine, const CellGraph& g_block);

}  // namespace sgdf
