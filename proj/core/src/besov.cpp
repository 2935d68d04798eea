#include "sgdf/besov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "sgdf/kahan.hpp"
#include "sgdf/point.hpp"

namespace sgdf {

double hausdorff_dimension() {
  static const double a = std::log(3.0) / std::log(2.0);
  return a;
}

double walk_dimension() {
  static const double b = std::log(5.0) / std::log(2.0);
  return b;
}

ProfileSource profile_source(const GoodFunction& U) {
  const double S = to_double(U.energy_seed());
  ProfileSource src;
  src.Dn = [S](int n) { return (2.0 / 3.0) * (1.0 - std::pow(0.6, n)) * S; };
  src.max_level = std::numeric_limits<int>::max() / 2;
  src.sup_D = (2.0 / 3.0) * S;
  src.sup_exact = true;
  return src;
}

ProfileSource profile_source(const HarmonicSpline& u) {
  const int L = u.level();
  std::vector<double> head(static_cast<std::size_t>(L) + 1, 0.0);
  for (int n = 1; n <= L; ++n) head[static_cast<std::size_t>(n)] = to_double(u.D_exact(n));
  const double d_leaf = (L >= 1) ? head[static_cast<std::size_t>(L)] : 0.0;
  const double limit = to_double(u.D_limit());
  ProfileSource src;
  src.Dn = [L, head, d_leaf, limit](int n) {
    if (n <= L) return head[static_cast<std::size_t>(n)];
    const double shrink = std::pow(0.6, n - L);
    return limit * (1.0 - shrink) + shrink * d_leaf;
  };
  src.max_level = std::numeric_limits<int>::max() / 2;
  src.sup_D = to_double(u.sup_D());
  src.sup_exact = true;
  return src;
}

ProfileSource profile_source(const EnergyProfile& profile) {
  ProfileSource src;
  const std::vector<double> D = profile.D;
  src.Dn = [D](int n) { return D.at(static_cast<std::size_t>(n - 1)); };
  src.max_level = static_cast<int>(D.size());
  src.sup_D = profile.sup_D();
  src.sup_exact = false;
  return src;
}

BetaSeries discrete_Ebeta(const ProfileSource& src, double beta, double rel_tol) {
  const double alpha = hausdorff_dimension();
  const double bstar = walk_dimension();
  if (!(beta > alpha) || !(beta < bstar))
    throw std::domain_error("discrete_Ebeta: beta must lie in (alpha, beta*)");
  if (!(rel_tol > 0)) throw std::invalid_argument("discrete_Ebeta: rel_tol must be positive");

  BetaSeries out;
  out.alpha = alpha;
  out.beta_star = bstar;
  out.beta = beta;

  const double q = std::pow(2.0, beta - bstar);  // in (0,1)
  // Tail majorant: exact sup when available, otherwise the observed sup
  // inflated by the weak-monotonicity constant.
  const double majorant = src.sup_exact ? src.sup_D : 36.0 * src.sup_D;

  KahanSum sum;
  double weight = 1.0;
  // Depth needed scales like 1/(beta*-beta); past the cap the result is
  // returned uncertified rather than looping for minutes.
  const int cap = std::min(src.max_level, 20'000'000);
  for (int n = 1; n <= cap; ++n) {
    weight *= q;
    sum.add(weight * src.Dn(n));
    if (n <= 100000) out.partial.push_back(sum.value());
    out.levels_used = n;
    out.tail_bound = majorant * weight * q / (1.0 - q);
    const double scale = std::max(sum.value(), 0.0);
    if (out.tail_bound <= rel_tol * std::max(scale, std::numeric_limits<double>::min())) {
      out.certified = true;
      break;
    }
    // Zero profile: nothing more can accrue.
    if (majorant == 0.0 && sum.value() == 0.0) {
      out.certified = true;
      break;
    }
  }
  out.value = sum.value();
  return out;
}

int BesovGrid::pair_budget_max_depth() { return 8; }

BesovGrid::BesovGrid(int m) : m_(m) {
  if (m < 1) throw std::invalid_argument("BesovGrid: depth must be >= 1");
  if (m > pair_budget_max_depth())
    throw std::invalid_argument("BesovGrid: pair budget exceeded");
  anchors_m_.resize(word_count(m));
  anchors_m1_.resize(word_count(m + 1));
  for_each_cell(m, [&](const Word& w, const std::array<DyadicPoint, 3>&, const DyadicPoint& a) {
    anchors_m_[static_cast<std::size_t>(w.index())] = a.scaled(m + 1);
  });
  for_each_cell(m + 1,
                [&](const Word& w, const std::array<DyadicPoint, 3>&, const DyadicPoint& a) {
                  anchors_m1_[static_cast<std::size_t>(w.index())] = a.scaled(m + 2);
                });
}

namespace {

inline std::int64_t key_of(const std::pair<std::int64_t, std::int64_t>& p,
                           const std::pair<std::int64_t, std::int64_t>& q) {
  const std::int64_t da = p.first - q.first;
  const std::int64_t db = p.second - q.second;
  return da * da + 3 * db * db;  // squared distance scaled by 4^level
}

}  // namespace

BesovGrid::PairBuckets BesovGrid::bucket_pairs(const std::vector<double>& avg_m,
                                               const std::vector<double>& avg_m1) const {
  const std::size_t cells = anchors_m_.size();
  if (avg_m.size() != cells || avg_m1.size() != anchors_m1_.size())
    throw std::invalid_argument("BesovGrid: average vector size mismatch");

  PairBuckets out;
  std::vector<std::pair<std::size_t, std::size_t>> coincident;  // includes (v,v)
  for (std::size_t v = 0; v < cells; ++v) coincident.emplace_back(v, v);
  // Hash accumulation first, sorted buckets after: the pair loop dominates
  // and ordered inserts are what make it slow.
  std::unordered_map<std::int64_t, double> scratch;
  scratch.reserve(1 << 16);
  for (std::size_t i = 0; i < cells; ++i) {
    for (std::size_t j = i + 1; j < cells; ++j) {
      const std::int64_t key = key_of(anchors_m_[i], anchors_m_[j]);
      if (key == 0) {
        coincident.emplace_back(i, j);
        continue;
      }
      const double d = avg_m[i] - avg_m[j];
      scratch[key] += d * d;
    }
  }
  out.at_m.insert(scratch.begin(), scratch.end());
  // Pairs at zero anchor distance: refine one level inside each cell and
  // drop coincident sub-anchors.
  for (const auto& [i, j] : coincident) {
    const double factor = (i == j) ? 1.0 : 2.0;  // ordered pairs
    for (int ci = 0; ci < 3; ++ci) {
      for (int cj = 0; cj < 3; ++cj) {
        const std::size_t a = 3 * i + static_cast<std::size_t>(ci);
        const std::size_t b = 3 * j + static_cast<std::size_t>(cj);
        if (a == b) continue;
        const std::int64_t key = key_of(anchors_m1_[a], anchors_m1_[b]);
        if (key == 0) continue;
        const double d = avg_m1[a] - avg_m1[b];
        out.refined[key] += factor * d * d;
      }
    }
  }
  return out;
}

double BesovGrid::double_integral(const PairBuckets& buckets, double beta) const {
  const double p = (hausdorff_dimension() + beta) / 2.0;  // exponent on d^2
  KahanSum total;
  // Keys carry squared distances scaled by 4^(m+1) / 4^(m+2) respectively.
  const double scale_m =
      std::pow(4.0, static_cast<double>(m_ + 1) * p) / std::pow(9.0, m_);
  for (const auto& [key, s2] : buckets.at_m)
    total.add(2.0 * s2 * std::pow(static_cast<double>(key), -p) * scale_m);
  const double scale_m1 =
      std::pow(4.0, static_cast<double>(m_ + 2) * p) / std::pow(9.0, m_ + 1);
  for (const auto& [key, s2] : buckets.refined)
    total.add(s2 * std::pow(static_cast<double>(key), -p) * scale_m1);
  return total.value();
}

double BesovGrid::double_integral(const std::vector<double>& avg_m,
                                  const std::vector<double>& avg_m1, double beta) const {
  return double_integral(bucket_pairs(avg_m, avg_m1), beta);
}

BesovGrid::Seminorms BesovGrid::metric_seminorms(const std::vector<double>& avg_m, double beta,
                                                 int n_max) const {
  const std::size_t cells = anchors_m_.size();
  if (avg_m.size() != cells)
    throw std::invalid_argument("BesovGrid::metric_seminorms: average vector size mismatch");
  if (n_max < 1 || n_max > m_)
    throw std::invalid_argument("BesovGrid::metric_seminorms: need 1 <= n_max <= depth");

  // add[n] collects pairs whose deepest qualifying scale is n; S_n is then a
  // suffix sum. Pairs at zero distance qualify at every scale.
  std::vector<double> add(static_cast<std::size_t>(n_max) + 1, 0.0);
  for (std::size_t i = 0; i < cells; ++i) {
    for (std::size_t j = i + 1; j < cells; ++j) {
      const std::int64_t key = key_of(anchors_m_[i], anchors_m_[j]);
      const double d = avg_m[i] - avg_m[j];
      const double w = 2.0 * d * d;  // ordered pairs
      // key = d^2 * 4^(m+1); d < 2^-n iff key < 4^(m+1-n).
      int deepest = 0;
      std::int64_t threshold = std::int64_t(1) << (2 * m_);
      while (deepest < n_max && key < threshold) {
        ++deepest;
        threshold >>= 2;
      }
      if (deepest > 0) add[static_cast<std::size_t>(deepest)] += w;
    }
  }

  Seminorms out;
  out.level_terms.assign(static_cast<std::size_t>(n_max), 0.0);
  const double ab = hausdorff_dimension() + beta;
  const double measure = std::pow(9.0, -m_);
  double running = 0.0;
  KahanSum b22;
  for (int n = n_max; n >= 1; --n) {
    running += add[static_cast<std::size_t>(n)];
    const double term = std::pow(2.0, ab * n) * running * measure;
    out.level_terms[static_cast<std::size_t>(n - 1)] = term;
    b22.add(term);
    out.b2inf = std::max(out.b2inf, term);
  }
  out.b22 = b22.value();
  return out;
}

double double_integral_Ebeta(const HarmonicSpline& u, double beta, int depth) {
  const BesovGrid grid(depth);
  const CellFunction avg_m1 = to_double(u.averages(depth + 1));
  const CellFunction avg_m = mean_value(avg_m1, depth);
  return grid.double_integral(avg_m.values, avg_m1.values, beta);
}

double double_integral_Ebeta(const PointProvider& u, double beta, int depth) {
  const BesovGrid grid(depth);
  const CellFunction avg_m1 = cell_averages(u, depth + 1, depth + 1);
  const CellFunction avg_m = mean_value(avg_m1, depth);
  return grid.double_integral(avg_m.values, avg_m1.values, beta);
}

BesovGrid::Seminorms metric_besov_seminorms(const HarmonicSpline& u, double beta, int depth,
                                            int n_max) {
  const BesovGrid grid(depth);
  return grid.metric_seminorms(to_double(u.averages(depth)).values, beta, n_max);
}

BesovGrid::Seminorms metric_besov_seminorms(const PointProvider& u, double beta, int depth,
                                            int n_max) {
  const BesovGrid grid(depth);
  return grid.metric_seminorms(cell_averages(u, depth, depth).values, beta, n_max);
}

const std::vector<double>& default_eps_grid() {
  static const std::vector<double> grid = {1e-1, 3e-2, 1e-2, 3e-3, 1e-3};
  return grid;
}

std::vector<ProbeRow> abel_probe(const ProfileSource& src, const std::vector<double>& eps_list,
                                 double series_rel_tol, double verdict_tol) {
  const double bstar = walk_dimension();
  std::vector<ProbeRow> rows;
  rows.reserve(eps_list.size());
  for (double eps : eps_list) {
    if (!(eps > 0)) throw std::invalid_argument("abel_probe: eps must be positive");
    const double beta = bstar - eps;
    const BetaSeries series = discrete_Ebeta(src, beta, series_rel_tol);
    ProbeRow row;
    row.beta = beta;
    row.eps = eps;
    row.value = eps * series.value;
    row.value_log2 = row.value * std::log(2.0);
    row.sup_D = src.sup_D;
    row.certified = series.certified;
    row.pass = row.value >= 0.0 && row.value_log2 <= src.sup_D * (1.0 + verdict_tol);
    rows.push_back(row);
  }
  return rows;
}

double holder_constant(double beta) {
  const double alpha = hausdorff_dimension();
  if (!(beta > alpha)) throw std::domain_error("holder_constant: beta must exceed alpha");
  const double h = (beta - alpha) / 2.0;
  const double two_h = std::pow(2.0, h);
  return std::pow(2.0 / std::sqrt(3.0), h) *
         ((2.0 * std::sqrt(2.0) / 3.0) * two_h / (two_h - 1.0) + two_h);
}

double holder_F(const GoodFunction& U, double beta) {
  const double alpha = hausdorff_dimension();
  const double bstar = walk_dimension();
  if (!(beta > alpha)) throw std::domain_error("holder_F: beta must exceed alpha");
  if (beta > bstar + 1e-12)
    throw std::domain_error("holder_F: sup diverges above the walk dimension");
  const double S = to_double(U.energy_seed());
  if (beta >= bstar - 1e-15) return (2.0 / 3.0) * S;  // sup_n D_n
  const double q = std::pow(2.0, beta - bstar);
  double best = 0.0;
  double weight = 1.0;
  for (int n = 1; n <= 10000; ++n) {
    weight *= q;
    best = std::max(best, weight * (2.0 / 3.0) * (1.0 - std::pow(0.6, n)) * S);
    if (weight * (2.0 / 3.0) * S < best) break;  // terms can no longer grow
  }
  return best;
}

HolderAudit holder_audit(const GoodFunction& U, double beta, std::size_t pair_count,
                         int max_level, Rng& rng) {
  HolderAudit out;
  out.beta = beta;
  out.c = holder_constant(beta);
  out.F = holder_F(U, beta);
  const double h = (beta - hausdorff_dimension()) / 2.0;
  const double scale = out.c * std::sqrt(out.F);

  const auto random_vertex = [&]() {
    const int level = static_cast<int>(rng.integer(1, max_level));
    std::vector<std::uint8_t> digits(static_cast<std::size_t>(level));
    for (auto& d : digits) d = static_cast<std::uint8_t>(rng.below(3));
    return Word(std::move(digits));
  };

  while (out.pairs < pair_count) {
    const Word wx = random_vertex();
    const Word wy = random_vertex();
    const DyadicPoint px = cell_anchor(wx);
    const DyadicPoint py = cell_anchor(wy);
    if (px == py) continue;
    const double du = std::abs(to_double(evaluate(U, wx)) - to_double(evaluate(U, wy)));
    const double dist = px.distance_to(py);
    const double ratio = du / (scale * std::pow(dist, h));
    out.max_ratio = std::max(out.max_ratio, ratio);
    ++out.pairs;
  }
  return out;
}

HatSandwich hat_energy_sandwich(const HarmonicSpline& u, int n) {
  if (n < 1) throw std::invalid_argument("hat_energy_sandwich: n must be >= 1");
  HatSandwich out;
  KahanSum cesaro;
  for (int l = 1; l <= n; ++l) {
    const double e = to_double(u.hat_energy(l));
    cesaro.add(e);
    if (l == n) out.ebar = e;
  }
  out.cesaro = cesaro.value() / n;
  out.Dn = to_double(u.D_exact(n));
  out.sup_D = to_double(u.sup_D());
  const double c = holder_constant(walk_dimension());
  out.lower_lhs = out.Dn;
  out.lower_rhs = 6.0 * out.ebar;
  out.upper_lhs = out.ebar;
  out.upper_rhs = 3.0 * c * c * 36.0 * out.sup_D;
  const double slack = 1e-12;
  out.lower_ok = out.lower_lhs <= out.lower_rhs * (1.0 + slack) + slack;
  out.upper_ok = out.upper_lhs <= out.upper_rhs * (1.0 + slack) + slack;
  return out;
}

namespace {

template <class T>
DecompAudit<T> decomp_impl(const BasicCellFunction<T>& u, int n, int k, const CellGraph& g_fine,
                           const CellGraph& g_block) {
  if (u.level != n + k || g_fine.level != n + k || g_block.level != k)
    throw std::invalid_argument("self_similar_decomp: inconsistent levels");
  DecompAudit<T> out{};

  // (5/3)^n sum over blocks of D_k(u o f_w).
  if constexpr (std::is_same_v<T, double>) {
    KahanSum lhs;
    for (const Word& w : all_words(n))
      lhs.add(graph_energy(restrict_to(u, w), g_block).scaled);
    out.lhs = lhs.value() * std::pow(5.0 / 3.0, n);
  } else {
    T lhs{};
    for (const Word& w : all_words(n)) lhs += graph_energy(restrict_to(u, w), g_block).scaled;
    out.lhs = lhs * pow_frac(frac(5, 3), n);
  }

  out.rhs = graph_energy(u, g_fine).scaled;

  // Edges joining distinct level-n blocks carry the gap.
  if constexpr (std::is_same_v<T, double>) {
    KahanSum inter;
    for (const Edge& e : g_fine.edges) {
      if (e.w1.prefix(n) == e.w2.prefix(n)) continue;
      const double d = u.values[e.i1] - u.values[e.i2];
      inter.add(d * d);
    }
    out.interface_energy = inter.value() * std::pow(5.0 / 3.0, n + k);
  } else {
    T inter{};
    for (const Edge& e : g_fine.edges) {
      if (e.w1.prefix(n) == e.w2.prefix(n)) continue;
      const T d = u.values[e.i1] - u.values[e.i2];
      inter += d * d;
    }
    out.interface_energy = inter * pow_frac(frac(5, 3), n + k);
  }

  out.slack = out.rhs - out.lhs;
  return out;
}

}  // namespace

DecompAudit<Rational> self_similar_decomp(const RationalCellFunction& u, int n, int k,
                                          const CellGraph& g_fine, const CellGraph& g_block) {
  return decomp_impl(u, n, k, g_fine, g_block);
}

DecompAudit<double> self_similar_decomp(const CellFunction& u, int n, int k,
                                        const CellGraph& g_fine, const CellGraph& g_block) {
  return decomp_impl(u, n, k, g_fine, g_block);
}

}  // namespace sgdf
