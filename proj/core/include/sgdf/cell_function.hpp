#pragma once

#include <stdexcept>
#include <type_traits>
#include <vector>

#include "sgdf/kahan.hpp"
#include "sgdf/rational.hpp"
#include "sgdf/word.hpp"

namespace sgdf {

// A function on W_level: one value per cell, in canonical word order.
template <class T>
struct BasicCellFunction {
  int level = 0;
  std::vector<T> values;

  static BasicCellFunction constant(int level, const T& c) {
    return {level, std::vector<T>(word_count(level), c)};
  }

  const T& at(const Word& w) const {
    if (w.level() != level) throw std::invalid_argument("CellFunction::at: level mismatch");
    return values[static_cast<std::size_t>(w.index())];
  }

  bool size_ok() const { return values.size() == word_count(level); }
};

using CellFunction = BasicCellFunction<double>;
using RationalCellFunction = BasicCellFunction<Rational>;

namespace detail {
template <class T>
T block_mean(const std::vector<T>& v, std::size_t begin, std::size_t count) {
  if constexpr (std::is_same_v<T, double>) {
    KahanSum s;
    for (std::size_t i = 0; i < count; ++i) s.add(v[begin + i]);
    return s.value() / static_cast<double>(count);
  } else {
    T s{};
    for (std::size_t i = 0; i < count; ++i) s += v[begin + i];
    return s / T(static_cast<long>(count));
  }
}
}  // namespace detail

// M_{n,m}: level-(n+m) values averaged down to level n. Cells below a word
// form a contiguous block in canonical order.
template <class T>
BasicCellFunction<T> mean_value(const BasicCellFunction<T>& u, int target_level) {
  if (target_level < 0 || target_level >= u.level)
    throw std::invalid_argument("mean_value: target level must be in [0, level)");
  const std::size_t block = word_count(u.level - target_level);
  BasicCellFunction<T> out;
  out.level = target_level;
  const std::size_t n = word_count(target_level);
  out.values.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    out.values.push_back(detail::block_mean(u.values, i * block, block));
  return out;
}

// The block of cells prefixed by w, reindexed at level u.level - |w|;
// represents P_{N-n}(u o f_w).
template <class T>
BasicCellFunction<T> restrict_to(const BasicCellFunction<T>& u, const Word& w) {
  if (w.level() > u.level) throw std::invalid_argument("restrict_to: word deeper than function");
  const std::size_t block = word_count(u.level - w.level());
  const std::size_t begin = static_cast<std::size_t>(w.index()) * block;
  BasicCellFunction<T> out;
  out.level = u.level - w.level();
  out.values.assign(u.values.begin() + static_cast<std::ptrdiff_t>(begin),
                    u.values.begin() + static_cast<std::ptrdiff_t>(begin + block));
  return out;
}

inline CellFunction to_double(const RationalCellFunction& u) {
  CellFunction out;
  out.level = u.level;
  out.values.reserve(u.values.size());
  for (const auto& q : u.values) out.values.push_back(to_double(q));
  return out;
}

}  // namespace sgdf
