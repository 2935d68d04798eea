#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sgdf {

// Address of a cell: a digit string over {0,1,2}. The empty word addresses
// the whole gasket. On words of equal level, lexicographic order coincides
// with the numeric order of the base-3 index, which is the canonical cell
// indexing 0..3^n-1 used everywhere below.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<std::uint8_t> digits);

  // "" or a string of '0','1','2'.
  static Word parse(const std::string& text);
  static Word from_index(int level, std::uint64_t index);
  // i^n: digit repeated n times.
  static Word repeated(int digit, int level);

  int level() const { return static_cast<int>(digits_.size()); }
  bool empty() const { return digits_.empty(); }
  int digit(int i) const { return digits_[static_cast<std::size_t>(i)]; }
  int last() const;
  std::uint64_t index() const;

  Word prefix(int k) const;
  Word parent() const;  // w^-
  Word concat(const Word& tail) const;
  Word child(int digit) const;

  std::string str() const;

  const std::vector<std::uint8_t>& digits() const { return digits_; }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  std::vector<std::uint8_t> digits_;
};

std::uint64_t word_count(int level);  // 3^n
std::vector<Word> all_words(int level);

}  // namespace sgdf
