#include "sgdf/word.hpp"

#include <stdexcept>

namespace sgdf {

namespace {
void check_digit(int d) {
  if (d < 0 || d > 2) throw std::invalid_argument("Word: digit outside {0,1,2}");
}
}  // namespace

Word::Word(std::vector<std::uint8_t> digits) : digits_(std::move(digits)) {
  for (auto d : digits_) check_digit(d);
}

Word Word::parse(const std::string& text) {
  std::vector<std::uint8_t> digits;
  digits.reserve(text.size());
  for (char c : text) {
    if (c < '0' || c > '2') throw std::invalid_argument("Word::parse: bad digit in '" + text + "'");
    digits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return Word(std::move(digits));
}

Word Word::from_index(int level, std::uint64_t index) {
  if (level < 0) throw std::invalid_argument("Word::from_index: negative level");
  std::vector<std::uint8_t> digits(static_cast<std::size_t>(level));
  for (int i = level - 1; i >= 0; --i) {
    digits[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(index % 3);
    index /= 3;
  }
  if (index != 0) throw std::invalid_argument("Word::from_index: index out of range");
  return Word(std::move(digits));
}

Word Word::repeated(int digit, int level) {
  check_digit(digit);
  if (level < 0) throw std::invalid_argument("Word::repeated: negative level");
  return Word(std::vector<std::uint8_t>(static_cast<std::size_t>(level),
                                        static_cast<std::uint8_t>(digit)));
}

int Word::last() const {
  if (empty()) throw std::logic_error("Word::last: empty word");
  return digits_.back();
}

std::uint64_t Word::index() const {
  std::uint64_t idx = 0;
  for (auto d : digits_) idx = idx * 3 + d;
  return idx;
}

Word Word::prefix(int k) const {
  if (k < 0 || k > level()) throw std::invalid_argument("Word::prefix: bad length");
  return Word(std::vector<std::uint8_t>(digits_.begin(), digits_.begin() + k));
}

Word Word::parent() const { return prefix(level() - 1); }

Word Word::concat(const Word& tail) const {
  std::vector<std::uint8_t> digits = digits_;
  digits.insert(digits.end(), tail.digits_.begin(), tail.digits_.end());
  return Word(std::move(digits));
}

Word Word::child(int digit) const {
  check_digit(digit);
  std::vector<std::uint8_t> digits = digits_;
  digits.push_back(static_cast<std::uint8_t>(digit));
  return Word(std::move(digits));
}

std::string Word::str() const {
  std::string s;
  s.reserve(digits_.size());
  for (auto d : digits_) s.push_back(static_cast<char>('0' + d));
  return s;
}

std::uint64_t word_count(int level) {
  if (level < 0) throw std::invalid_argument("word_count: negative level");
  std::uint64_t n = 1;
  for (int i = 0; i < level; ++i) n *= 3;
  return n;
}

std::vector<Word> all_words(int level) {
  const std::uint64_t count = word_count(level);
  std::vector<Word> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) out.push_back(Word::from_index(level, i));
  return out;
}

}  // namespace sgdf
