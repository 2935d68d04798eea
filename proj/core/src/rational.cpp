#include "sgdf/rational.hpp"

#include <cctype>

namespace sgdf {

Rational frac(long num, long den) {
  if (den == 0) throw std::invalid_argument("frac: zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational pow_frac(const Rational& base, long k) {
  if (k == 0) return Rational(1);
  if (k < 0) {
    if (base == 0) throw std::domain_error("pow_frac: zero base with negative exponent");
    Rational inv;
    mpq_inv(inv.get_mpq_t(), base.get_mpq_t());
    return pow_frac(inv, -k);
  }
  Rational out;
  mpz_pow_ui(mpq_numref(out.get_mpq_t()), mpq_numref(base.get_mpq_t()),
             static_cast<unsigned long>(k));
  mpz_pow_ui(mpq_denref(out.get_mpq_t()), mpq_denref(base.get_mpq_t()),
             static_cast<unsigned long>(k));
  // num and den of a canonical rational are coprime, so their powers are too.
  return out;
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("parse_rational: empty input");
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    Rational q;
    if (mpq_set_str(q.get_mpq_t(), text.c_str(), 10) != 0)
      throw std::invalid_argument("parse_rational: bad fraction '" + text + "'");
    if (mpz_sgn(mpq_denref(q.get_mpq_t())) == 0)
      throw std::invalid_argument("parse_rational: zero denominator in '" + text + "'");
    q.canonicalize();
    return q;
  }
  const auto dot = text.find('.');
  if (dot == std::string::npos) {
    Rational q;
    if (mpq_set_str(q.get_mpq_t(), text.c_str(), 10) != 0)
      throw std::invalid_argument("parse_rational: bad integer '" + text + "'");
    q.canonicalize();
    return q;
  }
  // Decimal: digits before and after the dot, denominator a power of ten.
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  const std::size_t frac_len = text.size() - dot - 1;
  if (digits.empty() || digits == "-" || digits == "+")
    throw std::invalid_argument("parse_rational: bad decimal '" + text + "'");
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i == 0 && (digits[i] == '-' || digits[i] == '+')) continue;
    if (!std::isdigit(static_cast<unsigned char>(digits[i])))
      throw std::invalid_argument("parse_rational: bad decimal '" + text + "'");
  }
  mpz_class num(digits, 10);  // explicit base; leading zeros are not octal
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace sgdf
