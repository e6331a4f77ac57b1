#include "ultra/rational.hpp"

#include <cctype>

#include "ultra/errors.hpp"

namespace ultra {

Rational::Rational(long num, long den) {
  if (den == 0) throw ArgError("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  size_t b = 0;
  size_t e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  std::string_view t = text.substr(b, e - b);

  auto bad = [&] { throw ParseError("malformed rational '" + std::string(text) + "'"); };
  if (t.empty()) bad();

  size_t i = 0;
  if (t[i] == '-') ++i;
  size_t digits = 0;
  while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) ++i, ++digits;
  if (digits == 0) bad();
  if (i < t.size()) {
    if (t[i] != '/') bad();
    ++i;
    size_t den_digits = 0;
    while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) ++i, ++den_digits;
    if (den_digits == 0 || i != t.size()) bad();
  }

  mpq_class q;
  if (q.set_str(std::string(t), 10) != 0) bad();
  if (q.get_den() == 0) throw ParseError("rational with zero denominator '" + std::string(text) + "'");
  q.canonicalize();
  return Rational(std::move(q));
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw ArgError("division by zero");
  return Rational(mpq_class(a.v_ / b.v_));
}

Rational Rational::pow(const Rational& base, unsigned long e) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.v_.get_num().get_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.v_.get_den().get_mpz_t(), e);
  mpq_class q(num);
  q /= mpq_class(den);
  return Rational(std::move(q));
}

Rational Rational::inverse_pow(const mpz_class& p, unsigned long e) {
  if (p < 1) throw ArgError("inverse_pow base must be >= 1");
  mpz_class den;
  mpz_pow_ui(den.get_mpz_t(), p.get_mpz_t(), e);
  mpq_class q(1);
  q /= mpq_class(den);
  return Rational(std::move(q));
}

}  // namespace ultra
