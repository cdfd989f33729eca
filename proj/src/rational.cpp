#include "schutz/rational.hpp"

#include <cctype>

#include "schutz/errors.hpp"

namespace schutz {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

mpz_class to_mpz(std::int64_t v) {
  // mpz_class has no int64 constructor on every platform; go through text.
  return mpz_class(std::to_string(v));
}

}  // namespace

Rational::Rational(std::int64_t n) : q_(to_mpz(n)) {}

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw InputError("rational with zero denominator");
  q_ = mpq_class(to_mpz(num), to_mpz(den));
  q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  std::string_view num = s;
  std::string_view den = "1";
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    num = s.substr(0, slash);
    den = s.substr(slash + 1);
  }
  if (!all_digits(num) || !all_digits(den)) {
    throw ParseError("malformed rational literal '" + std::string(text) + "'");
  }
  mpz_class n{std::string(num)};
  mpz_class d{std::string(den)};
  if (d == 0) {
    throw ParseError("zero denominator in '" + std::string(text) + "'");
  }
  if (negative) n = -n;
  return Rational(mpq_class(n, d));
}

std::string Rational::str() const {
  if (q_.get_den() == 1) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(q_))); }

bool Rational::is_integer() const { return q_.get_den() == 1; }

Rational Rational::operator-() const { return Rational(mpq_class(-q_)); }

Rational& Rational::operator+=(const Rational& o) {
  q_ += o.q_;
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  q_ -= o.q_;
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  q_ *= o.q_;
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.sign() == 0) throw InputError("division by zero");
  q_ /= o.q_;
  return *this;
}

}  // namespace schutz
