#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace schutz {

// Exact rational number. Always kept in lowest terms with a positive
// denominator, so textual form and equality are canonical.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t n);  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t num, std::int64_t den);

  // Accepts "n", "-n", "p/q", "-p/q" (optionally with a leading '+').
  static Rational parse(std::string_view text);

  std::string str() const;
  int sign() const { return sgn(q_); }
  Rational abs() const;
  bool is_integer() const;
  const mpq_class& raw() const { return q_; }

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return cmp(a.q_, b.q_) == 0;
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater
                          : std::strong_ordering::equal);
  }

 private:
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }
  mpq_class q_{0};
};

inline const Rational& min(const Rational& a, const Rational& b) {
  return b < a ? b : a;
}
inline const Rational& max(const Rational& a, const Rational& b) {
  return a < b ? b : a;
}

}  // namespace schutz
