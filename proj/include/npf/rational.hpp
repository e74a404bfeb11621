#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

namespace npf {

// Exact rational number. Values that fit a reduced int64 fraction stay inline;
// anything larger moves to a GMP rational.
class Rational {
public:
  Rational() = default;
  Rational(std::int64_t n) : num_(n) {}
  Rational(int n) : num_(n) {}
  Rational(std::int64_t n, std::int64_t d);
  explicit Rational(const mpq_class& q);
  explicit Rational(const mpz_class& z);

  Rational(const Rational& o);
  Rational(Rational&&) noexcept = default;
  Rational& operator=(const Rational& o);
  Rational& operator=(Rational&&) noexcept = default;

  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
  bool is_integer() const;
  bool is_small() const { return !big_; }
  int sign() const;

  // Only meaningful when is_small().
  std::int64_t small_num() const { return num_; }
  std::int64_t small_den() const { return den_; }

  mpq_class to_mpq() const;
  mpz_class numerator() const;
  mpz_class denominator() const;

  std::string str() const;
  // Accepts "n", "-n", "n/d".
  static Rational parse(std::string_view s);

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b);
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  std::size_t hash() const;

private:
  void set_big(mpq_class q);
  void demote();

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Rational abs(const Rational& r);

}  // namespace npf
