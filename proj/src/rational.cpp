#include "npf/rational.hpp"

#include <limits>
#include <ostream>
#include <stdexcept>

namespace npf {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

u128 uabs(i128 v) { return v < 0 ? static_cast<u128>(-v) : static_cast<u128>(v); }

bool fits64(i128 v) {
  return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
}

mpz_class to_mpz(i128 v) {
  bool neg = v < 0;
  u128 u = uabs(v);
  mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

mpz_class to_mpz64(std::int64_t v) { return to_mpz(static_cast<i128>(v)); }

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw std::domain_error("rational with zero denominator");
  i128 nn = n, dd = d;
  if (dd < 0) {
    nn = -nn;
    dd = -dd;
  }
  u128 g = gcd128(uabs(nn), static_cast<u128>(dd));
  if (g > 1) {
    nn /= static_cast<i128>(g);
    dd /= static_cast<i128>(g);
  }
  if (fits64(nn) && fits64(dd)) {
    num_ = static_cast<std::int64_t>(nn);
    den_ = static_cast<std::int64_t>(dd);
  } else {
    set_big(mpq_class(to_mpz(nn), to_mpz(dd)));
  }
}

Rational::Rational(const mpq_class& q) {
  mpq_class c = q;
  c.canonicalize();
  set_big(std::move(c));
}

Rational::Rational(const mpz_class& z) { set_big(mpq_class(z)); }

Rational::Rational(const Rational& o) : num_(o.num_), den_(o.den_) {
  if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
}

Rational& Rational::operator=(const Rational& o) {
  if (this == &o) return *this;
  num_ = o.num_;
  den_ = o.den_;
  if (o.big_) {
    if (big_)
      *big_ = *o.big_;
    else
      big_ = std::make_unique<mpq_class>(*o.big_);
  } else {
    big_.reset();
  }
  return *this;
}

void Rational::set_big(mpq_class q) {
  big_ = std::make_unique<mpq_class>(std::move(q));
  demote();
}

void Rational::demote() {
  if (!big_) return;
  const mpq_class& q = *big_;
  if (mpz_fits_slong_p(q.get_num_mpz_t()) && mpz_fits_slong_p(q.get_den_mpz_t())) {
    num_ = mpz_get_si(q.get_num_mpz_t());
    den_ = mpz_get_si(q.get_den_mpz_t());
    big_.reset();
  }
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Rational::sign() const {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  return mpq_class(to_mpz64(num_), to_mpz64(den_));
}

mpz_class Rational::numerator() const { return big_ ? mpz_class(big_->get_num()) : to_mpz64(num_); }
mpz_class Rational::denominator() const { return big_ ? mpz_class(big_->get_den()) : to_mpz64(den_); }

std::string Rational::str() const {
  if (big_) return big_->get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(std::string_view s) {
  std::string t(s);
  if (t.empty()) throw std::invalid_argument("empty rational");
  if (t.front() == '+') t.erase(0, 1);
  mpq_class q;
  if (q.set_str(t, 10) != 0) throw std::invalid_argument("bad rational: " + std::string(s));
  if (q.get_den() == 0) throw std::domain_error("rational with zero denominator");
  return Rational(q);
}

Rational Rational::operator-() const {
  if (big_) return Rational(mpq_class(-*big_));
  if (num_ == std::numeric_limits<std::int64_t>::min()) return Rational(mpq_class(-to_mpq()));
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  if (!big_ && !o.big_) {
    if (den_ == 1 && o.den_ == 1) {
      std::int64_t s;
      if (!__builtin_add_overflow(num_, o.num_, &s)) {
        num_ = s;
        return *this;
      }
    }
    i128 n = static_cast<i128>(num_) * o.den_ + static_cast<i128>(o.num_) * den_;
    i128 d = static_cast<i128>(den_) * o.den_;
    u128 g = gcd128(uabs(n), static_cast<u128>(d));
    if (g > 1) {
      n /= static_cast<i128>(g);
      d /= static_cast<i128>(g);
    }
    if (n == 0) d = 1;
    if (fits64(n) && fits64(d)) {
      num_ = static_cast<std::int64_t>(n);
      den_ = static_cast<std::int64_t>(d);
    } else {
      set_big(mpq_class(to_mpz(n), to_mpz(d)));
    }
    return *this;
  }
  set_big(to_mpq() + o.to_mpq());
  return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational operator*(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.den_ == 1 && b.den_ == 1) {
      std::int64_t p;
      if (!__builtin_mul_overflow(a.num_, b.num_, &p)) return Rational(p);
    }
    i128 n = static_cast<i128>(a.num_) * b.num_;
    i128 d = static_cast<i128>(a.den_) * b.den_;
    u128 g = gcd128(uabs(n), static_cast<u128>(d));
    if (g > 1) {
      n /= static_cast<i128>(g);
      d /= static_cast<i128>(g);
    }
    if (n == 0) d = 1;
    Rational r;
    if (fits64(n) && fits64(d)) {
      r.num_ = static_cast<std::int64_t>(n);
      r.den_ = static_cast<std::int64_t>(d);
    } else {
      r.set_big(mpq_class(to_mpz(n), to_mpz(d)));
    }
    return r;
  }
  Rational r;
  r.set_big(a.to_mpq() * b.to_mpq());
  return r;
}

Rational& Rational::operator*=(const Rational& o) { return *this = *this * o; }

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  if (!big_ && !o.big_ && o.num_ != std::numeric_limits<std::int64_t>::min()) {
    Rational inv;
    inv.num_ = o.num_ < 0 ? -o.den_ : o.den_;
    inv.den_ = o.num_ < 0 ? -o.num_ : o.num_;
    return *this = *this * inv;
  }
  set_big(to_mpq() / o.to_mpq());
  return *this;
}

bool operator==(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;  // canonical: a demotable value is never stored big
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    i128 l = static_cast<i128>(a.num_) * b.den_;
    i128 r = static_cast<i128>(b.num_) * a.den_;
    return l <=> r;
  }
  int c = cmp(a.to_mpq(), b.to_mpq());
  return c <=> 0;
}

std::size_t Rational::hash() const {
  if (!big_) return std::hash<std::int64_t>{}(num_) * 1000003u ^ std::hash<std::int64_t>{}(den_);
  return std::hash<std::string>{}(big_->get_str());
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

}  // namespace npf
