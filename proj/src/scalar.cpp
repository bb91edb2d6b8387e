#include "glrep/scalar.hpp"

#include <climits>
#include <numeric>
#include <ostream>

#include "glrep/error.hpp"

namespace glrep {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr std::int64_t kMax = INT64_MAX;

u128 gcd128(u128 a, u128 b) {
  if (a <= UINT64_MAX && b <= UINT64_MAX) {
    return std::gcd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
  }
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

u128 abs128(i128 v) { return v < 0 ? static_cast<u128>(-v) : static_cast<u128>(v); }

bool fits_inline(i128 n, i128 d) { return n >= -kMax && n <= kMax && d >= 1 && d <= kMax; }

mpz_class mpz_from_i128(i128 v) {
  bool neg = v < 0;
  u128 m = abs128(v);
  mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(m >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(m)));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

}  // namespace

Scalar::Scalar(long long n) {
  if (n == LLONG_MIN) {
    assign_big(mpq_class(mpz_class(std::to_string(n))));
  } else {
    num_ = n;
  }
}

Scalar::Scalar(long long num, long long den) {
  if (den == 0) precondition_failed("Scalar: zero denominator");
  mpq_class q(mpz_class(std::to_string(num)), mpz_class(std::to_string(den)));
  q.canonicalize();
  assign_big(q);
}

Scalar::Scalar(const mpq_class& q) { assign_big(q); }

Scalar::Scalar(const Scalar& o) : num_(o.num_), den_(o.den_) {
  if (o.big_) big_ = new mpq_class(*o.big_);
}

Scalar& Scalar::operator=(const Scalar& o) {
  if (this == &o) return *this;
  if (o.big_) {
    if (big_) {
      *big_ = *o.big_;
    } else {
      big_ = new mpq_class(*o.big_);
    }
  } else {
    delete big_;
    big_ = nullptr;
  }
  num_ = o.num_;
  den_ = o.den_;
  return *this;
}

Scalar& Scalar::operator=(Scalar&& o) noexcept {
  if (this == &o) return *this;
  delete big_;
  num_ = o.num_;
  den_ = o.den_;
  big_ = o.big_;
  o.big_ = nullptr;
  return *this;
}

void Scalar::assign_big(const mpq_class& q) {
  const mpz_class& n = q.get_num();
  const mpz_class& d = q.get_den();
  if (n.fits_slong_p() && d.fits_slong_p() && n.get_si() != LONG_MIN) {
    delete big_;
    big_ = nullptr;
    num_ = n.get_si();
    den_ = d.get_si();
    return;
  }
  if (big_) {
    *big_ = q;
  } else {
    big_ = new mpq_class(q);
  }
  num_ = 0;
  den_ = 1;
}

Scalar Scalar::parse(std::string_view text) {
  std::string t(text);
  while (!t.empty() && (t.front() == ' ')) t.erase(t.begin());
  while (!t.empty() && (t.back() == ' ')) t.pop_back();
  if (t.empty()) throw SchemaError("empty scalar");
  auto valid_int = [](const std::string& s) {
    std::size_t i = (s.size() > 0 && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
  };
  auto slash = t.find('/');
  std::string num = t.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : t.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den)) throw SchemaError("malformed scalar '" + t + "'");
  if (num[0] == '+') num.erase(0, 1);
  if (den[0] == '+') den.erase(0, 1);
  mpz_class n(num), d(den);
  if (d == 0) throw SchemaError("scalar with zero denominator '" + t + "'");
  mpq_class q(n, d);
  q.canonicalize();
  return Scalar(q);
}

std::string Scalar::str() const {
  if (big_) return big_->get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

mpq_class Scalar::to_mpq() const {
  if (big_) return *big_;
  mpq_class q{mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_))};
  return q;
}

int Scalar::sign() const noexcept {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

Scalar Scalar::operator-() const {
  Scalar r(*this);
  if (r.big_) {
    *r.big_ = -*r.big_;
  } else {
    r.num_ = -r.num_;
  }
  return r;
}

Scalar Scalar::inverse() const {
  if (is_zero()) precondition_failed("Scalar: inverse of zero");
  if (!big_) {
    Scalar r;
    r.num_ = num_ < 0 ? -den_ : den_;
    r.den_ = num_ < 0 ? -num_ : num_;
    return r;
  }
  return Scalar(mpq_class(1) / *big_);
}

namespace {

mpq_class make_mpq(i128 n, i128 d) { return mpq_class(mpz_from_i128(n), mpz_from_i128(d)); }

}  // namespace

Scalar& Scalar::operator+=(const Scalar& o) {
  if (!big_ && !o.big_) {
    if (den_ == 1 && o.den_ == 1) {
      std::int64_t r;
      if (!__builtin_add_overflow(num_, o.num_, &r) && r != INT64_MIN) {
        num_ = r;
        return *this;
      }
    }
    std::uint64_t g = std::gcd(static_cast<std::uint64_t>(den_), static_cast<std::uint64_t>(o.den_));
    i128 n = static_cast<i128>(num_) * (o.den_ / static_cast<std::int64_t>(g)) +
             static_cast<i128>(o.num_) * (den_ / static_cast<std::int64_t>(g));
    i128 d = static_cast<i128>(den_ / static_cast<std::int64_t>(g)) * o.den_;
    u128 r = gcd128(abs128(n), static_cast<u128>(d));
    if (r > 1) {
      n /= static_cast<i128>(r);
      d /= static_cast<i128>(r);
    }
    if (n == 0) d = 1;
    if (fits_inline(n, d)) {
      num_ = static_cast<std::int64_t>(n);
      den_ = static_cast<std::int64_t>(d);
      return *this;
    }
    assign_big(make_mpq(n, d));
    return *this;
  }
  assign_big(to_mpq() + o.to_mpq());
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  if (!big_ && !o.big_ && den_ == 1 && o.den_ == 1) {
    std::int64_t r;
    if (!__builtin_sub_overflow(num_, o.num_, &r) && r != INT64_MIN) {
      num_ = r;
      return *this;
    }
  }
  return *this += -o;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (!big_ && !o.big_) {
    if (den_ == 1 && o.den_ == 1) {
      std::int64_t r;
      if (!__builtin_mul_overflow(num_, o.num_, &r) && r != INT64_MIN) {
        num_ = r;
        return *this;
      }
    }
    if (num_ == 0 || o.num_ == 0) {
      num_ = 0;
      den_ = 1;
      return *this;
    }
    std::int64_t g1 = static_cast<std::int64_t>(
        std::gcd(static_cast<std::uint64_t>(num_ < 0 ? -num_ : num_), static_cast<std::uint64_t>(o.den_)));
    std::int64_t g2 = static_cast<std::int64_t>(
        std::gcd(static_cast<std::uint64_t>(o.num_ < 0 ? -o.num_ : o.num_), static_cast<std::uint64_t>(den_)));
    i128 n = static_cast<i128>(num_ / g1) * (o.num_ / g2);
    i128 d = static_cast<i128>(den_ / g2) * (o.den_ / g1);
    if (fits_inline(n, d)) {
      num_ = static_cast<std::int64_t>(n);
      den_ = static_cast<std::int64_t>(d);
      return *this;
    }
    assign_big(make_mpq(n, d));
    return *this;
  }
  assign_big(to_mpq() * o.to_mpq());
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

void Scalar::sub_mul(const Scalar& a, const Scalar& b) {
  if (!big_ && !a.big_ && !b.big_ && den_ == 1 && a.den_ == 1 && b.den_ == 1) {
    std::int64_t p, r;
    if (!__builtin_mul_overflow(a.num_, b.num_, &p) && !__builtin_sub_overflow(num_, p, &r) && r != INT64_MIN) {
      num_ = r;
      return;
    }
  }
  Scalar p(a);
  p *= b;
  *this -= p;
}

bool operator==(const Scalar& a, const Scalar& b) noexcept {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;
}

std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
  if (!a.big_ && !b.big_) {
    i128 l = static_cast<i128>(a.num_) * b.den_;
    i128 r = static_cast<i128>(b.num_) * a.den_;
    return l <=> r;
  }
  int c = cmp(a.to_mpq(), b.to_mpq());
  return c <=> 0;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace glrep
