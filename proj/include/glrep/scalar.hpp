#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace glrep {

// Exact rational number.  Values whose numerator and denominator fit in a
// signed 64-bit word are stored inline; larger values spill into a GMP
// rational.  The representation is canonical: a value fits inline if and
// only if it is stored inline, so equality never has to mix the two forms.
class Scalar {
 public:
  Scalar() noexcept = default;
  Scalar(long long n);  // NOLINT(google-explicit-constructor)
  Scalar(int n) : Scalar(static_cast<long long>(n)) {}  // NOLINT
  Scalar(long n) : Scalar(static_cast<long long>(n)) {}  // NOLINT
  Scalar(long long num, long long den);
  explicit Scalar(const mpq_class& q);

  Scalar(const Scalar& o);
  Scalar(Scalar&& o) noexcept : num_(o.num_), den_(o.den_), big_(o.big_) { o.big_ = nullptr; }
  Scalar& operator=(const Scalar& o);
  Scalar& operator=(Scalar&& o) noexcept;
  ~Scalar() { delete big_; }

  // Parses "n" or "n/d" with arbitrary-size integers.
  static Scalar parse(std::string_view text);
  std::string str() const;
  mpq_class to_mpq() const;

  bool is_zero() const noexcept { return big_ == nullptr && num_ == 0; }
  bool is_one() const noexcept { return big_ == nullptr && num_ == 1 && den_ == 1; }
  bool is_inline() const noexcept { return big_ == nullptr; }
  int sign() const noexcept;

  Scalar operator-() const;
  Scalar inverse() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  // *this -= a * b, the inner update of elimination.
  void sub_mul(const Scalar& a, const Scalar& b);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b) noexcept;
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b);

 private:
  void assign_big(const mpq_class& q);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  mpq_class* big_ = nullptr;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace glrep
