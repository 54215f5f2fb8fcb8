#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace rgb {

// Exact rational number, always kept in lowest terms with a positive
// denominator. Arbitrary precision, so arithmetic never rounds or overflows.
class Rat {
 public:
  Rat() = default;
  Rat(long value) : q_(value) {}  // NOLINT(google-explicit-constructor)
  Rat(int value) : q_(static_cast<long>(value)) {}  // NOLINT
  Rat(long num, long den);

  // Parses "n", "-n" or "n/d". Throws std::invalid_argument otherwise.
  static Rat parse(std::string_view text);

  std::string numerator() const { return q_.get_num().get_str(); }
  std::string denominator() const { return q_.get_den().get_str(); }

  // Canonical "num/den" form; integers print as "n/1".
  std::string str() const;
  double to_double() const { return q_.get_d(); }

  Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
  Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
  Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
  Rat operator-() const;

  friend bool operator==(const Rat& a, const Rat& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  int sign() const { return sgn(q_); }

 private:
  explicit Rat(mpq_class q) : q_(std::move(q)) {}
  mpq_class q_;
};

Rat abs(const Rat& r);
inline double abs(double d) { return d < 0 ? -d : d; }
std::ostream& operator<<(std::ostream& os, const Rat& r);

// Scalar conversions shared by the templated table code, so the same
// algorithms run on exact rationals and on doubles.
template <class T>
T from_rat(const Rat& r);

template <>
inline Rat from_rat<Rat>(const Rat& r) { return r; }

template <>
inline double from_rat<double>(const Rat& r) { return r.to_double(); }

inline double to_double(const Rat& r) { return r.to_double(); }
inline double to_double(double d) { return d; }

}  // namespace rgb
