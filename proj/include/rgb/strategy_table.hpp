#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rgb/rational.hpp"

namespace rgb {

// Finite alphabet {0, ..., size-1}.
class Alphabet {
 public:
  explicit Alphabet(int size) : size_(size) {
    if (size < 1) throw std::invalid_argument("alphabet size must be >= 1, got " + std::to_string(size));
  }
  int size() const { return size_; }
  bool contains(int symbol) const { return symbol >= 0 && symbol < size_; }
  friend bool operator==(Alphabet, Alphabet) = default;

 private:
  int size_;
};

// Colours of the RGB game. Colour arithmetic is modulo 3.
inline constexpr int kRed = 0;
inline constexpr int kGreen = 1;
inline constexpr int kBlue = 2;

constexpr int mod3(int c) { return ((c % 3) + 3) % 3; }

// The four alphabets of a two-party box: inputs A, B and outputs X, Y.
struct BoxShape {
  Alphabet in_a;
  Alphabet in_b;
  Alphabet out_x;
  Alphabet out_y;

  static BoxShape uniform(int k) { return {Alphabet(k), Alphabet(k), Alphabet(k), Alphabet(k)}; }
  static BoxShape of(int a, int b, int x, int y) {
    return {Alphabet(a), Alphabet(b), Alphabet(x), Alphabet(y)};
  }

  std::size_t num_entries() const {
    return static_cast<std::size_t>(in_a.size()) * in_b.size() * out_x.size() * out_y.size();
  }
  std::size_t index(int a, int b, int x, int y) const {
    return ((static_cast<std::size_t>(a) * in_b.size() + b) * out_x.size() + x) * out_y.size() + y;
  }
  std::string str() const {
    return "[" + std::to_string(in_a.size()) + "," + std::to_string(in_b.size()) + "," +
           std::to_string(out_x.size()) + "," + std::to_string(out_y.size()) + "]";
  }
  friend bool operator==(const BoxShape&, const BoxShape&) = default;
};

inline void require_same_shape(const BoxShape& s1, const BoxShape& s2, const char* what) {
  if (!(s1 == s2)) {
    throw std::invalid_argument(std::string(what) + ": alphabet mismatch " + s1.str() + " vs " + s2.str());
  }
}

// Default tolerance used when validating tables: exact for rationals,
// aggregate float tolerance for doubles.
template <class T>
struct Tolerance;

template <>
struct Tolerance<Rat> {
  static Rat table() { return Rat(0); }
};

template <>
struct Tolerance<double> {
  static double table() { return 1e-10; }
};

template <class T>
bool within(const T& a, const T& b, const T& tol) {
  return abs(a - b) <= tol;
}

inline bool within(double a, double b, double tol) { return std::abs(a - b) <= tol; }

// Conditional distribution P(x,y|a,b) stored densely, lexicographic in
// (a,b,x,y). Every row (a,b) sums to one and every entry lies in [0,1], up
// to the validation tolerance (zero for Rat). Immutable after construction.
template <class T>
class Table {
 public:
  Table(BoxShape shape, std::vector<T> entries, T tolerance = Tolerance<T>::table())
      : shape_(shape), entries_(std::move(entries)) {
    if (entries_.size() != shape_.num_entries()) {
      throw std::invalid_argument("table has " + std::to_string(entries_.size()) + " entries, shape " +
                                  shape_.str() + " needs " + std::to_string(shape_.num_entries()));
    }
    validate(tolerance);
  }

  // Builds the table from f(a,b,x,y) -> T.
  template <class F>
  static Table from_function(BoxShape shape, F&& f, T tolerance = Tolerance<T>::table()) {
    std::vector<T> entries;
    entries.reserve(shape.num_entries());
    for (int a = 0; a < shape.in_a.size(); ++a)
      for (int b = 0; b < shape.in_b.size(); ++b)
        for (int x = 0; x < shape.out_x.size(); ++x)
          for (int y = 0; y < shape.out_y.size(); ++y) entries.push_back(T(f(a, b, x, y)));
    return Table(shape, std::move(entries), tolerance);
  }

  const BoxShape& shape() const { return shape_; }
  const std::vector<T>& entries() const { return entries_; }

  const T& operator()(int a, int b, int x, int y) const { return entries_[shape_.index(a, b, x, y)]; }

  // Marginals of a single row.
  T alice_marginal(int a, int b, int x) const {
    T s(0);
    for (int y = 0; y < shape_.out_y.size(); ++y) s += (*this)(a, b, x, y);
    return s;
  }
  T bob_marginal(int a, int b, int y) const {
    T s(0);
    for (int x = 0; x < shape_.out_x.size(); ++x) s += (*this)(a, b, x, y);
    return s;
  }

  friend bool operator==(const Table& l, const Table& r) {
    return l.shape_ == r.shape_ && l.entries_ == r.entries_;
  }

 private:
  void validate(const T& tol) const {
    const T zero(0);
    const T one(1);
    for (int a = 0; a < shape_.in_a.size(); ++a) {
      for (int b = 0; b < shape_.in_b.size(); ++b) {
        T row(0);
        for (int x = 0; x < shape_.out_x.size(); ++x) {
          for (int y = 0; y < shape_.out_y.size(); ++y) {
            const T& p = (*this)(a, b, x, y);
            if (p < zero - tol || p > one + tol) {
              throw std::invalid_argument("entry (" + coords(a, b, x, y) + ") outside [0,1]");
            }
            row += p;
          }
        }
        if (!within(row, one, tol)) {
          throw std::invalid_argument("row (a=" + std::to_string(a) + ", b=" + std::to_string(b) +
                                      ") does not sum to 1");
        }
      }
    }
  }

  static std::string coords(int a, int b, int x, int y) {
    return std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(x) + "," + std::to_string(y);
  }

  BoxShape shape_;
  std::vector<T> entries_;
};

using StrategyTable = Table<Rat>;
using RealTable = Table<double>;

inline RealTable to_real(const StrategyTable& t) {
  std::vector<double> e;
  e.reserve(t.entries().size());
  for (const auto& p : t.entries()) e.push_back(p.to_double());
  return RealTable(t.shape(), std::move(e));
}

// Sum over all (a,b,x,y) of |P_u - P_v|.
template <class T>
T l1_distance(const Table<T>& u, const Table<T>& v) {
  require_same_shape(u.shape(), v.shape(), "l1_distance");
  T d(0);
  for (std::size_t i = 0; i < u.entries().size(); ++i) d += abs(u.entries()[i] - v.entries()[i]);
  return d;
}

// Distance to a finite set: the minimum over its members.
template <class T, class Range>
T l1_distance_to_set(const Table<T>& u, const Range& set) {
  bool first = true;
  T best(0);
  for (const auto& v : set) {
    T d = l1_distance(u, v);
    if (first || d < best) best = d;
    first = false;
  }
  if (first) throw std::invalid_argument("l1_distance_to_set: empty set");
  return best;
}

}  // namespace rgb
