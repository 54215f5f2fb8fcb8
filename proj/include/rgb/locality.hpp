#pragma once

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rgb/family.hpp"
#include "rgb/strategy_table.hpp"

namespace rgb {

// Deterministic reference boxes over a common alphabet of size k.
StrategyTable id_box(int k = 3);     // (x,y) = (a,b)
StrategyTable r_sig_box(int k = 3);  // (x,y) = (a,a)
StrategyTable l_sig_box(int k = 3);  // (x,y) = (b,b)
StrategyTable sig_box(int k = 3);    // (x,y) = (b,a)

// x XOR y = a AND b, uniformly among solutions.
StrategyTable pr_box();

// Left: Alice's marginal depends on Bob's input (a signal travels right to
// left). Right: Bob's marginal depends on Alice's input.
enum class Side { Left, Right };

inline const char* to_string(Side s) { return s == Side::Left ? "left" : "right"; }

template <class T>
struct SignallingWitness {
  Side side;
  int fixed_input;  // the marginal party's own input
  int output;       // the marginal party's output
  int input1;       // two values of the other party's input ...
  int input2;
  T marginal1;  // ... and the differing marginals they produce
  T marginal2;

  std::string describe() const {
    std::ostringstream os;
    const char* own = side == Side::Left ? "a" : "b";
    const char* other = side == Side::Left ? "b" : "a";
    const char* out = side == Side::Left ? "x" : "y";
    os << "side=" << to_string(side) << ", " << own << "=" << fixed_input << ", " << out << "=" << output << ", "
       << other << " in {" << input1 << "," << input2 << "}, marginals " << marginal1 << " vs " << marginal2;
    return os.str();
  }
};

template <class T>
struct NoSignallingCheck {
  bool no_signalling;
  std::optional<SignallingWitness<T>> witness;
  explicit operator bool() const { return no_signalling; }
};

// First witness that Alice's marginal P(x|a,b) depends on b, if any.
template <class T>
std::optional<SignallingWitness<T>> left_signal(const Table<T>& s, const T& tol = T(0)) {
  const BoxShape& sh = s.shape();
  for (int a = 0; a < sh.in_a.size(); ++a)
    for (int x = 0; x < sh.out_x.size(); ++x) {
      const T ref = s.alice_marginal(a, 0, x);
      for (int b = 1; b < sh.in_b.size(); ++b) {
        const T m = s.alice_marginal(a, b, x);
        if (!within(m, ref, tol)) return SignallingWitness<T>{Side::Left, a, x, 0, b, ref, m};
      }
    }
  return std::nullopt;
}

// First witness that Bob's marginal P(y|a,b) depends on a, if any.
template <class T>
std::optional<SignallingWitness<T>> right_signal(const Table<T>& s, const T& tol = T(0)) {
  const BoxShape& sh = s.shape();
  for (int b = 0; b < sh.in_b.size(); ++b)
    for (int y = 0; y < sh.out_y.size(); ++y) {
      const T ref = s.bob_marginal(0, b, y);
      for (int a = 1; a < sh.in_a.size(); ++a) {
        const T m = s.bob_marginal(a, b, y);
        if (!within(m, ref, tol)) return SignallingWitness<T>{Side::Right, b, y, 0, a, ref, m};
      }
    }
  return std::nullopt;
}

// Exact marginal criterion (tolerance only for float tables). Alice's side
// is checked first.
template <class T>
NoSignallingCheck<T> is_no_signalling(const Table<T>& s, const T& tol = T(0)) {
  if (auto w = left_signal(s, tol)) return {false, w};
  if (auto w = right_signal(s, tol)) return {false, w};
  return {true, std::nullopt};
}

// P(x,y|a,b) = P(y,x|b,a). Requires |A| = |B| and |X| = |Y|.
template <class T>
bool is_symmetric(const Table<T>& s, const T& tol = T(0)) {
  const BoxShape& sh = s.shape();
  if (!(sh.in_a == sh.in_b) || !(sh.out_x == sh.out_y)) {
    throw std::invalid_argument("is_symmetric: needs equal input and equal output alphabets, got " + sh.str());
  }
  for (int a = 0; a < sh.in_a.size(); ++a)
    for (int b = 0; b < sh.in_b.size(); ++b)
      for (int x = 0; x < sh.out_x.size(); ++x)
        for (int y = 0; y < sh.out_y.size(); ++y)
          if (!within(s(a, b, x, y), s(b, a, y, x), tol)) return false;
  return true;
}

template <class T>
class SignallingError : public std::runtime_error {
 public:
  explicit SignallingError(SignallingWitness<T> w)
      : std::runtime_error("box signals: " + w.describe()), witness_(std::move(w)) {}
  const SignallingWitness<T>& witness() const { return witness_; }

 private:
  SignallingWitness<T> witness_;
};

// LeftToRight: Alice samples x from P(x|a), then sends (a,x) to Bob who
// samples y from P(y|a,b,x). RightToLeft mirrors the roles.
enum class Direction { LeftToRight, RightToLeft };

template <class T>
struct OneWayProtocol {
  Direction direction;
  BoxShape shape;
  int sender_inputs, sender_outputs, receiver_inputs, receiver_outputs;
  std::vector<T> sender;    // [s_in][s_out]
  std::vector<T> receiver;  // [s_in][r_in][s_out][r_out]

  const T& sender_prob(int s_in, int s_out) const {
    return sender[static_cast<std::size_t>(s_in) * sender_outputs + s_out];
  }
  const T& receiver_prob(int s_in, int r_in, int s_out, int r_out) const {
    return receiver[((static_cast<std::size_t>(s_in) * receiver_inputs + r_in) * sender_outputs + s_out) *
                        receiver_outputs +
                    r_out];
  }
};

// Splits a box into a one-way protocol. With require_no_signalling the box
// must pass the full marginal check; otherwise only the sender's marginal
// must be independent of the receiver's input.
template <class T>
OneWayProtocol<T> decompose_one_way(const Table<T>& s, Direction dir, bool require_no_signalling = true) {
  const bool ltr = dir == Direction::LeftToRight;
  if (require_no_signalling) {
    if (auto w = is_no_signalling(s).witness) throw SignallingError<T>(*w);
  } else if (auto w = ltr ? left_signal(s) : right_signal(s)) {
    throw SignallingError<T>(*w);
  }

  const BoxShape& sh = s.shape();
  OneWayProtocol<T> p{dir,
                      sh,
                      ltr ? sh.in_a.size() : sh.in_b.size(),
                      ltr ? sh.out_x.size() : sh.out_y.size(),
                      ltr ? sh.in_b.size() : sh.in_a.size(),
                      ltr ? sh.out_y.size() : sh.out_x.size(),
                      {},
                      {}};
  // Joint probability with sender coordinates first.
  auto joint = [&](int s_in, int r_in, int s_out, int r_out) -> const T& {
    return ltr ? s(s_in, r_in, s_out, r_out) : s(r_in, s_in, r_out, s_out);
  };
  p.sender.assign(static_cast<std::size_t>(p.sender_inputs) * p.sender_outputs, T(0));
  for (int si = 0; si < p.sender_inputs; ++si)
    for (int so = 0; so < p.sender_outputs; ++so) {
      T m(0);
      for (int ro = 0; ro < p.receiver_outputs; ++ro) m += joint(si, 0, so, ro);
      p.sender[static_cast<std::size_t>(si) * p.sender_outputs + so] = m;
    }

  const T uniform = T(1) / T(p.receiver_outputs);
  p.receiver.reserve(static_cast<std::size_t>(p.sender_inputs) * p.receiver_inputs * p.sender_outputs *
                     p.receiver_outputs);
  for (int si = 0; si < p.sender_inputs; ++si)
    for (int ri = 0; ri < p.receiver_inputs; ++ri)
      for (int so = 0; so < p.sender_outputs; ++so) {
        const T& denom = p.sender_prob(si, so);
        for (int ro = 0; ro < p.receiver_outputs; ++ro) {
          // Zero-probability sender outcomes are never reached; any
          // distribution works there.
          p.receiver.push_back(denom == T(0) ? uniform : joint(si, ri, so, ro) / denom);
        }
      }
  return p;
}

template <class T>
Table<T> recompose(const OneWayProtocol<T>& p) {
  const bool ltr = p.direction == Direction::LeftToRight;
  return Table<T>::from_function(p.shape, [&](int a, int b, int x, int y) {
    return ltr ? p.sender_prob(a, x) * p.receiver_prob(a, b, x, y) : p.sender_prob(b, y) * p.receiver_prob(b, a, y, x);
  });
}

// Linear constraints over the fifteen winning-family parameters. Each row
// reads coeffs . v + constant, which must be = 0 (equations) or >= 0
// (inequalities).
struct LinearRow {
  std::vector<Rat> coeffs;
  Rat constant;
  std::string label;
};

struct LinearSystem {
  std::vector<std::string> variables;
  std::vector<LinearRow> equations;
  std::vector<LinearRow> inequalities;

  void validate() const;
};

// No-signalling equalities for the winning family plus range inequalities
// (0 <= parameter <= 1, P(v,u|u,v) = 1 - p_uv - q_uv >= 0).
LinearSystem build_ns_constraints();

// Reduced row echelon form of an augmented matrix, exact. Returns pivot
// column per nonzero row.
std::vector<int> reduce_row_echelon(std::vector<std::vector<Rat>>& m, std::size_t num_vars);

struct NsSolveTrace {
  WinningFamilyParams params;
  std::size_t rank_after_equalities;
  std::vector<std::string> free_after_equalities;
  std::vector<std::string> forced_zero;  // inequalities promoted to equalities
};

// Eliminates the equalities, then repeatedly promotes pairs of inequalities
// that are exact negatives on the solution set (both >= 0 forces both = 0)
// until no freedom remains. Throws std::logic_error on residual freedom or
// inconsistency.
NsSolveTrace solve_ns_unique_traced();
WinningFamilyParams solve_ns_unique();

}  // namespace rgb
