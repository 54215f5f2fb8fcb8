#include "rgb/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "rgb/strategy_table.hpp"

namespace rgb {

SymMatrix::SymMatrix(int dim) : dim_(dim) {
  if (dim < 1) throw std::invalid_argument("matrix dimension must be positive");
  data_.assign(static_cast<std::size_t>(dim) * (dim + 1) / 2, 0.0);
}

std::size_t SymMatrix::slot(int i, int j) const {
  if (i < 0 || j < 0 || i >= dim_ || j >= dim_) throw std::out_of_range("SymMatrix index out of range");
  if (i > j) std::swap(i, j);
  // Row i of the upper triangle starts after rows 0..i-1.
  return static_cast<std::size_t>(i) * dim_ - static_cast<std::size_t>(i) * (i - 1) / 2 + (j - i);
}

SymMatrix SymMatrix::from_dense(const std::vector<std::vector<double>>& rows) {
  SymMatrix m(static_cast<int>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw std::invalid_argument("matrix is not square");
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (rows[i][j] != rows[j][i]) throw std::invalid_argument("matrix is not symmetric");
      if (j >= i) m.set(static_cast<int>(i), static_cast<int>(j), rows[i][j]);
    }
  }
  return m;
}

SymMatrix SymMatrix::identity(int dim) {
  SymMatrix m(dim);
  for (int i = 0; i < dim; ++i) m.set(i, i, 1.0);
  return m;
}

SymMatrix SymMatrix::diagonal(const std::vector<double>& d) {
  SymMatrix m(static_cast<int>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) m.set(static_cast<int>(i), static_cast<int>(i), d[i]);
  return m;
}

double SymMatrix::trace() const {
  double t = 0;
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

bool SymMatrix::is_diagonal() const {
  for (int i = 0; i < dim_; ++i)
    for (int j = i + 1; j < dim_; ++j)
      if ((*this)(i, j) != 0.0) return false;
  return true;
}

std::vector<std::vector<double>> SymMatrix::dense() const {
  std::vector<std::vector<double>> d(static_cast<std::size_t>(dim_), std::vector<double>(static_cast<std::size_t>(dim_)));
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = (*this)(i, j);
  return d;
}

SymMatrix operator+(const SymMatrix& a, const SymMatrix& b) {
  if (a.dim_ != b.dim_) throw std::invalid_argument("SymMatrix sum: dimension mismatch");
  SymMatrix m(a.dim_);
  for (std::size_t k = 0; k < m.data_.size(); ++k) m.data_[k] = a.data_[k] + b.data_[k];
  return m;
}

SymMatrix operator*(double s, const SymMatrix& a) {
  SymMatrix m(a.dim_);
  for (std::size_t k = 0; k < m.data_.size(); ++k) m.data_[k] = s * a.data_[k];
  return m;
}

double trace_product(const SymMatrix& a, const SymMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("trace_product: dimension mismatch");
  double t = 0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) t += a(i, j) * b(j, i);
  return t;
}

// ---------------------------------------------------------------------------

namespace {

constexpr double kJacobiOffTol = 1e-13;
constexpr int kJacobiMaxSweeps = 100;

double off_norm(const std::vector<std::vector<double>>& a) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (i != j) s += a[i][j] * a[i][j];
  return std::sqrt(s);
}

}  // namespace

std::vector<double> sym_eigenvalues(const SymMatrix& m) {
  auto a = m.dense();
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < kJacobiMaxSweeps && off_norm(a) >= kJacobiOffTol; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a[p][q] == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        a[p][q] = a[q][p] = 0.0;
      }
    }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a[i][i];
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev;
}

int numerical_rank(const SymMatrix& m, double tol) {
  int r = 0;
  for (double e : sym_eigenvalues(m))
    if (std::abs(e) > tol) ++r;
  return r;
}

SymMatrix w_matrix() {
  SymMatrix w(6);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) w.set(i, 3 + j, i == j ? -2.0 : 1.0);
  return w;
}

SymMatrix g_prime() {
  SymMatrix g(6);
  for (int i = 0; i < 6; ++i)
    for (int j = i; j < 6; ++j) {
      const bool same_party = (i < 3) == (j < 3);
      const bool same_index = i % 3 == j % 3;
      if (same_party) g.set(i, j, same_index ? 1.0 : -0.5);
      else g.set(i, j, same_index ? -1.0 : 0.5);
    }
  return g;
}

SymMatrix lambda_prime() { return 1.5 * SymMatrix::identity(6); }

// ---------------------------------------------------------------------------

namespace {

double dot(const RealVector& u, const RealVector& v) {
  double s = 0;
  for (int k = 0; k < kVectorDim; ++k) s += u[static_cast<std::size_t>(k)] * v[static_cast<std::size_t>(k)];
  return s;
}

}  // namespace

void VectorStrategy::validate(double tol) const {
  for (const auto* side : {&x, &y})
    for (const auto& v : *side)
      if (std::abs(std::sqrt(dot(v, v)) - 1.0) > tol) throw std::invalid_argument("vector strategy: non-unit vector");
}

SymMatrix gram_from_vectors(const VectorStrategy& v) {
  v.validate();
  std::array<const RealVector*, 6> all{&v.x[0], &v.x[1], &v.x[2], &v.y[0], &v.y[1], &v.y[2]};
  SymMatrix g(6);
  for (int i = 0; i < 6; ++i)
    for (int j = i; j < 6; ++j) g.set(i, j, dot(*all[static_cast<std::size_t>(i)], *all[static_cast<std::size_t>(j)]));
  return g;
}

double realvec_value(const VectorStrategy& v) {
  double s = 0;
  for (int i = 0; i < 3; ++i) {
    const auto& xi = v.x[static_cast<std::size_t>(i)];
    s += -2.0 * dot(xi, v.y[static_cast<std::size_t>(i)]) + dot(xi, v.y[static_cast<std::size_t>(mod3(i + 1))]) +
         dot(xi, v.y[static_cast<std::size_t>(mod3(i - 1))]);
  }
  return s;
}

PrimalCheck verify_primal(const SymMatrix& g) {
  if (g.dim() != 6) throw std::invalid_argument("verify_primal: needs a 6x6 matrix");
  PrimalCheck out{0.5 * trace_product(g, w_matrix()), true, sym_eigenvalues(g)};
  if (out.eigenvalues.back() < -kSdpTol) out.feasible = false;
  for (int i = 0; i < 6; ++i)
    if (std::abs(g(i, i) - 1.0) > kSdpTol) out.feasible = false;
  return out;
}

DualCheck verify_dual(const SymMatrix& lambda) {
  if (lambda.dim() != 6) throw std::invalid_argument("verify_dual: needs a 6x6 matrix");
  if (!lambda.is_diagonal()) throw std::invalid_argument("verify_dual: multiplier matrix must be diagonal");
  DualCheck out{lambda.trace(), true, sym_eigenvalues(-0.5 * w_matrix() + lambda)};
  out.feasible = out.slack_eigenvalues.back() >= -kSdpTol;
  return out;
}

CertificateReport certify_quantum_bound() {
  const PrimalCheck p = verify_primal(g_prime());
  const DualCheck d = verify_dual(lambda_prime());
  if (!p.feasible) throw CertificateError("primal witness G' is infeasible");
  if (!d.feasible) throw CertificateError("dual witness Lambda' is infeasible");
  const double gap = d.value - p.value;
  if (std::abs(gap) > kSdpTol) throw CertificateError("duality gap " + std::to_string(gap));
  if (std::abs(p.value - 9.0) > kSdpTol) throw CertificateError("primal value is not 9");
  const double bound = d.value;
  return {p.value, d.value, gap, p.eigenvalues, d.slack_eigenvalues, bound, (24.0 + bound) / 36.0};
}

// ---------------------------------------------------------------------------

namespace {

class VectorSampler {
 public:
  explicit VectorSampler(std::uint64_t seed) : rng_(seed) {}

  RealVector unit() {
    for (;;) {
      RealVector v;
      for (auto& c : v) c = normal_(rng_);
      const double n = std::sqrt(dot(v, v));
      if (n > 1e-12) {
        for (auto& c : v) c /= n;
        return v;
      }
    }
  }

 private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

// Normalized -2 own + next + prev, reseeding on a zero direction.
RealVector best_response(const std::array<RealVector, 3>& other, int i, VectorSampler& sampler) {
  RealVector v;
  const auto& own = other[static_cast<std::size_t>(i)];
  const auto& next = other[static_cast<std::size_t>(mod3(i + 1))];
  const auto& prev = other[static_cast<std::size_t>(mod3(i - 1))];
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = -2.0 * own[k] + next[k] + prev[k];
  const double n = std::sqrt(dot(v, v));
  if (n < 1e-12) return sampler.unit();
  for (auto& c : v) c /= n;
  return v;
}

RestartTrace run_restart(std::uint64_t seed, VectorStrategy& v) {
  VectorSampler sampler(seed);
  for (auto& xi : v.x) xi = sampler.unit();
  for (auto& yi : v.y) yi = sampler.unit();
  RestartTrace t{seed, realvec_value(v), 0, true, {}};
  t.history.push_back(t.value);
  while (t.sweeps < kAscentMaxSweeps) {
    for (int i = 0; i < 3; ++i) v.x[static_cast<std::size_t>(i)] = best_response(v.y, i, sampler);
    for (int j = 0; j < 3; ++j) v.y[static_cast<std::size_t>(j)] = best_response(v.x, j, sampler);
    ++t.sweeps;
    const double next = realvec_value(v);
    t.history.push_back(next);
    if (next < t.value - kAscentTol) t.monotone = false;
    const double gain = next - t.value;
    t.value = std::max(t.value, next);
    if (gain < kAscentTol) break;
  }
  return t;
}

}  // namespace

AscentResult alternating_ascent(std::uint64_t seed, int restarts) {
  if (restarts < 1) throw std::invalid_argument("alternating_ascent: restarts must be >= 1");
  AscentResult result{};
  result.monotone = true;
  for (int r = 0; r < restarts; ++r) {
    VectorStrategy v{};
    RestartTrace t = run_restart(seed + static_cast<std::uint64_t>(r), v);
    result.monotone = result.monotone && t.monotone;
    if (r == 0 || t.value > result.best_value) {
      result.best_value = t.value;
      result.best = v;
      result.best_restart = r;
    }
    result.restarts.push_back(std::move(t));
  }
  result.gram_rank = numerical_rank(gram_from_vectors(result.best), 1e-6);
  return result;
}

}  // namespace rgb
