#include "rgb/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rgb {

namespace {

void require_dims(bool ok, const char* what, const CMatrix& a, const CMatrix& b) {
  if (!ok) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                                std::to_string(b.cols()));
  }
}

}  // namespace

CMatrix::CMatrix(int rows, int cols) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("matrix dimensions must be positive");
  m_ = Eigen::MatrixXcd::Zero(rows, cols);
}

CMatrix::CMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) {
  if (m_.rows() < 1 || m_.cols() < 1) throw std::invalid_argument("matrix dimensions must be positive");
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  if (rows.size() == 0 || rows.begin()->size() == 0) throw std::invalid_argument("matrix dimensions must be positive");
  const auto cols = rows.begin()->size();
  m_.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    if (r.size() != cols) throw std::invalid_argument("ragged matrix rows");
    Eigen::Index j = 0;
    for (const auto& v : r) m_(i, j++) = v;
    ++i;
  }
}

CMatrix CMatrix::identity(int n) {
  if (n < 1) throw std::invalid_argument("matrix dimensions must be positive");
  return CMatrix(Eigen::MatrixXcd::Identity(n, n));
}

CMatrix CMatrix::adjoint() const { return CMatrix(Eigen::MatrixXcd(m_.adjoint())); }

Complex CMatrix::trace() const {
  if (m_.rows() != m_.cols()) throw std::invalid_argument("trace of a non-square matrix");
  return m_.trace();
}

CMatrix CMatrix::kron(const CMatrix& o) const {
  Eigen::MatrixXcd k(m_.rows() * o.m_.rows(), m_.cols() * o.m_.cols());
  for (Eigen::Index i = 0; i < m_.rows(); ++i)
    for (Eigen::Index j = 0; j < m_.cols(); ++j)
      k.block(i * o.m_.rows(), j * o.m_.cols(), o.m_.rows(), o.m_.cols()) = m_(i, j) * o.m_;
  return CMatrix(std::move(k));
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  require_dims(a.cols() == b.rows(), "product", a, b);
  return CMatrix(Eigen::MatrixXcd(a.m_ * b.m_));
}

CMatrix operator+(const CMatrix& a, const CMatrix& b) {
  require_dims(a.rows() == b.rows() && a.cols() == b.cols(), "sum", a, b);
  return CMatrix(Eigen::MatrixXcd(a.m_ + b.m_));
}

CMatrix operator-(const CMatrix& a, const CMatrix& b) {
  require_dims(a.rows() == b.rows() && a.cols() == b.cols(), "difference", a, b);
  return CMatrix(Eigen::MatrixXcd(a.m_ - b.m_));
}

CMatrix operator*(Complex s, const CMatrix& a) { return CMatrix(Eigen::MatrixXcd(s * a.m_)); }

bool CMatrix::approx_equal(const CMatrix& o, double tol) const {
  require_dims(rows() == o.rows() && cols() == o.cols(), "comparison", *this, o);
  return (m_ - o.m_).cwiseAbs().maxCoeff() <= tol;
}

bool CMatrix::is_hermitian(double tol) const { return rows() == cols() && approx_equal(adjoint(), tol); }

// ---------------------------------------------------------------------------

SharedState::SharedState(std::array<Complex, 4> amplitudes) : amp_(amplitudes) {
  double n = 0;
  for (const auto& c : amp_) n += std::norm(c);
  if (std::abs(std::sqrt(n) - 1.0) > kAlgebraTol) throw std::invalid_argument("shared state is not a unit vector");
}

CMatrix SharedState::density() const {
  Eigen::VectorXcd v(4);
  for (int i = 0; i < 4; ++i) v(i) = amp_[static_cast<std::size_t>(i)];
  return CMatrix(Eigen::MatrixXcd(v * v.adjoint()));
}

CMatrix SharedState::reduced_alice() const {
  const CMatrix rho = density();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) m(i, j) += rho(2 * i + k, 2 * j + k);
  return CMatrix(std::move(m));
}

CMatrix SharedState::reduced_bob() const {
  const CMatrix rho = density();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) m(i, j) += rho(2 * k + i, 2 * k + j);
  return CMatrix(std::move(m));
}

SharedState singlet() {
  const double h = 1.0 / std::sqrt(2.0);
  return SharedState({0.0, h, -h, 0.0});
}

SharedState product_zero() { return SharedState({1.0, 0.0, 0.0, 0.0}); }

CMatrix projector_from_bloch(double degrees) {
  const double half = degrees * std::numbers::pi / 360.0;
  const double c = std::cos(half);
  const double s = std::sin(half);
  return CMatrix({{c * c, c * s}, {c * s, s * s}});
}

CMatrix complement(const CMatrix& p) { return CMatrix::identity(p.rows()) - p; }

// ---------------------------------------------------------------------------

QubitStrategy::QubitStrategy(std::array<CMatrix, 3> projectors, OutputRule rule)
    : projectors_(std::move(projectors)), rule_(std::move(rule)) {
  for (int c = 0; c < 3; ++c) {
    const CMatrix& p = projectors_[static_cast<std::size_t>(c)];
    const std::string where = "projector for colour " + std::to_string(c);
    if (p.rows() != 2 || p.cols() != 2) throw std::invalid_argument(where + " is not 2x2");
    if (!p.is_hermitian()) throw std::invalid_argument(where + " is not Hermitian");
    if (!(p * p).approx_equal(p)) throw std::invalid_argument(where + " is not idempotent");
    if (std::abs(p.trace() - Complex(1.0)) > kAlgebraTol) throw std::invalid_argument(where + " is not rank one");
    for (bool positive : {true, false}) {
      const int out = rule_(c, positive);
      if (out < 0 || out > 2) throw std::invalid_argument("output rule returns a non-colour");
      if (out == c) throw std::invalid_argument("output rule returns the input colour " + std::to_string(c));
    }
  }
}

int next_colour_rule(int colour, bool positive) { return mod3(colour + (positive ? 1 : -1)); }

QubitStrategy bloch_strategy(const std::array<double, 3>& degrees) {
  return QubitStrategy({projector_from_bloch(degrees[0]), projector_from_bloch(degrees[1]),
                        projector_from_bloch(degrees[2])},
                       next_colour_rule);
}

QubitStrategy trine_strategy() {
  const double r = std::sqrt(3.0) / 2.0;
  auto proj = [](double a0, double a1) { return CMatrix({{a0 * a0, a0 * a1}, {a0 * a1, a1 * a1}}); };
  return QubitStrategy({proj(1.0, 0.0), proj(0.5, -r), proj(0.5, r)}, next_colour_rule);
}

namespace {

void require_effect(const CMatrix& m, const char* who) {
  if (m.rows() != 2 || m.cols() != 2) throw std::invalid_argument(std::string(who) + " effect must be 2x2");
  if (!m.is_hermitian()) throw std::invalid_argument(std::string(who) + " effect is not Hermitian");
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m.eigen(), Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  if (ev.minCoeff() < -kAlgebraTol || ev.maxCoeff() > 1.0 + kAlgebraTol) {
    throw std::invalid_argument(std::string(who) + " effect has eigenvalues outside [0,1]");
  }
}

}  // namespace

double joint_prob(const SharedState& state, const CMatrix& ma, const CMatrix& mb) {
  require_effect(ma, "Alice");
  require_effect(mb, "Bob");
  const CMatrix op = ma.kron(mb);
  Complex v = 0.0;
  const auto& amp = state.amplitudes();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) v += std::conj(amp[static_cast<std::size_t>(i)]) * op(i, j) * amp[static_cast<std::size_t>(j)];
  return std::clamp(v.real(), 0.0, 1.0);
}

RealTable quantum_strategy_table(const SharedState& state, const QubitStrategy& sa, const QubitStrategy& sb) {
  const BoxShape shape = BoxShape::uniform(3);
  std::vector<double> entries(shape.num_entries(), 0.0);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (bool pa : {true, false})
        for (bool pb : {true, false}) {
          const CMatrix ea = pa ? sa.projector(a) : complement(sa.projector(a));
          const CMatrix eb = pb ? sb.projector(b) : complement(sb.projector(b));
          entries[shape.index(a, b, sa.output(a, pa), sb.output(b, pb))] += joint_prob(state, ea, eb);
        }
  return RealTable(shape, std::move(entries));
}

ErrorTerms error_terms(const RealTable& t) {
  require_same_shape(t.shape(), BoxShape::uniform(3), "error_terms");
  auto loss = [&](int a, int b) {
    double s = 0;
    for (int x = 0; x < 3; ++x) s += t(a, b, x, x);
    return s;
  };
  ErrorTerms e{0, 0, 0};
  for (int u = 0; u < 3; ++u) {
    e.equal += loss(u, u) / 3.0;
    e.plus += loss(u, mod3(u + 1)) / 3.0;
    e.minus += loss(u, mod3(u - 1)) / 3.0;
  }
  return e;
}

}  // namespace rgb
