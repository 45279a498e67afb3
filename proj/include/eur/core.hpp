// core.hpp
// Small-dimension complex linear algebra for qudit numerics: state vectors,
// dense matrices, density operators, projective measurements and the
// handful of spectral routines the entropy and bound code needs.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace eur {

using Complex = std::complex<double>;

/// Slack used by every validating constructor.
inline constexpr double kValidationTol = 1e-9;
/// Slack for reconstruction checks (eigen/sqrt round trips).
inline constexpr double kReconstructionTol = 1e-8;

// ── Errors ──────────────────────────────────────────────────────────────────

/// Input violates a documented invariant.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Matrix expected positive semidefinite has an eigenvalue below -tolerance.
class NotPsdError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Exhaustive enumeration would exceed the supported problem size.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Measured data are inconsistent beyond what numerical repair may absorb.
class DataQualityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline bool finite(const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

template <typename... Args>
std::string concat(Args&&... args) {
  std::ostringstream os;
  os.precision(12);
  (os << ... << std::forward<Args>(args));
  return os.str();
}

}  // namespace detail

// ── StateVector ─────────────────────────────────────────────────────────────

class StateVector {
 public:
  StateVector() = default;

  explicit StateVector(std::vector<Complex> amps) : amps_(std::move(amps)) {
    if (amps_.empty()) throw ValidationError("StateVector: dimension must be positive");
    for (const auto& z : amps_)
      if (!detail::finite(z)) throw ValidationError("StateVector: amplitudes must be finite");
  }

  StateVector(std::initializer_list<Complex> amps) : StateVector(std::vector<Complex>(amps)) {}

  /// Computational basis ket |index> in dimension dim.
  static StateVector basis(std::size_t dim, std::size_t index) {
    if (index >= dim) throw ValidationError("StateVector::basis: index out of range");
    std::vector<Complex> v(dim, Complex{0.0, 0.0});
    v[index] = 1.0;
    return StateVector(std::move(v));
  }

  std::size_t dim() const { return amps_.size(); }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }
  std::span<const Complex> amplitudes() const { return amps_; }

  double norm() const {
    double s = 0.0;
    for (const auto& z : amps_) s += std::norm(z);
    return std::sqrt(s);
  }

  bool is_normalized(double tol = kValidationTol) const { return std::abs(norm() - 1.0) <= tol; }

  StateVector normalized() const {
    const double n = norm();
    if (n == 0.0) throw ValidationError("StateVector::normalized: zero vector");
    std::vector<Complex> v(amps_);
    for (auto& z : v) z /= n;
    return StateVector(std::move(v));
  }

  StateVector scaled(Complex factor) const {
    std::vector<Complex> v(amps_);
    for (auto& z : v) z *= factor;
    return StateVector(std::move(v));
  }

 private:
  std::vector<Complex> amps_;
};

/// <a|b>, conjugate-linear in the first argument.
inline Complex inner(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw ValidationError("inner: dimension mismatch");
  Complex s{0.0, 0.0};
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

// ── ComplexMatrix ───────────────────────────────────────────────────────────

class ComplexMatrix {
 public:
  ComplexMatrix() = default;

  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {
    if (rows == 0 || cols == 0) throw ValidationError("ComplexMatrix: dimensions must be positive");
  }

  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (rows == 0 || cols == 0) throw ValidationError("ComplexMatrix: dimensions must be positive");
    if (data_.size() != rows * cols)
      throw ValidationError(detail::concat("ComplexMatrix: rows*cols = ", rows * cols,
                                           " but ", data_.size(), " entries given"));
    for (const auto& z : data_)
      if (!detail::finite(z)) throw ValidationError("ComplexMatrix: entries must be finite");
  }

  /// Row-major nested initialiser, e.g. {{1, 0}, {0, 1}}.
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    if (rows_ == 0 || cols_ == 0) throw ValidationError("ComplexMatrix: dimensions must be positive");
    for (const auto& r : rows) {
      if (r.size() != cols_) throw ValidationError("ComplexMatrix: ragged initialiser");
      data_.insert(data_.end(), r.begin(), r.end());
    }
    for (const auto& z : data_)
      if (!detail::finite(z)) throw ValidationError("ComplexMatrix: entries must be finite");
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(std::span<const double> d) {
    ComplexMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  static ComplexMatrix diagonal(std::initializer_list<double> d) {
    return diagonal(std::span<const double>(d.begin(), d.size()));
  }

  /// |a><b|
  static ComplexMatrix outer(const StateVector& a, const StateVector& b) {
    ComplexMatrix m(a.dim(), b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
      for (std::size_t j = 0; j < b.dim(); ++j) m(i, j) = a[i] * std::conj(b[j]);
    return m;
  }

  /// Matrix whose columns are the given vectors.
  static ComplexMatrix from_columns(std::span<const StateVector> cols) {
    if (cols.empty()) throw ValidationError("ComplexMatrix::from_columns: no columns");
    ComplexMatrix m(cols.front().dim(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].dim() != m.rows()) throw ValidationError("ComplexMatrix::from_columns: dimension mismatch");
      for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  std::span<const Complex> entries() const { return data_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  ComplexMatrix adjoint() const {
    ComplexMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = std::conj((*this)(i, j));
    return t;
  }

  Complex trace() const {
    require_square("trace");
    Complex s{0.0, 0.0};
    for (std::size_t i = 0; i < rows_; ++i) s += (*this)(i, i);
    return s;
  }

  /// max |m_ij - conj(m_ji)|
  double hermiticity_defect() const {
    require_square("hermiticity_defect");
    double worst = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i; j < cols_; ++j)
        worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return worst;
  }

  bool is_hermitian(double tol = kValidationTol) const {
    return is_square() && hermiticity_defect() <= tol;
  }

  StateVector apply(const StateVector& v) const {
    if (v.dim() != cols_) throw ValidationError("ComplexMatrix::apply: dimension mismatch");
    std::vector<Complex> out(rows_, Complex{0.0, 0.0});
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return StateVector(std::move(out));
  }

  /// <a|M|b>
  Complex sandwich(const StateVector& a, const StateVector& b) const { return inner(a, apply(b)); }

  friend ComplexMatrix operator*(const ComplexMatrix& x, const ComplexMatrix& y) {
    if (x.cols_ != y.rows_) throw ValidationError("ComplexMatrix: product dimension mismatch");
    ComplexMatrix out(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        const Complex xik = x(i, k);
        for (std::size_t j = 0; j < y.cols_; ++j) out(i, j) += xik * y(k, j);
      }
    return out;
  }

  friend ComplexMatrix operator+(ComplexMatrix x, const ComplexMatrix& y) {
    x.require_same_shape(y);
    for (std::size_t i = 0; i < x.data_.size(); ++i) x.data_[i] += y.data_[i];
    return x;
  }

  friend ComplexMatrix operator-(ComplexMatrix x, const ComplexMatrix& y) {
    x.require_same_shape(y);
    for (std::size_t i = 0; i < x.data_.size(); ++i) x.data_[i] -= y.data_[i];
    return x;
  }

  friend ComplexMatrix operator*(Complex s, ComplexMatrix x) {
    for (auto& z : x.data_) z *= s;
    return x;
  }

  ComplexMatrix& operator+=(const ComplexMatrix& y) {
    require_same_shape(y);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += y.data_[i];
    return *this;
  }

 private:
  void require_square(const char* what) const {
    if (!is_square()) throw ValidationError(detail::concat(what, ": matrix is not square (", rows_, "x", cols_, ")"));
  }
  void require_same_shape(const ComplexMatrix& y) const {
    if (rows_ != y.rows_ || cols_ != y.cols_) throw ValidationError("ComplexMatrix: shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// max_ij |x_ij - y_ij|
inline double max_abs_diff(const ComplexMatrix& x, const ComplexMatrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) throw ValidationError("max_abs_diff: shape mismatch");
  double worst = 0.0;
  const auto a = x.entries();
  const auto b = y.entries();
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

// ── Spectral routines ───────────────────────────────────────────────────────

struct EigenDecomposition {
  std::vector<double> values;        // descending
  std::vector<StateVector> vectors;  // vectors[k] pairs with values[k]
};

namespace detail {

inline Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
  Eigen::MatrixXcd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return e;
}

inline void require_hermitian(const ComplexMatrix& m, const char* what) {
  if (!m.is_square())
    throw ValidationError(concat(what, ": matrix is not square (", m.rows(), "x", m.cols(), ")"));
  const double defect = m.hermiticity_defect();
  if (defect > kValidationTol)
    throw ValidationError(concat(what, ": matrix is not Hermitian (max |m - m^dag| = ", defect, ")"));
}

// Largest-magnitude component made real and positive; first index wins ties.
inline StateVector fix_phase(std::vector<Complex> v) {
  std::size_t best = 0;
  double best_mag = -1.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v[i]);
    if (mag > best_mag * (1.0 + 1e-12) + 1e-15) {
      best = i;
      best_mag = mag;
    }
  }
  if (best_mag > 0.0) {
    const Complex phase = std::conj(v[best]) / best_mag;
    for (auto& z : v) z *= phase;
    v[best] = Complex{std::abs(v[best]), 0.0};
  }
  return StateVector(std::move(v));
}

}  // namespace detail

/// Eigen-decomposition of a Hermitian matrix, eigenvalues descending.
/// Equal eigenvalues keep the solver's index order, and each eigenvector's
/// largest component is made real positive, so the output is a deterministic
/// function of the input.
inline EigenDecomposition hermitian_eigen(const ComplexMatrix& m) {
  detail::require_hermitian(m, "hermitian_eigen");
  // Exact Hermitian input for the solver; the defect is already within tolerance.
  Eigen::MatrixXcd e = detail::to_eigen(m);
  e = (0.5 * (e + e.adjoint())).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(e);
  if (solver.info() != Eigen::Success) throw std::runtime_error("hermitian_eigen: solver did not converge");

  const auto n = static_cast<std::size_t>(e.rows());
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto& vals = solver.eigenvalues();
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return vals(static_cast<Eigen::Index>(x)) > vals(static_cast<Eigen::Index>(y)); });

  EigenDecomposition out;
  out.values.reserve(n);
  out.vectors.reserve(n);
  for (std::size_t k : order) {
    const auto col = static_cast<Eigen::Index>(k);
    out.values.push_back(vals(col));
    std::vector<Complex> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = solver.eigenvectors()(static_cast<Eigen::Index>(i), col);
    out.vectors.push_back(detail::fix_phase(std::move(v)));
  }
  return out;
}

/// Largest eigenvalue of a Hermitian matrix (no eigenvectors).
inline double largest_eigenvalue(const ComplexMatrix& m) {
  detail::require_hermitian(m, "largest_eigenvalue");
  Eigen::MatrixXcd e = detail::to_eigen(m);
  e = (0.5 * (e + e.adjoint())).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(e, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("largest_eigenvalue: solver did not converge");
  return solver.eigenvalues().maxCoeff();
}

/// sum_k f(lambda_k) |v_k><v_k|
template <typename F>
ComplexMatrix spectral_map(const EigenDecomposition& eig, F&& f) {
  const std::size_t n = eig.values.size();
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) out += Complex{f(eig.values[k]), 0.0} * ComplexMatrix::outer(eig.vectors[k], eig.vectors[k]);
  return out;
}

/// Square of the largest singular value of the matrix whose columns are given,
/// computed as the top eigenvalue of the Gram matrix A^dag A.
inline double largest_singular_value_sq(std::span<const StateVector> columns) {
  if (columns.empty()) throw ValidationError("largest_singular_value_sq: empty column list");
  const std::size_t k = columns.size();
  for (const auto& c : columns)
    if (c.dim() != columns.front().dim()) throw ValidationError("largest_singular_value_sq: columns differ in dimension");
  ComplexMatrix gram(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) {
      const Complex g = inner(columns[i], columns[j]);
      gram(i, j) = g;
      gram(j, i) = std::conj(g);
    }
  return largest_eigenvalue(gram);
}

/// Hermitian PSD square root. Eigenvalues in [-tol, 0) are clamped to zero.
inline ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& m) {
  const auto eig = hermitian_eigen(m);
  for (double v : eig.values)
    if (v < -kValidationTol)
      throw NotPsdError(detail::concat("matrix_sqrt_psd: eigenvalue ", v, " below -", kValidationTol));
  return spectral_map(eig, [](double v) { return std::sqrt(std::max(v, 0.0)); });
}

// ── DensityOperator ─────────────────────────────────────────────────────────

/// Hermitian, unit-trace, positive semidefinite operator (all within 1e-9).
class DensityOperator {
 public:
  explicit DensityOperator(ComplexMatrix m) : m_(std::move(m)) {
    detail::require_hermitian(m_, "DensityOperator");
    const Complex tr = m_.trace();
    if (std::abs(tr - 1.0) > kValidationTol)
      throw ValidationError(detail::concat("DensityOperator: trace invariant violated (trace = ", tr.real(),
                                           tr.imag() != 0.0 ? detail::concat(" + ", tr.imag(), "i") : std::string{}, ")"));
    const auto eig = hermitian_eigen(m_);
    if (eig.values.back() < -kValidationTol)
      throw NotPsdError(detail::concat("DensityOperator: eigenvalue ", eig.values.back(), " below -", kValidationTol));
  }

  static DensityOperator pure(const StateVector& ket) {
    if (!ket.is_normalized()) throw ValidationError("DensityOperator::pure: ket is not normalized");
    return DensityOperator(ComplexMatrix::outer(ket, ket));
  }

  static DensityOperator maximally_mixed(std::size_t dim) {
    return DensityOperator((Complex{1.0 / static_cast<double>(dim), 0.0}) * ComplexMatrix::identity(dim));
  }

  std::size_t dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }

  double purity() const { return (m_ * m_).trace().real(); }

  Complex operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

 private:
  ComplexMatrix m_;
};

// ── ProbabilityDistribution ─────────────────────────────────────────────────

/// Non-negative entries summing to one. Entries in [-1e-9, 0) are stored as 0.
class ProbabilityDistribution {
 public:
  explicit ProbabilityDistribution(std::vector<double> p) : p_(std::move(p)) {
    if (p_.empty()) throw ValidationError("ProbabilityDistribution: empty");
    double sum = 0.0;
    for (auto& x : p_) {
      if (!std::isfinite(x)) throw ValidationError("ProbabilityDistribution: non-finite entry");
      if (x < -kValidationTol)
        throw ValidationError(detail::concat("ProbabilityDistribution: negative entry ", x));
      sum += x;
      x = std::max(x, 0.0);
    }
    if (std::abs(sum - 1.0) > kValidationTol)
      throw ValidationError(detail::concat("ProbabilityDistribution: entries sum to ", sum, ", not 1"));
  }

  ProbabilityDistribution(std::initializer_list<double> p) : ProbabilityDistribution(std::vector<double>(p)) {}

  std::size_t size() const { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  std::span<const double> values() const { return p_; }

 private:
  std::vector<double> p_;
};

// ── ProjectiveMeasurement ───────────────────────────────────────────────────

/// Ordered orthonormal basis of the full space.
class ProjectiveMeasurement {
 public:
  ProjectiveMeasurement(std::vector<StateVector> basis, std::string label = {})
      : basis_(std::move(basis)), label_(std::move(label)) {
    if (basis_.empty()) throw ValidationError("ProjectiveMeasurement: empty basis");
    const std::size_t d = basis_.front().dim();
    if (basis_.size() != d)
      throw ValidationError(detail::concat("ProjectiveMeasurement ", label_, ": ", basis_.size(),
                                           " vectors for dimension ", d));
    for (std::size_t i = 0; i < d; ++i) {
      if (basis_[i].dim() != d) throw ValidationError("ProjectiveMeasurement: vectors differ in dimension");
      if (!basis_[i].is_normalized())
        throw ValidationError(detail::concat("ProjectiveMeasurement ", label_, ": vector ", i, " is not normalized"));
      for (std::size_t j = 0; j < i; ++j)
        if (std::abs(inner(basis_[j], basis_[i])) > kValidationTol)
          throw ValidationError(detail::concat("ProjectiveMeasurement ", label_, ": vectors ", j, " and ", i,
                                               " are not orthogonal"));
    }
  }

  std::size_t dim() const { return basis_.size(); }
  const StateVector& operator[](std::size_t i) const { return basis_[i]; }
  std::span<const StateVector> basis() const { return basis_; }
  const std::string& label() const { return label_; }

  /// Basis vectors mapped through a unitary, U|u_i>.
  ProjectiveMeasurement transformed(const ComplexMatrix& unitary) const {
    std::vector<StateVector> out;
    out.reserve(basis_.size());
    for (const auto& v : basis_) out.push_back(unitary.apply(v));
    return ProjectiveMeasurement(std::move(out), label_);
  }

 private:
  std::vector<StateVector> basis_;
  std::string label_;
};

/// c(R,S) = max_{j,k} |<r_j|s_k>|^2
inline double overlap_c(const ProjectiveMeasurement& r, const ProjectiveMeasurement& s) {
  if (r.dim() != s.dim()) throw ValidationError("overlap_c: dimension mismatch");
  double best = 0.0;
  for (const auto& u : r.basis())
    for (const auto& v : s.basis()) best = std::max(best, std::norm(inner(u, v)));
  return best;
}

/// Born rule p_i = <u_i|rho|u_i>.
inline ProbabilityDistribution born_probabilities(const ProjectiveMeasurement& m, const DensityOperator& rho) {
  if (m.dim() != rho.dim()) throw ValidationError("born_probabilities: dimension mismatch");
  std::vector<double> p;
  p.reserve(m.dim());
  for (const auto& u : m.basis()) {
    const Complex z = rho.matrix().sandwich(u, u);
    if (std::abs(z.imag()) > kValidationTol) throw ValidationError("born_probabilities: non-real expectation");
    p.push_back(z.real());
  }
  return ProbabilityDistribution(std::move(p));
}

}  // namespace eur
