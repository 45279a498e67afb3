// Random instances and independent oracles shared by the test suites.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "eur/core.hpp"
#include "eur/family.hpp"

namespace eur::testing {

using Rng = std::mt19937_64;

inline StateVector random_ket(std::size_t d, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<Complex> v(d);
  for (auto& z : v) z = Complex{g(rng), g(rng)};
  return StateVector(std::move(v)).normalized();
}

/// Haar unitary: Gram-Schmidt on a complex Ginibre matrix.
inline ComplexMatrix haar_unitary(std::size_t d, Rng& rng) {
  std::vector<StateVector> cols;
  while (cols.size() < d) {
    StateVector v = random_ket(d, rng);
    std::vector<Complex> w(v.amplitudes().begin(), v.amplitudes().end());
    for (const auto& c : cols) {
      const Complex p = inner(c, v);
      for (std::size_t i = 0; i < d; ++i) w[i] -= p * c[i];
    }
    StateVector u(std::move(w));
    if (u.norm() < 1e-6) continue;
    cols.push_back(u.normalized());
  }
  return ComplexMatrix::from_columns(cols);
}

/// Random spectrum (uniform on the simplex) in a Haar-random eigenbasis.
inline DensityOperator random_mixed(std::size_t d, Rng& rng) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> w(d);
  double s = 0.0;
  for (auto& x : w) s += (x = e(rng));
  for (auto& x : w) x /= s;
  const ComplexMatrix u = haar_unitary(d, rng);
  ComplexMatrix m = u * ComplexMatrix::diagonal(w) * u.adjoint();
  return DensityOperator(Complex{0.5, 0.0} * (m + m.adjoint()));
}

inline DensityOperator random_pure(std::size_t d, Rng& rng) { return DensityOperator::pure(random_ket(d, rng)); }

inline ProjectiveMeasurement random_basis(std::size_t d, Rng& rng, std::string label = "R") {
  const ComplexMatrix u = haar_unitary(d, rng);
  std::vector<StateVector> b;
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<Complex> col(d);
    for (std::size_t i = 0; i < d; ++i) col[i] = u(i, j);
    b.emplace_back(std::move(col));
  }
  return ProjectiveMeasurement(std::move(b), std::move(label));
}

inline ProjectiveMeasurement computational_basis(std::size_t d, std::string label = "Z") {
  std::vector<StateVector> b;
  for (std::size_t i = 0; i < d; ++i) b.push_back(StateVector::basis(d, i));
  return ProjectiveMeasurement(std::move(b), std::move(label));
}

/// Discrete Fourier basis |f_k> = d^{-1/2} sum_j w^{jk} |j>.
inline ProjectiveMeasurement fourier_basis(std::size_t d, std::string label = "F") {
  std::vector<StateVector> b;
  const double pi = std::acos(-1.0);
  for (std::size_t k = 0; k < d; ++k) {
    std::vector<Complex> v(d);
    for (std::size_t j = 0; j < d; ++j) v[j] = std::polar(1.0 / std::sqrt(double(d)), 2.0 * pi * double(j * k) / double(d));
    b.emplace_back(std::move(v));
  }
  return ProjectiveMeasurement(std::move(b), std::move(label));
}

/// Eigenvalues of a 3x3 Hermitian matrix from its characteristic polynomial
/// (trigonometric solution of the depressed cubic), descending.
inline std::vector<double> charpoly_eigenvalues3(const ComplexMatrix& m) {
  const double a11 = m(0, 0).real(), a22 = m(1, 1).real(), a33 = m(2, 2).real();
  const Complex a12 = m(0, 1), a13 = m(0, 2), a23 = m(1, 2);
  const double tr = a11 + a22 + a33;
  const double c2 = a11 * a22 + a11 * a33 + a22 * a33 - std::norm(a12) - std::norm(a13) - std::norm(a23);
  const double det = a11 * a22 * a33 + 2.0 * (a12 * a23 * std::conj(a13)).real() - a11 * std::norm(a23) -
                     a22 * std::norm(a13) - a33 * std::norm(a12);
  // lambda^3 - tr lambda^2 + c2 lambda - det = 0, shift lambda = t + tr/3
  const double q = tr / 3.0;
  const double p = c2 - tr * tr / 3.0;                                    // t^3 + p t + r = 0
  const double r = -2.0 * q * q * q + c2 * q - det;
  const double amp = 2.0 * std::sqrt(std::max(-p / 3.0, 0.0));
  std::vector<double> out(3);
  if (amp == 0.0) {
    out.assign(3, q);
    return out;
  }
  const double arg = std::clamp(3.0 * r / (p * amp), -1.0, 1.0);
  const double phi = std::acos(arg) / 3.0;
  const double pi = std::acos(-1.0);
  for (int k = 0; k < 3; ++k) out[k] = q + amp * std::cos(phi - 2.0 * pi * k / 3.0);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

/// Reference 3x3 tomography estimate of the uniform superposition (4 dp entries).
inline ComplexMatrix published_tomography_matrix() {
  return ComplexMatrix{{{0.3314, 0.0}, {0.2977, -0.0392}, {0.3200, 0.0583}},
                       {{0.2977, 0.0392}, {0.3306, 0.0}, {0.2460, 0.0621}},
                       {{0.3200, -0.0583}, {0.2460, -0.0621}, {0.3380, 0.0}}};
}

inline StateVector uniform_superposition() {
  const double s = 1.0 / std::sqrt(3.0);
  return StateVector{s, s, s};
}

}  // namespace eur::testing
