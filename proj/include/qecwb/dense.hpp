#pragma once

// Small dense complex kernel for operators on at most a handful of qubits.
// Everything is templated on the real scalar so the same code runs in
// double and long double.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace qecwb {

template <typename Scalar>
using MatrixX = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using VectorX = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

template <typename Scalar>
using RealVectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Complex = std::complex<double>;
using Matrix = MatrixX<double>;
using StateVector = VectorX<double>;
using RealVector = RealVectorX<double>;

namespace detail {

template <typename Derived>
using real_of = typename Eigen::NumTraits<typename Derived::Scalar>::Real;

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& m, const char* what)
{
  if (m.rows() != m.cols()) {
    throw std::invalid_argument(std::string(what) + ": matrix is not square");
  }
}

}  // namespace detail

/// Kronecker product, a on the left (most significant index).
template <typename DerivedA, typename DerivedB>
MatrixX<detail::real_of<DerivedA>> kron(const Eigen::MatrixBase<DerivedA>& a,
                                        const Eigen::MatrixBase<DerivedB>& b)
{
  static_assert(std::is_same_v<typename DerivedA::Scalar, typename DerivedB::Scalar>,
                "kron: operands must share a scalar type");
  const Eigen::Index rb = b.rows();
  const Eigen::Index cb = b.cols();
  MatrixX<detail::real_of<DerivedA>> out(a.rows() * rb, a.cols() * cb);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
    }
  }
  return out;
}

template <typename Derived>
MatrixX<detail::real_of<Derived>> dagger(const Eigen::MatrixBase<Derived>& m)
{
  return m.adjoint();
}

template <typename Derived>
typename Derived::Scalar trace(const Eigen::MatrixBase<Derived>& m)
{
  detail::require_square(m, "trace");
  return m.trace();
}

/// Largest entry magnitude; zero for an empty matrix.
template <typename Derived>
detail::real_of<Derived> max_abs(const Eigen::MatrixBase<Derived>& m)
{
  if (m.size() == 0) return 0;
  return m.cwiseAbs().maxCoeff();
}

template <typename Derived>
detail::real_of<Derived> hermiticity_defect(const Eigen::MatrixBase<Derived>& m)
{
  detail::require_square(m, "hermiticity_defect");
  return max_abs(m - m.adjoint());
}

template <typename Scalar>
MatrixX<Scalar> identity(Eigen::Index dim)
{
  return MatrixX<Scalar>::Identity(dim, dim);
}

template <typename Scalar>
MatrixX<Scalar> outer(const VectorX<Scalar>& ket, const VectorX<Scalar>& bra)
{
  return ket * bra.adjoint();
}

/// Entries <b_i| m |b_j> over an orthonormal basis.
template <typename Scalar>
MatrixX<Scalar> restrict(const MatrixX<Scalar>& m, std::span<const VectorX<Scalar>> basis,
                         Scalar orthonormal_tol = Scalar(1e-10))
{
  detail::require_square(m, "restrict");
  const auto k = static_cast<Eigen::Index>(basis.size());
  MatrixX<Scalar> gram(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    if (basis[i].size() != m.rows()) {
      throw std::invalid_argument("restrict: basis vector dimension mismatch");
    }
    for (Eigen::Index j = 0; j < k; ++j) {
      gram(i, j) = basis[i].dot(basis[j]);
    }
  }
  if (k > 0 && max_abs(gram - MatrixX<Scalar>::Identity(k, k)) > orthonormal_tol) {
    throw std::invalid_argument("restrict: basis is not orthonormal");
  }
  MatrixX<Scalar> out(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      out(i, j) = basis[i].dot(m * basis[j]);
    }
  }
  return out;
}

template <typename Scalar>
MatrixX<Scalar> restrict(const MatrixX<Scalar>& m, const std::vector<VectorX<Scalar>>& basis,
                         Scalar orthonormal_tol = Scalar(1e-10))
{
  return restrict(m, std::span<const VectorX<Scalar>>(basis), orthonormal_tol);
}

/// Rotate v so its first component above `zero_tol` is real and positive.
template <typename Scalar>
void normalize_phase(VectorX<Scalar>& v, Scalar zero_tol = Scalar(1e-12))
{
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const Scalar mag = std::abs(v(i));
    if (mag > zero_tol) {
      v *= std::conj(v(i)) / mag;
      v(i) = mag;
      return;
    }
  }
}

template <typename Scalar>
struct HermitianEigen {
  RealVectorX<Scalar> values;  // ascending
  MatrixX<Scalar> vectors;     // column l pairs with values(l)
};

/// Cyclic complex Jacobi. Eigenvalues ascending; each eigenvector carries
/// the phase convention of normalize_phase.
template <typename Derived>
HermitianEigen<detail::real_of<Derived>> hermitian_eig(const Eigen::MatrixBase<Derived>& input,
                                                       detail::real_of<Derived> herm_tol = 1e-10)
{
  using Scalar = detail::real_of<Derived>;
  using C = std::complex<Scalar>;
  detail::require_square(input, "hermitian_eig");
  if (hermiticity_defect(input) > herm_tol) {
    throw std::invalid_argument("hermitian_eig: matrix is not Hermitian");
  }

  const Eigen::Index n = input.rows();
  MatrixX<Scalar> a = (input + input.adjoint()) / Scalar(2);
  MatrixX<Scalar> v = MatrixX<Scalar>::Identity(n, n);
  const Scalar eps = std::numeric_limits<Scalar>::epsilon();
  const Scalar scale = a.norm();

  auto off_norm2 = [&] {
    Scalar s = 0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = 0; q < n; ++q)
        if (p != q) s += std::norm(a(p, q));
    return s;
  };

  constexpr int max_sweeps = 100;
  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    const Scalar off = off_norm2();
    if (off == Scalar(0) || std::sqrt(off) <= eps * eps * scale) break;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const C apq = a(p, q);
        const Scalar mag = std::abs(apq);
        if (mag == Scalar(0)) continue;
        const Scalar app = a(p, p).real();
        const Scalar aqq = a(q, q).real();
        // after a few sweeps drop entries that no longer affect the diagonal
        if (sweep > 3 && std::abs(app) + Scalar(100) * mag == std::abs(app) &&
            std::abs(aqq) + Scalar(100) * mag == std::abs(aqq)) {
          a(p, q) = a(q, p) = C(0);
          continue;
        }
        const C phase = apq / mag;
        const Scalar theta = (aqq - app) / (Scalar(2) * mag);
        Scalar t;
        if (std::abs(theta) > Scalar(1) / eps) {
          t = Scalar(1) / (Scalar(2) * theta);
        } else {
          t = Scalar(1) / (std::abs(theta) + std::sqrt(theta * theta + Scalar(1)));
          if (theta < 0) t = -t;
        }
        const Scalar c = Scalar(1) / std::sqrt(t * t + Scalar(1));
        const Scalar s = t * c;
        const C phase_c = std::conj(phase);

        for (Eigen::Index k = 0; k < n; ++k) {
          const C akp = a(k, p);
          const C akq = a(k, q);
          a(k, p) = c * akp - s * phase_c * akq;
          a(k, q) = s * akp + c * phase_c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const C apk = a(p, k);
          const C aqk = a(q, k);
          a(p, k) = c * apk - s * phase * aqk;
          a(q, k) = s * apk + c * phase * aqk;
        }
        a(p, q) = a(q, p) = C(0);
        a(p, p) = C(app - t * mag);
        a(q, q) = C(aqq + t * mag);
        for (Eigen::Index k = 0; k < n; ++k) {
          const C vkp = v(k, p);
          const C vkq = v(k, q);
          v(k, p) = c * vkp - s * phase_c * vkq;
          v(k, q) = s * vkp + c * phase_c * vkq;
        }
      }
    }
  }
  if (sweep == max_sweeps) {
    throw std::runtime_error("hermitian_eig: Jacobi sweeps did not converge");
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
    return a(x, x).real() < a(y, y).real();
  });

  HermitianEigen<Scalar> out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index src = order[static_cast<std::size_t>(i)];
    out.values(i) = a(src, src).real();
    VectorX<Scalar> col = v.col(src);
    normalize_phase(col);
    out.vectors.col(i) = col;
  }
  return out;
}

/// Principal square root of a positive semidefinite Hermitian matrix.
/// Eigenvalues in [-1e-8, 0) are treated as zero; anything lower throws.
template <typename Derived>
MatrixX<detail::real_of<Derived>> psd_sqrt(const Eigen::MatrixBase<Derived>& m)
{
  using Scalar = detail::real_of<Derived>;
  const auto eig = hermitian_eig(m);
  if (eig.values.size() > 0 && eig.values.minCoeff() < Scalar(-1e-8)) {
    throw std::domain_error("psd_sqrt: matrix has a negative eigenvalue");
  }
  RealVectorX<Scalar> roots = eig.values.unaryExpr(
      [](Scalar x) { return x > Scalar(0) ? std::sqrt(x) : Scalar(0); });
  MatrixX<Scalar> r = eig.vectors * roots.template cast<std::complex<Scalar>>().asDiagonal() *
                      eig.vectors.adjoint();
  return (r + r.adjoint()) / Scalar(2);
}

/// Modified Gram-Schmidt with one re-orthogonalization pass. Inputs whose
/// residual norm falls below `tol` are dropped.
template <typename Scalar>
std::vector<VectorX<Scalar>> gram_schmidt(std::span<const VectorX<Scalar>> vectors,
                                          Scalar tol = Scalar(1e-10))
{
  std::vector<VectorX<Scalar>> out;
  if (vectors.empty()) return out;
  const Eigen::Index dim = vectors.front().size();
  for (const auto& v : vectors) {
    if (v.size() != dim) throw std::invalid_argument("gram_schmidt: dimension mismatch");
    VectorX<Scalar> w = v;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : out) w -= q * q.dot(w);
    }
    const Scalar norm = w.norm();
    if (norm < tol) continue;
    out.push_back(w / norm);
  }
  return out;
}

template <typename Scalar>
std::vector<VectorX<Scalar>> gram_schmidt(const std::vector<VectorX<Scalar>>& vectors,
                                          Scalar tol = Scalar(1e-10))
{
  return gram_schmidt(std::span<const VectorX<Scalar>>(vectors), tol);
}

}  // namespace qecwb
