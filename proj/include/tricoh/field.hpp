#pragma once

// Three degree-of-freedom field amplitudes (spin x time x space) and the
// projections that reduce them to two-party pure states.
//
// Basis functions are abstract orthonormal labels. Only the coefficient
// tensor is ever stored; the temporal and spatial expansions are truncated
// to K and M terms chosen by the caller.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>
#include <complex>
#include <string>
#include <utility>

#include "tricoh/errors.hpp"

namespace tricoh {

enum class Dof { Spin, Time, Space };

inline const char* to_string(Dof dof) {
  switch (dof) {
    case Dof::Spin: return "spin";
    case Dof::Time: return "time";
    case Dof::Space: return "space";
  }
  return "?";
}

using Index = Eigen::Index;

template <typename Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
template <typename Real>
using CVector2 = Eigen::Matrix<std::complex<Real>, 2, 1>;
template <typename Real>
using CMatrix2 = Eigen::Matrix<std::complex<Real>, 2, 2>;

/// Complex amplitudes d(i, k, m), i spin (2), k time (K), m space (M).
///
/// Storage is a 2 x (K*M) matrix with column k + K*m, so each spatial mode
/// owns a contiguous 2 x K block. Indices are zero based.
template <typename Real = double>
class FieldState {
 public:
  using Scalar = std::complex<Real>;

  FieldState(Index temporal_modes, Index spatial_modes)
      : temporal_(temporal_modes), spatial_(spatial_modes) {
    if (temporal_modes < 1 || spatial_modes < 1) {
      throw DimensionError("field needs K >= 1 and M >= 1");
    }
    coeffs_ = CMatrix<Real>::Zero(2, temporal_modes * spatial_modes);
  }

  Index temporal_modes() const { return temporal_; }
  Index spatial_modes() const { return spatial_; }

  Scalar& operator()(Index spin, Index k, Index m) { return coeffs_(spin, k + temporal_ * m); }
  const Scalar& operator()(Index spin, Index k, Index m) const {
    return coeffs_(spin, k + temporal_ * m);
  }

  /// Spin x time block belonging to spatial mode m.
  auto spatial_slice(Index m) const { return coeffs_.middleCols(m * temporal_, temporal_); }

  const CMatrix<Real>& storage() const { return coeffs_; }
  Real squared_norm() const { return coeffs_.squaredNorm(); }

 private:
  Index temporal_;
  Index spatial_;
  CMatrix<Real> coeffs_;
};

/// Unit-norm coefficient matrix of a pure state over two degrees of freedom.
///
/// Construction always normalizes, so trace(A A^dagger) = 1 holds for every
/// instance.
template <typename Real = double>
class BipartitePureState {
 public:
  BipartitePureState(CMatrix<Real> coeffs, Dof first, Dof second)
      : coeffs_(std::move(coeffs)), labels_(first, second) {
    if (first == second) {
      throw DomainError("bipartite state needs two distinct degrees of freedom");
    }
    if (coeffs_.size() == 0) {
      throw DimensionError("bipartite state has an empty side");
    }
    if (!coeffs_.allFinite()) {
      throw DomainError("bipartite state has non-finite coefficients");
    }
    const Real norm = coeffs_.norm();
    if (norm == Real(0)) {
      throw ZeroField();
    }
    coeffs_ /= norm;
  }

  const CMatrix<Real>& coeffs() const { return coeffs_; }
  Index rows() const { return coeffs_.rows(); }
  Index cols() const { return coeffs_.cols(); }
  Dof first() const { return labels_.first; }
  Dof second() const { return labels_.second; }
  const std::pair<Dof, Dof>& labels() const { return labels_; }

  std::string pair_label() const {
    return std::string(to_string(labels_.first)) + "-" + to_string(labels_.second);
  }

 private:
  CMatrix<Real> coeffs_;
  std::pair<Dof, Dof> labels_;
};

/// A = sum_j sqrt(eigenvalues[j]) left.col(j) right.col(j)^dagger,
/// eigenvalues non-increasing.
template <typename Real = double>
struct SchmidtResult {
  RVector<Real> eigenvalues;
  CMatrix<Real> left;
  CMatrix<Real> right;

  CMatrix<Real> reconstruct() const {
    CMatrix<Real> out = CMatrix<Real>::Zero(left.rows(), right.rows());
    for (Index j = 0; j < eigenvalues.size(); ++j) {
      out += std::sqrt(eigenvalues(j)) * left.col(j) * right.col(j).adjoint();
    }
    return out;
  }
};

template <typename Real>
FieldState<Real> normalize(const FieldState<Real>& field) {
  if (!field.storage().allFinite()) {
    throw DomainError("field has non-finite coefficients");
  }
  const Real norm2 = field.squared_norm();
  if (norm2 == Real(0)) {
    throw ZeroField();
  }
  FieldState<Real> out(field.temporal_modes(), field.spatial_modes());
  const Real scale = Real(1) / std::sqrt(norm2);
  for (Index m = 0; m < field.spatial_modes(); ++m) {
    for (Index k = 0; k < field.temporal_modes(); ++k) {
      for (Index i = 0; i < 2; ++i) out(i, k, m) = field(i, k, m) * scale;
    }
  }
  return out;
}

namespace detail {

// A projected amplitude counts as null when it carries less than 1e-24 of
// the parent intensity (amplitude ratio 1e-12).
template <typename Real>
bool is_null_projection(Real projected_norm2, Real parent_norm2) {
  return !(projected_norm2 > Real(1e-24) * parent_norm2);
}

// Orthonormalizes candidates in order. A column with no independent
// residual is replaced by the standard basis vector that keeps the most
// weight after projecting out the columns already accepted.
template <typename Real>
CMatrix<Real> orthonormalize_columns(const CMatrix<Real>& candidates) {
  const Index dim = candidates.rows();
  const Index count = candidates.cols();
  if (count > dim) throw DimensionError("more columns than dimensions");
  CMatrix<Real> basis(dim, count);
  auto project_out = [&basis](CVector<Real>& v, Index accepted) {
    for (int pass = 0; pass < 2; ++pass) {
      for (Index p = 0; p < accepted; ++p) v -= basis.col(p) * basis.col(p).dot(v);
    }
  };
  for (Index j = 0; j < count; ++j) {
    CVector<Real> v = candidates.col(j);
    const Real scale = v.norm();
    project_out(v, j);
    if (scale == Real(0) || !(v.norm() > Real(1e-8) * scale)) {
      Real best = Real(-1);
      for (Index u = 0; u < dim; ++u) {
        CVector<Real> trial = CVector<Real>::Unit(dim, u);
        project_out(trial, j);
        if (trial.norm() > best) {
          best = trial.norm();
          v = trial;
        }
      }
    }
    basis.col(j) = v.normalized();
  }
  return basis;
}

}  // namespace detail

/// Spin x time state found in spatial mode m.
template <typename Real>
BipartitePureState<Real> project_spatial(const FieldState<Real>& field, Index m) {
  if (m < 0 || m >= field.spatial_modes()) {
    throw DomainError("spatial index out of range");
  }
  CMatrix<Real> slice = field.spatial_slice(m);
  if (detail::is_null_projection(slice.squaredNorm(), field.squared_norm())) {
    throw NullProjection("spatial mode " + std::to_string(m) + " is empty");
  }
  return BipartitePureState<Real>(std::move(slice), Dof::Spin, Dof::Time);
}

/// Spin x space state found in temporal mode k.
template <typename Real>
BipartitePureState<Real> project_temporal(const FieldState<Real>& field, Index k) {
  if (k < 0 || k >= field.temporal_modes()) {
    throw DomainError("temporal index out of range");
  }
  CMatrix<Real> slice(2, field.spatial_modes());
  for (Index m = 0; m < field.spatial_modes(); ++m) {
    slice(0, m) = field(0, k, m);
    slice(1, m) = field(1, k, m);
  }
  if (detail::is_null_projection(slice.squaredNorm(), field.squared_norm())) {
    throw NullProjection("temporal mode " + std::to_string(k) + " is empty");
  }
  return BipartitePureState<Real>(std::move(slice), Dof::Spin, Dof::Space);
}

/// Time x space state left after analyzing the spin along `direction`:
/// c(k, m) = sum_i conj(direction_i) d(i, k, m).
template <typename Real>
BipartitePureState<Real> project_spin(const FieldState<Real>& field,
                                      const CVector2<Real>& direction) {
  if (!direction.allFinite() || std::abs(direction.norm() - Real(1)) > Real(1e-10)) {
    throw DomainError("spin direction must have unit norm");
  }
  const Index K = field.temporal_modes();
  const Index M = field.spatial_modes();
  CMatrix<Real> amplitudes(K, M);
  for (Index m = 0; m < M; ++m) {
    amplitudes.col(m) = field.spatial_slice(m).transpose() * direction.conjugate();
  }
  if (detail::is_null_projection(amplitudes.squaredNorm(), field.squared_norm())) {
    throw NullProjection("spin direction is orthogonal to the field");
  }
  return BipartitePureState<Real>(std::move(amplitudes), Dof::Time, Dof::Space);
}

/// Schmidt decomposition from the eigenvectors of the Gram matrix of the
/// smaller side. Weights are taken as squared norms of the mapped vectors
/// (A^dagger u_j), which avoids the precision loss of square-rooting Gram
/// eigenvalues near zero. Degenerate weights get an arbitrary orthonormal
/// basis.
template <typename Real>
SchmidtResult<Real> schmidt(const BipartitePureState<Real>& state) {
  const CMatrix<Real>& a = state.coeffs();
  const bool rows_smaller = a.rows() <= a.cols();
  const CMatrix<Real> gram = rows_smaller ? CMatrix<Real>(a * a.adjoint())
                                          : CMatrix<Real>(a.adjoint() * a);
  Eigen::SelfAdjointEigenSolver<CMatrix<Real>> solver(gram);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("Gram matrix eigensolve failed");
  }
  if (solver.eigenvalues().minCoeff() < Real(-1e-12)) {
    throw NumericalError("negative Gram eigenvalue");
  }
  const Index rank = gram.rows();
  const CMatrix<Real>& basis = solver.eigenvectors();
  const CMatrix<Real> mapped = rows_smaller ? CMatrix<Real>(a.adjoint() * basis)
                                            : CMatrix<Real>(a * basis);

  std::vector<Index> order(static_cast<std::size_t>(rank));
  std::iota(order.begin(), order.end(), Index(0));
  // Solver order is ascending; start from the reverse so ties keep it.
  std::reverse(order.begin(), order.end());
  std::stable_sort(order.begin(), order.end(), [&mapped](Index x, Index y) {
    return mapped.col(x).squaredNorm() > mapped.col(y).squaredNorm();
  });

  SchmidtResult<Real> result;
  result.eigenvalues.resize(rank);
  CMatrix<Real> small_side(basis.rows(), rank);
  CMatrix<Real> large_candidates(mapped.rows(), rank);
  for (Index j = 0; j < rank; ++j) {
    const Index src = order[static_cast<std::size_t>(j)];
    result.eigenvalues(j) = mapped.col(src).squaredNorm();
    small_side.col(j) = basis.col(src);
    large_candidates.col(j) = mapped.col(src);
  }
  CMatrix<Real> large_side = detail::orthonormalize_columns<Real>(large_candidates);
  if (rows_smaller) {
    result.left = std::move(small_side);
    result.right = std::move(large_side);
  } else {
    // A v_j = sigma_j u_j, so the roles of the mapped vectors flip.
    result.left = std::move(large_side);
    result.right = std::move(small_side);
  }
  return result;
}

}  // namespace tricoh
