#pragma once

// Degree of polarization and concurrence of a two-party pure state with a
// two-dimensional side, and the complementarity P^2 + C^2 = 1 they obey.

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <utility>

#include "tricoh/field.hpp"

namespace tricoh {

/// Reduced 2x2 Hermitian positive semidefinite matrix.
///
/// The determinant lambda1 * lambda2 may be supplied separately when it is
/// known to better relative precision than a*d - |b|^2 (see
/// coherence_matrix), which keeps small concurrences accurate.
template <typename Real = double>
class CoherenceMatrix {
 public:
  explicit CoherenceMatrix(const CMatrix2<Real>& entries) : CoherenceMatrix(entries, validate(entries)) {}

  CoherenceMatrix(const CMatrix2<Real>& entries, Real determinant) {
    validate(entries);
    if (!std::isfinite(determinant)) throw DomainError("coherence determinant is not finite");
    entries_ = (entries + entries.adjoint()) / Real(2);
    determinant_ = determinant;
    if (trace() < Real(0)) throw DomainError("coherence matrix has negative trace");
  }

  const CMatrix2<Real>& entries() const { return entries_; }
  Real trace() const { return entries_(0, 0).real() + entries_(1, 1).real(); }
  Real determinant() const { return determinant_; }

  /// (lambda1, lambda2) with lambda1 >= lambda2 >= 0. A determinant drifting
  /// below zero by up to 1e-12 (relative to trace^2) is clamped; more is an
  /// error.
  std::pair<Real, Real> eigenvalues() const {
    const Real a = entries_(0, 0).real();
    const Real d = entries_(1, 1).real();
    const Real tr = a + d;
    if (determinant_ < Real(-1e-12) * std::max(Real(1), tr * tr)) {
      throw NumericalError("coherence matrix is not positive semidefinite");
    }
    const Real upper = tr / Real(2) + std::hypot((a - d) / Real(2), std::abs(entries_(1, 0)));
    const Real lower = upper > Real(0) ? std::max(Real(0), determinant_) / upper : Real(0);
    return {upper, std::min(lower, upper)};
  }

 private:
  // Checks Hermiticity and returns a*d - |b|^2.
  static Real validate(const CMatrix2<Real>& m) {
    if (!m.allFinite()) throw DomainError("coherence matrix is not finite");
    const Real scale = std::max(Real(1), m.cwiseAbs().maxCoeff());
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > Real(1e-12) * scale) {
      throw DomainError("coherence matrix is not Hermitian");
    }
    return m(0, 0).real() * m(1, 1).real() - std::norm(m(1, 0));
  }

  CMatrix2<Real> entries_;
  Real determinant_ = 0;
};

template <typename Real = double>
struct CoherenceReport {
  Real P = 0;
  Real C = 0;
  Real residual = 0;
  std::string pair_label;
};

/// Parameters of the two-spatial-mode state: theta splits the intensity,
/// gamma = delta * exp(i phi) is the overlap of the two temporal amplitudes.
template <typename Real = double>
class TrParams {
 public:
  TrParams(Real theta, Real delta, Real phi) : theta_(theta), delta_(delta), phi_(phi) {
    if (!std::isfinite(theta) || !std::isfinite(phi) || !std::isfinite(delta)) {
      throw DomainError("non-finite state parameter");
    }
    if (delta < Real(0) || delta > Real(1)) throw DomainError("delta must lie in [0, 1]");
  }

  Real theta() const { return theta_; }
  Real delta() const { return delta_; }
  Real phi() const { return phi_; }
  std::complex<Real> gamma() const { return std::polar(delta_, phi_); }

 private:
  Real theta_;
  Real delta_;
  Real phi_;
};

/// Reduces the state over its other side. When both sides are
/// two-dimensional the first one is kept. The determinant is the
/// Cauchy-Binet sum of squared 2x2 minors of the coefficient matrix.
template <typename Real>
CoherenceMatrix<Real> coherence_matrix(const BipartitePureState<Real>& state) {
  const CMatrix<Real>& a = state.coeffs();
  if (a.rows() != 2 && a.cols() != 2) {
    throw DimensionError("coherence matrix needs a two-dimensional side, got " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
  // Spatial pair (or whichever side is 2) as rows.
  const CMatrix<Real> pair = a.rows() == 2 ? a : CMatrix<Real>(a.transpose());
  const CMatrix2<Real> gram = pair * pair.adjoint();
  Real minors = 0;
  for (Index j = 0; j < pair.cols(); ++j) {
    for (Index k = j + 1; k < pair.cols(); ++k) {
      minors += std::norm(pair(0, j) * pair(1, k) - pair(0, k) * pair(1, j));
    }
  }
  return CoherenceMatrix<Real>(gram, minors);
}

/// P = lambda1 - lambda2, relative to the trace.
template <typename Real>
Real degree_of_polarization(const CoherenceMatrix<Real>& cm) {
  const auto [l1, l2] = cm.eigenvalues();
  const Real total = l1 + l2;
  return total > Real(0) ? (l1 - l2) / total : Real(0);
}

/// C = 2 sqrt(lambda1 lambda2), relative to the trace.
template <typename Real>
Real concurrence(const CoherenceMatrix<Real>& cm) {
  const auto [l1, l2] = cm.eigenvalues();
  const Real total = l1 + l2;
  return total > Real(0) ? Real(2) * std::sqrt(l1 * l2) / total : Real(0);
}

/// |P^2 + C^2 - 1|. Inputs above one (noisy estimates) are accepted.
template <typename Real>
Real constraint_residual(Real P, Real C) {
  if (!std::isfinite(P) || !std::isfinite(C) || P < Real(0) || C < Real(0)) {
    throw DomainError("P and C must be finite and nonnegative");
  }
  return std::abs(P * P + C * C - Real(1));
}

template <typename Real>
CoherenceReport<Real> analyze(const BipartitePureState<Real>& state) {
  const CoherenceMatrix<Real> cm = coherence_matrix(state);
  CoherenceReport<Real> report;
  report.P = degree_of_polarization(cm);
  report.C = concurrence(cm);
  report.residual = constraint_residual(report.P, report.C);
  report.pair_label = state.pair_label();
  return report;
}

/// P = sqrt(cos^2 theta + delta^2 sin^2 theta).
template <typename Real>
Real analytic_P(const TrParams<Real>& params) {
  const Real c = std::cos(params.theta());
  const Real s = std::sin(params.theta());
  return std::sqrt(c * c + params.delta() * params.delta() * s * s);
}

/// C = |sin theta| sqrt(1 - delta^2).
template <typename Real>
Real analytic_C(const TrParams<Real>& params) {
  const Real d = params.delta();
  return std::abs(std::sin(params.theta())) * std::sqrt((Real(1) - d) * (Real(1) + d));
}

}  // namespace tricoh
