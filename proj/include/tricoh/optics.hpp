#pragma once

// Preparation and tomography bench for a beam carried by two orthonormal
// transverse modes G_a and G_b. Elements act as 2x2 operators on the
// (G_a, G_b) coefficient pair of every temporal mode.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>

#include "tricoh/coherence.hpp"
#include "tricoh/field.hpp"

namespace tricoh {

/// Normalized spectral powers w_k at angular frequencies omega_k.
template <typename Real = double>
class SpectralModel {
 public:
  SpectralModel(RVector<Real> frequencies, RVector<Real> weights)
      : frequencies_(std::move(frequencies)), weights_(std::move(weights)) {
    if (frequencies_.size() < 1 || frequencies_.size() != weights_.size()) {
      throw DimensionError("spectral model needs matching, nonempty frequency and weight lists");
    }
    if (!frequencies_.allFinite() || !weights_.allFinite() || (weights_.array() < Real(0)).any()) {
      throw DomainError("spectral weights must be finite and nonnegative");
    }
    const Real total = weights_.sum();
    if (!(total > Real(0))) throw DomainError("spectral weights sum to zero");
    weights_ /= total;
  }

  /// `count` equally spaced lines spanning center +- span_widths * width,
  /// weighted by a Gaussian of standard deviation `width`.
  static SpectralModel gaussian(Real center, Real width, Index count = 64,
                                Real span_widths = Real(4)) {
    if (!(width > Real(0)) || count < 1) throw DomainError("gaussian spectrum needs width > 0");
    RVector<Real> freqs(count);
    RVector<Real> weights(count);
    for (Index k = 0; k < count; ++k) {
      const Real x = count == 1 ? Real(0)
                                : span_widths * (Real(2) * Real(k) / Real(count - 1) - Real(1));
      freqs(k) = center + x * width;
      weights(k) = std::exp(-x * x / Real(2));
    }
    return SpectralModel(std::move(freqs), std::move(weights));
  }

  static SpectralModel monochromatic(Real omega) {
    return SpectralModel(RVector<Real>::Constant(1, omega), RVector<Real>::Ones(1));
  }

  const RVector<Real>& frequencies() const { return frequencies_; }
  const RVector<Real>& weights() const { return weights_; }

 private:
  RVector<Real> frequencies_;
  RVector<Real> weights_;
};

/// gamma(tau) = sum_k w_k exp(-i omega_k tau); its modulus is delta and its
/// argument phi for a delay tau between the two arms.
template <typename Real>
std::complex<Real> spectral_overlap(const SpectralModel<Real>& model, Real tau) {
  std::complex<Real> sum(0);
  for (Index k = 0; k < model.frequencies().size(); ++k) {
    sum += model.weights()(k) * std::polar(Real(1), -model.frequencies()(k) * tau);
  }
  return sum;
}

enum class ElementKind { Identity, DovePrism, ModeConverter, Filter };
enum class Arm { A, B };

template <typename Real = double>
struct ElementTransform {
  ElementKind kind = ElementKind::Identity;
  /// Prism angle for DovePrism, transmittance for Filter, unused otherwise.
  Real parameter = 0;
  Arm arm = Arm::A;
  CMatrix2<Real> matrix = CMatrix2<Real>::Identity();

  std::string label() const {
    switch (kind) {
      case ElementKind::Identity: return "identity";
      case ElementKind::DovePrism: return "dove_prism(" + std::to_string(parameter) + ")";
      case ElementKind::ModeConverter: return "mode_converter";
      case ElementKind::Filter:
        return std::string("filter(") + std::to_string(parameter) + (arm == Arm::A ? ",a)" : ",b)");
    }
    return "?";
  }
};

template <typename Real = double>
ElementTransform<Real> identity_element() {
  return {};
}

/// A prism turned by alpha rotates the transverse image by 2 alpha, which
/// is the proper rotation [[cos 2a, -sin 2a], [sin 2a, cos 2a]] on (G_a, G_b).
template <typename Real>
ElementTransform<Real> dove_prism(Real alpha) {
  ElementTransform<Real> e;
  e.kind = ElementKind::DovePrism;
  e.parameter = alpha;
  const Real c = std::cos(Real(2) * alpha);
  const Real s = std::sin(Real(2) * alpha);
  e.matrix << c, -s, s, c;
  return e;
}

/// Cylindrical-lens converter: relative phase i on G_b, diag(1, i).
template <typename Real = double>
ElementTransform<Real> mode_converter() {
  ElementTransform<Real> e;
  e.kind = ElementKind::ModeConverter;
  e.matrix << Real(1), Real(0), Real(0), std::complex<Real>(0, 1);
  return e;
}

/// Intensity transmittance t on one arm: amplitude scaled by sqrt(t).
template <typename Real>
ElementTransform<Real> attenuation_filter(Real transmittance, Arm arm) {
  if (!(transmittance >= Real(0) && transmittance <= Real(1))) {
    throw DomainError("filter transmittance must lie in [0, 1]");
  }
  ElementTransform<Real> e;
  e.kind = ElementKind::Filter;
  e.parameter = transmittance;
  e.arm = arm;
  e.matrix(arm == Arm::A ? 0 : 1, arm == Arm::A ? 0 : 1) = std::sqrt(transmittance);
  return e;
}

namespace detail {

// Coefficients with the spatial mode pair as rows.
template <typename Real>
CMatrix<Real> spatial_rows(const BipartitePureState<Real>& state) {
  if (state.first() == Dof::Space && state.rows() == 2) return state.coeffs();
  if (state.second() == Dof::Space && state.cols() == 2) return state.coeffs().transpose();
  throw DimensionError("state has no two-dimensional spatial side (" + state.pair_label() + ")");
}

template <typename Real>
BipartitePureState<Real> with_spatial_rows(const BipartitePureState<Real>& like,
                                           CMatrix<Real> rows) {
  if (like.first() == Dof::Space) {
    return BipartitePureState<Real>(std::move(rows), like.first(), like.second());
  }
  return BipartitePureState<Real>(rows.transpose(), like.first(), like.second());
}

}  // namespace detail

/// Two-mode state cos(theta/2) G_a (x) e_a + sin(theta/2) G_b (x) e_b with
/// <e_a|e_b> = gamma, embedded in the first two of `temporal_modes` modes.
template <typename Real>
BipartitePureState<Real> prepare_state(Real theta, std::complex<Real> gamma,
                                       Index temporal_modes = 8) {
  if (!std::isfinite(theta) || !std::isfinite(gamma.real()) || !std::isfinite(gamma.imag())) {
    throw DomainError("non-finite preparation parameter");
  }
  Real delta = std::abs(gamma);
  if (delta > Real(1) + Real(1e-12)) throw DomainError("|gamma| must not exceed 1");
  if (delta > Real(1)) {
    gamma /= delta;
    delta = Real(1);
  }
  if (temporal_modes < 2) throw DimensionError("prepared state needs at least two temporal modes");
  CMatrix<Real> a = CMatrix<Real>::Zero(2, temporal_modes);
  const Real ca = std::cos(theta / Real(2));
  const Real sb = std::sin(theta / Real(2));
  a(0, 0) = ca;
  a(1, 0) = sb * gamma;
  a(1, 1) = sb * std::sqrt((Real(1) - delta) * (Real(1) + delta));
  return BipartitePureState<Real>(std::move(a), Dof::Space, Dof::Time);
}

template <typename Real>
BipartitePureState<Real> prepare_state(const TrParams<Real>& params, Index temporal_modes = 8) {
  return prepare_state(params.theta(), params.gamma(), temporal_modes);
}

/// Applies the element to the spatial pair and renormalizes.
template <typename Real>
BipartitePureState<Real> apply_element(const BipartitePureState<Real>& state,
                                       const ElementTransform<Real>& element) {
  CMatrix<Real> rows = detail::spatial_rows(state);
  CMatrix<Real> out = element.matrix * rows;
  if (out.squaredNorm() == Real(0)) throw NullProjection("element blocked the whole beam");
  return detail::with_spatial_rows(state, std::move(out));
}

template <typename Real = double>
struct PortIntensities {
  Real a = 0;
  Real b = 0;
  Real total() const { return a + b; }
};

/// Port a receives G_a, port b receives G_b.
template <typename Real>
PortIntensities<Real> mzim_intensities(const BipartitePureState<Real>& state) {
  const CMatrix<Real> rows = detail::spatial_rows(state);
  return {rows.row(0).squaredNorm(), rows.row(1).squaredNorm()};
}

template <typename Real = double>
struct StokesVector {
  Real s0 = 0;
  Real s1 = 0;
  Real s2 = 0;
  Real s3 = 0;

  StokesVector normalized() const { return {Real(1), s1 / s0, s2 / s0, s3 / s0}; }
  /// Poincare-sphere radius relative to s0.
  Real degree_of_polarization() const { return std::sqrt(s1 * s1 + s2 * s2 + s3 * s3) / s0; }
};

/// Order of the three analyzer settings in TomographyReport::intensities.
enum MeasurementSetting : int {
  kDirect = 0,    ///< MZIM alone: G_a / G_b
  kDiagonal = 1,  ///< DP2 at pi/8, then MZIM: G_a -+ G_b
  kCircular = 2,  ///< MC, DP2 at pi/8, then MZIM: G_a +- i G_b
};

template <typename Real = double>
struct TomographyReport {
  std::array<PortIntensities<Real>, 3> intensities{};
  StokesVector<Real> stokes;
  Real P = 0;
  Real C = 0;
  Real residual = 0;
};

namespace detail {

inline std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    stream};
  return std::mt19937_64(seq);
}

// Adds independent N(0, sigma) noise to each reading; sigma = 0 is exact.
template <typename Real>
class DetectorNoise {
 public:
  DetectorNoise(Real sigma, std::uint64_t seed, std::uint32_t stream)
      : sigma_(sigma), engine_(seeded_engine(seed, stream)) {
    if (!(sigma >= Real(0)) || !std::isfinite(sigma)) {
      throw DomainError("noise sigma must be finite and nonnegative");
    }
  }

  Real operator()(Real intensity) {
    if (sigma_ == Real(0)) return intensity;
    return intensity + normal_(engine_) * sigma_;
  }

  PortIntensities<Real> operator()(PortIntensities<Real> ports) {
    ports.a = (*this)(ports.a);
    ports.b = (*this)(ports.b);
    return ports;
  }

 private:
  Real sigma_;
  std::mt19937_64 engine_;
  std::normal_distribution<Real> normal_{Real(0), Real(1)};
};

}  // namespace detail

/// Three-setting tomography of the spatial-mode Stokes parameters.
///
/// S1, S2 and S3 are port differences of the direct, diagonal and circular
/// settings. S0 is the mean of the three port totals, each of which sees
/// the full beam. With noise_sigma > 0 every port reading carries seeded
/// additive Gaussian noise.
template <typename Real>
TomographyReport<Real> measure_stokes(const BipartitePureState<Real>& state, Real noise_sigma = 0,
                                      std::uint64_t seed = 0) {
  constexpr Real kEighthTurn = std::numbers::pi_v<Real> / Real(8);
  detail::DetectorNoise<Real> noise(noise_sigma, seed, 0);
  TomographyReport<Real> report;
  report.intensities[kDirect] = noise(mzim_intensities(state));
  const auto prism = dove_prism(kEighthTurn);
  report.intensities[kDiagonal] = noise(mzim_intensities(apply_element(state, prism)));
  report.intensities[kCircular] =
      noise(mzim_intensities(apply_element(apply_element(state, mode_converter<Real>()), prism)));

  auto& s = report.stokes;
  s.s0 = (report.intensities[kDirect].total() + report.intensities[kDiagonal].total() +
          report.intensities[kCircular].total()) /
         Real(3);
  if (!(s.s0 > Real(0))) throw NumericalError("measured total intensity is not positive");
  s.s1 = report.intensities[kDirect].a - report.intensities[kDirect].b;
  s.s2 = report.intensities[kDiagonal].b - report.intensities[kDiagonal].a;
  s.s3 = report.intensities[kCircular].a - report.intensities[kCircular].b;

  report.P = s.degree_of_polarization();
  report.C = std::sqrt(std::max(Real(0), Real(1) - report.P * report.P));
  report.residual = constraint_residual(report.P, report.C);
  return report;
}

template <typename Real = double>
struct PrepStageEstimate {
  Real theta = 0;
  Real delta = 0;
  Real C = 0;
};

/// Preparation-stage estimate of concurrence, independent of tomography.
///
/// The two arm intensities give theta. The arms are then recombined, the b
/// arm passing a Dove prism at pi/4 that maps G_b onto G_a, and the combined
/// intensity is recorded at four extra delay phases 0, pi/2, pi, 3pi/2.
/// The fringe visibility V = 2 sqrt(I_a I_b) delta / (I_a + I_b) gives delta.
template <typename Real>
PrepStageEstimate<Real> prepstage_estimate(Real theta_true, std::complex<Real> gamma_true,
                                           Real noise_sigma = 0, std::uint64_t seed = 0) {
  constexpr Real kPi = std::numbers::pi_v<Real>;
  const BipartitePureState<Real> state = prepare_state(theta_true, gamma_true);
  detail::DetectorNoise<Real> noise(noise_sigma, seed, 1);

  const CMatrix<Real> rows = detail::spatial_rows(state);
  const Real ia = noise(rows.row(0).squaredNorm());
  const Real ib = noise(rows.row(1).squaredNorm());

  CMatrix<Real> arm_a = CMatrix<Real>::Zero(2, rows.cols());
  CMatrix<Real> arm_b = CMatrix<Real>::Zero(2, rows.cols());
  arm_a.row(0) = rows.row(0);
  arm_b.row(1) = rows.row(1);
  arm_b = dove_prism(kPi / Real(4)).matrix * arm_b;

  std::array<Real, 4> fringe{};
  for (int step = 0; step < 4; ++step) {
    const std::complex<Real> delay = std::polar(Real(1), Real(step) * kPi / Real(2));
    fringe[step] = noise(CMatrix<Real>(arm_a + delay * arm_b).squaredNorm());
  }

  PrepStageEstimate<Real> est;
  const Real total = ia + ib;
  if (!(total > Real(0))) throw NumericalError("arm intensities sum to zero");
  est.theta = std::acos(std::clamp((ia - ib) / total, Real(-1), Real(1)));

  const Real mean = (fringe[0] + fringe[1] + fringe[2] + fringe[3]) / Real(4);
  const Real swing =
      std::hypot(fringe[0] - fringe[2], fringe[1] - fringe[3]) / Real(2);
  const Real arm_product = ia * ib;
  if (arm_product > Real(1e-24) * total * total && mean > Real(0)) {
    const Real visibility = swing / mean;
    est.delta = std::clamp(visibility * total / (Real(2) * std::sqrt(arm_product)), Real(0),
                           Real(1));
  } else {
    // One arm is dark: the beam is trivially coherent with itself.
    est.delta = Real(1);
  }
  est.C = std::abs(std::sin(est.theta)) *
          std::sqrt((Real(1) - est.delta) * (Real(1) + est.delta));
  return est;
}

}  // namespace tricoh
