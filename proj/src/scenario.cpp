#include "tricoh/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "tricoh/coherence.hpp"
#include "tricoh/optics.hpp"

namespace tricoh {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

ResultRow run_analyze(double theta, double delta, double phi, double noise_sigma,
                      std::uint64_t seed) {
  const TrParams<double> params(theta, delta, phi);
  const auto state = prepare_state(params);
  const auto tomo = measure_stokes(state, noise_sigma, seed);
  const auto prep = prepstage_estimate(theta, params.gamma(), noise_sigma, seed);

  const auto s = tomo.stokes.normalized();
  ResultRow row;
  row.label = "analyze";
  row.theta = theta;
  row.phi = phi;
  row.S1 = s.s1;
  row.S2 = s.s2;
  row.S3 = s.s3;
  row.P = tomo.P;
  row.C = prep.C;
  row.constraint_sum = row.P * row.P + row.C * row.C;
  return row;
}

const std::array<Table1Reference, 5>& table1_reference() {
  static const std::array<Table1Reference, 5> rows{{
      {"l", 3 * kPi / 2, 0.0, 0.026, -0.916, 0.037, 0.918, 0.392, 0.996},
      {"c", kPi / 2, -kPi / 2, 0.029, -0.026, -0.889, 0.890, 0.455, 0.998},
      {"e", kPi / 2, kPi / 4, 0.024, 0.679, 0.625, 0.923, 0.384, 0.999},
      {"p", kPi / 2, 5 * kPi / 4, 0.052, -0.271, -0.306, 0.307, 0.945, 0.988},
      {"u", kPi / 2, 2 * kPi, 0.042, -0.025, -0.013, 0.050, 0.991, 0.985},
  }};
  return rows;
}

double Table1Entry::max_stokes_deviation() const {
  return std::max({std::abs(simulated.S1 - reference.S1), std::abs(simulated.S2 - reference.S2),
                   std::abs(simulated.S3 - reference.S3)});
}

double infer_delta(double theta, double P) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  if (s * s < 1e-24) throw DomainError("delta cannot be inferred when sin(theta) = 0");
  const double delta2 = (P * P - c * c) / (s * s);
  return std::sqrt(std::clamp(delta2, 0.0, 1.0));
}

std::vector<Table1Entry> run_table1(double noise_sigma, std::uint64_t seed) {
  std::vector<Table1Entry> out;
  std::uint64_t row_seed = seed;
  auto emit = [&](const Table1Reference& ref, double measured_P, const std::string& source,
                  const std::string& label) {
    Table1Entry entry;
    entry.reference = ref;
    entry.delta = infer_delta(ref.theta, measured_P);
    entry.delta_source = source;
    entry.simulated = run_analyze(ref.theta, entry.delta, ref.phi, noise_sigma, row_seed++);
    entry.simulated.label = label;
    out.push_back(std::move(entry));
  };
  for (const auto& ref : table1_reference()) {
    emit(ref, ref.P, "P", ref.label);
    const double stokes_norm = std::sqrt(ref.S1 * ref.S1 + ref.S2 * ref.S2 + ref.S3 * ref.S3);
    // Measured P should equal the measured Stokes radius; where the two
    // disagree by more than the 0.042 measurement spread, run both.
    if (std::abs(stokes_norm - ref.P) > 0.042) {
      out.back().flagged = true;
      emit(ref, stokes_norm, "stokes", ref.label + "_stokes");
      out.back().flagged = true;
    }
  }
  return out;
}

std::vector<double> Range::values() const {
  if (count < 1) throw DomainError("range count must be at least 1");
  if (!std::isfinite(start) || !std::isfinite(stop)) throw DomainError("non-finite range bound");
  std::vector<double> v(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    v[i] = count == 1 ? start : start + (stop - start) * i / (count - 1);
  }
  return v;
}

std::vector<ResultRow> run_sphere(const GridSpec& grid, double noise_sigma, std::uint64_t seed) {
  std::vector<ResultRow> rows;
  std::uint64_t index = 0;
  for (double theta : grid.theta.values()) {
    for (double delta : grid.delta.values()) {
      for (double phi : grid.phi.values()) {
        ResultRow row = run_analyze(theta, delta, phi, noise_sigma, seed + index);
        row.label = "s" + std::to_string(index);
        rows.push_back(std::move(row));
        ++index;
      }
    }
  }
  return rows;
}

std::vector<ResultRow> run_spiral(double rate, double phi_max, int steps, double noise_sigma,
                                  std::uint64_t seed) {
  if (!(rate > 0) || !std::isfinite(rate)) throw DomainError("spiral rate must be positive");
  if (!(phi_max > 0) || !std::isfinite(phi_max)) throw DomainError("spiral phi_max must be positive");
  if (steps < 2) throw DomainError("spiral needs at least two steps");
  std::vector<ResultRow> rows;
  for (int j = 0; j < steps; ++j) {
    const double phi = phi_max * j / (steps - 1);
    ResultRow row = run_analyze(kPi / 2, std::exp(-rate * phi), phi, noise_sigma,
                                seed + static_cast<std::uint64_t>(j));
    row.label = "spiral" + std::to_string(j);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace tricoh
