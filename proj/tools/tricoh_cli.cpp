// Command line driver: analyze | table1 | sphere | spiral | tomography.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tricoh/optics.hpp"
#include "tricoh/scenario.hpp"

namespace {

struct GlobalOptions {
  double noise_sigma = 0;
  std::uint64_t seed = 0;
  std::string out;
  bool json = false;
};

void emit(const GlobalOptions& opts, const std::vector<tricoh::ResultRow>& rows) {
  if (!opts.out.empty()) {
    tricoh::write_rows(opts.out, rows, opts.json);
  } else if (opts.json) {
    std::cout << tricoh::to_json(rows).dump(2) << '\n';
  } else {
    tricoh::write_csv(std::cout, rows);
  }
}

void print_table1(const std::vector<tricoh::Table1Entry>& entries) {
  std::fprintf(stderr, "%-9s %7s %6s | %7s %7s %7s | %7s %7s %7s | %6s %6s %6s | %s\n", "row",
               "delta", "from", "S1", "S2", "S3", "S1meas", "S2meas", "S3meas", "P", "Pmeas",
               "maxdev", "note");
  for (const auto& e : entries) {
    const auto& s = e.simulated;
    const auto& r = e.reference;
    std::fprintf(stderr,
                 "%-9s %7.4f %6s | %7.3f %7.3f %7.3f | %7.3f %7.3f %7.3f | %6.3f %6.3f %6.3f | %s\n",
                 s.label.c_str(), e.delta, e.delta_source.c_str(), s.S1, s.S2, s.S3, r.S1, r.S2,
                 r.S3, s.P, r.P, e.max_stokes_deviation(),
                 e.flagged ? "flagged: measured P and Stokes norm disagree" : "");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pairwise optical coherence simulator (spin, time, space)"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions opts;
  app.add_option("--noise-sigma", opts.noise_sigma, "Gaussian noise per port intensity")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--seed", opts.seed, "Noise seed");
  app.add_option("--out", opts.out, "CSV output path (stdout when omitted)");
  app.add_flag("--json", opts.json, "Emit JSON (mirror file next to --out, or stdout)");

  std::string theta = "pi/2";
  std::string phi = "0";
  double delta = 1.0;

  auto* analyze = app.add_subcommand("analyze", "Prepare and measure one state");
  analyze->add_option("--theta", theta, "Intensity split angle, e.g. 3pi/2")->required();
  analyze->add_option("--delta", delta, "Temporal overlap modulus in [0, 1]")->required();
  analyze->add_option("--phi", phi, "Relative phase, e.g. -pi/2");

  app.add_subcommand("table1", "Simulate the reference table of measured states");

  std::string theta_range = "0:2pi:13";
  std::string delta_range = "0:1:5";
  std::string phi_range = "0:2pi:9";
  auto* sphere = app.add_subcommand("sphere", "Sweep a (theta, delta, phi) grid");
  sphere->add_option("--theta", theta_range, "start:stop:count");
  sphere->add_option("--delta", delta_range, "start:stop:count");
  sphere->add_option("--phi", phi_range, "start:stop:count");

  double rate = 0.23;
  std::string phi_max = "4pi";
  int steps = 8;
  auto* spiral = app.add_subcommand("spiral", "States along delta = exp(-rate phi)");
  spiral->add_option("--rate", rate, "Spiral decay rate")->check(CLI::PositiveNumber);
  spiral->add_option("--phi-max", phi_max, "Largest phase");
  spiral->add_option("--steps", steps, "Number of states")->check(CLI::Range(2, 1000000));

  double tau = std::nan("");
  double omega0 = 0;
  double width = 1;
  int lines = 64;
  auto* tomography = app.add_subcommand(
      "tomography", "Full tomography report; gamma from --delta/--phi or a delayed spectrum");
  tomography->add_option("--theta", theta, "Intensity split angle")->required();
  auto* delta_opt = tomography->add_option("--delta", delta, "Temporal overlap modulus");
  tomography->add_option("--phi", phi, "Relative phase");
  auto* tau_opt = tomography->add_option("--tau", tau, "Arm delay; gamma from a Gaussian spectrum");
  tomography->add_option("--omega0", omega0, "Spectrum center frequency");
  tomography->add_option("--width", width, "Spectrum standard deviation")
      ->check(CLI::PositiveNumber);
  tomography->add_option("--lines", lines, "Spectral lines")->check(CLI::Range(1, 100000));
  delta_opt->excludes(tau_opt);

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed()) {
      emit(opts, {tricoh::run_analyze(tricoh::parse_angle(theta), delta, tricoh::parse_angle(phi),
                                      opts.noise_sigma, opts.seed)});
    } else if (app.got_subcommand("table1")) {
      const auto entries = tricoh::run_table1(opts.noise_sigma, opts.seed);
      print_table1(entries);
      std::vector<tricoh::ResultRow> rows;
      for (const auto& e : entries) rows.push_back(e.simulated);
      emit(opts, rows);
    } else if (sphere->parsed()) {
      tricoh::GridSpec grid{tricoh::parse_range(theta_range), tricoh::parse_range(delta_range),
                            tricoh::parse_range(phi_range)};
      emit(opts, tricoh::run_sphere(grid, opts.noise_sigma, opts.seed));
    } else if (spiral->parsed()) {
      emit(opts, tricoh::run_spiral(rate, tricoh::parse_angle(phi_max), steps, opts.noise_sigma,
                                    opts.seed));
    } else if (tomography->parsed()) {
      const double th = tricoh::parse_angle(theta);
      double relative_phase = tricoh::parse_angle(phi);
      std::complex<double> gamma = tricoh::TrParams<double>(th, delta, relative_phase).gamma();
      if (tau_opt->count() > 0) {
        const auto model = tricoh::SpectralModel<double>::gaussian(omega0, width, lines);
        gamma = tricoh::spectral_overlap(model, tau);
        relative_phase = std::arg(gamma);
      }
      const auto state = tricoh::prepare_state(th, gamma);
      const auto report = tricoh::measure_stokes(state, opts.noise_sigma, opts.seed);
      const auto prep = tricoh::prepstage_estimate(th, gamma, opts.noise_sigma, opts.seed);
      const auto exact = tricoh::analyze(state);
      const char* names[] = {"direct", "diagonal", "circular"};
      std::fprintf(stderr, "gamma = %.6f %+.6fi  (delta %.6f, phi %.6f)\n", gamma.real(),
                   gamma.imag(), std::abs(gamma), std::arg(gamma));
      for (int i = 0; i < 3; ++i) {
        std::fprintf(stderr, "%-9s I_a = %.6f  I_b = %.6f\n", names[i], report.intensities[i].a,
                     report.intensities[i].b);
      }
      const auto& s = report.stokes;
      std::fprintf(stderr, "stokes    S0 = %.6f  S1 = %.6f  S2 = %.6f  S3 = %.6f\n", s.s0, s.s1,
                   s.s2, s.s3);
      std::fprintf(stderr, "tomography P = %.6f  C = %.6f  residual = %.3g\n", report.P, report.C,
                   report.residual);
      std::fprintf(stderr, "prep stage theta = %.6f  delta = %.6f  C = %.6f\n", prep.theta,
                   prep.delta, prep.C);
      std::fprintf(stderr, "eigen      P = %.6f  C = %.6f\n", exact.P, exact.C);
      const auto n = s.normalized();
      tricoh::ResultRow row{"tomography", th, relative_phase, n.s1, n.s2, n.s3, report.P, prep.C,
                            report.P * report.P + prep.C * prep.C};
      emit(opts, {row});
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
