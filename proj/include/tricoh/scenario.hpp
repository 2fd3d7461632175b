#pragma once

// Scenario drivers behind the command line tool: single-state analysis,
// the reference table of measured states, sphere grids and the coherence
// spiral, plus CSV / JSON row serialization.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tricoh/errors.hpp"

namespace tricoh {

/// One simulated state. S1..S3 are normalized to S0; P comes from the
/// tomographic Stokes radius and C from the independent preparation-stage
/// estimate.
struct ResultRow {
  std::string label;
  double theta = 0;
  double phi = 0;
  double S1 = 0;
  double S2 = 0;
  double S3 = 0;
  double P = 0;
  double C = 0;
  double constraint_sum = 0;

  bool operator==(const ResultRow&) const = default;
};

inline constexpr std::string_view kCsvHeader = "label,theta,phi,S1,S2,S3,P,C,constraint_sum";

ResultRow run_analyze(double theta, double delta, double phi, double noise_sigma = 0,
                      std::uint64_t seed = 0);

/// A measured row of the reference table, normalized to S0.
struct Table1Reference {
  std::string label;
  double theta;
  double phi;
  double S1;
  double S2;
  double S3;
  double P;
  double C;
  double constraint_sum;
};

const std::array<Table1Reference, 5>& table1_reference();

struct Table1Entry {
  Table1Reference reference;
  ResultRow simulated;
  double delta = 0;
  /// "P" when delta was inferred from the measured P, "stokes" when from the
  /// norm of the measured Stokes components.
  std::string delta_source;
  /// Set for rows whose measured P and Stokes norm disagree.
  bool flagged = false;

  double max_stokes_deviation() const;
};

/// delta^2 = (P^2 - cos^2 theta) / sin^2 theta, clamped to [0, 1].
double infer_delta(double theta, double P);

/// Rows l, c, e, p, u, with p repeated using the Stokes-norm delta.
std::vector<Table1Entry> run_table1(double noise_sigma = 0, std::uint64_t seed = 0);

/// Inclusive linear sweep; count == 1 yields just `start`.
struct Range {
  double start = 0;
  double stop = 0;
  int count = 1;

  std::vector<double> values() const;
};

struct GridSpec {
  Range theta;
  Range delta;
  Range phi;
};

std::vector<ResultRow> run_sphere(const GridSpec& grid, double noise_sigma = 0,
                                  std::uint64_t seed = 0);

/// States theta = pi/2, delta = exp(-rate phi) for `steps` phases in
/// [0, phi_max].
std::vector<ResultRow> run_spiral(double rate, double phi_max, int steps, double noise_sigma = 0,
                                  std::uint64_t seed = 0);

/// Radians with pi literals: "0.3", "pi", "-pi/2", "3pi/2", "0.25pi", "2*pi".
double parse_angle(std::string_view text);
/// "start:stop:count" or a single angle.
Range parse_range(std::string_view text);

std::string format_csv(const std::vector<ResultRow>& rows);
void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);
std::vector<ResultRow> read_csv(std::istream& in);

nlohmann::json to_json(const std::vector<ResultRow>& rows);
std::vector<ResultRow> rows_from_json(const nlohmann::json& doc);

/// Writes CSV to `path`, plus a JSON mirror next to it when requested.
/// Throws IoError when a file cannot be written.
void write_rows(const std::string& path, const std::vector<ResultRow>& rows, bool json_mirror);
std::string json_mirror_path(const std::string& csv_path);

}  // namespace tricoh
