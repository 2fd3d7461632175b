#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "tricoh/scenario.hpp"

namespace tricoh {

namespace {

// strtod over the whole of `text`.
bool parse_number(const std::string& text, double& value) {
  if (text.empty()) return false;
  char* end = nullptr;
  value = std::strtod(text.c_str(), &end);
  return end == text.c_str() + text.size() && std::isfinite(value);
}

std::string format_fixed(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  std::string s(buf);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) fields.push_back(field);
  if (!line.empty() && line.back() == sep) fields.emplace_back();
  return fields;
}

}  // namespace

double parse_angle(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) {
      s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    }
  }
  auto fail = [&text]() -> double {
    throw DomainError("cannot parse angle '" + std::string(text) + "'");
  };
  if (s.empty()) return fail();

  double value = 0;
  if (parse_number(s, value)) return value;

  const auto pi_at = s.find("pi");
  if (pi_at == std::string::npos) return fail();

  std::string coef = s.substr(0, pi_at);
  if (!coef.empty() && coef.back() == '*') coef.pop_back();
  double factor = 1;
  if (coef.empty() || coef == "+") {
    factor = 1;
  } else if (coef == "-") {
    factor = -1;
  } else if (!parse_number(coef, factor)) {
    return fail();
  }

  const std::string rest = s.substr(pi_at + 2);
  double divisor = 1;
  if (!rest.empty()) {
    if (rest.front() != '/' || !parse_number(rest.substr(1), divisor) || divisor == 0) {
      return fail();
    }
  }
  return factor * std::numbers::pi / divisor;
}

Range parse_range(std::string_view text) {
  const auto parts = split(std::string(text), ':');
  Range r;
  if (parts.size() == 1) {
    r.start = r.stop = parse_angle(parts[0]);
    r.count = 1;
    return r;
  }
  double count = 0;
  if (parts.size() != 3 || !parse_number(parts[2], count) || count < 1 ||
      count != std::floor(count) || count > 1e6) {
    throw DomainError("range must be 'start:stop:count', got '" + std::string(text) + "'");
  }
  r.start = parse_angle(parts[0]);
  r.stop = parse_angle(parts[1]);
  r.count = static_cast<int>(count);
  return r;
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << kCsvHeader << '\n';
  for (const auto& row : rows) {
    if (row.label.find_first_of(",\n\r") != std::string::npos) {
      throw IoError("row label contains a CSV separator: " + row.label);
    }
    out << row.label;
    for (double v : {row.theta, row.phi, row.S1, row.S2, row.S3, row.P, row.C,
                     row.constraint_sum}) {
      out << ',' << format_fixed(v);
    }
    out << '\n';
  }
}

std::string format_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream out;
  write_csv(out, rows);
  return out.str();
}

std::vector<ResultRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw IoError("missing or unexpected CSV header");
  }
  std::vector<ResultRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 9) throw IoError("line " + std::to_string(line_no) + ": expected 9 fields");
    ResultRow row;
    row.label = f[0];
    double* targets[] = {&row.theta, &row.phi, &row.S1, &row.S2, &row.S3,
                         &row.P,     &row.C,   &row.constraint_sum};
    for (std::size_t i = 0; i < 8; ++i) {
      if (!parse_number(f[i + 1], *targets[i])) {
        throw IoError("line " + std::to_string(line_no) + ": bad number '" + f[i + 1] + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json to_json(const std::vector<ResultRow>& rows) {
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& r : rows) {
    doc.push_back({{"label", r.label},
                   {"theta", r.theta},
                   {"phi", r.phi},
                   {"S1", r.S1},
                   {"S2", r.S2},
                   {"S3", r.S3},
                   {"P", r.P},
                   {"C", r.C},
                   {"constraint_sum", r.constraint_sum}});
  }
  return doc;
}

std::vector<ResultRow> rows_from_json(const nlohmann::json& doc) {
  if (!doc.is_array()) throw IoError("JSON results must be an array");
  std::vector<ResultRow> rows;
  try {
    for (const auto& item : doc) {
      ResultRow r;
      r.label = item.at("label").get<std::string>();
      r.theta = item.at("theta").get<double>();
      r.phi = item.at("phi").get<double>();
      r.S1 = item.at("S1").get<double>();
      r.S2 = item.at("S2").get<double>();
      r.S3 = item.at("S3").get<double>();
      r.P = item.at("P").get<double>();
      r.C = item.at("C").get<double>();
      r.constraint_sum = item.at("constraint_sum").get<double>();
      rows.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("malformed JSON row: ") + e.what());
  }
  return rows;
}

std::string json_mirror_path(const std::string& csv_path) {
  const auto dot = csv_path.rfind('.');
  const auto slash = csv_path.find_last_of('/');
  if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) {
    std::string mirror = csv_path.substr(0, dot) + ".json";
    if (mirror != csv_path) return mirror;
  }
  return csv_path + ".json";
}

void write_rows(const std::string& path, const std::vector<ResultRow>& rows, bool json_mirror) {
  {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    write_csv(out, rows);
    if (!out) throw IoError("write to '" + path + "' failed");
  }
  if (json_mirror) {
    const std::string jpath = json_mirror_path(path);
    std::ofstream out(jpath);
    if (!out) throw IoError("cannot open '" + jpath + "' for writing");
    out << to_json(rows).dump(2) << '\n';
    if (!out) throw IoError("write to '" + jpath + "' failed");
  }
}

}  // namespace tricoh
