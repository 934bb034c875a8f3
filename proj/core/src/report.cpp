#include "speamp/report.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "speamp/protocol.hpp"

namespace speamp {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (value == 0.0) return "0";  // collapses -0
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value,
                                 std::chars_format::general, 10);
  if (ec != std::errc()) throw std::runtime_error("double formatting failed");
  return std::string(buffer, end);
}

void FlatJsonWriter::add_number(const std::string& key, double value) {
  if (std::isnan(value) || std::isinf(value)) {
    add_null(key);
    return;
  }
  fields_.emplace_back(key, format_double(value));
}

void FlatJsonWriter::add_integer(const std::string& key, long long value) {
  fields_.emplace_back(key, std::to_string(value));
}

namespace {

std::string json_escape(const std::string& raw) {
  std::string out;
  out.reserve(raw.size() + 2);
  for (char c : raw) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

}  // namespace

void FlatJsonWriter::add_string(const std::string& key, const std::string& value) {
  fields_.emplace_back(key, '"' + json_escape(value) + '"');
}

void FlatJsonWriter::add_null(const std::string& key) { fields_.emplace_back(key, "null"); }

std::string FlatJsonWriter::str() const {
  std::string out = "{";
  bool first = true;
  for (const auto& [key, encoded] : fields_) {
    if (!first) out += ',';
    first = false;
    out += '"' + json_escape(key) + "\":" + encoded;
  }
  out += "}\n";
  return out;
}

void SweepSpec::validate() const {
  if (!(alpha2 > 0.0 && alpha2 < 1.0)) throw std::invalid_argument("alpha2 must lie in (0, 1)");
  if (has_eta && !(eta >= 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("eta must lie in [0, 1]");
  }
  if (points < 2) throw std::invalid_argument("points must be at least 2");
  if (!(t1_min > 0.0 && t1_min < 1.0) || !(t1_max > 0.0 && t1_max < 1.0) || t1_min >= t1_max) {
    throw std::invalid_argument("t1 range must satisfy 0 < t1_min < t1_max < 1");
  }
}

std::vector<CurveRow> concentration_curve(const SweepSpec& spec) {
  spec.validate();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<CurveRow> rows;
  rows.reserve(static_cast<std::size_t>(spec.points));
  for (int i = 0; i < spec.points; ++i) {
    const double t1 =
        spec.t1_min + (spec.t1_max - spec.t1_min) * static_cast<double>(i) / (spec.points - 1);
    CurveRow row;
    row.t1 = t1;
    row.t2 = concentration_t2(spec.alpha2, t1);
    if (spec.has_eta) {
      ProtocolOutcome outcome = run_protocol({spec.eta, spec.alpha2, t1, row.t2});
      row.success_probability = outcome.success_probability;
      row.eta_prime = outcome.eta_prime;
      row.gain = outcome.gain;
      row.fidelity = outcome.fidelity;
    } else {
      row.success_probability = nan;
      row.eta_prime = nan;
      row.gain = nan;
      row.fidelity = nan;
    }
    rows.push_back(row);
  }
  return rows;
}

std::string to_csv(const std::vector<CurveRow>& rows) {
  std::string out = "t1,t2,P,eta_prime,g,fidelity\n";
  for (const auto& row : rows) {
    out += format_double(row.t1);
    out += ',';
    out += format_double(row.t2);
    out += ',';
    out += format_double(row.success_probability);
    out += ',';
    out += format_double(row.eta_prime);
    out += ',';
    out += format_double(row.gain);
    out += ',';
    out += format_double(row.fidelity);
    out += '\n';
  }
  return out;
}

}  // namespace speamp
