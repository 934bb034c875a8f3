// Deterministic text output: double formatting with a fixed significant-digit
// policy, a flat JSON object writer, CSV curve tables, and the parameter
// sweeps behind them. Identical inputs must produce byte-identical output on
// every platform, so all formatting routes through std::to_chars.

#pragma once

#include <string>
#include <vector>

namespace speamp {

// Shortest-general form at 10 significant digits via std::to_chars.
// NaN renders as "nan" (any sign), -0 as "0".
std::string format_double(double value);

// Order-preserving flat JSON object: numbers, strings, or null per key.
// NaN and infinities have no JSON encoding and render as null.
class FlatJsonWriter {
 public:
  void add_number(const std::string& key, double value);
  void add_integer(const std::string& key, long long value);
  void add_string(const std::string& key, const std::string& value);
  void add_null(const std::string& key);

  // {"k":v,...} followed by a trailing newline.
  std::string str() const;

 private:
  std::vector<std::pair<std::string, std::string>> fields_;  // key -> encoded value
};

// One concentration-curve sample; NaN marks columns that were not evaluated.
struct CurveRow {
  double t1 = 0.0;
  double t2 = 0.0;
  double success_probability = 0.0;
  double eta_prime = 0.0;
  double gain = 0.0;
  double fidelity = 0.0;
};

// Uniform t1 grid with t2 locked to the concentration setting. When eta is
// NaN only the (t1, t2) columns are evaluated; otherwise each point runs the
// full simulation.
struct SweepSpec {
  double alpha2 = 0.5;
  double eta = 0.0;
  bool has_eta = false;
  int points = 200;
  double t1_min = 0.005;
  double t1_max = 0.995;

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

std::vector<CurveRow> concentration_curve(const SweepSpec& spec);

// Header "t1,t2,P,eta_prime,g,fidelity" plus one line per row, "\n" endings.
std::string to_csv(const std::vector<CurveRow>& rows);

}  // namespace speamp
