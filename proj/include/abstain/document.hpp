#pragma once

// Election files.
//
//   # comment
//   schema = 1
//   kind = line            # or: metric
//   beta = 0.5
//   meta.source = survey  # free-form metadata, any meta.<key>
//   voter = 0 * 49         # line: position, optional "* count"
//   voter = 0.51 * 51
//   voter = 0.4, 0.8       # metric: d_left, d_right, optional "* count"
//
// Keys may appear in any order; `voter` repeats. Values use C locale decimals.

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "abstain/metric.hpp"
#include "abstain/model.hpp"

namespace abstain {

enum class ElectionKind { line, metric };

struct ElectionDocument {
  ElectionKind kind = ElectionKind::line;
  double beta = 1.0;
  std::vector<double> positions;    // line
  std::vector<DistancePair> pairs;  // metric
  std::map<std::string, std::string> metadata;

  LineElection line() const;
  MetricElection metric() const;

  friend bool operator==(const ElectionDocument&, const ElectionDocument&) = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, std::string field, const std::string& message);

  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  int line_;
  std::string field_;
};

inline constexpr int kSchemaVersion = 1;

ElectionDocument parse_election(std::string_view text);
ElectionDocument load_election(const std::string& path);

// Exact round trip: values are written with 17 significant digits.
std::string serialize(const ElectionDocument& doc);

ElectionDocument line_document(const LineElection& e, double beta);

}  // namespace abstain
