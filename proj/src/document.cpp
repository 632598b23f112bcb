#include "abstain/document.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace abstain {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string_view strip_comment(std::string_view s) {
  const auto hash = s.find('#');
  return hash == std::string_view::npos ? s : s.substr(0, hash);
}

double parse_real(std::string_view text, int line, const std::string& field) {
  text = trim(text);
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty())
    throw ParseError(line, field, "expected a number, got '" + std::string(text) + "'");
  return v;
}

long parse_count(std::string_view text, int line) {
  text = trim(text);
  long v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || v < 1)
    throw ParseError(line, "voter", "repeat count must be a positive integer, got '" + std::string(text) + "'");
  return v;
}

std::string real_text(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

ParseError::ParseError(int line, std::string field, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + (field.empty() ? "" : " (" + field + ")") + ": " +
                         message),
      line_(line),
      field_(std::move(field)) {}

LineElection ElectionDocument::line() const {
  if (kind != ElectionKind::line) throw std::invalid_argument("document holds a metric election");
  return LineElection(positions);
}

MetricElection ElectionDocument::metric() const {
  if (kind != ElectionKind::metric) throw std::invalid_argument("document holds a line election");
  return MetricElection(pairs);
}

ElectionDocument parse_election(std::string_view text) {
  ElectionDocument doc;
  bool have_schema = false, have_kind = false, have_beta = false;
  int voters_line = 0;

  struct PendingVoter {
    int line;
    std::string_view value;
  };
  std::vector<PendingVoter> pending;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    const auto content = trim(raw);
    if (content.empty() || content.front() == '#') continue;
    const auto eq = content.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "", "expected 'key = value'");
    const auto key = trim(content.substr(0, eq));
    const auto rest = content.substr(eq + 1);

    if (key.starts_with("meta.")) {
      const std::string name(key.substr(5));
      if (name.empty()) throw ParseError(line_no, "meta", "empty metadata key");
      if (doc.metadata.count(name)) throw ParseError(line_no, std::string(key), "duplicate metadata key");
      doc.metadata[name] = std::string(trim(rest));
      continue;
    }

    const auto value = trim(strip_comment(rest));
    if (key == "schema") {
      if (have_schema) throw ParseError(line_no, "schema", "duplicate key");
      const double v = parse_real(value, line_no, "schema");
      if (v != kSchemaVersion)
        throw ParseError(line_no, "schema", "unsupported schema version " + std::string(value));
      have_schema = true;
    } else if (key == "kind") {
      if (have_kind) throw ParseError(line_no, "kind", "duplicate key");
      if (value == "line")
        doc.kind = ElectionKind::line;
      else if (value == "metric")
        doc.kind = ElectionKind::metric;
      else
        throw ParseError(line_no, "kind", "expected 'line' or 'metric', got '" + std::string(value) + "'");
      have_kind = true;
    } else if (key == "beta") {
      if (have_beta) throw ParseError(line_no, "beta", "duplicate key");
      doc.beta = parse_real(value, line_no, "beta");
      if (!(doc.beta >= 0.0 && doc.beta <= 1.0)) throw ParseError(line_no, "beta", "beta must lie in [0, 1]");
      have_beta = true;
    } else if (key == "voter") {
      if (voters_line == 0) voters_line = line_no;
      pending.push_back({line_no, value});
    } else {
      throw ParseError(line_no, std::string(key), "unknown key");
    }
  }

  if (!have_schema) throw ParseError(line_no, "schema", "missing schema version");
  if (!have_kind) throw ParseError(line_no, "kind", "missing election kind");
  if (!have_beta) throw ParseError(line_no, "beta", "missing beta");
  if (pending.empty()) throw ParseError(line_no, "voter", "at least one voter is required");

  for (const auto& [line, value] : pending) {
    auto body = value;
    long count = 1;
    if (const auto star = body.find('*'); star != std::string_view::npos) {
      count = parse_count(body.substr(star + 1), line);
      body = body.substr(0, star);
    }
    const auto comma = body.find(',');
    if (doc.kind == ElectionKind::line) {
      if (comma != std::string_view::npos)
        throw ParseError(line, "voter", "line elections take one position per voter");
      const double x = parse_real(body, line, "voter");
      if (!std::isfinite(x)) throw ParseError(line, "voter", "position must be finite");
      doc.positions.insert(doc.positions.end(), static_cast<std::size_t>(count), x);
    } else {
      if (comma == std::string_view::npos)
        throw ParseError(line, "voter", "metric elections take 'd_left, d_right'");
      DistancePair p{parse_real(body.substr(0, comma), line, "voter"),
                     parse_real(body.substr(comma + 1), line, "voter")};
      if (!std::isfinite(p.left) || !std::isfinite(p.right) || p.left < 0.0 || p.right < 0.0)
        throw ParseError(line, "voter", "distances must be finite and nonnegative");
      if (p.left + p.right < 1.0 - kTriangleTolerance)
        throw ParseError(line, "voter", "triangle inequality violated: d_left + d_right < 1");
      doc.pairs.insert(doc.pairs.end(), static_cast<std::size_t>(count), p);
    }
  }
  return doc;
}

ElectionDocument load_election(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open election file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_election(ss.str());
}

std::string serialize(const ElectionDocument& doc) {
  std::ostringstream os;
  os << "schema = " << kSchemaVersion << '\n';
  os << "kind = " << (doc.kind == ElectionKind::line ? "line" : "metric") << '\n';
  os << "beta = " << real_text(doc.beta) << '\n';
  for (const auto& [k, v] : doc.metadata) os << "meta." << k << " = " << v << '\n';

  auto emit_runs = [&os](const auto& items, auto&& text) {
    for (std::size_t i = 0; i < items.size();) {
      std::size_t j = i + 1;
      while (j < items.size() && items[j] == items[i]) ++j;
      os << "voter = " << text(items[i]);
      if (j - i > 1) os << " * " << (j - i);
      os << '\n';
      i = j;
    }
  };
  if (doc.kind == ElectionKind::line)
    emit_runs(doc.positions, [](double x) { return real_text(x); });
  else
    emit_runs(doc.pairs, [](const DistancePair& p) { return real_text(p.left) + ", " + real_text(p.right); });
  return os.str();
}

ElectionDocument line_document(const LineElection& e, double beta) {
  ElectionDocument doc;
  doc.kind = ElectionKind::line;
  doc.beta = beta;
  doc.positions.assign(e.positions().begin(), e.positions().end());
  return doc;
}

}  // namespace abstain
