#include "abstain/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "abstain/csv.hpp"
#include "abstain/displace.hpp"
#include "abstain/document.hpp"
#include "abstain/exact.hpp"
#include "abstain/metric.hpp"
#include "abstain/montecarlo.hpp"
#include "abstain/suites.hpp"
#include "abstain/worstcase.hpp"

namespace abstain {

namespace {

struct Options {
  std::string file;
  std::optional<double> beta;
  std::vector<double> betas;
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
  double confidence = 0.95;
  unsigned workers = 1;
  int grid = 256;
  int points = 0;
  double alpha = 0.1;
  double epsilon = 0.0;
  std::string format;
  std::string form = "auto";
  std::string out;
};

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string join(const std::vector<std::size_t>& xs) {
  std::string s;
  for (std::size_t k = 0; k < xs.size(); ++k) s += (k ? " " : "") + std::to_string(xs[k]);
  return s;
}

std::string join(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t k = 0; k < xs.size(); ++k) s += (k ? " " : "") + format_number(xs[k]);
  return s;
}

void write_report_csv(std::ostream& os, const DistortionReport& r) {
  os << "sc_left,sc_right,optimal,dist_left,dist_right,expected_votes_left,expected_votes_right,"
        "expected_winner,win_prob_left,win_prob_right,expected_distortion\n";
  os << format_number(r.costs.left) << ',' << format_number(r.costs.right) << ',' << to_string(r.distortion.optimal)
     << ',' << format_number(r.distortion.left) << ',' << format_number(r.distortion.right) << ','
     << format_number(r.expected_votes.left) << ',' << format_number(r.expected_votes.right) << ','
     << to_string(r.expected_winner) << ',' << format_number(r.win.left) << ',' << format_number(r.win.right) << ','
     << format_number(r.expected_distortion) << '\n';
}

void write_report_text(std::ostream& os, const DistortionReport& r, std::size_t voters, double beta) {
  os << "voters              " << voters << '\n'
     << "beta                " << format_number(beta) << '\n'
     << "social cost         left " << format_number(r.costs.left) << ", right " << format_number(r.costs.right)
     << '\n'
     << "optimal candidate   " << to_string(r.distortion.optimal) << '\n'
     << "distortion          left " << format_number(r.distortion.left) << ", right "
     << format_number(r.distortion.right) << '\n'
     << "expected votes      left " << format_number(r.expected_votes.left) << ", right "
     << format_number(r.expected_votes.right) << '\n'
     << "expected winner     " << to_string(r.expected_winner) << '\n'
     << "win probability     left " << format_number(r.win.left) << ", right " << format_number(r.win.right) << '\n'
     << "expected distortion " << format_number(r.expected_distortion) << '\n';
}

void write_steps_csv(std::ostream& os, const std::vector<CanonicalStep>& steps) {
  os << "step,kind,voters,targets,winner_before,winner_after,metric_before,metric_after\n";
  for (std::size_t k = 0; k < steps.size(); ++k) {
    const auto& s = steps[k];
    os << k << ',' << to_string(s.move.kind) << ',' << join(s.move.voters) << ',' << join(s.move.targets) << ','
       << to_string(s.certificate.winner_before) << ',' << to_string(s.certificate.winner_after) << ','
       << format_number(s.certificate.metric_before) << ',' << format_number(s.certificate.metric_after) << '\n';
  }
}

void require_format(const std::string& format, std::initializer_list<std::string_view> allowed) {
  for (auto a : allowed)
    if (format == a) return;
  throw ValidationError("unsupported --format '" + format + "'");
}

ElectionDocument load(const Options& o) {
  auto doc = load_election(o.file);
  if (o.beta) {
    if (!(*o.beta >= 0.0 && *o.beta <= 1.0)) throw ValidationError("--beta must lie in [0, 1]");
    doc.beta = *o.beta;
  }
  return doc;
}

int cmd_eval(const Options& o, std::ostream& os) {
  const std::string format = o.format.empty() ? "csv" : o.format;
  require_format(format, {"csv", "report"});
  const auto doc = load(o);
  const Beta beta(doc.beta);
  const auto report = doc.kind == ElectionKind::line ? expected_distortion(doc.line(), beta)
                                                     : metric_report(doc.metric(), beta);
  const std::size_t n = doc.kind == ElectionKind::line ? doc.positions.size() : doc.pairs.size();
  if (format == "csv")
    write_report_csv(os, report);
  else
    write_report_text(os, report, n, doc.beta);
  return kExitOk;
}

int cmd_simulate(const Options& o, std::ostream& os) {
  const std::string format = o.format.empty() ? "csv" : o.format;
  require_format(format, {"csv", "report"});
  const auto doc = load(o);
  if (doc.kind != ElectionKind::line) throw ValidationError("simulate takes a line election");
  McConfig cfg{o.samples, o.seed, o.confidence, o.workers};
  const auto est = simulate(doc.line(), Beta(doc.beta), cfg);
  if (format == "csv") {
    os << "p_left_hat,half_width_p,expected_distortion_hat,half_width_d,samples,seed,confidence\n"
       << format_number(est.p_left_hat) << ',' << format_number(est.half_width_p) << ','
       << format_number(est.expected_distortion_hat) << ',' << format_number(est.half_width_d) << ',' << est.samples
       << ',' << o.seed << ',' << format_number(o.confidence) << '\n';
  } else {
    os << "P(left wins)         " << format_number(est.p_left_hat) << " +- " << format_number(est.half_width_p) << '\n'
       << "expected distortion  " << format_number(est.expected_distortion_hat) << " +- "
       << format_number(est.half_width_d) << '\n'
       << "samples              " << est.samples << " (seed " << o.seed << ", confidence "
       << format_number(o.confidence) << ")\n";
  }
  return kExitOk;
}

int cmd_reduce(const Options& o, std::ostream& os) {
  const std::string format = o.format.empty() ? "document" : o.format;
  require_format(format, {"document", "csv", "report"});
  const auto doc = load(o);
  if (doc.kind != ElectionKind::line) throw ValidationError("reduce takes a line election (see metric-reduce)");
  const auto e = doc.line();
  const Beta beta(doc.beta);

  std::string form = o.form;
  if (form == "auto") {
    const auto d = distortions(social_costs(e));
    const auto w = expected_winner(e, beta);
    if (w == Outcome::left && d.optimal == Candidate::right)
      form = "winner";
    else if (w == Outcome::right && d.optimal == Candidate::right)
      form = "distortion";
    else
      form = "none";
  }

  Canonicalization c{e, false, "no canonical form applies: right must be optimal and left or right the expected winner",
                     {}};
  if (form == "winner")
    c = canonicalize_expected_winner(e, beta);
  else if (form == "distortion")
    c = canonicalize_expected_distortion(e, beta);
  else if (form != "none")
    throw ValidationError("--form must be auto, winner or distortion");

  if (format == "csv") {
    write_steps_csv(os, c.steps);
  } else if (format == "report") {
    os << "form     " << form << (c.applied ? "" : " (not applied: " + c.reason + ")") << '\n';
    os << "steps    " << c.steps.size() << '\n';
    for (const auto& s : c.steps)
      os << "  " << to_string(s.move.kind) << " voters [" << join(s.move.voters) << "] -> ["
         << join(s.move.targets) << "]  metric " << format_number(s.certificate.metric_before) << " -> "
         << format_number(s.certificate.metric_after) << '\n';
    std::set<double> distinct(c.election.positions().begin(), c.election.positions().end());
    os << "result   " << distinct.size() << " distinct positions:";
    for (double x : distinct) os << ' ' << format_number(x);
    os << '\n';
  } else {
    auto out_doc = line_document(c.election, doc.beta);
    out_doc.metadata = doc.metadata;
    out_doc.metadata["canonical_form"] = c.applied ? form : "none";
    if (!c.applied) out_doc.metadata["note"] = c.reason;
    os << serialize(out_doc);
  }
  return kExitOk;
}

int cmd_worstcase(const Options& o, std::ostream& os) {
  const std::string format = o.format.empty() ? "csv" : o.format;
  require_format(format, {"csv", "report"});
  if (!o.beta) throw ValidationError("worstcase needs --beta");
  GridOptions grid;
  grid.points = o.grid;
  const auto s = solve_cp2_margin(Beta(*o.beta), o.epsilon, grid);
  if (format == "csv") {
    const WorstCaseSolution rows[] = {s};
    write_sweep_csv(os, rows);
  } else {
    os << "beta      " << format_number(s.beta) << '\n'
       << "epsilon   " << format_number(s.epsilon) << '\n'
       << "D*        " << format_number(s.value) << (s.attained ? "" : " (supremum, not attained)") << '\n'
       << "q_b       " << format_number(s.q_b) << '\n'
       << "x_b       " << format_number(s.x_b) << '\n'
       << "x_d       " << format_number(s.x_d) << '\n';
  }
  return kExitOk;
}

int cmd_sweep(const Options& o, std::ostream& os) {
  const int points = o.points > 0 ? o.points : 101;
  if (points < 2) throw ValidationError("--points must be at least 2");
  std::vector<double> betas;
  for (int k = 0; k < points; ++k) betas.push_back(static_cast<double>(k) / (points - 1));
  GridOptions grid;
  grid.points = o.grid;
  const auto rows = sweep_beta(betas, grid);
  write_sweep_csv(os, rows);
  return kExitOk;
}

int cmd_metric_reduce(const Options& o, std::ostream& os) {
  const std::string format = o.format.empty() ? "document" : o.format;
  require_format(format, {"document", "report"});
  const auto doc = load(o);
  if (doc.kind != ElectionKind::metric) throw ValidationError("metric-reduce takes a metric election");
  const auto m = doc.metric();
  const auto red = reduce_to_line(m);
  if (format == "report") {
    const Beta beta(doc.beta);
    const auto before = metric_report(red.swapped ? m.swapped() : m, beta);
    const auto after = expected_distortion(red.line, beta);
    os << "labels swapped       " << (red.swapped ? "yes" : "no") << '\n'
       << "threshold D(left)    " << format_number(red.threshold) << '\n'
       << "D(left)              metric " << format_number(before.distortion.left) << ", line "
       << format_number(after.distortion.left) << '\n'
       << "expected distortion  metric " << format_number(before.expected_distortion) << ", line "
       << format_number(after.expected_distortion) << '\n'
       << "P(left wins)         metric " << format_number(before.win.left) << ", line "
       << format_number(after.win.left) << '\n';
  } else {
    auto out_doc = line_document(red.line, doc.beta);
    out_doc.metadata = doc.metadata;
    out_doc.metadata["labels_swapped"] = red.swapped ? "true" : "false";
    out_doc.metadata["threshold"] = format_number(red.threshold);
    os << serialize(out_doc);
  }
  return kExitOk;
}

int cmd_curve(const Options& o, std::ostream& os) {
  const int points = o.points > 0 ? o.points : 301;
  if (points < 2) throw ValidationError("--points must be at least 2");
  std::vector<double> betas = o.betas.empty() ? std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0} : o.betas;
  os << "z,beta,probability\n";
  for (double b : betas) {
    const Beta beta(b);
    for (int k = 0; k < points; ++k) {
      const double z = -1.0 + 3.0 * k / (points - 1);
      os << format_number(z) << ',' << format_number(b) << ',' << format_number(profile(z, beta).participation)
         << '\n';
    }
  }
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& os, std::ostream& err) {
  const std::size_t trials = o.samples > 0 ? o.samples : 1000;
  const Beta beta(o.beta.value_or(1.0));
  std::vector<SuiteResult> results;
  for (auto move : {Move::a_to_zero, Move::bc_pair, Move::same_region_merge, Move::a_to_b_map, Move::c_to_d_map,
                    Move::d_geometric_merge})
    results.push_back(displacement_suite(move, trials, o.seed));
  results.push_back(winner_canonical_suite(trials, o.seed));
  results.push_back(distortion_canonical_suite(trials, o.seed));
  results.push_back(bound_suite(o.alpha, beta, std::min<std::size_t>(trials, 200), o.seed));

  os << "suite,trials,passed,failed,skipped\n";
  bool ok = true;
  for (const auto& r : results) {
    os << r.name << ',' << r.trials << ',' << r.passed << ',' << r.failed() << ',' << r.skipped << '\n';
    if (!r.ok()) {
      ok = false;
      err << r.name << ": first failure: " << r.first_failure << '\n';
    }
  }
  return ok ? kExitOk : kExitCertificate;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Distortion of two-candidate elections with distance-driven abstention"};
  app.require_subcommand(1);
  Options o;
  std::function<int(std::ostream&)> action;

  auto add_out = [&](CLI::App* sub) { sub->add_option("--out", o.out, "Write output to this path"); };
  auto add_file = [&](CLI::App* sub) { sub->add_option("file", o.file, "Election document")->required(); };
  auto add_beta = [&](CLI::App* sub) { sub->add_option("--beta", o.beta, "Participation parameter in [0, 1]"); };
  auto add_format = [&](CLI::App* sub, const std::string& help) { sub->add_option("--format", o.format, help); };

  auto* eval = app.add_subcommand("eval", "Exact report: social costs, win probabilities, expected distortion");
  add_file(eval), add_beta(eval), add_format(eval, "csv or report"), add_out(eval);
  eval->callback([&] { action = [&](std::ostream& os) { return cmd_eval(o, os); }; });

  auto* sim = app.add_subcommand("simulate", "Monte Carlo estimate with Hoeffding intervals");
  add_file(sim), add_beta(sim), add_format(sim, "csv or report"), add_out(sim);
  sim->add_option("--seed", o.seed, "Generator seed")->required();
  sim->add_option("--samples", o.samples, "Number of simulated elections")->default_val(100000);
  sim->add_option("--confidence", o.confidence, "Interval confidence in (0, 1)")->default_val(0.95);
  sim->add_option("--workers", o.workers, "Parallel generator streams")->default_val(1);
  sim->callback([&] { action = [&](std::ostream& os) { return cmd_simulate(o, os); }; });

  auto* red = app.add_subcommand("reduce", "Canonicalize an election through certified displacements");
  add_file(red), add_beta(red), add_format(red, "document, csv (step trail) or report"), add_out(red);
  red->add_option("--form", o.form, "auto, winner or distortion");
  red->callback([&] { action = [&](std::ostream& os) { return cmd_reduce(o, os); }; });

  auto* wc = app.add_subcommand("worstcase", "Worst-case distortion of the expected winner");
  add_beta(wc), add_format(wc, "csv or report"), add_out(wc);
  wc->add_option("--epsilon", o.epsilon, "Required relative vote margin of the winner");
  wc->add_option("--grid", o.grid, "Grid points per axis (at least 64)");
  wc->callback([&] { action = [&](std::ostream& os) { return cmd_worstcase(o, os); }; });

  auto* sw = app.add_subcommand("sweep", "Worst-case distortion over evenly spaced beta in [0, 1]");
  add_out(sw);
  sw->add_option("--grid", o.grid, "Grid points per axis (at least 64)");
  sw->add_option("--points", o.points, "Number of beta values (default 101)");
  sw->callback([&] { action = [&](std::ostream& os) { return cmd_sweep(o, os); }; });

  auto* mr = app.add_subcommand("metric-reduce", "Map a metric election onto the line");
  add_file(mr), add_beta(mr), add_format(mr, "document or report"), add_out(mr);
  mr->callback([&] { action = [&](std::ostream& os) { return cmd_metric_reduce(o, os); }; });

  auto* cv = app.add_subcommand("curve", "Participation probability along the line for several beta");
  add_out(cv);
  cv->add_option("--beta", o.betas, "Beta values (repeatable)");
  cv->add_option("--points", o.points, "Samples of z in [-1, 2] (default 301)");
  cv->callback([&] { action = [&](std::ostream& os) { return cmd_curve(o, os); }; });

  auto* vf = app.add_subcommand("verify", "Randomized displacement-certificate and bound suites");
  add_beta(vf), add_out(vf);
  vf->add_option("--seed", o.seed, "Generator seed")->required();
  vf->add_option("--samples", o.samples, "Trials per suite (default 1000)");
  vf->add_option("--alpha", o.alpha, "Bound parameter alpha")->default_val(0.1);
  vf->add_option("--grid", o.grid, "Grid points per axis for D*");
  vf->callback([&] { action = [&](std::ostream& os) { return cmd_verify(o, os, err); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  try {
    if (o.out.empty()) return action(out);
    // Buffer so a failed command leaves no partial file behind.
    std::ostringstream buffer;
    const int code = action(buffer);
    std::ofstream file(o.out);
    if (!file) throw ValidationError("cannot write to '" + o.out + "'");
    file << buffer.str();
    return code;
  } catch (const CertificateFailure& e) {
    err << "certificate failure: " << e.what() << '\n';
    return kExitCertificate;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
}

}  // namespace abstain
