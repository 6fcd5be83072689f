#include "suq2/cli.hpp"

#include "suq2/coefficients.hpp"
#include "suq2/equivalence.hpp"
#include "suq2/representations.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <fstream>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace suq2 {
namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  double q = 0.5;
  int cap = 12;
  double tol = 0.0;
  int kmax = 500;
  std::string target;
  std::string gen = "alpha";
  double z_re = 1.0;
  double z_im = 0.0;
  int dim = 64;
  std::string out_path;
  std::string format = "json";
  bool timing = false;
};

void check_q(double q) {
  if (!(std::abs(q) < 1.0)) throw UsageError("--q must satisfy |q| < 1");
  if (q == 0.0) throw UsageError("q = 0 is the exact crystal limit; use verify-q0");
}

void check_cap(int cap) {
  if (cap < 0) throw UsageError("--cap must be non-negative");
}

void check_tol(double tol) {
  if (!(tol > 0.0)) throw UsageError("--tol must be positive");
}

template <class Point>
std::optional<std::string> witness_of(const std::optional<Point>& p) {
  if (!p) return std::nullopt;
  return to_string(*p);
}

template <TruncatedLattice Lattice>
void add_relation_items(VerificationReport& report, const std::string& prefix, const RelationResidualReport& res,
                        const Lattice& lattice, double tol) {
  for (const auto& it : res.items) {
    std::optional<std::string> witness;
    if (it.witness) witness = to_string(lattice.point_of(*it.witness));
    const bool pass = tol == 0.0 ? it.max_residual == 0.0 : it.max_residual < tol;
    report.items.push_back({prefix + ":" + std::string(relation_name(it.relation)), it.max_residual, tol, pass, witness});
  }
  report.max_residual = std::max(report.max_residual.value_or(0.0), res.max_residual());
}

VerificationReport cmd_verify_q0(const RunConfig& cfg) {
  if (cfg.cap < 1) throw UsageError("no interior: verify-q0 needs --cap >= 1");
  VerificationReport report{"verify-q0", {{"cap", static_cast<long long>(cfg.cap)}}, {}, {}, {}};
  const auto eq = verify_q0_equivalence(cfg.cap);
  for (const auto& g : eq.generators)
    report.items.push_back({"mismatches:" + std::string(to_string(g.gen)), static_cast<double>(g.mismatches), 0.0,
                            g.mismatches == 0, witness_of(g.witness)});
  report.max_residual = 0.0;
  if (cfg.cap >= 2) {
    const GammaLattice gamma(cfg.cap);
    const PiLattice pi(cfg.cap);
    add_relation_items(report, "lambda0", check_relations(lambda0_generators(gamma), 0.0, gamma, 2), gamma, 0.0);
    add_relation_items(report, "pi0", check_relations(pi0_generators(pi), 0.0, pi, 2), pi, 0.0);
  }
  return report;
}

VerificationReport cmd_verify_relations(const RunConfig& cfg) {
  check_q(cfg.q);
  check_cap(cfg.cap);
  check_tol(cfg.tol);
  if (cfg.cap < 2) throw UsageError("no interior: relation checks need --cap >= 2");
  VerificationReport report{"verify-relations",
                            {{"q", cfg.q}, {"cap", static_cast<long long>(cfg.cap)}, {"tol", cfg.tol}},
                            {},
                            {},
                            {}};
  const Deformation q(cfg.q);
  const GammaLattice gamma(cfg.cap);
  const PiLattice pi(cfg.cap);
  add_relation_items(report, "lambda", check_relations(lambda_generators(q, gamma), cfg.q, gamma, 2), gamma, cfg.tol);
  add_relation_items(report, "pi", check_relations(pi_generators(q, pi), cfg.q, pi, 2), pi, cfg.tol);
  return report;
}

VerificationReport cmd_verify_equivalence(const RunConfig& cfg) {
  check_q(cfg.q);
  check_cap(cfg.cap);
  check_tol(cfg.tol);
  VerificationReport report{"verify-equivalence",
                            {{"q", cfg.q}, {"cap", static_cast<long long>(cfg.cap)}, {"tol", cfg.tol}},
                            {},
                            {},
                            {}};
  double worst = 0.0;
  for (Generator gen : {Generator::alpha, Generator::beta}) {
    const auto res = crosscheck_decomposition(Deformation(cfg.q), cfg.cap, gen);
    auto witness = res.no_interior ? std::optional<std::string>("no interior") : witness_of(res.witness);
    report.items.push_back({"crosscheck:" + std::string(to_string(gen)), res.deviation, cfg.tol,
                            res.deviation < cfg.tol, std::move(witness)});
    worst = std::max(worst, res.deviation);
  }
  report.max_residual = worst;
  return report;
}

VerificationReport cmd_estimates(const RunConfig& cfg) {
  check_q(cfg.q);
  if (cfg.kmax < 1) throw UsageError("--kmax must be at least 1");
  VerificationReport report{"estimates", {{"q", cfg.q}, {"kmax", static_cast<long long>(cfg.kmax)}}, {}, {}, {}};
  const auto res = verify_g_estimates(cfg.q, cfg.kmax);
  for (const auto& row : res.rows) {
    const std::string k = "k=" + std::to_string(row.k);
    report.items.push_back({"|1-g|:" + k, row.lhs1, row.bound1, row.pass1, {}});
    report.items.push_back({"|1-1/g|:" + k, row.lhs2, row.bound2, row.pass2, {}});
  }
  return report;
}

VerificationReport cmd_decay(const RunConfig& cfg) {
  check_q(cfg.q);
  check_cap(cfg.cap);
  const auto target = parse_decay_target(cfg.target);
  if (!target) throw UsageError("unknown --target '" + cfg.target + "'");
  VerificationReport report{"decay",
                            {{"q", cfg.q}, {"cap", static_cast<long long>(cfg.cap)}, {"target", cfg.target}},
                            {},
                            {},
                            {}};
  DecayReport res;
  try {
    res = decay_report(Deformation(cfg.q), cfg.cap, *target);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const double aq = std::abs(cfg.q);
  const double c_ref = 2.0 / (1.0 - cfg.q * cfg.q);
  for (const auto& sv : res.per_shell) {
    ReportItem item{"shell=" + std::to_string(sv.shell), sv.value, {}, true, {}};
    if (const auto e = shell_exponent(res.pattern, sv.shell)) {
      item.bound = c_ref * std::pow(aq, *e);
      item.pass = sv.value <= *item.bound;
    }
    report.items.push_back(std::move(item));
  }
  report.items.push_back({"constant[" + std::string(to_string(res.pattern)) + "]", res.constant, c_ref,
                          std::isfinite(res.constant) && res.constant <= c_ref, witness_of(res.constant_witness)});
  report.items.push_back({"fitted_ratio", res.fitted_ratio, {}, std::isfinite(res.fitted_ratio), {}});
  // Informational: the slope approaches 1 only as q -> 0.
  if (res.slope) report.items.push_back({"slope", *res.slope, {}, std::isfinite(*res.slope), {}});
  return report;
}

VerificationReport cmd_tails(const RunConfig& cfg) {
  check_q(cfg.q);
  check_cap(cfg.cap);
  if (cfg.cap < 1) throw UsageError("no interior: tails needs --cap >= 1");
  const auto gen = parse_generator(cfg.gen);
  if (!gen || is_starred(*gen)) throw UsageError("--gen must be alpha or beta");
  VerificationReport report{"tails",
                            {{"q", cfg.q}, {"cap", static_cast<long long>(cfg.cap)}, {"gen", cfg.gen}},
                            {},
                            {},
                            {}};
  const auto norms = tail_norms(Deformation(cfg.q), cfg.cap, *gen);
  constexpr double kMonotoneSlack = 1e-8;
  for (std::size_t k = 0; k < norms.size(); ++k) {
    ReportItem item{"m=" + std::to_string(norms[k].m), norms[k].value, {}, true, {}};
    if (k > 0) {
      item.bound = norms[k - 1].value * (1.0 + kMonotoneSlack);
      item.pass = norms[k].value <= *item.bound;
    }
    report.items.push_back(std::move(item));
  }
  const double bound = std::abs(cfg.q) + 0.1;
  for (int m = cfg.cap / 3; m <= 2 * cfg.cap / 3 && m + 1 <= cfg.cap; ++m) {
    const double v0 = norms[static_cast<std::size_t>(m)].value;
    const double v1 = norms[static_cast<std::size_t>(m + 1)].value;
    const double ratio = v0 > 0.0 ? v1 / v0 : 0.0;
    report.items.push_back({"ratio:m=" + std::to_string(m), ratio, bound, ratio <= bound, {}});
  }
  report.max_residual = norms.front().value;
  return report;
}

VerificationReport cmd_irrep(const RunConfig& cfg) {
  check_q(cfg.q);
  check_tol(cfg.tol);
  if (cfg.dim < 3) throw UsageError("no interior: irrep needs --dim >= 3");
  const std::complex<double> z(cfg.z_re, cfg.z_im);
  if (!(std::abs(std::abs(z) - 1.0) < 1e-12)) throw UsageError("z must lie on the unit circle");
  VerificationReport report{"irrep",
                            {{"q", cfg.q},
                             {"z_re", cfg.z_re},
                             {"z_im", cfg.z_im},
                             {"dim", static_cast<long long>(cfg.dim)},
                             {"tol", cfg.tol}},
                            {},
                            {},
                            {}};
  const auto irrep = build_irrep(Deformation(cfg.q), z, static_cast<std::size_t>(cfg.dim));
  const auto res = check_irrep_relations(irrep, cfg.q, 2);
  for (const auto& it : res.items) {
    std::optional<std::string> witness;
    if (it.witness) witness = "e_" + std::to_string(*it.witness);
    report.items.push_back({"irrep:" + std::string(relation_name(it.relation)), it.max_residual, cfg.tol,
                            it.max_residual < cfg.tol, witness});
  }
  report.max_residual = res.max_residual();
  return report;
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--out", cfg.out_path, "Write the report to PATH instead of stdout");
  sub->add_option("--format", cfg.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  sub->add_flag("--timing", cfg.timing, "Record wall time in elapsed_ms (makes reports run-dependent)");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite-section verification of quantum SU(2) representations", "suq2-verify"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::function<VerificationReport(const RunConfig&)> command;

  auto* q0 = app.add_subcommand("verify-q0", "Exact q = 0 intertwining and relations");
  q0->add_option("--cap", cfg.cap, "Shell cap")->capture_default_str();
  add_common(q0, cfg);
  q0->callback([&] { command = cmd_verify_q0; });

  auto* rel = app.add_subcommand("verify-relations", "Defining relations for lambda_q and pi_q");
  rel->add_option("--q", cfg.q, "Deformation parameter")->required();
  rel->add_option("--cap", cfg.cap, "Shell cap")->capture_default_str();
  rel->add_option("--tol", cfg.tol, "Residual tolerance")->default_val(1e-12);
  add_common(rel, cfg);
  rel->callback([&] { command = cmd_verify_relations; });

  auto* eqv = app.add_subcommand("verify-equivalence", "Closed-form decomposition against direct conjugation");
  eqv->add_option("--q", cfg.q, "Deformation parameter")->required();
  eqv->add_option("--cap", cfg.cap, "Shell cap")->capture_default_str();
  eqv->add_option("--tol", cfg.tol, "Deviation tolerance")->default_val(1e-13);
  add_common(eqv, cfg);
  eqv->callback([&] { command = cmd_verify_equivalence; });

  auto* est = app.add_subcommand("estimates", "The two g-estimates for k = 1..kmax");
  est->add_option("--q", cfg.q, "Deformation parameter")->required();
  est->add_option("--kmax", cfg.kmax, "Largest k")->capture_default_str();
  add_common(est, cfg);
  est->callback([&] { command = cmd_estimates; });

  auto* dec = app.add_subcommand("decay", "Per-shell decay of a difference operator");
  dec->add_option("--q", cfg.q, "Deformation parameter")->required();
  dec->add_option("--cap", cfg.cap, "Shell cap")->capture_default_str();
  dec->add_option("--target", cfg.target, "R1mR3, R2mR4, T1mT3, T2mT4, Dalpha or Dbeta")->required();
  add_common(dec, cfg);
  dec->callback([&] { command = cmd_decay; });

  auto* tl = app.add_subcommand("tails", "Tail norms of D in the pi factor");
  tl->add_option("--q", cfg.q, "Deformation parameter")->required();
  tl->add_option("--cap", cfg.cap, "Shell cap")->capture_default_str();
  tl->add_option("--gen", cfg.gen, "alpha or beta")->capture_default_str();
  add_common(tl, cfg);
  tl->callback([&] { command = cmd_tails; });

  auto* ir = app.add_subcommand("irrep", "Relations for the irreducible representation at z");
  ir->add_option("--q", cfg.q, "Deformation parameter")->required();
  ir->add_option("--z-re", cfg.z_re, "Real part of z")->capture_default_str();
  ir->add_option("--z-im", cfg.z_im, "Imaginary part of z")->capture_default_str();
  ir->add_option("--dim", cfg.dim, "Section dimension")->capture_default_str();
  ir->add_option("--tol", cfg.tol, "Residual tolerance")->default_val(1e-12);
  add_common(ir, cfg);
  ir->callback([&] { command = cmd_irrep; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  VerificationReport report;
  try {
    const auto start = std::chrono::steady_clock::now();
    report = command(cfg);
    if (cfg.timing)
      report.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  const std::string text = cfg.format == "csv" ? to_csv(report) : to_json(report);
  if (cfg.out_path.empty()) {
    out << text;
  } else {
    std::ofstream file(cfg.out_path, std::ios::binary);
    if (!file || !(file << text)) {
      err << "error: cannot write " << cfg.out_path << '\n';
      return kExitUsage;
    }
  }
  return report.pass() ? kExitPass : kExitFail;
}

}  // namespace suq2
