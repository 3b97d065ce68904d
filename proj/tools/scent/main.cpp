// Command-line front end: parses state/family documents, runs the
// computations, and prints one machine-readable JSON report per run to
// standard output (human summary on standard error; --quiet drops it).
//
// Exit codes: 0 success, 1 input/usage error, 2 numeric non-convergence
// or a bounds gap. All randomness stems from --seed (or SCENT_SEED).

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "scent/distill.hpp"
#include "scent/io.hpp"
#include "scent/locc.hpp"
#include "scent/phase_ensemble.hpp"
#include "scent/qmath.hpp"
#include "scent/random.hpp"
#include "scent/ree.hpp"
#include "scent/states.hpp"

namespace {

using namespace scent;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNumeric = 2;

std::vector<double> to_vec(const RealVector& v) {
  return {v.data(), v.data() + v.size()};
}

std::vector<std::vector<double>> to_grid(const RealMatrix& m) {
  std::vector<std::vector<double>> out(m.rows());
  for (int r = 0; r < m.rows(); ++r) {
    out[r].resize(m.cols());
    for (int c = 0; c < m.cols(); ++c) out[r][c] = m(r, c);
  }
  return out;
}

void emit(const Report& report, bool quiet, const std::string& summary) {
  std::fputs(to_json(report).c_str(), stdout);
  if (!quiet) std::fprintf(stderr, "%s\n", summary.c_str());
}

/// Interprets a loaded document as an SC state: SC files directly, plain
/// square matrices through bipartite detection (perfect-square dimension).
std::optional<SchmidtCorrelatedState> as_sc_state(const LoadedState& loaded,
                                                  double* off_weight) {
  if (loaded.is_sc_file()) {
    if (off_weight) *off_weight = 0.0;
    return SchmidtCorrelatedState(loaded.matrix);
  }
  const DensityMatrix rho(loaded.matrix);
  const int root = static_cast<int>(std::lround(std::sqrt(rho.dim())));
  if (root * root != rho.dim()) return std::nullopt;
  ScDetection det = detect_schmidt_correlated(rho);
  if (off_weight) *off_weight = det.off_subspace_weight;
  if (!det.ok()) return std::nullopt;
  return std::move(det.state);
}

int run_realize(const std::string& file, int k, double tolerance,
                int restarts, std::uint64_t seed, bool quiet) {
  const LoadedState loaded = load_state_file(file);

  PhaseSolveOptions opts;
  opts.count = k;
  opts.seed = seed;
  opts.tol = tolerance;
  opts.restarts = restarts;
  // A plain document is the density matrix to realize; an SC document
  // supplies the coefficient matrix, which is the same solver input.
  const PhaseSolveResult solved =
      loaded.is_sc_file()
          ? realize_schmidt_correlated(SchmidtCorrelatedState(loaded.matrix),
                                       opts)
          : solve_phase_ensemble(loaded.matrix, opts);

  Report report;
  report.command = "realize";
  report.seed = seed;
  report.input("file", file);
  report.input("k", static_cast<std::int64_t>(k));
  report.input("tol", tolerance);
  report.input("restarts", static_cast<std::int64_t>(restarts));
  report.result("residual", solved.residual, "norm");
  report.result("weights", to_vec(solved.ensemble.weights), "probability");
  report.result("phases", to_grid(solved.ensemble.phases), "radians");
  report.result("amplitudes", to_vec(solved.ensemble.amplitudes), "amplitude");
  report.diagnostic("converged", solved.converged);
  report.diagnostic("members",
                    static_cast<std::int64_t>(solved.ensemble.count()));
  report.diagnostic("restarts_used",
                    static_cast<std::int64_t>(solved.restarts_used));

  char line[160];
  std::snprintf(line, sizeof line,
                "realize: residual %.3e with %d members (%s)", solved.residual,
                solved.ensemble.count(),
                solved.converged ? "converged" : "NOT converged");
  emit(report, quiet, line);
  return solved.converged ? kExitOk : kExitNumeric;
}

int run_ree(const std::string& file, bool oracle, int terms, int restarts,
            std::uint64_t seed, bool quiet) {
  const LoadedState loaded = load_state_file(file);
  double off_weight = 0.0;
  const std::optional<SchmidtCorrelatedState> sc =
      as_sc_state(loaded, &off_weight);

  // The closed form needs an SC state; the oracle needs a bipartition.
  std::optional<double> closed_form;
  if (sc) closed_form = ree_sc(*sc);

  std::optional<ComplexMatrix> bipartite;
  int local = 0;
  if (sc) {
    local = sc->local_dim();
    bipartite = embed(*sc).matrix();
  } else if (!loaded.is_sc_file()) {
    const int root =
        static_cast<int>(std::lround(std::sqrt(double(loaded.matrix.rows()))));
    if (root * root == loaded.matrix.rows() &&
        loaded.matrix.rows() == loaded.matrix.cols()) {
      local = root;
      bipartite = loaded.matrix;
    }
  }

  if (!closed_form && !(oracle && bipartite))
    throw ParseError(file +
                     ": not Schmidt correlated and no bipartite square "
                     "dimension for --oracle");

  Report report;
  report.command = "ree";
  report.seed = seed;
  report.input("file", file);
  report.input("oracle", oracle);
  report.input("terms", static_cast<std::int64_t>(terms));
  report.input("restarts", static_cast<std::int64_t>(restarts));
  if (closed_form) report.result("closed_form", *closed_form, "bits");

  std::string oracle_note;
  if (oracle && bipartite) {
    ReeOracleOptions opts;
    opts.term_count = terms;
    opts.restarts = restarts;
    opts.seed = seed;
    const SeparableApproximation approx =
        ree_oracle(*bipartite, local, local, opts);
    report.result("oracle_value", approx.value, "bits");
    if (closed_form)
      report.result("gap", approx.value - *closed_form, "bits");
    report.diagnostic("oracle_terms",
                      static_cast<std::int64_t>(approx.term_count()));
    char buf[64];
    std::snprintf(buf, sizeof buf, ", oracle %.6f bits", approx.value);
    oracle_note = buf;
  }
  report.diagnostic("sc_detected", sc.has_value());
  report.diagnostic("off_subspace_weight", off_weight);

  char line[160];
  if (closed_form)
    std::snprintf(line, sizeof line, "ree: closed form %.6f bits%s",
                  *closed_form, oracle_note.c_str());
  else
    std::snprintf(line, sizeof line, "ree:%s", oracle_note.c_str());
  emit(report, quiet, line);
  return kExitOk;
}

int run_additivity(const std::string& file1, const std::string& file2,
                   std::uint64_t seed, bool quiet) {
  const LoadedState a = load_state_file(file1);
  const LoadedState b = load_state_file(file2);
  const std::optional<SchmidtCorrelatedState> sc1 = as_sc_state(a, nullptr);
  const std::optional<SchmidtCorrelatedState> sc2 = as_sc_state(b, nullptr);
  if (!sc1) throw ParseError(file1 + ": not a Schmidt correlated state");
  if (!sc2) throw ParseError(file2 + ": not a Schmidt correlated state");

  const AdditivityReport check = additivity_check(*sc1, *sc2);

  Report report;
  report.command = "additivity";
  report.seed = seed;
  report.input("file1", file1);
  report.input("file2", file2);
  report.result("lhs", check.lhs, "bits");
  report.result("rhs", check.rhs, "bits");
  report.result("residual", check.residual, "bits");
  report.diagnostic("dims",
                    std::vector<double>{double(sc1->local_dim()),
                                        double(sc2->local_dim())});

  const bool ok = check.residual <= 1e-9;
  char line[160];
  std::snprintf(line, sizeof line,
                "additivity: lhs %.6f rhs %.6f residual %.3e (%s)", check.lhs,
                check.rhs, check.residual, ok ? "additive" : "GAP");
  emit(report, quiet, line);
  return ok ? kExitOk : kExitNumeric;
}

int run_discriminate(const std::string& file, int dim,
                     const std::string& mode, int trials,
                     const std::string& transcripts_path, std::uint64_t seed,
                     bool quiet) {
  std::optional<DiscriminationBasis> basis;
  if (!file.empty()) {
    const LoadedState loaded = load_state_file(file);
    basis.emplace(loaded.matrix);
  } else if (dim > 0) {
    Rng rng(seed);
    basis.emplace(random_unitary(dim, rng));
  } else {
    throw ParseError("discriminate needs a basis file or --dim");
  }

  const bool exhaustive = mode == "exhaustive";
  const DiscriminationResult run =
      exhaustive ? discriminate_exhaustive(*basis)
                 : discriminate_sampled(*basis, seed, trials);

  double max_alice_dev = 0.0;
  const double uniform = 1.0 / basis->dim();
  for (int i = 0; i < basis->dim(); ++i)
    for (int l = 0; l < basis->dim(); ++l)
      max_alice_dev =
          std::max(max_alice_dev,
                   std::abs(alice_branch_probability(*basis, i, l) - uniform));
  bool all_product = true;
  for (const Transcript& t : run.transcripts)
    if (t.residual_schmidt_rank != 1) all_product = false;

  Report report;
  report.command = "discriminate";
  report.seed = seed;
  if (!file.empty()) report.input("file", file);
  report.input("dim", static_cast<std::int64_t>(basis->dim()));
  report.input("mode", mode);
  if (!exhaustive) report.input("trials", static_cast<std::int64_t>(trials));
  report.result("success_probability", run.success_probability, "probability");
  report.diagnostic("branches",
                    static_cast<std::int64_t>(run.transcripts.size()));
  report.diagnostic("alice_uniformity_deviation", max_alice_dev);
  report.diagnostic("residual_states_product", all_product);
  if (!transcripts_path.empty()) {
    std::ofstream out(transcripts_path, std::ios::binary);
    if (!out) throw ParseError("cannot write file: " + transcripts_path);
    out << format_transcripts(run.transcripts);
    report.diagnostic("transcripts", transcripts_path);
  }

  const bool perfect =
      std::abs(run.success_probability - 1.0) <= tol.protocol_perfect;
  char line[160];
  std::snprintf(line, sizeof line,
                "discriminate: success probability %.12f over %zu %s",
                run.success_probability, run.transcripts.size(),
                exhaustive ? "branches" : "trials");
  emit(report, quiet, line);
  return (exhaustive && !perfect) ? kExitNumeric : kExitOk;
}

int run_distill(const std::string& file, std::uint64_t seed, bool quiet) {
  const DistillationFamily family = load_family_file(file);

  Report report;
  report.command = "distill";
  report.seed = seed;
  report.input("file", file);
  report.input("N", static_cast<std::int64_t>(family.count()));
  report.input("payload_dim",
               static_cast<std::int64_t>(family.payload_dim()));

  const DiscriminationResult protocol =
      discriminate_exhaustive(family.basis());
  bool flags_consumed = true;
  for (const Transcript& t : protocol.transcripts)
    if (t.residual_schmidt_rank != 1) flags_consumed = false;

  const double lower = distill_lower_bound(family);
  const double upper = ree_upper_bound(family);
  report.result("lower_bound", lower, "bits");
  report.result("upper_bound", upper, "bits");
  report.diagnostic("branches",
                    static_cast<std::int64_t>(protocol.transcripts.size()));
  report.diagnostic("protocol_success", protocol.success_probability);
  report.diagnostic("flags_fully_consumed", flags_consumed);
  report.diagnostic("gap", std::abs(upper - lower));

  char line[160];
  if (std::abs(lower - upper) <= tol.bounds_match) {
    report.result("distillable", lower, "bits");
    std::snprintf(line, sizeof line,
                  "distill: certified %.6f bits (bounds meet)", lower);
    emit(report, quiet, line);
    return kExitOk;
  }
  std::snprintf(line, sizeof line,
                "distill: BOUNDS GAP lower %.6f upper %.6f", lower, upper);
  emit(report, quiet, line);
  return kExitNumeric;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Schmidt correlated states: realization, entanglement "
               "measures, discrimination, distillation"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  std::uint64_t seed = 0;
  bool quiet = false;
  app.add_option("--seed", seed, "64-bit seed for all stochastic paths")
      ->envname("SCENT_SEED");
  app.add_flag("--quiet", quiet, "suppress the human-readable summary");

  std::string realize_file;
  int realize_k = 0;
  double realize_tol = 1e-8;
  int realize_restarts = 32;
  CLI::App* realize = app.add_subcommand(
      "realize", "realize a state as a fixed-amplitude phase ensemble");
  realize->add_option("state-file", realize_file)->required();
  realize->add_option("--k", realize_k,
                      "ensemble size (0 picks twice the active dimension)");
  realize->add_option("--tol", realize_tol, "residual target");
  realize->add_option("--restarts", realize_restarts, "solver restarts");

  std::string ree_file;
  bool ree_oracle_flag = false;
  int ree_terms = 0;
  int ree_restarts = 8;
  CLI::App* ree = app.add_subcommand(
      "ree", "relative entropy of entanglement (closed form and oracle)");
  ree->add_option("state-file", ree_file)->required();
  ree->add_flag("--oracle", ree_oracle_flag,
                "also run the separable-state minimization");
  ree->add_option("--terms", ree_terms,
                  "oracle mixture size (0 picks the dimension squared)");
  ree->add_option("--restarts", ree_restarts, "oracle restarts");

  std::string add_file1, add_file2;
  CLI::App* additivity =
      app.add_subcommand("additivity", "check E_r(rho1 (x) rho2) = sum");
  additivity->add_option("state-file-1", add_file1)->required();
  additivity->add_option("state-file-2", add_file2)->required();

  std::string disc_file;
  int disc_dim = 0;
  std::string disc_mode = "exhaustive";
  int disc_trials = 1000;
  std::string disc_transcripts;
  CLI::App* discriminate = app.add_subcommand(
      "discriminate", "simulate the orthogonal-state LOCC protocol");
  discriminate->add_option("basis-file", disc_file,
                           "unitary matrix document (rows define the states)");
  discriminate->add_option("--dim", disc_dim, "random basis of this dimension");
  discriminate->add_option("--mode", disc_mode)
      ->check(CLI::IsMember({"exhaustive", "sampled"}));
  discriminate->add_option("--trials", disc_trials, "rounds in sampled mode");
  discriminate->add_option("--transcripts", disc_transcripts,
                           "write per-branch records to this path");

  std::string distill_file;
  CLI::App* distill =
      app.add_subcommand("distill", "certify distillable entanglement");
  distill->add_option("family-file", distill_file)->required();

  try {
    app.parse(argc, argv);
    if (realize->parsed())
      return run_realize(realize_file, realize_k, realize_tol,
                         realize_restarts, seed, quiet);
    if (ree->parsed())
      return run_ree(ree_file, ree_oracle_flag, ree_terms, ree_restarts, seed,
                     quiet);
    if (additivity->parsed())
      return run_additivity(add_file1, add_file2, seed, quiet);
    if (discriminate->parsed())
      return run_discriminate(disc_file, disc_dim, disc_mode, disc_trials,
                              disc_transcripts, seed, quiet);
    if (distill->parsed()) return run_distill(distill_file, seed, quiet);
    return kExitInput;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  } catch (const BoundsGapError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumeric;
  } catch (const ProtocolImperfectError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumeric;
  } catch (const scent::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInput;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInput;
  }
}
