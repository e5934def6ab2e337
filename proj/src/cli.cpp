#include "klac/cli.hpp"

#include <bit>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "klac/bounds.hpp"
#include "klac/harness.hpp"
#include "klac/schemes.hpp"
#include "klac/verify.hpp"

namespace klac {

namespace {

void need(bool condition, const std::string& message) {
  if (!condition) throw std::invalid_argument(message);
}

SearchLimits make_limits(uint64_t max_subsets, double wall_seconds) {
  SearchLimits limits;
  limits.max_subsets = max_subsets;
  if (wall_seconds > 0) {
    limits.wall_seconds = wall_seconds;
  } else {
    limits.wall_seconds.reset();
  }
  return limits;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"k-limited-access coding toolkit over GF(2)"};
  app.name("klac");
  app.require_subcommand(1);

  // ---- bounds ----------------------------------------------------------
  auto* bounds_cmd =
      app.add_subcommand("bounds", "Closed-form bounds for one (n, t, k)");
  int64_t b_n = 0;
  int b_t = 0;
  int b_k = 0;
  std::optional<int> b_q;
  bool b_csv = false;
  bounds_cmd->add_option("--n", b_n, "number of target vectors")->required();
  bounds_cmd->add_option("--t", b_t, "dimension (rank of G)")->required();
  bounds_cmd->add_option("--k", b_k, "access limit")->required();
  bounds_cmd->add_option("--q", b_q, "override q (default: log2 k)");
  bounds_cmd->add_flag("--csv", b_csv, "emit one CSV row instead of text");

  // ---- construct -------------------------------------------------------
  auto* con_cmd = app.add_subcommand(
      "construct", "Build a cover scheme and emit it in scheme text format");
  std::string con_scheme;
  std::string con_input;
  int con_t = 0;
  std::optional<int> con_k;
  std::optional<int> con_q;
  int con_trials = 10;
  uint64_t con_seed = 0;
  std::string con_out;
  bool con_incdep = false;
  uint64_t con_max_subsets = 10'000'000;
  double con_wall = 60.0;
  int con_max_dim = 5;
  int con_jobs = 1;
  con_cmd
      ->add_option("scheme", con_scheme,
                   "one of: scheme1, scheme1-adapted, scr, bs, brute")
      ->required()
      ->check(CLI::IsMember(
          {"scheme1", "scheme1-adapted", "scr", "bs", "brute"}));
  con_cmd->add_option("input", con_input,
                      "matrix file with the target rows (all schemes except "
                      "scheme1)");
  con_cmd->add_option("--t", con_t, "dimension (scheme1 only)");
  con_cmd->add_option("--k", con_k, "access limit");
  con_cmd->add_option("--q", con_q, "scr rounds (k = 2^q); excludes --k");
  con_cmd->add_option("--trials", con_trials,
                      "circuit-finder attempts per removal (scr)");
  con_cmd->add_option("--seed", con_seed, "random seed (scr)");
  con_cmd->add_option("--out", con_out,
                      "output file (default: print to stdout)");
  con_cmd->add_flag("--include-dependents", con_incdep,
                    "bs: add the dependent rows to the candidate pool");
  con_cmd->add_option("--max-subsets", con_max_subsets,
                      "search node budget (bs, brute)");
  con_cmd->add_option("--wall-seconds", con_wall,
                      "search wall-clock limit; 0 disables (bs, brute)");
  con_cmd->add_option("--max-dim", con_max_dim,
                      "brute: largest dimension accepted");
  con_cmd->add_option("--jobs", con_jobs,
                      "worker count (accepted for compatibility; the "
                      "orchestration is single-threaded)");

  // ---- verify ----------------------------------------------------------
  auto* ver_cmd = app.add_subcommand(
      "verify", "Check a scheme file against its targets");
  std::string ver_scheme_file;
  std::string ver_matrix_file;
  std::optional<int> ver_full_space;
  bool ver_csv = false;
  ver_cmd->add_option("scheme-file", ver_scheme_file, "scheme text file")
      ->required();
  ver_cmd->add_option("matrix-file", ver_matrix_file,
                      "matrix file with the target rows");
  ver_cmd->add_option("--full-space", ver_full_space,
                      "verify against all nonzero vectors of this dimension");
  ver_cmd->add_flag("--csv", ver_csv, "emit failures as CSV");

  // ---- bench -----------------------------------------------------------
  auto* bench_cmd = app.add_subcommand(
      "bench", "Run the multi-scheme benchmark sweep and write a CSV");
  int be_t = 0;
  int be_k = 0;
  std::vector<int64_t> be_n;
  int be_trials = 100;
  uint64_t be_seed = 0;
  std::string be_family = "uniform_full_rank";
  int be_circuit_size = 3;
  int be_scr_trials = 10;
  uint64_t be_max_subsets = 200'000;
  double be_wall = 0.0;
  std::string be_out;
  int be_jobs = 1;
  bench_cmd->add_option("--t", be_t, "dimension")->required();
  bench_cmd->add_option("--k", be_k, "access limit")->required();
  bench_cmd->add_option("--n", be_n, "target counts, e.g. 7,14,21")
      ->required()
      ->delimiter(',');
  bench_cmd->add_option("--trials", be_trials, "instances per n");
  bench_cmd->add_option("--seed", be_seed, "master seed");
  bench_cmd
      ->add_option("--family", be_family,
                   "instance family: uniform_full_rank, planted_circuits or "
                   "nested")
      ->check(CLI::IsMember({"uniform_full_rank", "uniform",
                             "planted_circuits", "planted", "nested"}));
  bench_cmd->add_option("--circuit-size", be_circuit_size,
                        "planted_circuits block size");
  bench_cmd->add_option("--scr-trials", be_scr_trials,
                        "circuit-finder attempts per removal");
  bench_cmd->add_option("--max-subsets", be_max_subsets,
                        "search node budget per instance");
  bench_cmd->add_option("--wall-seconds", be_wall,
                        "search wall-clock limit per instance; 0 disables "
                        "(default, keeps the CSV deterministic)");
  bench_cmd->add_option("--out", be_out,
                        "output CSV path (default: sweep_T<t>_k<k>.csv)");
  bench_cmd->add_option("--jobs", be_jobs,
                        "worker count (accepted for compatibility; the "
                        "orchestration is single-threaded)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (bounds_cmd->parsed()) {
      BoundReport report = compute_bounds(b_n, b_t, b_k, b_q);
      out << (b_csv ? render_bounds_csv(report) : render_bounds_text(report));
      return 0;
    }

    if (con_cmd->parsed()) {
      CoverScheme scheme;
      bool exhausted = false;
      SearchLimits limits = make_limits(con_max_subsets, con_wall);
      if (con_scheme == "scheme1") {
        need(con_cmd->count("--t") > 0 && con_k.has_value(),
             "construct scheme1 requires --t and --k");
        scheme = scheme1_full(con_t, *con_k);
      } else {
        need(!con_input.empty(),
             "construct " + con_scheme + " requires an input matrix file");
        BitMatrix g = read_matrix_file(con_input);
        if (con_scheme == "scheme1-adapted") {
          need(con_k.has_value(), "construct scheme1-adapted requires --k");
          scheme = scheme1_adapted(g, *con_k);
        } else if (con_scheme == "scr") {
          need(con_k.has_value() != con_q.has_value(),
               "construct scr takes exactly one of --k and --q");
          int q;
          if (con_q.has_value()) {
            need(*con_q >= 1, "--q must be >= 1");
            q = *con_q;
          } else {
            need(*con_k >= 2 && (*con_k & (*con_k - 1)) == 0,
                 "scr supports k = 2^q only; got k = " +
                     std::to_string(*con_k));
            q = std::countr_zero(static_cast<unsigned>(*con_k));
          }
          scheme = scr(g, q, con_trials, con_seed);
        } else if (con_scheme == "bs") {
          need(con_k.has_value() && *con_k >= 2, "construct bs requires --k >= 2");
          BranchResult br = branch(g, *con_k, con_incdep);
          SearchOutcome result = search(br.r, g, *con_k, limits);
          exhausted = result.status == SearchStatus::exhausted;
          scheme = std::move(*result.scheme);
        } else {  // brute
          need(con_k.has_value(), "construct brute requires --k");
          SearchOutcome result =
              brute_force_optimal(g, *con_k, limits, con_max_dim);
          exhausted = result.status == SearchStatus::exhausted;
          scheme = std::move(*result.scheme);
        }
      }
      if (con_out.empty()) {
        out << format_scheme(scheme);
      } else {
        write_scheme_file(con_out, scheme);
      }
      if (exhausted) {
        err << "search limits exhausted; the best cover found was emitted\n";
        return 3;
      }
      return 0;
    }

    if (ver_cmd->parsed()) {
      need(!ver_matrix_file.empty() != ver_full_space.has_value(),
           "verify takes either a matrix file or --full-space <t>");
      CoverScheme scheme = read_scheme_file(ver_scheme_file);
      if (auto bad = validate_structure(scheme)) {
        err << "invalid scheme: " << *bad << "\n";
        return 4;
      }
      VerifyReport report =
          ver_full_space.has_value()
              ? verify_full_space(scheme, *ver_full_space)
              : verify_cover(scheme, read_matrix_file(ver_matrix_file));
      out << (ver_csv ? render_report_csv(report)
                      : render_report_text(report));
      return report.ok ? 0 : 4;
    }

    // bench
    SweepOptions options;
    options.family = family_from_string(be_family);
    options.circuit_size = be_circuit_size;
    options.scr_trials = be_scr_trials;
    options.search_limits = make_limits(be_max_subsets, be_wall);
    std::vector<BenchRecord> records =
        run_sweep(be_t, be_k, be_n, be_trials, be_seed, options);
    std::string path = be_out.empty() ? sweep_filename(be_t, be_k) : be_out;
    write_csv_file(path, records);
    out << path << "\n";
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace klac
