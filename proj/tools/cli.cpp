#include "cli.hpp"

#include "bergman/subspaces.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace bergman::cli {

namespace {

struct RawOptions {
  int N = 1;
  std::string alpha = "0";
  long dim = 16;
  std::string residues;
  std::optional<int> depth;
  std::optional<double> tol;
  std::uint64_t seed = 1;
  std::string mode = "auto";
  std::string format = "json";
  std::string out = "-";
  std::string check;
  std::string grid = "default";
  int trials = 100;
  std::string perturb;
};

void add_common(CLI::App* sub, RawOptions& raw) {
  sub->add_option("--N", raw.N, "shift multiplicity N >= 1");
  sub->add_option("--alpha", raw.alpha, "weight parameter alpha > -1, decimal or p/q")->allow_extra_args(false);
  sub->add_option("--dim", raw.dim, "truncation dimension D >= N + 1");
  sub->add_option("--mode", raw.mode, "auto | float | exact (auto: exact for p/q literals)");
  sub->add_option("--format", raw.format, "json | csv | text");
  sub->add_option("--out", raw.out, "output path, - for stdout");
}

void add_subspace_options(CLI::App* sub, RawOptions& raw) {
  sub->add_option("--residues", raw.residues, "comma-separated residue set, default: all of 0..N-1");
  sub->add_option("--depth", raw.depth, "depth n / power m (beurling: default maximal)");
  sub->add_option("--tol", raw.tol, "tolerance override");
  sub->add_option("--seed", raw.seed, "random seed");
  sub->add_option("--perturb", raw.perturb, "sabotage one coefficient: n:delta");
}

UsageExit flag_error(const std::string& flag, const std::string& what) {
  return UsageExit{kExitUsage, "error: " + flag + ": " + what};
}

std::vector<int> parse_residues(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const int v = std::stoi(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad residue '" + item + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<int> all_residues(int N) {
  std::vector<int> out(static_cast<std::size_t>(N));
  for (int k = 0; k < N; ++k) out[static_cast<std::size_t>(k)] = k;
  return out;
}

}  // namespace

unsigned threads_from_env() {
  const char* env = std::getenv("BERGMAN_LAB_THREADS");
  if (!env) return 0;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 1) return 0;
  return static_cast<unsigned>(v);
}

std::variant<CliConfig, UsageExit> parse_args(int argc, const char* const* argv) {
  CLI::App app{"Finite-section verification of shift operators on weighted Bergman spaces", "bergman-lab"};
  app.require_subcommand(1);
  RawOptions raw;

  struct Entry {
    Command command;
    CLI::App* app;
  };
  std::vector<Entry> subs;
  auto* weights = app.add_subcommand("weights", "print the weights w_n");
  auto* coeffs = app.add_subcommand("coeffs", "print the shift coefficients C_{N,alpha,n}");
  auto* verify = app.add_subcommand("verify", "run one named check");
  auto* beurling = app.add_subcommand("beurling", "run the Beurling-type check on a residue subspace");
  auto* census = app.add_subcommand("census", "reducing-subspace census for the shift");
  auto* suite = app.add_subcommand("suite", "run a grid of checks");
  subs = {{Command::Weights, weights}, {Command::Coeffs, coeffs}, {Command::Verify, verify},
          {Command::Beurling, beurling}, {Command::Census, census}, {Command::Suite, suite}};
  for (auto& s : subs) add_common(s.app, raw);
  for (auto* s : {verify, beurling, census, suite}) add_subspace_options(s, raw);
  verify->add_option("--check", raw.check, "check name")->required();
  suite->add_option("--grid", raw.grid, "default | quick");
  census->add_option("--trials", raw.trials, "random non-residue subspaces to test");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    return UsageExit{kExitPass, app.help()};
  } catch (const CLI::CallForAllHelp&) {
    return UsageExit{kExitPass, app.help("", CLI::AppFormatMode::All)};
  } catch (const CLI::ParseError& e) {
    return UsageExit{kExitUsage, std::string("error: ") + e.what() + "\nRun with --help for usage."};
  }

  CliConfig cfg;
  for (const auto& s : subs)
    if (s.app->parsed()) cfg.command = s.command;

  try {
    cfg.alpha = Alpha::parse(raw.alpha);
    cfg.alpha.validate();
  } catch (const Error& e) {
    return flag_error("--alpha", e.what());
  }
  if (raw.N < 1 || raw.N > 16) return flag_error("--N", "must be in 1..16");
  cfg.N = raw.N;
  if (raw.dim < raw.N + 1) return flag_error("--dim", "must be at least N + 1");
  cfg.dim = raw.dim;

  if (!raw.residues.empty()) {
    try {
      auto r = parse_residues(raw.residues);
      for (int k : r)
        if (k < 0 || k >= cfg.N) return flag_error("--residues", "residue " + std::to_string(k) + " outside [0, N)");
      std::sort(r.begin(), r.end());
      r.erase(std::unique(r.begin(), r.end()), r.end());
      cfg.residues = std::move(r);
    } catch (const std::exception& e) {
      return flag_error("--residues", e.what());
    }
  }
  if (raw.depth) {
    if (*raw.depth < 0) return flag_error("--depth", "must be nonnegative");
    cfg.depth = *raw.depth;
  } else {
    cfg.depth = cfg.command == Command::Beurling ? 0 : 1;
  }
  if (raw.tol && !(*raw.tol >= 0.0)) return flag_error("--tol", "must be nonnegative");
  cfg.tol = raw.tol;
  cfg.seed = raw.seed;

  if (raw.mode == "auto")
    cfg.mode = cfg.alpha.preferred_mode();
  else if (raw.mode == "float")
    cfg.mode = ScalarMode::Float64;
  else if (raw.mode == "exact")
    cfg.mode = ScalarMode::ExactRational;
  else
    return flag_error("--mode", "expected auto, float or exact");

  if (raw.format == "json")
    cfg.format = ReportFormat::Json;
  else if (raw.format == "csv")
    cfg.format = ReportFormat::Csv;
  else if (raw.format == "text")
    cfg.format = ReportFormat::Text;
  else
    return flag_error("--format", "expected json, csv or text");
  cfg.out = raw.out;

  if (cfg.command == Command::Verify) {
    if (!parse_check(raw.check)) return flag_error("--check", "unknown check '" + raw.check + "'");
    cfg.check = raw.check;
  }
  if (raw.grid != "default" && raw.grid != "quick") return flag_error("--grid", "expected default or quick");
  cfg.grid = raw.grid;
  if (raw.trials < 0) return flag_error("--trials", "must be nonnegative");
  cfg.trials = raw.trials;

  if (!raw.perturb.empty()) {
    const auto colon = raw.perturb.find(':');
    try {
      if (colon == std::string::npos) throw std::invalid_argument("expected n:delta");
      CoeffPerturbation p;
      p.n = std::stol(raw.perturb.substr(0, colon));
      p.delta = std::stod(raw.perturb.substr(colon + 1));
      cfg.perturbation = p;
    } catch (const std::exception& e) {
      return flag_error("--perturb", e.what());
    }
  }
  cfg.threads = threads_from_env();
  return cfg;
}

namespace {

struct Table {
  std::string command;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

template <typename Real>
std::string exact_text(const Real& x) {
  if constexpr (std::is_same_v<Real, Rational>)
    return x.str();
  else
    return "";
}

std::string double_text(double x) { return nlohmann::json(x).dump(); }

int write_output(const std::string& body, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << body << std::flush;
    return std::cout ? kExitPass : kExitIo;
  }
  std::ofstream out(path, std::ios::binary);
  if (out) out << body;
  if (!out) {
    std::cerr << "error: cannot write output to '" << path << "'\n";
    return kExitIo;
  }
  return kExitPass;
}

int emit_table(const CliConfig& cfg, const Table& t) {
  std::ostringstream os;
  switch (cfg.format) {
    case ReportFormat::Json: {
      nlohmann::json rows = nlohmann::json::array();
      for (const auto& r : t.rows) {
        nlohmann::json row;
        for (std::size_t i = 0; i < t.columns.size(); ++i) {
          if (t.columns[i] == "exact")
            row[t.columns[i]] = r[i];
          else
            row[t.columns[i]] = nlohmann::json::parse(r[i]);
        }
        rows.push_back(std::move(row));
      }
      nlohmann::json doc = {{"suite_version", kSuiteVersion}, {"command", t.command}, {"N", cfg.N},
                            {"alpha", cfg.alpha.text()}, {"D", cfg.dim}, {"mode", mode_name(cfg.mode)},
                            {"rows", std::move(rows)}};
      os << doc.dump(2) << '\n';
      break;
    }
    case ReportFormat::Csv:
      for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
      os << "\r\n";
      for (const auto& r : t.rows) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_field(r[i]);
        os << "\r\n";
      }
      break;
    case ReportFormat::Text:
      for (const auto& c : t.columns) os << c << '\t';
      os << '\n';
      for (const auto& r : t.rows) {
        for (const auto& v : r) os << v << '\t';
        os << '\n';
      }
      break;
  }
  return write_output(os.str(), cfg.out);
}

template <typename Real>
int run_weights(const CliConfig& cfg) {
  const auto w = weight_sequence<Real>(WeightParams{cfg.alpha, cfg.N, cfg.dim});
  Table t{"weights", {"n", "value", "exact"}, {}};
  for (Index n = 0; n < w.size(); ++n) t.rows.push_back({std::to_string(n), double_text(to_double(w[n])), exact_text(w[n])});
  return emit_table(cfg, t);
}

template <typename Real>
int run_coeffs(const CliConfig& cfg) {
  WeightParams{cfg.alpha, cfg.N, cfg.dim}.validate();
  const Real lb = lower_bound<Real>(cfg.N, cfg.alpha);
  Table t{"coeffs", {"n", "value", "exact", "lower_bound"}, {}};
  for (Index n = 0; n < cfg.dim; ++n) {
    const Real c = shift_coeff<Real>(cfg.N, cfg.alpha, n);
    t.rows.push_back({std::to_string(n), double_text(to_double(c)), exact_text(c), double_text(to_double(lb))});
  }
  return emit_table(cfg, t);
}

template <BergmanScalar Scalar>
int run_census(const CliConfig& cfg) {
  const auto V = TruncatedSpace<Scalar>::monomial(cfg.alpha, cfg.dim);
  const auto S = shift(V, V.resized(cfg.dim + cfg.N), cfg.N);
  const double tol = cfg.tol.value_or(1e-6);
  const CensusReport r = reducing_census(S, cfg.N, cfg.trials, cfg.seed, tol);
  std::ostringstream os;
  const double min_res = r.random_total ? r.random_min_residual : 0.0;
  switch (cfg.format) {
    case ReportFormat::Json: {
      nlohmann::json doc = {
          {"suite_version", kSuiteVersion},
          {"census",
           {{"N", cfg.N}, {"alpha", cfg.alpha.text()}, {"D", cfg.dim}, {"mode", mode_name(cfg.mode)},
            {"seed", cfg.seed}, {"tol", tol}, {"residue_total", r.residue_total},
            {"residue_passed", r.residue_passed}, {"residue_max_residual", r.residue_max_residual},
            {"random_total", r.random_total}, {"random_failed", r.random_failed},
            {"random_min_residual", min_res}, {"pass", r.ok()}}}};
      os << doc.dump(2) << '\n';
      break;
    }
    case ReportFormat::Csv:
      os << "N,alpha,D,mode,seed,tol,residue_total,residue_passed,residue_max_residual,random_total,random_failed,"
            "random_min_residual,pass\r\n"
         << cfg.N << ',' << csv_field(cfg.alpha.text()) << ',' << cfg.dim << ',' << mode_name(cfg.mode) << ','
         << cfg.seed << ',' << double_text(tol) << ',' << r.residue_total << ',' << r.residue_passed << ','
         << double_text(r.residue_max_residual) << ',' << r.random_total << ',' << r.random_failed << ','
         << double_text(min_res) << ',' << (r.ok() ? "true" : "false") << "\r\n";
      break;
    case ReportFormat::Text:
      os << "residue subspaces reducing: " << r.residue_passed << "/" << r.residue_total
         << " (max residual " << r.residue_max_residual << ")\n"
         << "random subspaces rejected: " << r.random_failed << "/" << r.random_total << " (min residual " << min_res
         << ")\n"
         << (r.ok() ? "PASS" : "FAIL") << '\n';
      break;
  }
  const int io = write_output(os.str(), cfg.out);
  if (io != kExitPass) return io;
  return r.ok() ? kExitPass : kExitFail;
}

CheckSpec spec_from(const CliConfig& cfg, CheckKind kind) {
  CheckSpec s = make_check(kind, cfg.N, cfg.alpha, cfg.dim, cfg.residues.value_or(all_residues(cfg.N)), cfg.depth,
                           cfg.seed, cfg.mode);
  if (cfg.tol) s.tol = *cfg.tol;
  s.perturbation = cfg.perturbation;
  return s;
}

}  // namespace

int run(const CliConfig& cfg) {
  try {
    const bool exact = cfg.mode == ScalarMode::ExactRational;
    switch (cfg.command) {
      case Command::Weights: return exact ? run_weights<Rational>(cfg) : run_weights<double>(cfg);
      case Command::Coeffs: return exact ? run_coeffs<Rational>(cfg) : run_coeffs<double>(cfg);
      case Command::Census: return exact ? run_census<Rational>(cfg) : run_census<Complex>(cfg);
      case Command::Verify:
        return emit_report(run_suite({spec_from(cfg, *parse_check(cfg.check))}, 1), cfg.format, cfg.out);
      case Command::Beurling:
        return emit_report(run_suite({spec_from(cfg, CheckKind::Beurling)}, 1), cfg.format, cfg.out);
      case Command::Suite: {
        std::vector<CheckSpec> grid = cfg.grid == "quick" ? quick_grid() : default_grid();
        if (cfg.perturbation)
          for (auto& s : grid) s.perturbation = cfg.perturbation;
        return emit_report(run_suite(grid, cfg.threads), cfg.format, cfg.out);
      }
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace bergman::cli
