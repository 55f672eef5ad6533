#include "catamaj/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <unistd.h>

#include "catamaj/coherence.hpp"
#include "catamaj/report.hpp"

namespace catamaj {

namespace {

constexpr const char* kDefaultOracleGrid = "-20:20:0.05";
constexpr const char* kDefaultScanGrid = "-5:5:0.1";
constexpr unsigned kDefaultPrecision = 256;
constexpr double kDefaultTol = 1e-9;
constexpr const char* kDefaultEps = "0.001";
constexpr const char* kDefaultResolution = "0.01";

// Unset members fall back to the problem file, then to the defaults above.
struct Flags {
  std::string problem = "-";
  std::optional<std::string> backend;
  std::optional<unsigned> precision;
  std::optional<double> tol;
  std::optional<std::string> eps;
  std::optional<std::string> grid;
  std::optional<std::string> out;
  std::optional<unsigned> threads;
  std::optional<std::size_t> degree_cap;
  std::optional<std::size_t> embedding_cap;
  std::optional<std::size_t> dim;
  std::optional<std::string> resolution;
  bool normalize = false;
  bool no_oracle = false;
  bool summary = false;
};

struct Config {
  Backend backend = Backend::Exact;
  unsigned precision = kDefaultPrecision;
  VectorOptions vectors;
  std::string grid;
  unsigned threads = 1;
  std::size_t degree_cap = kDefaultDegreeCap;
  bool oracle = true;
  bool summary = false;
};

template <class T>
T pick(const std::optional<T>& flag, const json& problem, const char* key, T fallback) {
  if (flag) return *flag;
  if (problem.contains(key)) {
    const json& v = problem.at(key);
    // Numbers written as decimals arrive as strings.
    if constexpr (std::is_same_v<T, std::string>) return v.is_string() ? v.get<std::string>() : v.dump();
    else if constexpr (std::is_same_v<T, bool>) return v.get<bool>();
    else if constexpr (std::is_floating_point_v<T>) return v.is_string() ? std::stod(v.get<std::string>()) : v.get<T>();
    else return v.get<T>();
  }
  return fallback;
}

Config resolve(const Flags& f, const json& problem, const char* default_grid) {
  Config c;
  const auto backend = pick<std::string>(f.backend, problem, "backend", "exact");
  if (backend != "exact" && backend != "float")
    throw Error(ErrorCode::InvalidArgument, "backend must be exact or float, got '" + backend + "'");
  c.backend = backend == "exact" ? Backend::Exact : Backend::Float;
  c.precision = pick<unsigned>(f.precision, problem, "precision", kDefaultPrecision);
  c.vectors.backend = c.backend;
  c.vectors.sum_tolerance = pick<double>(f.tol, problem, "tol", kDefaultTol);
  c.vectors.normalize = f.normalize || pick<bool>(std::nullopt, problem, "normalize", false);
  c.grid = pick<std::string>(f.grid, problem, "grid", default_grid);
  c.threads = pick<unsigned>(f.threads, problem, "threads", 1u);
  c.degree_cap = pick<std::size_t>(f.degree_cap, problem, "degree_cap", kDefaultDegreeCap);
  c.oracle = !f.no_oracle && pick<bool>(std::nullopt, problem, "oracle", true);
  c.summary = f.summary;
  return c;
}

const json& require(const json& problem, const char* key) {
  if (!problem.contains(key)) throw Error(ErrorCode::ParseError, std::string("missing field '") + key + "'");
  return problem.at(key);
}

// First present key among the aliases.
const json& require_any(const json& problem, std::initializer_list<const char*> keys) {
  for (const char* k : keys)
    if (problem.contains(k)) return problem.at(k);
  throw Error(ErrorCode::ParseError, std::string("missing field '") + *keys.begin() + "'");
}

void check_mode(const json& problem, std::initializer_list<const char*> accepted) {
  if (!problem.contains("mode")) return;
  const auto mode = problem.at("mode").get<std::string>();
  for (const char* m : accepted)
    if (mode == m) return;
  throw Error(ErrorCode::InvalidArgument, "problem mode '" + mode + "' does not fit this command");
}

bool has_thermal(const json& problem) { return problem.contains("g") || problem.contains("energies"); }

ThermalSpec thermal_from(const json& problem, const Config& c) {
  if (problem.contains("g")) return thermal_spec_from_gibbs(scalars_from_json(problem.at("g"), c.backend), c.vectors);
  auto energies = scalars_from_json(require(problem, "energies"), c.backend);
  return gibbs_vector(energies, scalar_from_json(require(problem, "beta"), c.backend));
}

ProbVector vector_from(const json& j, const Config& c) {
  return ProbVector::from_scalars(scalars_from_json(j, c.backend), c.vectors);
}

std::vector<Scalar> level_vector_from(const json& j, const Config& c) {
  return make_level_vector(scalars_from_json(j, c.backend), c.vectors);
}

TrumpingConfig trumping_config(const Config& c) {
  TrumpingConfig t;
  t.sympoly.degree_cap = c.degree_cap;
  t.sympoly.threads = c.threads;
  t.run_oracle = c.oracle;
  t.oracle_grid = GridSpec::parse(c.grid);
  return t;
}

json envelope(const char* command, const Config& c) {
  return json{{"schema", kReportSchema},
              {"command", command},
              {"config",
               {{"backend", c.backend == Backend::Exact ? "exact" : "float"},
                {"precision", c.precision},
                {"tol", c.vectors.sum_tolerance},
                {"normalize", c.vectors.normalize},
                {"grid", c.grid},
                {"threads", c.threads},
                {"degree_cap", c.degree_cap},
                {"oracle", c.oracle}}}};
}

void merge(json& into, const json& body) {
  for (const auto& [k, v] : body.items()) into[k] = v;
}

std::vector<std::string> amplitude_strings(const json& j) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "pure state must be an array");
  std::vector<std::string> out;
  for (const auto& v : j) out.push_back(v.is_string() ? v.get<std::string>() : v.dump());
  return out;
}

PureState pure_state_from(const json& j, bool probabilities, const Config& c) {
  if (probabilities) return PureState::from_probabilities(scalars_from_json(j, c.backend), c.vectors);
  return PureState::from_amplitudes(amplitude_strings(j), c.vectors);
}

// Inconclusive verdicts caused by a configured cap exit with kExitResourceCap.
bool hit_cap(const std::vector<std::string>& reasons) {
  for (const auto& r : reasons)
    if (r.starts_with("degree cap") || r.starts_with("embedding too large")) return true;
  return false;
}

int verdict_exit(Status s, const std::vector<std::string>& reasons, json& report) {
  const bool cap = s == Status::Inconclusive && hit_cap(reasons);
  report["resource_cap"] = cap;
  return cap ? kExitResourceCap : exit_code_for(s);
}

struct Outcome {
  std::string text;
  int code = kExitSufficient;
};

Outcome cmd_check_trumping(const Flags& f, const json& problem) {
  check_mode(problem, {"locc"});
  const Config c = resolve(f, problem, kDefaultOracleGrid);
  set_float_precision(c.precision);
  const ProbVector x = vector_from(require(problem, "x"), c);
  const ProbVector y = vector_from(require(problem, "y"), c);
  const TrumpingVerdict v = check_trumping(x, y, trumping_config(c));
  json report = envelope("check-trumping", c);
  merge(report, to_json(v, !c.summary));
  const int code = verdict_exit(v.status, v.reasons, report);
  return {report.dump(2) + "\n", code};
}

Outcome cmd_check_thermo(const Flags& f, const json& problem) {
  check_mode(problem, {"thermo"});
  const Config c = resolve(f, problem, kDefaultOracleGrid);
  set_float_precision(c.precision);
  const ThermalSpec spec = thermal_from(problem, c);
  const auto q_rho = level_vector_from(require_any(problem, {"rho", "x"}), c);
  const auto q_sigma = level_vector_from(require_any(problem, {"sigma", "y"}), c);

  ThermoOptions options;
  if (problem.contains("g_eps")) options.g_eps = scalars_from_json(problem.at("g_eps"), Backend::Exact);
  options.eps = parse_rational(pick<std::string>(f.eps, problem, "eps", kDefaultEps));
  options.embedding_cap = pick<std::size_t>(f.embedding_cap, problem, "embedding_cap", kDefaultEmbeddingCap);
  const TrumpingConfig t = trumping_config(c);
  options.sympoly = t.sympoly;
  options.run_oracle = t.run_oracle;
  options.oracle_grid = t.oracle_grid;

  const ThermoVerdict v = check_thermo(q_rho, q_sigma, spec, options);
  json report = envelope("check-thermo", c);
  report["config"]["eps"] = Scalar(options.eps).to_string();
  report["config"]["embedding_cap"] = options.embedding_cap;
  if (spec.Z) report["Z"] = to_json(*spec.Z);
  merge(report, to_json(v, !c.summary));
  const int code = verdict_exit(v.status, v.reasons, report);
  return {report.dump(2) + "\n", code};
}

Outcome cmd_check_coherence(const Flags& f, const json& problem) {
  check_mode(problem, {"coherence"});
  const Config c = resolve(f, problem, kDefaultOracleGrid);
  set_float_precision(c.precision);
  const bool probabilities = problem.value("probabilities", false);
  const PureState psi = pure_state_from(require(problem, "psi"), probabilities, c);
  const PureState phi = pure_state_from(require(problem, "phi"), probabilities, c);
  const CoherentVerdict v = check_coherent_trumping(psi, phi, trumping_config(c));
  json report = envelope("check-coherence", c);
  merge(report, to_json(v, !c.summary));
  const int code = verdict_exit(v.trumping.status, v.trumping.reasons, report);
  return {report.dump(2) + "\n", code};
}

// LOCC by default; thermal when a Gibbs vector or spectrum is supplied.
CatalystMode catalyst_mode_from(const json& problem, const Config& c) {
  const auto kind = problem.value("catalyst_mode", has_thermal(problem) ? "thermo" : "locc");
  if (kind == "locc") return LoccMode{};
  if (kind != "thermo") throw Error(ErrorCode::InvalidArgument, "catalyst_mode must be locc or thermo");
  ThermoMode m;
  m.gibbs = thermal_from(problem, c).g;
  if (problem.contains("catalyst_g"))
    m.catalyst_gibbs = thermal_spec_from_gibbs(scalars_from_json(problem.at("catalyst_g"), c.backend), c.vectors).g;
  return m;
}

std::vector<Scalar> operand(const json& problem, const char* key, const CatalystMode& mode, const Config& c) {
  if (std::holds_alternative<ThermoMode>(mode)) return level_vector_from(require(problem, key), c);
  return vector_from(require(problem, key), c).entries();
}

Outcome cmd_search(const Flags& f, const json& problem) {
  check_mode(problem, {"search", "locc", "thermo"});
  const Config c = resolve(f, problem, kDefaultOracleGrid);
  set_float_precision(c.precision);
  const CatalystMode mode = catalyst_mode_from(problem, c);
  const auto x = operand(problem, "x", mode, c);
  const auto y = operand(problem, "y", mode, c);
  const std::size_t dim = f.dim ? *f.dim : require_any(problem, {"dim", "dims"}).get<std::size_t>();
  const Rational resolution = parse_rational(pick<std::string>(f.resolution, problem, "resolution", kDefaultResolution));

  SearchOptions options;
  options.threads = c.threads;
  const SearchResult r = search_catalyst(x, y, dim, resolution, mode, options);
  json report = envelope("search-catalyst", c);
  report["status"] = r.catalyst ? "Found" : "Inconclusive";
  report["mode"] = std::holds_alternative<ThermoMode>(mode) ? "thermo" : "locc";
  report["dim"] = dim;
  report["resolution"] = Scalar(resolution).to_string();
  merge(report, to_json(r));
  return {report.dump(2) + "\n", r.catalyst ? kExitSufficient : kExitInconclusive};
}

Outcome cmd_verify(const Flags& f, const json& problem) {
  const Config c = resolve(f, problem, kDefaultOracleGrid);
  set_float_precision(c.precision);
  const CatalystMode mode = catalyst_mode_from(problem, c);
  const auto x = operand(problem, "x", mode, c);
  const auto y = operand(problem, "y", mode, c);
  const auto cat = operand(problem, "catalyst", mode, c);
  const bool ok = verify_catalyst(x, y, cat, mode);
  json report = envelope("verify-catalyst", c);
  report["status"] = ok ? "Verified" : "Refuted";
  report["mode"] = std::holds_alternative<ThermoMode>(mode) ? "thermo" : "locc";
  report["verified"] = ok;
  return {report.dump(2) + "\n", ok ? kExitSufficient : kExitRefuted};
}

Outcome cmd_scan(const Flags& f, const json& problem) {
  check_mode(problem, {"scan", "locc", "thermo"});
  const Config c = resolve(f, problem, kDefaultScanGrid);
  set_float_precision(c.precision);
  const auto grid = GridSpec::parse(c.grid).points();
  std::ostringstream csv;
  if (has_thermal(problem)) {
    const ThermalSpec spec = thermal_from(problem, c);
    emit_divergence_scan(level_vector_from(require_any(problem, {"rho", "x"}), c),
                         level_vector_from(require_any(problem, {"sigma", "y"}), c), spec.g, grid, csv);
  } else {
    emit_scan(vector_from(require(problem, "x"), c), vector_from(require(problem, "y"), c), grid, csv);
  }
  return {csv.str(), kExitSufficient};
}

std::string read_problem(const std::string& path, std::istream& in) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(in), {});
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::InvalidArgument, "cannot open problem file '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(file), {});
}

// Temp file in the target directory, then rename over the destination.
void write_atomically(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw Error(ErrorCode::InvalidArgument, "cannot write '" + tmp.string() + "'");
    os << text;
    os.flush();
    if (!os) throw Error(ErrorCode::InvalidArgument, "write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error(ErrorCode::InvalidArgument, "cannot move report to '" + path + "': " + ec.message());
  }
}

bool is_resource_cap(ErrorCode code) {
  return code == ErrorCode::DegreeCapExceeded || code == ErrorCode::GridTooLarge ||
         code == ErrorCode::EmbeddingTooLarge;
}

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("problem", f.problem, "Problem JSON file, '-' for stdin [default: -]");
  sub->add_option("--backend", f.backend, "Number backend: exact or float [default: exact]")
      ->check(CLI::IsMember({"exact", "float"}));
  sub->add_option("--precision", f.precision, "Float precision in bits [default: 256]");
  sub->add_option("--tol", f.tol, "Sum tolerance for float inputs [default: 1e-9]");
  sub->add_option("--grid", f.grid,
                  "Oracle or scan grid min:max:step [default: -20:20:0.05; scan: -5:5:0.1]");
  sub->add_option("--out", f.out, "Write the report here instead of stdout");
  sub->add_option("--threads", f.threads, "Worker threads [default: 1]");
  sub->add_option("--degree-cap", f.degree_cap, "Largest polynomial degree n*r_bar [default: 4096]");
  sub->add_flag("--normalize", f.normalize, "Divide inputs by their sum instead of rejecting them [default: off]");
  sub->add_flag("--no-oracle", f.no_oracle, "Skip the dense necessary-condition grid [default: oracle on]");
  sub->add_flag("--summary", f.summary, "Omit per-k coefficient values from the report [default: off]");
}

}  // namespace

int exit_code_for(Status s) {
  switch (s) {
    case Status::ClosureSufficient:
    case Status::TrumpingSufficient: return kExitSufficient;
    case Status::Refuted: return kExitRefuted;
    case Status::Inconclusive: return kExitInconclusive;
  }
  return kExitInconclusive;
}

void emit_scan(const ProbVector& x, const ProbVector& y, std::span<const Rational> grid, std::ostream& out) {
  out << "p,norm_x,norm_y,renyi_x,renyi_y\n";
  for (const auto& row : scan_rows(x, y, grid))
    out << Scalar(row.p).to_decimal(12) << ',' << row.norm_x.to_decimal(12) << ',' << row.norm_y.to_decimal(12)
        << ',' << row.renyi_x.to_string(12) << ',' << row.renyi_y.to_string(12) << '\n';
}

void emit_divergence_scan(std::span<const Scalar> q_rho, std::span<const Scalar> q_sigma, std::span<const Scalar> g,
                          std::span<const Rational> grid, std::ostream& out) {
  out << "p,d_rho,d_sigma\n";
  for (const auto& row : divergence_rows(q_rho, q_sigma, g, grid))
    out << Scalar(row.p).to_decimal(12) << ',' << row.rho.to_string(12) << ',' << row.sigma.to_string(12) << '\n';
}

int run_command(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite checks for catalytic majorization, thermal and coherence transitions"};
  app.name("catamaj");
  app.require_subcommand(1);
  Flags f;

  auto* trump = app.add_subcommand("check-trumping", "Sufficient/necessary test for x trumped by y");
  auto* thermo = app.add_subcommand("check-thermo", "Catalytic thermal transition rho -> sigma");
  auto* coh = app.add_subcommand("check-coherence", "Catalytic incoherent pure-state conversion psi -> phi");
  auto* search = app.add_subcommand("search-catalyst", "Grid search for a catalyst");
  auto* scan = app.add_subcommand("scan", "CSV of p-norms and Renyi entropies (or D_p for thermal inputs)");
  auto* verify = app.add_subcommand("verify-catalyst", "Check a given catalyst");
  for (auto* sub : {trump, thermo, coh, search, scan, verify}) add_common(sub, f);
  thermo->add_option("--eps", f.eps, "l1 budget for the rational Gibbs approximation [default: 0.001]");
  thermo->add_option("--embedding-cap", f.embedding_cap, "Largest embedding dimension N [default: 10000]");
  search->add_option("--dim", f.dim, "Catalyst dimension (required here or in the file)");
  search->add_option("--resolution", f.resolution, "Catalyst grid step [default: 0.01]");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitInputError;
  }

  try {
    const json problem = parse_json_exact(read_problem(f.problem, in));
    if (!problem.is_object()) throw Error(ErrorCode::ParseError, "problem must be a JSON object");
    Outcome result;
    if (trump->parsed()) result = cmd_check_trumping(f, problem);
    else if (thermo->parsed()) result = cmd_check_thermo(f, problem);
    else if (coh->parsed()) result = cmd_check_coherence(f, problem);
    else if (search->parsed()) result = cmd_search(f, problem);
    else if (scan->parsed()) result = cmd_scan(f, problem);
    else result = cmd_verify(f, problem);

    if (f.out) write_atomically(*f.out, result.text);
    else out << result.text << std::flush;
    return result.code;
  } catch (const Error& e) {
    err << "catamaj: " << to_string(e.code()) << ": " << e.what() << '\n';
    return is_resource_cap(e.code()) ? kExitResourceCap : kExitInputError;
  } catch (const json::exception& e) {
    err << "catamaj: ParseError: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    err << "catamaj: InvalidArgument: " << e.what() << '\n';
    return kExitInputError;
  }
}

}  // namespace catamaj
