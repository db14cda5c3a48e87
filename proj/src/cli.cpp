#include "epdisc/cli.hpp"

#include "epdisc/epsolver.hpp"
#include "epdisc/report.hpp"
#include "epdisc/toy3.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

namespace epdisc {

namespace {

using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MissingInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ScanConfig {
  std::string model;
  std::string klass;
  std::string parity = "even";
  long M = 0;
  long K = 0;
  std::string beta = "1/10";
  std::size_t n_min = 8;
  std::size_t n_max = 12;
  double tol = 1e-3;
  long precision = kDefaultPrecision.bits;
  std::string ring = "auto";
  std::string format = "json";
  std::string out;
};

long env_precision() {
  const char* v = std::getenv("EPDISC_PRECISION");
  if (v == nullptr || *v == '\0') return kDefaultPrecision.bits;
  char* end = nullptr;
  const long bits = std::strtol(v, &end, 10);
  if (*end != '\0') throw UsageError(std::string("EPDISC_PRECISION is not an integer: ") + v);
  return bits;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingInput("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Values from --config fill in every option not given on the command line.
void apply_config(const std::string& path, ScanConfig& c, const CLI::App& app) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw UsageError("config " + path + ": " + e.what());
  }
  if (!j.is_object()) throw UsageError("config " + path + ": expected an object");
  auto given = [&](const std::string& flag) { return app.get_option(flag)->count() > 0; };
  try {
    for (const auto& [key, v] : j.items()) {
      const std::string flag = "--" + std::string(key == "n_min" ? "n-min" : key == "n_max" ? "n-max" : key);
      if (key == "config" || !app.get_option_no_throw(flag)) throw UsageError("config: unknown key " + key);
      if (given(flag)) continue;
      if (key == "model") c.model = v.get<std::string>();
      else if (key == "class") c.klass = v.get<std::string>();
      else if (key == "parity") c.parity = v.get<std::string>();
      else if (key == "M") c.M = v.get<long>();
      else if (key == "K") c.K = v.get<long>();
      else if (key == "beta") c.beta = v.get<std::string>();
      else if (key == "n_min") c.n_min = v.get<std::size_t>();
      else if (key == "n_max") c.n_max = v.get<std::size_t>();
      else if (key == "tol") c.tol = v.get<double>();
      else if (key == "precision") c.precision = v.get<long>();
      else if (key == "ring") c.ring = v.get<std::string>();
      else if (key == "format") c.format = v.get<std::string>();
      else if (key == "out") c.out = v.get<std::string>();
      else throw UsageError("config: unknown key " + key);
    }
  } catch (const json::exception& e) {
    throw UsageError("config " + path + ": " + e.what());
  }
}

ModelSpec model_from_config(const ScanConfig& c) {
  ModelSpec s;
  s.precision = Precision{c.precision};
  if (!c.klass.empty() && c.model != "mathieu") throw UsageError("--class applies to --model mathieu only");
  if (c.model == "mathieu") {
    static const std::map<std::string, ModelKind> classes{{"pi-even", ModelKind::MathieuPiEven},
                                                          {"pi-odd", ModelKind::MathieuPiOdd},
                                                          {"2pi-even", ModelKind::Mathieu2PiEven},
                                                          {"2pi-odd", ModelKind::Mathieu2PiOdd}};
    if (c.klass.empty()) throw UsageError("--model mathieu needs --class");
    const auto it = classes.find(c.klass);
    if (it == classes.end()) throw UsageError("unknown --class " + c.klass);
    s.kind = it->second;
    return s;
  }
  const auto kind = kind_from_name(c.model);
  if (!kind || c.model.rfind("mathieu", 0) == 0) throw UsageError("unknown --model " + c.model);
  s.kind = *kind;
  if (c.parity != "even" && c.parity != "odd") throw UsageError("--parity must be even or odd");
  s.parity = c.parity == "even" ? Parity::Even : Parity::Odd;
  s.M = c.M;
  s.K = c.K;
  if (s.kind == ModelKind::RigidRotor && s.M < 0) throw UsageError("--M must be nonnegative for the rotor");
  try {
    s.beta = parse_rational(c.beta);
  } catch (const std::exception&) {
    throw UsageError("--beta is not a rational: " + c.beta);
  }
  return s;
}

void check_common(std::size_t n_min, std::size_t n_max, double tol, long precision, bool single_dim) {
  if (!single_dim && (n_min < 2 || n_max <= n_min)) throw UsageError("need 2 <= --n-min < --n-max");
  if (!(tol > 0)) throw UsageError("--tol must be positive");
  if (precision < 32 || precision > (1L << 20)) throw UsageError("--precision must be in [32, 1048576]");
}

std::string csv_path_for(const std::string& out) {
  std::filesystem::path p(out);
  p.replace_extension(".csv");
  return p.string();
}

std::string json_path_for(const std::string& out) {
  std::filesystem::path p(out);
  if (p.extension() == ".csv") p.replace_extension(".json");
  return p.string();
}

int emit_warnings(const ScanReport& r, std::ostream& err) {
  for (const auto& w : r.warnings) err << "warning: " << w << "\n";
  const bool usable = r.accepted_n != 0;
  if (!usable) err << "error: no dimension pair completed\n";
  return usable ? kExitOk : kExitComputation;
}

int cmd_scan(ScanConfig c, const std::string& config_path, const CLI::App& app, std::ostream& out, std::ostream& err) {
  if (!config_path.empty()) apply_config(config_path, c, app);
  if (c.model.empty()) throw UsageError("--model is required");
  const ModelSpec spec = model_from_config(c);
  check_common(c.n_min, c.n_max, c.tol, c.precision, spec.kind == ModelKind::Toy3);
  const auto ring = ring_path_from_name(c.ring);
  if (!ring) throw UsageError("--ring must be exact, float or auto");
  if (c.format != "json" && c.format != "csv") throw UsageError("--format must be json or csv");

  ScanOptions opts;
  opts.n_min = c.n_min;
  opts.n_max = c.n_max;
  opts.tol = c.tol;
  opts.precision = Precision{c.precision};
  opts.ring = *ring;
  try {
    resolve_ring(spec, opts);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  const ScanReport r = scan(spec, opts);
  const int code = emit_warnings(r, err);
  if (c.out.empty()) {
    out << (c.format == "csv" ? accepted_csv(r) : report_to_json(r));
  } else {
    write_file_atomic(json_path_for(c.out), report_to_json(r));
    if (c.format == "csv") write_file_atomic(csv_path_for(c.out), accepted_csv(r));
  }
  return code;
}

struct SeriesPlan {
  std::string key;
  ModelSpec spec;
};

struct FigurePlan {
  std::vector<SeriesPlan> series;
  std::size_t n_min, n_max;
};

ModelSpec make(ModelKind k, long M = 0, long K = 0, Parity par = Parity::Even) {
  ModelSpec s;
  s.kind = k;
  s.M = M;
  s.K = K;
  s.parity = par;
  return s;
}

FigurePlan figure_plan(const std::string& name) {
  if (name == "box-x") return {{{"box-x", make(ModelKind::BoxX)}}, 6, 12};
  if (name == "box-x2") {
    return {{{"even", make(ModelKind::BoxX2, 0, 0, Parity::Even)}, {"odd", make(ModelKind::BoxX2, 0, 0, Parity::Odd)}}, 6, 10};
  }
  if (name == "mathieu-pi") return {{{"even", make(ModelKind::MathieuPiEven)}, {"odd", make(ModelKind::MathieuPiOdd)}}, 8, 16};
  if (name == "mathieu-2pi") {
    return {{{"even", make(ModelKind::Mathieu2PiEven)}, {"odd", make(ModelKind::Mathieu2PiOdd)}}, 8, 16};
  }
  if (name == "rotor") {
    FigurePlan p{{}, 8, 14};
    for (long M = 0; M <= 3; ++M) p.series.push_back({"M=" + std::to_string(M), make(ModelKind::RigidRotor, M)});
    return p;
  }
  if (name == "top-m0k0") return {{{"M=0,K=0", make(ModelKind::SymmetricTop, 0, 0)}}, 8, 12};
  if (name == "top-mk") {
    return {{{"M=1,K=1", make(ModelKind::SymmetricTop, 1, 1)}, {"M=1,K=-1", make(ModelKind::SymmetricTop, 1, -1)}}, 8, 12};
  }
  throw UsageError("unknown figure " + name + " (box-x, box-x2, mathieu-pi, mathieu-2pi, rotor, top-m0k0, top-mk)");
}

std::string series_key(const ModelSpec& s) {
  switch (s.kind) {
    case ModelKind::BoxX2:
      return s.parity == Parity::Even ? "even" : "odd";
    case ModelKind::MathieuPiEven:
    case ModelKind::Mathieu2PiEven:
      return "even";
    case ModelKind::MathieuPiOdd:
    case ModelKind::Mathieu2PiOdd:
      return "odd";
    case ModelKind::RigidRotor:
      return "M=" + std::to_string(s.M);
    case ModelKind::SymmetricTop:
      return "M=" + std::to_string(s.M) + ",K=" + std::to_string(s.K);
    default:
      return s.label();
  }
}

struct FigureArgs {
  std::string name;
  std::vector<std::string> reports;
  std::size_t n_min = 0, n_max = 0;
  double tol = 1e-3;
  long precision = kDefaultPrecision.bits;
  std::string out;
};

int cmd_figure(const FigureArgs& a, std::ostream& out, std::ostream& err) {
  std::vector<ScanReport> reps;
  std::vector<std::string> keys;
  int code = kExitOk;
  if (!a.reports.empty()) {
    for (const auto& path : a.reports) {
      reps.push_back(report_from_json(read_file(path)));
      keys.push_back(series_key(reps.back().model));
    }
  } else {
    if (a.name.empty()) throw UsageError("figure needs --name or --report");
    const FigurePlan plan = figure_plan(a.name);
    const std::size_t lo = a.n_min ? a.n_min : plan.n_min;
    const std::size_t hi = a.n_max ? a.n_max : plan.n_max;
    check_common(lo, hi, a.tol, a.precision, false);
    for (const auto& s : plan.series) {
      ScanOptions o;
      o.n_min = lo;
      o.n_max = hi;
      o.tol = a.tol;
      o.precision = Precision{a.precision};
      ModelSpec spec = s.spec;
      spec.precision = o.precision;
      reps.push_back(scan(spec, o));
      keys.push_back(s.key);
      code = std::max(code, emit_warnings(reps.back(), err));
    }
  }
  std::vector<std::pair<std::string, const ScanReport*>> series;
  for (std::size_t i = 0; i < reps.size(); ++i) series.emplace_back(keys[i], &reps[i]);
  const std::string csv = figure_csv(series);
  if (a.out.empty()) {
    out << csv;
  } else {
    write_file_atomic(a.out, csv);
  }
  return code;
}

json qi2_matrix(const Matrix<QI2>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_string());
    rows.push_back(row);
  }
  return rows;
}

int cmd_toy(const std::string& beta_text, long precision, const std::string& path, std::ostream& out) {
  check_common(0, 0, 1.0, precision, true);
  Rational beta;
  try {
    beta = parse_rational(beta_text);
  } catch (const std::exception&) {
    throw UsageError("--beta is not a rational: " + beta_text);
  }
  json j;
  j["beta"] = to_string(beta);
  j["charpoly"] = toy_charpoly(beta).to_string();
  j["disc"] = to_string(toy_disc(beta));
  ModelSpec spec = make(ModelKind::Toy3);
  spec.beta = beta;
  spec.precision = Precision{precision};
  ScanOptions o;
  o.precision = spec.precision;
  const ScanReport r = scan(spec, o);
  j["exceptional_points"] = json::array();
  for (const auto& ep : r.accepted) {
    j["exceptional_points"].push_back({{"lambda", {{"re", ep.lambda.re().to_string()}, {"im", ep.lambda.im().to_string()}}},
                                       {"energy", {{"re", ep.energy.re().to_string()}, {"im", ep.energy.im().to_string()}}},
                                       {"disc_order", ep.disc_order},
                                       {"coalescence", ep.coalescence}});
  }
  if (beta == Rational(1, 10)) {
    const JordanChain ch = jordan_at_ep();
    j["jordan"] = {{"lambda", ch.lambda.to_string()},
                   {"eigenvalue", ch.eigenvalue.to_string()},
                   {"geometric_multiplicity", ch.geometric_multiplicity},
                   {"U", qi2_matrix(ch.U)},
                   {"J", qi2_matrix(ch.J)},
                   {"residual", jordan_residual(ch, Precision{precision}).to_string(6)}};
  }
  const std::string text = j.dump(2) + "\n";
  if (path.empty()) {
    out << text;
  } else {
    write_file_atomic(path, text);
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exceptional points from secular-polynomial discriminants", "epdisc"};
  app.require_subcommand(1);

  long default_precision = kDefaultPrecision.bits;
  try {
    default_precision = env_precision();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  ScanConfig sc;
  sc.precision = default_precision;
  std::string config_path;
  CLI::App* scan_cmd = app.add_subcommand("scan", "Scan truncation dimensions and report exceptional points");
  scan_cmd->add_option("--model", sc.model, "box-x | box-x2 | mathieu | rotor | top | toy3");
  scan_cmd->add_option("--class", sc.klass, "Mathieu class: pi-even | pi-odd | 2pi-even | 2pi-odd");
  scan_cmd->add_option("--parity", sc.parity, "box-x2 basis block: even | odd");
  scan_cmd->add_option("--M", sc.M, "rotor or top M");
  scan_cmd->add_option("--K", sc.K, "top K");
  scan_cmd->add_option("--beta", sc.beta, "toy3 coupling (rational)");
  scan_cmd->add_option("--n-min", sc.n_min, "smallest matrix dimension");
  scan_cmd->add_option("--n-max", sc.n_max, "largest matrix dimension");
  scan_cmd->add_option("--tol", sc.tol, "acceptance tolerance");
  scan_cmd->add_option("--precision", sc.precision, "working precision in bits");
  scan_cmd->add_option("--ring", sc.ring, "exact | float | auto");
  scan_cmd->add_option("--format", sc.format, "json | csv");
  scan_cmd->add_option("--out", sc.out, "output path (default stdout)");
  scan_cmd->add_option("--config", config_path, "JSON file with the same keys as the flags");

  FigureArgs fa;
  fa.precision = default_precision;
  CLI::App* fig_cmd = app.add_subcommand("figure", "Emit scatter-plot data as CSV");
  fig_cmd->add_option("--name", fa.name, "box-x | box-x2 | mathieu-pi | mathieu-2pi | rotor | top-m0k0 | top-mk");
  fig_cmd->add_option("--report", fa.reports, "scan report(s) to plot instead of scanning");
  fig_cmd->add_option("--n-min", fa.n_min, "smallest matrix dimension");
  fig_cmd->add_option("--n-max", fa.n_max, "largest matrix dimension");
  fig_cmd->add_option("--tol", fa.tol, "acceptance tolerance");
  fig_cmd->add_option("--precision", fa.precision, "working precision in bits");
  fig_cmd->add_option("--out", fa.out, "output CSV path (default stdout)");

  std::string toy_beta = "1/10";
  long toy_precision = default_precision;
  std::string toy_out;
  CLI::App* toy_cmd = app.add_subcommand("toy", "Exact results for the 3x3 example");
  toy_cmd->add_option("--beta", toy_beta, "coupling (rational)");
  toy_cmd->add_option("--precision", toy_precision, "working precision in bits");
  toy_cmd->add_option("--out", toy_out, "output path (default stdout)");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (scan_cmd->parsed()) return cmd_scan(sc, config_path, *scan_cmd, out, err);
    if (fig_cmd->parsed()) return cmd_figure(fa, out, err);
    return cmd_toy(toy_beta, toy_precision, toy_out, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const MissingInput& e) {
    err << "error: " << e.what() << "\n";
    return kExitNoInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitComputation;
  }
}

}  // namespace epdisc
