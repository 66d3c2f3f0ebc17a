#include "realroots_cli/commands.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "realroots/certification.hpp"
#include "realroots/condition.hpp"
#include "realroots/errors.hpp"
#include "realroots/io.hpp"
#include "realroots/root_count.hpp"
#include "realroots/scalar_theory.hpp"
#include "realroots/sphere_mesh.hpp"
#include "realroots_cli/expr.hpp"

namespace realroots::cli {

namespace {

using io::Json;

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> expression_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

}  // namespace

LoadedSystem load_system(const std::string& text, bool affine) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw ParseError("empty input", 0);
  if (text[first] == '{') {
    Json j = io::parse_json(text);
    if (affine || io::is_affine_json(j)) {
      auto g = io::affine_system_from_json(j);
      return {lift_affine(g), g};
    }
    return {io::system_from_json(j), std::nullopt};
  }
  auto lines = expression_lines(text);
  const int n = static_cast<int>(lines.size());
  if (affine) {
    std::vector<AffinePolynomial> g;
    for (const auto& l : lines) g.push_back(parse_affine(l, n));
    return {lift_affine(g), g};
  }
  std::vector<HomogeneousPolynomial> polys;
  for (const auto& l : lines) polys.push_back(parse_polynomial(l, n + 1));
  return {PolynomialSystem(std::move(polys)), std::nullopt};
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    std::string item = trim(text.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size())
      throw ParseError("bad number '" + item + "' in list '" + text + "'", start);
    out.push_back(v);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

namespace {

struct Settings {
  std::string input;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string output = "json";
  int max_t = 12;
  bool normalize = false;
  bool affine = false;
  bool stats = false;
  std::string point;
  std::optional<int> kappa_mesh_t;
  std::string which = "both";
  int n = 1;
  int t = 2;
  int probes = 0;
  bool list_points = false;
  std::string degrees = "2,2,2";
  int trials = 100;
  int mesh_t = 4;
  std::optional<double> sigma;
};

std::string read_input(const std::string& path) {
  if (path.empty()) throw ParseError("no --input given");
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

LoadedSystem load(const Settings& s) {
  LoadedSystem sys = load_system(read_input(s.input), s.affine);
  if (s.normalize) sys.system = sys.system.normalized();
  return sys;
}

SpherePoint load_point(const Settings& s, int dim) {
  auto v = parse_number_list(s.point);
  if (static_cast<int>(v.size()) != dim)
    throw DimensionError("--point has " + std::to_string(v.size()) + " coordinates, expected " + std::to_string(dim));
  return SpherePoint::normalize(Eigen::Map<const Vector>(v.data(), dim));
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

std::string csv_join(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += cells[i];
  }
  return line + '\n';
}

void require_json(const Settings& s, const char* what) {
  if (s.output != "json") throw ParseError(std::string(what) + " only writes json");
}

int cmd_count(const Settings& s, std::ostream& out) {
  require_json(s, "count");
  LoadedSystem sys = load(s);
  CountOptions opts;
  opts.max_t = s.max_t;
  opts.threads = s.threads;
  if (s.kappa_mesh_t) {
    SphereMesh mesh = build_mesh(sys.system.n(), *s.kappa_mesh_t);
    double k = kappa_grid(sys.system, mesh, s.threads).kappa_upper;
    if (std::isfinite(k)) opts.kappa_estimate = k;
  }
  CountResult r = root_count(sys.system, opts);
  Json j = io::to_json(r, s.stats);
  if (sys.affine) j["affine"] = {{"sphere_count", r.count}, {"affine_count", r.count / 2 - 1}};
  emit(out, j);
  return r.stopped ? kOk : kBudgetExhausted;
}

int cmd_certify(const Settings& s, std::ostream& out) {
  require_json(s, "certify");
  LoadedSystem sys = load(s);
  SpherePoint x = load_point(s, sys.system.n_vars());
  Json j = io::to_json(inclusion_test(sys.system, x));
  j["exclusion_radius"] = io::number(exclusion_radius(sys.system, x));
  emit(out, j);
  return kOk;
}

int cmd_mu(const Settings& s, std::ostream& out) {
  require_json(s, "mu");
  LoadedSystem sys = load(s);
  SpherePoint x = load_point(s, sys.system.n_vars());
  ConditionData c = condition_data(sys.system, x);
  emit(out, Json{{"point", io::to_json(x)},
                 {"mu", io::number(c.mu)},
                 {"kappa", io::number(c.kappa_point)},
                 {"f_norm_at_x", io::number(c.f_norm_at_x)}});
  return kOk;
}

int cmd_kappa(const Settings& s, std::ostream& out) {
  require_json(s, "kappa");
  LoadedSystem sys = load(s);
  SphereMesh mesh = build_mesh(sys.system.n(), s.mesh_t);
  KappaGridEstimate k = kappa_grid(sys.system, mesh, s.threads);
  emit(out, Json{{"mesh_t", s.mesh_t},
                 {"mesh_points", mesh.count()},
                 {"kappa_lower", io::number(k.kappa_lower)},
                 {"kappa_upper", io::number(k.kappa_upper)},
                 {"covering_radius", k.covering_radius},
                 {"argmax", io::to_json(mesh.point(k.argmax))}});
  return kOk;
}

int cmd_mesh(const Settings& s, std::ostream& out) {
  SphereMesh mesh = build_mesh(s.n, s.t);
  double worst = 0.0;
  if (s.probes > 0) {
    std::mt19937_64 rng(s.seed);
    std::normal_distribution<double> normal;
    Vector z(mesh.dim());
    for (int p = 0; p < s.probes; ++p) {
      for (int i = 0; i < mesh.dim(); ++i) z[i] = normal(rng);
      worst = std::max(worst, covering_check(mesh, SpherePoint::normalize(z)).distance);
    }
  }
  if (s.output == "csv") {
    std::vector<std::string> header;
    for (int i = 0; i < mesh.dim(); ++i) header.push_back("x" + std::to_string(i));
    out << csv_join(header);
    for (std::size_t k = 0; k < mesh.count(); ++k) {
      std::vector<std::string> row;
      for (int i = 0; i < mesh.dim(); ++i) row.push_back(format_double(mesh.data(k)[i]));
      out << csv_join(row);
    }
    return kOk;
  }
  Json j{{"n", s.n},
         {"t", s.t},
         {"eta", mesh.eta()},
         {"count", mesh.count()},
         {"count_bound", mesh_count_bound(s.n, s.t)},
         {"covering_radius", mesh.covering_radius()}};
  if (s.probes > 0) {
    j["probes"] = s.probes;
    j["max_probe_distance"] = worst;
  }
  emit(out, j);
  return kOk;
}

void table_csv(std::ostream& out, const theory::ConvergenceTable& t) {
  std::vector<std::string> header{"i"};
  header.insert(header.end(), t.column_labels.begin(), t.column_labels.end());
  out << csv_join(header);
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    std::vector<std::string> row{std::to_string(i + 1)};
    // Cells are truncated to three decimals, not rounded; the slack absorbs
    // values like 0.99999999 that are mathematically exact.
    for (double v : t.rows[i]) row.push_back(format_fixed(std::floor(v * 1000.0 + 1e-6) / 1000.0, 3));
    out << csv_join(row);
  }
}

Json table_json(const theory::ConvergenceTable& t) {
  return Json{{"columns", t.column_labels}, {"column_values", t.column_values}, {"rows", t.rows}};
}

int cmd_tables(const Settings& s, std::ostream& out) {
  bool gamma = s.which == "gamma" || s.which == "both";
  bool alpha = s.which == "alpha" || s.which == "both";
  if (s.output == "json") {
    Json j = Json::object();
    if (gamma) j["gamma"] = table_json(theory::gamma_convergence_table());
    if (alpha) j["alpha"] = table_json(theory::alpha_convergence_table());
    emit(out, j);
    return kOk;
  }
  if (gamma) table_csv(out, theory::gamma_convergence_table());
  if (gamma && alpha) out << '\n';
  if (alpha) table_csv(out, theory::alpha_convergence_table());
  return kOk;
}

std::vector<int> parse_degrees(const std::string& text) {
  std::vector<int> d;
  for (double v : parse_number_list(text)) {
    if (v != std::floor(v) || v < 1 || v > 64) throw ParseError("bad degree list '" + text + "'");
    d.push_back(static_cast<int>(v));
  }
  return d;
}

int cmd_mc_kappa(const Settings& s, std::ostream& out) {
  std::vector<int> degrees = parse_degrees(s.degrees);
  int n = static_cast<int>(degrees.size());
  MonteCarloKappa mc = monte_carlo_ln_kappa(n, degrees, s.trials, s.mesh_t, s.seed, s.threads);
  std::optional<double> smoothed;
  if (s.sigma) smoothed = smoothed_ln_kappa_bound(n, degrees, *s.sigma);
  if (s.output == "json") {
    Json lk = Json::array();
    for (double v : mc.ln_kappa) lk.push_back(io::number(v));
    Json j{{"n", n},
           {"degrees", degrees},
           {"trials", s.trials},
           {"mesh_t", s.mesh_t},
           {"seed", s.seed},
           {"ln_kappa", lk},
           {"mean_ln_kappa", io::number(mc.mean_ln_kappa)},
           {"bound", mc.bound},
           {"k_n", mc.k_n}};
    if (smoothed) j["smoothed_bound"] = *smoothed;
    emit(out, j);
    return kOk;
  }
  out << "trial,ln_kappa\n";
  for (std::size_t k = 0; k < mc.ln_kappa.size(); ++k)
    out << csv_join({std::to_string(k), format_double(mc.ln_kappa[k])});
  out << csv_join({"mean", format_double(mc.mean_ln_kappa)});
  out << csv_join({"bound", format_double(mc.bound)});
  if (smoothed) out << csv_join({"smoothed_bound", format_double(*smoothed)});
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Settings s;
  CLI::App app{"Certified zero counting for real homogeneous polynomial systems on the sphere", "realroots"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--input", s.input, "System file (JSON or one expression per line), '-' for stdin");
  app.add_option("--seed", s.seed, "Random seed");
  app.add_option("--threads", s.threads, "Worker threads")->check(CLI::Range(1, 1024));
  app.add_option("--output", s.output, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--normalize", s.normalize, "Rescale the system to unit Weyl norm");
  app.add_flag("--affine", s.affine, "Read affine equations and count on their lift");

  auto* count = app.add_subcommand("count", "Count zeros on the sphere");
  count->add_option("--max-t", s.max_t, "Finest mesh level, eta = 2^-t")->check(CLI::Range(0, 28));
  count->add_flag("--stats", s.stats, "Include per-iteration history");
  count->add_option("--kappa-mesh-t", s.kappa_mesh_t, "Estimate kappa on this mesh to predict the stopping eta");

  auto* certify = app.add_subcommand("certify", "Inclusion and exclusion data at a point");
  certify->add_option("point,--point", s.point, "Comma-separated coordinates")->required();
  auto* mu = app.add_subcommand("mu", "Condition numbers at a point");
  mu->add_option("point,--point", s.point, "Comma-separated coordinates")->required();

  auto* kappa = app.add_subcommand("kappa", "Grid estimate of the condition number");
  kappa->add_option("--mesh-t", s.mesh_t, "Mesh level")->check(CLI::Range(0, 28));

  auto* mesh = app.add_subcommand("mesh", "Mesh statistics");
  mesh->add_option("--n", s.n, "Sphere dimension")->check(CLI::Range(1, 64));
  mesh->add_option("--t", s.t, "Mesh level")->check(CLI::Range(0, 28));
  mesh->add_option("--probes", s.probes, "Random covering probes")->check(CLI::NonNegativeNumber);

  auto* tables = app.add_subcommand("tables", "Convergence tables");
  tables->add_option("--which", s.which, "gamma, alpha or both")->check(CLI::IsMember({"gamma", "alpha", "both"}));

  auto* mc = app.add_subcommand("mc-kappa", "Monte Carlo estimate of E ln kappa for Gaussian systems");
  mc->add_option("--degrees", s.degrees, "Comma-separated degrees, one per equation");
  mc->add_option("--trials", s.trials, "Number of samples")->check(CLI::PositiveNumber);
  mc->add_option("--mesh-t", s.mesh_t, "Mesh level")->check(CLI::Range(0, 28));
  mc->add_option("--sigma", s.sigma, "Also report the smoothed-analysis bound for this sigma")
      ->check(CLI::PositiveNumber);

  // Tables and mc-kappa default to CSV unless --output is given.
  bool output_given = false;
  try {
    app.parse(argc, argv);
    output_given = app.count("--output") > 0;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kBadInput;
  }
  if (!output_given && (tables->parsed() || mc->parsed())) s.output = "csv";

  try {
    if (count->parsed()) return cmd_count(s, out);
    if (certify->parsed()) return cmd_certify(s, out);
    if (mu->parsed()) return cmd_mu(s, out);
    if (kappa->parsed()) return cmd_kappa(s, out);
    if (mesh->parsed()) return cmd_mesh(s, out);
    if (tables->parsed()) return cmd_tables(s, out);
    if (mc->parsed()) return cmd_mc_kappa(s, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const ResourceLimitError& e) {
    err << "error: " << e.what() << '\n';
    return kBudgetExhausted;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kBadInput;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace realroots::cli
