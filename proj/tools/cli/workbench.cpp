#include "workbench.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "dias/conformal.hpp"
#include "dias/constants.hpp"
#include "dias/cover.hpp"
#include "dias/errors.hpp"
#include "dias/lattice.hpp"
#include "dias/sweep.hpp"
#include "dias/verify.hpp"

namespace dias::cli {

namespace {

using Json = nlohmann::ordered_json;

const std::vector<std::string> kSubcommands = {"baseline", "perturb", "scan",
                                               "loewner",  "stokes",  "cone-angle"};

std::string num(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

Json pairs_json(const std::vector<std::pair<std::string, double>>& kv) {
  Json out = Json::object();
  for (const auto& [k, v] : kv) out[k] = v;
  return out;
}

Json report_json(const InequalityReport& r, const std::string& digest) {
  Json j;
  j["name"] = r.name;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["margin"] = r.margin;
  j["tolerance"] = r.tolerance;
  j["verdict"] = std::string(to_string(r.verdict));
  j["equality"] = r.equality;
  j["values"] = pairs_json(r.values);
  j["settings"] = pairs_json(r.settings);
  if (!r.note.empty()) j["note"] = r.note;
  if (!digest.empty()) j["field_digest"] = digest;
  return j;
}

// |measured - expected| <= tol, reported as lhs = deviation, rhs = 0.
InequalityReport closeness(std::string name, double measured, double expected, double tol) {
  InequalityReport r = make_report(std::move(name), std::abs(measured - expected), 0.0, tol);
  r.values = {{"measured", measured}, {"expected", expected}};
  return r;
}

VerifySettings verify_settings(const RunConfig& c) {
  VerifySettings s;
  s.resolution = c.resolution;
  s.s_points = c.s_count;
  s.alpha_points = c.alpha_count;
  s.safety = c.safety;
  s.tol = c.tol;
  s.quad.nodes = c.quad_nodes;
  return s;
}

ConformalFactorField resolve_field(const RunConfig& c, double default_amplitude) {
  if (!c.field_path.empty() && !c.field_spec.empty()) {
    throw InvalidInput("--field and --field-spec are exclusive");
  }
  if (!c.field_path.empty()) return load_field(c.field_path);
  if (!c.field_spec.empty()) {
    std::string text = c.field_spec;
    std::replace(text.begin(), text.end(), ';', '\n');
    return parse_field(text);
  }
  const double amp = c.amplitude.value_or(default_amplitude);
  if (amp == 0.0) return symmetrize(ConformalFactorField::constant(0.0));
  return random_field(c.seed, amp);
}

Json config_json(const RunConfig& c) {
  // The output directory is left out so that reruns elsewhere compare equal.
  Json j;
  j["subcommand"] = c.subcommand;
  j["field"] = c.field_path;
  j["field_spec"] = c.field_spec;
  j["amplitude"] = c.amplitude ? Json(*c.amplitude) : Json(nullptr);
  j["resolution"] = c.resolution;
  j["s_grid"] = c.s_count;
  j["alpha_grid"] = c.alpha_count;
  j["quad_nodes"] = c.quad_nodes;
  j["seed"] = c.seed;
  j["safety"] = c.safety;
  j["tol"] = c.tol;
  j["epsilons"] = c.epsilons;
  j["lattices"] = c.lattice_count;
  j["radius"] = c.radius;
  return j;
}

class Suite {
 public:
  explicit Suite(const RunConfig& c) {
    result_.report["schema"] = kReportSchema;
    result_.report["config"] = config_json(c);
  }

  void set_field(const ConformalFactorField& u) {
    digest_ = field_digest(u);
    result_.report["field"] = {{"digest", digest_}, {"text", format_field(u)}};
  }

  void add(const InequalityReport& r) {
    reports_.push_back(report_json(r, digest_));
    switch (r.verdict) {
      case Verdict::kHolds: ++holds_; break;
      case Verdict::kFails: ++fails_; break;
      case Verdict::kOutsideRegime: ++outside_; break;
    }
  }

  void table(std::string file, std::string content) {
    result_.tables.push_back({std::move(file), std::move(content)});
  }

  Json& extra() { return result_.report; }

  RunResult finish() {
    result_.exit_code = fails_ > 0 ? kViolation : (outside_ > 0 ? kOutsideRegime : kOk);
    result_.report["reports"] = reports_;
    result_.report["summary"] = {{"holds", holds_},
                                 {"fails", fails_},
                                 {"outside_regime", outside_},
                                 {"exit_code", result_.exit_code}};
    return std::move(result_);
  }

 private:
  RunResult result_;
  Json reports_ = Json::array();
  std::string digest_;
  int holds_ = 0, fails_ = 0, outside_ = 0;
};

std::string sweep_table(const ConformalFactorField& u, const RunConfig& c) {
  QuadratureParams quad;
  quad.nodes = c.quad_nodes;
  std::ostringstream out;
  out << "s,alpha,case,k,a_low,a_high,length_gc,length_g\n";
  for (double s : default_s_grid(c.s_count)) {
    for (double alpha : default_alpha_grid(c.alpha_count)) {
      const SweepCycle z = sweep_cycle(s, alpha);
      out << num(s) << ',' << num(alpha) << ','
          << (z.sweep_case == SweepCase::kFirst ? "first" : "second") << ',' << z.k << ','
          << num(z.a_low) << ',' << num(z.a_high) << ',' << num(flat_length(z.cycle)) << ','
          << num(metric_length(z.cycle, u, quad)) << '\n';
    }
  }
  return out.str();
}

InequalityReport certificate_report(const NeighborhoodCertificate& cert) {
  InequalityReport r = make_report("neighborhood_certificate", 1.0 - cert.margin, 1.0, 0.0);
  r.verdict = cert.valid ? Verdict::kHolds : Verdict::kOutsideRegime;
  r.values = {{"sup_deviation", cert.sup_dev},
              {"sup_slope", cert.sup_slope},
              {"certificate_margin", cert.margin}};
  r.settings = {{"resolution", static_cast<double>(cert.resolution)}, {"safety", cert.safety}};
  return r;
}

InequalityReport chain_report(const TheoremResult& t, double tol) {
  InequalityReport r = make_report("sweep_chain", t.bound.max_excess, 0.0, tol);
  r.values = {{"diastole_upper_bound", t.bound.upper},
              {"min_gamma", t.bound.min_gamma},
              {"max_excess", t.bound.max_excess}};
  if (!t.certificate.valid) {
    r.verdict = Verdict::kOutsideRegime;
  } else if (!t.bound.chain_holds) {
    r.verdict = Verdict::kFails;
  }
  return r;
}

RunResult run_baseline(const RunConfig& c) {
  Suite suite(c);
  const ConformalFactorField u = resolve_field(c, 0.0);
  suite.set_field(u);
  const VerifySettings vs = verify_settings(c);
  const double exact = 1e-9;

  const double area = sphere_area(u, c.resolution);
  suite.add(closeness("baseline_area", area, kCalabiArea, exact));

  double worst_gamma = 0.0;
  for (double s : default_s_grid(c.s_count)) {
    worst_gamma = std::max(worst_gamma, std::abs(metric_length(gamma(s), u, vs.quad) - 1.0));
  }
  suite.add(closeness("baseline_gamma_lengths", 1.0 + worst_gamma, 1.0, exact));

  double worst_law = 0.0;
  for (double s : default_s_grid(c.s_count)) {
    for (double alpha : default_alpha_grid(c.alpha_count)) {
      const double law = 1.0 - 2.0 * std::abs(alpha - 0.5);
      worst_law = std::max(worst_law, std::abs(flat_length(sweep_cycle(s, alpha).cycle) - law));
    }
  }
  suite.add(closeness("length_law", worst_law, 0.0, exact));

  const TheoremResult t = theorem_check(u, vs);
  suite.add(closeness("baseline_diastole_bound", t.bound.upper, 1.0, exact));
  suite.add(closeness("baseline_diastolic_ratio", t.report.value("diastolic_area_ratio"),
                      1.0 / (2.0 * kSqrt3), exact));
  suite.add(t.report);
  InequalityReport eq = make_report("baseline_equality_flag", t.report.equality ? 0.0 : 1.0, 0.0, 0.0);
  eq.equality = t.report.equality;
  suite.add(eq);
  suite.table("sweep_table.csv", sweep_table(u, c));
  return suite.finish();
}

RunResult run_perturb(const RunConfig& c) {
  Suite suite(c);
  const ConformalFactorField u = resolve_field(c, 0.05);
  suite.set_field(u);
  const VerifySettings vs = verify_settings(c);
  const TheoremResult t = theorem_check(u, vs);
  suite.add(certificate_report(t.certificate));
  const AveragedChecks a = averaged_inequality_check(u, vs);
  suite.add(a.identity);
  suite.add(a.cauchy_schwarz);
  suite.add(a.corollary);
  suite.add(chain_report(t, c.tol));
  suite.add(t.report);
  suite.table("sweep_table.csv", sweep_table(u, c));
  return suite.finish();
}

RunResult run_scan(const RunConfig& c) {
  Suite suite(c);
  const ConformalFactorField base = resolve_field(c, 1.0);
  suite.set_field(base);
  const VerifySettings vs = verify_settings(c);
  std::ostringstream csv;
  csv << "epsilon,area,U,margin,certificate_margin,verdict,equality\n";
  std::vector<std::pair<double, double>> certified;
  for (double eps : c.epsilons) {
    const TheoremResult t = theorem_check(base.scaled(eps), vs);
    InequalityReport r = t.report;
    r.settings.insert(r.settings.begin(), {"epsilon", eps});
    suite.add(r);
    csv << num(eps) << ',' << num(t.area) << ',' << num(t.bound.upper) << ','
        << num(t.report.margin) << ',' << num(t.certificate.margin) << ','
        << to_string(t.report.verdict) << ',' << (t.report.equality ? 1 : 0) << '\n';
    if (t.certificate.valid) certified.push_back({eps, t.report.margin});
  }
  // Least squares margin ~ q * |eps|^p over the certified rows, p = 2 and
  // p = 1. Reported, not asserted: the min over s picks up a first order
  // term, so generic fields follow the linear law.
  auto fit = [&](double power) {
    double num_fit = 0.0, den_fit = 0.0;
    for (const auto& [eps, m] : certified) {
      const double b = std::pow(std::abs(eps), power);
      num_fit += m * b;
      den_fit += b * b;
    }
    const double q = den_fit > 0.0 ? num_fit / den_fit : 0.0;
    double rss = 0.0;
    for (const auto& [eps, m] : certified) {
      const double r = m - q * std::pow(std::abs(eps), power);
      rss += r * r;
    }
    return Json{{"coefficient", q},
                {"rms_residual", certified.empty() ? 0.0 : std::sqrt(rss / certified.size())},
                {"rows", certified.size()}};
  };
  suite.extra()["quadratic_fit"] = fit(2.0);
  suite.extra()["abs_linear_fit"] = fit(1.0);
  suite.table("scan.csv", csv.str());
  return suite.finish();
}

RunResult run_loewner(const RunConfig& c) {
  if (c.lattice_count < 1) throw InvalidInput("--lattices must be positive");
  Suite suite(c);
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  double min_ratio = std::numeric_limits<double>::infinity();
  double worst_search = 0.0;
  int equality_cases = 0;
  for (int i = 0; i < c.lattice_count;) {
    const LatticeBasis b{{coord(rng), coord(rng)}, {coord(rng), coord(rng)}};
    if (std::abs(b.det()) < 1e-2) continue;
    ++i;
    const InequalityReport r = loewner_check(b);
    min_ratio = std::min(min_ratio, r.rhs);
    equality_cases += r.equality ? 1 : 0;
    double best = std::numeric_limits<double>::infinity();
    for (int m = -25; m <= 25; ++m) {
      for (int n = -25; n <= 25; ++n) {
        if (m == 0 && n == 0) continue;
        best = std::min(best, norm(m * b.b1 + n * b.b2));
      }
    }
    worst_search = std::max(worst_search, std::abs(flat_torus_systole(b) - best));
  }
  InequalityReport all = make_report("loewner_random_lattices", kSqrt3 / 2.0, min_ratio, 1e-12);
  all.values = {{"min_ratio", min_ratio}, {"equality_cases", static_cast<double>(equality_cases)}};
  all.settings = {{"lattices", static_cast<double>(c.lattice_count)},
                  {"seed", static_cast<double>(c.seed)}};
  suite.add(all);
  const InequalityReport hex = loewner_check(kHex);
  suite.add(closeness("loewner_hexagonal_equality", hex.rhs, kSqrt3 / 2.0, 1e-12));
  InequalityReport search = closeness("lagrange_vs_search", worst_search, 0.0, 1e-9);
  search.settings = {{"search_box", 25.0}};
  suite.add(search);
  return suite.finish();
}

RunResult run_stokes(const RunConfig& c) {
  Suite suite(c);
  const ConformalFactorField u = resolve_field(c, 0.2);
  suite.set_field(u);
  const std::vector<std::pair<double, double>> pairs = {
      {0.13, 0.3}, {0.13, 0.8}, {0.4, 0.1}, {0.62, 0.7}, {0.8, 0.45}};
  std::ostringstream csv;
  csv << "s,alpha,component,nodes,panel_order,residual\n";
  double worst_fine = 0.0;
  double worst_ratio = std::numeric_limits<double>::infinity();
  for (const auto& [s, alpha] : pairs) {
    std::vector<double> prev;
    for (int nodes : {16, 32, 64}) {
      const auto terms = stokes_residual(u, s, alpha, {nodes, 2, nodes});
      for (std::size_t i = 0; i < terms.size(); ++i) {
        csv << num(s) << ',' << num(alpha) << ',' << i << ',' << nodes << ",2,"
            << num(terms[i].residual) << '\n';
        // ratios only while the coarse residual is clear of round-off
        if (!prev.empty() && prev[i] > 1e-11) {
          worst_ratio = std::min(worst_ratio, prev[i] / std::max(terms[i].residual, 1e-300));
        }
      }
      prev.clear();
      for (const auto& t : terms) prev.push_back(t.residual);
    }
    for (const auto& t : stokes_residual(u, s, alpha, {512, 8, 512})) {
      csv << num(s) << ',' << num(alpha) << ',' << t.component << ",512,8," << num(t.residual) << '\n';
      worst_fine = std::max(worst_fine, t.residual);
    }
  }
  InequalityReport fine = make_report("stokes_residual", worst_fine, 0.0, 1e-6);
  fine.settings = {{"nodes", 512}, {"panel_order", 8}};
  suite.add(fine);
  InequalityReport conv = make_report("stokes_convergence", 4.0, worst_ratio, 0.0);
  conv.settings = {{"panel_order", 2}};
  suite.add(conv);
  suite.table("stokes.csv", csv.str());
  return suite.finish();
}

RunResult run_cone_angle(const RunConfig& c) {
  Suite suite(c);
  const std::vector<std::pair<std::complex<double>, double>> centres = {
      {{-1.0, 0.0}, 2.0 * kPi / 3.0},
      {{0.0, 0.0}, 2.0 * kPi / 3.0},
      {{1.0, 0.0}, 2.0 * kPi / 3.0},
      {{0.5, 0.5}, 2.0 * kPi}};
  std::ostringstream csv;
  csv << "re,im,radius,estimate,expected\n";
  for (const auto& [z, expected] : centres) {
    const double est = cone_angle_estimate(z, c.radius);
    InequalityReport r = closeness("cone_angle", est, expected, 1e-3);
    r.settings = {{"re", z.real()}, {"im", z.imag()}, {"radius", c.radius}};
    suite.add(r);
    for (double rad : {1e-2, 1e-3, 1e-4}) {
      csv << num(z.real()) << ',' << num(z.imag()) << ',' << num(rad) << ','
          << num(cone_angle_estimate(z, rad)) << ',' << num(expected) << '\n';
    }
  }
  suite.table("cone_angle.csv", csv.str());
  return suite.finish();
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    double v = 0.0;
    const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
    if (res.ec != std::errc() || res.ptr != item.data() + item.size() || !std::isfinite(v)) {
      throw InvalidInput("bad number '" + item + "' in list");
    }
    out.push_back(v);
  }
  if (out.empty()) throw InvalidInput("empty list");
  return out;
}

}  // namespace

RunConfig parse_args(int argc, const char* const* argv, bool* help, std::string* usage) {
  RunConfig c;
  CLI::App app{"Diastolic inequality workbench for the Calabi sphere"};
  app.add_option("subcommand", c.subcommand, "baseline | perturb | scan | loewner | stokes | cone-angle")
      ->required()
      ->check(CLI::IsMember(kSubcommands));
  app.add_option("--field", c.field_path, "field file");
  app.add_option("--field-spec", c.field_spec, "inline field text, ';' between lines");
  double amplitude = 0.0;
  auto* amp = app.add_option("--amplitude", amplitude, "sup of the seeded random field");
  app.add_option("--resolution", c.resolution, "grid size for sup norms and areas")->check(CLI::Range(64, 4096));
  app.add_option("--s-grid", c.s_count, "number of s values")->check(CLI::Range(1, 4096));
  app.add_option("--alpha-grid", c.alpha_count, "number of alpha values")->check(CLI::Range(2, 4097));
  app.add_option("--quad-nodes", c.quad_nodes, "Gauss nodes per edge")->check(CLI::Range(8, 4096));
  app.add_option("--seed", c.seed, "random seed");
  app.add_option("--safety", c.safety, "inflation of grid sup estimates")->check(CLI::Range(1.0, 10.0));
  app.add_option("--tol", c.tol, "tolerance for the verification chain")->check(CLI::PositiveNumber);
  std::string eps;
  app.add_option("--epsilons", eps, "comma separated scan amplitudes");
  app.add_option("--lattices", c.lattice_count, "random lattices for loewner")->check(CLI::Range(1, 1000000));
  app.add_option("--radius", c.radius, "circle radius for cone-angle");
  app.add_option("--out", c.out_dir, "output directory");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    if (help) *help = true;
    if (usage) *usage = app.help();
    return c;
  } catch (const CLI::ParseError& e) {
    throw InvalidInput(e.what());
  }
  if (help) *help = false;
  if (*amp) {
    if (!std::isfinite(amplitude) || amplitude < 0.0) throw InvalidInput("--amplitude must be >= 0");
    c.amplitude = amplitude;
  }
  if (!eps.empty()) c.epsilons = parse_list(eps);
  return c;
}

RunResult run(const RunConfig& c) {
  if (c.subcommand == "baseline") return run_baseline(c);
  if (c.subcommand == "perturb") return run_perturb(c);
  if (c.subcommand == "scan") return run_scan(c);
  if (c.subcommand == "loewner") return run_loewner(c);
  if (c.subcommand == "stokes") return run_stokes(c);
  if (c.subcommand == "cone-angle") return run_cone_angle(c);
  throw InvalidInput("unknown subcommand '" + c.subcommand + "'");
}

void write_outputs(const RunConfig& c, const RunResult& result) {
  namespace fs = std::filesystem;
  const fs::path dir(c.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InvalidInput("cannot create output directory '" + c.out_dir + "'");
  auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw InvalidInput("cannot write '" + (dir / name).string() + "'");
    out << text;
  };
  write("report.json", result.report.dump(2) + "\n");
  const auto now = std::chrono::system_clock::now();
  Json meta;
  meta["schema"] = kReportSchema;
  meta["generated_at_unix_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count();
  meta["files"] = Json::array({"report.json"});
  for (const auto& t : result.tables) {
    write(t.file, t.content);
    meta["files"].push_back(t.file);
  }
  write("metadata.json", meta.dump(2) + "\n");
}

int main_entry(int argc, const char* const* argv) {
  try {
    bool help = false;
    std::string usage;
    const RunConfig config = parse_args(argc, argv, &help, &usage);
    if (help) {
      std::cout << usage;
      return kOk;
    }
    const RunResult result = run(config);
    write_outputs(config, result);
    const auto& s = result.report["summary"];
    std::cout << config.subcommand << ": " << s["holds"].get<int>() << " hold, "
              << s["fails"].get<int>() << " fail, " << s["outside_regime"].get<int>()
              << " outside regime -> " << (std::filesystem::path(config.out_dir) / "report.json").string()
              << "\n";
    return result.exit_code;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace dias::cli
