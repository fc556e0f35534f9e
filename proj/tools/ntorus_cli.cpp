#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include "ntorus/designs.hpp"
#include "ntorus/error.hpp"
#include "ntorus/explore.hpp"
#include "ntorus/parallel.hpp"
#include "ntorus/selftest.hpp"
#include "ntorus/spec_io.hpp"
#include "ntorus/survey.hpp"
#include "ntorus/verify.hpp"

#ifndef NTORUS_VERSION
#define NTORUS_VERSION "0.0.0"
#endif

using namespace ntorus;
using nlohmann::json;

namespace {

constexpr double kRankFloor = 1e-8;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  std::ostringstream out;
  for (unsigned int i = 0; i < length; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return out.str();
}

TorusGrid make_grid(const std::vector<int>& sizes, int n) {
  if (sizes.empty()) return TorusGrid::default_for(n);
  if (sizes.size() == 1) return TorusGrid(std::vector<int>(static_cast<std::size_t>(n), sizes[0]));
  if (static_cast<int>(sizes.size()) != n)
    throw UsageError("--grid needs 1 or " + std::to_string(n) + " sizes, got " + std::to_string(sizes.size()));
  for (int s : sizes)
    if (s < 1) throw UsageError("--grid sizes must be positive");
  return TorusGrid(sizes);
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

std::string number(double v) {
  if (std::isnan(v)) return "nan";
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

struct Loaded {
  ImmersionSpec spec;
  std::string sha256;
};

Loaded load_spec(const std::string& path) {
  const std::string text = read_text_file(path);
  return {parse_immersion_spec(text), sha256_hex(text)};
}

json run_config(const std::string& command, const Loaded& in, const std::string& path, const TorusGrid& grid,
                std::uint64_t seed) {
  return {{"command", command},
          {"spec", path},
          {"spec_sha256", in.sha256},
          {"grid", grid.sizes()},
          {"seed", seed},
          {"version", NTORUS_VERSION}};
}

void require_rank(const FourierImmersion& imm, const TorusGrid& grid) {
  const double rank = immersion_rank_check(imm, grid);
  if (!(rank >= kRankFloor))
    throw Error(ErrorKind::DegenerateImmersion, "smallest singular value of df on the grid is " + number(rank));
}

// analyze

struct AnalyzeArgs {
  std::string spec;
  std::vector<int> grid;
  std::string format = "json";
};

int analyze(const AnalyzeArgs& a, std::uint64_t seed, const std::string& out) {
  const Loaded in = load_spec(a.spec);
  const FourierImmersion& imm = in.spec.immersion;
  const TorusGrid grid = make_grid(a.grid, imm.n());
  require_rank(imm, grid);

  const Survey survey(imm, grid);
  const std::vector<ExtremalCurvature> ext = survey_extremes(imm, grid, seed);
  const auto& pts = survey.points();

  double max_residual = 0.0, max_zh = -1.0, min_zh = std::numeric_limits<double>::infinity();
  double K_min = std::numeric_limits<double>::infinity(), K_max = 0.0, K_spread = 0.0, max_norm = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    max_residual = std::max(max_residual, std::abs(pts[i].sc - pts[i].sc_ext));
    max_zh = std::max(max_zh, pts[i].zh);
    min_zh = std::min(min_zh, pts[i].zh);
    max_norm = std::max(max_norm, pts[i].r);
    K_min = std::min(K_min, ext[i].K_min);
    K_max = std::max(K_max, ext[i].K_max);
    K_spread = std::max(K_spread, ext[i].K_max - ext[i].K_min);
  }
  json summary = {{"avg_zh", survey.average([](const SurveyPoint& p) { return p.zh; })},
                  {"avg_H", survey.average([](const SurveyPoint& p) { return p.H_norm; })},
                  {"avg_H_dot_x", survey.average([](const SurveyPoint& p) { return p.H_dot_x; })},
                  {"avg_sc", survey.average([](const SurveyPoint& p) { return p.sc; })},
                  {"min_zh", min_zh},
                  {"max_zh", max_zh},
                  {"K_min", K_min},
                  {"K_max", K_max},
                  {"K_spread", K_spread},
                  {"max_norm", max_norm},
                  {"max_gauss_residual", max_residual},
                  {"rank", immersion_rank_check(imm, grid)}};
  const json config = run_config("analyze", in, a.spec, grid, seed);

  if (a.format == "csv") {
    std::ostringstream csv;
    for (int i = 0; i < imm.n(); ++i) csv << "theta_" << (i + 1) << ',';
    csv << "norm_f,H_norm,zh,sc,K_min,K_max,beta\n";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const Eigen::VectorXd th = grid.point(i);
      for (Eigen::Index k = 0; k < th.size(); ++k) csv << number(th[k]) << ',';
      csv << number(pts[i].r) << ',' << number(pts[i].H_norm) << ',' << number(pts[i].zh) << ','
          << number(pts[i].sc) << ',' << number(ext[i].K_min) << ',' << number(ext[i].K_max) << ','
          << number(pts[i].beta) << '\n';
    }
    write_output(out, csv.str());
    const std::string text = dump({{"config", config}, {"summary", summary}});
    if (out.empty() || out == "-")
      std::cerr << text;
    else
      std::cout << text;
    return 0;
  }

  json points = json::array();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Eigen::VectorXd th = grid.point(i);
    points.push_back({{"theta", std::vector<double>(th.data(), th.data() + th.size())},
                      {"norm_f", pts[i].r},
                      {"H_norm", pts[i].H_norm},
                      {"zh", pts[i].zh},
                      {"sc", pts[i].sc},
                      {"K_min", ext[i].K_min},
                      {"K_max", ext[i].K_max},
                      {"beta", pts[i].beta}});
  }
  write_output(out, dump({{"config", config}, {"summary", summary}, {"points", points}}));
  return 0;
}

// verify

struct VerifyArgs {
  std::string spec;
  std::vector<int> grid;
  std::string checks = "all";
};

std::vector<std::string> split_checks(const std::string& list) {
  if (list == "all") return {};
  std::vector<std::string> names;
  std::stringstream ss(list);
  std::string name;
  while (std::getline(ss, name, ','))
    if (!name.empty()) names.push_back(name);
  for (const auto& n : names)
    if (std::find(check_names().begin(), check_names().end(), n) == check_names().end())
      throw UsageError("unknown check '" + n + "'");
  return names;
}

int verify(const VerifyArgs& a, std::uint64_t seed, const std::string& path) {
  const Loaded in = load_spec(a.spec);
  const FourierImmersion& imm = in.spec.immersion;
  const TorusGrid grid = make_grid(a.grid, imm.n());
  VerifyOptions options;
  options.checks = split_checks(a.checks);
  options.seed = seed;
  if (in.spec.design) {
    const DesignReport d = validate_design(*in.spec.design);
    const double placement = imm.scale() / subtorus_immersion(*in.spec.design).scale();
    if (d.is_constant_curvature) options.certified_K = d.K / placement;
  }
  const std::vector<CheckReport> reports = run_checks(imm, grid, options);
  json config = run_config("verify", in, a.spec, grid, seed);
  config["checks"] = a.checks;
  json doc = json::array();
  for (const CheckReport& r : reports) {
    json j = to_json(r);
    j["config"] = config;
    doc.push_back(std::move(j));
  }
  write_output(path, dump(doc));
  return verify_exit_code(reports);
}

// design

FrameMatrix resolve_design(const std::string& source) {
  const auto names = builtin_design_names();
  if (std::find(names.begin(), names.end(), source) != names.end()) return builtin_design(source);
  return load_frame_matrix(source);
}

int design_validate(const std::string& source, const std::string& out) {
  const FrameMatrix B = resolve_design(source);
  write_output(out, dump(to_json(validate_design(B))));
  return 0;
}

int design_emit(const std::string& source, const std::string& out) {
  const FrameMatrix B = resolve_design(source);
  validate_design(B);
  write_output(out, dump(subtorus_spec_json(B)));
  return 0;
}

// explore

int explore(SearchConfig config, const std::string& out) {
  const SearchResult r = optimize(config);
  const json echo = {{"n", config.n},
                     {"q", config.q},
                     {"fmax", config.fmax},
                     {"grid", search_grid(config).sizes()},
                     {"seed", config.seed},
                     {"iterations", config.iterations},
                     {"restarts", config.restarts},
                     {"penalty_weight", config.penalty_weight},
                     {"smoothing", config.smoothing},
                     {"initial_step", config.initial_step},
                     {"perturbation", config.perturbation},
                     {"gradient_refinement", config.gradient_refinement},
                     {"version", NTORUS_VERSION}};
  write_output(out, dump({{"config", echo},
                          {"best", immersion_to_json(r.best)},
                          {"objective", r.objective},
                          {"sup_zh", r.sup_zh},
                          {"max_norm", r.max_norm},
                          {"rank", r.rank},
                          {"best_restart", r.best_restart},
                          {"objective_history", r.objective_history},
                          {"counterexample_candidate", r.counterexample_candidate}}));
  return r.counterexample_candidate ? 3 : 0;
}

// selftest

int selftest(const SelftestOptions& options, const std::string& out) {
  const SelftestReport r = run_selftest(options);
  json items = json::array();
  for (const auto& i : r.items)
    items.push_back({{"name", i.name}, {"value", i.value}, {"tolerance", i.tolerance}, {"pass", i.pass}});
  write_output(out, dump({{"seed", options.seed},
                          {"samples", options.samples},
                          {"tolerance_scale", options.tolerance_scale},
                          {"version", NTORUS_VERSION},
                          {"pass", r.pass()},
                          {"items", items}}));
  return r.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curvature invariants of immersed tori in Euclidean balls"};
  app.set_version_flag("--version", NTORUS_VERSION);
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  int threads = 0;
  std::string out;
  app.add_option("--seed", seed, "Seed for every random choice")->capture_default_str();
  app.add_option("--threads", threads, "Worker thread bound (0: hardware)")->check(CLI::NonNegativeNumber);
  app.add_option("--out", out, "Output path (default stdout)");

  AnalyzeArgs an;
  auto* cmd_analyze = app.add_subcommand("analyze", "Per-point invariants and a summary");
  cmd_analyze->add_option("spec", an.spec, "Immersion spec")->required();
  cmd_analyze->add_option("--grid", an.grid, "Grid sizes N1,...,Nn")->delimiter(',');
  cmd_analyze->add_option("--format", an.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  cmd_analyze->add_option("--seed", seed);
  cmd_analyze->add_option("--out", out);

  VerifyArgs ve;
  auto* cmd_verify = app.add_subcommand("verify", "Run the inequality checks");
  cmd_verify->add_option("spec", ve.spec, "Immersion spec")->required();
  cmd_verify->add_option("--grid", ve.grid, "Grid sizes N1,...,Nn")->delimiter(',');
  cmd_verify->add_option("--checks", ve.checks, "Comma-separated check names or all");
  std::string verify_format = "json";
  cmd_verify->add_option("--format", verify_format)->check(CLI::IsMember({"json"}));
  cmd_verify->add_option("--seed", seed);
  cmd_verify->add_option("--out", out);

  std::string design_source;
  auto* cmd_design = app.add_subcommand("design", "Frame matrices of subtori");
  cmd_design->require_subcommand(1);
  auto* cmd_validate = cmd_design->add_subcommand("validate", "Exact certificate of a frame matrix");
  cmd_validate->add_option("matrix", design_source, "Matrix file or builtin name")->required();
  cmd_validate->add_option("--out", out);
  auto* cmd_emit = cmd_design->add_subcommand("emit", "Write the subtorus immersion spec");
  cmd_emit->add_option("matrix", design_source, "Matrix file or builtin name")->required();
  cmd_emit->add_option("--out", out);

  SearchConfig sc;
  auto* cmd_explore = app.add_subcommand("explore", "Minimize sup of zh inside the unit ball");
  cmd_explore->add_option("--n", sc.n)->capture_default_str();
  cmd_explore->add_option("--q", sc.q)->capture_default_str();
  cmd_explore->add_option("--fmax", sc.fmax)->capture_default_str();
  cmd_explore->add_option("--grid", sc.grid, "Search grid sizes N1,...,Nn")->delimiter(',');
  cmd_explore->add_option("--iterations", sc.iterations)->capture_default_str();
  cmd_explore->add_option("--restarts", sc.restarts)->capture_default_str();
  cmd_explore->add_option("--penalty-weight", sc.penalty_weight)->capture_default_str();
  cmd_explore->add_option("--smoothing", sc.smoothing)->capture_default_str();
  cmd_explore->add_option("--initial-step", sc.initial_step)->capture_default_str();
  cmd_explore->add_option("--perturbation", sc.perturbation)->capture_default_str();
  cmd_explore->add_flag("--gradient-refinement", sc.gradient_refinement);
  cmd_explore->add_option("--seed", seed);
  cmd_explore->add_option("--out", out);

  SelftestOptions st;
  auto* cmd_selftest = app.add_subcommand("selftest", "Built-in health suite");
  cmd_selftest->add_option("--samples", st.samples)->capture_default_str();
  cmd_selftest->add_option("--tolerance-scale", st.tolerance_scale)->group("");
  cmd_selftest->add_option("--seed", seed);
  cmd_selftest->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (threads > 0) set_worker_threads(threads);
    if (*cmd_analyze) return analyze(an, seed, out);
    if (*cmd_verify) return verify(ve, seed, out);
    if (*cmd_validate) return design_validate(design_source, out);
    if (*cmd_emit) return design_emit(design_source, out);
    if (*cmd_explore) {
      sc.seed = seed;
      if (sc.grid.size() == 1) sc.grid.assign(static_cast<std::size_t>(sc.n), sc.grid[0]);
      return explore(sc, out);
    }
    if (*cmd_selftest) {
      st.seed = seed;
      return selftest(st, out);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
