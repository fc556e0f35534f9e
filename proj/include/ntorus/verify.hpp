#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "ntorus/grid.hpp"
#include "ntorus/immersion.hpp"
#include "ntorus/survey.hpp"

namespace ntorus {

// Theorem checks decide the exit status; property checks are informative;
// the probe reports findings rather than failures.
enum class CheckKind { Theorem, Property, Probe };

enum class CheckStatus { Pass, Fail, Inapplicable, Unresolved, CounterexampleCandidate };

std::string_view to_string(CheckKind kind);
std::string_view to_string(CheckStatus status);

struct Witness {
  Eigen::VectorXd theta;
  std::map<std::string, double> values;
};

struct CheckReport {
  std::string name;
  CheckKind kind = CheckKind::Theorem;
  CheckStatus status = CheckStatus::Pass;
  bool pass = false;
  std::optional<double> margin;  // empty when the hypothesis fails
  double tolerance = 0.0;
  std::string reason;
  std::optional<Witness> witness;
  std::map<std::string, double> diagnostics;
};

// Lazily computed grid data shared by checks on one immersion: surveys of
// the base and the doubled grid, and extremal curvatures on the base grid.
class CheckContext {
 public:
  CheckContext(FourierImmersion imm, TorusGrid grid, std::uint64_t seed = 0);

  const FourierImmersion& immersion() const { return imm_; }
  const TorusGrid& grid() const { return grid_; }
  std::uint64_t seed() const { return seed_; }

  const Survey& base();
  const Survey& refined();
  const std::vector<ExtremalCurvature>& extremes();
  double K_max();  // grid plus multistart, cached
  double max_norm_refined();

 private:
  FourierImmersion imm_;
  TorusGrid grid_;
  std::uint64_t seed_;
  std::unique_ptr<Survey> base_;
  std::unique_ptr<Survey> refined_;
  std::optional<std::vector<ExtremalCurvature>> extremes_;
};

CheckReport check_ball_containment(CheckContext& ctx);
CheckReport check_avg_H(CheckContext& ctx);
CheckReport check_2d(CheckContext& ctx);
CheckReport check_flat(CheckContext& ctx);
CheckReport check_sphere(CheckContext& ctx);
CheckReport check_main(CheckContext& ctx);
CheckReport check_bow(CheckContext& ctx);
CheckReport check_constant_K(const FourierImmersion& imm, int directions, std::uint64_t seed,
                             std::optional<double> certified_K = {});
CheckReport open_question_probe(CheckContext& ctx);

// Convenience overloads on a fresh context.
CheckReport check_ball_containment(const FourierImmersion& imm, const TorusGrid& grid);
CheckReport check_avg_H(const FourierImmersion& imm, const TorusGrid& grid);
CheckReport check_2d(const FourierImmersion& imm, const TorusGrid& grid);
CheckReport check_flat(const FourierImmersion& imm, const TorusGrid& grid);
CheckReport check_sphere(const FourierImmersion& imm, const TorusGrid& grid);
CheckReport check_main(const FourierImmersion& imm, const TorusGrid& grid);
CheckReport check_bow(const FourierImmersion& imm, const TorusGrid& grid);
CheckReport open_question_probe(const FourierImmersion& imm, const TorusGrid& grid);

// ball, avg_H, 2d, flat, sphere, main, bow, constant_K, open_question.
const std::vector<std::string>& check_names();

struct VerifyOptions {
  std::vector<std::string> checks;  // empty selects all, in the fixed order
  std::uint64_t seed = 0;
  int directions = 256;
  std::optional<double> certified_K;
};

// Runs the selected checks in the fixed order. Throws InvalidArgument for
// an unknown check name.
std::vector<CheckReport> run_checks(const FourierImmersion& imm, const TorusGrid& grid,
                                    const VerifyOptions& options);

// 0 if nothing failed; 1 if a theorem check failed or stayed unresolved;
// 3 if only the probe flagged a candidate.
int verify_exit_code(const std::vector<CheckReport>& reports);

}  // namespace ntorus
