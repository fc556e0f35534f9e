#pragma once

#include <cstdint>
#include <vector>

#include "ntorus/grid.hpp"
#include "ntorus/immersion.hpp"

namespace ntorus {

struct SearchConfig {
  int n = 2;
  int q = 6;
  int fmax = 1;                // frequencies with |k|∞ ≤ fmax
  std::vector<int> grid;       // empty selects 16 per axis
  std::uint64_t seed = 0;
  int iterations = 100;        // length of the objective history
  int restarts = 1;
  double penalty_weight = 1e6;
  double smoothing = 0.01;     // soft-max temperature
  double initial_step = 0.02;
  double perturbation = 0.01;
  bool gradient_refinement = false;
};

struct SearchResult {
  FourierImmersion best;
  double objective = 0.0;
  double sup_zh = 0.0;    // exact maximum on the doubled grid
  double max_norm = 0.0;  // on the doubled grid
  double rank = 0.0;      // smallest singular value of df on the doubled grid
  std::vector<double> objective_history;  // best restart, entry 0 is the start
  int best_restart = 0;
  bool counterexample_candidate = false;
  SearchConfig config;
};

TorusGrid search_grid(const SearchConfig& config);

// T·log(mean exp(ж/T)) + w·max(0, max|f| − 1)² on the search grid. A
// degenerate metric yields a large finite value.
double objective(const FourierImmersion& imm, const SearchConfig& config);

// Exact maximum of ж on a grid.
double sup_zh(const FourierImmersion& imm, const TorusGrid& grid);

// Compass search over the Fourier coefficients and the translation, one
// run per restart, each started from a perturbed Clifford or hexagonal
// torus. Deterministic in the config.
SearchResult optimize(const SearchConfig& config);

// Frequencies of the half lattice {k : |k|∞ ≤ fmax, first nonzero entry > 0}.
std::vector<std::vector<int>> half_lattice(int n, int fmax);

}  // namespace ntorus
