#include "ntorus/explore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ntorus/error.hpp"
#include "ntorus/parallel.hpp"
#include "ntorus/pointwise.hpp"
#include "ntorus/rng.hpp"

namespace ntorus {

namespace {

constexpr double kDegeneratePenalty = 1e12;

void validate(const SearchConfig& c) {
  if (c.n < 1 || c.q <= c.n) throw Error(ErrorKind::InvalidArgument, "search needs 1 ≤ n < q");
  if (c.fmax < 1) throw Error(ErrorKind::InvalidArgument, "fmax must be at least 1");
  if (c.iterations < 1) throw Error(ErrorKind::InvalidArgument, "iterations must be at least 1");
  if (c.restarts < 1) throw Error(ErrorKind::InvalidArgument, "restarts must be at least 1");
  if (c.penalty_weight < 0.0) throw Error(ErrorKind::InvalidArgument, "penalty weight must be non-negative");
  if (c.smoothing <= 0.0) throw Error(ErrorKind::InvalidArgument, "smoothing must be positive");
  if (!c.grid.empty() && static_cast<int>(c.grid.size()) != c.n)
    throw Error(ErrorKind::InvalidArgument, "grid needs one size per dimension");
}

// Parameters: (a, b) for every half-lattice frequency, then the translation.
class Layout {
 public:
  Layout(int n, int q, int fmax) : n_(n), q_(q), freqs_(half_lattice(n, fmax)) {}

  std::size_t size() const { return (2 * freqs_.size() + 1) * static_cast<std::size_t>(q_); }

  FourierImmersion build(const Eigen::VectorXd& x) const {
    std::vector<FourierTerm> terms;
    terms.reserve(freqs_.size());
    for (std::size_t f = 0; f < freqs_.size(); ++f)
      terms.push_back({freqs_[f], x.segment(static_cast<Eigen::Index>(2 * f * q_), q_),
                       x.segment(static_cast<Eigen::Index>((2 * f + 1) * q_), q_)});
    return FourierImmersion(Signature(n_, q_), std::move(terms), 1.0,
                            x.segment(static_cast<Eigen::Index>(2 * freqs_.size() * q_), q_));
  }

  // Slot of frequency k in the parameter vector.
  std::size_t slot(const std::vector<int>& k) const {
    const auto it = std::find(freqs_.begin(), freqs_.end(), k);
    if (it == freqs_.end()) throw Error(ErrorKind::InvalidArgument, "frequency outside the search lattice");
    return static_cast<std::size_t>(it - freqs_.begin()) * 2 * q_;
  }

 private:
  int n_;
  int q_;
  std::vector<std::vector<int>> freqs_;
};

// Hexagonal torus for n = 2 when it fits, otherwise the Clifford torus.
Eigen::VectorXd fixture_parameters(const Layout& layout, int n, int q) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(layout.size()));
  std::vector<std::vector<int>> rows;
  if (n == 2 && q >= 6) {
    rows = {{1, 0}, {0, 1}, {1, 1}};
  } else {
    if (q < 2 * n) throw Error(ErrorKind::InvalidArgument, "q must be at least 2n for the Clifford start");
    for (int i = 0; i < n; ++i) {
      std::vector<int> k(n, 0);
      k[i] = 1;
      rows.push_back(k);
    }
  }
  const double r = 1.0 / std::sqrt(double(rows.size()));
  for (std::size_t j = 0; j < rows.size(); ++j) {
    const std::size_t s = layout.slot(rows[j]);
    x[static_cast<Eigen::Index>(s + 2 * j)] = r;
    x[static_cast<Eigen::Index>(s + q + 2 * j + 1)] = r;
  }
  return x;
}

struct Run {
  Eigen::VectorXd x;
  double value;
  std::vector<double> history;
};

Run pattern_search(const Layout& layout, Eigen::VectorXd x, const SearchConfig& config) {
  auto f = [&](const Eigen::VectorXd& p) { return objective(layout.build(p), config); };
  Run run{x, f(x), {}};
  run.history.push_back(run.value);
  double step = config.initial_step;
  for (int it = 1; it < config.iterations && step >= 1e-9; ++it) {
    bool improved = false;
    for (Eigen::Index p = 0; p < run.x.size(); ++p) {
      for (double dir : {1.0, -1.0}) {
        Eigen::VectorXd trial = run.x;
        trial[p] += dir * step;
        const double v = f(trial);
        if (v < run.value) {
          run.x = std::move(trial);
          run.value = v;
          improved = true;
          break;
        }
      }
    }
    if (!improved) step *= 0.5;
    run.history.push_back(run.value);
  }

  if (config.gradient_refinement) {
    const double h = 1e-6;
    for (int it = 0; it < 20; ++it) {
      Eigen::VectorXd g(run.x.size());
      for (Eigen::Index p = 0; p < run.x.size(); ++p) {
        Eigen::VectorXd xp = run.x, xm = run.x;
        xp[p] += h;
        xm[p] -= h;
        g[p] = (f(xp) - f(xm)) / (2 * h);
      }
      if (g.norm() == 0.0) break;
      double t = config.initial_step / g.norm();
      bool moved = false;
      for (int k = 0; k < 30 && !moved; ++k, t *= 0.5) {
        const Eigen::VectorXd trial = run.x - t * g;
        const double v = f(trial);
        if (v < run.value) {
          run.x = trial;
          run.value = v;
          moved = true;
        }
      }
      if (!moved) break;
      run.history.push_back(run.value);
    }
  }
  return run;
}

}  // namespace

std::vector<std::vector<int>> half_lattice(int n, int fmax) {
  std::vector<std::vector<int>> out;
  std::vector<int> k(n, -fmax);
  while (true) {
    int first = 0;
    for (int v : k)
      if (v != 0) {
        first = v;
        break;
      }
    if (first > 0) out.push_back(k);
    int i = n - 1;
    while (i >= 0 && k[i] == fmax) k[i--] = -fmax;
    if (i < 0) break;
    ++k[i];
  }
  return out;
}

TorusGrid search_grid(const SearchConfig& config) {
  return config.grid.empty() ? TorusGrid(std::vector<int>(config.n, 16)) : TorusGrid(config.grid);
}

double objective(const FourierImmersion& imm, const SearchConfig& config) {
  const TorusGrid grid = search_grid(config);
  std::vector<double> zh(grid.size()), norm(grid.size());
  bool degenerate = false;
  parallel_for(grid.size(), [&](std::size_t i) {
    const Jet jet = evaluate_jet(imm, grid.point(i), 2);
    norm[i] = jet.value.norm();
    try {
      zh[i] = zh_at(second_form_at(jet, metric_at(jet)));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DegenerateMetric) throw;
      zh[i] = std::numeric_limits<double>::quiet_NaN();
    }
  });
  for (double z : zh) degenerate = degenerate || !std::isfinite(z);
  if (degenerate) return kDegeneratePenalty;

  const double top = *std::max_element(zh.begin(), zh.end());
  const double T = config.smoothing;
  std::vector<double> terms(zh.size());
  for (std::size_t i = 0; i < zh.size(); ++i) terms[i] = std::exp((zh[i] - top) / T);
  const double soft = top + T * std::log(pairwise_sum(terms) / static_cast<double>(terms.size()));
  const double excess = std::max(0.0, *std::max_element(norm.begin(), norm.end()) - 1.0);
  return soft + config.penalty_weight * excess * excess;
}

double sup_zh(const FourierImmersion& imm, const TorusGrid& grid) {
  std::vector<double> zh(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    const Jet jet = evaluate_jet(imm, grid.point(i), 2);
    zh[i] = zh_at(second_form_at(jet, metric_at(jet)));
  });
  return *std::max_element(zh.begin(), zh.end());
}

SearchResult optimize(const SearchConfig& config) {
  validate(config);
  const Layout layout(config.n, config.q, config.fmax);
  const TorusGrid refined = search_grid(config).doubled();
  const Eigen::VectorXd fixture = fixture_parameters(layout, config.n, config.q);

  std::vector<Run> runs;
  for (int r = 0; r < config.restarts; ++r) {
    const CounterRng rng(config.seed, static_cast<std::uint64_t>(r));
    Eigen::VectorXd x = fixture;
    for (Eigen::Index p = 0; p < x.size(); ++p) x[p] += config.perturbation * rng.normal(static_cast<std::uint64_t>(p));
    const double m = max_norm_on_grid(layout.build(x), refined);
    if (m > 1.0 - 1e-6) x *= (1.0 - 1e-6) / m;
    runs.push_back(pattern_search(layout, x, config));
  }

  std::size_t best = 0;
  for (std::size_t r = 1; r < runs.size(); ++r)
    if (runs[r].value < runs[best].value) best = r;

  SearchResult out{layout.build(runs[best].x), runs[best].value, 0.0, 0.0, 0.0,
                   runs[best].history, static_cast<int>(best), false, config};
  out.max_norm = max_norm_on_grid(out.best, refined);
  out.rank = immersion_rank_check(out.best, refined);
  try {
    out.sup_zh = sup_zh(out.best, refined);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DegenerateMetric) throw;
    out.sup_zh = std::numeric_limits<double>::infinity();
  }
  const double bound = 3.0 * config.n / (config.n + 2.0);
  out.counterexample_candidate = out.sup_zh < bound - 1e-4 && out.max_norm <= 1.0 - 1e-6 && out.rank >= 1e-6;
  return out;
}

}  // namespace ntorus
