#include "evclust/neural.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace evclust::neural {

Scalar excitation_bias(int rows, int cols, Scalar gi, Scalar ri) {
  if (rows < 1 || cols < 1) {
    throw std::invalid_argument("excitation_bias: dimensions must be positive");
  }
  return -(gi * rows + (ri + gi) * (cols - 1)) / cols;
}

NetParams scale_params(const NetParams& base, int rows, int cols) {
  if (rows < 1 || cols < 1) {
    throw std::invalid_argument("scale_params: dimensions must be positive");
  }
  NetParams p = base;
  const Scalar factor = Scalar(31) / rows;
  p.gi = base.gi * factor;
  p.dti = base.dti * factor;
  p.eb = excitation_bias(rows, cols, p.gi, p.ri);
  return p;
}

bool NetState::all_frozen() const {
  return std::all_of(frozen.begin(), frozen.end(), [](bool f) { return f; });
}

namespace detail {

Scalar voltage_to_input(Scalar v, Scalar u0) {
  const Scalar clamped = std::clamp(v, Scalar(1e-9), Scalar(1) - Scalar(1e-9));
  return u0 * std::atanh(2 * clamped - 1);
}

}  // namespace detail

namespace {

Matrix output_of(const Matrix& u, Scalar u0) {
  return ((u / u0).array().tanh() + 1).matrix() / 2;
}

}  // namespace

NetState init_state(int rows, int cols, const NetParams& params, std::uint64_t seed) {
  if (rows < 1) {
    throw std::invalid_argument("init_state: need at least one row");
  }
  if (cols < 2) {
    throw std::invalid_argument("init_state: need at least two columns");
  }
  const Scalar u00 = params.u0 * std::atanh(Scalar(2) / cols - 1);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<Scalar> noise(-params.noise_amp * params.u0,
                                               params.noise_amp * params.u0);
  NetState s;
  s.u.resize(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      s.u(i, j) = u00 + noise(rng);
    }
  }
  s.V = output_of(s.u, params.u0);
  s.frozen.assign(rows, false);
  s.iteration = 0;
  return s;
}

NetState step(const NetState& state, const EvidenceSet& es, const NetParams& params) {
  const int rows = state.rows();
  const int cols = state.cols();
  if (rows != es.size()) {
    throw std::invalid_argument("step: state row count does not match evidence count");
  }
  const Scalar eb = std::isnan(params.eb)
                        ? excitation_bias(rows, cols, params.gi, params.ri)
                        : params.eb;
  const Matrix& W = es.weight_matrix();
  const RowVector col_sums = state.V.colwise().sum();
  const Vector row_sums = state.V.rowwise().sum();

  Matrix signal = params.dti * (W * state.V);
  signal.rowwise() += params.gi * col_sums;
  signal.colwise() += (params.ri + params.gi) * row_sums;
  signal -= (params.ri + params.gi) * state.V;
  signal.array() += eb;

  const Matrix u_next = state.u + params.eta * (signal - state.u);
  const Matrix v_next = output_of(u_next, params.u0);

  NetState next = state;
  next.iteration = state.iteration + 1;
  for (int m = 0; m < rows; ++m) {
    if (state.frozen[m]) {
      continue;
    }
    next.u.row(m) = u_next.row(m);
    next.V.row(m) = v_next.row(m);

    // A row whose outputs all fell is drifting toward the all-zero corner,
    // which the row inhibition cannot recover from. Lift it by the smallest
    // decrease so the best neuron keeps its level.
    const Scalar min_decrease = (state.V.row(m) - next.V.row(m)).minCoeff();
    if (min_decrease > 0) {
      next.V.row(m).array() += min_decrease;
      for (int j = 0; j < cols; ++j) {
        next.u(m, j) = detail::voltage_to_input(next.V(m, j), params.u0);
      }
    }

    Eigen::Index top;
    const Scalar highest = next.V.row(m).maxCoeff(&top);
    Scalar second = 0;
    bool second_set = false;
    for (int j = 0; j < cols; ++j) {
      if (j == top) {
        continue;
      }
      if (!second_set || next.V(m, j) > second) {
        second = next.V(m, j);
        second_set = true;
      }
    }
    if (highest >= params.snap_threshold || second == 0) {
      next.V.row(m).setZero();
      next.V(m, top) = 1;
      for (int j = 0; j < cols; ++j) {
        next.u(m, j) = detail::voltage_to_input(next.V(m, j), params.u0);
      }
      next.frozen[m] = true;
    }
  }
  return next;
}

NeuralResult run(const EvidenceSet& es, int cluster_count, const NetParams& params,
                 std::uint64_t seed, std::span<const int> snapshot_iterations) {
  if (cluster_count < 2) {
    throw std::invalid_argument("run: need at least two clusters");
  }
  NetParams p = params;
  if (std::isnan(p.eb)) {
    p.eb = excitation_bias(es.size(), cluster_count, p.gi, p.ri);
  }

  std::vector<int> checkpoints(snapshot_iterations.begin(), snapshot_iterations.end());
  std::sort(checkpoints.begin(), checkpoints.end());
  checkpoints.erase(std::unique(checkpoints.begin(), checkpoints.end()),
                    checkpoints.end());
  std::size_t next_checkpoint = 0;

  NeuralResult result;
  NetState s = init_state(es.size(), cluster_count, p, seed);
  while (next_checkpoint < checkpoints.size() && checkpoints[next_checkpoint] <= 0) {
    result.snapshots.push_back({checkpoints[next_checkpoint], s.V});
    ++next_checkpoint;
  }

  while (!s.all_frozen() && s.iteration < p.max_iterations) {
    s = step(s, es, p);
    if (next_checkpoint < checkpoints.size() &&
        checkpoints[next_checkpoint] == s.iteration) {
      result.snapshots.push_back({s.iteration, s.V});
      ++next_checkpoint;
    }
  }

  // Checkpoints the run never reached repeat the settled state, so a fixed
  // checkpoint schedule always yields a full set of frames.
  for (; next_checkpoint < checkpoints.size(); ++next_checkpoint) {
    result.snapshots.push_back({checkpoints[next_checkpoint], s.V});
  }

  result.converged = s.all_frozen();
  result.iterations = s.iteration;
  if (result.converged) {
    std::vector<int> assignment(es.size());
    for (int m = 0; m < es.size(); ++m) {
      Eigen::Index top;
      s.V.row(m).maxCoeff(&top);
      assignment[m] = static_cast<int>(top);
    }
    result.partition.emplace(es, std::move(assignment), cluster_count);
  }
  result.state = std::move(s);
  return result;
}

}  // namespace evclust::neural
