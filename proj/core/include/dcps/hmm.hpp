#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dcps {

/// Discrete HMM parameter set: transition matrix, emission matrix and
/// initial state distribution. Rows are probability distributions.
struct HmmModel {
  int n_states = 0;
  int n_symbols = 0;
  std::vector<std::vector<double>> transition;  // n_states x n_states
  std::vector<std::vector<double>> emission;    // n_states x n_symbols
  std::vector<double> initial;                  // n_states
};

using ObservationSequence = std::vector<int>;

struct ModelViolation {
  enum class Kind { shape, row_sum, range };
  Kind kind;
  int row;  // -1 when not row-specific
  std::string message;
};

/// Checks stochasticity of all rows (sum 1 within 1e-9, entries in [0,1])
/// and dimension consistency. Empty result means the model is valid.
std::vector<ModelViolation> validate_model(const HmmModel& model);

struct ForwardResult {
  double log_likelihood = 0.0;
  // alpha[t][i]: scaled forward variable, rows normalized to sum 1.
  std::vector<std::vector<double>> alpha;
  // Per-step normalizers; log_likelihood = sum of their logs.
  std::vector<double> scale;
};

/// Scaled forward recursion. Returns -inf log-likelihood when the
/// sequence is impossible under the model (never throws for that case).
ForwardResult forward_likelihood(const HmmModel& model,
                                 const ObservationSequence& obs);

/// Scaled backward recursion using the normalizers produced by
/// forward_likelihood on the same (model, obs).
std::vector<std::vector<double>> backward_pass(const HmmModel& model,
                                               const ObservationSequence& obs,
                                               const std::vector<double>& scale);

/// Posterior state marginals gamma[t][i], each row normalized to sum 1.
std::vector<std::vector<double>> state_posteriors(
    const std::vector<std::vector<double>>& alpha,
    const std::vector<std::vector<double>>& beta);

struct TrainResult {
  HmmModel model;
  std::vector<double> log_likelihood_history;
};

/// Baum-Welch re-estimation on a single sequence. Stops when the
/// per-iteration improvement drops below tol or max_iters is reached.
/// States with zero expected occupancy keep their previous rows.
TrainResult baum_welch_train(const HmmModel& initial_model,
                             const ObservationSequence& obs, int max_iters,
                             double tol);

/// Uniform initial vector (exactly 1/N) with seeded near-uniform
/// transition/emission rows; the perturbation breaks re-estimation
/// symmetry. Deterministic per seed.
HmmModel uniform_initial_model(int n_states, int n_symbols, std::uint64_t seed);

/// Draws a sequence from the model's generative process.
ObservationSequence sample_sequence(const HmmModel& model, int length,
                                    std::uint64_t seed);

}  // namespace dcps
