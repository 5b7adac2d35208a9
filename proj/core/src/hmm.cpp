#include "dcps/hmm.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace dcps {

namespace {

constexpr double kRowSumTol = 1e-9;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_row(const std::vector<double>& row, std::size_t expected_len,
               int row_index, const char* what,
               std::vector<ModelViolation>& out) {
  if (row.size() != expected_len) {
    out.push_back({ModelViolation::Kind::shape, row_index,
                   std::string(what) + " row has wrong length"});
    return;
  }
  double sum = 0.0;
  for (double p : row) {
    if (!(p >= 0.0 && p <= 1.0)) {
      out.push_back({ModelViolation::Kind::range, row_index,
                     std::string(what) + " entry outside [0, 1]"});
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kRowSumTol) {
    out.push_back({ModelViolation::Kind::row_sum, row_index,
                   std::string(what) + " row does not sum to 1"});
  }
}

void require_obs(const HmmModel& model, const ObservationSequence& obs) {
  if (obs.empty()) throw std::invalid_argument("observation sequence is empty");
  for (int s : obs) {
    if (s < 0 || s >= model.n_symbols)
      throw std::invalid_argument("observation symbol out of range");
  }
}

// Samples an index from a probability row via its cumulative sum.
// Hand-rolled so results are identical across standard libraries.
int sample_index(const std::vector<double>& probs, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double u = unif(rng);
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc) return static_cast<int>(i);
  }
  return static_cast<int>(probs.size()) - 1;
}

std::vector<double> random_stochastic_row(std::size_t len,
                                          std::mt19937_64& rng) {
  // Uniform row plus a perturbation of at most 0.01 per entry.
  std::uniform_real_distribution<double> unif(0.0, 0.01);
  std::vector<double> row(len, 1.0 / static_cast<double>(len));
  double sum = 0.0;
  for (double& p : row) {
    p += unif(rng);
    sum += p;
  }
  for (double& p : row) p /= sum;
  return row;
}

}  // namespace

std::vector<ModelViolation> validate_model(const HmmModel& model) {
  std::vector<ModelViolation> out;
  if (model.n_states < 1 || model.n_symbols < 1) {
    out.push_back({ModelViolation::Kind::shape, -1,
                   "n_states and n_symbols must be positive"});
    return out;
  }
  const auto n = static_cast<std::size_t>(model.n_states);
  const auto m = static_cast<std::size_t>(model.n_symbols);
  if (model.transition.size() != n)
    out.push_back({ModelViolation::Kind::shape, -1, "transition has wrong row count"});
  if (model.emission.size() != n)
    out.push_back({ModelViolation::Kind::shape, -1, "emission has wrong row count"});
  if (!out.empty()) return out;
  for (std::size_t i = 0; i < n; ++i) {
    check_row(model.transition[i], n, static_cast<int>(i), "transition", out);
    check_row(model.emission[i], m, static_cast<int>(i), "emission", out);
  }
  check_row(model.initial, n, -1, "initial", out);
  return out;
}

ForwardResult forward_likelihood(const HmmModel& model,
                                 const ObservationSequence& obs) {
  if (!validate_model(model).empty())
    throw std::invalid_argument("invalid model");
  require_obs(model, obs);

  const int n = model.n_states;
  const std::size_t len = obs.size();
  ForwardResult res;
  res.alpha.assign(len, std::vector<double>(n, 0.0));
  res.scale.assign(len, 0.0);

  double log_lik = 0.0;
  for (std::size_t t = 0; t < len; ++t) {
    auto& row = res.alpha[t];
    if (t == 0) {
      for (int i = 0; i < n; ++i)
        row[i] = model.initial[i] * model.emission[i][obs[0]];
    } else {
      const auto& prev = res.alpha[t - 1];
      for (int j = 0; j < n; ++j) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i) acc += prev[i] * model.transition[i][j];
        row[j] = acc * model.emission[j][obs[t]];
      }
    }
    double c = 0.0;
    for (double a : row) c += a;
    res.scale[t] = c;
    if (c == 0.0) {
      res.log_likelihood = kNegInf;
      return res;
    }
    for (double& a : row) a /= c;
    log_lik += std::log(c);
  }
  res.log_likelihood = log_lik;
  return res;
}

std::vector<std::vector<double>> backward_pass(
    const HmmModel& model, const ObservationSequence& obs,
    const std::vector<double>& scale) {
  require_obs(model, obs);
  if (scale.size() != obs.size())
    throw std::invalid_argument("scaling record length does not match sequence");

  const int n = model.n_states;
  const std::size_t len = obs.size();
  std::vector<std::vector<double>> beta(len, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) beta[len - 1][i] = 1.0;
  for (std::size_t t = len - 1; t-- > 0;) {
    const double c = scale[t + 1];
    if (c == 0.0) throw std::invalid_argument("scaling record contains zero");
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int j = 0; j < n; ++j)
        acc += model.transition[i][j] * model.emission[j][obs[t + 1]] *
               beta[t + 1][j];
      beta[t][i] = acc / c;
    }
  }
  return beta;
}

std::vector<std::vector<double>> state_posteriors(
    const std::vector<std::vector<double>>& alpha,
    const std::vector<std::vector<double>>& beta) {
  if (alpha.size() != beta.size())
    throw std::invalid_argument("alpha/beta length mismatch");
  std::vector<std::vector<double>> gamma(alpha.size());
  for (std::size_t t = 0; t < alpha.size(); ++t) {
    const std::size_t n = alpha[t].size();
    gamma[t].assign(n, 0.0);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      gamma[t][i] = alpha[t][i] * beta[t][i];
      sum += gamma[t][i];
    }
    if (sum > 0.0)
      for (double& g : gamma[t]) g /= sum;
  }
  return gamma;
}

TrainResult baum_welch_train(const HmmModel& initial_model,
                             const ObservationSequence& obs, int max_iters,
                             double tol) {
  if (obs.size() < 2)
    throw std::invalid_argument("training sequence must have length >= 2");
  if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (!validate_model(initial_model).empty())
    throw std::invalid_argument("invalid initial model");

  const int n = initial_model.n_states;
  const int m = initial_model.n_symbols;
  const std::size_t len = obs.size();

  TrainResult res;
  res.model = initial_model;

  auto fwd = forward_likelihood(res.model, obs);
  res.log_likelihood_history.push_back(fwd.log_likelihood);

  for (int iter = 0; iter < max_iters; ++iter) {
    if (fwd.log_likelihood == kNegInf) break;
    const auto beta = backward_pass(res.model, obs, fwd.scale);
    const auto gamma = state_posteriors(fwd.alpha, beta);

    // Expected transition counts. xi_t(i,j) is normalized per step so the
    // scaling constants cancel.
    std::vector<std::vector<double>> trans_num(n, std::vector<double>(n, 0.0));
    std::vector<double> trans_den(n, 0.0);
    for (std::size_t t = 0; t + 1 < len; ++t) {
      double norm = 0.0;
      std::vector<std::vector<double>> xi(n, std::vector<double>(n, 0.0));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          xi[i][j] = fwd.alpha[t][i] * res.model.transition[i][j] *
                     res.model.emission[j][obs[t + 1]] * beta[t + 1][j];
          norm += xi[i][j];
        }
      if (norm == 0.0) continue;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) trans_num[i][j] += xi[i][j] / norm;
        trans_den[i] += gamma[t][i];
      }
    }

    std::vector<std::vector<double>> emit_num(n, std::vector<double>(m, 0.0));
    std::vector<double> emit_den(n, 0.0);
    for (std::size_t t = 0; t < len; ++t)
      for (int i = 0; i < n; ++i) {
        emit_num[i][obs[t]] += gamma[t][i];
        emit_den[i] += gamma[t][i];
      }

    HmmModel next = res.model;
    for (int i = 0; i < n; ++i) next.initial[i] = gamma[0][i];
    for (int i = 0; i < n; ++i) {
      if (trans_den[i] > 0.0)
        for (int j = 0; j < n; ++j)
          next.transition[i][j] = trans_num[i][j] / trans_den[i];
      if (emit_den[i] > 0.0)
        for (int k = 0; k < m; ++k)
          next.emission[i][k] = emit_num[i][k] / emit_den[i];
    }
    // Renormalize away accumulated rounding so rows stay stochastic.
    auto renorm = [](std::vector<double>& row) {
      double s = 0.0;
      for (double p : row) s += p;
      if (s > 0.0)
        for (double& p : row) p /= s;
    };
    for (auto& row : next.transition) renorm(row);
    for (auto& row : next.emission) renorm(row);
    renorm(next.initial);

    res.model = std::move(next);
    auto next_fwd = forward_likelihood(res.model, obs);
    const double improvement =
        next_fwd.log_likelihood - res.log_likelihood_history.back();
    res.log_likelihood_history.push_back(next_fwd.log_likelihood);
    fwd = std::move(next_fwd);
    if (improvement < tol) break;
  }
  return res;
}

HmmModel uniform_initial_model(int n_states, int n_symbols,
                               std::uint64_t seed) {
  if (n_states < 1 || n_symbols < 1)
    throw std::invalid_argument("n_states and n_symbols must be >= 1");
  std::mt19937_64 rng(seed);
  HmmModel model;
  model.n_states = n_states;
  model.n_symbols = n_symbols;
  model.initial.assign(n_states, 1.0 / n_states);
  model.transition.reserve(n_states);
  model.emission.reserve(n_states);
  for (int i = 0; i < n_states; ++i)
    model.transition.push_back(random_stochastic_row(n_states, rng));
  for (int i = 0; i < n_states; ++i)
    model.emission.push_back(random_stochastic_row(n_symbols, rng));
  return model;
}

ObservationSequence sample_sequence(const HmmModel& model, int length,
                                    std::uint64_t seed) {
  if (length < 1) throw std::invalid_argument("length must be >= 1");
  if (!validate_model(model).empty())
    throw std::invalid_argument("invalid model");
  std::mt19937_64 rng(seed);
  ObservationSequence out;
  out.reserve(length);
  int state = sample_index(model.initial, rng);
  for (int t = 0; t < length; ++t) {
    out.push_back(sample_index(model.emission[state], rng));
    if (t + 1 < length) state = sample_index(model.transition[state], rng);
  }
  return out;
}

}  // namespace dcps
