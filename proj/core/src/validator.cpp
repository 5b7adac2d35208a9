#include "dcps/validator.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dcps {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

Profile train_profile(const std::vector<double>& history, int n_states, int k,
                      int window_length, double threshold, int train_iters,
                      std::uint64_t seed) {
  if (window_length < 1)
    throw std::invalid_argument("window_length must be >= 1");
  if (history.size() < static_cast<std::size_t>(window_length) + 1)
    throw std::invalid_argument("history too short for the requested window");
  if (threshold < 0.0 || threshold > 1.0)
    throw std::invalid_argument("threshold must be in [0, 1]");
  if (train_iters < 1) throw std::invalid_argument("train_iters must be >= 1");

  Profile profile;
  profile.quantizer = fit_kmeans(history, k, seed).quantizer;
  profile.window_length = window_length;
  profile.threshold = threshold;

  ObservationSequence symbols;
  symbols.reserve(history.size());
  for (double v : history) symbols.push_back(quantize(profile.quantizer, v));

  auto init = uniform_initial_model(n_states, k, seed);
  profile.model = baum_welch_train(init, symbols, train_iters, 1e-6).model;

  profile.window.assign(symbols.end() - window_length, symbols.end());
  return profile;
}

std::pair<Verdict, Profile> validate_next(const Profile& profile,
                                          double value) {
  if (profile.window.size() != static_cast<std::size_t>(profile.window_length))
    throw std::invalid_argument("profile window has wrong length");

  Verdict verdict;
  verdict.symbol = quantize(profile.quantizer, value);

  const double alpha1 =
      profile.cached_window_loglik
          ? *profile.cached_window_loglik
          : forward_likelihood(profile.model, profile.window).log_likelihood;

  ObservationSequence shifted(profile.window.begin() + 1,
                              profile.window.end());
  shifted.push_back(verdict.symbol);
  const double alpha2 =
      forward_likelihood(profile.model, shifted).log_likelihood;

  verdict.alpha1 = alpha1;
  verdict.alpha2 = alpha2;

  if (alpha1 == kNegInf) {
    // The stored window itself is impossible (possible after retraining);
    // accept and resynchronize rather than rejecting everything forever.
    verdict.delta_rel = 0.0;
    verdict.accepted = true;
  } else if (alpha2 == kNegInf) {
    // Maximal drop: the extended sequence is impossible.
    verdict.delta_rel = std::numeric_limits<double>::infinity();
    verdict.accepted = false;
  } else {
    verdict.delta_rel = 1.0 - std::exp(alpha2 - alpha1);
    verdict.accepted = verdict.delta_rel <= profile.threshold;
  }

  Profile next = profile;
  next.cached_window_loglik = alpha1;
  if (verdict.accepted) {
    next.window = std::move(shifted);
    next.cached_window_loglik = alpha2 == kNegInf
                                    ? std::optional<double>{}
                                    : std::optional<double>{alpha2};
  }
  return {verdict, std::move(next)};
}

}  // namespace dcps
