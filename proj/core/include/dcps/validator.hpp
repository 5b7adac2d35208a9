#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "dcps/hmm.hpp"
#include "dcps/quantizer.hpp"

namespace dcps {

/// A trained per-source validation profile: model, quantizer, the current
/// R-length symbol window and the relative-drop rejection threshold.
struct Profile {
  HmmModel model;
  Quantizer quantizer;
  std::vector<int> window;
  int window_length = 0;
  double threshold = 0.5;
  // Cached log-likelihood of the current window; cleared whenever the
  // window changes.
  std::optional<double> cached_window_loglik;
};

struct Verdict {
  bool accepted = false;
  double alpha1 = 0.0;     // log P(window | model)
  double alpha2 = 0.0;     // log P(shifted window + new symbol | model)
  double delta_rel = 0.0;  // relative probability drop, 1 - exp(a2 - a1)
  int symbol = 0;
};

/// Fits quantizer and model on a raw value history and seeds the window
/// with the last window_length quantized symbols.
Profile train_profile(const std::vector<double>& history, int n_states, int k,
                      int window_length, double threshold, int train_iters,
                      std::uint64_t seed);

/// Quantizes the value, compares the stored window's likelihood against
/// the shifted window's, and accepts iff the relative drop stays within
/// the threshold. The window advances only on acceptance.
std::pair<Verdict, Profile> validate_next(const Profile& profile, double value);

}  // namespace dcps
