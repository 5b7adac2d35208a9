#include "dcps/quantizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>

namespace dcps {

namespace {

struct Fit {
  std::vector<double> centroids;
  double inertia = 0.0;
};

// One Lloyd run from the given initial centroids; assignments are by
// nearest centroid, empty clusters are reseeded at the worst-fit value.
Fit lloyd(const std::vector<double>& values, std::vector<double> centroids) {
  const int k = static_cast<int>(centroids.size());
  std::vector<int> assign(values.size(), -1);
  double inertia = 0.0;
  for (int iter = 0; iter < 100; ++iter) {
    bool changed = false;
    inertia = 0.0;
    for (std::size_t v = 0; v < values.size(); ++v) {
      int best = 0;
      double best_d = std::abs(values[v] - centroids[0]);
      for (int c = 1; c < k; ++c) {
        double d = std::abs(values[v] - centroids[c]);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      if (assign[v] != best) {
        assign[v] = best;
        changed = true;
      }
      inertia += best_d * best_d;
    }
    if (!changed && iter > 0) break;

    std::vector<double> sum(k, 0.0);
    std::vector<int> count(k, 0);
    for (std::size_t v = 0; v < values.size(); ++v) {
      sum[assign[v]] += values[v];
      ++count[assign[v]];
    }
    for (int c = 0; c < k; ++c) {
      if (count[c] > 0) {
        centroids[c] = sum[c] / count[c];
      } else {
        // Reseed an empty cluster at the value farthest from its centroid.
        std::size_t worst = 0;
        double worst_d = -1.0;
        for (std::size_t v = 0; v < values.size(); ++v) {
          double d = std::abs(values[v] - centroids[assign[v]]);
          if (d > worst_d) {
            worst_d = d;
            worst = v;
          }
        }
        centroids[c] = values[worst];
      }
    }
  }
  return {std::move(centroids), inertia};
}

}  // namespace

KMeansResult fit_kmeans(const std::vector<double>& values, int k,
                        std::uint64_t seed, int restarts) {
  if (values.empty()) throw std::invalid_argument("values is empty");
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  std::set<double> distinct(values.begin(), values.end());
  if (static_cast<std::size_t>(k) > distinct.size())
    throw std::invalid_argument("k exceeds number of distinct values");
  if (restarts < 1) restarts = 1;

  std::vector<double> sorted(values);
  std::sort(sorted.begin(), sorted.end());

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, sorted.size() - 1);

  Fit best;
  best.inertia = std::numeric_limits<double>::infinity();
  for (int r = 0; r < restarts; ++r) {
    std::vector<double> init(k);
    if (r == 0) {
      // Quantile seeding: centroid i at the (i + 0.5)/k quantile.
      for (int c = 0; c < k; ++c) {
        auto idx = static_cast<std::size_t>((c + 0.5) / k * sorted.size());
        init[c] = sorted[std::min(idx, sorted.size() - 1)];
      }
    } else {
      std::set<double> chosen;
      while (chosen.size() < static_cast<std::size_t>(k))
        chosen.insert(sorted[pick(rng)]);
      init.assign(chosen.begin(), chosen.end());
    }
    Fit fit = lloyd(values, std::move(init));
    if (fit.inertia < best.inertia) best = std::move(fit);
  }

  std::sort(best.centroids.begin(), best.centroids.end());
  // Collapse converged duplicates; the caller asked for k symbols, so a
  // smaller centroid set is an error it must resolve by lowering k.
  best.centroids.erase(
      std::unique(best.centroids.begin(), best.centroids.end()),
      best.centroids.end());
  if (best.centroids.size() != static_cast<std::size_t>(k))
    throw std::invalid_argument(
        "k-means converged to fewer than k distinct centroids; lower k");

  return {Quantizer{std::move(best.centroids)}, best.inertia};
}

int quantize(const Quantizer& quantizer, double value) {
  const auto& c = quantizer.centroids;
  if (c.empty()) throw std::invalid_argument("quantizer is not fitted");
  int best = 0;
  for (std::size_t i = 1; i < c.size(); ++i) {
    // Strict inequality keeps exact midpoints at the lower index.
    if (std::abs(value - c[i]) < std::abs(value - c[best]))
      best = static_cast<int>(i);
  }
  return best;
}

}  // namespace dcps
