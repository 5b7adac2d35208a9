#pragma once

#include <cstdint>
#include <vector>

namespace dcps {

/// Nearest-centroid symbol mapper produced by 1-D k-means. Centroids are
/// kept sorted ascending so symbol 0 always covers the lowest range.
struct Quantizer {
  std::vector<double> centroids;

  int k() const { return static_cast<int>(centroids.size()); }
};

struct KMeansResult {
  Quantizer quantizer;
  double inertia = 0.0;
};

/// Lloyd's algorithm on scalar values. Restart 0 uses deterministic
/// quantile seeding; further restarts draw seeded random initial centroids
/// and the lowest-inertia fit wins. Throws std::invalid_argument when
/// values is empty or k exceeds the number of distinct values.
KMeansResult fit_kmeans(const std::vector<double>& values, int k,
                        std::uint64_t seed, int restarts = 1);

/// Index of the nearest centroid; exact midpoints resolve to the lower
/// index. Total over all reals.
int quantize(const Quantizer& quantizer, double value);

}  // namespace dcps
