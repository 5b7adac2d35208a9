#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "dcps/sim.hpp"

namespace dcps {

enum class SpenderKind { low_spender, medium_spender, high_spender };

/// Cardholder spending characterization: three ordered currency intervals
/// (low/medium/high) and the probability of a transaction falling in each.
struct SpendingProfileSpec {
  SpenderKind kind = SpenderKind::low_spender;
  std::vector<std::pair<double, double>> range_bounds;  // three (min, max)
  std::vector<double> mix;                              // sums to 1
};

/// CPS-IP file-size layers; transfers outside every layer are flagged
/// inconsistent before HMM validation.
struct LayerSpec {
  std::vector<std::pair<double, double>> layers;  // ordered, non-overlapping
};

struct Injection {
  std::size_t position = 0;
  double value = 0.0;
};

/// Seeded stream of transaction amounts drawn per the mix, with fraud
/// amounts spliced in at the given positions.
std::vector<double> gen_card_stream(const SpendingProfileSpec& spec,
                                    std::size_t length,
                                    const std::vector<Injection>& fraud,
                                    std::uint64_t seed);

/// Seeded stream of transfer sizes drawn uniformly over the layers, with
/// overload sizes spliced in at the given positions.
std::vector<double> gen_transfer_stream(const LayerSpec& spec,
                                        std::size_t length,
                                        const std::vector<Injection>& overload,
                                        std::uint64_t seed);

/// Index of the layer containing the value, or nullopt when it fits none.
std::optional<std::size_t> layer_of(const LayerSpec& spec, double value);

struct WorkloadPlan {
  enum class Kind { card, transfer } kind = Kind::card;
  int card_duration = 1;        // service ticks per transaction
  double ticks_per_byte = 1.0;  // transfer duration scaling
  long arrival_spacing = 1;     // ticks between successive arrivals
  LayerSpec layers;             // transfer resource-class mapping
};

/// Card streams become periodic single-subprocess processes; transfer
/// streams become aperiodic processes classed by layer (first layer low,
/// second medium, third and above high) with duration proportional to
/// size. Out-of-layer transfers are pre-flagged.
Workload scenario_to_workload(const std::vector<double>& stream,
                              const WorkloadPlan& plan);

}  // namespace dcps
