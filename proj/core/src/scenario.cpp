#include "dcps/scenario.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace dcps {

namespace {

void splice(std::vector<double>& stream,
            const std::vector<Injection>& injections) {
  for (const auto& inj : injections) {
    if (inj.position >= stream.size())
      throw std::invalid_argument("injection position beyond stream length");
    stream[inj.position] = inj.value;
  }
}

double uniform_in(std::pair<double, double> range, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(range.first, range.second);
  return unif(rng);
}

}  // namespace

std::vector<double> gen_card_stream(const SpendingProfileSpec& spec,
                                    std::size_t length,
                                    const std::vector<Injection>& fraud,
                                    std::uint64_t seed) {
  if (spec.range_bounds.size() != 3 || spec.mix.size() != 3)
    throw std::invalid_argument("spending profile needs three ranges and mix entries");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> stream;
  stream.reserve(length);
  for (std::size_t i = 0; i < length; ++i) {
    const double u = unif(rng);
    std::size_t range = 0;
    double acc = 0.0;
    for (std::size_t r = 0; r < spec.mix.size(); ++r) {
      acc += spec.mix[r];
      if (u < acc) {
        range = r;
        break;
      }
      range = r;
    }
    stream.push_back(uniform_in(spec.range_bounds[range], rng));
  }
  splice(stream, fraud);
  return stream;
}

std::vector<double> gen_transfer_stream(const LayerSpec& spec,
                                        std::size_t length,
                                        const std::vector<Injection>& overload,
                                        std::uint64_t seed) {
  if (spec.layers.empty())
    throw std::invalid_argument("layer spec has no layers");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, spec.layers.size() - 1);
  std::vector<double> stream;
  stream.reserve(length);
  for (std::size_t i = 0; i < length; ++i)
    stream.push_back(uniform_in(spec.layers[pick(rng)], rng));
  splice(stream, overload);
  return stream;
}

std::optional<std::size_t> layer_of(const LayerSpec& spec, double value) {
  for (std::size_t i = 0; i < spec.layers.size(); ++i)
    if (value >= spec.layers[i].first && value <= spec.layers[i].second)
      return i;
  return std::nullopt;
}

Workload scenario_to_workload(const std::vector<double>& stream,
                              const WorkloadPlan& plan) {
  Workload workload;
  workload.reserve(stream.size());
  for (std::size_t i = 0; i < stream.size(); ++i) {
    ProcessSpec proc;
    proc.id = (plan.kind == WorkloadPlan::Kind::card ? "txn-" : "xfer-") +
              std::to_string(i);
    proc.arrival_tick = static_cast<long>(i) * plan.arrival_spacing;
    SubProcessSpec sub;
    sub.output_value = stream[i];
    if (plan.kind == WorkloadPlan::Kind::card) {
      proc.periodicity = Periodicity::periodic;
      sub.duration = plan.card_duration;
    } else {
      proc.periodicity = Periodicity::aperiodic;
      const auto layer = layer_of(plan.layers, stream[i]);
      if (!layer) {
        sub.pre_flagged = true;
        proc.resource_class = ResourceClass::low;
      } else if (*layer == 0) {
        proc.resource_class = ResourceClass::low;
      } else if (*layer == 1) {
        proc.resource_class = ResourceClass::medium;
      } else {
        proc.resource_class = ResourceClass::high;
      }
      sub.duration = std::max(
          1, static_cast<int>(std::llround(stream[i] * plan.ticks_per_byte)));
    }
    proc.subprocesses.push_back(sub);
    workload.push_back(std::move(proc));
  }
  return workload;
}

}  // namespace dcps
