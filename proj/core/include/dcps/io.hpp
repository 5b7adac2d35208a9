#pragma once

#include <string>
#include <vector>

#include "dcps/scenario.hpp"
#include "dcps/sim.hpp"
#include "dcps/validator.hpp"

namespace dcps {

// Model and profile documents are JSON. Doubles are written with
// shortest-round-trip formatting, so load -> save -> load is
// value-identical.

std::string model_to_string(const HmmModel& model);
HmmModel model_from_string(const std::string& text);

std::string profile_to_string(const Profile& profile);
Profile profile_from_string(const std::string& text);

std::string workload_to_string(const Workload& workload);
Workload workload_from_string(const std::string& text);

/// Scenario configuration: stream generator spec, injections, training
/// parameters and simulation settings in one document.
struct ScenarioConfig {
  WorkloadPlan::Kind kind = WorkloadPlan::Kind::card;
  std::size_t length = 0;
  std::uint64_t seed = 0;
  SpendingProfileSpec card;
  LayerSpec layers;
  std::vector<Injection> injections;
  WorkloadPlan plan;
  // Training defaults used by `train` when fed a generated history.
  int n_states = 5;
  int n_symbols = 3;
  int window_length = 10;
  double threshold = 0.5;
  int train_iters = 50;
  SimConfig sim;
};

std::string scenario_config_to_string(const ScenarioConfig& config);
ScenarioConfig scenario_config_from_string(const std::string& text);

/// CSV streams use a header row `index,value`, one value per row.
std::string stream_to_csv(const std::vector<double>& stream);
std::vector<double> stream_from_csv(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace dcps
