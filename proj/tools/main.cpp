// dcps: train validation profiles, validate value streams, generate
// synthetic scenario data and run the middleware simulator.

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dcps/io.hpp"
#include "dcps/scenario.hpp"
#include "dcps/sim.hpp"
#include "dcps/validator.hpp"

namespace {

std::vector<double> build_stream(const dcps::ScenarioConfig& config) {
  if (config.kind == dcps::WorkloadPlan::Kind::card)
    return dcps::gen_card_stream(config.card, config.length,
                                 config.injections, config.seed);
  return dcps::gen_transfer_stream(config.layers, config.length,
                                   config.injections, config.seed);
}

void print_report(const dcps::SimMetrics& m, double threshold,
                  std::uint64_t seed) {
  std::cout << "validated=" << m.validated << "\n"
            << "rejected=" << m.rejected << "\n"
            << "pre_flagged=" << m.pre_flagged << "\n"
            << "horizon=" << m.horizon << "\n"
            << "mean_turnaround=" << m.mean_turnaround << "\n"
            << "threshold=" << threshold << "\n"
            << "seed=" << seed << "\n"
            << "truncated=" << (m.truncated ? 1 : 0) << "\n";
  for (std::size_t p = 0; p < m.busy_ticks.size(); ++p) {
    const double util =
        m.horizon > 0 ? static_cast<double>(m.busy_ticks[p]) / m.horizon : 0.0;
    std::cout << "utilization_" << p << "=" << util << "\n";
  }
}

int cmd_train(const std::string& history_path, const std::string& out_path,
              int states, int symbols, int window, double threshold, int iters,
              std::uint64_t seed) {
  const auto history = dcps::stream_from_csv(dcps::read_file(history_path));
  if (history.size() < static_cast<std::size_t>(window) + 1)
    throw std::invalid_argument("history too short: need at least window+1 rows");
  auto profile = dcps::train_profile(history, states, symbols, window,
                                     threshold, iters, seed);
  dcps::write_file(out_path, dcps::profile_to_string(profile));

  const double loglik =
      dcps::forward_likelihood(profile.model, profile.window).log_likelihood;
  std::cerr << "trained profile written to " << out_path << "\n"
            << "window log-likelihood: " << loglik << "\ncentroids:";
  for (double c : profile.quantizer.centroids) std::cerr << ' ' << c;
  std::cerr << "\n";
  return 0;
}

int cmd_validate(const std::string& profile_path,
                 const std::string& stream_path,
                 std::optional<double> threshold) {
  auto profile = dcps::profile_from_string(dcps::read_file(profile_path));
  if (threshold) profile.threshold = *threshold;
  const auto stream = dcps::stream_from_csv(dcps::read_file(stream_path));

  int accepted = 0, rejected = 0;
  std::cout << "index\tvalue\tsymbol\talpha1\talpha2\tdelta_rel\tverdict\n";
  for (std::size_t i = 0; i < stream.size(); ++i) {
    auto [verdict, next] = dcps::validate_next(profile, stream[i]);
    profile = std::move(next);
    (verdict.accepted ? accepted : rejected)++;
    std::printf("%zu\t%.17g\t%d\t%.17g\t%.17g\t%.17g\t%s\n", i, stream[i],
                verdict.symbol, verdict.alpha1, verdict.alpha2,
                verdict.delta_rel, verdict.accepted ? "accept" : "reject");
  }
  std::cerr << "validated " << stream.size() << " values: " << accepted
            << " accepted, " << rejected << " rejected (threshold "
            << profile.threshold << ")\n";
  return 0;
}

int cmd_simulate(const std::string& scenario_path,
                 const std::string& profile_path,
                 const std::string& trace_path) {
  const auto config =
      dcps::scenario_config_from_string(dcps::read_file(scenario_path));
  const auto profile =
      dcps::profile_from_string(dcps::read_file(profile_path));
  const auto stream = build_stream(config);
  const auto workload = dcps::scenario_to_workload(stream, config.plan);
  const auto result = dcps::run_simulation(config.sim, workload, profile);

  if (!trace_path.empty())
    dcps::write_file(trace_path, dcps::format_trace(result.trace));
  print_report(result.metrics, profile.threshold, config.seed);
  std::cerr << "simulated " << workload.size() << " processes over "
            << result.metrics.horizon << " ticks\n";
  return 0;
}

int cmd_gen(const std::string& scenario_path, const std::string& out_path) {
  const auto config =
      dcps::scenario_config_from_string(dcps::read_file(scenario_path));
  dcps::write_file(out_path, dcps::stream_to_csv(build_stream(config)));
  std::cerr << "wrote " << config.length << " values to " << out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"HMM-validated middleware toolkit"};
  app.require_subcommand(1);

  std::string history_path, profile_path, stream_path, scenario_path;
  std::string out_path = "profile.json";
  std::string trace_path;
  int states = 5, symbols = 3, window = 10, iters = 50;
  double threshold = 0.5;
  std::optional<double> threshold_override;
  std::uint64_t seed = 0;

  auto* train = app.add_subcommand("train", "Fit a validation profile from a history CSV");
  train->add_option("--history", history_path, "history CSV (index,value)")->required();
  train->add_option("--out", out_path, "output profile file");
  train->add_option("--states", states, "number of hidden states");
  train->add_option("--symbols", symbols, "number of observation symbols (k)");
  train->add_option("--window", window, "validation window length R");
  train->add_option("--threshold", threshold, "rejection threshold in [0,1]");
  train->add_option("--iters", iters, "training iterations");
  train->add_option("--seed", seed, "RNG seed");

  auto* validate = app.add_subcommand("validate", "Validate a value stream against a profile");
  validate->add_option("--profile", profile_path, "profile file")->required();
  validate->add_option("--stream", stream_path, "stream CSV (index,value)")->required();
  validate->add_option("--threshold", threshold_override,
                       "override the profile's rejection threshold");

  auto* simulate = app.add_subcommand("simulate", "Run a scenario through the middleware simulator");
  simulate->add_option("--scenario", scenario_path, "scenario config file")->required();
  simulate->add_option("--profile", profile_path, "trained profile file")->required();
  simulate->add_option("--trace", trace_path, "trace output file (TSV)");

  auto* gen = app.add_subcommand("gen-data", "Generate a synthetic value stream");
  gen->add_option("--scenario", scenario_path, "scenario config file")->required();
  gen->add_option("--out", out_path, "output stream CSV")->required();

  try {
    app.parse(argc, argv);
    if (train->parsed())
      return cmd_train(history_path, out_path, states, symbols, window,
                       threshold, iters, seed);
    if (validate->parsed())
      return cmd_validate(profile_path, stream_path, threshold_override);
    if (simulate->parsed())
      return cmd_simulate(scenario_path, profile_path, trace_path);
    if (gen->parsed()) return cmd_gen(scenario_path, out_path);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
