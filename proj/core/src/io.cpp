#include "dcps/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

using nlohmann::json;

namespace dcps {

namespace {

json matrix_to_json(const std::vector<std::vector<double>>& m) {
  json flat = json::array();
  for (const auto& row : m)
    for (double v : row) flat.push_back(v);
  return flat;
}

std::vector<std::vector<double>> matrix_from_json(const json& flat, int rows,
                                                  int cols) {
  if (flat.size() != static_cast<std::size_t>(rows) * cols)
    throw std::invalid_argument("matrix has wrong element count");
  std::vector<std::vector<double>> m(rows, std::vector<double>(cols));
  std::size_t idx = 0;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m[i][j] = flat[idx++].get<double>();
  return m;
}

json model_to_json(const HmmModel& model) {
  return json{{"n_states", model.n_states},
              {"n_symbols", model.n_symbols},
              {"transition", matrix_to_json(model.transition)},
              {"emission", matrix_to_json(model.emission)},
              {"initial", model.initial}};
}

HmmModel model_from_json(const json& j) {
  HmmModel model;
  model.n_states = j.at("n_states").get<int>();
  model.n_symbols = j.at("n_symbols").get<int>();
  model.transition =
      matrix_from_json(j.at("transition"), model.n_states, model.n_states);
  model.emission =
      matrix_from_json(j.at("emission"), model.n_states, model.n_symbols);
  model.initial = j.at("initial").get<std::vector<double>>();
  return model;
}

const char* periodicity_name(Periodicity p) {
  return p == Periodicity::periodic ? "periodic" : "aperiodic";
}

Periodicity periodicity_from(const std::string& s) {
  if (s == "periodic") return Periodicity::periodic;
  if (s == "aperiodic") return Periodicity::aperiodic;
  throw std::invalid_argument("unknown periodicity: " + s);
}

const char* resource_class_name(ResourceClass c) {
  switch (c) {
    case ResourceClass::low: return "low";
    case ResourceClass::medium: return "medium";
    case ResourceClass::high: return "high";
  }
  return "low";
}

ResourceClass resource_class_from(const std::string& s) {
  if (s == "low") return ResourceClass::low;
  if (s == "medium") return ResourceClass::medium;
  if (s == "high") return ResourceClass::high;
  throw std::invalid_argument("unknown resource class: " + s);
}

std::vector<std::pair<double, double>> ranges_from(const json& j) {
  std::vector<std::pair<double, double>> out;
  for (const auto& r : j) out.emplace_back(r.at(0).get<double>(), r.at(1).get<double>());
  return out;
}

json ranges_to(const std::vector<std::pair<double, double>>& ranges) {
  json out = json::array();
  for (const auto& [lo, hi] : ranges) out.push_back(json::array({lo, hi}));
  return out;
}

}  // namespace

std::string model_to_string(const HmmModel& model) {
  return model_to_json(model).dump(2) + "\n";
}

HmmModel model_from_string(const std::string& text) {
  return model_from_json(json::parse(text));
}

std::string profile_to_string(const Profile& profile) {
  json j{{"format", "dcps-profile-v1"},
         {"model", model_to_json(profile.model)},
         {"centroids", profile.quantizer.centroids},
         {"window", profile.window},
         {"window_length", profile.window_length},
         {"threshold", profile.threshold}};
  return j.dump(2) + "\n";
}

Profile profile_from_string(const std::string& text) {
  const json j = json::parse(text);
  if (j.at("format").get<std::string>() != "dcps-profile-v1")
    throw std::invalid_argument("unsupported profile format tag");
  Profile profile;
  profile.model = model_from_json(j.at("model"));
  profile.quantizer.centroids = j.at("centroids").get<std::vector<double>>();
  profile.window = j.at("window").get<std::vector<int>>();
  profile.window_length = j.at("window_length").get<int>();
  profile.threshold = j.at("threshold").get<double>();
  return profile;
}

std::string workload_to_string(const Workload& workload) {
  json out = json::array();
  for (const auto& proc : workload) {
    json subs = json::array();
    for (const auto& sub : proc.subprocesses) {
      json s = json::array({sub.duration, sub.output_value});
      if (sub.pre_flagged) s.push_back(true);
      subs.push_back(s);
    }
    out.push_back({{"id", proc.id},
                   {"periodicity", periodicity_name(proc.periodicity)},
                   {"resource_class", resource_class_name(proc.resource_class)},
                   {"arrival_tick", proc.arrival_tick},
                   {"subprocesses", subs}});
  }
  return out.dump(2) + "\n";
}

Workload workload_from_string(const std::string& text) {
  Workload workload;
  for (const auto& j : json::parse(text)) {
    ProcessSpec proc;
    proc.id = j.at("id").get<std::string>();
    proc.periodicity = periodicity_from(j.at("periodicity").get<std::string>());
    proc.resource_class =
        resource_class_from(j.at("resource_class").get<std::string>());
    proc.arrival_tick = j.at("arrival_tick").get<long>();
    for (const auto& s : j.at("subprocesses")) {
      SubProcessSpec sub;
      sub.duration = s.at(0).get<int>();
      sub.output_value = s.at(1).get<double>();
      if (s.size() > 2) sub.pre_flagged = s.at(2).get<bool>();
      proc.subprocesses.push_back(sub);
    }
    workload.push_back(std::move(proc));
  }
  return workload;
}

std::string scenario_config_to_string(const ScenarioConfig& config) {
  json j{{"kind", config.kind == WorkloadPlan::Kind::card ? "card" : "transfer"},
         {"length", config.length},
         {"seed", config.seed},
         {"states", config.n_states},
         {"symbols", config.n_symbols},
         {"window", config.window_length},
         {"threshold", config.threshold},
         {"train_iters", config.train_iters},
         {"processors", config.sim.n_processors},
         {"quantum", config.sim.quantum},
         {"ticks_limit", config.sim.tick_limit}};
  if (config.kind == WorkloadPlan::Kind::card) {
    const char* kind_name =
        config.card.kind == SpenderKind::low_spender      ? "low_spender"
        : config.card.kind == SpenderKind::medium_spender ? "medium_spender"
                                                          : "high_spender";
    j["card"] = {{"kind", kind_name},
                 {"ranges", ranges_to(config.card.range_bounds)},
                 {"mix", config.card.mix}};
    j["card_duration"] = config.plan.card_duration;
  } else {
    j["layers"] = ranges_to(config.layers.layers);
    j["ticks_per_byte"] = config.plan.ticks_per_byte;
  }
  json inj = json::array();
  for (const auto& i : config.injections)
    inj.push_back(json::array({i.position, i.value}));
  j["injections"] = inj;
  j["arrival_spacing"] = config.plan.arrival_spacing;
  return j.dump(2) + "\n";
}

ScenarioConfig scenario_config_from_string(const std::string& text) {
  const json j = json::parse(text);
  ScenarioConfig config;
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "card") {
    config.kind = WorkloadPlan::Kind::card;
  } else if (kind == "transfer") {
    config.kind = WorkloadPlan::Kind::transfer;
  } else {
    throw std::invalid_argument("unknown scenario kind: " + kind);
  }
  config.length = j.at("length").get<std::size_t>();
  config.seed = j.at("seed").get<std::uint64_t>();
  config.n_states = j.value("states", config.n_states);
  config.n_symbols = j.value("symbols", config.n_symbols);
  config.window_length = j.value("window", config.window_length);
  config.threshold = j.value("threshold", config.threshold);
  config.train_iters = j.value("train_iters", config.train_iters);
  config.sim.n_processors = j.value("processors", config.sim.n_processors);
  config.sim.quantum = j.value("quantum", config.sim.quantum);
  config.sim.tick_limit = j.value("ticks_limit", config.sim.tick_limit);
  config.plan.kind = config.kind;
  config.plan.arrival_spacing = j.value("arrival_spacing", 1L);
  if (config.kind == WorkloadPlan::Kind::card) {
    const auto& card = j.at("card");
    const auto name = card.at("kind").get<std::string>();
    if (name == "low_spender") config.card.kind = SpenderKind::low_spender;
    else if (name == "medium_spender") config.card.kind = SpenderKind::medium_spender;
    else if (name == "high_spender") config.card.kind = SpenderKind::high_spender;
    else throw std::invalid_argument("unknown spender kind: " + name);
    config.card.range_bounds = ranges_from(card.at("ranges"));
    config.card.mix = card.at("mix").get<std::vector<double>>();
    config.plan.card_duration = j.value("card_duration", 1);
  } else {
    config.layers.layers = ranges_from(j.at("layers"));
    config.plan.layers = config.layers;
    config.plan.ticks_per_byte = j.value("ticks_per_byte", 1.0);
  }
  if (j.contains("injections"))
    for (const auto& i : j.at("injections"))
      config.injections.push_back(
          {i.at(0).get<std::size_t>(), i.at(1).get<double>()});
  return config;
}

std::string stream_to_csv(const std::vector<double>& stream) {
  std::ostringstream out;
  out << "index,value\n";
  char buf[64];
  for (std::size_t i = 0; i < stream.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", stream[i]);
    out << i << ',' << buf << '\n';
  }
  return out.str();
}

std::vector<double> stream_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line))
    throw std::invalid_argument("empty CSV stream");
  std::vector<double> values;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("malformed CSV row: " + line);
    values.push_back(std::stod(line.substr(comma + 1)));
  }
  return values;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

}  // namespace dcps
