#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "dcps/validator.hpp"

namespace dcps {

enum class Periodicity { periodic, aperiodic };
enum class ResourceClass { low, medium, high };

struct SubProcessSpec {
  int duration = 1;  // ticks of required service
  double output_value = 0.0;
  // Set by scenario generators for values outside every configured layer;
  // such outputs are rejected before the HMM ever sees them.
  bool pre_flagged = false;
};

struct ProcessSpec {
  std::string id;
  Periodicity periodicity = Periodicity::periodic;
  ResourceClass resource_class = ResourceClass::low;  // aperiodic only
  long arrival_tick = 0;
  std::vector<SubProcessSpec> subprocesses;
};

using Workload = std::vector<ProcessSpec>;

enum class EventKind {
  arrival,
  dispatch,
  allocate,
  start,
  preempt,
  complete_sub,
  complete_proc,
  validated,
  rejected,
};

const char* event_kind_name(EventKind kind);

struct TraceEvent {
  long tick = 0;
  EventKind kind = EventKind::arrival;
  std::string process;
  int sub_index = -1;  // -1 for process-level events
  int processor = -1;  // -1 when no processor is involved
};

struct SimTrace {
  std::vector<TraceEvent> events;
};

/// Tab-separated trace, one event per line, suitable for golden diffs.
std::string format_trace(const SimTrace& trace);

struct SimConfig {
  int n_processors = 2;
  int quantum = 2;
  long tick_limit = 1'000'000;
  std::uint64_t seed = 0;
};

struct SimMetrics {
  long horizon = 0;
  std::vector<long> busy_ticks;
  double mean_turnaround = 0.0;  // over processes that fully completed
  int validated = 0;
  int rejected = 0;
  int pre_flagged = 0;
  bool truncated = false;
};

struct SimResult {
  SimTrace trace;
  SimMetrics metrics;
  std::optional<Profile> profile;  // final validator state, if any
};

/// Discrete-event middleware simulation: FIFO process intake, one dispatch
/// per tick into the in-flight list, least-loaded processor allocation,
/// round-robin time slicing for swappable work and run-to-completion for
/// medium/high aperiodic work. Completed subprocess outputs pass through
/// the validator when a profile is attached; a rejection cancels the rest
/// of that process.
class MiddlewareSim {
 public:
  explicit MiddlewareSim(SimConfig config,
                         std::optional<Profile> profile = std::nullopt);

  /// Enqueues a process in the manager's FIFO queue. Throws on duplicate id.
  void submit(const ProcessSpec& process);

  /// Changes how a process's not-yet-allocated subprocesses are scheduled.
  /// The currently queued subprocess keeps its existing mode.
  void reclassify(const std::string& process_id, Periodicity periodicity,
                  ResourceClass resource_class);

  /// Advances the simulation by one tick.
  void tick();

  bool quiescent() const;
  long now() const { return now_; }
  const SimTrace& trace() const { return trace_; }
  const std::optional<Profile>& profile() const { return profile_; }
  SimMetrics metrics() const;

 private:
  struct Entry {
    int proc_index;     // index into processes_
    int sub_index;
    bool preemptible;
    int quantum_used = 0;
    long ready_tick = 0;
  };
  struct Processor {
    std::deque<Entry> queue;
    long busy_ticks = 0;
    int running_proc = -1;  // what occupied the processor last executed tick
    int running_sub = -1;
  };
  struct ProcessRec {
    ProcessSpec spec;
    Periodicity periodicity;
    ResourceClass resource_class;
    std::vector<int> remaining;
    int next_sub = 0;  // next subprocess to allocate
    bool flagged = false;
    bool done = false;
    bool dispatched = false;
    long completion_tick = -1;
  };

  void dispatch();
  void allocate(int proc_index, long ready_tick);
  void on_subprocess_complete(int proc_index, int sub_index, int processor);
  void track(int processor);
  long processor_load(const Processor& p) const;
  void emit(EventKind kind, int proc_index, int sub_index, int processor);

  SimConfig config_;
  std::optional<Profile> profile_;
  long now_ = 0;
  std::vector<ProcessRec> processes_;
  std::deque<int> pm_queue_;
  std::vector<int> in_flight_;
  std::vector<Processor> processors_;
  SimTrace trace_;
  int validated_ = 0;
  int rejected_ = 0;
  int pre_flagged_ = 0;
};

/// Submits each workload process at its arrival tick and runs to
/// quiescence or the tick limit.
SimResult run_simulation(const SimConfig& config, const Workload& workload,
                         std::optional<Profile> profile = std::nullopt);

/// Per-tick processor occupancy reconstructed from start/preempt/complete
/// events: element t is the process id executing at tick t, "" when idle.
std::vector<std::string> occupancy_timeline(const SimTrace& trace,
                                            int processor, long horizon);

}  // namespace dcps
