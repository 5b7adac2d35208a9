#include "dcps/sim.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace dcps {

const char* event_kind_name(EventKind kind) {
  switch (kind) {
    case EventKind::arrival: return "arrival";
    case EventKind::dispatch: return "dispatch";
    case EventKind::allocate: return "allocate";
    case EventKind::start: return "start";
    case EventKind::preempt: return "preempt";
    case EventKind::complete_sub: return "complete_sub";
    case EventKind::complete_proc: return "complete_proc";
    case EventKind::validated: return "validated";
    case EventKind::rejected: return "rejected";
  }
  return "unknown";
}

std::string format_trace(const SimTrace& trace) {
  std::ostringstream out;
  for (const auto& e : trace.events) {
    out << e.tick << '\t' << event_kind_name(e.kind) << '\t' << e.process
        << '\t' << e.sub_index << '\t' << e.processor << '\n';
  }
  return out.str();
}

MiddlewareSim::MiddlewareSim(SimConfig config, std::optional<Profile> profile)
    : config_(config), profile_(std::move(profile)) {
  if (config_.n_processors < 1)
    throw std::invalid_argument("need at least one processor");
  if (config_.quantum < 1) throw std::invalid_argument("quantum must be >= 1");
  processors_.resize(config_.n_processors);
}

void MiddlewareSim::emit(EventKind kind, int proc_index, int sub_index,
                         int processor) {
  trace_.events.push_back({now_, kind,
                           proc_index >= 0 ? processes_[proc_index].spec.id
                                           : std::string{},
                           sub_index, processor});
}

void MiddlewareSim::submit(const ProcessSpec& process) {
  if (process.subprocesses.empty())
    throw std::invalid_argument("process has no subprocesses");
  for (const auto& rec : processes_)
    if (rec.spec.id == process.id)
      throw std::invalid_argument("duplicate process id: " + process.id);
  for (const auto& sub : process.subprocesses)
    if (sub.duration < 1)
      throw std::invalid_argument("subprocess duration must be >= 1");

  ProcessRec rec;
  rec.spec = process;
  rec.periodicity = process.periodicity;
  rec.resource_class = process.resource_class;
  for (const auto& sub : process.subprocesses)
    rec.remaining.push_back(sub.duration);
  processes_.push_back(std::move(rec));
  const int index = static_cast<int>(processes_.size()) - 1;
  pm_queue_.push_back(index);
  emit(EventKind::arrival, index, -1, -1);
}

void MiddlewareSim::reclassify(const std::string& process_id,
                               Periodicity periodicity,
                               ResourceClass resource_class) {
  for (auto& rec : processes_) {
    if (rec.spec.id == process_id) {
      rec.periodicity = periodicity;
      rec.resource_class = resource_class;
      return;
    }
  }
  throw std::invalid_argument("unknown process id: " + process_id);
}

long MiddlewareSim::processor_load(const Processor& p) const {
  long load = 0;
  for (const auto& e : p.queue)
    load += processes_[e.proc_index].remaining[e.sub_index];
  return load;
}

void MiddlewareSim::dispatch() {
  // The allocator accepts one process per tick from the manager's queue.
  if (pm_queue_.empty()) return;
  const int index = pm_queue_.front();
  pm_queue_.pop_front();
  processes_[index].dispatched = true;
  in_flight_.push_back(index);
  emit(EventKind::dispatch, index, -1, -1);
  allocate(index, now_);
}

void MiddlewareSim::allocate(int proc_index, long ready_tick) {
  auto& rec = processes_[proc_index];
  const int sub = rec.next_sub;
  int best = 0;
  long best_load = processor_load(processors_[0]);
  for (int p = 1; p < config_.n_processors; ++p) {
    const long load = processor_load(processors_[p]);
    if (load < best_load) {
      best_load = load;
      best = p;
    }
  }
  // Swappable work: periodic, or aperiodic in the low resource class.
  const bool preemptible = rec.periodicity == Periodicity::periodic ||
                           rec.resource_class == ResourceClass::low;
  Entry entry{proc_index, sub, preemptible, 0, ready_tick};
  processors_[best].queue.push_back(entry);
  emit(EventKind::allocate, proc_index, sub, best);
}

void MiddlewareSim::on_subprocess_complete(int proc_index, int sub_index,
                                           int processor) {
  auto& rec = processes_[proc_index];
  const auto& sub = rec.spec.subprocesses[sub_index];

  bool accepted = true;
  if (sub.pre_flagged) {
    emit(EventKind::rejected, proc_index, sub_index, processor);
    ++pre_flagged_;
    accepted = false;
  } else if (profile_) {
    auto [verdict, next] = validate_next(*profile_, sub.output_value);
    profile_ = std::move(next);
    if (verdict.accepted) {
      emit(EventKind::validated, proc_index, sub_index, processor);
      ++validated_;
    } else {
      emit(EventKind::rejected, proc_index, sub_index, processor);
      ++rejected_;
      accepted = false;
    }
  }

  if (!accepted) {
    // Fail-stop: flag the process and cancel its remaining subprocesses.
    rec.flagged = true;
    rec.done = true;
    return;
  }

  rec.next_sub = sub_index + 1;
  if (rec.next_sub < static_cast<int>(rec.spec.subprocesses.size())) {
    // The released subprocess begins service on the following tick.
    allocate(proc_index, now_ + 1);
  } else {
    rec.done = true;
    rec.completion_tick = now_;
    emit(EventKind::complete_proc, proc_index, -1, processor);
  }
}

void MiddlewareSim::track(int /*processor*/) {
  // Completed and flagged processes leave the in-flight list once a
  // processor reports idle.
  std::erase_if(in_flight_,
                [this](int index) { return processes_[index].done; });
}

void MiddlewareSim::tick() {
  dispatch();

  for (int p = 0; p < config_.n_processors; ++p) {
    auto& proc = processors_[p];
    if (proc.queue.empty()) {
      proc.running_proc = proc.running_sub = -1;
      continue;
    }
    Entry& entry = proc.queue.front();
    if (entry.ready_tick > now_) {
      proc.running_proc = proc.running_sub = -1;
      continue;
    }
    auto& rec = processes_[entry.proc_index];
    if (proc.running_proc != entry.proc_index ||
        proc.running_sub != entry.sub_index) {
      emit(EventKind::start, entry.proc_index, entry.sub_index, p);
      proc.running_proc = entry.proc_index;
      proc.running_sub = entry.sub_index;
    }

    --rec.remaining[entry.sub_index];
    ++entry.quantum_used;
    ++proc.busy_ticks;

    if (rec.remaining[entry.sub_index] == 0) {
      const int proc_index = entry.proc_index;
      const int sub_index = entry.sub_index;
      emit(EventKind::complete_sub, proc_index, sub_index, p);
      proc.queue.pop_front();
      on_subprocess_complete(proc_index, sub_index, p);
      if (proc.queue.empty()) track(p);
    } else if (entry.preemptible && entry.quantum_used >= config_.quantum) {
      if (proc.queue.size() > 1) {
        emit(EventKind::preempt, entry.proc_index, entry.sub_index, p);
        Entry rotated = entry;
        rotated.quantum_used = 0;
        proc.queue.pop_front();
        proc.queue.push_back(rotated);
      } else {
        entry.quantum_used = 0;
      }
    }
  }
  ++now_;
}

bool MiddlewareSim::quiescent() const {
  if (!pm_queue_.empty()) return false;
  for (const auto& p : processors_)
    if (!p.queue.empty()) return false;
  return true;
}

SimMetrics MiddlewareSim::metrics() const {
  SimMetrics m;
  m.horizon = now_;
  for (const auto& p : processors_) m.busy_ticks.push_back(p.busy_ticks);
  long total = 0;
  int completed = 0;
  for (const auto& rec : processes_) {
    if (rec.completion_tick >= 0) {
      total += rec.completion_tick - rec.spec.arrival_tick + 1;
      ++completed;
    }
  }
  m.mean_turnaround = completed > 0 ? static_cast<double>(total) / completed : 0.0;
  m.validated = validated_;
  m.rejected = rejected_;
  m.pre_flagged = pre_flagged_;
  return m;
}

SimResult run_simulation(const SimConfig& config, const Workload& workload,
                         std::optional<Profile> profile) {
  MiddlewareSim sim(config, std::move(profile));

  Workload sorted = workload;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const ProcessSpec& a, const ProcessSpec& b) {
                     return a.arrival_tick < b.arrival_tick;
                   });

  std::size_t next_arrival = 0;
  bool truncated = false;
  while (true) {
    while (next_arrival < sorted.size() &&
           sorted[next_arrival].arrival_tick <= sim.now()) {
      sim.submit(sorted[next_arrival]);
      ++next_arrival;
    }
    if (sim.quiescent() && next_arrival == sorted.size()) break;
    if (sim.now() >= config.tick_limit) {
      truncated = true;
      break;
    }
    sim.tick();
  }

  SimResult result;
  result.trace = sim.trace();
  result.metrics = sim.metrics();
  result.metrics.truncated = truncated;
  result.profile = sim.profile();
  return result;
}

std::vector<std::string> occupancy_timeline(const SimTrace& trace,
                                            int processor, long horizon) {
  std::vector<std::string> timeline(horizon);
  std::string open_id;
  long open_tick = -1;
  for (const auto& e : trace.events) {
    if (e.processor != processor) continue;
    switch (e.kind) {
      case EventKind::start:
        open_id = e.process;
        open_tick = e.tick;
        break;
      case EventKind::preempt:
      case EventKind::complete_sub:
        if (open_tick >= 0 && e.process == open_id) {
          for (long t = open_tick; t <= e.tick && t < horizon; ++t)
            timeline[t] = open_id;
          open_tick = -1;
        }
        break;
      default:
        break;
    }
  }
  return timeline;
}

}  // namespace dcps
