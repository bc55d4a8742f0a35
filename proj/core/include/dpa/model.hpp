#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dpa/rational.hpp"

namespace dpa {

/// One processing step: a uniformly distributed duration on [lo, hi) and
/// the resource units it holds while active.
struct Step {
    Rational lo, hi;
    std::map<std::string, int> demands;
};

/// A simple DPA: one sequential process of k steps.
struct SimpleDpa {
    std::string name;
    std::vector<Step> steps;
};

struct Resource {
    std::string name;
    int capacity = 1;
};

enum class SchedulerPolicy { Liberal, Priority };

struct SchedulerSpec {
    SchedulerPolicy policy = SchedulerPolicy::Liberal;
    /// Process indices (1-based) in priority order. For the liberal policy
    /// this is declaration order; it also fixes the sequentialization of
    /// simultaneous starts.
    std::vector<int> order;
};

/// A start or end event of a specific step.
struct Event {
    int process = 0;  // 1-based
    int step = 0;     // 1-based
    bool is_start = true;

    friend auto operator<=>(const Event&, const Event&) = default;
};

using History = std::vector<Event>;

/// Discrete product state: per process, the number of completed steps and
/// whether the next step is running.
struct ProcState {
    int done = 0;
    bool active = false;
    friend auto operator<=>(const ProcState&, const ProcState&) = default;
};

struct GlobalState {
    std::vector<ProcState> procs;

    std::vector<int> active_processes() const;  // 1-based indices
    friend auto operator<=>(const GlobalState&, const GlobalState&) = default;
};

class DpaModel {
public:
    std::vector<SimpleDpa> processes;
    std::vector<Resource> resources;
    SchedulerSpec scheduler;
    bool absolute_time_clock = false;

    int process_count() const { return static_cast<int>(processes.size()); }
    int step_count(int process) const {
        return static_cast<int>(processes[static_cast<std::size_t>(process - 1)].steps.size());
    }
    const Step& step(int process, int step) const {
        return processes[static_cast<std::size_t>(process - 1)]
            .steps[static_cast<std::size_t>(step - 1)];
    }
    const std::string& process_name(int process) const {
        return processes[static_cast<std::size_t>(process - 1)].name;
    }
    int total_events() const;

    GlobalState initial_state() const;
    bool is_final(const GlobalState& q) const;

    std::string event_label(const Event& e) const;
    std::string history_label(const History& h) const;
    /// Parses "<process>.s<j>" / "<process>.e<j>"; throws ModelError.
    Event parse_event(const std::string& label) const;
};

/// Parses and validates a model document (see README for the schema).
/// Rationals are read exactly from integers, decimal strings or "p/q".
DpaModel parse_model(const std::string& text);

/// The scheduler function S(q): the alpha-ordered list of start events taken
/// in q. Empty when nothing may start. Throws AnalysisError on deadlock
/// (non-final q with no active component and no start).
std::vector<Event> scheduler_decision(const DpaModel& m, const GlobalState& q);

/// The product transition relation at q: either one compound start
/// transition (start events win over pending ends) or one end transition per
/// active process.
struct Transitions {
    std::vector<Event> compound_start;  // empty when no start is scheduled
    std::vector<Event> ends;
};
Transitions product_successors(const DpaModel& m, const GlobalState& q);

GlobalState apply_start(const DpaModel& m, GlobalState q, const std::vector<Event>& starts);
GlobalState apply_end(const DpaModel& m, GlobalState q, int process);

}  // namespace dpa
