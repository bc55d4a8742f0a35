#include "dpa/model.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

#include "dpa/errors.hpp"

namespace dpa {

using nlohmann::json;

std::vector<int> GlobalState::active_processes() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < procs.size(); ++i)
        if (procs[i].active) out.push_back(static_cast<int>(i) + 1);
    return out;
}

int DpaModel::total_events() const {
    int n = 0;
    for (const auto& p : processes) n += 2 * static_cast<int>(p.steps.size());
    return n;
}

GlobalState DpaModel::initial_state() const {
    GlobalState q;
    q.procs.resize(processes.size());
    return q;
}

bool DpaModel::is_final(const GlobalState& q) const {
    for (std::size_t i = 0; i < q.procs.size(); ++i) {
        if (q.procs[i].active) return false;
        if (q.procs[i].done != static_cast<int>(processes[i].steps.size())) return false;
    }
    return true;
}

std::string DpaModel::event_label(const Event& e) const {
    return process_name(e.process) + (e.is_start ? ".s" : ".e") + std::to_string(e.step);
}

std::string DpaModel::history_label(const History& h) const {
    std::string s;
    for (const auto& e : h) {
        if (!s.empty()) s += " ";
        s += event_label(e);
    }
    return s;
}

Event DpaModel::parse_event(const std::string& label) const {
    const auto dot = label.rfind('.');
    if (dot == std::string::npos || dot + 2 >= label.size())
        throw ModelError("malformed event label '" + label + "' (expected <process>.s<j> or <process>.e<j>)");
    const std::string pname = label.substr(0, dot);
    const char kind = label[dot + 1];
    if (kind != 's' && kind != 'e')
        throw ModelError("malformed event label '" + label + "'");
    int step = 0;
    try {
        step = std::stoi(label.substr(dot + 2));
    } catch (const std::exception&) {
        throw ModelError("malformed event label '" + label + "'");
    }
    for (int i = 1; i <= process_count(); ++i) {
        if (process_name(i) == pname) {
            if (step < 1 || step > step_count(i))
                throw ModelError("unknown step in event label '" + label + "'");
            return Event{i, step, kind == 's'};
        }
    }
    throw ModelError("unknown process in event label '" + label + "'");
}

namespace {

Rational parse_bound(const json& j, const std::string& path) {
    if (j.is_number_integer()) return Rational(Integer(static_cast<long>(j.get<std::int64_t>())));
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number())
        throw ModelError(path + ": non-integer numbers lose exactness; write \"" + j.dump() +
                         "\" as a string (decimal or p/q)");
    throw ModelError(path + ": expected integer or rational string");
}

std::pair<int, int> line_of_offset(const std::string& text, std::size_t byte) {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

}  // namespace

DpaModel parse_model(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        auto [line, col] = line_of_offset(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ModelError("syntax error at line " + std::to_string(line) + ", column " +
                         std::to_string(col) + ": " + e.what());
    }
    if (!doc.is_object()) throw ModelError("model document must be a JSON object");

    DpaModel m;
    if (!doc.contains("processes") || !doc["processes"].is_array() || doc["processes"].empty())
        throw ModelError("processes: at least one process required");

    std::set<std::string> names;
    std::size_t pi = 0;
    for (const auto& pj : doc["processes"]) {
        const std::string ppath = "processes[" + std::to_string(pi) + "]";
        SimpleDpa p;
        if (!pj.contains("name") || !pj["name"].is_string())
            throw ModelError(ppath + ".name: required string");
        p.name = pj["name"].get<std::string>();
        if (!names.insert(p.name).second)
            throw ModelError(ppath + ".name: duplicate process name '" + p.name + "'");
        if (!pj.contains("steps") || !pj["steps"].is_array() || pj["steps"].empty())
            throw ModelError(ppath + ".steps: at least one step required");
        std::size_t si = 0;
        for (const auto& sj : pj["steps"]) {
            const std::string spath = ppath + ".steps[" + std::to_string(si) + "]";
            Step s;
            if (!sj.contains("lo") || !sj.contains("hi"))
                throw ModelError(spath + ": lo and hi required");
            s.lo = parse_bound(sj["lo"], spath + ".lo");
            s.hi = parse_bound(sj["hi"], spath + ".hi");
            if (s.lo < 0) throw ModelError(spath + ": lo must be nonnegative");
            if (!(s.lo < s.hi))
                throw ModelError(spath + ": invalid support, lo must be strictly below hi");
            if (sj.contains("resources")) {
                if (!sj["resources"].is_object())
                    throw ModelError(spath + ".resources: expected object");
                for (const auto& [rname, units] : sj["resources"].items()) {
                    if (!units.is_number_integer() || units.get<int>() < 0)
                        throw ModelError(spath + ".resources['" + rname +
                                         "']: expected nonnegative integer");
                    s.demands[rname] = units.get<int>();
                }
            }
            p.steps.push_back(std::move(s));
            ++si;
        }
        m.processes.push_back(std::move(p));
        ++pi;
    }

    std::set<std::string> resource_names;
    if (doc.contains("resources")) {
        if (!doc["resources"].is_array()) throw ModelError("resources: expected array");
        std::size_t ri = 0;
        for (const auto& rj : doc["resources"]) {
            const std::string rpath = "resources[" + std::to_string(ri) + "]";
            Resource r;
            if (!rj.contains("name") || !rj["name"].is_string())
                throw ModelError(rpath + ".name: required string");
            r.name = rj["name"].get<std::string>();
            if (!resource_names.insert(r.name).second)
                throw ModelError(rpath + ".name: duplicate resource name '" + r.name + "'");
            if (!rj.contains("capacity") || !rj["capacity"].is_number_integer() ||
                rj["capacity"].get<int>() < 1)
                throw ModelError(rpath + ".capacity: required positive integer");
            r.capacity = rj["capacity"].get<int>();
            m.resources.push_back(std::move(r));
            ++ri;
        }
    }

    // demands must name declared resources and fit their capacity
    for (std::size_t i = 0; i < m.processes.size(); ++i) {
        for (std::size_t j = 0; j < m.processes[i].steps.size(); ++j) {
            for (const auto& [rname, units] : m.processes[i].steps[j].demands) {
                const std::string dpath = "processes[" + std::to_string(i) + "].steps[" +
                                          std::to_string(j) + "].resources['" + rname + "']";
                auto it = std::find_if(m.resources.begin(), m.resources.end(),
                                       [&](const Resource& r) { return r.name == rname; });
                if (it == m.resources.end())
                    throw ModelError(dpath + ": unknown resource '" + rname + "'");
                if (units > it->capacity)
                    throw ModelError(dpath + ": demand " + std::to_string(units) +
                                     " exceeds capacity " + std::to_string(it->capacity) +
                                     "; the step could never start");
            }
        }
    }

    m.scheduler.policy = SchedulerPolicy::Liberal;
    for (int i = 1; i <= m.process_count(); ++i) m.scheduler.order.push_back(i);
    if (doc.contains("scheduler")) {
        const auto& sj = doc["scheduler"];
        if (!sj.is_object() || !sj.contains("policy") || !sj["policy"].is_string())
            throw ModelError("scheduler.policy: required string");
        const std::string policy = sj["policy"].get<std::string>();
        if (policy == "liberal") {
            m.scheduler.policy = SchedulerPolicy::Liberal;
        } else if (policy == "priority") {
            m.scheduler.policy = SchedulerPolicy::Priority;
            if (!sj.contains("order") || !sj["order"].is_array())
                throw ModelError("scheduler.order: required for the priority policy");
            m.scheduler.order.clear();
            std::set<int> seen;
            for (const auto& oj : sj["order"]) {
                if (!oj.is_string()) throw ModelError("scheduler.order: expected process names");
                const std::string name = oj.get<std::string>();
                int idx = 0;
                for (int i = 1; i <= m.process_count(); ++i)
                    if (m.process_name(i) == name) idx = i;
                if (idx == 0) throw ModelError("scheduler.order: unknown process '" + name + "'");
                if (!seen.insert(idx).second)
                    throw ModelError("scheduler.order: duplicate process '" + name + "'");
                m.scheduler.order.push_back(idx);
            }
            if (static_cast<int>(m.scheduler.order.size()) != m.process_count())
                throw ModelError("scheduler.order: must list every process exactly once");
        } else {
            throw ModelError("scheduler.policy: expected 'liberal' or 'priority'");
        }
    }

    if (doc.contains("options")) {
        const auto& oj = doc["options"];
        if (!oj.is_object()) throw ModelError("options: expected object");
        if (oj.contains("absolute_time_clock")) {
            if (!oj["absolute_time_clock"].is_boolean())
                throw ModelError("options.absolute_time_clock: expected boolean");
            m.absolute_time_clock = oj["absolute_time_clock"].get<bool>();
        }
    }
    return m;
}

std::vector<Event> scheduler_decision(const DpaModel& m, const GlobalState& q) {
    std::vector<Event> starts;
    if (m.scheduler.policy == SchedulerPolicy::Liberal) {
        for (int i : m.scheduler.order) {
            const ProcState& ps = q.procs[static_cast<std::size_t>(i - 1)];
            if (!ps.active && ps.done < m.step_count(i)) starts.push_back(Event{i, ps.done + 1, true});
        }
    } else {
        // remaining capacity after the active steps
        std::map<std::string, int> remaining;
        for (const auto& r : m.resources) remaining[r.name] = r.capacity;
        for (int i : q.active_processes()) {
            const Step& s = m.step(i, q.procs[static_cast<std::size_t>(i - 1)].done + 1);
            for (const auto& [rname, units] : s.demands) remaining[rname] -= units;
        }
        for (int i : m.scheduler.order) {
            const ProcState& ps = q.procs[static_cast<std::size_t>(i - 1)];
            if (ps.active || ps.done >= m.step_count(i)) continue;
            const Step& s = m.step(i, ps.done + 1);
            bool fits = true;
            for (const auto& [rname, units] : s.demands) fits = fits && units <= remaining[rname];
            if (!fits) continue;
            for (const auto& [rname, units] : s.demands) remaining[rname] -= units;
            starts.push_back(Event{i, ps.done + 1, true});
        }
    }
    if (starts.empty() && !m.is_final(q) && q.active_processes().empty())
        throw AnalysisError("scheduler deadlock: no start scheduled in a non-final state "
                            "with no active process");
    return starts;
}

Transitions product_successors(const DpaModel& m, const GlobalState& q) {
    Transitions t;
    t.compound_start = scheduler_decision(m, q);
    if (!t.compound_start.empty()) return t;
    for (int i : q.active_processes())
        t.ends.push_back(Event{i, q.procs[static_cast<std::size_t>(i - 1)].done + 1, false});
    return t;
}

GlobalState apply_start(const DpaModel& m, GlobalState q, const std::vector<Event>& starts) {
    for (const auto& e : starts) {
        ProcState& ps = q.procs[static_cast<std::size_t>(e.process - 1)];
        if (ps.active || ps.done + 1 != e.step)
            throw AnalysisError("start not enabled: " + m.event_label(e));
        ps.active = true;
    }
    return q;
}

GlobalState apply_end(const DpaModel& m, GlobalState q, int process) {
    ProcState& ps = q.procs[static_cast<std::size_t>(process - 1)];
    if (!ps.active) throw AnalysisError("end of inactive process " + m.process_name(process));
    ps.active = false;
    ps.done += 1;
    return q;
}

}  // namespace dpa
