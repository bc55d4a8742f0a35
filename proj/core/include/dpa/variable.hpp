#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace dpa {

/// Named analysis variables. The ordering below doubles as the pivot
/// preference of the equality normal form: when an equation links several
/// variables, the largest one is expressed in terms of the smaller. Ranking
/// auxiliary > clock > duration > absolute-time means integration variables
/// collapse first, clocks pin to durations, and the absolute-time clock
/// stays free for makespan marginals.
enum class VarKind : std::uint8_t {
    AbsoluteTime = 0,  // the never-reset clock measuring total elapsed time
    Duration = 1,      // y_i^j, the drawn duration of a step
    Clock = 2,         // x_i^j, time since the step's start transition
    Auxiliary = 3,     // transient integration variables (time shift)
};

struct Variable {
    VarKind kind = VarKind::Clock;
    std::int32_t process = 0;  // 1-based; 0 for absolute-time/auxiliary
    std::int32_t step = 0;     // 1-based; 0 for absolute-time/auxiliary

    friend auto operator<=>(const Variable&, const Variable&) = default;

    static Variable clock(int process, int step) { return {VarKind::Clock, process, step}; }
    static Variable duration(int process, int step) { return {VarKind::Duration, process, step}; }
    static Variable absolute_time() { return {VarKind::AbsoluteTime, 0, 0}; }
    static Variable auxiliary(int id = 0) { return {VarKind::Auxiliary, id, 0}; }

    std::string name() const {
        switch (kind) {
            case VarKind::AbsoluteTime: return "t";
            case VarKind::Auxiliary: return process == 0 ? "tau" : "tau" + std::to_string(process);
            case VarKind::Clock:
                return "x" + std::to_string(process) + "." + std::to_string(step);
            case VarKind::Duration:
                return "y" + std::to_string(process) + "." + std::to_string(step);
        }
        return "?";
    }
};

}  // namespace dpa
