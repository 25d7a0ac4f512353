#pragma once

#include <optional>
#include <string>
#include <vector>

#include "opshift/schedule.hpp"

namespace opshift {

enum class ConstraintFamily {
    Mandatory,
    SingleAssign,
    Enabled,
    Bandwidth,
    ShiftWindow,
    ShiftLength,
    BreakTotal,
    BreakWindow,
    BreakMinRun,
    PrepTime,
    GroupLimit,
    Rest,
};

inline const char* to_string(ConstraintFamily f) {
    switch (f) {
        case ConstraintFamily::Mandatory: return "Mandatory";
        case ConstraintFamily::SingleAssign: return "SingleAssign";
        case ConstraintFamily::Enabled: return "Enabled";
        case ConstraintFamily::Bandwidth: return "Bandwidth";
        case ConstraintFamily::ShiftWindow: return "ShiftWindow";
        case ConstraintFamily::ShiftLength: return "ShiftLength";
        case ConstraintFamily::BreakTotal: return "BreakTotal";
        case ConstraintFamily::BreakWindow: return "BreakWindow";
        case ConstraintFamily::BreakMinRun: return "BreakMinRun";
        case ConstraintFamily::PrepTime: return "PrepTime";
        case ConstraintFamily::GroupLimit: return "GroupLimit";
        case ConstraintFamily::Rest: return "Rest";
    }
    return "?";
}

struct Violation {
    ConstraintFamily family;
    int shift_id = -1;  // external ids; -1 when not applicable
    int task_id = -1;
    Bucket bucket = -1;
    std::string detail;
};

struct FeasibilityReport {
    bool ok = true;
    std::vector<Violation> violations;

    void add(ConstraintFamily f, int shift_id, int task_id, Bucket bucket, std::string detail) {
        ok = false;
        violations.push_back({f, shift_id, task_id, bucket, std::move(detail)});
    }
};

/// Thrown when a probe is asked about a pair the eligibility table excludes;
/// deliberately distinct from a feasible=false probe result.
class IneligiblePairError : public std::logic_error {
public:
    IneligiblePairError(int task_id, int shift_id)
        : std::logic_error("task " + std::to_string(task_id) + " is not eligible on shift " +
                           std::to_string(shift_id)) {}
};

// --------------------------------------------------------------------------
// Break planning

/// Plans break runs for a shift window over a busy profile (absolute bucket
/// indexing, zero meaning idle). Returns the sorted break-bucket set, or
/// nullopt when the required total cannot be placed.
///
/// Runs are carved one per idle gap, largest capacity first (ties earliest),
/// trimmed to what is still needed but never below the minimum run length.
/// One maximal run per gap is exact here: splitting a run inside a gap only
/// shrinks the achievable total, and gaps are independent.
template <typename BusyFn>
std::optional<std::vector<Bucket>> plan_breaks(const Availability& av, const Operator& op,
                                               Bucket work_start, Bucket work_end, Bucket prep,
                                               BusyFn&& busy) {
    const Bucket len = work_end - work_start;
    if (len <= av.max_len_without_break) return std::vector<Bucket>{};
    const Bucket beta = std::max<Bucket>(op.min_partial_break, 1);
    const Bucket gamma = op.min_total_break;
    if (gamma == 0) return std::vector<Bucket>{};
    const Bucket window_lo = work_start + av.break_window_open;
    const Bucket window_hi = std::min(work_end, work_start + av.break_window_close);

    struct Gap { Bucket lo; Bucket cap; };
    std::vector<Gap> gaps;
    Bucket t = work_start;
    while (t < work_end) {
        if (busy(t) != 0) { ++t; continue; }
        Bucket a = t;
        while (t < work_end && busy(t) == 0) ++t;
        Bucket b = t;  // maximal idle [a, b)
        Bucket lo = std::max(a, window_lo);
        Bucket hi = std::min(b, window_hi);
        Bucket end_limit = (b == work_end) ? hi : std::min(hi, b - prep);
        if (end_limit - lo >= beta) gaps.push_back({lo, end_limit - lo});
    }
    std::sort(gaps.begin(), gaps.end(), [](const Gap& x, const Gap& y) {
        if (x.cap != y.cap) return x.cap > y.cap;
        return x.lo < y.lo;
    });

    std::vector<Bucket> breaks;
    Bucket needed = gamma;
    for (const Gap& g : gaps) {
        Bucket take = std::min(g.cap, std::max(beta, needed));
        for (Bucket i = 0; i < take; ++i) breaks.push_back(g.lo + i);
        needed -= take;
        if (needed <= 0) break;
    }
    if (needed > 0) return std::nullopt;
    std::sort(breaks.begin(), breaks.end());
    return breaks;
}

// --------------------------------------------------------------------------
// Incremental insertion

/// Everything needed to turn a feasible probe into a committed insertion.
struct InsertPlan {
    int task_index = -1;
    int shift_index = -1;
    bool enables = false;
    Bucket work_start = 0;
    Bucket work_end = 0;
    bool window_changed = false;
    std::vector<Bucket> breaks;
    int deviation = 0;
    int bandwidth60 = 0;
};

namespace detail {

/// Pads [start, end) up to min_len inside [lo, hi), end side first.
inline void pad_window(Bucket& start, Bucket& end, Bucket min_len, Bucket lo, Bucket hi) {
    Bucket need = min_len - (end - start);
    if (need <= 0) return;
    Bucket add_end = std::min<Bucket>(hi - end, (need + 1) / 2);
    Bucket add_start = std::min<Bucket>(start - lo, need - add_end);
    add_end = std::min<Bucket>(hi - end, need - add_start);
    start -= add_start;
    end += add_end;
}

}  // namespace detail

/// Feasibility probe for one eligible (task, shift) pair: finds the minimal
/// window mutation, re-plans breaks, and checks bandwidth, group and rest
/// rules. Returns nullopt when no insertion exists under the window policy.
/// Throws IneligiblePairError for pairs outside the eligibility table.
inline std::optional<InsertPlan> probe_insert(const Schedule& sched, int task_id, int shift_index) {
    const Instance& inst = sched.instance();
    const Task& task = inst.task(task_id);
    const int ti = inst.task_index(task_id);
    const SkillPenalty* entry = inst.eligibility_entry(task_id, shift_index);
    if (entry == nullptr)
        throw IneligiblePairError(task_id, inst.shift(shift_index).shift_id);
    if (sched.shift_of_task_index(ti) >= 0)
        throw std::logic_error("task " + std::to_string(task_id) + " is already assigned");

    const Availability& av = inst.availability(shift_index);
    const ShiftPlan& plan = sched.plan(shift_index);

    InsertPlan out;
    out.task_index = ti;
    out.shift_index = shift_index;
    out.deviation = entry->deviation;
    out.bandwidth60 = entry->bandwidth60;

    Bucket ws, we;
    if (plan.enabled) {
        ws = std::min(plan.work_start, task.start);
        we = std::max(plan.work_end, task.end);
    } else {
        ws = task.start;
        we = task.end;
        out.enables = true;
    }
    detail::pad_window(ws, we, av.min_shift_len, av.earliest_start, av.latest_end);
    if (we - ws > av.max_shift_len) return std::nullopt;
    out.work_start = ws;
    out.work_end = we;
    out.window_changed = out.enables || ws != plan.work_start || we != plan.work_end;

    for (Bucket t = task.start; t < task.end; ++t) {
        if (sched.usage60(shift_index, t) + entry->bandwidth60 > kCapacity60) return std::nullopt;
        if (sched.group_count_at(shift_index, t, task.group) == 0 &&
            sched.distinct_groups_at(shift_index, t) >= inst.group_parallel_limit())
            return std::nullopt;
    }

    // rest between this window and the operator's other enabled shifts
    const Operator& op = inst.shift_operator(shift_index);
    const ShiftRef& ref = inst.shift(shift_index);
    for (int ai = 0; ai < static_cast<int>(op.availabilities.size()); ++ai) {
        if (ai == ref.availability_index) continue;
        int other_index = inst.shift_index_of(op.availabilities[ai].shift_id);
        const ShiftPlan& other = sched.plan(other_index);
        if (!other.enabled) continue;
        if (other.work_end <= ws) {
            if (ws - other.work_end < op.min_rest) return std::nullopt;
        } else if (we <= other.work_start) {
            if (other.work_start - we < op.min_rest) return std::nullopt;
        } else {
            return std::nullopt;  // overlapping windows can never rest
        }
    }

    auto breaks = plan_breaks(av, op, ws, we, inst.prep_time(), [&](Bucket t) {
        int u = sched.usage60(shift_index, t);
        return (task.occupies(t) ? u + entry->bandwidth60 : u);
    });
    if (!breaks) return std::nullopt;
    out.breaks = std::move(*breaks);
    return out;
}

inline void apply_insert(Schedule& sched, const InsertPlan& plan) {
    if (plan.enables)
        sched.enable_shift(plan.shift_index, plan.work_start, plan.work_end);
    else if (plan.window_changed)
        sched.set_window(plan.shift_index, plan.work_start, plan.work_end);
    sched.set_breaks(plan.shift_index, plan.breaks);
    sched.add_assignment(plan.task_index, plan.shift_index);
}

/// Unassigns a task. The shift window and breaks stay as they are (hull
/// shrinking is normalize_shift's job); a shift left empty is disabled.
inline void remove_task(Schedule& sched, int task_id) {
    const int ti = sched.instance().task_index(task_id);
    const int si = sched.shift_of_task_index(ti);
    if (si < 0) throw std::logic_error("task " + std::to_string(task_id) + " is not assigned");
    sched.remove_assignment(ti);
    if (sched.tasks_in_shift(si).empty()) sched.disable_shift(si);
}

/// Shrinks a shift window to the hull of its remaining tasks (padded to the
/// minimum length) and re-plans breaks; disables the shift when it is empty.
/// Keeps the previous window whenever the shrunk one admits no break plan.
inline void normalize_shift(Schedule& sched, int shift_index) {
    const ShiftPlan& plan = sched.plan(shift_index);
    if (!plan.enabled) return;
    const auto& tasks = sched.tasks_in_shift(shift_index);
    if (tasks.empty()) {
        sched.disable_shift(shift_index);
        return;
    }
    const Instance& inst = sched.instance();
    Bucket hull_lo = inst.horizon(), hull_hi = 0;
    for (int ti : tasks) {
        hull_lo = std::min(hull_lo, inst.tasks()[ti].start);
        hull_hi = std::max(hull_hi, inst.tasks()[ti].end);
    }
    const Availability& av = inst.availability(shift_index);
    detail::pad_window(hull_lo, hull_hi, av.min_shift_len, av.earliest_start, av.latest_end);
    if (hull_lo == plan.work_start && hull_hi == plan.work_end) return;

    auto breaks = plan_breaks(av, inst.shift_operator(shift_index), hull_lo, hull_hi,
                              inst.prep_time(),
                              [&](Bucket t) { return sched.usage60(shift_index, t); });
    if (!breaks) return;  // previous window and breaks remain valid
    sched.set_window(shift_index, hull_lo, hull_hi);
    sched.set_breaks(shift_index, std::move(*breaks));
}

// --------------------------------------------------------------------------
// Full validation

/// Exhaustive constraint check. Profiles are recomputed from the assignment
/// lists rather than trusted from the incremental bookkeeping, so this also
/// audits the Schedule internals. All violations are reported, not only the
/// first one.
inline FeasibilityReport validate(const Schedule& sched) {
    const Instance& inst = sched.instance();
    FeasibilityReport report;

    for (const Task& task : inst.tasks()) {
        int si = sched.shift_of(task.id);
        if (task.mandatory && si < 0)
            report.add(ConstraintFamily::Mandatory, -1, task.id, -1,
                       "mandatory task is unassigned");
    }

    const Bucket horizon = inst.horizon();
    const Bucket prep = inst.prep_time();
    for (int si = 0; si < inst.num_shifts(); ++si) {
        const ShiftPlan& plan = sched.plan(si);
        const Availability& av = inst.availability(si);
        const Operator& op = inst.shift_operator(si);
        const int shift_id = av.shift_id;
        const auto& tasks = sched.tasks_in_shift(si);

        if (!plan.enabled) {
            for (int ti : tasks)
                report.add(ConstraintFamily::Enabled, shift_id, inst.tasks()[ti].id, -1,
                           "assignment on a disabled shift");
            if (!plan.break_buckets.empty())
                report.add(ConstraintFamily::Enabled, shift_id, -1, plan.break_buckets.front(),
                           "breaks on a disabled shift");
            continue;
        }

        if (!(av.earliest_start <= plan.work_start && plan.work_start < plan.work_end &&
              plan.work_end <= av.latest_end)) {
            report.add(ConstraintFamily::ShiftWindow, shift_id, -1, plan.work_start,
                       "work window outside the availability");
            continue;  // remaining checks assume a sane window
        }
        const Bucket len = plan.length();
        if (len < av.min_shift_len)
            report.add(ConstraintFamily::ShiftLength, shift_id, -1, -1,
                       "shift shorter than the minimum length");
        if (len > av.max_shift_len)
            report.add(ConstraintFamily::ShiftLength, shift_id, -1, -1,
                       "shift longer than the maximum length");

        // fresh profiles for this shift
        std::vector<int> usage(horizon, 0);
        std::vector<int> groups_at(static_cast<std::size_t>(horizon) * inst.groups().size(), 0);
        for (int ti : tasks) {
            const Task& task = inst.tasks()[ti];
            if (sched.assignment_ineligible(ti))
                report.add(ConstraintFamily::Enabled, shift_id, task.id, -1,
                           "assignment of an ineligible task");
            for (Bucket t = task.start; t < task.end; ++t) {
                usage[t] += sched.assignment_bandwidth60(ti);
                groups_at[static_cast<std::size_t>(t) * inst.groups().size() + task.group] = 1;
            }
            if (task.start < plan.work_start || task.end > plan.work_end)
                report.add(ConstraintFamily::Bandwidth, shift_id, task.id, task.start,
                           "task active outside the work window");
        }
        for (Bucket t = 0; t < horizon; ++t) {
            if (usage[t] > kCapacity60)
                report.add(ConstraintFamily::Bandwidth, shift_id, -1, t,
                           "bucket load " + std::to_string(usage[t]) + "/60");
            int distinct = 0;
            for (std::size_t g = 0; g < inst.groups().size(); ++g)
                distinct += groups_at[static_cast<std::size_t>(t) * inst.groups().size() + g];
            if (distinct > inst.group_parallel_limit())
                report.add(ConstraintFamily::GroupLimit, shift_id, -1, t,
                           std::to_string(distinct) + " task groups in parallel");
        }

        // break structure: runs inside the window and the break time window,
        // idle during breaks, prep idle after each run, total when required
        const auto& breaks = plan.break_buckets;
        Bucket total_break = static_cast<Bucket>(breaks.size());
        for (std::size_t i = 0; i < breaks.size(); ++i) {
            Bucket b = breaks[i];
            if (i > 0 && breaks[i - 1] >= b)
                report.add(ConstraintFamily::BreakWindow, shift_id, -1, b,
                           "break buckets not strictly sorted");
            if (b < plan.work_start || b >= plan.work_end)
                report.add(ConstraintFamily::BreakWindow, shift_id, -1, b,
                           "break outside the work window");
            if (b < plan.work_start + av.break_window_open)
                report.add(ConstraintFamily::BreakWindow, shift_id, -1, b,
                           "break before the break window opens");
            if (b >= plan.work_start + av.break_window_close)
                report.add(ConstraintFamily::BreakWindow, shift_id, -1, b,
                           "break after the break window closes");
            if (b >= 0 && b < horizon && usage[b] > 0)
                report.add(ConstraintFamily::Bandwidth, shift_id, -1, b, "work during a break");
        }
        for (std::size_t i = 0; i < breaks.size();) {
            std::size_t j = i + 1;
            while (j < breaks.size() && breaks[j] == breaks[j - 1] + 1) ++j;
            Bucket run_len = static_cast<Bucket>(j - i);
            if (run_len < op.min_partial_break)
                report.add(ConstraintFamily::BreakMinRun, shift_id, -1, breaks[i],
                           "break run of " + std::to_string(run_len) + " < minimum " +
                               std::to_string(op.min_partial_break));
            Bucket run_end = breaks[j - 1] + 1;
            for (Bucket t = run_end; t < std::min(run_end + prep, plan.work_end); ++t)
                if (t >= 0 && t < horizon && usage[t] > 0) {
                    report.add(ConstraintFamily::PrepTime, shift_id, -1, t,
                               "work during the preparation time after a break");
                    break;
                }
            i = j;
        }
        if (len > av.max_len_without_break && total_break < op.min_total_break)
            report.add(ConstraintFamily::BreakTotal, shift_id, -1, -1,
                       "shift of " + std::to_string(len) + " buckets has " +
                           std::to_string(total_break) + " break buckets, needs " +
                           std::to_string(op.min_total_break));
    }

    // rest between enabled shifts of the same operator
    for (const Operator& op : inst.operators()) {
        for (std::size_t i = 0; i < op.availabilities.size(); ++i) {
            int si = inst.shift_index_of(op.availabilities[i].shift_id);
            const ShiftPlan& a = sched.plan(si);
            if (!a.enabled) continue;
            for (std::size_t j = i + 1; j < op.availabilities.size(); ++j) {
                int sj = inst.shift_index_of(op.availabilities[j].shift_id);
                const ShiftPlan& b = sched.plan(sj);
                if (!b.enabled) continue;
                const ShiftPlan& first = a.work_start <= b.work_start ? a : b;
                const ShiftPlan& second = a.work_start <= b.work_start ? b : a;
                if (second.work_start - first.work_end < op.min_rest)
                    report.add(ConstraintFamily::Rest, op.availabilities[j].shift_id, -1,
                               second.work_start,
                               "rest of " + std::to_string(second.work_start - first.work_end) +
                                   " buckets between shifts of operator " + std::to_string(op.id) +
                                   ", minimum " + std::to_string(op.min_rest));
            }
        }
    }

    return report;
}

}  // namespace opshift
