#pragma once

#include <string>

#include "opshift/feasibility.hpp"
#include "opshift/rational.hpp"
#include "opshift/schedule.hpp"

namespace opshift {

/// Weights of the five objective terms. The penalty weight enters the total
/// negatively; groups should carry a negative weight when fewer groups per
/// shift is the goal.
struct ObjectiveWeights {
    Rational priority{1};
    Rational penalty{1};
    Rational groups{0};
    Rational consec{0};
    Rational workload{0};

    bool plain() const { return groups.is_zero() && consec.is_zero() && workload.is_zero(); }

    bool operator==(const ObjectiveWeights& o) const {
        return priority == o.priority && penalty == o.penalty && groups == o.groups &&
               consec == o.consec && workload == o.workload;
    }

    /// Parses "w_priority,w_penalty,w_groups,w_consec,w_workload".
    static ObjectiveWeights parse(const std::string& csv) {
        ObjectiveWeights w;
        Rational* slots[5] = {&w.priority, &w.penalty, &w.groups, &w.consec, &w.workload};
        std::size_t pos = 0;
        for (int i = 0; i < 5; ++i) {
            std::size_t next = i < 4 ? csv.find(',', pos) : csv.size();
            if (next == std::string::npos)
                throw std::invalid_argument("weights need 5 comma-separated values: " + csv);
            *slots[i] = Rational::parse(csv.substr(pos, next - pos));
            pos = next + 1;
        }
        return w;
    }

    std::string str() const {
        return priority.str() + "," + penalty.str() + "," + groups.str() + "," + consec.str() +
               "," + workload.str();
    }
};

struct ObjectiveBreakdown {
    std::int64_t priority_sum = 0;
    std::int64_t penalty_sum = 0;
    Rational groups_avg{0};
    int consec_same = 0;
    Rational workload_ratio{0};
    Rational weighted_total{0};

    // diagnostics
    int consec_both_assigned = 0;
    int consec_any_assigned = 0;
    int consec_available = 0;
    int enabled_shifts = 0;
    int assigned_tasks = 0;
    std::int64_t busy_buckets = 0;
    std::int64_t planned_buckets = 0;
};

inline Rational weighted_value(const ObjectiveCounters& c, const ObjectiveWeights& w) {
    Rational total = w.priority * Rational(c.priority_sum) - w.penalty * Rational(c.penalty_sum) +
                     w.consec * Rational(c.consec_same);
    if (!w.groups.is_zero())
        total += w.groups * Rational(c.groups_total, std::max(1, c.enabled_shifts));
    if (!w.workload.is_zero())
        total += w.workload * Rational(c.busy_buckets, std::max<std::int64_t>(1, c.planned_buckets));
    return total;
}

/// Breakdown straight from the incremental tallies; no feasibility check.
inline ObjectiveBreakdown breakdown_of(const Schedule& sched, const ObjectiveWeights& w) {
    const ObjectiveCounters& c = sched.counters();
    ObjectiveBreakdown b;
    b.priority_sum = c.priority_sum;
    b.penalty_sum = c.penalty_sum;
    b.groups_avg = Rational(c.groups_total, std::max(1, c.enabled_shifts));
    b.consec_same = c.consec_same;
    b.workload_ratio = Rational(c.busy_buckets, std::max<std::int64_t>(1, c.planned_buckets));
    b.weighted_total = weighted_value(c, w);
    b.consec_both_assigned = c.consec_both_assigned;
    b.consec_any_assigned = c.consec_one_assigned + c.consec_both_assigned;
    b.consec_available = sched.instance().total_predecessor_links();
    b.enabled_shifts = c.enabled_shifts;
    b.assigned_tasks = c.assigned_tasks;
    b.busy_buckets = c.busy_buckets;
    b.planned_buckets = c.planned_buckets;
    return b;
}

class InfeasibleScheduleError : public std::runtime_error {
public:
    explicit InfeasibleScheduleError(const std::string& what) : std::runtime_error(what) {}
};

/// Checked evaluation: rejects schedules that do not validate.
inline ObjectiveBreakdown evaluate(const Schedule& sched, const ObjectiveWeights& w) {
    FeasibilityReport report = validate(sched);
    if (!report.ok) {
        const Violation& v = report.violations.front();
        throw InfeasibleScheduleError(std::string("infeasible schedule: [") +
                                      to_string(v.family) + "] " + v.detail + " (" +
                                      std::to_string(report.violations.size()) + " violations)");
    }
    return breakdown_of(sched, w);
}

/// Exact objective change if `plan` were applied, equal to
/// weighted_total(after) - weighted_total(before).
inline Rational delta_for_plan(const Schedule& sched, const InsertPlan& plan,
                               const ObjectiveWeights& w) {
    const Instance& inst = sched.instance();
    const Task& task = inst.tasks()[plan.task_index];
    const ObjectiveCounters& c = sched.counters();

    Rational delta = w.priority * Rational(task.priority) - w.penalty * Rational(plan.deviation);

    if (!w.consec.is_zero()) {
        int same = 0;
        if (task.predecessor >= 0 &&
            sched.shift_of_task_index(inst.task_index(task.predecessor)) == plan.shift_index)
            ++same;
        for (int succ : inst.successors(task.id))
            if (sched.shift_of_task_index(inst.task_index(succ)) == plan.shift_index) ++same;
        if (same != 0) delta += w.consec * Rational(same);
    }

    if (!w.groups.is_zero()) {
        int enabled_after = c.enabled_shifts + (plan.enables ? 1 : 0);
        int groups_after = c.groups_total;
        if (plan.enables)
            groups_after += 1;  // empty shift gains its first group
        else if (sched.tasks_of_group_in_shift(plan.shift_index, task.group) == 0)
            groups_after += 1;
        delta += w.groups * (Rational(groups_after, std::max(1, enabled_after)) -
                             Rational(c.groups_total, std::max(1, c.enabled_shifts)));
    }

    if (!w.workload.is_zero()) {
        std::int64_t busy_after = c.busy_buckets;
        for (Bucket t = task.start; t < task.end; ++t)
            if (sched.usage60(plan.shift_index, t) == 0) ++busy_after;
        std::int64_t planned_after = c.planned_buckets + (plan.work_end - plan.work_start) -
                                     sched.plan(plan.shift_index).length();
        delta += w.workload * (Rational(busy_after, std::max<std::int64_t>(1, planned_after)) -
                               Rational(c.busy_buckets, std::max<std::int64_t>(1, c.planned_buckets)));
    }
    return delta;
}

/// Probes and prices an insertion in one call; throws when infeasible.
inline Rational delta_insert(const Schedule& sched, int task_id, int shift_index,
                             const ObjectiveWeights& w) {
    auto plan = probe_insert(sched, task_id, shift_index);
    if (!plan)
        throw InfeasibleScheduleError("insertion of task " + std::to_string(task_id) +
                                      " into shift " +
                                      std::to_string(sched.instance().shift(shift_index).shift_id) +
                                      " is infeasible");
    return delta_for_plan(sched, *plan, w);
}

}  // namespace opshift
