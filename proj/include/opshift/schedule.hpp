#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

#include "opshift/instance.hpp"

namespace opshift {

/// Planned working window of one shift slot plus its break buckets.
/// work_end is exclusive; break_buckets stays sorted.
struct ShiftPlan {
    bool enabled = false;
    Bucket work_start = 0;
    Bucket work_end = 0;
    std::vector<Bucket> break_buckets;

    Bucket length() const { return enabled ? work_end - work_start : 0; }
};

/// Raw objective tallies maintained incrementally. groups_total sums the
/// distinct-group counts of enabled shifts; busy/planned are bucket counts
/// over enabled shifts only.
struct ObjectiveCounters {
    std::int64_t priority_sum = 0;
    std::int64_t penalty_sum = 0;
    int consec_same = 0;
    int consec_both_assigned = 0;  // linked pairs with both endpoints assigned anywhere
    int consec_one_assigned = 0;   // linked pairs with exactly one endpoint assigned
    int enabled_shifts = 0;
    int groups_total = 0;
    std::int64_t busy_buckets = 0;
    std::int64_t planned_buckets = 0;
    int assigned_tasks = 0;
};

/// A candidate solution. Pure bookkeeping value type: mutators maintain the
/// per-bucket profiles and objective tallies but never judge feasibility;
/// that is the feasibility layer's job. Copyable, no shared mutable state.
class Schedule {
public:
    explicit Schedule(const Instance& instance)
        : inst_(&instance),
          plans_(instance.num_shifts()),
          task_shift_(instance.tasks().size(), -1),
          task_deviation_(instance.tasks().size(), 0),
          task_bandwidth_(instance.tasks().size(), 0),
          task_ineligible_(instance.tasks().size(), 0),
          shift_tasks_(instance.num_shifts()),
          usage_(static_cast<std::size_t>(instance.num_shifts()) * instance.horizon(), 0),
          group_at_(static_cast<std::size_t>(instance.num_shifts()) * instance.horizon() *
                        instance.groups().size(),
                    0),
          distinct_at_(static_cast<std::size_t>(instance.num_shifts()) * instance.horizon(), 0),
          group_in_shift_(static_cast<std::size_t>(instance.num_shifts()) * instance.groups().size(),
                          0),
          distinct_in_shift_(instance.num_shifts(), 0),
          busy_in_shift_(instance.num_shifts(), 0) {}

    const Instance& instance() const { return *inst_; }
    const ShiftPlan& plan(int shift_index) const { return plans_[shift_index]; }
    const ObjectiveCounters& counters() const { return counters_; }

    int shift_of_task_index(int task_index) const { return task_shift_[task_index]; }
    int shift_of(int task_id) const { return task_shift_[inst_->task_index(task_id)]; }
    bool assigned(int task_id) const { return shift_of(task_id) >= 0; }
    int assignment_deviation(int task_index) const { return task_deviation_[task_index]; }
    int assignment_bandwidth60(int task_index) const { return task_bandwidth_[task_index]; }
    bool assignment_ineligible(int task_index) const { return task_ineligible_[task_index] != 0; }

    /// Task indices assigned to a shift, in insertion order.
    const std::vector<int>& tasks_in_shift(int shift_index) const { return shift_tasks_[shift_index]; }

    int usage60(int shift_index, Bucket t) const {
        return usage_[static_cast<std::size_t>(shift_index) * inst_->horizon() + t];
    }
    int distinct_groups_at(int shift_index, Bucket t) const {
        return distinct_at_[static_cast<std::size_t>(shift_index) * inst_->horizon() + t];
    }
    int group_count_at(int shift_index, Bucket t, int group) const {
        return group_at_[cell(shift_index, t, group)];
    }
    int tasks_of_group_in_shift(int shift_index, int group) const {
        return group_in_shift_[static_cast<std::size_t>(shift_index) * inst_->groups().size() + group];
    }
    int distinct_groups_in_shift(int shift_index) const { return distinct_in_shift_[shift_index]; }
    int busy_buckets_in_shift(int shift_index) const { return busy_in_shift_[shift_index]; }

    bool empty() const { return counters_.assigned_tasks == 0; }

    // ---- raw mutators -------------------------------------------------

    void enable_shift(int shift_index, Bucket work_start, Bucket work_end) {
        ShiftPlan& pl = plans_[shift_index];
        assert(!pl.enabled);
        pl.enabled = true;
        pl.work_start = work_start;
        pl.work_end = work_end;
        counters_.enabled_shifts += 1;
        counters_.groups_total += distinct_in_shift_[shift_index];
        counters_.busy_buckets += busy_in_shift_[shift_index];
        counters_.planned_buckets += work_end - work_start;
    }

    void disable_shift(int shift_index) {
        ShiftPlan& pl = plans_[shift_index];
        if (!pl.enabled) return;
        counters_.enabled_shifts -= 1;
        counters_.groups_total -= distinct_in_shift_[shift_index];
        counters_.busy_buckets -= busy_in_shift_[shift_index];
        counters_.planned_buckets -= pl.length();
        pl.enabled = false;
        pl.work_start = pl.work_end = 0;
        pl.break_buckets.clear();
    }

    void set_window(int shift_index, Bucket work_start, Bucket work_end) {
        ShiftPlan& pl = plans_[shift_index];
        assert(pl.enabled);
        counters_.planned_buckets += (work_end - work_start) - pl.length();
        pl.work_start = work_start;
        pl.work_end = work_end;
    }

    void set_breaks(int shift_index, std::vector<Bucket> breaks) {
        plans_[shift_index].break_buckets = std::move(breaks);
    }

    /// Records an assignment and updates all profiles. Deviation/bandwidth
    /// come from the eligibility table; an ineligible pair is bookkept with
    /// the task's base bandwidth and flagged for the validator.
    void add_assignment(int task_index, int shift_index) {
        assert(task_shift_[task_index] < 0);
        const Task& task = inst_->tasks()[task_index];
        const SkillPenalty* e = inst_->eligibility_entry(task.id, shift_index);
        task_shift_[task_index] = shift_index;
        task_deviation_[task_index] = e ? e->deviation : 0;
        task_bandwidth_[task_index] = e ? e->bandwidth60 : task.base_bandwidth60;
        task_ineligible_[task_index] = e ? 0 : 1;
        shift_tasks_[shift_index].push_back(task_index);

        const bool enabled = plans_[shift_index].enabled;
        const int b = task_bandwidth_[task_index];
        for (Bucket t = task.start; t < task.end; ++t) {
            std::size_t u = static_cast<std::size_t>(shift_index) * inst_->horizon() + t;
            if (usage_[u] == 0) {
                busy_in_shift_[shift_index] += 1;
                if (enabled) counters_.busy_buckets += 1;
            }
            usage_[u] += b;
            auto& gcount = group_at_[cell(shift_index, t, task.group)];
            if (gcount == 0) distinct_at_[u] += 1;
            if (gcount == 250) throw std::overflow_error("absurd same-group density at one bucket");
            gcount += 1;
        }
        auto& gshift = group_in_shift_[static_cast<std::size_t>(shift_index) * inst_->groups().size() +
                                       task.group];
        if (gshift == 0) {
            distinct_in_shift_[shift_index] += 1;
            if (enabled) counters_.groups_total += 1;
        }
        gshift += 1;

        counters_.priority_sum += task.priority;
        counters_.penalty_sum += task_deviation_[task_index];
        counters_.assigned_tasks += 1;
        update_links(task, shift_index, +1);
    }

    void remove_assignment(int task_index) {
        const int shift_index = task_shift_[task_index];
        assert(shift_index >= 0);
        const Task& task = inst_->tasks()[task_index];
        update_links(task, shift_index, -1);
        task_shift_[task_index] = -1;

        auto& list = shift_tasks_[shift_index];
        list.erase(std::find(list.begin(), list.end(), task_index));

        const bool enabled = plans_[shift_index].enabled;
        const int b = task_bandwidth_[task_index];
        for (Bucket t = task.start; t < task.end; ++t) {
            std::size_t u = static_cast<std::size_t>(shift_index) * inst_->horizon() + t;
            usage_[u] -= b;
            if (usage_[u] == 0) {
                busy_in_shift_[shift_index] -= 1;
                if (enabled) counters_.busy_buckets -= 1;
            }
            auto& gcount = group_at_[cell(shift_index, t, task.group)];
            gcount -= 1;
            if (gcount == 0) distinct_at_[u] -= 1;
        }
        auto& gshift = group_in_shift_[static_cast<std::size_t>(shift_index) * inst_->groups().size() +
                                       task.group];
        gshift -= 1;
        if (gshift == 0) {
            distinct_in_shift_[shift_index] -= 1;
            if (enabled) counters_.groups_total -= 1;
        }

        counters_.priority_sum -= task.priority;
        counters_.penalty_sum -= task_deviation_[task_index];
        counters_.assigned_tasks -= 1;
        task_deviation_[task_index] = 0;
        task_bandwidth_[task_index] = 0;
        task_ineligible_[task_index] = 0;
    }

private:
    std::size_t cell(int shift_index, Bucket t, int group) const {
        return (static_cast<std::size_t>(shift_index) * inst_->horizon() + t) *
                   inst_->groups().size() +
               group;
    }

    /// Maintains the three consecutive-pair tallies around (un)assigning a
    /// task; direction is +1 on add, -1 on remove.
    void update_links(const Task& task, int shift_index, int direction) {
        auto touch = [&](int partner_index) {
            int partner_shift = task_shift_[partner_index];
            if (partner_shift >= 0) {
                counters_.consec_both_assigned += direction;
                counters_.consec_one_assigned -= direction;
                if (partner_shift == shift_index) counters_.consec_same += direction;
            } else {
                counters_.consec_one_assigned += direction;
            }
        };
        if (task.predecessor >= 0) touch(inst_->task_index(task.predecessor));
        for (int succ_id : inst_->successors(task.id)) touch(inst_->task_index(succ_id));
    }

    const Instance* inst_;
    std::vector<ShiftPlan> plans_;
    std::vector<int> task_shift_;
    std::vector<int> task_deviation_;
    std::vector<int> task_bandwidth_;
    std::vector<std::uint8_t> task_ineligible_;
    std::vector<std::vector<int>> shift_tasks_;
    std::vector<std::int32_t> usage_;
    std::vector<std::uint8_t> group_at_;
    std::vector<std::uint8_t> distinct_at_;
    std::vector<std::int32_t> group_in_shift_;
    std::vector<int> distinct_in_shift_;
    std::vector<std::int64_t> busy_in_shift_;
    ObjectiveCounters counters_;
};

}  // namespace opshift
