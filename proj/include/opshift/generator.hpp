#pragma once

#include <cstdint>
#include <cstdio>
#include <string>

#include "opshift/instance.hpp"
#include "opshift/rng.hpp"

namespace opshift {

enum class InstanceClass { Tiny, Small, Medium, Large, XLarge };

inline InstanceClass instance_class_from(const std::string& s) {
    if (s == "tiny") return InstanceClass::Tiny;
    if (s == "small") return InstanceClass::Small;
    if (s == "medium") return InstanceClass::Medium;
    if (s == "large") return InstanceClass::Large;
    if (s == "xlarge") return InstanceClass::XLarge;
    throw std::invalid_argument("unknown instance class: " + s);
}

inline const char* to_string(InstanceClass c) {
    switch (c) {
        case InstanceClass::Tiny: return "tiny";
        case InstanceClass::Small: return "small";
        case InstanceClass::Medium: return "medium";
        case InstanceClass::Large: return "large";
        case InstanceClass::XLarge: return "xlarge";
    }
    return "?";
}

struct GeneratorOptions {
    double consec_fraction = 0.10;    // share of tasks created as back-to-back successors
    double mandatory_fraction = 0.0;  // share of tasks marked mandatory (eligible ones only)
};

namespace gen_detail {

/// Size and window profile of one instance class, durations in 5-minute buckets.
struct ClassProfile {
    int horizon_hours;
    int shifts_lo, shifts_hi;
    int tasks_lo, tasks_hi;
    int groups;
    int task_len_lo, task_len_hi;
    int avail_len_lo, avail_len_hi;
    int alpha;
    int chi_lo, chi_hi;        // -1: chi == omega, a shift never requires a break
    int skills_lo, skills_hi;  // group count an operator is skilled in
    int level_lo;
    int pct_two, pct_three;    // share of operators with 2 / 3 availabilities
};

inline ClassProfile profile(InstanceClass c) {
    switch (c) {
        case InstanceClass::Tiny:
            return {4, 1, 2, 4, 8, 3, 3, 12, 30, 48, 2, -1, -1, 1, 3, 40, 0, 0};
        case InstanceClass::Small:
            return {8, 2, 6, 80, 160, 22, 12, 36, 72, 96, 12, 48, 66, 4, 10, 30, 0, 0};
        case InstanceClass::Medium:
            return {18, 4, 10, 400, 700, 22, 12, 36, 84, 120, 12, 48, 66, 4, 10, 30, 0, 0};
        case InstanceClass::Large:
            return {24, 38, 52, 600, 1100, 22, 12, 36, 84, 120, 12, 48, 66, 4, 10, 30, 30, 0};
        case InstanceClass::XLarge:
            return {72, 180, 230, 2000, 3300, 22, 12, 36, 84, 120, 12, 48, 66, 4, 10, 30, 50, 30};
    }
    throw std::invalid_argument("bad instance class");
}

// Break/rest profiles in buckets, loosely one per working-location rulebook.
struct RuleProfile { int beta, gamma, delta; };
inline RuleProfile rules(int pick) {
    static const RuleProfile table[4] = {{2, 6, 96}, {3, 6, 108}, {3, 9, 120}, {2, 9, 132}};
    return table[pick & 3];
}

constexpr int kBandwidths60[6] = {10, 12, 15, 20, 30, 60};

}  // namespace gen_detail

/// Synthetic benchmark instance, deterministic per (class, seed, options).
/// Availability lengths and break-window placement follow documented defaults.
inline Instance generate_instance(InstanceClass cls, std::uint64_t seed,
                                  const GeneratorOptions& opt = {}) {
    using namespace gen_detail;
    const ClassProfile p = profile(cls);
    const bool tiny = cls == InstanceClass::Tiny;
    Rng rng(seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(cls) + 1);

    const int horizon = p.horizon_hours * 12;
    const int shift_target = static_cast<int>(rng.range(p.shifts_lo, p.shifts_hi));
    const int task_target = static_cast<int>(rng.range(p.tasks_lo, p.tasks_hi));

    std::vector<TaskGroup> groups;
    groups.reserve(p.groups);
    for (int g = 0; g < p.groups; ++g) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "group-%02d", g);
        groups.push_back({g, buf});
    }

    // Operators: consume the shift budget, multi-window operators get their
    // windows in disjoint equal segments of the horizon.
    std::vector<Operator> operators;
    int next_shift_id = 0;
    while (next_shift_id < shift_target) {
        Operator op;
        op.id = static_cast<int>(operators.size());
        int windows = 1;
        int roll = static_cast<int>(rng.range(0, 99));
        if (roll < p.pct_three && shift_target - next_shift_id >= 3) windows = 3;
        else if (roll < p.pct_three + p.pct_two && shift_target - next_shift_id >= 2) windows = 2;

        RuleProfile rp = rules(static_cast<int>(rng.range(0, 3)));
        op.min_partial_break = rp.beta;
        op.min_total_break = rp.gamma;
        op.min_rest = rp.delta;

        int nskills = static_cast<int>(rng.range(p.skills_lo, p.skills_hi));
        std::vector<int> pool(groups.size());
        for (std::size_t g = 0; g < pool.size(); ++g) pool[g] = static_cast<int>(g);
        for (int k = 0; k < nskills; ++k) {
            int j = k + static_cast<int>(rng.below(pool.size() - k));
            std::swap(pool[k], pool[j]);
            Skill sk;
            sk.group = pool[k];
            sk.level = static_cast<int>(rng.range(p.level_lo, 100));
            sk.parallel_capacity = static_cast<int>(rng.range(1, 6));
            op.skills.push_back(sk);
        }
        std::sort(op.skills.begin(), op.skills.end(),
                  [](const Skill& a, const Skill& b) { return a.group < b.group; });

        for (int w = 0; w < windows; ++w) {
            int seg_lo = horizon * w / windows;
            int seg_hi = horizon * (w + 1) / windows;
            int seg_len = seg_hi - seg_lo;
            int len = static_cast<int>(rng.range(std::min(p.avail_len_lo, seg_len),
                                                 std::min(p.avail_len_hi, seg_len)));
            int start = seg_lo + static_cast<int>(rng.range(0, seg_len - len));
            Availability av;
            av.shift_id = next_shift_id++;
            av.earliest_start = start;
            av.latest_end = start + len;
            av.min_shift_len = std::min(p.alpha, len);
            av.max_shift_len = len;
            av.max_len_without_break =
                p.chi_lo < 0 ? len : std::min(len, static_cast<int>(rng.range(p.chi_lo, p.chi_hi)));
            av.break_window_open = tiny ? 0 : std::min(6, len / 4);
            av.break_window_close = av.max_shift_len;
            op.availabilities.push_back(av);
        }
        operators.push_back(std::move(op));
    }

    // Tasks. A slice of them continues an earlier task of the same group
    // back-to-back and records the predecessor link.
    std::vector<Task> tasks;
    tasks.reserve(task_target);
    std::vector<int> linkable;  // indices without a successor yet
    while (static_cast<int>(tasks.size()) < task_target) {
        Task t;
        t.id = static_cast<int>(tasks.size());
        bool linked = false;
        if (!linkable.empty() && rng.unit() < opt.consec_fraction) {
            int pick = static_cast<int>(rng.below(linkable.size()));
            const Task& pred = tasks[linkable[pick]];
            int room = horizon - pred.end;
            if (room >= p.task_len_lo) {
                int len = static_cast<int>(rng.range(p.task_len_lo, std::min(p.task_len_hi, room)));
                t.group = pred.group;
                t.start = pred.end;
                t.end = pred.end + len;
                t.predecessor = pred.id;
                linkable[pick] = static_cast<int>(tasks.size());  // chain may continue from t
                linked = true;
            }
        }
        if (!linked) {
            int len = static_cast<int>(rng.range(p.task_len_lo, p.task_len_hi));
            t.group = static_cast<int>(rng.below(groups.size()));
            t.start = static_cast<int>(rng.range(0, horizon - len));
            t.end = t.start + len;
            linkable.push_back(static_cast<int>(tasks.size()));
        }
        t.priority = static_cast<int>(rng.range(1, 100));
        t.required_skill = static_cast<int>(rng.range(0, 100));
        t.base_bandwidth60 = kBandwidths60[rng.below(6)];
        tasks.push_back(t);
    }

    if (opt.mandatory_fraction > 0) {
        for (auto& t : tasks) {
            if (rng.unit() >= opt.mandatory_fraction) continue;
            for (const auto& op : operators) {
                if (op.skill_for(t.group) == nullptr) continue;
                bool covered = false;
                for (const auto& av : op.availabilities)
                    if (av.earliest_start <= t.start && t.end <= av.latest_end) { covered = true; break; }
                if (covered) { t.mandatory = true; break; }
            }
        }
    }

    InstanceMeta meta;
    meta.bucket_minutes = 5;
    meta.horizon_minutes = horizon * 5;
    meta.prep_minutes = 20;
    meta.group_parallel_limit = 2;
    meta.name = std::to_string(p.horizon_hours) + "_" + std::to_string(next_shift_id) + "_" +
                std::to_string(tasks.size());
    return Instance::build(std::move(meta), std::move(groups), std::move(tasks),
                           std::move(operators));
}

}  // namespace opshift
