#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace opshift {

using Bucket = std::int32_t;

/// Bandwidth is stored in sixtieths of one operator's capacity so that every
/// admissible fraction {1/6, 1/5, 1/4, 1/3, 1/2, 1} is an exact integer and a
/// bucket's load test is "sum <= 60".
constexpr int kCapacity60 = 60;

inline bool valid_bandwidth60(int b60) {
    return b60 == 10 || b60 == 12 || b60 == 15 || b60 == 20 || b60 == 30 || b60 == 60;
}

inline std::string bandwidth_text(int b60) {
    switch (b60) {
        case 10: return "1/6";
        case 12: return "1/5";
        case 15: return "1/4";
        case 20: return "1/3";
        case 30: return "1/2";
        case 60: return "1";
    }
    throw std::invalid_argument("not a representable bandwidth: " + std::to_string(b60) + "/60");
}

inline int parse_bandwidth(const std::string& text) {
    if (text == "1/6") return 10;
    if (text == "1/5") return 12;
    if (text == "1/4") return 15;
    if (text == "1/3") return 20;
    if (text == "1/2") return 30;
    if (text == "1") return 60;
    throw std::invalid_argument("bandwidth must be one of 1/6,1/5,1/4,1/3,1/2,1: got " + text);
}

struct TaskGroup {
    int id = 0;
    std::string name;
};

struct Task {
    int id = 0;
    int group = 0;
    Bucket start = 0;
    Bucket end = 0;  // exclusive
    int priority = 0;
    int required_skill = 0;
    bool mandatory = false;
    int base_bandwidth60 = 60;
    int predecessor = -1;  // task id, -1 if none

    Bucket length() const { return end - start; }
    bool occupies(Bucket t) const { return t >= start && t < end; }
};

struct Skill {
    int group = 0;
    int level = 0;             // 0..100
    int parallel_capacity = 1; // 1..6
};

struct Availability {
    int shift_id = 0;         // globally unique; one plannable shift per availability
    Bucket earliest_start = 0;  // e
    Bucket latest_end = 0;      // l, exclusive
    Bucket min_shift_len = 0;   // alpha
    Bucket max_shift_len = 0;   // omega
    Bucket max_len_without_break = 0;  // chi
    Bucket break_window_open = 0;      // nu, buckets into the shift
    Bucket break_window_close = 0;     // lambda, buckets into the shift
};

struct Operator {
    int id = 0;
    std::vector<Skill> skills;
    Bucket min_partial_break = 0;  // beta
    Bucket min_total_break = 0;    // gamma
    Bucket min_rest = 0;           // delta
    std::vector<Availability> availabilities;

    const Skill* skill_for(int group) const {
        for (const auto& s : skills)
            if (s.group == group) return &s;
        return nullptr;
    }
};

/// One (task, shift) entry of the eligibility table.
struct SkillPenalty {
    int task = 0;
    int shift = 0;
    int deviation = 0;     // max(0, required - level)
    int bandwidth60 = 60;  // max(base bandwidth, 1/parallel_capacity)
    bool eligible = true;
};

/// Dense view of one plannable shift: availability plus its operator.
struct ShiftRef {
    int shift_id = 0;
    int operator_index = 0;
    int availability_index = 0;
};

struct InstanceMeta {
    std::string name;
    int horizon_minutes = 0;
    int bucket_minutes = 5;
    int prep_minutes = 20;
    int group_parallel_limit = 2;
};

class InstanceError : public std::runtime_error {
public:
    explicit InstanceError(const std::string& what) : std::runtime_error(what) {}
};

/// Immutable problem data. Built once (loader, generator or tests), then
/// shared read-only; every derived lookup the solver needs is precomputed.
class Instance {
public:
    static Instance build(InstanceMeta meta,
                          std::vector<TaskGroup> groups,
                          std::vector<Task> tasks,
                          std::vector<Operator> operators);

    const std::string& name() const { return meta_.name; }
    const InstanceMeta& meta() const { return meta_; }
    Bucket horizon() const { return horizon_; }
    Bucket prep_time() const { return prep_; }
    int group_parallel_limit() const { return meta_.group_parallel_limit; }
    int bucket_minutes() const { return meta_.bucket_minutes; }

    const std::vector<TaskGroup>& groups() const { return groups_; }
    const std::vector<Task>& tasks() const { return tasks_; }
    const std::vector<Operator>& operators() const { return operators_; }

    int num_shifts() const { return static_cast<int>(shifts_.size()); }
    const std::vector<ShiftRef>& shifts() const { return shifts_; }
    const ShiftRef& shift(int index) const { return shifts_.at(index); }
    const Availability& availability(int shift_index) const {
        const ShiftRef& r = shifts_[shift_index];
        return operators_[r.operator_index].availabilities[r.availability_index];
    }
    const Operator& shift_operator(int shift_index) const {
        return operators_[shifts_[shift_index].operator_index];
    }
    int shift_index_of(int shift_id) const {
        auto it = shift_index_.find(shift_id);
        if (it == shift_index_.end()) throw InstanceError("unknown shift id " + std::to_string(shift_id));
        return it->second;
    }

    const Task& task(int id) const { return tasks_.at(task_index(id)); }
    int task_index(int id) const {
        auto it = task_index_.find(id);
        if (it == task_index_.end()) throw InstanceError("unknown task id " + std::to_string(id));
        return it->second;
    }

    /// Successor task ids (tasks naming this one as predecessor).
    std::span<const int> successors(int task_id) const {
        const auto& v = successors_[task_index(task_id)];
        return {v.data(), v.size()};
    }

    /// Eligible (shift, deviation, bandwidth) entries of a task, ascending by shift index.
    std::span<const SkillPenalty> eligible(int task_id) const {
        const auto& v = eligibility_[task_index(task_id)];
        return {v.data(), v.size()};
    }

    const SkillPenalty* eligibility_entry(int task_id, int shift_index) const {
        for (const auto& e : eligibility_[task_index(task_id)])
            if (e.shift == shift_index) return &e;
        return nullptr;
    }

    std::size_t eligible_pair_count() const { return pair_count_; }

    /// Number of distinct task groups an operator is skilled in.
    int operator_group_count(int operator_index) const {
        return static_cast<int>(operators_[operator_index].skills.size());
    }

    int total_predecessor_links() const { return predecessor_links_; }

    /// Parses "8_5_101" into (horizon hours, shift count, task count).
    static std::optional<std::array<int, 3>> parse_name(const std::string& name);

private:
    Instance() = default;
    void validate() const;
    void index();

    InstanceMeta meta_;
    Bucket horizon_ = 0;
    Bucket prep_ = 0;
    std::vector<TaskGroup> groups_;
    std::vector<Task> tasks_;
    std::vector<Operator> operators_;

    std::vector<ShiftRef> shifts_;
    std::unordered_map<int, int> shift_index_;
    std::unordered_map<int, int> task_index_;
    std::vector<std::vector<int>> successors_;
    std::vector<std::vector<SkillPenalty>> eligibility_;
    std::size_t pair_count_ = 0;
    int predecessor_links_ = 0;
};

inline std::optional<std::array<int, 3>> Instance::parse_name(const std::string& name) {
    std::array<int, 3> out{};
    std::size_t pos = 0;
    for (int part = 0; part < 3; ++part) {
        std::size_t next = part < 2 ? name.find('_', pos) : name.size();
        if (next == std::string::npos || next == pos) return std::nullopt;
        int value = 0;
        for (std::size_t i = pos; i < next; ++i) {
            if (name[i] < '0' || name[i] > '9') return std::nullopt;
            value = value * 10 + (name[i] - '0');
        }
        out[part] = value;
        pos = next + 1;
    }
    return out;
}

inline Instance Instance::build(InstanceMeta meta,
                                std::vector<TaskGroup> groups,
                                std::vector<Task> tasks,
                                std::vector<Operator> operators) {
    Instance ins;
    ins.meta_ = std::move(meta);
    ins.groups_ = std::move(groups);
    ins.tasks_ = std::move(tasks);
    ins.operators_ = std::move(operators);
    if (ins.meta_.bucket_minutes <= 0)
        throw InstanceError("bucket_minutes must be positive");
    if (ins.meta_.horizon_minutes <= 0 || ins.meta_.horizon_minutes % ins.meta_.bucket_minutes != 0)
        throw InstanceError("horizon_minutes must be a positive multiple of bucket_minutes");
    if (ins.meta_.prep_minutes < 0 || ins.meta_.prep_minutes % ins.meta_.bucket_minutes != 0)
        throw InstanceError("prep_minutes must be a non-negative multiple of bucket_minutes");
    ins.horizon_ = ins.meta_.horizon_minutes / ins.meta_.bucket_minutes;
    ins.prep_ = ins.meta_.prep_minutes / ins.meta_.bucket_minutes;
    ins.index();
    ins.validate();
    return ins;
}

inline void Instance::index() {
    for (int oi = 0; oi < static_cast<int>(operators_.size()); ++oi) {
        auto& op = operators_[oi];
        std::sort(op.availabilities.begin(), op.availabilities.end(),
                  [](const Availability& a, const Availability& b) {
                      return a.earliest_start < b.earliest_start;
                  });
        for (int ai = 0; ai < static_cast<int>(op.availabilities.size()); ++ai)
            shifts_.push_back({op.availabilities[ai].shift_id, oi, ai});
    }
    std::sort(shifts_.begin(), shifts_.end(),
              [](const ShiftRef& a, const ShiftRef& b) { return a.shift_id < b.shift_id; });
    for (int si = 0; si < static_cast<int>(shifts_.size()); ++si) {
        if (!shift_index_.emplace(shifts_[si].shift_id, si).second)
            throw InstanceError("duplicate shift id " + std::to_string(shifts_[si].shift_id));
    }
    for (int ti = 0; ti < static_cast<int>(tasks_.size()); ++ti) {
        if (!task_index_.emplace(tasks_[ti].id, ti).second)
            throw InstanceError("duplicate task id " + std::to_string(tasks_[ti].id));
    }

    successors_.assign(tasks_.size(), {});
    for (const auto& t : tasks_) {
        if (t.predecessor >= 0) {
            successors_[task_index(t.predecessor)].push_back(t.id);
            ++predecessor_links_;
        }
    }

    eligibility_.assign(tasks_.size(), {});
    for (int ti = 0; ti < static_cast<int>(tasks_.size()); ++ti) {
        const Task& t = tasks_[ti];
        for (int si = 0; si < static_cast<int>(shifts_.size()); ++si) {
            const Availability& av = availability(si);
            if (av.earliest_start > t.start || av.latest_end < t.end) continue;
            const Skill* sk = shift_operator(si).skill_for(t.group);
            if (sk == nullptr) continue;
            SkillPenalty e;
            e.task = t.id;
            e.shift = si;
            e.deviation = std::max(0, t.required_skill - sk->level);
            e.bandwidth60 = std::max(t.base_bandwidth60, kCapacity60 / sk->parallel_capacity);
            e.eligible = true;
            eligibility_[ti].push_back(e);
            ++pair_count_;
        }
    }
}

inline void Instance::validate() const {
    for (int gi = 0; gi < static_cast<int>(groups_.size()); ++gi)
        if (groups_[gi].id != gi)
            throw InstanceError("group ids must be dense 0..N-1; index " + std::to_string(gi) +
                                " holds id " + std::to_string(groups_[gi].id));

    for (const auto& t : tasks_) {
        std::string where = "task " + std::to_string(t.id);
        if (t.group < 0 || t.group >= static_cast<int>(groups_.size()))
            throw InstanceError(where + ": unknown group " + std::to_string(t.group));
        if (t.start >= t.end) throw InstanceError(where + ": start bucket must precede end bucket");
        if (t.start < 0 || t.end > horizon_) throw InstanceError(where + ": outside the planning horizon");
        if (t.priority < 0) throw InstanceError(where + ": negative priority");
        if (t.required_skill < 0 || t.required_skill > 100)
            throw InstanceError(where + ": required_skill must be in [0,100]");
        if (!valid_bandwidth60(t.base_bandwidth60))
            throw InstanceError(where + ": invalid bandwidth");
        if (t.predecessor >= 0) {
            const Task& p = task(t.predecessor);
            if (p.group != t.group)
                throw InstanceError(where + ": predecessor " + std::to_string(p.id) + " is in another group");
            if (p.end != t.start)
                throw InstanceError(where + ": predecessor " + std::to_string(p.id) + " does not end at its start");
        }
    }

    for (const auto& op : operators_) {
        std::string where = "operator " + std::to_string(op.id);
        for (std::size_t i = 0; i < op.skills.size(); ++i) {
            const Skill& s = op.skills[i];
            if (s.group < 0 || s.group >= static_cast<int>(groups_.size()))
                throw InstanceError(where + ": skill for unknown group " + std::to_string(s.group));
            if (s.level < 0 || s.level > 100)
                throw InstanceError(where + ": skill level must be in [0,100]");
            if (s.parallel_capacity < 1 || s.parallel_capacity > 6)
                throw InstanceError(where + ": parallel_capacity must be in [1,6]");
            for (std::size_t j = i + 1; j < op.skills.size(); ++j)
                if (op.skills[j].group == s.group)
                    throw InstanceError(where + ": duplicate skill for group " + std::to_string(s.group));
        }
        if (op.min_partial_break < 0 || op.min_total_break < 0 || op.min_rest < 0)
            throw InstanceError(where + ": break and rest durations must be non-negative");
        for (std::size_t i = 0; i < op.availabilities.size(); ++i) {
            const Availability& a = op.availabilities[i];
            std::string aw = where + ", shift " + std::to_string(a.shift_id);
            if (a.earliest_start < 0 || a.latest_end > horizon_)
                throw InstanceError(aw + ": availability outside the horizon");
            if (a.earliest_start >= a.latest_end)
                throw InstanceError(aw + ": empty availability window");
            if (a.min_shift_len > a.max_shift_len || a.max_shift_len > a.latest_end - a.earliest_start)
                throw InstanceError(aw + ": need min_shift <= max_shift <= window length");
            if (a.max_len_without_break > a.max_shift_len)
                throw InstanceError(aw + ": max_len_without_break exceeds max_shift");
            if (a.break_window_open > a.break_window_close)
                throw InstanceError(aw + ": break window opens after it closes");
            if (i + 1 < op.availabilities.size() &&
                a.latest_end > op.availabilities[i + 1].earliest_start)
                throw InstanceError(where + ": overlapping availabilities");
        }
    }

    for (const auto& t : tasks_)
        if (t.mandatory && eligibility_[task_index(t.id)].empty())
            throw InstanceError("mandatory task " + std::to_string(t.id) + " has no eligible shift");

    auto parsed = parse_name(meta_.name);
    if (!parsed)
        throw InstanceError("instance name must look like <hours>_<shifts>_<tasks>: " + meta_.name);
    if (meta_.horizon_minutes % 60 != 0)
        throw InstanceError("horizon must be whole hours");
    if ((*parsed)[0] != meta_.horizon_minutes / 60 ||
        (*parsed)[1] != static_cast<int>(shifts_.size()) ||
        (*parsed)[2] != static_cast<int>(tasks_.size()))
        throw InstanceError("instance name " + meta_.name + " does not match horizon/shift/task counts");
}

}  // namespace opshift
