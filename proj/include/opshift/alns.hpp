#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "opshift/objective.hpp"
#include "opshift/rng.hpp"

namespace opshift {

enum class DestroyOp { Random = 0, Worst = 1, Operator = 2, Time = 3 };
enum class RepairOp { A = 0, B = 1, C = 2, D = 3, E = 4 };
constexpr int kNumDestroyOps = 4;
constexpr int kNumRepairOps = 5;

inline const char* to_string(DestroyOp d) {
    switch (d) {
        case DestroyOp::Random: return "random";
        case DestroyOp::Worst: return "worst";
        case DestroyOp::Operator: return "operator";
        case DestroyOp::Time: return "time";
    }
    return "?";
}

inline const char* to_string(RepairOp r) {
    switch (r) {
        case RepairOp::A: return "A";
        case RepairOp::B: return "B";
        case RepairOp::C: return "C";
        case RepairOp::D: return "D";
        case RepairOp::E: return "E";
    }
    return "?";
}

struct AlnsConfig {
    long iterations = 10000;
    int segment_len = 100;
    double chance_lo = 0.1;
    double chance_hi = 0.5;
    int width_lo_minutes = 180;
    int width_hi_minutes = 300;
    std::vector<int> slice_set = {0, 4, 8, 16};
    double eps1 = 40.0;
    double eps2 = 25.0;
    double eps3 = 8.0;
    double p_react = 0.1;
    Rational accept_band = Rational(1, 200);  // 0.5%
    ObjectiveWeights weights;
    bool successor_mode = false;  // successor matching + successor destruction
    std::uint64_t rng_seed = 1;

    void check() const {
        if (iterations < 0) throw std::invalid_argument("iterations must be >= 0");
        if (segment_len < 1) throw std::invalid_argument("segment_len must be >= 1");
        if (!(0.0 <= chance_lo && chance_lo <= chance_hi && chance_hi <= 1.0))
            throw std::invalid_argument("need 0 <= chance_lo <= chance_hi <= 1");
        if (accept_band.is_negative()) throw std::invalid_argument("accept_band must be >= 0");
    }
};

class InstanceInfeasibleError : public std::runtime_error {
public:
    explicit InstanceInfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

// --------------------------------------------------------------------------
// Adaptive layer

/// Per-heuristic weights, segment scores and usage counts.
struct OperatorStats {
    std::vector<double> weight;
    std::vector<double> score;
    std::vector<int> usage;

    explicit OperatorStats(int n) : weight(n, 1.0), score(n, 0.0), usage(n, 0) {}
    int size() const { return static_cast<int>(weight.size()); }

    /// Selection probability of heuristic h: weight[h] / sum(weight).
    double probability(int h) const {
        double sum = 0;
        for (double w : weight) sum += w;
        return weight[h] / sum;
    }
};

/// Roulette-wheel draw proportional to the current weights.
inline int select_heuristic(const OperatorStats& stats, Rng& rng) {
    double sum = 0;
    for (double w : stats.weight) sum += w;
    double ticket = rng.unit() * sum;
    double acc = 0;
    for (int h = 0; h < stats.size(); ++h) {
        acc += stats.weight[h];
        if (ticket < acc) return h;
    }
    return stats.size() - 1;
}

enum class IterationClass { GlobalImprove, IncumbentImprove, AcceptedWorse, Rejected };

inline void update_scores(OperatorStats& stats, int h, IterationClass cls, const AlnsConfig& cfg) {
    switch (cls) {
        case IterationClass::GlobalImprove: stats.score[h] += cfg.eps1; break;
        case IterationClass::IncumbentImprove: stats.score[h] += cfg.eps2; break;
        case IterationClass::AcceptedWorse: stats.score[h] += cfg.eps3; break;
        case IterationClass::Rejected: break;
    }
    stats.usage[h] += 1;
}

/// End-of-segment reweighting; scores and usage counts reset afterwards.
/// Weights are floored at a tiny positive value so no heuristic's selection
/// probability can reach exactly zero.
inline void update_weights(OperatorStats& stats, const AlnsConfig& cfg) {
    for (int h = 0; h < stats.size(); ++h) {
        double w = (1.0 - cfg.p_react) * stats.weight[h] +
                   cfg.p_react * stats.score[h] / std::max(1, stats.usage[h]);
        stats.weight[h] = std::max(w, 1e-6);
        stats.score[h] = 0.0;
        stats.usage[h] = 0;
    }
}

// --------------------------------------------------------------------------
// Acceptance

enum class Outcome { NewBest, Accepted, Rejected };

inline const char* to_string(Outcome o) {
    switch (o) {
        case Outcome::NewBest: return "new_best";
        case Outcome::Accepted: return "accepted";
        case Outcome::Rejected: return "rejected";
    }
    return "?";
}

struct AcceptDecision {
    Outcome outcome;
    IterationClass cls;
};

/// Band acceptance: a candidate above the global best is always taken; one
/// at most `band` below the incumbent is accepted; anything lower is
/// rejected. A non-positive incumbent degenerates the relative band, so the
/// rule falls back to "at least as good as the incumbent".
inline AcceptDecision accept(const Rational& incumbent, const Rational& candidate,
                             const Rational& best, const Rational& band) {
    if (candidate > best) return {Outcome::NewBest, IterationClass::GlobalImprove};
    bool accepted;
    if (incumbent.is_positive())
        accepted = candidate >= incumbent * (Rational(1) - band);
    else
        accepted = candidate >= incumbent;
    if (!accepted) return {Outcome::Rejected, IterationClass::Rejected};
    return {Outcome::Accepted, candidate > incumbent ? IterationClass::IncumbentImprove
                                                     : IterationClass::AcceptedWorse};
}

// --------------------------------------------------------------------------
// Candidate pair table

/// One eligible (task, shift) pair with every sort key the repair heuristics
/// use, precomputed once per run. `contrib` is the priority/penalty objective
/// contribution scaled by the common weight denominator, so integer
/// comparisons order pairs exactly.
struct PairKey {
    int task_index;
    int shift_index;
    int task_id;
    int shift_id;
    int priority;
    int deviation;
    int bandwidth60;
    int length;
    int skill_fit;  // |operator level - required|, smaller = closer fit
    int op_groups;  // group count the operator is skilled in
    std::int64_t contrib;
    bool mandatory;
};

struct PairTable {
    std::vector<PairKey> pairs;                   // grouped by task index
    std::vector<std::pair<int, int>> task_span;   // [begin, end) into pairs
    std::vector<int> stack_set_of;                // task index -> identical-interval set
    std::vector<std::vector<int>> stack_sets;     // set -> task indices
    std::int64_t scaled_w1 = 1, scaled_w2 = 1;    // weights over a common denominator
    bool plain_weights = true;

    static PairTable build(const Instance& inst, const ObjectiveWeights& w) {
        PairTable t;
        std::int64_t den = std::lcm(w.priority.den(), w.penalty.den());
        t.scaled_w1 = w.priority.num() * (den / w.priority.den());
        t.scaled_w2 = w.penalty.num() * (den / w.penalty.den());
        t.plain_weights = w.plain();

        const auto& tasks = inst.tasks();
        t.task_span.resize(tasks.size());
        for (std::size_t ti = 0; ti < tasks.size(); ++ti) {
            const Task& task = tasks[ti];
            int begin = static_cast<int>(t.pairs.size());
            for (const SkillPenalty& e : inst.eligible(task.id)) {
                const Operator& op = inst.shift_operator(e.shift);
                const Skill* sk = op.skill_for(task.group);
                PairKey k;
                k.task_index = static_cast<int>(ti);
                k.shift_index = e.shift;
                k.task_id = task.id;
                k.shift_id = inst.shift(e.shift).shift_id;
                k.priority = task.priority;
                k.deviation = e.deviation;
                k.bandwidth60 = e.bandwidth60;
                k.length = task.length();
                k.skill_fit = std::abs(sk->level - task.required_skill);
                k.op_groups = static_cast<int>(op.skills.size());
                k.contrib = t.scaled_w1 * task.priority - t.scaled_w2 * e.deviation;
                k.mandatory = task.mandatory;
                t.pairs.push_back(k);
            }
            t.task_span[ti] = {begin, static_cast<int>(t.pairs.size())};
        }

        // identical (start, end, group) sets for task stacking
        std::map<std::tuple<Bucket, Bucket, int>, int> sets;
        t.stack_set_of.resize(tasks.size());
        for (std::size_t ti = 0; ti < tasks.size(); ++ti) {
            auto key = std::make_tuple(tasks[ti].start, tasks[ti].end, tasks[ti].group);
            auto [it, fresh] = sets.emplace(key, static_cast<int>(t.stack_sets.size()));
            if (fresh) t.stack_sets.emplace_back();
            t.stack_set_of[ti] = it->second;
            t.stack_sets[it->second].push_back(static_cast<int>(ti));
        }
        return t;
    }

    const PairKey* find(int task_index, int shift_index) const {
        auto [b, e] = task_span[task_index];
        for (int i = b; i < e; ++i)
            if (pairs[i].shift_index == shift_index) return &pairs[i];
        return nullptr;
    }
};

/// Strict ordering "a should be attempted before b" for one repair sorter.
/// Every comparison is integral, the final tie-break is (task id, shift id).
inline bool pair_before(const PairKey& a, const PairKey& b, RepairOp op) {
    auto tie = [&]() {
        if (a.task_id != b.task_id) return a.task_id < b.task_id;
        return a.shift_id < b.shift_id;
    };
    auto penalty_priority = [&](int& out) {
        if (a.deviation != b.deviation) { out = a.deviation < b.deviation ? 1 : -1; return true; }
        if (a.priority != b.priority) { out = a.priority > b.priority ? 1 : -1; return true; }
        return false;
    };
    int r = 0;
    switch (op) {
        case RepairOp::A:
            if (penalty_priority(r)) return r > 0;
            if (a.skill_fit != b.skill_fit) return a.skill_fit < b.skill_fit;
            return tie();
        case RepairOp::B:
            if (penalty_priority(r)) return r > 0;
            if (a.skill_fit != b.skill_fit) return a.skill_fit > b.skill_fit;
            return tie();
        case RepairOp::C:
            if (penalty_priority(r)) return r > 0;
            if (a.bandwidth60 != b.bandwidth60) return a.bandwidth60 < b.bandwidth60;
            if (a.skill_fit != b.skill_fit) return a.skill_fit < b.skill_fit;
            return tie();
        case RepairOp::D:
            if (a.contrib != b.contrib) return a.contrib > b.contrib;
            if (a.bandwidth60 != b.bandwidth60) return a.bandwidth60 < b.bandwidth60;
            if (a.skill_fit != b.skill_fit) return a.skill_fit < b.skill_fit;
            return tie();
        case RepairOp::E: {
            // efficiency = contrib / (bandwidth * length), compared cross-multiplied
            __int128 lhs = static_cast<__int128>(a.contrib) *
                           (static_cast<std::int64_t>(b.bandwidth60) * b.length);
            __int128 rhs = static_cast<__int128>(b.contrib) *
                           (static_cast<std::int64_t>(a.bandwidth60) * a.length);
            if (lhs != rhs) return lhs > rhs;
            if (a.priority != b.priority) return a.priority > b.priority;
            if (a.bandwidth60 != b.bandwidth60) return a.bandwidth60 < b.bandwidth60;
            if (a.op_groups != b.op_groups) return a.op_groups < b.op_groups;
            return tie();
        }
    }
    return tie();
}

/// Shuffles a sorted candidate list inside consecutive blocks of length mu,
/// mu drawn from the configured slice set; mu = 0 keeps the list as is.
inline void slice_shuffle(std::vector<int>& order, const std::vector<int>& slice_set, Rng& rng) {
    if (slice_set.empty()) return;
    int mu = slice_set[rng.below(slice_set.size())];
    if (mu <= 0) return;
    for (std::size_t start = 0; start < order.size(); start += mu)
        rng.shuffle(order, start, std::min(order.size(), start + mu));
}

// --------------------------------------------------------------------------
// Repair

namespace alns_detail {

/// Inserts one pair if it is feasible and pays off. Optional tasks are
/// inserted only when their exact weighted objective delta is positive;
/// mandatory tasks are inserted whenever feasible.
inline bool try_insert_pair(Schedule& sched, const PairKey& pk, const ObjectiveWeights& weights,
                            bool plain_weights) {
    if (!pk.mandatory && plain_weights && pk.contrib <= 0) return false;
    auto plan = probe_insert(sched, pk.task_id, pk.shift_index);
    if (!plan) return false;
    if (!pk.mandatory && !plain_weights && !delta_for_plan(sched, *plan, weights).is_positive())
        return false;
    apply_insert(sched, *plan);
    return true;
}

/// Task stacking: after a seed insertion, pull identical (start, end, group)
/// pool tasks into the same shift, best key first, each one only if it is
/// individually feasible at commit time.
inline void stack_partners(Schedule& sched, const PairKey& seed, const PairTable& table,
                           RepairOp op, const ObjectiveWeights& weights) {
    const auto& set = table.stack_sets[table.stack_set_of[seed.task_index]];
    if (set.size() <= 1) return;
    std::vector<const PairKey*> cands;
    for (int ti : set) {
        if (ti == seed.task_index || sched.shift_of_task_index(ti) >= 0) continue;
        if (const PairKey* pk = table.find(ti, seed.shift_index)) cands.push_back(pk);
    }
    std::sort(cands.begin(), cands.end(),
              [&](const PairKey* x, const PairKey* y) { return pair_before(*x, *y, op); });
    for (const PairKey* pk : cands)
        try_insert_pair(sched, *pk, weights, table.plain_weights);
}

/// Successor matching: try to place the unassigned link partners of a task
/// into the same shift, silently skipping infeasible ones.
inline void match_partners(Schedule& sched, int task_id, int shift_index, const PairTable& table,
                           const ObjectiveWeights& weights) {
    const Instance& inst = sched.instance();
    const Task& task = inst.task(task_id);
    auto attempt = [&](int partner_id) {
        int pi = inst.task_index(partner_id);
        if (sched.shift_of_task_index(pi) >= 0) return;
        if (const PairKey* pk = table.find(pi, shift_index))
            try_insert_pair(sched, *pk, weights, table.plain_weights);
    };
    if (task.predecessor >= 0) attempt(task.predecessor);
    for (int succ : inst.successors(task_id)) attempt(succ);
}

}  // namespace alns_detail

/// One repair pass: sort every (pool task, shift) pair under the chosen
/// sorter, slice-shuffle, then walk the list once attempting insertions,
/// with task stacking and (in successor mode) successor matching.
inline void repair(Schedule& sched, RepairOp op, const AlnsConfig& cfg, const PairTable& table,
                   Rng* rng, bool successor_matching) {
    std::vector<int> order;
    const auto& tasks = sched.instance().tasks();
    for (std::size_t ti = 0; ti < tasks.size(); ++ti) {
        if (sched.shift_of_task_index(static_cast<int>(ti)) >= 0) continue;
        auto [b, e] = table.task_span[ti];
        for (int i = b; i < e; ++i) order.push_back(i);
    }
    if (order.empty()) return;
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        return pair_before(table.pairs[x], table.pairs[y], op);
    });
    if (rng != nullptr) slice_shuffle(order, cfg.slice_set, *rng);

    for (int idx : order) {
        const PairKey& pk = table.pairs[idx];
        if (sched.shift_of_task_index(pk.task_index) >= 0) continue;
        if (!alns_detail::try_insert_pair(sched, pk, cfg.weights, table.plain_weights)) continue;
        alns_detail::stack_partners(sched, pk, table, op, cfg.weights);
        if (successor_matching)
            alns_detail::match_partners(sched, pk.task_id, pk.shift_index, table, cfg.weights);
    }
}

/// Starting solution: efficiency-sorted pass over an empty schedule,
/// mandatory tasks first in the same order. Deterministic, no shuffling.
inline Schedule build_start(const Instance& inst, const ObjectiveWeights& weights) {
    PairTable table = PairTable::build(inst, weights);
    Schedule sched(inst);

    std::vector<int> order(table.pairs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        return pair_before(table.pairs[x], table.pairs[y], RepairOp::E);
    });

    for (int idx : order) {
        const PairKey& pk = table.pairs[idx];
        if (!pk.mandatory || sched.shift_of_task_index(pk.task_index) >= 0) continue;
        if (auto plan = probe_insert(sched, pk.task_id, pk.shift_index)) apply_insert(sched, *plan);
    }
    for (const Task& t : inst.tasks())
        if (t.mandatory && !sched.assigned(t.id))
            throw InstanceInfeasibleError("mandatory task " + std::to_string(t.id) +
                                          " cannot be placed in the starting solution");

    for (int idx : order) {
        const PairKey& pk = table.pairs[idx];
        if (sched.shift_of_task_index(pk.task_index) >= 0) continue;
        if (!alns_detail::try_insert_pair(sched, pk, weights, table.plain_weights)) continue;
        alns_detail::stack_partners(sched, pk, table, RepairOp::E, weights);
    }
    return sched;
}

// --------------------------------------------------------------------------
// Destroy

/// Removes each assigned optional task with probability l ~ U[chance_lo,
/// chance_hi]. Returns the removed task indices.
inline std::vector<int> destroy_random(Schedule& sched, const AlnsConfig& cfg, Rng& rng) {
    double l = rng.real(cfg.chance_lo, cfg.chance_hi);
    std::vector<int> removed;
    const auto& tasks = sched.instance().tasks();
    for (std::size_t ti = 0; ti < tasks.size(); ++ti) {
        if (tasks[ti].mandatory || sched.shift_of_task_index(static_cast<int>(ti)) < 0) continue;
        if (rng.unit() <= l) {
            remove_task(sched, tasks[ti].id);
            removed.push_back(static_cast<int>(ti));
        }
    }
    return removed;
}

namespace alns_detail {

inline bool shift_holds_mandatory(const Schedule& sched, int shift_index) {
    for (int ti : sched.tasks_in_shift(shift_index))
        if (sched.instance().tasks()[ti].mandatory) return true;
    return false;
}

inline void clear_shift(Schedule& sched, int shift_index, std::vector<int>& removed) {
    std::vector<int> snapshot = sched.tasks_in_shift(shift_index);
    for (int ti : snapshot) {
        remove_task(sched, sched.instance().tasks()[ti].id);
        removed.push_back(ti);
    }
}

}  // namespace alns_detail

/// Clears the ceil(N*l) enabled shifts with the lowest objective contribution
/// per planned bucket; shifts holding a mandatory task are exempt.
inline std::vector<int> destroy_worst(Schedule& sched, const AlnsConfig& cfg, Rng& rng,
                                      const PairTable& table) {
    double l = rng.real(cfg.chance_lo, cfg.chance_hi);
    const Instance& inst = sched.instance();
    struct Ranked { std::int64_t contrib; Bucket len; int shift_index; };
    std::vector<Ranked> enabled;
    for (int si = 0; si < inst.num_shifts(); ++si) {
        if (!sched.plan(si).enabled) continue;
        std::int64_t sum = 0;
        for (int ti : sched.tasks_in_shift(si))
            sum += table.scaled_w1 * inst.tasks()[ti].priority -
                   table.scaled_w2 * sched.assignment_deviation(ti);
        enabled.push_back({sum, sched.plan(si).length(), si});
    }
    if (enabled.empty()) return {};
    int count = static_cast<int>(std::ceil(enabled.size() * l));
    std::sort(enabled.begin(), enabled.end(), [](const Ranked& a, const Ranked& b) {
        __int128 lhs = static_cast<__int128>(a.contrib) * b.len;
        __int128 rhs = static_cast<__int128>(b.contrib) * a.len;
        if (lhs != rhs) return lhs < rhs;
        return a.shift_index < b.shift_index;
    });
    std::vector<int> removed;
    for (int i = 0; i < count && i < static_cast<int>(enabled.size()); ++i) {
        int si = enabled[i].shift_index;
        if (alns_detail::shift_holds_mandatory(sched, si)) continue;
        alns_detail::clear_shift(sched, si, removed);
    }
    return removed;
}

/// Clears all shifts of every operator whose coin lands under l.
inline std::vector<int> destroy_operator(Schedule& sched, const AlnsConfig& cfg, Rng& rng) {
    double l = rng.real(cfg.chance_lo, cfg.chance_hi);
    const Instance& inst = sched.instance();
    std::vector<int> removed;
    for (const Operator& op : inst.operators()) {
        if (rng.unit() > l) continue;
        for (const Availability& av : op.availabilities) {
            int si = inst.shift_index_of(av.shift_id);
            if (!sched.plan(si).enabled || alns_detail::shift_holds_mandatory(sched, si)) continue;
            alns_detail::clear_shift(sched, si, removed);
        }
    }
    return removed;
}

/// Vertical slice: removes every optional assigned task touching the drawn
/// time interval, even partially.
inline std::vector<int> destroy_time(Schedule& sched, const AlnsConfig& cfg, Rng& rng) {
    const Instance& inst = sched.instance();
    Bucket t = static_cast<Bucket>(rng.below(inst.horizon()));
    Bucket lo = std::max(1, cfg.width_lo_minutes / inst.bucket_minutes());
    Bucket hi = std::max(lo, cfg.width_hi_minutes / inst.bucket_minutes());
    Bucket width = static_cast<Bucket>(rng.range(lo, hi));
    std::vector<int> removed;
    const auto& tasks = inst.tasks();
    for (std::size_t ti = 0; ti < tasks.size(); ++ti) {
        if (tasks[ti].mandatory || sched.shift_of_task_index(static_cast<int>(ti)) < 0) continue;
        if (tasks[ti].start <= t + width && tasks[ti].end > t) {  // R_i meets [t, t+width]
            remove_task(sched, tasks[ti].id);
            removed.push_back(static_cast<int>(ti));
        }
    }
    return removed;
}

/// Successor destruction: additionally removes the assigned link partners of
/// every task removed by the base destroy step, wherever they are assigned.
inline void successor_cascade(Schedule& sched, std::vector<int>& removed) {
    const Instance& inst = sched.instance();
    std::size_t base = removed.size();
    for (std::size_t i = 0; i < base; ++i) {
        const Task& task = inst.tasks()[removed[i]];
        auto drop = [&](int partner_id) {
            int pi = inst.task_index(partner_id);
            if (inst.tasks()[pi].mandatory || sched.shift_of_task_index(pi) < 0) return;
            remove_task(sched, partner_id);
            removed.push_back(pi);
        };
        if (task.predecessor >= 0) drop(task.predecessor);
        for (int succ : inst.successors(task.id)) drop(succ);
    }
}

/// Post-destroy cleanup: every enabled shift shrinks to the hull of what it
/// still holds, so stale window space cannot block later insertions.
inline void normalize_all(Schedule& sched) {
    for (int si = 0; si < sched.instance().num_shifts(); ++si) normalize_shift(sched, si);
}

// --------------------------------------------------------------------------
// Main loop

struct IterRecord {
    long iter;
    DestroyOp destroy;
    RepairOp repair;
    Rational candidate;
    Outcome outcome;
    Rational best;
};

struct RunResult {
    Schedule best;
    Rational best_value;
    Rational start_value;
    long iterations = 0;
};

using IterCallback = std::function<void(const IterRecord&)>;

/// The full adaptive search. Deterministic for a fixed (instance, config):
/// one rng stream drives selection, destruction and repair shuffling.
inline RunResult run(const Instance& inst, const AlnsConfig& cfg, const IterCallback& cb = {}) {
    cfg.check();
    PairTable table = PairTable::build(inst, cfg.weights);
    Rng rng(cfg.rng_seed);

    Schedule incumbent = build_start(inst, cfg.weights);
    Rational inc_value = weighted_value(incumbent.counters(), cfg.weights);
    RunResult result{incumbent, inc_value, inc_value, 0};

    OperatorStats destroy_stats(kNumDestroyOps);
    OperatorStats repair_stats(kNumRepairOps);

    for (long iter = 1; iter <= cfg.iterations; ++iter) {
        int d = select_heuristic(destroy_stats, rng);
        int r = select_heuristic(repair_stats, rng);

        Schedule candidate = incumbent;
        bool cascade = cfg.successor_mode ? rng.coin() : false;
        std::vector<int> removed;
        switch (static_cast<DestroyOp>(d)) {
            case DestroyOp::Random: removed = destroy_random(candidate, cfg, rng); break;
            case DestroyOp::Worst: removed = destroy_worst(candidate, cfg, rng, table); break;
            case DestroyOp::Operator: removed = destroy_operator(candidate, cfg, rng); break;
            case DestroyOp::Time: removed = destroy_time(candidate, cfg, rng); break;
        }
        if (cascade) successor_cascade(candidate, removed);
        normalize_all(candidate);
        repair(candidate, static_cast<RepairOp>(r), cfg, table, &rng, cfg.successor_mode);

        Rational cand_value = weighted_value(candidate.counters(), cfg.weights);
        AcceptDecision decision = accept(inc_value, cand_value, result.best_value, cfg.accept_band);
        update_scores(destroy_stats, d, decision.cls, cfg);
        update_scores(repair_stats, r, decision.cls, cfg);

#ifndef NDEBUG
        {
            FeasibilityReport rep = validate(candidate);
            if (!rep.ok)
                throw std::logic_error("candidate failed validation at iteration " +
                                       std::to_string(iter) + ": " + rep.violations.front().detail);
        }
#endif

        switch (decision.outcome) {
            case Outcome::NewBest:
                result.best = candidate;
                result.best_value = cand_value;
                incumbent = std::move(candidate);
                inc_value = cand_value;
                break;
            case Outcome::Accepted:
                incumbent = std::move(candidate);
                inc_value = cand_value;
                break;
            case Outcome::Rejected:
                break;
        }

        if (cb) cb({iter, static_cast<DestroyOp>(d), static_cast<RepairOp>(r), cand_value,
                    decision.outcome, result.best_value});

        if (iter % cfg.segment_len == 0) {
            update_weights(destroy_stats, cfg);
            update_weights(repair_stats, cfg);
#ifdef NDEBUG
            FeasibilityReport rep = validate(incumbent);
            if (!rep.ok)
                throw std::logic_error("incumbent failed validation at segment end, iteration " +
                                       std::to_string(iter));
#endif
        }
        result.iterations = iter;
    }
    return result;
}

}  // namespace opshift
