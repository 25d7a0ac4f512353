#pragma once

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "opshift/instance.hpp"

namespace opshift {

class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

namespace io_detail {

using nlohmann::json;

inline void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                           const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (allowed.find(it.key()) == allowed.end())
            throw ParseError(where + ": unknown field \"" + it.key() + "\"");
}

inline const json& field(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(where + ": missing field \"" + key + "\"");
    return *it;
}

inline int int_field(const json& obj, const char* key, const std::string& where) {
    const json& v = field(obj, key, where);
    if (!v.is_number_integer()) throw ParseError(where + ": field \"" + key + "\" must be an integer");
    return v.get<int>();
}

inline int minutes_field(const json& obj, const char* key, int bucket_minutes,
                         const std::string& where) {
    int m = int_field(obj, key, where);
    if (m % bucket_minutes != 0)
        throw ParseError(where + ": \"" + key + "\"=" + std::to_string(m) +
                         " is not a multiple of bucket_minutes=" + std::to_string(bucket_minutes));
    return m / bucket_minutes;
}

inline std::size_t line_of_offset(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

}  // namespace io_detail

inline Instance parse_instance_text(const std::string& text, const std::string& origin) {
    using nlohmann::json;
    using namespace io_detail;

    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(origin + ":" + std::to_string(line_of_offset(text, e.byte)) +
                         ": " + e.what());
    }
    if (!root.is_object()) throw ParseError(origin + ": top level must be an object");
    reject_unknown(root, {"meta", "groups", "tasks", "operators"}, origin);

    const json& meta_j = field(root, "meta", origin);
    reject_unknown(meta_j, {"name", "horizon_minutes", "bucket_minutes", "prep_minutes",
                            "group_parallel_limit"}, origin + ": meta");
    InstanceMeta meta;
    meta.name = field(meta_j, "name", "meta").get<std::string>();
    meta.bucket_minutes = int_field(meta_j, "bucket_minutes", "meta");
    meta.horizon_minutes = int_field(meta_j, "horizon_minutes", "meta");
    meta.prep_minutes = int_field(meta_j, "prep_minutes", "meta");
    meta.group_parallel_limit = int_field(meta_j, "group_parallel_limit", "meta");
    if (meta.bucket_minutes <= 0) throw ParseError("meta: bucket_minutes must be positive");
    const int bm = meta.bucket_minutes;

    std::vector<TaskGroup> groups;
    for (const json& g : field(root, "groups", origin)) {
        std::string where = "groups[" + std::to_string(groups.size()) + "]";
        reject_unknown(g, {"id", "name"}, where);
        TaskGroup tg;
        tg.id = int_field(g, "id", where);
        tg.name = field(g, "name", where).get<std::string>();
        groups.push_back(std::move(tg));
    }

    std::vector<Task> tasks;
    for (const json& t : field(root, "tasks", origin)) {
        std::string where = "tasks[" + std::to_string(tasks.size()) + "]";
        reject_unknown(t, {"id", "group", "start_minutes", "end_minutes", "priority",
                           "required_skill", "mandatory", "bandwidth", "predecessor"}, where);
        Task task;
        task.id = int_field(t, "id", where);
        task.group = int_field(t, "group", where);
        task.start = minutes_field(t, "start_minutes", bm, where);
        task.end = minutes_field(t, "end_minutes", bm, where);
        task.priority = int_field(t, "priority", where);
        task.required_skill = int_field(t, "required_skill", where);
        task.mandatory = field(t, "mandatory", where).get<bool>();
        task.base_bandwidth60 = parse_bandwidth(field(t, "bandwidth", where).get<std::string>());
        if (t.contains("predecessor") && !t["predecessor"].is_null())
            task.predecessor = int_field(t, "predecessor", where);
        tasks.push_back(task);
    }

    std::vector<Operator> operators;
    for (const json& o : field(root, "operators", origin)) {
        std::string where = "operators[" + std::to_string(operators.size()) + "]";
        reject_unknown(o, {"id", "min_partial_break_minutes", "min_total_break_minutes",
                           "min_rest_minutes", "skills", "availabilities"}, where);
        Operator op;
        op.id = int_field(o, "id", where);
        op.min_partial_break = minutes_field(o, "min_partial_break_minutes", bm, where);
        op.min_total_break = minutes_field(o, "min_total_break_minutes", bm, where);
        op.min_rest = minutes_field(o, "min_rest_minutes", bm, where);
        for (const json& s : field(o, "skills", where)) {
            std::string sw = where + ".skills[" + std::to_string(op.skills.size()) + "]";
            reject_unknown(s, {"group", "level", "parallel_capacity"}, sw);
            Skill sk;
            sk.group = int_field(s, "group", sw);
            sk.level = int_field(s, "level", sw);
            sk.parallel_capacity = int_field(s, "parallel_capacity", sw);
            op.skills.push_back(sk);
        }
        for (const json& a : field(o, "availabilities", where)) {
            std::string aw = where + ".availabilities[" + std::to_string(op.availabilities.size()) + "]";
            reject_unknown(a, {"shift_id", "earliest_start_minutes", "latest_end_minutes",
                               "min_shift_minutes", "max_shift_minutes", "max_no_break_minutes",
                               "break_window_open_minutes", "break_window_close_minutes"}, aw);
            Availability av;
            av.shift_id = int_field(a, "shift_id", aw);
            av.earliest_start = minutes_field(a, "earliest_start_minutes", bm, aw);
            av.latest_end = minutes_field(a, "latest_end_minutes", bm, aw);
            av.min_shift_len = minutes_field(a, "min_shift_minutes", bm, aw);
            av.max_shift_len = minutes_field(a, "max_shift_minutes", bm, aw);
            av.max_len_without_break = minutes_field(a, "max_no_break_minutes", bm, aw);
            av.break_window_open = minutes_field(a, "break_window_open_minutes", bm, aw);
            av.break_window_close = minutes_field(a, "break_window_close_minutes", bm, aw);
            op.availabilities.push_back(av);
        }
        operators.push_back(std::move(op));
    }

    return Instance::build(std::move(meta), std::move(groups), std::move(tasks),
                           std::move(operators));
}

inline Instance load_instance(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open instance file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance_text(buf.str(), path);
}

/// Canonical serialization: pure function of the Instance, so
/// save(load(save(x))) is byte-identical to save(x).
inline std::string instance_to_json(const Instance& ins) {
    using nlohmann::ordered_json;
    const int bm = ins.bucket_minutes();
    ordered_json root;
    root["meta"] = {{"name", ins.name()},
                    {"horizon_minutes", ins.meta().horizon_minutes},
                    {"bucket_minutes", bm},
                    {"prep_minutes", ins.meta().prep_minutes},
                    {"group_parallel_limit", ins.group_parallel_limit()}};
    root["groups"] = ordered_json::array();
    for (const auto& g : ins.groups())
        root["groups"].push_back({{"id", g.id}, {"name", g.name}});
    root["tasks"] = ordered_json::array();
    for (const auto& t : ins.tasks()) {
        ordered_json j = {{"id", t.id},
                          {"group", t.group},
                          {"start_minutes", t.start * bm},
                          {"end_minutes", t.end * bm},
                          {"priority", t.priority},
                          {"required_skill", t.required_skill},
                          {"mandatory", t.mandatory},
                          {"bandwidth", bandwidth_text(t.base_bandwidth60)}};
        if (t.predecessor >= 0) j["predecessor"] = t.predecessor;
        root["tasks"].push_back(std::move(j));
    }
    root["operators"] = ordered_json::array();
    for (const auto& o : ins.operators()) {
        ordered_json jo = {{"id", o.id},
                           {"min_partial_break_minutes", o.min_partial_break * bm},
                           {"min_total_break_minutes", o.min_total_break * bm},
                           {"min_rest_minutes", o.min_rest * bm}};
        jo["skills"] = ordered_json::array();
        for (const auto& s : o.skills)
            jo["skills"].push_back({{"group", s.group},
                                    {"level", s.level},
                                    {"parallel_capacity", s.parallel_capacity}});
        jo["availabilities"] = ordered_json::array();
        for (const auto& a : o.availabilities)
            jo["availabilities"].push_back(
                {{"shift_id", a.shift_id},
                 {"earliest_start_minutes", a.earliest_start * bm},
                 {"latest_end_minutes", a.latest_end * bm},
                 {"min_shift_minutes", a.min_shift_len * bm},
                 {"max_shift_minutes", a.max_shift_len * bm},
                 {"max_no_break_minutes", a.max_len_without_break * bm},
                 {"break_window_open_minutes", a.break_window_open * bm},
                 {"break_window_close_minutes", a.break_window_close * bm}});
        root["operators"].push_back(std::move(jo));
    }
    return root.dump(2) + "\n";
}

inline void save_instance(const Instance& ins, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write instance file: " + path);
    out << instance_to_json(ins);
}

}  // namespace opshift
