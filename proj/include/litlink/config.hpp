#pragma once

#include <fstream>
#include <istream>
#include <string>

#include "json.hpp"

#include "litlink/corpus.hpp"
#include "litlink/ranking.hpp"

namespace litlink {

/// Loads a SearchConfig from its JSON form. Every field is optional and
/// falls back to the tuned defaults; unknown keys are an error.
inline SearchConfig search_config_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("search config: expected a JSON object");
    detail::reject_unknown_keys(
        j, {"k1", "b", "weights", "decay", "min_score_threshold", "top_k"}, "search config");
    SearchConfig cfg;
    auto get_number = [](const nlohmann::json& obj, const char* key, double fallback) {
        auto it = obj.find(key);
        if (it == obj.end()) return fallback;
        if (!it->is_number()) {
            throw ParseError(std::string("search config: '") + key + "' must be a number");
        }
        return it->get<double>();
    };
    cfg.k1 = get_number(j, "k1", cfg.k1);
    cfg.min_score_threshold = get_number(j, "min_score_threshold", cfg.min_score_threshold);
    if (auto it = j.find("top_k"); it != j.end()) {
        if (!it->is_number_integer()) throw ParseError("search config: 'top_k' must be an integer");
        cfg.top_k = it->get<int>();
    }
    if (auto it = j.find("b"); it != j.end()) {
        if (!it->is_object()) throw ParseError("search config: 'b' must be an object");
        detail::reject_unknown_keys(
            *it, {"authors", "journal", "affiliations", "title", "abstract", "content"},
            "search config");
        for (Field f : kAllFields) {
            cfg.b(f) = get_number(*it, std::string(field_name(f)).c_str(), cfg.b(f));
        }
    }
    if (auto it = j.find("weights"); it != j.end()) {
        if (!it->is_object()) throw ParseError("search config: 'weights' must be an object");
        detail::reject_unknown_keys(*it, {"au", "jo", "af", "ti", "co"}, "search config");
        for (Kind k : kAllKinds) {
            cfg.weight(k) = get_number(*it, std::string(kind_name(k)).c_str(), cfg.weight(k));
        }
    }
    if (auto it = j.find("decay"); it != j.end()) {
        if (!it->is_object()) throw ParseError("search config: 'decay' must be an object");
        detail::reject_unknown_keys(
            *it, {"offset_days", "half_life_days", "decay_at_half_life", "enabled"},
            "search config");
        if (auto d = it->find("offset_days"); d != it->end()) {
            cfg.decay.offset_days = d->get<int>();
        }
        if (auto d = it->find("half_life_days"); d != it->end()) {
            cfg.decay.half_life_days = d->get<int>();
        }
        cfg.decay.decay_at_half_life =
            get_number(*it, "decay_at_half_life", cfg.decay.decay_at_half_life);
        if (auto d = it->find("enabled"); d != it->end()) {
            if (!d->is_boolean()) throw ParseError("search config: 'decay.enabled' must be a boolean");
            cfg.decay.enabled = d->get<bool>();
        }
    }
    cfg.validate();
    return cfg;
}

inline SearchConfig load_search_config(std::istream& in) {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("search config: ") + e.what());
    }
    return search_config_from_json(j);
}

inline SearchConfig load_search_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config file: " + path);
    return load_search_config(in);
}

inline nlohmann::json search_config_json(const SearchConfig& cfg) {
    nlohmann::json j;
    j["k1"] = cfg.k1;
    nlohmann::json b = nlohmann::json::object();
    for (Field f : kAllFields) b[std::string(field_name(f))] = cfg.b(f);
    j["b"] = b;
    nlohmann::json w = nlohmann::json::object();
    for (Kind k : kAllKinds) w[std::string(kind_name(k))] = cfg.weight(k);
    j["weights"] = w;
    j["decay"] = {{"offset_days", cfg.decay.offset_days},
                  {"half_life_days", cfg.decay.half_life_days},
                  {"decay_at_half_life", cfg.decay.decay_at_half_life},
                  {"enabled", cfg.decay.enabled}};
    j["min_score_threshold"] = cfg.min_score_threshold;
    j["top_k"] = cfg.top_k;
    return j;
}

}  // namespace litlink
