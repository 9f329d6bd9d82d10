#include "cqatag/baselines/prediction.hpp"

#include "cqatag/error.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

namespace cqatag::baselines {

const char* to_string(Source source) {
    switch (source) {
    case Source::PHead: return "P-head";
    case Source::GHead: return "G-head";
    case Source::Baseline: return "Baseline";
    case Source::Majority: return "Majority";
    }
    return "?";
}

Source source_from_string(const std::string& name) {
    for (auto s : {Source::PHead, Source::GHead, Source::Baseline, Source::Majority}) {
        if (name == to_string(s)) return s;
    }
    throw UserError("unknown prediction source \"" + name + "\"");
}

void validate(const PredictionSet& set) {
    const auto where = "post " + std::to_string(set.post_id) + ": ";
    if (set.tags.size() > kMaxPredictions) throw UserError(where + "more than 5 predictions");
    std::unordered_set<std::string> seen;
    std::map<Source, double> last;
    for (const auto& t : set.tags) {
        if (!seen.insert(t.tag).second) throw UserError(where + "duplicate tag \"" + t.tag + "\"");
        const auto it = last.find(t.source);
        if (it != last.end() && t.score > it->second) {
            throw UserError(where + "scores increase within source " + to_string(t.source));
        }
        last[t.source] = t.score;
    }
}

nlohmann::json prediction_to_json(const PredictionSet& set) {
    nlohmann::json preds = nlohmann::json::array();
    for (const auto& t : set.tags) {
        preds.push_back({{"tag", t.tag}, {"score", t.score}, {"source", to_string(t.source)}});
    }
    return {{"post_id", set.post_id}, {"predictions", preds}};
}

PredictionSet prediction_from_json(const nlohmann::json& j) {
    PredictionSet set;
    try {
        set.post_id = j.at("post_id").get<ingest::PostId>();
        for (const auto& p : j.at("predictions")) {
            set.tags.push_back({p.at("tag").get<std::string>(), p.at("score").get<double>(),
                                source_from_string(p.at("source").get<std::string>())});
        }
    } catch (const nlohmann::json::exception& e) {
        throw UserError(std::string("malformed prediction record: ") + e.what());
    }
    return set;
}

void write_predictions(std::ostream& out, const std::vector<PredictionSet>& sets) {
    for (const auto& s : sets) out << prediction_to_json(s).dump() << '\n';
}

std::vector<PredictionSet> read_predictions(std::istream& in) {
    std::vector<PredictionSet> sets;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw UserError("predictions line " + std::to_string(line_no) + ": " + e.what());
        }
        sets.push_back(prediction_from_json(j));
        validate(sets.back());
    }
    return sets;
}

} // namespace cqatag::baselines
