#include "cqatag/pipeline/config.hpp"

#include "cqatag/error.hpp"

#include <fstream>
#include <set>

namespace cqatag::pipeline {

namespace fs = std::filesystem;

namespace {

fs::path resolve(const fs::path& base, const std::string& p) {
    fs::path path(p);
    return path.is_absolute() || base.empty() ? path : base / path;
}

void check_targets(const std::vector<double>& targets, const std::string& where) {
    if (targets.empty()) throw UserError(where + ": no vocabulary coverage targets");
    for (double t : targets) {
        if (!(t > 0 && t <= 100)) throw UserError(where + ": coverage targets must be in (0, 100]");
    }
}

} // namespace

std::uint64_t PipelineConfig::split_seed_for(const DomainConfig& d) const {
    return d.split_seed.value_or(split_seed);
}

const std::vector<double>& PipelineConfig::vocab_targets_for(const DomainConfig& d) const {
    return d.vocab_targets ? *d.vocab_targets : vocab_targets;
}

const DomainConfig& PipelineConfig::domain(const std::string& name) const {
    for (const auto& d : domains)
        if (d.name == name) return d;
    throw UserError("domain \"" + name + "\" is not configured");
}

PipelineConfig config_from_json(const nlohmann::json& j, const fs::path& base_dir) {
    PipelineConfig c;
    try {
        const fs::path dump_root = resolve(base_dir, j.value("dump_root", std::string(".")));
        c.output_dir = resolve(base_dir, j.value("output_dir", std::string("out")));
        for (const auto& d : j.value("domains", nlohmann::json::array())) {
            DomainConfig dc;
            if (d.is_string()) {
                dc.name = d.get<std::string>();
            } else {
                dc.name = d.at("name").get<std::string>();
                if (d.contains("dump")) dc.dump = resolve(base_dir, d.at("dump").get<std::string>());
                if (d.contains("split_seed")) dc.split_seed = d.at("split_seed").get<std::uint64_t>();
                if (d.contains("vocab_targets")) {
                    dc.vocab_targets = d.at("vocab_targets").get<std::vector<double>>();
                }
            }
            if (dc.dump.empty()) dc.dump = dump_root / dc.name / "Posts.xml";
            c.domains.push_back(std::move(dc));
        }
        if (j.contains("split")) {
            const auto& s = j.at("split");
            c.split_seed = s.value("seed", c.split_seed);
            if (s.contains("ratios")) {
                const auto r = s.at("ratios").get<std::vector<double>>();
                if (r.size() != 3) throw UserError("split ratios need three values");
                c.split_ratios = {r[0], r[1], r[2]};
            }
        }
        c.vocab_targets = j.value("vocab_targets", c.vocab_targets);
        c.view_threshold = j.value("view_threshold", c.view_threshold);
        if (j.contains("stability")) {
            const auto& s = j.at("stability");
            c.stability.deltas = s.value("deltas", c.stability.deltas);
            c.stability.position_sets = s.value("position_sets", c.stability.position_sets);
            c.stability.min_count = s.value("min_count", c.stability.min_count);
        }
        if (j.contains("features")) c.features = baselines::feature_config_from_json(j.at("features"));
        if (j.contains("sgd")) {
            const auto& s = j.at("sgd");
            c.sgd.alpha = s.value("alpha", c.sgd.alpha);
            c.sgd.epochs = s.value("epochs", c.sgd.epochs);
            c.sgd.seed = s.value("seed", c.sgd.seed);
            c.sgd.intercept_decay = s.value("intercept_decay", c.sgd.intercept_decay);
            c.sgd.threads = s.value("threads", c.sgd.threads);
        }
        if (j.contains("decode")) {
            const auto& d = j.at("decode");
            c.decode.n_meta = d.value("n_meta", c.decode.n_meta);
            c.decode.n_refined = d.value("n_refined", c.decode.n_refined);
            c.decode.backfill = d.value("backfill", c.decode.backfill);
        }
        if (j.contains("eval")) {
            const auto& e = j.at("eval");
            c.eval.run_seeds = e.value("run_seeds", c.eval.run_seeds);
            c.eval.oov_vocab_target = e.value("oov_vocab_target", c.eval.oov_vocab_target);
            c.eval.comparisons = e.value("comparisons", c.eval.comparisons);
            c.eval.significance_k = e.value("significance_k", c.eval.significance_k);
            c.eval.significance_level = e.value("significance_level", c.eval.significance_level);
        }
        c.threads = j.value("threads", c.threads);
    } catch (const nlohmann::json::exception& e) {
        throw UserError(std::string("malformed config: ") + e.what());
    }
    validate(c);
    return c;
}

PipelineConfig load_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw UserError("cannot open config " + path.string());
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw UserError("config " + path.string() + ": " + e.what());
    }
    return config_from_json(j, path.parent_path());
}

nlohmann::json config_to_json(const PipelineConfig& c) {
    nlohmann::json domains = nlohmann::json::array();
    for (const auto& d : c.domains) {
        nlohmann::json dj{{"name", d.name}, {"dump", d.dump.string()}};
        if (d.split_seed) dj["split_seed"] = *d.split_seed;
        if (d.vocab_targets) dj["vocab_targets"] = *d.vocab_targets;
        domains.push_back(dj);
    }
    return {{"domains", domains},
            {"output_dir", c.output_dir.string()},
            {"split",
             {{"seed", c.split_seed},
              {"ratios", {c.split_ratios.train, c.split_ratios.dev, c.split_ratios.test}}}},
            {"vocab_targets", c.vocab_targets},
            {"view_threshold", c.view_threshold},
            {"stability",
             {{"deltas", c.stability.deltas},
              {"position_sets", c.stability.position_sets},
              {"min_count", c.stability.min_count}}},
            {"features", baselines::feature_config_to_json(c.features)},
            {"sgd",
             {{"alpha", c.sgd.alpha},
              {"epochs", c.sgd.epochs},
              {"seed", c.sgd.seed},
              {"intercept_decay", c.sgd.intercept_decay},
              {"threads", c.sgd.threads}}},
            {"decode",
             {{"n_meta", c.decode.n_meta},
              {"n_refined", c.decode.n_refined},
              {"backfill", c.decode.backfill}}},
            {"eval",
             {{"run_seeds", c.eval.run_seeds},
              {"oov_vocab_target", c.eval.oov_vocab_target},
              {"comparisons", c.eval.comparisons},
              {"significance_k", c.eval.significance_k},
              {"significance_level", c.eval.significance_level}}},
            {"threads", c.threads}};
}

void validate(const PipelineConfig& c) {
    std::set<std::string> names;
    for (const auto& d : c.domains) {
        if (d.name.empty() || d.name.find_first_of("/\\") != std::string::npos || d.name == "." ||
            d.name == "..") {
            throw UserError("invalid domain name \"" + d.name + "\"");
        }
        if (!names.insert(d.name).second) throw UserError("domain \"" + d.name + "\" listed twice");
        if (d.vocab_targets) check_targets(*d.vocab_targets, d.name);
    }
    check_targets(c.vocab_targets, "config");
    const auto& r = c.split_ratios;
    if (r.train <= 0 || r.dev <= 0 || r.test <= 0 || std::abs(r.train + r.dev + r.test - 1.0) > 1e-9) {
        throw UserError("split ratios must be positive and sum to 1");
    }
    if (c.view_threshold < 0) throw UserError("view_threshold must be non-negative");
    for (double d : c.stability.deltas) {
        if (!(d > 0 && d <= 100)) throw UserError("stability deltas must be in (0, 100]");
    }
    c.features.validate();
    c.sgd.validate();
    if (c.decode.n_meta + c.decode.n_refined > 5) throw UserError("n_meta + n_refined may not exceed 5");
    if (c.eval.significance_k < 1 || c.eval.significance_k > 5) {
        throw UserError("significance_k must be in 1..5");
    }
    if (!(c.eval.oov_vocab_target > 0 && c.eval.oov_vocab_target <= 100)) {
        throw UserError("oov_vocab_target must be in (0, 100]");
    }
}

void require_dumps(const PipelineConfig& c) {
    std::string missing;
    for (const auto& d : c.domains) {
        if (!fs::is_regular_file(d.dump)) missing += "\n  " + d.name + ": " + d.dump.string();
    }
    if (!missing.empty()) throw UserError("missing dump file(s):" + missing);
}

} // namespace cqatag::pipeline
