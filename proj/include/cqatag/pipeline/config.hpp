#pragma once

#include "cqatag/analytics/positional.hpp"
#include "cqatag/baselines/features.hpp"
#include "cqatag/baselines/ovr_sgd.hpp"
#include "cqatag/decoder/assemble.hpp"
#include "cqatag/ingest/split.hpp"

#include <filesystem>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

namespace cqatag::pipeline {

struct DomainConfig {
    std::string name;
    std::filesystem::path dump; // Posts.xml
    std::optional<std::uint64_t> split_seed;
    std::optional<std::vector<double>> vocab_targets;
};

struct StabilityConfig {
    std::vector<double> deltas{80, 90, 99};
    std::vector<analytics::PositionSet> position_sets{{1, 2}, {3, 4, 5}};
    std::uint64_t min_count = 0;
};

struct EvalConfig {
    std::vector<std::uint64_t> run_seeds{0, 1, 2, 3, 4};
    double oov_vocab_target = 90;
    /// Pairs (baseline model, challenger model) tested for improvement.
    std::vector<std::pair<std::string, std::string>> comparisons{{"MP", "MRPG"}};
    std::size_t significance_k = 5;
    double significance_level = 0.05;
};

/// Everything a pipeline run needs. Defaults reproduce the published setup.
struct PipelineConfig {
    std::vector<DomainConfig> domains;
    std::filesystem::path output_dir = "out";
    ingest::SplitRatios split_ratios;
    std::uint64_t split_seed = 13;
    std::vector<double> vocab_targets{85, 90, 95};
    std::int64_t view_threshold = 100;
    StabilityConfig stability;
    baselines::FeatureConfig features;
    baselines::SgdParams sgd;
    decoder::MergeOptions decode;
    EvalConfig eval;
    unsigned threads = 0; // domains processed concurrently; 0 = hardware

    std::uint64_t split_seed_for(const DomainConfig& d) const;
    const std::vector<double>& vocab_targets_for(const DomainConfig& d) const;
    const DomainConfig& domain(const std::string& name) const;
};

/// Relative paths resolve against `base_dir`. A domain without "dump" uses
/// <dump_root>/<name>/Posts.xml. Throws UserError on malformed or invalid input.
PipelineConfig config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
PipelineConfig load_config(const std::filesystem::path& path);
nlohmann::json config_to_json(const PipelineConfig& config);

/// Checks value ranges and name uniqueness. Throws UserError.
void validate(const PipelineConfig& config);

/// Throws UserError naming every configured dump that does not exist.
void require_dumps(const PipelineConfig& config);

} // namespace cqatag::pipeline
