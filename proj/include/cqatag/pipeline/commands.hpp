#pragma once

#include "cqatag/ingest/corpus.hpp"
#include "cqatag/ingest/split.hpp"
#include "cqatag/pipeline/config.hpp"

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cqatag::pipeline {

inline constexpr const char* kToolVersion = "1.0.0";

/// Where each artifact of a domain lives under the output directory.
struct DomainPaths {
    std::filesystem::path root;

    std::filesystem::path corpus() const { return root / "posts.jsonl"; }
    std::filesystem::path split() const { return root / "split.json"; }
    std::filesystem::path rejects() const { return root / "rejects.json"; }
    std::filesystem::path manifest() const { return root / "manifest.json"; }
    std::filesystem::path vocab(double target) const;
    std::filesystem::path model(const std::string& mode, std::uint64_t seed) const;
    std::filesystem::path predictions_dir() const { return root / "predictions"; }
    std::filesystem::path predictions(const std::string& model, std::uint64_t run) const;
};

DomainPaths paths_for(const PipelineConfig& config, const std::string& domain);
std::filesystem::path reports_dir(const PipelineConfig& config);

/// Flags shared by the subcommands. Unset optionals fall back to the config.
struct CommandOptions {
    std::vector<std::string> domains; // empty = every configured domain
    std::optional<std::uint64_t> seed;
    std::optional<double> coverage;
    std::optional<std::size_t> k;
    std::string mode;                 // predict / train-baseline: majority|tfidf|bow|decode
    std::filesystem::path meta_file;  // predict --mode decode
    std::filesystem::path streams_file;
    std::string model_name = "MRPG";  // predictions label for --mode decode
    std::ostream* log = nullptr;      // progress messages; null = silent
};

/// Display names used in prediction directories and reports.
std::string model_label(const std::string& mode);

/// Reads a domain's corpus and split written by cmd_ingest.
ingest::DomainCorpus load_corpus(const PipelineConfig& config, const std::string& domain);
ingest::CorpusSplit load_split(const PipelineConfig& config, const std::string& domain);

/// Runs fn(i) for i in [0, n) on up to `threads` workers. Rethrows the
/// exception of the lowest failing index after all work stops.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

void cmd_ingest(const PipelineConfig& config, const CommandOptions& options);
void cmd_analyze(const PipelineConfig& config, const CommandOptions& options);
void cmd_vocab(const PipelineConfig& config, const CommandOptions& options);
void cmd_train_baseline(const PipelineConfig& config, const CommandOptions& options);
void cmd_predict(const PipelineConfig& config, const CommandOptions& options);
void cmd_eval(const PipelineConfig& config, const CommandOptions& options);
void cmd_report(const PipelineConfig& config, const CommandOptions& options);

} // namespace cqatag::pipeline
