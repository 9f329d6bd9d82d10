#include "cqatag/error.hpp"
#include "cqatag/pipeline/commands.hpp"
#include "cqatag/pipeline/config.hpp"

#include <CLI11.hpp>
#include <iostream>

using namespace cqatag;

int main(int argc, char** argv) {
    CLI::App app{"Tag analytics, baselines and evaluation for StackExchange dumps"};
    app.require_subcommand(1);
    app.set_version_flag("--version", pipeline::kToolVersion);

    std::string config_path = "cqatag.json";
    pipeline::CommandOptions opts;
    opts.log = &std::cerr;
    std::uint64_t seed = 0;
    double coverage = 0;
    std::size_t k = 0;
    bool quiet = false;

    auto common = [&](CLI::App* sub) {
        sub->add_option("-c,--config", config_path, "Pipeline configuration (JSON)")->capture_default_str();
        sub->add_option("-d,--domain", opts.domains, "Restrict to these domains");
        sub->add_flag("-q,--quiet", quiet, "No progress messages");
    };

    auto* ingest = app.add_subcommand("ingest", "Parse dumps into corpus and split files");
    common(ingest);
    ingest->add_option("--seed", seed, "Split seed (overrides the config)");

    auto* analyze = app.add_subcommand("analyze", "Write corpus statistics tables and figure series");
    common(analyze);

    auto* vocab = app.add_subcommand("vocab", "Build vocabularies from the training split");
    common(vocab);
    vocab->add_option("--coverage", coverage, "Single coverage target in (0, 100]");

    auto* train = app.add_subcommand("train-baseline", "Train one-vs-rest linear baselines");
    common(train);
    train->add_option("--mode", opts.mode, "tfidf or bow")->required()->check(CLI::IsMember({"tfidf", "bow"}));
    train->add_option("--seed", seed, "Training seed (default: every configured run seed)");

    auto* predict = app.add_subcommand("predict", "Write test-split predictions");
    common(predict);
    predict->add_option("--mode", opts.mode, "majority, tfidf, bow or decode")
        ->required()
        ->check(CLI::IsMember({"majority", "tfidf", "bow", "decode"}));
    predict->add_option("--seed", seed, "Run seed (default: every configured run seed)");
    predict->add_option("--k", k, "Predictions per post, 1..5");
    predict->add_option("--meta", opts.meta_file, "Meta-prediction file (decode mode)");
    predict->add_option("--streams", opts.streams_file, "Token-stream file (decode mode)");
    predict->add_option("--name", opts.model_name, "Model label for decoded predictions")->capture_default_str();

    auto* evaluate = app.add_subcommand("eval", "Score predictions and write evaluation tables");
    common(evaluate);
    evaluate->add_option("--k", k, "k used for significance tests, 1..5");

    auto* report = app.add_subcommand("report", "Collect all tables into summary.md");
    common(report);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    if (quiet) opts.log = nullptr;
    auto given = [](CLI::App* sub, const char* name) { return sub->count(name) > 0; };

    try {
        const auto config = pipeline::load_config(config_path);
        if (ingest->parsed()) {
            if (given(ingest, "--seed")) opts.seed = seed;
            pipeline::cmd_ingest(config, opts);
        } else if (analyze->parsed()) {
            pipeline::cmd_analyze(config, opts);
        } else if (vocab->parsed()) {
            if (given(vocab, "--coverage")) opts.coverage = coverage;
            pipeline::cmd_vocab(config, opts);
        } else if (train->parsed()) {
            if (given(train, "--seed")) opts.seed = seed;
            pipeline::cmd_train_baseline(config, opts);
        } else if (predict->parsed()) {
            if (given(predict, "--seed")) opts.seed = seed;
            if (given(predict, "--k")) opts.k = k;
            pipeline::cmd_predict(config, opts);
        } else if (evaluate->parsed()) {
            if (given(evaluate, "--k")) opts.k = k;
            pipeline::cmd_eval(config, opts);
        } else if (report->parsed()) {
            pipeline::cmd_report(config, opts);
        }
    } catch (const UserError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
