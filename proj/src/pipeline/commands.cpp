#include "cqatag/pipeline/commands.hpp"

#include "cqatag/baselines/majority.hpp"
#include "cqatag/baselines/ovr_sgd.hpp"
#include "cqatag/decoder/assemble.hpp"
#include "cqatag/error.hpp"
#include "cqatag/eval/metrics.hpp"
#include "cqatag/ingest/corpus_io.hpp"
#include "cqatag/ingest/posts_reader.hpp"
#include "cqatag/pipeline/analysis.hpp"
#include "cqatag/pipeline/table.hpp"
#include "cqatag/util/digest.hpp"
#include "cqatag/vocab/meta_vocab.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace cqatag::pipeline {

namespace fs = std::filesystem;

namespace {

std::mutex log_mutex;

void log(const CommandOptions& o, const std::string& msg) {
    if (!o.log) return;
    std::lock_guard lock(log_mutex);
    *o.log << msg << '\n';
}

std::vector<const DomainConfig*> selected(const PipelineConfig& config, const CommandOptions& o) {
    std::vector<const DomainConfig*> out;
    if (o.domains.empty()) {
        for (const auto& d : config.domains) out.push_back(&d);
    } else {
        for (const auto& name : o.domains) out.push_back(&config.domain(name));
    }
    if (out.empty()) log(o, "warning: no domains configured; nothing to do");
    return out;
}

unsigned worker_count(const PipelineConfig& config) {
    return config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
}

std::string json_text(const nlohmann::json& j) { return j.dump(2) + "\n"; }

nlohmann::json read_json(const fs::path& path) {
    try {
        return nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw UserError(path.string() + ": " + e.what());
    }
}

std::vector<std::string> texts_of(const analytics::QuestionRefs& qs) {
    std::vector<std::string> texts;
    texts.reserve(qs.size());
    for (const auto* q : qs) texts.push_back(baselines::baseline_text(*q));
    return texts;
}

std::string predictions_text(const std::vector<baselines::PredictionSet>& sets) {
    std::ostringstream out;
    baselines::write_predictions(out, sets);
    return out.str();
}

bool is_head_labelled(const std::vector<baselines::PredictionSet>& sets) {
    bool any = false;
    for (const auto& s : sets) {
        for (const auto& t : s.tags) {
            if (t.source != baselines::Source::PHead && t.source != baselines::Source::GHead) return false;
            any = true;
        }
    }
    return any;
}

std::string mean_std(const eval::RunSummary& s) {
    return s.stddev ? fixed(s.mean) + "±" + fixed(*s.stddev) : fixed(s.mean);
}

} // namespace

fs::path DomainPaths::vocab(double target) const {
    return root / "vocab" / ("coverage_" + compact(target) + ".json");
}

fs::path DomainPaths::model(const std::string& mode, std::uint64_t seed) const {
    return root / "models" / (mode + "_seed" + std::to_string(seed) + ".bin");
}

fs::path DomainPaths::predictions(const std::string& model, std::uint64_t run) const {
    return predictions_dir() / model / ("run_" + std::to_string(run) + ".jsonl");
}

DomainPaths paths_for(const PipelineConfig& config, const std::string& domain) {
    return {config.output_dir / domain};
}

fs::path reports_dir(const PipelineConfig& config) { return config.output_dir / "reports"; }

std::string model_label(const std::string& mode) {
    if (mode == "majority") return "Majority";
    if (mode == "tfidf") return "TF-IDF";
    if (mode == "bow") return "Bag-of-Words";
    return mode;
}

ingest::DomainCorpus load_corpus(const PipelineConfig& config, const std::string& domain) {
    const auto path = paths_for(config, domain).corpus();
    std::ifstream in(path);
    if (!in) throw UserError("no corpus for " + domain + " (run ingest first): " + path.string());
    return ingest::build_corpus(ingest::read_posts(in), domain);
}

ingest::CorpusSplit load_split(const PipelineConfig& config, const std::string& domain) {
    return ingest::split_from_json(read_json(paths_for(config, domain).split()));
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    auto worker = [&] {
        for (auto i = next++; i < n && !failed; i = next++) {
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
                failed = true;
            }
        }
    };
    threads = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), n));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

void cmd_ingest(const PipelineConfig& config, const CommandOptions& o) {
    const auto domains = selected(config, o);
    PipelineConfig subset = config;
    subset.domains.clear();
    for (const auto* d : domains) subset.domains.push_back(*d);
    require_dumps(subset);

    parallel_for(domains.size(), worker_count(config), [&](std::size_t i) {
        const auto& d = *domains[i];
        const auto paths = paths_for(config, d.name);
        std::ifstream in(d.dump, std::ios::binary);
        if (!in) throw UserError("cannot open " + d.dump.string());
        ingest::RejectsReport rejects;
        auto posts = ingest::read_all_posts(in, &rejects);
        const auto corpus = ingest::build_corpus(std::move(posts), d.name);
        const auto seed = o.seed.value_or(config.split_seed_for(d));
        const auto split = ingest::split_corpus(corpus, config.split_ratios, seed);

        std::ostringstream corpus_text;
        ingest::write_posts(corpus_text, corpus.questions());
        ingest::write_posts(corpus_text, corpus.answers());
        const auto split_text = json_text(ingest::split_to_json(split));
        auto rejects_json = ingest::rejects_to_json(rejects);
        rejects_json["domain"] = d.name;

        write_file(paths.corpus(), corpus_text.str());
        write_file(paths.split(), split_text);
        write_file(paths.rejects(), json_text(rejects_json));
        write_file(paths.manifest(),
                   json_text({{"tool", "cqatag"},
                              {"tool_version", kToolVersion},
                              {"domain", d.name},
                              {"dump", d.dump.string()},
                              {"split_seed", seed},
                              {"questions", corpus.questions().size()},
                              {"answers", corpus.answers().size()},
                              {"orphan_answers", corpus.orphan_count()},
                              {"rejected_rows", rejects.total_rejects()},
                              {"corpus_sha256", util::sha256_hex(corpus_text.str())},
                              {"split_sha256", util::sha256_hex(split_text)}}));
        log(o, d.name + ": " + std::to_string(corpus.questions().size()) + " questions, " +
                   std::to_string(corpus.answers().size()) + " answers, " +
                   std::to_string(rejects.total_rejects()) + " rejected rows");
    });
}

void cmd_analyze(const PipelineConfig& config, const CommandOptions& o) {
    const auto domains = selected(config, o);
    if (domains.empty()) return;
    std::vector<DomainAnalysis> results(domains.size());
    parallel_for(domains.size(), worker_count(config), [&](std::size_t i) {
        const auto& d = *domains[i];
        const auto corpus = load_corpus(config, d.name);
        results[i] = analyze_domain(corpus, config, config.split_seed_for(d));
        log(o, d.name + ": analysed " + std::to_string(corpus.questions().size()) + " questions");
    });

    const auto dir = reports_dir(config);
    write_file(dir / "community_diversity.csv", community_diversity_table(results).to_csv());
    write_file(dir / "domain_statistics.csv", domain_statistics_table(results).to_csv());
    write_file(dir / "tag_word_length.csv", tag_word_length_table(results).to_csv());
    write_file(dir / "tag_statistics.csv", tag_statistics_table(results).to_csv());
    write_file(dir / "tag_post_coverage.csv", tag_post_coverage_table(results).to_csv());
    write_file(dir / "tag_post_overlap.csv", tag_post_overlap_table(results).to_csv());
    write_file(dir / "tag_pair_coverage.csv", tag_pair_coverage_table(results).to_csv());
    write_file(dir / "top_tag_pairs.csv", top_tag_pair_table(results).to_csv());
    write_file(dir / "tag_ordering.csv", tag_ordering_table(results).to_csv());
    const auto stability = tag_stability_tables(results);
    for (std::size_t i = 0; i < stability.size(); ++i) {
        write_file(dir / ("tag_stability_delta" + compact(config.stability.deltas[i]) + ".csv"),
                   stability[i].to_csv());
    }
    write_file(dir / "stable_tag_examples.csv", stable_tag_examples_table(results).to_csv());

    nlohmann::json all = nlohmann::json::array();
    for (const auto& r : results) {
        all.push_back(analysis_to_json(r));
        const auto series = dir / "series" / r.stats.domain;
        write_file(series / "tag_distribution.csv", tag_distribution_series(r).to_csv());
        write_file(series / "pair_distribution.csv", pair_distribution_series(r).to_csv());
        write_file(series / "positional_profiles.csv", positional_profile_series(r).to_csv());
        write_file(series / "coverage_curve.csv", coverage_curve_series(r).to_csv());
    }
    write_file(dir / "analysis.json", json_text(all));
}

void cmd_vocab(const PipelineConfig& config, const CommandOptions& o) {
    if (o.coverage && !(*o.coverage > 0 && *o.coverage <= 100)) {
        throw UserError("--coverage must be in (0, 100]");
    }
    const auto domains = selected(config, o);
    parallel_for(domains.size(), worker_count(config), [&](std::size_t i) {
        const auto& d = *domains[i];
        const auto paths = paths_for(config, d.name);
        const auto corpus = load_corpus(config, d.name);
        const auto split = load_split(config, d.name);
        const auto train = corpus.select_questions(split.train);
        const auto split_hash = util::sha256_hex(read_file(paths.split()));
        const auto targets = o.coverage ? std::vector<double>{*o.coverage} : config.vocab_targets_for(d);
        for (double target : targets) {
            auto v = vocab::build_meta_vocab(train, target, d.name);
            v.built_from = "sha256:" + split_hash;
            write_file(paths.vocab(target), json_text(vocab::vocab_to_json(v)));
            log(o, d.name + ": " + std::to_string(v.size()) + " vocabulary tags reach " +
                       fixed(v.achieved_coverage) + "% coverage (target " + compact(target) + ")");
        }
    });
}

void cmd_train_baseline(const PipelineConfig& config, const CommandOptions& o) {
    if (o.mode != "tfidf" && o.mode != "bow") throw UserError("train-baseline needs --mode tfidf or bow");
    const auto domains = selected(config, o);
    const auto seeds = o.seed ? std::vector<std::uint64_t>{*o.seed} : config.eval.run_seeds;
    parallel_for(domains.size(), worker_count(config), [&](std::size_t i) {
        const auto& d = *domains[i];
        const auto paths = paths_for(config, d.name);
        const auto corpus = load_corpus(config, d.name);
        const auto split = load_split(config, d.name);
        const auto train = corpus.select_questions(split.train);
        auto features = config.features;
        features.weighting = baselines::weighting_from_string(o.mode);
        const auto fz = baselines::featurize(texts_of(train), features);
        std::vector<std::vector<std::string>> labels;
        for (const auto* q : train) labels.push_back(q->tags);
        for (auto seed : seeds) {
            auto params = config.sgd;
            params.seed = seed;
            const auto model = baselines::train_ovr_sgd(fz.matrix, labels, params);
            std::ostringstream out;
            baselines::save_model(out, fz.space, model);
            write_file(paths.model(o.mode, seed), out.str());
            log(o, d.name + ": trained " + std::to_string(model.classes.size()) + " " + o.mode +
                       " classifiers over " + std::to_string(fz.space.dimension()) +
                       " features (seed " + std::to_string(seed) + ")");
        }
    });
}

void cmd_predict(const PipelineConfig& config, const CommandOptions& o) {
    const auto k = o.k.value_or(baselines::kMaxPredictions);
    if (k < 1 || k > baselines::kMaxPredictions) throw UserError("--k must be in 1..5");
    if (o.mode == "decode") {
        const auto domains = selected(config, o);
        if (domains.size() != 1) throw UserError("--mode decode works on exactly one --domain");
        std::ifstream meta_in(o.meta_file), stream_in(o.streams_file);
        if (!meta_in) throw UserError("cannot open meta predictions " + o.meta_file.string());
        if (!stream_in) throw UserError("cannot open token streams " + o.streams_file.string());
        auto sets = decoder::decode_predictions(decoder::read_meta_predictions(meta_in),
                                                decoder::read_token_streams(stream_in), config.decode);
        for (auto& s : sets)
            if (s.tags.size() > k) s.tags.resize(k);
        const auto run = o.seed.value_or(0);
        write_file(paths_for(config, domains.front()->name).predictions(o.model_name, run),
                   predictions_text(sets));
        log(o, domains.front()->name + ": decoded " + std::to_string(sets.size()) + " posts");
        return;
    }
    if (o.mode != "majority" && o.mode != "tfidf" && o.mode != "bow") {
        throw UserError("--mode must be majority, tfidf, bow or decode");
    }
    const auto domains = selected(config, o);
    parallel_for(domains.size(), worker_count(config), [&](std::size_t i) {
        const auto& d = *domains[i];
        const auto paths = paths_for(config, d.name);
        const auto corpus = load_corpus(config, d.name);
        const auto split = load_split(config, d.name);
        const auto test = corpus.select_questions(split.test);
        if (o.mode == "majority") {
            auto majority = baselines::majority_predict(corpus.select_questions(split.train));
            if (majority.size() > k) majority.resize(k);
            write_file(paths.predictions(model_label(o.mode), split.seed),
                       predictions_text(baselines::majority_predictions(majority, test)));
            return;
        }
        const auto texts = texts_of(test);
        const auto seeds = o.seed ? std::vector<std::uint64_t>{*o.seed} : config.eval.run_seeds;
        for (auto seed : seeds) {
            std::ifstream in(paths.model(o.mode, seed), std::ios::binary);
            if (!in) throw UserError("no " + o.mode + " model for " + d.name + " seed " + std::to_string(seed));
            const auto loaded = baselines::load_model(in);
            const auto x = baselines::transform(loaded.space, texts);
            std::vector<baselines::PredictionSet> sets;
            sets.reserve(test.size());
            for (std::size_t r = 0; r < test.size(); ++r) {
                sets.push_back(baselines::predict_topk(loaded.model, x, r, test[r]->id, k));
            }
            write_file(paths.predictions(model_label(o.mode), seed), predictions_text(sets));
        }
        log(o, d.name + ": wrote " + model_label(o.mode) + " predictions for " +
                   std::to_string(test.size()) + " test posts");
    });
}

namespace {

struct ModelRuns {
    std::string model;
    std::map<std::uint64_t, std::array<double, 5>> hits; // run seed -> Hit@1..5
    std::optional<eval::HeadContribution> heads;          // averaged over runs
    std::optional<eval::OovStats> oov;                    // averaged over runs
    std::optional<double> oov_target;
};

struct DomainEval {
    std::string domain;
    std::vector<ModelRuns> models;
};

double vocab_target_of(const std::string& model, double fallback) {
    const auto at = model.rfind('@');
    if (at == std::string::npos) return fallback;
    try {
        return std::stod(model.substr(at + 1));
    } catch (const std::exception&) {
        return fallback;
    }
}

} // namespace

void cmd_eval(const PipelineConfig& config, const CommandOptions& o) {
    const auto sig_k = o.k.value_or(config.eval.significance_k);
    if (sig_k < 1 || sig_k > 5) throw UserError("--k must be in 1..5");
    const auto domains = selected(config, o);
    if (domains.empty()) return;
    std::vector<DomainEval> results(domains.size());

    parallel_for(domains.size(), worker_count(config), [&](std::size_t i) {
        const auto& d = *domains[i];
        const auto paths = paths_for(config, d.name);
        const auto corpus = load_corpus(config, d.name);
        const auto split = load_split(config, d.name);
        const auto gold = eval::gold_from(corpus.select_questions(split.test));
        results[i].domain = d.name;
        if (!fs::is_directory(paths.predictions_dir())) {
            log(o, d.name + ": no predictions to evaluate");
            return;
        }
        std::vector<fs::path> model_dirs;
        for (const auto& e : fs::directory_iterator(paths.predictions_dir()))
            if (e.is_directory()) model_dirs.push_back(e.path());
        std::sort(model_dirs.begin(), model_dirs.end());

        for (const auto& dir : model_dirs) {
            ModelRuns mr;
            mr.model = dir.filename().string();
            std::vector<eval::HeadContribution> heads;
            std::vector<eval::OovStats> oovs;
            std::optional<vocab::MetaVocab> vocab;
            for (const auto& e : fs::directory_iterator(dir)) {
                const auto name = e.path().filename().string();
                if (name.rfind("run_", 0) != 0 || e.path().extension() != ".jsonl") continue;
                std::uint64_t run = 0;
                try {
                    run = std::stoull(name.substr(4, name.size() - 10));
                } catch (const std::exception&) {
                    throw UserError("unexpected prediction file name " + e.path().string());
                }
                std::ifstream in(e.path());
                const auto sets = baselines::read_predictions(in);
                try {
                    mr.hits[run] = eval::hit_at_1_to_5(sets, gold);
                } catch (const UserError& err) {
                    throw UserError(e.path().string() + ": " + err.what());
                }
                if (is_head_labelled(sets)) {
                    heads.push_back(eval::head_contributions(sets, gold));
                    const double target = vocab_target_of(mr.model, config.eval.oov_vocab_target);
                    if (!vocab && fs::exists(paths.vocab(target))) {
                        vocab = vocab::vocab_from_json(read_json(paths.vocab(target)));
                        mr.oov_target = target;
                    }
                    if (vocab) oovs.push_back(eval::oov_stats(sets, gold, *vocab));
                }
            }
            if (mr.hits.empty()) continue;
            if (!heads.empty()) {
                eval::HeadContribution h;
                for (const auto& x : heads) {
                    h.p_only += x.p_only / static_cast<double>(heads.size());
                    h.g_only += x.g_only / static_cast<double>(heads.size());
                    h.posts = x.posts;
                }
                mr.heads = h;
            }
            if (!oovs.empty()) {
                eval::OovStats s;
                double oov_sum = 0;
                std::size_t oov_n = 0;
                for (const auto& x : oovs) {
                    s.pct_posts += x.pct_posts / static_cast<double>(oovs.size());
                    s.pct_all_tags += x.pct_all_tags / static_cast<double>(oovs.size());
                    if (x.pct_oov_tags) oov_sum += *x.pct_oov_tags, ++oov_n;
                    s.correct_oov += x.correct_oov;
                    s.gold_tags = x.gold_tags;
                    s.gold_oov_tags = x.gold_oov_tags;
                }
                if (oov_n) s.pct_oov_tags = oov_sum / static_cast<double>(oov_n);
                mr.oov = s;
            }
            results[i].models.push_back(std::move(mr));
        }
        log(o, d.name + ": evaluated " + std::to_string(results[i].models.size()) + " model(s)");
    });

    Table hit_table, hit5, heads, oov, sig;
    hit_table.header = {"Domain", "Model", "Runs"};
    for (int k = 1; k <= 5; ++k) {
        hit_table.header.push_back("Hit@" + std::to_string(k));
        hit_table.header.push_back("Hit@" + std::to_string(k) + " std");
    }
    heads.header = {"Domain", "Model", "P", "G"};
    oov.header = {"Domain", "Model", "Vocab", "% Posts", "% ALL Tags", "% OOV Tags"};
    sig.header = {"Domain", "Baseline", "Model", "k", "Runs", "p-value", "Significant", "Exact"};

    std::vector<std::string> columns;
    for (const auto* known : {"Majority", "TF-IDF", "Bag-of-Words"}) columns.push_back(known);
    std::vector<std::string> extra;
    for (const auto& r : results)
        for (const auto& m : r.models)
            if (std::find(columns.begin(), columns.end(), m.model) == columns.end() &&
                std::find(extra.begin(), extra.end(), m.model) == extra.end())
                extra.push_back(m.model);
    std::sort(extra.begin(), extra.end());
    columns.insert(columns.end(), extra.begin(), extra.end());
    hit5.header = {"Domain"};
    hit5.header.insert(hit5.header.end(), columns.begin(), columns.end());

    nlohmann::json report = nlohmann::json::array();
    for (const auto& r : results) {
        std::vector<std::string> row5{r.domain};
        std::map<std::string, const ModelRuns*> by_name;
        nlohmann::json dj{{"domain", r.domain}, {"models", nlohmann::json::array()}};
        for (const auto& m : r.models) {
            by_name[m.model] = &m;
            std::vector<std::string> row{r.domain, m.model, std::to_string(m.hits.size())};
            nlohmann::json mj{{"model", m.model}};
            for (std::size_t k = 0; k < 5; ++k) {
                std::vector<double> values;
                for (const auto& [seed, h] : m.hits) values.push_back(h[k]);
                const auto s = eval::aggregate_runs(values);
                row.push_back(fixed(s.mean));
                row.push_back(s.stddev ? fixed(*s.stddev) : "");
                mj["hit_at_k"].push_back({{"k", k + 1},
                                          {"runs", values},
                                          {"mean", s.mean},
                                          {"std", s.stddev ? nlohmann::json(*s.stddev) : nlohmann::json()}});
            }
            for (const auto& [seed, h] : m.hits) mj["run_seeds"].push_back(seed);
            hit_table.rows.push_back(std::move(row));
            if (m.heads) {
                heads.rows.push_back({r.domain, m.model, fixed(m.heads->p_only), fixed(m.heads->g_only)});
                mj["head_contributions"] = {{"p_only", m.heads->p_only}, {"g_only", m.heads->g_only}};
            }
            if (m.oov) {
                oov.rows.push_back({r.domain, m.model, compact(*m.oov_target), fixed(m.oov->pct_posts),
                                    fixed(m.oov->pct_all_tags),
                                    m.oov->pct_oov_tags ? fixed(*m.oov->pct_oov_tags) : ""});
                mj["oov"] = {{"vocab_target", *m.oov_target},
                             {"pct_posts", m.oov->pct_posts},
                             {"pct_all_tags", m.oov->pct_all_tags},
                             {"pct_oov_tags", m.oov->pct_oov_tags ? nlohmann::json(*m.oov->pct_oov_tags)
                                                                  : nlohmann::json()}};
            }
            dj["models"].push_back(mj);
        }
        for (const auto& c : columns) {
            const auto it = by_name.find(c);
            if (it == by_name.end()) {
                row5.push_back("");
                continue;
            }
            std::vector<double> values;
            for (const auto& [seed, h] : it->second->hits) values.push_back(h[4]);
            row5.push_back(mean_std(eval::aggregate_runs(values)));
        }
        hit5.rows.push_back(std::move(row5));

        for (const auto& [base, challenger] : config.eval.comparisons) {
            const auto a = by_name.find(base), b = by_name.find(challenger);
            if (a == by_name.end() || b == by_name.end()) continue;
            std::vector<double> x, y;
            for (const auto& [seed, h] : a->second->hits) {
                const auto other = b->second->hits.find(seed);
                if (other == b->second->hits.end()) continue;
                x.push_back(h[sig_k - 1]);
                y.push_back(other->second[sig_k - 1]);
            }
            if (x.empty()) {
                log(o, r.domain + ": " + base + " and " + challenger + " share no run seeds");
                continue;
            }
            const auto w = eval::wilcoxon_one_sided(x, y);
            const bool significant = w.p_value < config.eval.significance_level;
            sig.rows.push_back({r.domain, base, challenger, std::to_string(sig_k), std::to_string(x.size()),
                                fixed(w.p_value, 5), significant ? "yes" : "no", w.exact ? "yes" : "no"});
            dj["significance"].push_back({{"baseline", base},
                                          {"model", challenger},
                                          {"k", sig_k},
                                          {"runs", x.size()},
                                          {"p_value", w.p_value},
                                          {"w_plus", w.w_plus},
                                          {"significant", significant},
                                          {"exact", w.exact},
                                          {"degenerate", w.degenerate}});
        }
        report.push_back(dj);
    }

    const auto dir = reports_dir(config);
    write_file(dir / "hit_at_k.csv", hit_table.to_csv());
    write_file(dir / "hit_at_5.csv", hit5.to_csv());
    write_file(dir / "head_contributions.csv", heads.to_csv());
    write_file(dir / "oov_tags.csv", oov.to_csv());
    write_file(dir / "significance.csv", sig.to_csv());
    write_file(dir / "eval.json", json_text(report));
}

namespace {

const std::map<std::string, std::string>& column_descriptions() {
    static const std::map<std::string, std::string> m{
        {"Domain", "StackExchange community"},
        {"#Q", "questions retained after ingest"},
        {"Q", "questions retained after ingest"},
        {"#T", "distinct tags"},
        {"T", "distinct tags"},
        {"PPT", "posts per tag: #Q / #T"},
        {"Q/T", "posts per tag: #Q / #T"},
        {"AvgT", "mean number of tags per question"},
        {"AVGT", "mean number of tags per question"},
        {"#A", "distinct question askers (owner id, or display name when the id is missing)"},
        {"#ASKERS", "distinct question askers"},
        {"QPA", "questions per asker: #Q / #A"},
        {"NOANS (%)", "% questions with AnswerCount = 0"},
        {"NOSCORES (%)", "% questions with Score = 0"},
        {"NO ACCEPT ANS (%)", "% questions without an AcceptedAnswerId"},
        {"MAXANS", "largest AnswerCount of any question"},
        {"MAXVIEW", "largest ViewCount of any question"},
        {"1", "% distinct tags with one hyphen-separated word"},
        {">5", "% distinct tags with more than five words"},
        {"Longest Tag", "longest distinct tag (code points; ties lexicographic)"},
        {"Shortest Tag", "shortest distinct tag"},
        {"AvgTLen", "mean tag length in code points"},
        {"100T%", "share of the tag space made up by the 100 most frequent tags"},
        {"Single", "% questions with exactly one tag"},
        {"Top Pair", "most frequent co-occurring tag pair"},
        {"Post-Count", "questions carrying the pair"},
        {"Total", "questions carrying the pair"},
        {"Order-1", "pair with the first tag placed earlier"},
        {"Order-2", "pair with the second tag placed earlier"},
        {"delta", "stability threshold in percent"},
        {"P", "% posts where only P-head predictions were correct"},
        {"G", "% posts where only G-head predictions were correct"},
        {"Vocab", "vocabulary coverage target used to decide OOV"},
        {"% Posts", "% posts with at least one correctly predicted OOV tag"},
        {"% ALL Tags", "correctly predicted OOV tags / all gold tags"},
        {"% OOV Tags", "correctly predicted OOV tags / OOV gold tags"},
        {"p-value", "exact one-sided Wilcoxon signed-rank p-value (normal approximation beyond 25 pairs)"},
        {"Significant", "p-value below the configured level"},
        {"Exact", "whether the p-value is exact"},
        {"Runs", "number of runs aggregated"},
    };
    return m;
}

std::string describe(const std::string& column) {
    const auto& m = column_descriptions();
    if (const auto it = m.find(column); it != m.end()) return it->second;
    if (column.rfind("Top-", 0) == 0) return "% questions covered by the " + column.substr(4) + " most frequent tag pairs";
    if (column.rfind("Top", 0) == 0) return "% questions covered by the " + column.substr(3) + " most frequent tags";
    if (column.rfind("Hit@", 0) == 0) return "% posts whose first k predictions contain a gold tag";
    if (column.rfind("ST{", 0) == 0) return "% tags whose occurrences fall at least delta% in the positions";
    if (column.rfind("|Q{", 0) == 0) return "number of tags stable at the positions";
    if (column.rfind("V>", 0) == 0 || column.rfind("VIEWGT", 0) == 0) return "questions above the view threshold";
    if (column.find("EMS%") != std::string::npos) return "% questions with a single-word tag in the scoped text";
    if (column.find("EMM%") != std::string::npos) return "% questions with any tag (hyphens as spaces too) in the scoped text";
    if (column.size() == 1 && std::isdigit(static_cast<unsigned char>(column[0]))) {
        return "% distinct tags with " + column + " words";
    }
    return "";
}

} // namespace

void cmd_report(const PipelineConfig& config, const CommandOptions& o) {
    const auto dir = reports_dir(config);
    if (!fs::is_directory(dir)) throw UserError("no reports yet; run analyze or eval first");
    std::vector<fs::path> csvs;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".csv") csvs.push_back(e.path());
    std::sort(csvs.begin(), csvs.end());

    std::string md = "# Tag analysis and evaluation report\n";
    nlohmann::json columns = nlohmann::json::object();
    for (const auto& p : csvs) {
        const auto table = parse_csv(read_file(p));
        auto title = p.stem().string();
        std::replace(title.begin(), title.end(), '_', ' ');
        md += "\n## " + title + "\n\n" + table.to_markdown();
        for (const auto& h : table.header) {
            const auto d = describe(h);
            columns[p.filename().string()][h] = d;
        }
    }
    write_file(dir / "summary.md", md);
    write_file(dir / "columns.json", json_text(columns));
    log(o, "wrote " + (dir / "summary.md").string());
}

} // namespace cqatag::pipeline
