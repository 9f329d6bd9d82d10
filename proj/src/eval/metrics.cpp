#include "cqatag/eval/metrics.hpp"

#include "cqatag/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <set>

namespace cqatag::eval {

namespace {

std::set<std::string> normalized(const std::vector<std::string>& tags) {
    std::set<std::string> out;
    for (const auto& t : tags) out.insert(normalize_tag(t));
    return out;
}

double pct(std::size_t num, std::size_t den) {
    return den == 0 ? 0.0 : 100.0 * static_cast<double>(num) / static_cast<double>(den);
}

} // namespace

GoldTags gold_from(const analytics::QuestionRefs& questions) {
    GoldTags gold;
    for (const auto* q : questions) gold[q->id] = q->tags;
    return gold;
}

std::string normalize_tag(std::string_view tag) {
    while (!tag.empty() && std::isspace(static_cast<unsigned char>(tag.front()))) tag.remove_prefix(1);
    while (!tag.empty() && std::isspace(static_cast<unsigned char>(tag.back()))) tag.remove_suffix(1);
    std::string out(tag);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
        return static_cast<char>(c < 0x80 ? std::tolower(c) : c);
    });
    return out;
}

void check_alignment(const std::vector<baselines::PredictionSet>& predictions, const GoldTags& gold) {
    std::vector<ingest::PostId> offenders;
    std::set<ingest::PostId> seen;
    for (const auto& p : predictions) {
        if (!gold.contains(p.post_id) || !seen.insert(p.post_id).second) offenders.push_back(p.post_id);
    }
    for (const auto& [id, _] : gold)
        if (!seen.contains(id)) offenders.push_back(id);
    if (offenders.empty()) return;
    std::string list;
    for (std::size_t i = 0; i < offenders.size() && i < 20; ++i) {
        list += (i ? ", " : "") + std::to_string(offenders[i]);
    }
    throw UserError(std::to_string(offenders.size()) +
                    " post id(s) missing, duplicated or unmatched between predictions and gold: " +
                    list);
}

HitResult hit_at_k(const std::vector<baselines::PredictionSet>& predictions, const GoldTags& gold,
                   std::size_t k) {
    if (k < 1 || k > baselines::kMaxPredictions) throw UserError("k must be in 1..5");
    check_alignment(predictions, gold);
    HitResult r;
    std::size_t hits = 0;
    for (const auto& p : predictions) {
        const auto g = normalized(gold.at(p.post_id));
        if (g.empty()) {
            ++r.excluded;
            continue;
        }
        ++r.scored;
        for (std::size_t i = 0; i < p.tags.size() && i < k; ++i) {
            if (g.contains(normalize_tag(p.tags[i].tag))) {
                ++hits;
                break;
            }
        }
    }
    r.percent = pct(hits, r.scored);
    return r;
}

std::array<double, 5> hit_at_1_to_5(const std::vector<baselines::PredictionSet>& predictions,
                                    const GoldTags& gold) {
    std::array<double, 5> out{};
    for (std::size_t k = 1; k <= 5; ++k) out[k - 1] = hit_at_k(predictions, gold, k).percent;
    return out;
}

HeadContribution head_contributions(const std::vector<baselines::PredictionSet>& predictions,
                                    const GoldTags& gold) {
    check_alignment(predictions, gold);
    HeadContribution h;
    std::size_t p_only = 0, g_only = 0;
    for (const auto& p : predictions) {
        const auto g = normalized(gold.at(p.post_id));
        bool p_hit = false, g_hit = false;
        for (const auto& t : p.tags) {
            const bool hit = g.contains(normalize_tag(t.tag));
            if (t.source == baselines::Source::PHead) p_hit = p_hit || hit;
            else if (t.source == baselines::Source::GHead) g_hit = g_hit || hit;
            else throw UserError("post " + std::to_string(p.post_id) +
                                 ": prediction not labelled P-head or G-head");
        }
        ++h.posts;
        if (p_hit && !g_hit) ++p_only;
        if (g_hit && !p_hit) ++g_only;
    }
    h.p_only = pct(p_only, h.posts);
    h.g_only = pct(g_only, h.posts);
    return h;
}

OovStats oov_stats(const std::vector<baselines::PredictionSet>& predictions, const GoldTags& gold,
                   const vocab::MetaVocab& vocab) {
    check_alignment(predictions, gold);
    OovStats s;
    std::size_t posts_with = 0;
    for (const auto& p : predictions) {
        const auto g = normalized(gold.at(p.post_id));
        s.gold_tags += g.size();
        for (const auto& t : g)
            if (vocab::is_oov(t, vocab)) ++s.gold_oov_tags;
        std::size_t correct = 0;
        std::set<std::string> counted;
        for (const auto& t : p.tags) {
            const auto tag = normalize_tag(t.tag);
            if (g.contains(tag) && vocab::is_oov(tag, vocab) && counted.insert(tag).second) ++correct;
        }
        s.correct_oov += correct;
        if (correct > 0) ++posts_with;
    }
    s.pct_posts = pct(posts_with, predictions.size());
    s.pct_all_tags = pct(s.correct_oov, s.gold_tags);
    if (s.gold_oov_tags > 0) s.pct_oov_tags = pct(s.correct_oov, s.gold_oov_tags);
    return s;
}

std::vector<double> signed_rank_null_counts(std::size_t n) {
    const std::size_t max_sum = n * (n + 1) / 2;
    std::vector<double> counts(max_sum + 1, 0.0);
    counts[0] = 1;
    for (std::size_t r = 1; r <= n; ++r) {
        for (std::size_t s = max_sum; s >= r; --s) counts[s] += counts[s - r];
    }
    return counts;
}

WilcoxonResult wilcoxon_one_sided(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.empty() || x.size() != y.size()) throw UserError("wilcoxon needs equal-length, non-empty samples");
    std::vector<double> d;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double diff = y[i] - x[i];
        if (diff != 0.0) d.push_back(diff);
    }
    WilcoxonResult r;
    r.nonzero = d.size();
    if (d.empty()) {
        r.degenerate = true;
        return r;
    }

    // Doubled average ranks keep tied ranks integral.
    std::vector<std::size_t> order(d.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return std::abs(d[a]) < std::abs(d[b]); });
    std::vector<std::size_t> rank2(d.size());
    double tie_term = 0;
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j + 1 < order.size() && std::abs(d[order[j + 1]]) == std::abs(d[order[i]])) ++j;
        for (std::size_t k = i; k <= j; ++k) rank2[order[k]] = i + j + 2;
        const double t = static_cast<double>(j - i + 1);
        tie_term += t * t * t - t;
        i = j + 1;
    }
    std::size_t observed2 = 0;
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] > 0) observed2 += rank2[i];
    r.w_plus = static_cast<double>(observed2) / 2.0;

    const auto m = d.size();
    if (m <= kWilcoxonExactLimit) {
        const std::size_t max2 = m * (m + 1);
        std::vector<double> counts(max2 + 1, 0.0);
        counts[0] = 1;
        for (auto rk : rank2) {
            for (std::size_t s = max2; s >= rk; --s) counts[s] += counts[s - rk];
        }
        double tail = 0;
        for (std::size_t s = observed2; s <= max2; ++s) tail += counts[s];
        r.p_value = tail / std::ldexp(1.0, static_cast<int>(m));
        return r;
    }

    const double md = static_cast<double>(m);
    const double mean = md * (md + 1) / 4.0;
    const double var = md * (md + 1) * (2 * md + 1) / 24.0 - tie_term / 48.0;
    const double z = (r.w_plus - mean - 0.5) / std::sqrt(var);
    r.p_value = 0.5 * std::erfc(z / std::sqrt(2.0));
    r.exact = false;
    return r;
}

RunSummary aggregate_runs(const std::vector<double>& values) {
    if (values.empty()) throw UserError("no runs to aggregate");
    RunSummary s;
    s.runs = values.size();
    s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
    if (values.size() >= 2) {
        double ss = 0;
        for (double v : values) ss += (v - s.mean) * (v - s.mean);
        s.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
    }
    return s;
}

} // namespace cqatag::eval
