#include "cqatag/ingest/split.hpp"

#include "cqatag/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace cqatag::ingest {

namespace {

void validate(const SplitRatios& r) {
    const double sum = r.train + r.dev + r.test;
    if (!(r.train > 0 && r.dev > 0 && r.test > 0) || std::abs(sum - 1.0) > 1e-9) {
        throw UserError("split ratios must be positive and sum to 1");
    }
}

// Uniform integer in [0, bound) from raw 64-bit draws, rejecting the biased
// tail. std::uniform_int_distribution is implementation-defined, so it would
// make splits differ between standard libraries.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

} // namespace

std::array<std::size_t, 3> allocate_split_sizes(std::size_t n, const SplitRatios& ratios) {
    validate(ratios);
    const std::array<double, 3> r{ratios.train, ratios.dev, ratios.test};
    std::array<std::size_t, 3> sizes{};
    std::array<double, 3> frac{};
    std::size_t assigned = 0;
    for (int i = 0; i < 3; ++i) {
        const double quota = static_cast<double>(n) * r[i];
        // Snap quotas that are integral up to rounding noise (100 * 0.7).
        const double snapped = std::abs(quota - std::round(quota)) < 1e-9 ? std::round(quota) : quota;
        sizes[i] = static_cast<std::size_t>(std::floor(snapped));
        frac[i] = snapped - std::floor(snapped);
        assigned += sizes[i];
    }
    std::array<int, 3> order{0, 1, 2};
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return frac[a] > frac[b]; });
    for (std::size_t k = 0; assigned < n; ++k, ++assigned) ++sizes[order[k % 3]];
    return sizes;
}

void portable_shuffle(std::vector<PostId>& ids, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (std::size_t i = ids.size(); i > 1; --i) {
        const auto j = bounded(rng, i);
        std::swap(ids[i - 1], ids[j]);
    }
}

CorpusSplit split_ids(std::vector<PostId> ids, const SplitRatios& ratios, std::uint64_t seed) {
    validate(ratios);
    if (ids.size() < 10) {
        throw UserError("cannot split fewer than 10 questions (got " + std::to_string(ids.size()) +
                        ")");
    }
    std::sort(ids.begin(), ids.end());
    portable_shuffle(ids, seed);
    const auto sizes = allocate_split_sizes(ids.size(), ratios);

    CorpusSplit split;
    split.seed = seed;
    split.ratios = ratios;
    auto first = ids.begin();
    split.train.assign(first, first + static_cast<std::ptrdiff_t>(sizes[0]));
    first += static_cast<std::ptrdiff_t>(sizes[0]);
    split.dev.assign(first, first + static_cast<std::ptrdiff_t>(sizes[1]));
    first += static_cast<std::ptrdiff_t>(sizes[1]);
    split.test.assign(first, ids.end());
    for (auto* part : {&split.train, &split.dev, &split.test}) std::sort(part->begin(), part->end());
    return split;
}

CorpusSplit split_corpus(const DomainCorpus& corpus, const SplitRatios& ratios,
                         std::uint64_t seed) {
    std::vector<PostId> ids;
    ids.reserve(corpus.questions().size());
    for (const auto& q : corpus.questions()) ids.push_back(q.id);
    return split_ids(std::move(ids), ratios, seed);
}

nlohmann::json split_to_json(const CorpusSplit& split) {
    return {
        {"seed", split.seed},
        {"ratios", {split.ratios.train, split.ratios.dev, split.ratios.test}},
        {"prng", kSplitPrng},
        {"shuffle", kSplitShuffle},
        {"rounding", kSplitRounding},
        {"sizes", {split.train.size(), split.dev.size(), split.test.size()}},
        {"train", split.train},
        {"dev", split.dev},
        {"test", split.test},
    };
}

CorpusSplit split_from_json(const nlohmann::json& j) {
    try {
        if (j.at("prng").get<std::string>() != kSplitPrng) {
            throw UserError("split manifest uses unsupported generator " +
                            j.at("prng").get<std::string>());
        }
        CorpusSplit s;
        s.seed = j.at("seed").get<std::uint64_t>();
        const auto& r = j.at("ratios");
        s.ratios = {r.at(0).get<double>(), r.at(1).get<double>(), r.at(2).get<double>()};
        s.train = j.at("train").get<std::vector<PostId>>();
        s.dev = j.at("dev").get<std::vector<PostId>>();
        s.test = j.at("test").get<std::vector<PostId>>();
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw UserError(std::string("bad split manifest: ") + e.what());
    }
}

} // namespace cqatag::ingest
