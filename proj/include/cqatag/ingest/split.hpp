#pragma once

#include "cqatag/ingest/corpus.hpp"

#include <array>
#include <cstdint>
#include <json.hpp>
#include <string>
#include <vector>

namespace cqatag::ingest {

struct SplitRatios {
    double train = 0.7;
    double dev = 0.1;
    double test = 0.2;
};

/// Train/dev/test partition of a corpus' question ids. Each list is sorted.
struct CorpusSplit {
    std::vector<PostId> train;
    std::vector<PostId> dev;
    std::vector<PostId> test;
    std::uint64_t seed = 0;
    SplitRatios ratios;

    friend bool operator==(const CorpusSplit& a, const CorpusSplit& b) {
        return a.train == b.train && a.dev == b.dev && a.test == b.test && a.seed == b.seed;
    }
};

/// Name of the generator and shuffle recorded in every split manifest.
inline constexpr const char* kSplitPrng = "mt19937_64";
inline constexpr const char* kSplitShuffle = "fisher-yates, bounded draws by rejection";
inline constexpr const char* kSplitRounding = "largest-remainder";

/// Sizes for n items under largest-remainder rounding. Remainders are handed
/// out by descending fractional part, ties going to train, then dev, then test.
std::array<std::size_t, 3> allocate_split_sizes(std::size_t n, const SplitRatios& ratios);

/// Uniformly shuffles `ids` in place. Draws come only from a mt19937_64
/// seeded with `seed`, so the result is identical on every platform.
void portable_shuffle(std::vector<PostId>& ids, std::uint64_t seed);

/// Random partition of the question ids. Ids are sorted before shuffling so
/// the split depends only on the id set and the seed.
/// Throws UserError for fewer than 10 questions or invalid ratios.
CorpusSplit split_corpus(const DomainCorpus& corpus, const SplitRatios& ratios, std::uint64_t seed);
CorpusSplit split_ids(std::vector<PostId> ids, const SplitRatios& ratios, std::uint64_t seed);

nlohmann::json split_to_json(const CorpusSplit& split);
CorpusSplit split_from_json(const nlohmann::json& j);

} // namespace cqatag::ingest
