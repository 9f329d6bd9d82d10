#pragma once

#include "cqatag/baselines/features.hpp"
#include "cqatag/baselines/prediction.hpp"

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace cqatag::baselines {

/// Logistic loss, L2 penalty, 'optimal' step size eta_t = 1 / (alpha * (t0 + t)).
struct SgdParams {
    double alpha = 1e-5;
    int epochs = 20;
    std::uint64_t seed = 0;
    double intercept_decay = 0.01; // damping of intercept steps on sparse input
    unsigned threads = 0;          // 0 picks the hardware concurrency

    void validate() const;
};

/// One binary classifier. Only non-zero weights are kept.
struct ClassWeights {
    std::vector<std::uint32_t> index;
    std::vector<float> weight;
    double bias = 0;
    bool constant = false; // every training post carried the class

    double dense_weight(std::uint32_t feature) const;
};

class OvrModel {
public:
    std::vector<std::string> classes;
    std::size_t dimension = 0;
    SgdParams params;
    std::vector<ClassWeights> weights; // aligned with classes

    /// Raw decision scores w.x + b for one row, one per class.
    std::vector<double> decision_function(const SparseMatrix& x, std::size_t row) const;

    /// Builds the feature-major lookup used by decision_function. Called by
    /// the trainer and the loader; call again after editing weights by hand.
    void finalize();

private:
    std::vector<std::size_t> feature_ptr_;
    std::vector<std::uint32_t> feature_class_;
    std::vector<float> feature_weight_;
    std::vector<std::size_t> constant_classes_;
};

/// Trains one class against all others. `positive[i]` labels row i.
/// Throws UserError when no row is positive.
ClassWeights train_binary_sgd(const SparseMatrix& x, const std::vector<char>& positive,
                              const SgdParams& params);

/// Classes default to every training tag, most frequent first (ties
/// lexicographic). Every sample sees the same seeded visiting order, so a
/// class's weights do not depend on which other classes are trained.
/// Throws UserError when a requested class never occurs or sizes mismatch.
OvrModel train_ovr_sgd(const SparseMatrix& x, const std::vector<std::vector<std::string>>& labels,
                       const SgdParams& params, std::vector<std::string> classes = {});

double sigmoid(double z);

/// Top-k classes by sigmoid probability; ties keep class order.
PredictionSet predict_topk(const OvrModel& model, const SparseMatrix& x, std::size_t row,
                           ingest::PostId post_id, std::size_t k = kMaxPredictions);

/// Binary model file: magic, JSON header (feature space, classes,
/// hyperparameters), then per class the sparse weights as little-endian
/// uint32 indices and float32 values.
void save_model(std::ostream& out, const FeatureSpace& space, const OvrModel& model);

struct LoadedModel {
    FeatureSpace space;
    OvrModel model;
};

LoadedModel load_model(std::istream& in);

} // namespace cqatag::baselines
