#include "cqatag/baselines/ovr_sgd.hpp"

#include "cqatag/error.hpp"
#include "cqatag/ingest/split.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstring>
#include <map>
#include <numeric>
#include <thread>
#include <unordered_map>

namespace cqatag::baselines {

static_assert(std::endian::native == std::endian::little, "model files assume little-endian");

namespace {

constexpr double kConstantBias = 30.0;
constexpr char kMagic[8] = {'C', 'Q', 'T', 'G', 'M', 'D', 'L', '1'};

double log_loss_dloss(double p, double y) {
    const double z = p * y;
    if (z > 18.0) return -y * std::exp(-z);
    if (z < -18.0) return -y;
    return -y / (std::exp(z) + 1.0);
}

template <typename T>
void write_pod(std::ostream& out, const T& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_pod(std::istream& in) {
    T v{};
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!in) throw UserError("truncated model file");
    return v;
}

} // namespace

void SgdParams::validate() const {
    if (!(alpha > 0)) throw UserError("alpha must be positive");
    if (epochs < 1) throw UserError("epochs must be at least 1");
    if (!(intercept_decay >= 0)) throw UserError("intercept_decay must be non-negative");
}

double ClassWeights::dense_weight(std::uint32_t feature) const {
    const auto it = std::lower_bound(index.begin(), index.end(), feature);
    return it != index.end() && *it == feature ? weight[static_cast<std::size_t>(it - index.begin())]
                                               : 0.0;
}

double sigmoid(double z) {
    if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

void OvrModel::finalize() {
    feature_ptr_.assign(dimension + 1, 0);
    constant_classes_.clear();
    for (std::size_t c = 0; c < weights.size(); ++c) {
        if (weights[c].constant) constant_classes_.push_back(c);
        for (auto f : weights[c].index) ++feature_ptr_[f + 1];
    }
    std::partial_sum(feature_ptr_.begin(), feature_ptr_.end(), feature_ptr_.begin());
    feature_class_.assign(feature_ptr_.back(), 0);
    feature_weight_.assign(feature_ptr_.back(), 0);
    auto fill = feature_ptr_;
    for (std::size_t c = 0; c < weights.size(); ++c) {
        const auto& w = weights[c];
        for (std::size_t i = 0; i < w.index.size(); ++i) {
            const auto slot = fill[w.index[i]]++;
            feature_class_[slot] = static_cast<std::uint32_t>(c);
            feature_weight_[slot] = w.weight[i];
        }
    }
}

std::vector<double> OvrModel::decision_function(const SparseMatrix& x, std::size_t row) const {
    std::vector<double> scores(classes.size());
    for (std::size_t c = 0; c < classes.size(); ++c) scores[c] = weights[c].bias;
    for (auto i = x.row_ptr[row]; i < x.row_ptr[row + 1]; ++i) {
        const auto f = x.col[i];
        if (f >= dimension) continue;
        const double v = x.val[i];
        for (auto s = feature_ptr_[f]; s < feature_ptr_[f + 1]; ++s) {
            scores[feature_class_[s]] += v * feature_weight_[s];
        }
    }
    return scores;
}

ClassWeights train_binary_sgd(const SparseMatrix& x, const std::vector<char>& positive,
                              const SgdParams& params) {
    params.validate();
    const auto n = x.rows();
    if (positive.size() != n) throw UserError("label vector does not match the matrix");
    const auto n_pos = static_cast<std::size_t>(std::count(positive.begin(), positive.end(), 1));
    if (n_pos == 0) throw UserError("class has no positive training posts");

    ClassWeights out;
    if (n_pos == n) {
        out.bias = kConstantBias;
        out.constant = true;
        return out;
    }

    const double alpha = params.alpha;
    const double typw = std::sqrt(1.0 / std::sqrt(alpha));
    const double eta0 = typw / std::max(1.0, -log_loss_dloss(-typw, 1.0));
    const double t0 = 1.0 / (eta0 * alpha);

    std::vector<double> w(x.cols, 0.0);
    double wscale = 1.0;
    double bias = 0.0;
    double t = 1.0;
    std::vector<ingest::PostId> order(n);
    for (int epoch = 0; epoch < params.epochs; ++epoch) {
        std::iota(order.begin(), order.end(), ingest::PostId{0});
        ingest::portable_shuffle(order, params.seed + static_cast<std::uint64_t>(epoch));
        for (const auto r : order) {
            const auto row = static_cast<std::size_t>(r);
            double p = 0;
            for (auto i = x.row_ptr[row]; i < x.row_ptr[row + 1]; ++i) p += w[x.col[i]] * x.val[i];
            p = p * wscale + bias;
            const double y = positive[row] ? 1.0 : -1.0;
            const double eta = 1.0 / (alpha * (t0 + t - 1.0));
            const double update = -eta * log_loss_dloss(p, y);
            wscale *= std::max(0.0, 1.0 - eta * alpha);
            if (update != 0.0) {
                const double step = update / wscale;
                for (auto i = x.row_ptr[row]; i < x.row_ptr[row + 1]; ++i) w[x.col[i]] += step * x.val[i];
                bias += update * params.intercept_decay;
            }
            if (wscale < 1e-9) {
                for (auto& v : w) v *= wscale;
                wscale = 1.0;
            }
            t += 1.0;
        }
    }
    for (std::size_t f = 0; f < w.size(); ++f) {
        const auto v = static_cast<float>(w[f] * wscale);
        if (v != 0.0f) {
            out.index.push_back(static_cast<std::uint32_t>(f));
            out.weight.push_back(v);
        }
    }
    out.bias = bias;
    return out;
}

OvrModel train_ovr_sgd(const SparseMatrix& x, const std::vector<std::vector<std::string>>& labels,
                       const SgdParams& params, std::vector<std::string> classes) {
    params.validate();
    if (labels.size() != x.rows()) throw UserError("label sets do not match the matrix rows");

    std::unordered_map<std::string, std::size_t> freq;
    for (const auto& ls : labels)
        for (const auto& l : ls) ++freq[l];
    if (classes.empty()) {
        for (const auto& [tag, _] : freq) classes.push_back(tag);
        std::sort(classes.begin(), classes.end(), [&](const auto& a, const auto& b) {
            const auto fa = freq[a], fb = freq[b];
            return fa != fb ? fa > fb : a < b;
        });
    }
    std::unordered_map<std::string, std::size_t> class_index;
    for (std::size_t c = 0; c < classes.size(); ++c) {
        if (!freq.contains(classes[c])) {
            throw UserError("class \"" + classes[c] + "\" never occurs in training labels");
        }
        if (!class_index.emplace(classes[c], c).second) {
            throw UserError("class \"" + classes[c] + "\" listed twice");
        }
    }
    std::vector<std::vector<std::uint32_t>> rows_of(classes.size());
    for (std::size_t r = 0; r < labels.size(); ++r) {
        for (const auto& l : labels[r]) {
            const auto it = class_index.find(l);
            if (it != class_index.end()) rows_of[it->second].push_back(static_cast<std::uint32_t>(r));
        }
    }

    OvrModel model;
    model.classes = std::move(classes);
    model.dimension = x.cols;
    model.params = params;
    model.weights.resize(model.classes.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        std::vector<char> positive(x.rows());
        for (auto c = next++; c < model.classes.size(); c = next++) {
            std::fill(positive.begin(), positive.end(), 0);
            for (auto r : rows_of[c]) positive[r] = 1;
            model.weights[c] = train_binary_sgd(x, positive, params);
        }
    };
    unsigned threads = params.threads ? params.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, model.classes.size()));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    }
    model.finalize();
    return model;
}

PredictionSet predict_topk(const OvrModel& model, const SparseMatrix& x, std::size_t row,
                           ingest::PostId post_id, std::size_t k) {
    const auto scores = model.decision_function(x, row);
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    k = std::min({k, order.size(), kMaxPredictions});
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                      [&](std::size_t a, std::size_t b) {
                          return scores[a] != scores[b] ? scores[a] > scores[b] : a < b;
                      });
    PredictionSet set;
    set.post_id = post_id;
    for (std::size_t i = 0; i < k; ++i) {
        set.tags.push_back({model.classes[order[i]], sigmoid(scores[order[i]]), Source::Baseline});
    }
    return set;
}

void save_model(std::ostream& out, const FeatureSpace& space, const OvrModel& model) {
    nlohmann::json header;
    header["format"] = "cqatag-ovr-sgd";
    header["version"] = 1;
    header["features"] = feature_config_to_json(space.config);
    header["n_documents"] = space.n_documents;
    header["terms"] = space.terms;
    header["df"] = space.df;
    header["idf"] = space.idf;
    header["classes"] = model.classes;
    header["sgd"] = {{"loss", "log"},
                     {"penalty", "l2"},
                     {"learning_rate", "optimal"},
                     {"alpha", model.params.alpha},
                     {"epochs", model.params.epochs},
                     {"seed", model.params.seed},
                     {"intercept_decay", model.params.intercept_decay},
                     {"shuffle", ingest::kSplitShuffle}};
    std::vector<std::size_t> constant;
    for (std::size_t c = 0; c < model.weights.size(); ++c)
        if (model.weights[c].constant) constant.push_back(c);
    header["constant_classes"] = constant;

    const auto text = header.dump();
    out.write(kMagic, sizeof kMagic);
    write_pod<std::uint64_t>(out, text.size());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    for (const auto& w : model.weights) {
        write_pod<double>(out, w.bias);
        write_pod<std::uint64_t>(out, w.index.size());
        out.write(reinterpret_cast<const char*>(w.index.data()),
                  static_cast<std::streamsize>(w.index.size() * sizeof(std::uint32_t)));
        out.write(reinterpret_cast<const char*>(w.weight.data()),
                  static_cast<std::streamsize>(w.weight.size() * sizeof(float)));
    }
    if (!out) throw Error("failed to write model file");
}

LoadedModel load_model(std::istream& in) {
    char magic[sizeof kMagic];
    in.read(magic, sizeof magic);
    if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0) throw UserError("not a model file");
    const auto len = read_pod<std::uint64_t>(in);
    std::string text(len, '\0');
    in.read(text.data(), static_cast<std::streamsize>(len));
    if (!in) throw UserError("truncated model file");

    LoadedModel m;
    try {
        const auto header = nlohmann::json::parse(text);
        m.space.config = feature_config_from_json(header.at("features"));
        m.space.n_documents = header.at("n_documents").get<std::size_t>();
        m.space.terms = header.at("terms").get<std::vector<std::string>>();
        m.space.df = header.at("df").get<std::vector<std::uint32_t>>();
        m.space.idf = header.at("idf").get<std::vector<float>>();
        m.model.classes = header.at("classes").get<std::vector<std::string>>();
        const auto& sgd = header.at("sgd");
        m.model.params.alpha = sgd.at("alpha").get<double>();
        m.model.params.epochs = sgd.at("epochs").get<int>();
        m.model.params.seed = sgd.at("seed").get<std::uint64_t>();
        m.model.params.intercept_decay = sgd.at("intercept_decay").get<double>();
        m.model.dimension = m.space.terms.size();
        m.model.weights.resize(m.model.classes.size());
        for (auto c : header.at("constant_classes").get<std::vector<std::size_t>>()) {
            if (c >= m.model.weights.size()) throw UserError("bad constant class index");
            m.model.weights[c].constant = true;
        }
    } catch (const nlohmann::json::exception& e) {
        throw UserError(std::string("malformed model header: ") + e.what());
    }
    for (auto& w : m.model.weights) {
        w.bias = read_pod<double>(in);
        const auto nnz = read_pod<std::uint64_t>(in);
        if (nnz > m.model.dimension) throw UserError("model weights exceed the feature dimension");
        w.index.resize(nnz);
        w.weight.resize(nnz);
        in.read(reinterpret_cast<char*>(w.index.data()),
                static_cast<std::streamsize>(nnz * sizeof(std::uint32_t)));
        in.read(reinterpret_cast<char*>(w.weight.data()), static_cast<std::streamsize>(nnz * sizeof(float)));
        if (!in) throw UserError("truncated model file");
        for (auto f : w.index)
            if (f >= m.model.dimension) throw UserError("model weight index out of range");
    }
    m.space.build_index();
    m.model.finalize();
    return m;
}

} // namespace cqatag::baselines
