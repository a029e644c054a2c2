#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "subnetx/errors.hpp"
#include "subnetx/rng.hpp"

namespace subnetx {

// Subjects-by-features design matrix with binary labels (1 = case).
struct FeatureMatrix {
    Eigen::MatrixXd X;
    std::vector<int> y;
    std::vector<std::string> descriptors;
};

struct ModelKind {
    enum class Type {
        knn,
        decision_tree,
        logistic_regression,
        linear_svm,
        adaboost,
        bagged_trees,
    };

    Type type = Type::knn;
    int k = 5;
    int max_depth = 5;
    double l2 = 1e-3;
    int iters = 500;
    double lr = 0.1;
    double c = 1.0;
    int rounds = 50;
    int tree_count = 25;

    static ModelKind knn(int k = 5) {
        ModelKind m;
        m.type = Type::knn;
        m.k = k;
        return m;
    }
    static ModelKind decision_tree(int max_depth = 5) {
        ModelKind m;
        m.type = Type::decision_tree;
        m.max_depth = max_depth;
        return m;
    }
    static ModelKind logistic_regression(double l2 = 1e-3, int iters = 500, double lr = 0.1) {
        ModelKind m;
        m.type = Type::logistic_regression;
        m.l2 = l2;
        m.iters = iters;
        m.lr = lr;
        return m;
    }
    static ModelKind linear_svm(double c = 1.0, int iters = 500) {
        ModelKind m;
        m.type = Type::linear_svm;
        m.c = c;
        m.iters = iters;
        return m;
    }
    static ModelKind adaboost(int rounds = 50) {
        ModelKind m;
        m.type = Type::adaboost;
        m.rounds = rounds;
        return m;
    }
    static ModelKind bagged_trees(int tree_count = 25, int max_depth = 5) {
        ModelKind m;
        m.type = Type::bagged_trees;
        m.tree_count = tree_count;
        m.max_depth = max_depth;
        return m;
    }

    void validate() const {
        const bool ok = k > 0 && max_depth > 0 && l2 >= 0.0 && iters > 0 && lr > 0.0 &&
                        c > 0.0 && rounds > 0 && tree_count > 0;
        if (!ok) throw ConfigError("model hyperparameters must be positive");
    }

    std::string name() const {
        switch (type) {
            case Type::knn: return "knn";
            case Type::decision_tree: return "decision_tree";
            case Type::logistic_regression: return "logistic_regression";
            case Type::linear_svm: return "linear_svm";
            case Type::adaboost: return "adaboost";
            case Type::bagged_trees: return "bagged_trees";
        }
        return "unknown";
    }

    static ModelKind from_name(const std::string& name) {
        if (name == "knn") return knn();
        if (name == "decision_tree") return decision_tree();
        if (name == "logistic_regression") return logistic_regression();
        if (name == "linear_svm") return linear_svm();
        if (name == "adaboost") return adaboost();
        if (name == "bagged_trees") return bagged_trees();
        throw ConfigError("unknown classifier: " + name);
    }
};

// Per-column z-score fitted on training rows only. Columns with sd below
// 1e-12 map to zero.
struct Standardizer {
    Eigen::VectorXd mean;
    Eigen::VectorXd sd;

    static Standardizer fit(const Eigen::MatrixXd& X) {
        if (X.rows() == 0) throw DataError("cannot standardize an empty matrix");
        Standardizer s;
        s.mean = X.colwise().mean();
        Eigen::MatrixXd centered = X.rowwise() - s.mean.transpose();
        s.sd = (centered.array().square().colwise().mean()).sqrt();
        return s;
    }

    Eigen::MatrixXd apply(const Eigen::MatrixXd& X) const {
        Eigen::MatrixXd out = X.rowwise() - mean.transpose();
        for (Eigen::Index j = 0; j < out.cols(); ++j) {
            if (sd(j) < 1e-12) {
                out.col(j).setZero();
            } else {
                out.col(j) /= sd(j);
            }
        }
        return out;
    }
};

namespace detail {

struct TreeNode {
    int feature = -1; // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    int label = 0;
};

struct Tree {
    std::vector<TreeNode> nodes;

    int predict_row(const Eigen::Ref<const Eigen::RowVectorXd>& row) const {
        int at = 0;
        while (nodes[static_cast<std::size_t>(at)].feature >= 0) {
            const auto& node = nodes[static_cast<std::size_t>(at)];
            at = row(node.feature) <= node.threshold ? node.left : node.right;
        }
        return nodes[static_cast<std::size_t>(at)].label;
    }
};

inline int majority_label(const std::vector<int>& y, const std::vector<int>& idx) {
    int ones = 0;
    for (int i : idx) ones += y[static_cast<std::size_t>(i)];
    const int zeros = static_cast<int>(idx.size()) - ones;
    return ones > zeros ? 1 : 0; // ties toward 0
}

inline double gini(int zeros, int ones) {
    const double n = zeros + ones;
    if (n <= 0.0) return 0.0;
    const double p0 = zeros / n;
    const double p1 = ones / n;
    return 1.0 - p0 * p0 - p1 * p1;
}

// CART with Gini impurity. Split scan is deterministic: features in
// ascending order, thresholds at midpoints of consecutive distinct
// values, first strictly-better split wins.
inline int build_tree_node(Tree& tree, const Eigen::MatrixXd& X, const std::vector<int>& y,
                           std::vector<int> idx, int depth, int max_depth) {
    const int node_id = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    tree.nodes.back().label = majority_label(y, idx);

    int ones = 0;
    for (int i : idx) ones += y[static_cast<std::size_t>(i)];
    const int zeros = static_cast<int>(idx.size()) - ones;
    if (depth >= max_depth || ones == 0 || zeros == 0 || idx.size() < 2) return node_id;

    const double parent_gini = gini(zeros, ones);
    int best_feature = -1;
    double best_threshold = 0.0;
    double best_score = parent_gini - 1e-12;

    std::vector<std::pair<double, int>> column(idx.size());
    for (Eigen::Index f = 0; f < X.cols(); ++f) {
        for (std::size_t i = 0; i < idx.size(); ++i) {
            const int row = idx[i];
            column[i] = {X(row, f), y[static_cast<std::size_t>(row)]};
        }
        std::sort(column.begin(), column.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });

        int left_ones = 0;
        for (std::size_t i = 1; i < column.size(); ++i) {
            left_ones += column[i - 1].second;
            if (column[i - 1].first == column[i].first) continue;
            const int left_n = static_cast<int>(i);
            const int right_n = static_cast<int>(column.size()) - left_n;
            const int right_ones = ones - left_ones;
            const double score =
                (left_n * gini(left_n - left_ones, left_ones) +
                 right_n * gini(right_n - right_ones, right_ones)) /
                static_cast<double>(column.size());
            if (score < best_score) {
                best_score = score;
                best_feature = static_cast<int>(f);
                best_threshold = 0.5 * (column[i - 1].first + column[i].first);
            }
        }
    }
    if (best_feature < 0) return node_id;

    std::vector<int> left_idx;
    std::vector<int> right_idx;
    for (int i : idx) {
        if (X(i, best_feature) <= best_threshold) {
            left_idx.push_back(i);
        } else {
            right_idx.push_back(i);
        }
    }
    idx.clear();
    idx.shrink_to_fit();

    const int left = build_tree_node(tree, X, y, std::move(left_idx), depth + 1, max_depth);
    const int right = build_tree_node(tree, X, y, std::move(right_idx), depth + 1, max_depth);
    tree.nodes[static_cast<std::size_t>(node_id)].feature = best_feature;
    tree.nodes[static_cast<std::size_t>(node_id)].threshold = best_threshold;
    tree.nodes[static_cast<std::size_t>(node_id)].left = left;
    tree.nodes[static_cast<std::size_t>(node_id)].right = right;
    return node_id;
}

inline Tree build_tree(const Eigen::MatrixXd& X, const std::vector<int>& y,
                       std::vector<int> idx, int max_depth) {
    Tree tree;
    build_tree_node(tree, X, y, std::move(idx), 0, max_depth);
    return tree;
}

struct KnnModel {
    Eigen::MatrixXd X;
    std::vector<int> y;
    int k = 5;
};

struct TreeModel {
    Tree tree;
};

struct LinearModel {
    Eigen::VectorXd w;
    double b = 0.0;
};

struct Stump {
    int feature = 0;
    double threshold = 0.0;
    int polarity = 1; // +1: x > threshold votes +1; -1: x > threshold votes -1
    double alpha = 0.0;

    int vote(double x) const { return (x > threshold ? polarity : -polarity); }
};

struct AdaBoostModel {
    std::vector<Stump> stumps;
};

struct BaggingModel {
    std::vector<Tree> trees;
};

// Minimum weighted error stump; deterministic scan order (feature, cut,
// polarity +1 first), first strict improvement wins.
inline std::pair<Stump, double> best_stump(const Eigen::MatrixXd& X,
                                           const std::vector<int>& target,
                                           const std::vector<double>& weights) {
    const auto n = static_cast<std::size_t>(X.rows());
    double total_pos = 0.0;
    double total_neg = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        (target[i] > 0 ? total_pos : total_neg) += weights[i];
    }

    Stump best;
    double best_err = std::numeric_limits<double>::infinity();
    std::vector<std::tuple<double, int, double>> column(n); // value, target, weight

    for (Eigen::Index f = 0; f < X.cols(); ++f) {
        for (std::size_t i = 0; i < n; ++i) {
            column[i] = {X(static_cast<Eigen::Index>(i), f), target[i], weights[i]};
        }
        std::sort(column.begin(), column.end(),
                  [](const auto& a, const auto& b) { return std::get<0>(a) < std::get<0>(b); });

        double left_pos = 0.0;
        double left_neg = 0.0;
        for (std::size_t i = 1; i < n; ++i) {
            (std::get<1>(column[i - 1]) > 0 ? left_pos : left_neg) += std::get<2>(column[i - 1]);
            if (std::get<0>(column[i - 1]) == std::get<0>(column[i])) continue;
            const double threshold = 0.5 * (std::get<0>(column[i - 1]) + std::get<0>(column[i]));
            // polarity +1 predicts -1 on the left, +1 on the right; ties
            // within float noise keep the first stump in scan order
            const double err_pos = left_pos + (total_neg - left_neg);
            const double err_neg = left_neg + (total_pos - left_pos);
            if (err_pos < best_err - 1e-12) {
                best_err = err_pos;
                best = {static_cast<int>(f), threshold, 1, 0.0};
            }
            if (err_neg < best_err - 1e-12) {
                best_err = err_neg;
                best = {static_cast<int>(f), threshold, -1, 0.0};
            }
        }
    }
    return {best, best_err};
}

} // namespace detail

class Model {
public:
    using Impl = std::variant<detail::KnnModel, detail::TreeModel, detail::LinearModel,
                              detail::AdaBoostModel, detail::BaggingModel>;

    Model(ModelKind kind, Impl impl, Eigen::Index features)
        : kind_(kind), impl_(std::move(impl)), features_(features) {}

    const ModelKind& kind() const { return kind_; }
    Eigen::Index feature_count() const { return features_; }

    // inspection hook for boosting diagnostics; null for other kinds
    const std::vector<detail::Stump>* stumps() const {
        const auto* ab = std::get_if<detail::AdaBoostModel>(&impl_);
        return ab ? &ab->stumps : nullptr;
    }

    std::vector<int> predict(const Eigen::MatrixXd& X) const {
        if (X.cols() != features_) throw DataError("feature count does not match training");
        std::vector<int> out(static_cast<std::size_t>(X.rows()), 0);
        for (Eigen::Index i = 0; i < X.rows(); ++i) {
            out[static_cast<std::size_t>(i)] = predict_row(X.row(i));
        }
        return out;
    }

private:
    int predict_row(const Eigen::Ref<const Eigen::RowVectorXd>& row) const {
        if (const auto* knn = std::get_if<detail::KnnModel>(&impl_)) {
            const auto n = static_cast<std::size_t>(knn->X.rows());
            std::vector<std::pair<double, int>> dist(n);
            for (std::size_t i = 0; i < n; ++i) {
                const double d =
                    (knn->X.row(static_cast<Eigen::Index>(i)) - row).squaredNorm();
                dist[i] = {d, static_cast<int>(i)};
            }
            const auto k = std::min<std::size_t>(static_cast<std::size_t>(knn->k), n);
            // distance ties resolve to the smaller training index
            std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k),
                              dist.end());
            int ones = 0;
            for (std::size_t i = 0; i < k; ++i) {
                ones += knn->y[static_cast<std::size_t>(dist[i].second)];
            }
            const int zeros = static_cast<int>(k) - ones;
            return ones > zeros ? 1 : 0;
        }
        if (const auto* tm = std::get_if<detail::TreeModel>(&impl_)) {
            return tm->tree.predict_row(row);
        }
        if (const auto* lin = std::get_if<detail::LinearModel>(&impl_)) {
            return (row * lin->w).value() + lin->b > 0.0 ? 1 : 0;
        }
        if (const auto* ab = std::get_if<detail::AdaBoostModel>(&impl_)) {
            double score = 0.0;
            for (const auto& s : ab->stumps) score += s.alpha * s.vote(row(s.feature));
            return score > 0.0 ? 1 : 0;
        }
        const auto& bag = std::get<detail::BaggingModel>(impl_);
        int ones = 0;
        for (const auto& t : bag.trees) ones += t.predict_row(row);
        const int zeros = static_cast<int>(bag.trees.size()) - ones;
        return ones > zeros ? 1 : 0;
    }

    ModelKind kind_;
    Impl impl_;
    Eigen::Index features_;
};

namespace detail {

inline LinearModel train_logistic(const Eigen::MatrixXd& X, const std::vector<int>& y,
                                  const ModelKind& kind) {
    const auto n = static_cast<double>(X.rows());
    Eigen::VectorXd labels(X.rows());
    for (Eigen::Index i = 0; i < X.rows(); ++i) labels(i) = y[static_cast<std::size_t>(i)];

    LinearModel m;
    m.w = Eigen::VectorXd::Zero(X.cols());
    for (int it = 0; it < kind.iters; ++it) {
        Eigen::VectorXd z = X * m.w + Eigen::VectorXd::Constant(X.rows(), m.b);
        Eigen::VectorXd p =
            z.unaryExpr([](double v) { return 1.0 / (1.0 + std::exp(-std::clamp(v, -30.0, 30.0))); });
        Eigen::VectorXd residual = p - labels;
        Eigen::VectorXd grad_w = X.transpose() * residual / n + kind.l2 * m.w;
        const double grad_b = residual.mean();
        m.w -= kind.lr * grad_w;
        m.b -= kind.lr * grad_b;
    }
    return m;
}

inline LinearModel train_svm(const Eigen::MatrixXd& X, const std::vector<int>& y,
                             const ModelKind& kind) {
    const auto n = static_cast<double>(X.rows());
    Eigen::VectorXd t(X.rows());
    for (Eigen::Index i = 0; i < X.rows(); ++i) t(i) = y[static_cast<std::size_t>(i)] > 0 ? 1.0 : -1.0;

    LinearModel m;
    m.w = Eigen::VectorXd::Zero(X.cols());
    const double step0 = 0.5;
    for (int it = 0; it < kind.iters; ++it) {
        Eigen::VectorXd z = X * m.w + Eigen::VectorXd::Constant(X.rows(), m.b);
        Eigen::VectorXd grad_w = m.w / kind.c;
        double grad_b = 0.0;
        for (Eigen::Index i = 0; i < X.rows(); ++i) {
            if (t(i) * z(i) < 1.0) {
                grad_w -= t(i) / n * X.row(i).transpose();
                grad_b -= t(i) / n;
            }
        }
        const double step = step0 / std::sqrt(static_cast<double>(it) + 1.0);
        m.w -= step * grad_w;
        m.b -= step * grad_b;
    }
    return m;
}

inline AdaBoostModel train_adaboost(const Eigen::MatrixXd& X, const std::vector<int>& y,
                                    const ModelKind& kind) {
    const auto n = static_cast<std::size_t>(X.rows());
    std::vector<int> target(n);
    for (std::size_t i = 0; i < n; ++i) target[i] = y[i] > 0 ? 1 : -1;
    std::vector<double> weights(n, 1.0 / static_cast<double>(n));

    AdaBoostModel model;
    for (int round = 0; round < kind.rounds; ++round) {
        auto [stump, err] = best_stump(X, target, weights);
        if (!std::isfinite(err) || err >= 0.5) break;
        err = std::max(err, 1e-12);
        stump.alpha = 0.5 * std::log((1.0 - err) / err);
        model.stumps.push_back(stump);
        if (err <= 1e-12) break;

        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const int h = stump.vote(X(static_cast<Eigen::Index>(i), stump.feature));
            weights[i] *= std::exp(-stump.alpha * target[i] * h);
            total += weights[i];
        }
        for (auto& w : weights) w /= total;
    }
    return model;
}

} // namespace detail

// Deterministic training given (kind, data, seed); the seed feeds only the
// bootstrap resamples of bagged trees.
inline Model train(const ModelKind& kind, const Eigen::MatrixXd& X, const std::vector<int>& y,
                   std::uint64_t seed = 0) {
    kind.validate();
    if (static_cast<std::size_t>(X.rows()) != y.size()) {
        throw DataError("row count does not match label count");
    }
    int ones = 0;
    for (int label : y) {
        if (label != 0 && label != 1) throw DataError("labels must be 0 or 1");
        ones += label;
    }
    if (ones == 0 || ones == static_cast<int>(y.size())) {
        throw DataError("training labels contain a single class");
    }

    switch (kind.type) {
        case ModelKind::Type::knn:
            return Model(kind, detail::KnnModel{X, y, kind.k}, X.cols());
        case ModelKind::Type::decision_tree: {
            std::vector<int> idx(static_cast<std::size_t>(X.rows()));
            std::iota(idx.begin(), idx.end(), 0);
            return Model(kind, detail::TreeModel{detail::build_tree(X, y, std::move(idx), kind.max_depth)},
                         X.cols());
        }
        case ModelKind::Type::logistic_regression:
            return Model(kind, detail::train_logistic(X, y, kind), X.cols());
        case ModelKind::Type::linear_svm:
            return Model(kind, detail::train_svm(X, y, kind), X.cols());
        case ModelKind::Type::adaboost:
            return Model(kind, detail::train_adaboost(X, y, kind), X.cols());
        case ModelKind::Type::bagged_trees: {
            Rng rng(seed);
            detail::BaggingModel bag;
            bag.trees.reserve(static_cast<std::size_t>(kind.tree_count));
            const auto n = static_cast<std::size_t>(X.rows());
            for (int t = 0; t < kind.tree_count; ++t) {
                std::vector<int> sample(n);
                for (auto& s : sample) s = static_cast<int>(rng.uniform_int(n));
                bag.trees.push_back(detail::build_tree(X, y, std::move(sample), kind.max_depth));
            }
            return Model(kind, std::move(bag), X.cols());
        }
    }
    throw ConfigError("unknown model kind");
}

// Stratified k-fold partition: per-class indices are shuffled with the
// seeded generator and dealt round-robin, so per-fold class counts differ
// by at most one from proportionality.
inline std::vector<std::vector<int>> stratified_folds(const std::vector<int>& y, int k,
                                                      std::uint64_t seed) {
    if (k < 2) throw std::invalid_argument("k must exceed 1");
    std::vector<int> class0;
    std::vector<int> class1;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (y[i] == 0) {
            class0.push_back(static_cast<int>(i));
        } else if (y[i] == 1) {
            class1.push_back(static_cast<int>(i));
        } else {
            throw DataError("labels must be 0 or 1");
        }
    }
    if (static_cast<int>(class0.size()) < k || static_cast<int>(class1.size()) < k) {
        throw DataError("class smaller than fold count");
    }

    Rng rng(seed);
    rng.shuffle(class0);
    rng.shuffle(class1);

    std::vector<std::vector<int>> folds(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < class0.size(); ++i) {
        folds[i % static_cast<std::size_t>(k)].push_back(class0[i]);
    }
    for (std::size_t i = 0; i < class1.size(); ++i) {
        folds[i % static_cast<std::size_t>(k)].push_back(class1[i]);
    }
    for (auto& f : folds) std::sort(f.begin(), f.end());
    return folds;
}

// Accuracy / precision / recall in percent, positive class = 1.
struct EvalReport {
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    long tp = 0, fp = 0, tn = 0, fn = 0;
    bool precision_defined = true;
    bool recall_defined = true;
};

inline EvalReport metrics(const std::vector<int>& pred, const std::vector<int>& truth) {
    if (pred.size() != truth.size()) throw DataError("prediction and truth lengths differ");
    if (pred.empty()) throw DataError("empty prediction vector");
    EvalReport r;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        if (pred[i] == 1 && truth[i] == 1) ++r.tp;
        if (pred[i] == 1 && truth[i] == 0) ++r.fp;
        if (pred[i] == 0 && truth[i] == 0) ++r.tn;
        if (pred[i] == 0 && truth[i] == 1) ++r.fn;
    }
    r.accuracy = 100.0 * (r.tp + r.tn) / static_cast<double>(pred.size());
    r.precision_defined = (r.tp + r.fp) > 0;
    r.precision = r.precision_defined ? 100.0 * r.tp / static_cast<double>(r.tp + r.fp) : 0.0;
    r.recall_defined = (r.tp + r.fn) > 0;
    r.recall = r.recall_defined ? 100.0 * r.tp / static_cast<double>(r.tp + r.fn) : 0.0;
    return r;
}

struct CrossValResult {
    double mean_accuracy = 0.0; // unweighted mean of per-fold accuracies
    EvalReport pooled;          // confusion over all held-out predictions
};

// Leak-free k-fold evaluation: the standardizer and the model are fitted
// on training rows only for every fold.
inline CrossValResult cross_validate(const ModelKind& kind, const Eigen::MatrixXd& X,
                                     const std::vector<int>& y, int k, std::uint64_t seed) {
    const auto folds = stratified_folds(y, k, seed);
    std::vector<int> all_pred(y.size(), 0);
    double fold_acc_sum = 0.0;

    for (std::size_t f = 0; f < folds.size(); ++f) {
        std::vector<char> in_test(y.size(), 0);
        for (int i : folds[f]) in_test[static_cast<std::size_t>(i)] = 1;
        std::vector<int> train_idx;
        train_idx.reserve(y.size() - folds[f].size());
        for (std::size_t i = 0; i < y.size(); ++i) {
            if (!in_test[i]) train_idx.push_back(static_cast<int>(i));
        }

        Eigen::MatrixXd Xtr(static_cast<Eigen::Index>(train_idx.size()), X.cols());
        std::vector<int> ytr(train_idx.size());
        for (std::size_t i = 0; i < train_idx.size(); ++i) {
            Xtr.row(static_cast<Eigen::Index>(i)) = X.row(train_idx[i]);
            ytr[i] = y[static_cast<std::size_t>(train_idx[i])];
        }
        Eigen::MatrixXd Xte(static_cast<Eigen::Index>(folds[f].size()), X.cols());
        for (std::size_t i = 0; i < folds[f].size(); ++i) {
            Xte.row(static_cast<Eigen::Index>(i)) = X.row(folds[f][i]);
        }

        const auto scaler = Standardizer::fit(Xtr);
        const auto model = train(kind, scaler.apply(Xtr), ytr, derive_seed(seed, 1000 + f));
        const auto pred = model.predict(scaler.apply(Xte));

        int correct = 0;
        for (std::size_t i = 0; i < folds[f].size(); ++i) {
            all_pred[static_cast<std::size_t>(folds[f][i])] = pred[i];
            correct += pred[i] == y[static_cast<std::size_t>(folds[f][i])];
        }
        fold_acc_sum += static_cast<double>(correct) / static_cast<double>(folds[f].size());
    }

    CrossValResult result;
    result.mean_accuracy = fold_acc_sum / static_cast<double>(folds.size());
    result.pooled = metrics(all_pred, y);
    return result;
}

inline double cross_val_accuracy(const ModelKind& kind, const Eigen::MatrixXd& X,
                                 const std::vector<int>& y, int k, std::uint64_t seed) {
    return cross_validate(kind, X, y, k, seed).mean_accuracy;
}

} // namespace subnetx
