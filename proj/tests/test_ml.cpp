#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <Eigen/Dense>

#include "subnetx/ml.hpp"
#include "test_support.hpp"

using namespace subnetx;

namespace {

// 200 points, two classes separated along x1 with a unit margin
std::pair<Eigen::MatrixXd, std::vector<int>> separable_2d(std::uint64_t seed, int per_class = 100) {
    Rng rng(seed);
    const int n = 2 * per_class;
    Eigen::MatrixXd X(n, 2);
    std::vector<int> y(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const int label = i < per_class ? 0 : 1;
        const double x1 = (label == 0 ? -1.0 : 1.0) * (1.0 + 2.0 * rng.uniform01());
        X(i, 0) = x1;
        X(i, 1) = -3.0 + 6.0 * rng.uniform01();
        y[static_cast<std::size_t>(i)] = label;
    }
    return {X, y};
}

std::pair<Eigen::MatrixXd, std::vector<int>> random_labels_2d(std::uint64_t seed, int n = 100) {
    Rng rng(seed);
    Eigen::MatrixXd X(n, 2);
    std::vector<int> y(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        X(i, 0) = rng.gaussian();
        X(i, 1) = rng.gaussian();
        y[static_cast<std::size_t>(i)] = i % 2; // balanced labels, shuffled below
    }
    rng.shuffle(y);
    return {X, y};
}

double training_accuracy(const Model& model, const Eigen::MatrixXd& X, const std::vector<int>& y) {
    const auto pred = model.predict(X);
    int correct = 0;
    for (std::size_t i = 0; i < y.size(); ++i) correct += pred[i] == y[i];
    return static_cast<double>(correct) / static_cast<double>(y.size());
}

// independent single-stump oracle: exhaustive scan with uniform weights
std::vector<int> best_stump_oracle_predictions(const Eigen::MatrixXd& X, const std::vector<int>& y,
                                               const Eigen::MatrixXd& query) {
    const auto n = X.rows();
    double best_err = 1e18;
    int best_f = 0;
    double best_thr = 0.0;
    int best_pol = 1;
    for (Eigen::Index f = 0; f < X.cols(); ++f) {
        std::vector<double> vals;
        for (Eigen::Index i = 0; i < n; ++i) vals.push_back(X(i, f));
        std::sort(vals.begin(), vals.end());
        for (std::size_t i = 1; i < vals.size(); ++i) {
            if (vals[i - 1] == vals[i]) continue;
            const double thr = 0.5 * (vals[i - 1] + vals[i]);
            for (int pol : {1, -1}) {
                int wrong = 0;
                for (Eigen::Index r = 0; r < n; ++r) {
                    const int vote = X(r, f) > thr ? pol : -pol;
                    const int target = y[static_cast<std::size_t>(r)] > 0 ? 1 : -1;
                    wrong += vote != target;
                }
                if (wrong < best_err) {
                    best_err = wrong;
                    best_f = static_cast<int>(f);
                    best_thr = thr;
                    best_pol = pol;
                }
            }
        }
    }
    std::vector<int> pred;
    for (Eigen::Index r = 0; r < query.rows(); ++r) {
        const int vote = query(r, best_f) > best_thr ? best_pol : -best_pol;
        pred.push_back(vote > 0 ? 1 : 0);
    }
    return pred;
}

} // namespace

TEST_CASE("standardize maps the training column to zero mean unit sd") {
    Eigen::MatrixXd X(2, 1);
    X << 1.0, 3.0;
    const auto s = Standardizer::fit(X);
    const auto out = s.apply(X);
    CHECK(out(0, 0) == Catch::Approx(-1.0));
    CHECK(out(1, 0) == Catch::Approx(1.0));

    Eigen::MatrixXd q(1, 1);
    q << 5.0;
    CHECK(s.apply(q)(0, 0) == Catch::Approx(3.0));
}

TEST_CASE("constant columns standardize to zero") {
    Eigen::MatrixXd X(3, 2);
    X << 2.0, 1.0, 2.0, 5.0, 2.0, 9.0;
    const auto out = Standardizer::fit(X).apply(X);
    CHECK(out.col(0).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("standardizer fitted on train rows ignores held-out rows") {
    Rng rng(4);
    Eigen::MatrixXd X(10, 3);
    for (int i = 0; i < 10; ++i) {
        for (int j = 0; j < 3; ++j) X(i, j) = rng.gaussian();
    }
    const std::vector<int> train_rows{0, 2, 4, 6, 8};
    Eigen::MatrixXd Xtr(5, 3);
    for (int i = 0; i < 5; ++i) Xtr.row(i) = X.row(train_rows[static_cast<std::size_t>(i)]);
    const auto before = Standardizer::fit(Xtr);

    for (int held : {1, 3, 5, 7, 9}) X.row(held).setConstant(1e6);
    Eigen::MatrixXd Xtr2(5, 3);
    for (int i = 0; i < 5; ++i) Xtr2.row(i) = X.row(train_rows[static_cast<std::size_t>(i)]);
    const auto after = Standardizer::fit(Xtr2);

    CHECK(before.mean == after.mean);
    CHECK(before.sd == after.sd);
}

TEST_CASE("linear svm separates the 1-D hand example") {
    Eigen::MatrixXd X(4, 1);
    X << -1.0, -2.0, 1.0, 2.0;
    const std::vector<int> y{0, 0, 1, 1};
    const auto scaler = Standardizer::fit(X);
    const auto model = train(ModelKind::linear_svm(), scaler.apply(X), y);
    CHECK(training_accuracy(model, scaler.apply(X), y) == 1.0);
}

TEST_CASE("adaboost with one round is the best decision stump") {
    Rng rng(7);
    Eigen::MatrixXd X(40, 2);
    std::vector<int> y(40);
    for (int i = 0; i < 40; ++i) {
        X(i, 0) = rng.gaussian();
        X(i, 1) = rng.gaussian();
        y[static_cast<std::size_t>(i)] = X(i, 0) + 0.3 * X(i, 1) > 0.0 ? 1 : 0;
    }
    if (std::count(y.begin(), y.end(), 1) == 0 || std::count(y.begin(), y.end(), 0) == 0) {
        y[0] = 1 - y[0];
    }
    const auto model = train(ModelKind::adaboost(1), X, y);
    const auto pred = model.predict(X);
    const auto oracle = best_stump_oracle_predictions(X, y, X);
    CHECK(pred == oracle);
}

TEST_CASE("knn with k=1 memorizes the training set") {
    Rng rng(9);
    Eigen::MatrixXd X(30, 3);
    std::vector<int> y(30);
    for (int i = 0; i < 30; ++i) {
        for (int j = 0; j < 3; ++j) X(i, j) = rng.gaussian();
        y[static_cast<std::size_t>(i)] = static_cast<int>(rng.uniform_int(2));
    }
    y[0] = 0;
    y[1] = 1;
    const auto model = train(ModelKind::knn(1), X, y);
    CHECK(model.predict(X) == y);
}

TEST_CASE("knn tie rules") {
    Eigen::MatrixXd X(2, 1);
    X << 0.0, 1.0;
    const std::vector<int> y{0, 1};

    Eigen::MatrixXd q(1, 1);
    q << 0.1;
    CHECK(train(ModelKind::knn(1), X, y).predict(q) == std::vector<int>{0});

    // equidistant conflicting votes fall back to label 0
    Eigen::MatrixXd X2(2, 1);
    X2 << -1.0, 1.0;
    const std::vector<int> y2{1, 0};
    Eigen::MatrixXd origin(1, 1);
    origin << 0.0;
    CHECK(train(ModelKind::knn(2), X2, y2).predict(origin) == std::vector<int>{0});
}

TEST_CASE("zero-weight logistic model predicts the tie label") {
    const Model model(ModelKind::logistic_regression(),
                      detail::LinearModel{Eigen::VectorXd::Zero(2), 0.0}, 2);
    Eigen::MatrixXd X(3, 2);
    X << 1.0, -0.5, 2.0, 0.25, -4.0, 3.0;
    CHECK(model.predict(X) == std::vector<int>{0, 0, 0});
}

TEST_CASE("training rejects a single-class label vector") {
    Eigen::MatrixXd X(4, 1);
    X << 1.0, 2.0, 3.0, 4.0;
    CHECK_THROWS_AS(train(ModelKind::decision_tree(), X, {1, 1, 1, 1}), DataError);
}

TEST_CASE("predict rejects mismatched feature counts") {
    Eigen::MatrixXd X(4, 2);
    X << 1, 0, 2, 0, 3, 1, 4, 1;
    const auto model = train(ModelKind::knn(1), X, {0, 0, 1, 1});
    Eigen::MatrixXd bad(1, 3);
    bad << 1, 2, 3;
    CHECK_THROWS_AS(model.predict(bad), DataError);
}

TEST_CASE("stratified folds balance classes") {
    std::vector<int> y;
    for (int i = 0; i < 10; ++i) y.push_back(0);
    for (int i = 0; i < 10; ++i) y.push_back(1);
    const auto folds = stratified_folds(y, 5, 123);
    REQUIRE(folds.size() == 5);
    for (const auto& fold : folds) {
        CHECK(fold.size() == 4);
        int ones = 0;
        for (int i : fold) ones += y[static_cast<std::size_t>(i)];
        CHECK(ones == 2);
    }
}

TEST_CASE("folds partition all indices") {
    Rng rng(15);
    for (int trial = 0; trial < 20; ++trial) {
        const int n0 = 6 + static_cast<int>(rng.uniform_int(20));
        const int n1 = 6 + static_cast<int>(rng.uniform_int(20));
        std::vector<int> y;
        for (int i = 0; i < n0; ++i) y.push_back(0);
        for (int i = 0; i < n1; ++i) y.push_back(1);
        rng.shuffle(y);
        const int k = 2 + static_cast<int>(rng.uniform_int(4));
        const auto folds = stratified_folds(y, k, rng.next());
        std::set<int> seen;
        std::size_t total = 0;
        for (const auto& fold : folds) {
            total += fold.size();
            seen.insert(fold.begin(), fold.end());
        }
        CHECK(total == y.size());
        CHECK(seen.size() == y.size());
    }
}

TEST_CASE("fold construction errors") {
    std::vector<int> y{0, 0, 1, 1};
    CHECK_THROWS_WITH(stratified_folds(y, 1, 0), "k must exceed 1");
    CHECK_THROWS_WITH(stratified_folds({0, 1, 1, 1}, 2, 0), "class smaller than fold count");
}

TEST_CASE("folds are deterministic in the seed") {
    std::vector<int> y;
    for (int i = 0; i < 30; ++i) y.push_back(i % 2);
    CHECK(stratified_folds(y, 5, 42) == stratified_folds(y, 5, 42));
    CHECK(stratified_folds(y, 5, 42) != stratified_folds(y, 5, 43));
}

TEST_CASE("perfectly informative features reach accuracy 1") {
    const auto [X, y] = separable_2d(100);
    for (const auto& kind : {ModelKind::knn(), ModelKind::decision_tree(),
                             ModelKind::logistic_regression(), ModelKind::linear_svm(),
                             ModelKind::adaboost(), ModelKind::bagged_trees()}) {
        CHECK(cross_val_accuracy(kind, X, y, 5, 9) >= 0.95);
    }
}

TEST_CASE("random labels score near chance over many seeds") {
    for (const auto& kind : {ModelKind::knn(), ModelKind::logistic_regression()}) {
        double total = 0.0;
        const int seeds = 20;
        for (int s = 0; s < seeds; ++s) {
            const auto [X, y] = random_labels_2d(1000 + static_cast<std::uint64_t>(s));
            total += cross_val_accuracy(kind, X, y, 5, static_cast<std::uint64_t>(s));
        }
        const double mean = total / seeds;
        CHECK(mean > 0.4);
        CHECK(mean < 0.6);
    }
}

TEST_CASE("constant features reduce to the majority-class predictor") {
    Eigen::MatrixXd X = Eigen::MatrixXd::Ones(50, 2);
    std::vector<int> y;
    for (int i = 0; i < 30; ++i) y.push_back(0);
    for (int i = 0; i < 20; ++i) y.push_back(1);
    for (const auto& kind : {ModelKind::decision_tree(), ModelKind::logistic_regression()}) {
        CHECK(cross_val_accuracy(kind, X, y, 5, 3) == Catch::Approx(0.6));
    }
}

// The raw 0-1 training error of discrete boosting oscillates between
// rounds (a later stump can carry a larger alpha than the first), so the
// monotone guarantee is checked on the exponential bound
// prod_t 2 sqrt(eps_t (1 - eps_t)), which dominates the training error.
TEST_CASE("adaboost training error obeys the shrinking exponential bound") {
    for (std::uint64_t seed : {33ULL, 34ULL, 35ULL}) {
        Rng rng(seed);
        Eigen::MatrixXd X(80, 2);
        std::vector<int> y(80);
        for (int i = 0; i < 80; ++i) {
            X(i, 0) = rng.gaussian();
            X(i, 1) = rng.gaussian();
            y[static_cast<std::size_t>(i)] = X(i, 0) + X(i, 1) > 0.0 ? 1 : 0;
        }
        const auto model = train(ModelKind::adaboost(30), X, y);
        const auto* stumps = model.stumps();
        REQUIRE(stumps != nullptr);
        REQUIRE(stumps->size() >= 2);

        std::vector<double> score(80, 0.0);
        double bound = 1.0;
        double prev_bound = 2.0;
        for (const auto& stump : *stumps) {
            const double eps = 1.0 / (1.0 + std::exp(2.0 * stump.alpha));
            CHECK(eps < 0.5);
            bound *= 2.0 * std::sqrt(eps * (1.0 - eps));
            CHECK(bound < prev_bound);
            prev_bound = bound;

            int wrong = 0;
            for (int i = 0; i < 80; ++i) {
                score[static_cast<std::size_t>(i)] += stump.alpha * stump.vote(X(i, stump.feature));
                const int pred = score[static_cast<std::size_t>(i)] > 0.0 ? 1 : 0;
                wrong += pred != y[static_cast<std::size_t>(i)];
            }
            CHECK(static_cast<double>(wrong) / 80.0 <= bound + 1e-12);
        }

        // boosting ends up strictly better than its first stump alone
        const auto first = train(ModelKind::adaboost(1), X, y);
        CHECK(training_accuracy(model, X, y) > training_accuracy(first, X, y));
    }
}

TEST_CASE("metrics on the hand example") {
    const auto r = metrics({1, 1, 0, 0}, {1, 0, 0, 0});
    CHECK(r.accuracy == Catch::Approx(75.0));
    CHECK(r.precision == Catch::Approx(50.0));
    CHECK(r.recall == Catch::Approx(100.0));
    CHECK(r.tp == 1);
    CHECK(r.fp == 1);
    CHECK(r.tn == 2);
    CHECK(r.fn == 0);
}

TEST_CASE("metrics on perfect predictions") {
    const auto r = metrics({1, 0, 1}, {1, 0, 1});
    CHECK(r.accuracy == 100.0);
    CHECK(r.precision == 100.0);
    CHECK(r.recall == 100.0);
}

TEST_CASE("metrics flag undefined precision and recall") {
    const auto r = metrics({0, 0}, {1, 1});
    CHECK_FALSE(r.precision_defined);
    CHECK(r.precision == 0.0);
    CHECK(r.recall == 0.0);
    CHECK_THROWS_AS(metrics({0}, {0, 1}), DataError);
}

TEST_CASE("cross validation is bit-deterministic") {
    const auto [X, y] = separable_2d(55);
    for (const auto& kind : {ModelKind::bagged_trees(), ModelKind::adaboost()}) {
        const double a = cross_val_accuracy(kind, X, y, 5, 77);
        const double b = cross_val_accuracy(kind, X, y, 5, 77);
        CHECK(a == b);
    }
}
