#include <doctest.h>

#include <cmath>

#include "survnn/cox.hpp"
#include "survnn/errors.hpp"
#include "test_util.hpp"

using namespace survnn;
using namespace survnn::testutil;

namespace {

SurvivalLabels make_labels(std::vector<double> times, std::vector<int> events) {
    SurvivalLabels labels;
    labels.times = std::move(times);
    for (int e : events) labels.events.push_back(static_cast<std::uint8_t>(e));
    return labels;
}

RiskVector make_risk(std::vector<double> values) {
    return Eigen::Map<RiskVector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

}  // namespace

TEST_SUITE("cox") {

TEST_CASE("risk sets: all uncensored") {
    const auto index = build_risk_sets(make_labels({1, 2, 3}, {1, 1, 1}));
    RiskSetIndex expected{{0, {0, 1, 2}}, {1, {1, 2}}, {2, {2}}};
    CHECK(index == expected);
}

TEST_CASE("risk sets: all censored gives empty map") {
    CHECK(build_risk_sets(make_labels({1, 2}, {0, 0})).empty());
}

TEST_CASE("risk sets: censoring tie shares the set") {
    const auto index = build_risk_sets(make_labels({2, 2, 5}, {1, 0, 1}));
    RiskSetIndex expected{{0, {0, 1, 2}}, {2, {2}}};
    CHECK(index == expected);
}

TEST_CASE("risk sets: empty dataset is invalid") {
    CHECK_THROWS_AS(build_risk_sets(SurvivalLabels{}), InvalidInputError);
}

TEST_CASE("loss: equal risks, two events") {
    const auto labels = make_labels({1, 2}, {1, 1});
    CHECK(neg_log_partial_likelihood(make_risk({0, 0}), labels) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("loss: equal-risk cascade of three events") {
    const auto labels = make_labels({1, 2, 3}, {1, 1, 1});
    CHECK(neg_log_partial_likelihood(make_risk({0, 0, 0}), labels) ==
          doctest::Approx(std::log(3.0) + std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("loss: single uncensored term against direct summation") {
    const auto labels = make_labels({1, 2}, {1, 0});
    const auto risk = make_risk({1, 0});
    const double expected = naive_neg_log_partial_likelihood(risk, labels);
    CHECK(expected == doctest::Approx(std::log(std::exp(1.0) + 1.0) - 1.0).epsilon(1e-12));
    CHECK(neg_log_partial_likelihood(risk, labels) ==
          doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("loss: matches direct summation on random tied instances") {
    Rng rng(42);
    for (int rep = 0; rep < 50; ++rep) {
        const int n = 2 + static_cast<int>(rng.uniform_int(20));
        const auto labels = random_labels(rng, n, 0.3, true);
        const auto risk = random_risk(rng, n, 1.5);
        CHECK(neg_log_partial_likelihood(risk, labels) ==
              doctest::Approx(naive_neg_log_partial_likelihood(risk, labels))
                  .epsilon(1e-10));
    }
}

TEST_CASE("loss: all-censored input yields zero") {
    const auto labels = make_labels({1, 2, 3}, {0, 0, 0});
    CHECK(neg_log_partial_likelihood(make_risk({0.3, -1, 2}), labels) == 0.0);
    const auto grad = partial_likelihood_gradient(make_risk({0.3, -1, 2}), labels);
    CHECK(grad.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("loss: non-finite risk rejected") {
    const auto labels = make_labels({1, 2}, {1, 1});
    CHECK_THROWS_AS(
        neg_log_partial_likelihood(make_risk({0, std::nan("")}), labels),
        InvalidInputError);
    CHECK_THROWS_AS(neg_log_partial_likelihood(
                        make_risk({0, std::numeric_limits<double>::infinity()}),
                        labels),
                    InvalidInputError);
}

TEST_CASE("loss: length mismatch rejected") {
    CHECK_THROWS_AS(
        neg_log_partial_likelihood(make_risk({0, 0, 0}), make_labels({1, 2}, {1, 1})),
        InvalidInputError);
}

TEST_CASE("loss: extreme risks stay finite") {
    const auto labels = make_labels({1, 2, 3}, {1, 1, 1});
    const double loss =
        neg_log_partial_likelihood(make_risk({600, 0, -600}), labels);
    CHECK(std::isfinite(loss));
    CHECK(loss >= 0.0);
}

TEST_CASE("gradient: two equal risks") {
    const auto labels = make_labels({1, 2}, {1, 1});
    const auto grad = partial_likelihood_gradient(make_risk({0, 0}), labels);
    CHECK(grad[0] == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(grad[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("gradient: matches central finite differences") {
    Rng rng(7);
    for (int rep = 0; rep < 20; ++rep) {
        const int n = 20;
        const auto labels = random_labels(rng, n, rep % 2 ? 0.4 : 0.0, rep % 3 == 0);
        const auto risk = random_risk(rng, n, 1.0);
        const auto grad = partial_likelihood_gradient(risk, labels);
        const auto fd = fd_gradient(
            [&](const Eigen::VectorXd& r) {
                return neg_log_partial_likelihood(r, labels);
            },
            risk);
        CHECK(close_rel(grad, fd, 1e-5));
    }
}

TEST_CASE("gradient: entries sum to zero") {
    Rng rng(11);
    for (int rep = 0; rep < 50; ++rep) {
        const int n = 1 + static_cast<int>(rng.uniform_int(30));
        const auto labels = random_labels(rng, n, 0.35, true);
        const auto risk = random_risk(rng, n, 2.0);
        const auto grad = partial_likelihood_gradient(risk, labels);
        CHECK(std::abs(grad.sum()) <= 1e-10);
    }
}

TEST_CASE("loss: shift invariance") {
    Rng rng(13);
    for (int rep = 0; rep < 50; ++rep) {
        const int n = 2 + static_cast<int>(rng.uniform_int(25));
        const auto labels = random_labels(rng, n, 0.3, rep % 2 == 0);
        const auto risk = random_risk(rng, n, 1.0);
        const double base = neg_log_partial_likelihood(risk, labels);
        for (double c : {-57.0, 0.25, 14.0}) {
            const RiskVector shifted = risk.array() + c;
            CHECK(std::abs(neg_log_partial_likelihood(shifted, labels) - base) <=
                  1e-10);
        }
    }
}

TEST_CASE("loss: convex along line segments") {
    Rng rng(17);
    for (int rep = 0; rep < 40; ++rep) {
        const int n = 2 + static_cast<int>(rng.uniform_int(15));
        const auto labels = random_labels(rng, n, 0.3, true);
        const auto r0 = random_risk(rng, n, 1.5);
        const auto r1 = random_risk(rng, n, 1.5);
        const double mid = neg_log_partial_likelihood(0.5 * (r0 + r1), labels);
        const double ends = 0.5 * (neg_log_partial_likelihood(r0, labels) +
                                   neg_log_partial_likelihood(r1, labels));
        CHECK(mid <= ends + 1e-9);
    }
}

TEST_CASE("loss matches evaluation through explicit risk sets") {
    // Cross-check of the sorted-scan path against the materialized risk-set
    // index, which is built by a separate code path.
    Rng rng(23);
    for (int rep = 0; rep < 30; ++rep) {
        const int n = 2 + static_cast<int>(rng.uniform_int(12));
        const auto labels = random_labels(rng, n, 0.4, true);
        const auto risk = random_risk(rng, n, 1.0);
        double expected = 0.0;
        for (const auto& [i, members] : build_risk_sets(labels)) {
            double denom = 0.0;
            for (int j : members) denom += std::exp(risk[j]);
            expected -= risk[i] - std::log(denom);
        }
        CHECK(neg_log_partial_likelihood(risk, labels) ==
              doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("concordance: perfectly anti-ordered hazard") {
    CHECK(concordance_index(make_risk({3, 2, 1}),
                            make_labels({1, 2, 3}, {1, 1, 1})) == 1.0);
}

TEST_CASE("concordance: perfectly mis-ordered hazard") {
    CHECK(concordance_index(make_risk({1, 2, 3}),
                            make_labels({1, 2, 3}, {1, 1, 1})) == 0.0);
}

TEST_CASE("concordance: censored sample limits orderable pairs") {
    const auto labels = make_labels({1, 2, 3}, {1, 0, 1});
    CHECK(count_orderable_pairs(labels) == 2);
    CHECK(concordance_index(make_risk({3, 1, 2}), labels) == 1.0);
}

TEST_CASE("concordance: no orderable pairs is undefined") {
    CHECK_THROWS_AS(
        concordance_index(make_risk({1, 2}), make_labels({1, 2}, {0, 0})),
        UndefinedMetricError);
    // Two events at the same time are not orderable either.
    CHECK_THROWS_AS(
        concordance_index(make_risk({1, 2}), make_labels({4, 4}, {1, 1})),
        UndefinedMetricError);
}

TEST_CASE("concordance: tied risks contribute zero") {
    const auto labels = make_labels({1, 2, 3}, {1, 1, 1});
    CHECK(concordance_index(make_risk({1, 1, 1}), labels) == 0.0);
}

TEST_CASE("concordance: invariant under strictly increasing transforms") {
    Rng rng(29);
    for (int rep = 0; rep < 30; ++rep) {
        const int n = 3 + static_cast<int>(rng.uniform_int(20));
        const auto labels = random_labels(rng, n, 0.3, true);
        const auto risk = random_risk(rng, n, 1.0);
        if (count_orderable_pairs(labels) == 0) continue;
        const double base = concordance_index(risk, labels);
        const RiskVector scaled = 3.0 * risk.array() + 11.0;
        const RiskVector squashed = risk.array().tanh();
        CHECK(concordance_index(scaled, labels) == base);
        CHECK(concordance_index(squashed, labels) == base);
    }
}

TEST_CASE("concordance: sign duality for distinct risks") {
    Rng rng(31);
    for (int rep = 0; rep < 30; ++rep) {
        const int n = 3 + static_cast<int>(rng.uniform_int(20));
        const auto labels = random_labels(rng, n, 0.3, true);
        const auto risk = random_risk(rng, n, 1.0);  // ties have probability 0
        if (count_orderable_pairs(labels) == 0) continue;
        CHECK(concordance_index(risk, labels) +
                  concordance_index(RiskVector(-risk), labels) ==
              1.0);
    }
}

TEST_CASE("concordance: equals brute-force enumeration on a small grid") {
    const std::vector<double> time_pool{1, 2, 2, 3, 5, 3};
    const std::vector<double> risk_pool{0.5, -1.0, 0.5, 2.0, 0.0, -0.25};
    int cases = 0;
    for (int n = 2; n <= 6; ++n) {
        for (int time_shift = 0; time_shift < 3; ++time_shift) {
            for (int risk_shift = 0; risk_shift < 2; ++risk_shift) {
                SurvivalLabels labels;
                RiskVector risk(n);
                labels.times.resize(n);
                labels.events.assign(n, 0);
                for (int i = 0; i < n; ++i) {
                    labels.times[i] = time_pool[(i + time_shift) % time_pool.size()];
                    risk[i] = risk_pool[(i + risk_shift) % risk_pool.size()];
                }
                for (unsigned mask = 0; mask < (1u << n); ++mask) {
                    for (int i = 0; i < n; ++i) labels.events[i] = (mask >> i) & 1;
                    ++cases;
                    const auto tally = brute_force_concordance(risk, labels);
                    CHECK(count_orderable_pairs(labels) == tally.orderable);
                    if (tally.orderable == 0) {
                        CHECK_THROWS_AS(concordance_index(risk, labels),
                                        UndefinedMetricError);
                    } else {
                        CHECK(concordance_index(risk, labels) ==
                              static_cast<double>(tally.concordant) /
                                  static_cast<double>(tally.orderable));
                    }
                }
            }
        }
    }
    CHECK(cases >= 500);
}

}  // TEST_SUITE
