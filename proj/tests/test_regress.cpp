#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "support/oracles.hpp"
#include "topicgeo/errors.hpp"
#include "topicgeo/group_regression.hpp"
#include "topicgeo/rng.hpp"

using namespace topicgeo;

TEST_CASE("prox_linf_nonneg: hand case (3,1) with t=1 gives (2,1)") {
    Eigen::VectorXd v(2);
    v << 3.0, 1.0;
    const Eigen::VectorXd u = prox_linf_nonneg(v, 1.0);
    CHECK(u[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(u[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("prox_linf_nonneg: t=0 is the orthant clamp") {
    Eigen::VectorXd v(4);
    v << -1.0, 0.0, 2.5, -0.1;
    const Eigen::VectorXd u = prox_linf_nonneg(v, 0.0);
    CHECK(u[0] == 0.0);
    CHECK(u[1] == 0.0);
    CHECK(u[2] == 2.5);
    CHECK(u[3] == 0.0);
}

TEST_CASE("prox_linf_nonneg: nonpositive input collapses to zero") {
    Eigen::VectorXd v(3);
    v << -2.0, -0.5, 0.0;
    CHECK(prox_linf_nonneg(v, 0.7).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("prox_linf_nonneg agrees with the dense grid oracle in 2-D and 3-D") {
    rng::Stream stream(606);
    for (int trial = 0; trial < 20; ++trial) {
        const int d = trial % 2 == 0 ? 2 : 3;
        Eigen::VectorXd v(d);
        for (int i = 0; i < d; ++i) v[i] = stream.next_unit() * 3.0 - 0.5;
        const double t = stream.next_unit();
        const Eigen::VectorXd fast = prox_linf_nonneg(v, t);
        const Eigen::VectorXd slow = oracle::grid_prox_linf_nonneg(v, t);
        CHECK((fast - slow).cwiseAbs().maxCoeff() <= 1e-4);
    }
}

namespace {

std::vector<RowMatrix> two_groups_of_two(rng::Stream& stream, int m) {
    std::vector<RowMatrix> groups;
    for (int g = 0; g < 2; ++g) {
        RowMatrix y(2, m);
        for (int r = 0; r < 2; ++r) {
            double sum = 0.0;
            for (int c = 0; c < m; ++c) {
                y(r, c) = stream.next_exponential();
                sum += y(r, c);
            }
            y.row(r) /= sum;
        }
        groups.push_back(std::move(y));
    }
    return groups;
}

} // namespace

TEST_CASE("group_sparse_fit: exact membership reaches a near-zero objective") {
    rng::Stream stream(11);
    const auto groups = two_groups_of_two(stream, 6);
    GroupFitParams params;
    params.lambda2 = 0.0;
    params.tol = 1e-12;
    params.max_iter = 20000;
    const GroupFit fit = group_sparse_fit(groups[0].row(1), groups, params);
    CHECK(fit.objective <= 1e-10);
    CHECK(fit.converged);
}

TEST_CASE("group_sparse_fit: zero row gives zero coefficients") {
    rng::Stream stream(12);
    const auto groups = two_groups_of_two(stream, 5);
    const GroupFit fit = group_sparse_fit(Eigen::RowVectorXd::Zero(5), groups, {});
    CHECK(fit.objective == 0.0);
    for (const auto& b : fit.blocks) CHECK(b.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("group_sparse_fit objective matches the grid + polish oracle") {
    GroupFitParams params;
    params.lambda2 = 0.01;
    params.tol = 1e-12;
    params.max_iter = 50000;
    for (std::uint64_t seed : {101u, 202u, 303u}) {
        rng::Stream stream(seed);
        const auto groups = two_groups_of_two(stream, 5);
        Eigen::RowVectorXd x(5);
        // Mix of both groups plus a bump, so the optimum is interior-ish.
        x = 0.4 * groups[0].row(0) + 0.35 * groups[1].row(1) + 0.2 * groups[1].row(0);
        const GroupFit fit = group_sparse_fit(x, groups, params);

        Eigen::MatrixXd stacked(4, 5);
        stacked.topRows(2) = groups[0];
        stacked.bottomRows(2) = groups[1];
        const double oracle_obj = oracle::grid_group_fit_objective(x, stacked, params.lambda2);
        CHECK(fit.objective ==
              doctest::Approx(oracle_obj).epsilon(1e-5));
    }
}

TEST_CASE("objective trace is monotone after restarts") {
    rng::Stream stream(313);
    const auto groups = two_groups_of_two(stream, 8);
    Eigen::RowVectorXd x(8);
    for (int c = 0; c < 8; ++c) x[c] = stream.next_unit();
    x /= x.sum();
    GroupFitParams params;
    params.lambda2 = 0.05;
    params.record_objectives = true;
    const GroupFit fit = group_sparse_fit(x, groups, params);
    REQUIRE(fit.objective_trace.size() >= 2);
    for (std::size_t i = 1; i < fit.objective_trace.size(); ++i)
        CHECK(fit.objective_trace[i] <=
              fit.objective_trace[i - 1] + 1e-9 * std::max(1.0, fit.objective_trace[i - 1]));
}

TEST_CASE("fixed-point residual is within tolerance at the returned iterate") {
    rng::Stream stream(717);
    const auto groups = two_groups_of_two(stream, 7);
    Eigen::RowVectorXd x(7);
    for (int c = 0; c < 7; ++c) x[c] = stream.next_unit();
    x /= x.sum();
    GroupFitParams params;
    params.lambda2 = 0.02;
    params.tol = 1e-9;
    params.max_iter = 50000;
    const GroupFit fit = group_sparse_fit(x, groups, params);
    CHECK(fit.converged);
    CHECK(fit.fixed_point_residual <= params.tol);
}

TEST_CASE("assemble_beta_raw: novel word with N_w = 7 lands as (0, 7, 0)") {
    NovelWordClustering clustering;
    clustering.clusters = {{0}, {1}, {2}};
    clustering.residual = {3, 4};
    // Word 1 is novel to topic 1 (0-based) with weight 7.
    Eigen::VectorXd weights(5);
    weights << 2.0, 7.0, 3.0, 4.0, 5.0;

    std::vector<GroupFit> fits(2);
    for (int i = 0; i < 2; ++i) {
        fits[(std::size_t)i].word = 3 + i;
        fits[(std::size_t)i].blocks = {Eigen::VectorXd::Constant(1, 0.25),
                                       Eigen::VectorXd::Constant(1, 0.5),
                                       Eigen::VectorXd::Constant(1, 0.25)};
    }
    const Eigen::MatrixXd raw = assemble_beta_raw(clustering, fits, weights);
    CHECK(raw(1, 0) == 0.0);
    CHECK(raw(1, 1) == 7.0);
    CHECK(raw(1, 2) == 0.0);
    CHECK(raw(3, 1) == doctest::Approx(4.0 * 0.5).epsilon(1e-15));
}

TEST_CASE("assemble_beta: all-novel vocabulary normalizes the indicator pattern") {
    NovelWordClustering clustering;
    clustering.clusters = {{0, 2}, {1, 3}};
    Eigen::VectorXd weights(4);
    weights << 1.0, 2.0, 3.0, 4.0;
    const TopicEstimate est = assemble_beta(clustering, {}, weights);
    est.validate();
    CHECK(est.beta_hat(0, 0) == doctest::Approx(0.25));
    CHECK(est.beta_hat(2, 0) == doctest::Approx(0.75));
    CHECK(est.beta_hat(1, 1) == doctest::Approx(2.0 / 6.0));
    CHECK(est.beta_hat(3, 1) == doctest::Approx(4.0 / 6.0));
    CHECK(est.provenance[0].origin == WordOrigin::Novel);
    CHECK(est.provenance[0].topic == 0);
}

TEST_CASE("assemble_beta: five words, two topics, hand-computed normalization") {
    // Novel: word 0 -> topic 0 (N=2), word 1 -> topic 1 (N=3). Regressed:
    // words 2, 3, 4 with hand-picked block L1 norms.
    NovelWordClustering clustering;
    clustering.clusters = {{0}, {1}};
    clustering.residual = {2, 3};
    clustering.outliers = {4};
    Eigen::VectorXd weights(5);
    weights << 2.0, 3.0, 1.0, 2.0, 4.0;

    auto make_fit = [](int word, double l1_topic0, double l1_topic1) {
        GroupFit f;
        f.word = word;
        f.blocks = {Eigen::VectorXd::Constant(1, l1_topic0),
                    Eigen::VectorXd::Constant(1, l1_topic1)};
        return f;
    };
    const std::vector<GroupFit> fits = {make_fit(2, 0.5, 0.5), make_fit(3, 1.0, 0.0),
                                        make_fit(4, 0.25, 0.75)};
    const TopicEstimate est = assemble_beta(clustering, fits, weights);
    est.validate();
    // Raw column 0: [2, 0, 0.5, 2.0, 1.0], sum 5.5.
    // Raw column 1: [0, 3, 0.5, 0.0, 3.0], sum 6.5.
    CHECK(est.beta_hat(0, 0) == doctest::Approx(2.0 / 5.5).epsilon(1e-12));
    CHECK(est.beta_hat(3, 0) == doctest::Approx(2.0 / 5.5).epsilon(1e-12));
    CHECK(est.beta_hat(1, 1) == doctest::Approx(3.0 / 6.5).epsilon(1e-12));
    CHECK(est.beta_hat(4, 1) == doctest::Approx(3.0 / 6.5).epsilon(1e-12));
    CHECK(est.provenance[4].origin == WordOrigin::OutlierRegressed);
    CHECK(est.provenance[2].origin == WordOrigin::Regressed);
}

TEST_CASE("assemble_beta: a dead topic column raises EmptyColumn") {
    NovelWordClustering clustering;
    clustering.clusters = {{0}, {1}};
    Eigen::VectorXd weights(2);
    weights << 1.0, 0.0; // novel word of topic 1 carries no mass
    CHECK_THROWS_AS(assemble_beta(clustering, {}, weights), EmptyColumnError);
}

TEST_CASE("with lambda2 = 0 and a conic target the objective vanishes") {
    rng::Stream stream(42);
    const auto groups = two_groups_of_two(stream, 6);
    Eigen::RowVectorXd x = 0.3 * groups[0].row(0) + 1.7 * groups[1].row(1);
    GroupFitParams params;
    params.lambda2 = 0.0;
    params.tol = 1e-12;
    params.max_iter = 50000;
    const GroupFit fit = group_sparse_fit(x, groups, params);
    CHECK(fit.objective <= 1e-8);
}
