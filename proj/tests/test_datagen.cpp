#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "topicgeo/datagen.hpp"
#include "topicgeo/normalize.hpp"
#include "topicgeo/swimmer.hpp"

using namespace topicgeo;

TEST_CASE("synthetic: W=500 rho=0.2 K=5 gives 100 novel words, 20 per topic") {
    SyntheticSpec spec;
    spec.vocab_size = 500;
    spec.num_topics = 5;
    spec.num_docs = 50;
    spec.words_per_doc = 50;
    spec.rho = 0.2;
    spec.seed = 1;
    auto [gt, x] = generate_synthetic(spec);
    gt.validate();
    CHECK(x.vocab_size() == 500);
    CHECK(x.num_docs() == 50);
    std::size_t novel_total = 0;
    for (const auto& c : gt.novel_sets) {
        CHECK(c.size() == 20);
        novel_total += c.size();
    }
    CHECK(novel_total == 100);
    CHECK(gt.rho == doctest::Approx(0.2));
    // Round-robin assignment: topic k owns indices congruent to k mod K.
    for (int k = 0; k < 5; ++k)
        for (int w : gt.novel_sets[(std::size_t)k]) CHECK(w % 5 == k);
}

TEST_CASE("synthetic: indivisible novel budget floors to a multiple of K") {
    SyntheticSpec spec;
    spec.vocab_size = 103;
    spec.num_topics = 4;
    spec.num_docs = 30;
    spec.words_per_doc = 20;
    spec.rho = 0.2; // round(20.6) = 21 -> 5 per topic, 20 total
    spec.seed = 3;
    auto [gt, x] = generate_synthetic(spec);
    (void)x;
    gt.validate();
    std::size_t total = 0;
    for (const auto& c : gt.novel_sets) total += c.size();
    CHECK(total == 20);
    CHECK(gt.non_novel.size() == 83);
}

TEST_CASE("synthetic: huge alpha concentrates theta near uniform") {
    SyntheticSpec spec;
    spec.vocab_size = 30;
    spec.num_topics = 4;
    spec.num_docs = 1000;
    spec.words_per_doc = 5;
    spec.alpha = 1000.0;
    spec.seed = 5;
    auto [gt, x] = generate_synthetic(spec);
    (void)x;
    const double mean = gt.theta.mean();
    CHECK(std::abs(mean - 0.25) <= 0.01);
    CHECK((gt.theta.array() - 0.25).abs().maxCoeff() <= 0.1);
}

TEST_CASE("synthetic: empirical frequencies approach the exact column at N=1e6") {
    SyntheticSpec spec;
    spec.vocab_size = 20;
    spec.num_topics = 3;
    spec.num_docs = 4;
    spec.words_per_doc = 1000000;
    spec.seed = 8;
    auto [gt, x] = generate_synthetic(spec);
    const Eigen::MatrixXd a = gt.beta * gt.theta;
    for (int d = 0; d < 4; ++d) {
        Eigen::VectorXd freq = Eigen::VectorXd::Zero(20);
        for (int w = 0; w < 20; ++w)
            for (auto& [doc, c] : x.row(w))
                if (doc == d) freq[w] = (double)c / spec.words_per_doc;
        CHECK((freq - a.col(d)).cwiseAbs().maxCoeff() <= 0.01);
    }
}

TEST_CASE("synthetic: identical seeds give identical corpora, different seeds differ") {
    SyntheticSpec spec;
    spec.vocab_size = 60;
    spec.num_topics = 3;
    spec.num_docs = 25;
    spec.words_per_doc = 40;
    spec.seed = 12;
    auto [gt1, x1] = generate_synthetic(spec, 1);
    auto [gt2, x2] = generate_synthetic(spec, 4); // thread count must not matter
    CHECK(x1 == x2);
    CHECK(gt1.beta == gt2.beta);
    CHECK(gt1.theta == gt2.theta);

    spec.seed = 13;
    auto [gt3, x3] = generate_synthetic(spec);
    (void)gt3;
    CHECK(!(x1 == x3));
}

TEST_CASE("synthetic: ground truth invariants hold across seeds") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        SyntheticSpec spec;
        spec.vocab_size = 80;
        spec.num_topics = 5;
        spec.num_docs = 40;
        spec.words_per_doc = 30;
        spec.seed = seed;
        auto [gt, x] = generate_synthetic(spec);
        (void)x;
        CHECK_NOTHROW(gt.validate());
    }
}

TEST_CASE("synthetic: spec validation rejects bad shapes") {
    SyntheticSpec spec;
    spec.vocab_size = 10;
    spec.num_topics = 10; // violates K < min(M, W)
    spec.num_docs = 50;
    CHECK_THROWS_AS(generate_synthetic(spec), std::invalid_argument);

    SyntheticSpec thin;
    thin.vocab_size = 100;
    thin.num_topics = 30;
    thin.num_docs = 50;
    thin.rho = 0.1; // only 10 novel words for 30 topics
    CHECK_THROWS_AS(generate_synthetic(thin), std::invalid_argument);
}

TEST_CASE("swimmer: 256 documents of 1024 pixels with stochastic cleans") {
    SwimmerSpec spec;
    spec.seed = 2;
    const SwimmerData data = generate_swimmer(spec);
    CHECK(data.counts.num_docs() == 256);
    CHECK(data.counts.vocab_size() == 1024);
    CHECK(data.clean_images.rows() == 1024);
    CHECK(data.clean_images.cols() == 256);
    for (int m = 0; m < 256; ++m)
        CHECK(data.clean_images.col(m).sum() == doctest::Approx(1.0).epsilon(1e-12));

    // 72 body pixels at value 10 against 952 background pixels at value 1.
    const double body_weight = 10.0 / (10.0 * 72 + 952.0);
    int body_pixels = 0;
    for (int p = 0; p < 1024; ++p)
        if (data.clean_images(p, 0) == doctest::Approx(body_weight).epsilon(1e-12)) ++body_pixels;
    CHECK(body_pixels == 72);

    for (int m = 0; m < 256; ++m) {
        std::int64_t total = 0;
        for (int p = 0; p < 1024; ++p)
            for (auto& [doc, c] : data.counts.row(p))
                if (doc == m) total += c;
        CHECK(total == spec.words_per_doc);
    }
}

TEST_CASE("swimmer: ground truth is separable with 16 six-pixel topics") {
    const SwimmerData data = generate_swimmer({});
    data.gt.validate();
    CHECK(data.gt.topic_count() == 16);
    for (int k = 0; k < 16; ++k) {
        CHECK(data.gt.novel_sets[(std::size_t)k].size() == 6);
        CHECK(data.gt.beta.col(k).sum() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("swimmer: separability audit over the generated images") {
    // Every limb-position owns pixels lit (as body) in exactly the 64 images
    // containing that position and covered by no other single-limb topic.
    const SwimmerData data = generate_swimmer({});
    const SwimmerGeometry g;
    const auto segments = swimmer_limb_segments(g);
    const double body_weight = 10.0 / (10.0 * 72 + 952.0);

    for (int k = 0; k < 16; ++k) {
        const int limb = k / 4, pos = k % 4;
        for (int p : segments[(std::size_t)k]) {
            int lit = 0;
            for (int m = 0; m < 256; ++m) {
                const bool contains = ((m >> (2 * limb)) & 3) == pos;
                const bool body = data.clean_images(p, m) ==
                                  doctest::Approx(body_weight).epsilon(1e-12);
                CHECK(body == contains);
                if (body) ++lit;
            }
            CHECK(lit == 64);
            // No other topic claims this pixel.
            for (int j = 0; j < 16; ++j)
                if (j != k) CHECK(data.gt.beta(p, j) == 0.0);
        }
    }
}

TEST_CASE("swimmer: torso pixels are non-novel") {
    const SwimmerData data = generate_swimmer({});
    const std::set<int> non_novel(data.gt.non_novel.begin(), data.gt.non_novel.end());
    for (int p : swimmer_torso({})) CHECK(non_novel.count(p) == 1);
}
