#include "topicgeo/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "topicgeo/errors.hpp"
#include "topicgeo/parallel.hpp"
#include "topicgeo/rng.hpp"

namespace topicgeo {

void SyntheticSpec::validate() const {
    if (vocab_size < 1 || num_topics < 1 || num_docs < 1 || words_per_doc < 1)
        throw std::invalid_argument("SyntheticSpec: sizes must be positive");
    if (num_topics >= std::min(num_docs, vocab_size))
        throw std::invalid_argument("SyntheticSpec: requires K < min(M, W)");
    if (!(rho > 0.0 && rho < 1.0))
        throw std::invalid_argument("SyntheticSpec: rho must lie in (0, 1)");
    if (std::llround(rho * vocab_size) / num_topics < 1)
        throw std::invalid_argument("SyntheticSpec: need at least one novel word per topic");
    if (!(alpha > 0.0)) throw std::invalid_argument("SyntheticSpec: alpha must be positive");
}

namespace detail_datagen {

// N iid draws from the distribution given by cdf (last entry ~ 1).
void multinomial_counts(rng::Stream& stream, const std::vector<double>& cdf, int draws,
                        std::vector<std::int64_t>& counts) {
    const double total = cdf.back();
    for (int t = 0; t < draws; ++t) {
        const double u = stream.next_unit() * total;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        std::size_t idx = static_cast<std::size_t>(it - cdf.begin());
        if (idx >= counts.size()) idx = counts.size() - 1;
        ++counts[idx];
    }
}

} // namespace detail_datagen

std::pair<GroundTruth, CountMatrix> generate_synthetic(const SyntheticSpec& spec,
                                                       int threads) {
    spec.validate();
    const int w_count = spec.vocab_size;
    const int k_count = spec.num_topics;
    const int m_count = spec.num_docs;

    const int per_topic =
        static_cast<int>(std::llround(spec.rho * w_count)) / k_count;
    const int w1 = per_topic * k_count; // remainder words stay non-novel

    GroundTruth gt;
    gt.rho = static_cast<double>(w1) / static_cast<double>(w_count);
    gt.alpha = Eigen::VectorXd::Constant(k_count, spec.alpha);
    gt.beta = Eigen::MatrixXd::Zero(w_count, k_count);
    gt.novel_sets.assign(static_cast<std::size_t>(k_count), {});

    // Novel words interleave round-robin: topic k owns k, K+k, 2K+k, ...
    for (int w = 0; w < w1; ++w) {
        const int k = w % k_count;
        gt.novel_sets[static_cast<std::size_t>(k)].push_back(w);
        rng::Stream stream(rng::substream(spec.seed, "beta-novel", static_cast<std::uint64_t>(w)));
        gt.beta(w, k) = stream.next_open();
    }
    for (int w = w1; w < w_count; ++w) {
        gt.non_novel.push_back(w);
        rng::Stream stream(rng::substream(spec.seed, "beta-row", static_cast<std::uint64_t>(w)));
        double sum = 0.0;
        for (int k = 0; k < k_count; ++k) {
            gt.beta(w, k) = stream.next_exponential(); // uniform on the simplex
            sum += gt.beta(w, k);
        }
        gt.beta.row(w) /= sum;
    }
    for (int k = 0; k < k_count; ++k) gt.beta.col(k) /= gt.beta.col(k).sum();

    // Theta columns, redrawn wholesale while A = beta * theta has a zero row.
    constexpr int kMaxRetries = 10;
    Eigen::MatrixXd a;
    bool ok = false;
    for (int attempt = 0; attempt < kMaxRetries && !ok; ++attempt) {
        const std::uint64_t base = rng::combine(spec.seed, static_cast<std::uint64_t>(attempt));
        gt.theta.resize(k_count, m_count);
        for (int d = 0; d < m_count; ++d) {
            rng::Stream stream(rng::substream(base, "theta", static_cast<std::uint64_t>(d)));
            double sum = 0.0;
            for (int k = 0; k < k_count; ++k) {
                gt.theta(k, d) = stream.next_gamma(spec.alpha);
                sum += gt.theta(k, d);
            }
            if (sum <= 0.0) { // astronomically rare underflow; force a redraw
                gt.theta(0, d) = -1.0;
                continue;
            }
            gt.theta.col(d) /= sum;
        }
        if ((gt.theta.array() < 0.0).any()) continue;
        a = gt.beta * gt.theta;
        ok = (a.array().rowwise().sum() > 0.0).all();
    }
    if (!ok) throw DegenerateThetaError(kMaxRetries);

    // Sample documents: column d of A is a distribution over words.
    std::vector<std::vector<std::pair<int, std::int64_t>>> doc_counts(
        static_cast<std::size_t>(m_count));
    parallel_for(static_cast<std::size_t>(m_count), threads, [&](std::size_t d) {
        std::vector<double> cdf(static_cast<std::size_t>(w_count));
        double acc = 0.0;
        for (int w = 0; w < w_count; ++w) {
            acc += a(w, static_cast<Eigen::Index>(d));
            cdf[static_cast<std::size_t>(w)] = acc;
        }
        std::vector<std::int64_t> counts(static_cast<std::size_t>(w_count), 0);
        rng::Stream stream(rng::substream(spec.seed, "doc", d));
        detail_datagen::multinomial_counts(stream, cdf, spec.words_per_doc, counts);
        for (int w = 0; w < w_count; ++w)
            if (counts[static_cast<std::size_t>(w)] > 0)
                doc_counts[d].emplace_back(w, counts[static_cast<std::size_t>(w)]);
    });

    std::vector<Triplet> triplets;
    for (int d = 0; d < m_count; ++d)
        for (const auto& [w, c] : doc_counts[static_cast<std::size_t>(d)])
            triplets.push_back({w, d, c});

    return {std::move(gt), CountMatrix(w_count, m_count, std::move(triplets))};
}

} // namespace topicgeo
