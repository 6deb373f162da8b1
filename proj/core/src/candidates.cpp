#include "topicgeo/candidates.hpp"

#include <algorithm>
#include <stdexcept>

#include "topicgeo/parallel.hpp"
#include "topicgeo/rng.hpp"

namespace topicgeo {

bool CandidateSet::contains(int w) const {
    return std::binary_search(indices.begin(), indices.end(), w);
}

namespace {

Eigen::VectorXd sphere_direction(rng::Stream& stream, Eigen::Index m) {
    Eigen::VectorXd d(m);
    for (;;) {
        for (Eigen::Index j = 0; j < m; ++j) d[j] = stream.next_normal();
        const double norm = d.norm();
        if (norm > 0.0) return d / norm;
    }
}

} // namespace

CandidateSet find_candidates(const StochasticRows& xt, const CandidateParams& params,
                             int threads) {
    if (params.projections < 1)
        throw std::invalid_argument("find_candidates: projections must be >= 1");
    if (params.delta < 0.0)
        throw std::invalid_argument("find_candidates: delta must be >= 0");

    const RowMatrix& rows = xt.rows();
    const int w_count = xt.word_count();
    const std::size_t p = static_cast<std::size_t>(params.projections);

    std::vector<std::vector<int>> per_round(p);
    parallel_for(p, threads, [&](std::size_t round) {
        rng::Stream stream(rng::substream(params.seed, "projection", round));
        const Eigen::VectorXd d = sphere_direction(stream, rows.cols());
        const Eigen::VectorXd proj = rows * d;

        int i_max = 0, i_min = 0;
        for (int i = 1; i < w_count; ++i) {
            if (proj[i] > proj[i_max]) i_max = i;
            if (proj[i] < proj[i_min]) i_min = i;
        }

        std::vector<int>& selected = per_round[round];
        const auto max_row = rows.row(i_max);
        const auto min_row = rows.row(i_min);
        for (int i = 0; i < w_count; ++i) {
            const double to_max = (rows.row(i) - max_row).cwiseAbs().sum();
            if (to_max <= params.delta) {
                selected.push_back(i);
                continue;
            }
            const double to_min = (rows.row(i) - min_row).cwiseAbs().sum();
            if (to_min <= params.delta) selected.push_back(i);
        }
    });

    // Merge in round order; identical regardless of execution interleaving.
    std::vector<int> counts(static_cast<std::size_t>(w_count), 0);
    for (const auto& selected : per_round)
        for (int i : selected) ++counts[static_cast<std::size_t>(i)];

    CandidateSet result;
    for (int i = 0; i < w_count; ++i) {
        if (counts[static_cast<std::size_t>(i)] > 0) {
            result.indices.push_back(i);
            result.hit_counts.push_back(counts[static_cast<std::size_t>(i)]);
        }
    }
    return result;
}

} // namespace topicgeo
