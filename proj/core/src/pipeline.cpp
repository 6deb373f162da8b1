#include "topicgeo/pipeline.hpp"

#include <algorithm>
#include <stdexcept>

#include "topicgeo/errors.hpp"
#include "topicgeo/normalize.hpp"
#include "topicgeo/parallel.hpp"
#include "topicgeo/rng.hpp"

namespace topicgeo {

DiscoveryResult discover_topics(const StochasticRows& xt, const Eigen::VectorXd& row_weights,
                                int k, PipelineParams params) {
    if (k < 1) throw std::invalid_argument("discover_topics: K must be >= 1");
    if (row_weights.size() != xt.word_count())
        throw ShapeMismatchError("discover_topics: one row weight per word required");

    if (params.threads <= 0) params.threads = default_threads();
    if (params.candidates.projections <= 0) params.candidates.projections = 100 * k;
    params.candidates.seed = rng::substream(params.seed, "stage-candidates", 0);
    params.ssc.seed = rng::substream(params.seed, "stage-ssc", 0);
    params.ssc.num_clusters = k;

    DiscoveryResult result;
    result.candidates = find_candidates(xt, params.candidates, params.threads);
    result.clustering = cluster_candidates(xt, result.candidates, params.ssc, params.threads);

    // Step 4: regress every word outside the K clusters onto the cluster rows.
    std::vector<int> to_fit = result.clustering.residual;
    to_fit.insert(to_fit.end(), result.clustering.outliers.begin(),
                  result.clustering.outliers.end());
    std::sort(to_fit.begin(), to_fit.end());

    const GroupDesign design(result.clustering.cluster_matrices);
    std::vector<GroupFit> fits(to_fit.size());
    parallel_for(to_fit.size(), params.threads, [&](std::size_t i) {
        const int w = to_fit[i];
        GroupFit fit = design.fit(xt.rows().row(w), params.fit);
        fit.word = w;
        fits[i] = std::move(fit);
    });

    result.estimate = assemble_beta(result.clustering, fits, row_weights);
    result.estimate.params_used = params;
    result.estimate.params_used.ssc.num_clusters = k;

    DiscoveryDiagnostics& diag = result.diagnostics;
    diag.candidate_count = static_cast<int>(result.candidates.indices.size());
    for (const auto& c : result.clustering.clusters)
        diag.cluster_sizes.push_back(static_cast<int>(c.size()));
    diag.outlier_count = static_cast<int>(result.clustering.outliers.size());
    diag.residual_count = static_cast<int>(result.clustering.residual.size());
    for (const GroupFit& f : fits) {
        if (!f.converged) ++diag.nonconverged_fits;
        diag.max_fit_residual = std::max(diag.max_fit_residual, f.fixed_point_residual);
    }
    return result;
}

DiscoveryResult discover_topics(const CountMatrix& x, int k, PipelineParams params) {
    // Split the vocabulary into observed and zero-count words.
    std::vector<int> alive;
    alive.reserve(static_cast<std::size_t>(x.vocab_size()));
    for (int w = 0; w < x.vocab_size(); ++w)
        if (x.row_sum(w) > 0) alive.push_back(w);
    if (alive.empty()) throw ZeroRowError(0);
    const int n_alive = static_cast<int>(alive.size());

    RowMatrix rows(n_alive, x.num_docs());
    Eigen::VectorXd weights(n_alive);
    rows.setZero();
    for (int i = 0; i < n_alive; ++i) {
        const int w = alive[static_cast<std::size_t>(i)];
        const double inv = 1.0 / static_cast<double>(x.row_sum(w));
        for (const auto& [d, c] : x.row(w)) rows(i, d) = static_cast<double>(c) * inv;
        weights[i] = static_cast<double>(x.row_sum(w));
    }

    DiscoveryResult compact = discover_topics(StochasticRows(std::move(rows), RowKind::Empirical),
                                              weights, k, params);
    if (n_alive == x.vocab_size()) return compact;

    // Map every index back to the original vocabulary; zero-count words get
    // identically zero estimate rows.
    DiscoveryResult result;
    result.diagnostics = compact.diagnostics;
    result.diagnostics.zero_count_words = x.vocab_size() - n_alive;

    auto remap = [&](int compact_id) { return alive[static_cast<std::size_t>(compact_id)]; };

    result.candidates.indices.reserve(compact.candidates.indices.size());
    for (int i : compact.candidates.indices) result.candidates.indices.push_back(remap(i));
    result.candidates.hit_counts = compact.candidates.hit_counts;

    result.clustering.clusters.resize(compact.clustering.clusters.size());
    for (std::size_t c = 0; c < compact.clustering.clusters.size(); ++c)
        for (int i : compact.clustering.clusters[c])
            result.clustering.clusters[c].push_back(remap(i));
    for (int i : compact.clustering.outliers) result.clustering.outliers.push_back(remap(i));
    for (int i : compact.clustering.residual) result.clustering.residual.push_back(remap(i));
    result.clustering.cluster_matrices = std::move(compact.clustering.cluster_matrices);

    result.estimate.k = compact.estimate.k;
    result.estimate.params_used = compact.estimate.params_used;
    result.estimate.beta_hat = Eigen::MatrixXd::Zero(x.vocab_size(), k);
    result.estimate.provenance.assign(static_cast<std::size_t>(x.vocab_size()),
                                      WordProvenance{WordOrigin::ZeroRow, -1});
    for (int i = 0; i < n_alive; ++i) {
        result.estimate.beta_hat.row(remap(i)) = compact.estimate.beta_hat.row(i);
        result.estimate.provenance[static_cast<std::size_t>(remap(i))] =
            compact.estimate.provenance[static_cast<std::size_t>(i)];
    }
    return result;
}

} // namespace topicgeo
