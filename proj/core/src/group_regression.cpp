#include "topicgeo/group_regression.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "topicgeo/errors.hpp"

namespace topicgeo {

Eigen::VectorXd project_l1_ball_nonneg(const Eigen::VectorXd& v, double radius) {
    if (v.sum() <= radius) return v;
    std::vector<double> sorted(v.data(), v.data() + v.size());
    std::sort(sorted.begin(), sorted.end(), std::greater<double>());
    double cum = 0.0, tau = 0.0;
    for (std::size_t j = 0; j < sorted.size(); ++j) {
        cum += sorted[j];
        const double candidate = (cum - radius) / static_cast<double>(j + 1);
        if (sorted[j] - candidate > 0.0) tau = candidate;
    }
    return (v.array() - tau).max(0.0);
}

Eigen::VectorXd prox_linf_nonneg(const Eigen::VectorXd& v, double t) {
    if (t < 0.0) throw std::invalid_argument("prox_linf_nonneg: negative threshold");
    Eigen::VectorXd u = v.cwiseMax(0.0);
    if (t == 0.0) return u;
    // Moreau: prox_{t||.||_inf}(u) = u - proj_{L1 ball, radius t}(u). Clamping
    // first is exact here: coordinates with v_j <= 0 are zero at any optimum.
    return u - project_l1_ball_nonneg(u, t);
}

GroupDesign::GroupDesign(const std::vector<RowMatrix>& groups) {
    if (groups.empty()) throw std::invalid_argument("GroupDesign: no groups");
    int total = 0;
    const Eigen::Index m = groups.front().cols();
    for (const auto& g : groups) {
        if (g.rows() == 0) throw std::invalid_argument("GroupDesign: empty group");
        if (g.cols() != m) throw ShapeMismatchError("GroupDesign: inconsistent row width");
        offsets_.push_back(total);
        sizes_.push_back(static_cast<int>(g.rows()));
        total += static_cast<int>(g.rows());
    }
    stacked_.resize(total, m);
    for (std::size_t l = 0; l < groups.size(); ++l)
        stacked_.middleRows(offsets_[l], sizes_[l]) = groups[l];
    gram_ = stacked_ * stacked_.transpose();

    // Largest Gram eigenvalue by power iteration (1e-6 relative tolerance);
    // the smooth term ||x - b'S||^2 then has gradient Lipschitz constant
    // 2*lambda_max.
    Eigen::VectorXd v = Eigen::VectorXd::Ones(total).normalized();
    double lambda = 0.0;
    for (int it = 0; it < 1000; ++it) {
        Eigen::VectorXd gv = gram_ * v;
        const double norm = gv.norm();
        if (norm == 0.0) break;
        v = gv / norm;
        const double next = v.dot(gram_ * v);
        if (std::abs(next - lambda) <= 1e-6 * std::max(next, 1e-300)) {
            lambda = next;
            break;
        }
        lambda = next;
    }
    lipschitz_ = 2.0 * lambda * (1.0 + 1e-6);
    if (!(lipschitz_ > 0.0)) lipschitz_ = 1.0; // all-zero design
}

GroupFit group_sparse_fit(const Eigen::RowVectorXd& x_row,
                          const std::vector<RowMatrix>& groups,
                          const GroupFitParams& params) {
    return GroupDesign(groups).fit(x_row, params);
}

GroupFit GroupDesign::fit(const Eigen::RowVectorXd& x_row, const GroupFitParams& params) const {
    if (x_row.size() != stacked_.cols())
        throw ShapeMismatchError("group fit: row length mismatch");
    if (params.lambda2 < 0.0) throw std::invalid_argument("group fit: lambda2 must be >= 0");

    const int n = coefficient_count();
    const int k = group_count();
    const double big_l = lipschitz_;
    const double step = 1.0 / big_l;
    const Eigen::VectorXd corr = stacked_ * x_row.transpose();
    const double x2 = x_row.squaredNorm();

    auto apply_prox = [&](const Eigen::VectorXd& raw) {
        Eigen::VectorXd out(n);
        for (int l = 0; l < k; ++l)
            out.segment(offsets_[static_cast<std::size_t>(l)], sizes_[static_cast<std::size_t>(l)]) =
                prox_linf_nonneg(
                    raw.segment(offsets_[static_cast<std::size_t>(l)], sizes_[static_cast<std::size_t>(l)]),
                    params.lambda2 * step);
        return out;
    };
    auto objective = [&](const Eigen::VectorXd& b) {
        double penalty = 0.0;
        for (int l = 0; l < k; ++l)
            penalty += b.segment(offsets_[static_cast<std::size_t>(l)], sizes_[static_cast<std::size_t>(l)])
                           .maxCoeff();
        return x2 - 2.0 * b.dot(corr) + b.dot(gram_ * b) + params.lambda2 * penalty;
    };

    GroupFit fit;
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd y = b;
    double t = 1.0;
    double f_b = objective(b);
    if (params.record_objectives) fit.objective_trace.push_back(f_b);

    bool stopped = false;
    for (int iter = 0; iter < params.max_iter && !stopped; ++iter) {
        Eigen::VectorXd grad = 2.0 * (gram_ * y - corr);
        Eigen::VectorXd b_next = apply_prox(y - step * grad);
        double f_next = objective(b_next);
        double mapping = (b_next - y).norm() * big_l;

        if (f_next > f_b + 1e-12 * std::max(1.0, std::abs(f_b))) {
            // Momentum overshot: restart from b. The plain proximal step from b
            // cannot increase the objective, restoring monotonicity.
            grad = 2.0 * (gram_ * b - corr);
            b_next = apply_prox(b - step * grad);
            f_next = objective(b_next);
            mapping = (b_next - b).norm() * big_l;
            t = 1.0;
        }

        const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
        y = b_next + ((t - 1.0) / t_next) * (b_next - b);
        b = b_next;
        f_b = f_next;
        t = t_next;
        fit.iterations = iter + 1;
        if (params.record_objectives) fit.objective_trace.push_back(f_b);

        // The objective flattens (quadratically) long before the iterate
        // settles, so the mapping norm is the sole convergence signal;
        // max_iter caps runaway problems.
        if (mapping <= params.tol) stopped = true;
    }

    // Fixed-point certificate at the returned iterate.
    {
        const Eigen::VectorXd grad = 2.0 * (gram_ * b - corr);
        const Eigen::VectorXd p = apply_prox(b - step * grad);
        fit.fixed_point_residual = (p - b).norm() * big_l;
    }
    fit.converged = fit.fixed_point_residual <= params.tol;
    fit.objective = f_b;
    fit.blocks.reserve(static_cast<std::size_t>(k));
    fit.group_norms.reserve(static_cast<std::size_t>(k));
    for (int l = 0; l < k; ++l) {
        Eigen::VectorXd block =
            b.segment(offsets_[static_cast<std::size_t>(l)], sizes_[static_cast<std::size_t>(l)]);
        fit.group_norms.push_back(block.maxCoeff());
        fit.blocks.push_back(std::move(block));
    }
    return fit;
}

Eigen::MatrixXd assemble_beta_raw(const NovelWordClustering& clustering,
                                  const std::vector<GroupFit>& fits,
                                  const Eigen::VectorXd& row_weights) {
    const int k = static_cast<int>(clustering.clusters.size());
    const int w_count = static_cast<int>(row_weights.size());

    std::vector<int> expected = clustering.residual;
    expected.insert(expected.end(), clustering.outliers.begin(), clustering.outliers.end());
    std::sort(expected.begin(), expected.end());
    std::vector<int> covered;
    covered.reserve(fits.size());
    for (const auto& f : fits) covered.push_back(f.word);
    std::sort(covered.begin(), covered.end());
    if (covered != expected)
        throw std::invalid_argument("assemble_beta: fits must cover exactly C_0 and C_out");

    Eigen::MatrixXd beta = Eigen::MatrixXd::Zero(w_count, k);
    for (int c = 0; c < k; ++c)
        for (int w : clustering.clusters[static_cast<std::size_t>(c)])
            beta(w, c) = row_weights[w];
    for (const auto& f : fits) {
        if (static_cast<int>(f.blocks.size()) != k)
            throw ShapeMismatchError("assemble_beta: fit block count mismatch");
        for (int c = 0; c < k; ++c) beta(f.word, c) = row_weights[f.word] * f.block_l1(c);
    }
    return beta;
}

TopicEstimate assemble_beta(const NovelWordClustering& clustering,
                            const std::vector<GroupFit>& fits,
                            const Eigen::VectorXd& row_weights) {
    Eigen::MatrixXd beta = assemble_beta_raw(clustering, fits, row_weights);
    const int k = static_cast<int>(beta.cols());

    for (int c = 0; c < k; ++c) {
        const double sum = beta.col(c).sum();
        if (!(sum > 0.0)) throw EmptyColumnError(c);
        beta.col(c) /= sum;
    }

    TopicEstimate est;
    est.beta_hat = std::move(beta);
    est.k = k;
    est.provenance.assign(static_cast<std::size_t>(row_weights.size()), WordProvenance{});
    for (int c = 0; c < k; ++c)
        for (int w : clustering.clusters[static_cast<std::size_t>(c)])
            est.provenance[static_cast<std::size_t>(w)] = {WordOrigin::Novel, c};
    for (int w : clustering.outliers)
        est.provenance[static_cast<std::size_t>(w)] = {WordOrigin::OutlierRegressed, -1};
    return est;
}

void TopicEstimate::validate() const {
    for (int c = 0; c < k; ++c) {
        double sum = 0.0;
        for (Eigen::Index w = 0; w < beta_hat.rows(); ++w) {
            if (beta_hat(w, c) < 0.0) throw std::invalid_argument("TopicEstimate: negative entry");
            sum += beta_hat(w, c);
        }
        if (std::abs(sum - 1.0) > 1e-9)
            throw std::invalid_argument("TopicEstimate: column " + std::to_string(c) +
                                        " not stochastic");
    }
    for (std::size_t w = 0; w < provenance.size(); ++w) {
        if (provenance[w].origin != WordOrigin::Novel) continue;
        for (int c = 0; c < k; ++c)
            if (c != provenance[w].topic && beta_hat(static_cast<Eigen::Index>(w), c) != 0.0)
                throw std::invalid_argument("TopicEstimate: novel row not 1-sparse");
    }
}

} // namespace topicgeo
