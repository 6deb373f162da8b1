#include "topicgeo/subspace_cluster.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "topicgeo/errors.hpp"
#include "topicgeo/parallel.hpp"
#include "topicgeo/rng.hpp"

namespace topicgeo {

namespace {

double soft_threshold(double z, double t) {
    if (z > t) return z - t;
    if (z < -t) return z + t;
    return 0.0;
}

double median(std::vector<double> v) {
    const std::size_t n = v.size();
    std::sort(v.begin(), v.end());
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// One lasso problem on the Gram matrix. gram_col = G.col(i) doubles as the
// correlation vector of the target with every column.
struct LassoResult {
    Eigen::VectorXd c;
    double penalty = 0.0;
    int sweeps = 0;
    std::vector<double> trace;
};

LassoResult lasso_self(const Eigen::MatrixXd& gram, int i, const SscParams& params) {
    const int n = static_cast<int>(gram.rows());
    LassoResult out;
    out.c = Eigen::VectorXd::Zero(n);

    double mu = 0.0; // coherence: max abs correlation with the other points
    for (int j = 0; j < n; ++j)
        if (j != i) mu = std::max(mu, std::abs(gram(i, j)));
    out.penalty = params.coherence_scaled_lambda
                      ? params.lambda1 * std::max(mu, 1e-12)
                      : params.lambda1;

    Eigen::VectorXd q = Eigen::VectorXd::Zero(n); // q = G * c, kept incrementally
    const auto target = gram.col(i);

    auto objective = [&]() {
        // 1/2 ||x_i - sum c_j x_j||^2 + penalty * ||c||_1 via the Gram identity.
        return 0.5 * (gram(i, i) - 2.0 * out.c.dot(target) + out.c.dot(q)) +
               out.penalty * out.c.lpNorm<1>();
    };
    if (params.record_objectives) out.trace.push_back(objective());

    double kkt = std::numeric_limits<double>::infinity();
    for (int sweep = 0; sweep < params.max_iter; ++sweep) {
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const double d_jj = gram(j, j);
            const double z = target[j] - q[j] + out.c[j] * d_jj;
            const double updated = soft_threshold(z, out.penalty) / d_jj;
            const double change = updated - out.c[j];
            if (change != 0.0) {
                q += change * gram.col(j);
                out.c[j] = updated;
            }
        }
        out.sweeps = sweep + 1;
        if (params.record_objectives) out.trace.push_back(objective());

        kkt = 0.0;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const double g = q[j] - target[j];
            const double viol = out.c[j] == 0.0
                                    ? std::max(std::abs(g) - out.penalty, 0.0)
                                    : std::abs(g + out.penalty * (out.c[j] > 0 ? 1.0 : -1.0));
            kkt = std::max(kkt, viol);
        }
        if (kkt <= params.solver_tol) return out;
    }
    throw NoConvergenceError(i, kkt, params.solver_tol);
}

} // namespace

SelfExpression self_express(const RowMatrix& rows, const SscParams& params, int threads) {
    const int n = static_cast<int>(rows.rows());
    if (n < 2) throw std::invalid_argument("self_express: need at least 2 candidate rows");
    if (!(params.lambda1 > 0.0)) throw std::invalid_argument("self_express: lambda1 must be > 0");

    const Eigen::MatrixXd gram = rows * rows.transpose();

    SelfExpression se;
    se.coefficients = Eigen::MatrixXd::Zero(n, n);
    se.l1_norms.resize(static_cast<std::size_t>(n));
    se.residuals.resize(static_cast<std::size_t>(n));
    se.penalties.resize(static_cast<std::size_t>(n));
    se.sweeps.resize(static_cast<std::size_t>(n));
    if (params.record_objectives) se.objective_trace.resize(static_cast<std::size_t>(n));

    parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t ui) {
        const int i = static_cast<int>(ui);
        LassoResult r = lasso_self(gram, i, params);
        se.coefficients.row(i) = r.c.transpose();
        se.l1_norms[ui] = r.c.lpNorm<1>();
        const double sq = gram(i, i) - 2.0 * r.c.dot(gram.col(i)) +
                          r.c.dot(gram * r.c);
        se.residuals[ui] = std::sqrt(std::max(sq, 0.0));
        se.penalties[ui] = r.penalty;
        se.sweeps[ui] = r.sweeps;
        if (params.record_objectives) se.objective_trace[ui] = std::move(r.trace);
    });
    return se;
}

double kkt_residual(const RowMatrix& rows, const Eigen::MatrixXd& coefficients, int i,
                    double penalty) {
    const Eigen::VectorXd c = coefficients.row(i).transpose();
    const Eigen::RowVectorXd fitted = c.transpose() * rows;
    const Eigen::RowVectorXd resid = fitted - rows.row(i);
    double worst = 0.0;
    for (Eigen::Index j = 0; j < rows.rows(); ++j) {
        if (j == i) continue;
        const double g = resid.dot(rows.row(j));
        const double viol = c[j] == 0.0 ? std::max(std::abs(g) - penalty, 0.0)
                                        : std::abs(g + penalty * (c[j] > 0 ? 1.0 : -1.0));
        worst = std::max(worst, viol);
    }
    return worst;
}

std::pair<std::vector<int>, std::vector<int>> detect_outliers(const SelfExpression& se,
                                                              const SscParams& params) {
    const int n = se.size();
    const double norm_cut = params.gamma * median(se.l1_norms);
    const double resid_cut = params.residual_outlier_factor * median(se.residuals);

    std::vector<int> inliers, outliers;
    for (int i = 0; i < n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        if (se.l1_norms[ui] > norm_cut || se.residuals[ui] > resid_cut)
            outliers.push_back(i);
        else
            inliers.push_back(i);
    }
    if (inliers.empty()) throw AllOutliersError();
    return {std::move(inliers), std::move(outliers)};
}

Eigen::MatrixXd build_affinity(const Eigen::MatrixXd& coefficients,
                               const std::vector<int>& members) {
    const int n = static_cast<int>(members.size());
    Eigen::MatrixXd w(n, n);
    for (int a = 0; a < n; ++a) {
        w(a, a) = 0.0;
        for (int b = a + 1; b < n; ++b) {
            const double v = std::abs(coefficients(members[a], members[b])) +
                             std::abs(coefficients(members[b], members[a]));
            w(a, b) = v;
            w(b, a) = v;
        }
    }
    return w;
}

namespace {

struct KmeansOutcome {
    std::vector<int> labels;
    double inertia = std::numeric_limits<double>::infinity();
    bool complete = false; // every cluster nonempty
};

// Seeded k-means++ followed by Lloyd iterations. Points are visited in
// ascending id order wherever a random or tie-broken choice is made, which
// makes the outcome independent of the input permutation.
KmeansOutcome kmeans_once(const Eigen::MatrixXd& points, const std::vector<int>& ids,
                          int k, std::uint64_t seed) {
    const int n = static_cast<int>(points.rows());
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return ids[static_cast<std::size_t>(a)] < ids[static_cast<std::size_t>(b)]; });

    rng::Stream stream(seed);
    Eigen::MatrixXd centers = Eigen::MatrixXd::Zero(k, points.cols());

    // k-means++ seeding.
    std::vector<double> dist2(static_cast<std::size_t>(n),
                              std::numeric_limits<double>::infinity());
    std::vector<bool> is_center(static_cast<std::size_t>(n), false);
    {
        const int first = order[static_cast<std::size_t>(stream.next_index(n))];
        centers.row(0) = points.row(first);
        is_center[static_cast<std::size_t>(first)] = true;
    }
    for (int c = 1; c < k; ++c) {
        double total = 0.0;
        for (int p = 0; p < n; ++p) {
            const double d = (points.row(p) - centers.row(c - 1)).squaredNorm();
            auto& best = dist2[static_cast<std::size_t>(p)];
            if (d < best) best = d;
            total += best;
        }
        int chosen = -1;
        if (total > 0.0) {
            const double u = stream.next_unit() * total;
            double acc = 0.0;
            for (int p : order) {
                acc += dist2[static_cast<std::size_t>(p)];
                if (acc > u) {
                    chosen = p;
                    break;
                }
            }
            if (chosen < 0) chosen = order.back();
        }
        if (chosen < 0 || is_center[static_cast<std::size_t>(chosen)]) {
            // All remaining mass sits on existing centers; take the lowest-id
            // point not yet used.
            for (int p : order)
                if (!is_center[static_cast<std::size_t>(p)]) {
                    chosen = p;
                    break;
                }
        }
        if (chosen < 0) break; // fewer distinct points than centers
        centers.row(c) = points.row(chosen);
        is_center[static_cast<std::size_t>(chosen)] = true;
    }

    std::vector<int> labels(static_cast<std::size_t>(n), 0);
    for (int round = 0; round < 200; ++round) {
        bool changed = false;
        for (int p = 0; p < n; ++p) {
            int best = 0;
            double best_d = (points.row(p) - centers.row(0)).squaredNorm();
            for (int c = 1; c < k; ++c) {
                const double d = (points.row(p) - centers.row(c)).squaredNorm();
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            if (labels[static_cast<std::size_t>(p)] != best) {
                labels[static_cast<std::size_t>(p)] = best;
                changed = true;
            }
        }

        std::vector<int> sizes(static_cast<std::size_t>(k), 0);
        Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, points.cols());
        for (int p = 0; p < n; ++p) {
            sums.row(labels[static_cast<std::size_t>(p)]) += points.row(p);
            ++sizes[static_cast<std::size_t>(labels[static_cast<std::size_t>(p)])];
        }
        bool repaired = false;
        for (int c = 0; c < k; ++c) {
            if (sizes[static_cast<std::size_t>(c)] > 0) {
                centers.row(c) = sums.row(c) / sizes[static_cast<std::size_t>(c)];
            } else {
                // Re-seed an empty cluster with the worst-fit point (lowest id
                // on ties) if its donor cluster can spare one.
                int worst = -1;
                double worst_d = -1.0;
                for (int p : order) {
                    const int lab = labels[static_cast<std::size_t>(p)];
                    if (sizes[static_cast<std::size_t>(lab)] < 2) continue;
                    const double d = (points.row(p) - centers.row(lab)).squaredNorm();
                    if (d > worst_d) {
                        worst_d = d;
                        worst = p;
                    }
                }
                if (worst >= 0) {
                    --sizes[static_cast<std::size_t>(labels[static_cast<std::size_t>(worst)])];
                    labels[static_cast<std::size_t>(worst)] = c;
                    sizes[static_cast<std::size_t>(c)] = 1;
                    centers.row(c) = points.row(worst);
                    repaired = true;
                }
            }
        }
        if (!changed && !repaired) break;
    }

    KmeansOutcome out;
    out.labels = labels;
    std::vector<int> sizes(static_cast<std::size_t>(k), 0);
    double inertia = 0.0, comp = 0.0;
    for (int p : order) { // fixed order: deterministic compensated sum
        const int lab = labels[static_cast<std::size_t>(p)];
        ++sizes[static_cast<std::size_t>(lab)];
        const double d = (points.row(p) - centers.row(lab)).squaredNorm();
        const double y = d - comp;
        const double t = inertia + y;
        comp = (t - inertia) - y;
        inertia = t;
    }
    out.inertia = inertia;
    out.complete = std::all_of(sizes.begin(), sizes.end(), [](int s) { return s > 0; });
    return out;
}

} // namespace

std::vector<std::vector<int>> spectral_cluster(const SelfExpression& se,
                                               const std::vector<int>& inliers,
                                               const SscParams& params,
                                               const std::vector<int>& ids) {
    const int n = static_cast<int>(inliers.size());
    const int k = params.num_clusters;
    if (k < 1) throw std::invalid_argument("spectral_cluster: K must be >= 1");
    if (n < k) throw TooFewInliersError(n, k);

    std::vector<int> point_ids(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a)
        point_ids[static_cast<std::size_t>(a)] =
            ids.empty() ? inliers[static_cast<std::size_t>(a)]
                        : ids[static_cast<std::size_t>(inliers[static_cast<std::size_t>(a)])];

    std::vector<std::vector<int>> clusters(static_cast<std::size_t>(k));
    if (k == 1 || n == 1) {
        clusters[0] = inliers;
        return clusters;
    }

    const Eigen::MatrixXd affinity = build_affinity(se.coefficients, inliers);
    Eigen::VectorXd degree = affinity.rowwise().sum();
    for (int a = 0; a < n; ++a)
        if (!(degree[a] > 0.0)) throw DisconnectedDegenerateError(inliers[static_cast<std::size_t>(a)]);

    const Eigen::VectorXd inv_sqrt = degree.cwiseSqrt().cwiseInverse();
    Eigen::MatrixXd lap = Eigen::MatrixXd::Identity(n, n) -
                          inv_sqrt.asDiagonal() * affinity * inv_sqrt.asDiagonal();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(lap);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("spectral_cluster: eigendecomposition failed");
    Eigen::MatrixXd embedding = es.eigenvectors().leftCols(k); // ascending eigenvalues

    for (int a = 0; a < n; ++a) {
        const double norm = embedding.row(a).norm();
        if (norm > 0.0) embedding.row(a) /= norm;
    }

    KmeansOutcome best;
    for (int r = 0; r < params.kmeans_restarts; ++r) {
        KmeansOutcome cur =
            kmeans_once(embedding, point_ids, k, rng::substream(params.seed, "kmeans", r));
        if (!cur.complete) continue;
        if (cur.inertia < best.inertia || !best.complete) best = std::move(cur);
    }
    if (!best.complete)
        throw TooFewInliersError(n, k, "fewer distinct embedded points than clusters");

    for (int a = 0; a < n; ++a)
        clusters[static_cast<std::size_t>(best.labels[static_cast<std::size_t>(a)])]
            .push_back(inliers[static_cast<std::size_t>(a)]);
    return clusters;
}

NovelWordClustering cluster_candidates(const StochasticRows& xt, const CandidateSet& e,
                                       const SscParams& params, int threads) {
    const int k = params.num_clusters;
    const int n = static_cast<int>(e.indices.size());
    if (k < 1) throw std::invalid_argument("cluster_candidates: K must be >= 1");
    if (n < k) throw TooFewInliersError(n, k);

    NovelWordClustering out;
    out.clusters.resize(static_cast<std::size_t>(k));

    const int w_count = xt.word_count();
    std::vector<char> in_e(static_cast<std::size_t>(w_count), 0);
    for (int w : e.indices) in_e[static_cast<std::size_t>(w)] = 1;
    for (int w = 0; w < w_count; ++w)
        if (!in_e[static_cast<std::size_t>(w)]) out.residual.push_back(w);

    if (n == 1) { // single candidate, single cluster (K == 1 here)
        out.clusters[0] = {e.indices[0]};
    } else {
        RowMatrix rows(n, xt.doc_count());
        for (int a = 0; a < n; ++a)
            rows.row(a) = xt.rows().row(e.indices[static_cast<std::size_t>(a)]);

        const SelfExpression se = self_express(rows, params, threads);
        auto [inliers, outliers] = detect_outliers(se, params);

        // Zero-degree inliers cannot be clustered; fold them into the outlier
        // set and re-check until stable.
        for (;;) {
            if (static_cast<int>(inliers.size()) < k)
                throw TooFewInliersError(static_cast<int>(inliers.size()), k);
            const Eigen::MatrixXd affinity = build_affinity(se.coefficients, inliers);
            const Eigen::VectorXd degree = affinity.rowwise().sum();
            std::vector<int> keep, dropped;
            for (int a = 0; a < static_cast<int>(inliers.size()); ++a)
                (degree[a] > 0.0 ? keep : dropped).push_back(inliers[static_cast<std::size_t>(a)]);
            if (dropped.empty()) break;
            inliers = std::move(keep);
            outliers.insert(outliers.end(), dropped.begin(), dropped.end());
        }

        const auto clusters = spectral_cluster(se, inliers, params, e.indices);
        for (int c = 0; c < k; ++c)
            for (int pos : clusters[static_cast<std::size_t>(c)])
                out.clusters[static_cast<std::size_t>(c)].push_back(e.indices[static_cast<std::size_t>(pos)]);
        for (int pos : outliers) out.outliers.push_back(e.indices[static_cast<std::size_t>(pos)]);
    }

    for (auto& cluster : out.clusters) std::sort(cluster.begin(), cluster.end());
    std::sort(out.outliers.begin(), out.outliers.end());

    out.cluster_matrices.reserve(static_cast<std::size_t>(k));
    for (const auto& cluster : out.clusters) {
        RowMatrix y(static_cast<Eigen::Index>(cluster.size()), xt.doc_count());
        for (std::size_t a = 0; a < cluster.size(); ++a)
            y.row(static_cast<Eigen::Index>(a)) = xt.rows().row(cluster[a]);
        out.cluster_matrices.push_back(std::move(y));
    }
    return out;
}

} // namespace topicgeo
