// Test-only oracles, kept independent of the library's solver paths: simplex
// least-squares by plain projected gradient, dense grid searches, exhaustive
// assignment, and direct subgradient checks.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace oracle {

// Euclidean projection onto the probability simplex (sort-based).
inline Eigen::VectorXd project_simplex(const Eigen::VectorXd& v) {
    const int n = static_cast<int>(v.size());
    std::vector<double> u(v.data(), v.data() + n);
    std::sort(u.begin(), u.end(), std::greater<double>());
    double cum = 0.0, tau = 0.0;
    for (int j = 0; j < n; ++j) {
        cum += u[static_cast<std::size_t>(j)];
        const double candidate = (cum - 1.0) / static_cast<double>(j + 1);
        if (u[static_cast<std::size_t>(j)] - candidate > 0.0) tau = candidate;
    }
    return (v.array() - tau).max(0.0);
}

// Convex-hull membership (LP feasibility in least-squares form): distance of
// `point` from the convex hull of the rows of `vertices`, minimized by
// projected gradient on the simplex of mixture weights.
inline double hull_distance(const Eigen::RowVectorXd& point, const Eigen::MatrixXd& vertices,
                            int iters = 20000) {
    const int k = static_cast<int>(vertices.rows());
    Eigen::VectorXd w = Eigen::VectorXd::Constant(k, 1.0 / k);
    const Eigen::MatrixXd gram = vertices * vertices.transpose();
    const Eigen::VectorXd corr = vertices * point.transpose();
    // Step from the largest Gram eigenvalue (dense solver: this is test code).
    const double lip = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(gram)
                           .eigenvalues()
                           .maxCoeff();
    const double step = 1.0 / std::max(lip, 1e-12);
    for (int it = 0; it < iters; ++it) {
        const Eigen::VectorXd grad = gram * w - corr;
        const Eigen::VectorXd next = project_simplex(w - step * grad);
        if ((next - w).norm() < 1e-15) {
            w = next;
            break;
        }
        w = next;
    }
    return (point - w.transpose() * vertices).norm();
}

// Dense two-stage grid search for argmin_{u >= 0} 0.5||u-v||^2 + t*max(u)
// in 2 or 3 dimensions. The objective is strongly convex, so the refined
// grid point is within O(step) of the true minimizer.
inline Eigen::VectorXd grid_prox_linf_nonneg(const Eigen::VectorXd& v, double t) {
    const int d = static_cast<int>(v.size());
    const double hi = std::max(v.maxCoeff(), 0.0) + t + 0.5;

    auto objective = [&](const Eigen::VectorXd& u) {
        return 0.5 * (u - v).squaredNorm() + t * (d > 0 ? u.maxCoeff() : 0.0);
    };
    auto search = [&](const Eigen::VectorXd& lo_v, const Eigen::VectorXd& hi_v, double step) {
        Eigen::VectorXd best = lo_v;
        double best_f = std::numeric_limits<double>::infinity();
        std::vector<int> steps(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i)
            steps[static_cast<std::size_t>(i)] =
                static_cast<int>(std::floor((hi_v[i] - lo_v[i]) / step)) + 1;
        std::vector<int> idx(static_cast<std::size_t>(d), 0);
        Eigen::VectorXd u(d);
        for (;;) {
            for (int i = 0; i < d; ++i) u[i] = lo_v[i] + idx[static_cast<std::size_t>(i)] * step;
            const double f = objective(u);
            if (f < best_f) {
                best_f = f;
                best = u;
            }
            int pos = 0;
            while (pos < d) {
                if (++idx[static_cast<std::size_t>(pos)] <
                    steps[static_cast<std::size_t>(pos)])
                    break;
                idx[static_cast<std::size_t>(pos)] = 0;
                ++pos;
            }
            if (pos == d) break;
        }
        return best;
    };

    // Telescoping stages keep the 3-D case tractable at 2.5e-5 resolution.
    Eigen::VectorXd best =
        search(Eigen::VectorXd::Zero(d), Eigen::VectorXd::Constant(d, hi), 0.01);
    for (const double step : {4e-4, 2.5e-5}) {
        const Eigen::VectorXd lo = (best.array() - 25.0 * step).max(0.0);
        const Eigen::VectorXd up = best.array() + 25.0 * step;
        best = search(lo, up, step);
    }
    return best;
}

// Brute-force oracle for the 4-coefficient group-sparse fit (two groups of
// two): dense grid over [0, 2]^4 at step 0.01, then cyclic exact coordinate
// polish of the convex objective
//   f(b) = ||x - b' S||^2 + lambda2 * (max(b1,b2) + max(b3,b4)).
inline double grid_group_fit_objective(const Eigen::RowVectorXd& x, const Eigen::MatrixXd& s,
                                       double lambda2) {
    const int n = 4;
    const Eigen::MatrixXd gram = s * s.transpose();
    const Eigen::VectorXd corr = s * x.transpose();
    const double x2 = x.squaredNorm();

    auto objective = [&](const Eigen::VectorXd& b) {
        return x2 - 2.0 * b.dot(corr) + b.dot(gram * b) + lambda2 * (std::max(b[0], b[1]) + std::max(b[2], b[3]));
    };

    // Grid stage with incremental quadratic evaluation along b3.
    const double step = 0.01;
    const int m = 201;
    Eigen::VectorXd best = Eigen::VectorXd::Zero(n);
    double best_f = std::numeric_limits<double>::infinity();
    Eigen::VectorXd b(n);
    for (int i0 = 0; i0 < m; ++i0) {
        b[0] = i0 * step;
        for (int i1 = 0; i1 < m; ++i1) {
            b[1] = i1 * step;
            const double g01 = std::max(b[0], b[1]);
            for (int i2 = 0; i2 < m; ++i2) {
                b[2] = i2 * step;
                // Partial residual terms that do not involve b3.
                Eigen::Vector3d head(b[0], b[1], b[2]);
                const double quad_head =
                    head.dot(gram.topLeftCorner<3, 3>() * head) - 2.0 * head.dot(corr.head<3>());
                const double lin3 = 2.0 * (gram.row(3).head<3>().dot(head) - corr[3]);
                const double quad33 = gram(3, 3);
                for (int i3 = 0; i3 < m; ++i3) {
                    const double b3 = i3 * step;
                    const double f = x2 + quad_head + lin3 * b3 + quad33 * b3 * b3 +
                                     lambda2 * (g01 + std::max(b[2], b3));
                    if (f < best_f) {
                        best_f = f;
                        best = b;
                        best[3] = b3;
                    }
                }
            }
        }
    }

    // Coordinate polish: exact 1-D minimization per coordinate. For b_i with
    // partner p in the same group, f restricted to b_i is quadratic plus
    // lambda2 * max(b_i, b_p); minimize each branch and the breakpoint.
    b = best;
    const int partner[4] = {1, 0, 3, 2};
    for (int sweep = 0; sweep < 200; ++sweep) {
        double moved = 0.0;
        for (int i = 0; i < n; ++i) {
            const double p = b[partner[i]];
            double lin = -2.0 * corr[i];
            for (int j = 0; j < n; ++j)
                if (j != i) lin += 2.0 * gram(i, j) * b[j];
            const double quad = gram(i, i);
            auto eval = [&](double bi) {
                return quad * bi * bi + lin * bi + lambda2 * std::max(bi, p);
            };
            // Branch 1: b_i <= p (penalty constant in b_i). Branch 2: b_i >= p.
            double cand1 = std::clamp(-lin / (2.0 * quad), 0.0, p);
            double cand2 = std::max({(-lin - lambda2) / (2.0 * quad), p, 0.0});
            double next = b[i];
            double best_local = eval(next);
            for (double c : {cand1, cand2, p, 0.0}) {
                const double f = eval(std::max(c, 0.0));
                if (f < best_local - 1e-15) {
                    best_local = f;
                    next = std::max(c, 0.0);
                }
            }
            moved += std::abs(next - b[i]);
            b[i] = next;
        }
        if (moved < 1e-14) break;
    }
    return std::min(best_f, objective(b));
}

// Exhaustive assignment: minimal total cost over all permutations.
inline double exhaustive_assignment_cost(const Eigen::MatrixXd& cost) {
    const int n = static_cast<int>(cost.rows());
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
        double total = 0.0;
        for (int i = 0; i < n; ++i) total += cost(i, perm[static_cast<std::size_t>(i)]);
        best = std::min(best, total);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

// Direct subgradient (KKT) check of a lasso solution, recomputed from the raw
// rows rather than through the library's Gram bookkeeping.
inline double lasso_subgradient_violation(const Eigen::MatrixXd& rows, int i,
                                          const Eigen::VectorXd& c, double penalty) {
    Eigen::RowVectorXd fitted = Eigen::RowVectorXd::Zero(rows.cols());
    for (Eigen::Index j = 0; j < rows.rows(); ++j) fitted += c[j] * rows.row(j);
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

// Contingency-table purity: brute-force recount over all (cluster, class)
// pairs.
inline double contingency_purity(const std::vector<std::vector<int>>& clusters,
                                 const std::vector<std::vector<int>>& classes) {
    std::size_t total = 0, hits = 0;
    for (const auto& cl : clusters) {
        total += cl.size();
        std::size_t best = 0;
        for (const auto& cls : classes) {
            std::size_t overlap = 0;
            for (int a : cl)
                for (int b : cls)
                    if (a == b) ++overlap;
            best = std::max(best, overlap);
        }
        hits += best;
    }
    return total == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(total);
}

} // namespace oracle
