#pragma once

#include <utility>
#include <vector>

#include "topicgeo/candidates.hpp"
#include "topicgeo/matrix.hpp"
#include "topicgeo/params.hpp"

namespace topicgeo {

// Self-expressive coefficients: row i holds the sparse representation of
// candidate i in terms of the other candidates (zero diagonal).
struct SelfExpression {
    Eigen::MatrixXd coefficients;            // n x n
    std::vector<double> l1_norms;            // ||c_i||_1
    std::vector<double> residuals;           // ||x_i - sum_j c_ij x_j||_2
    std::vector<double> penalties;           // effective L1 penalty per point
    std::vector<int> sweeps;                 // coordinate-descent sweeps used
    std::vector<std::vector<double>> objective_trace; // per-sweep, if recorded

    int size() const { return static_cast<int>(coefficients.rows()); }
};

// Novel-word clustering: clusters/outliers partition the candidate set;
// residual holds every word outside it. cluster_matrices[k] stacks the
// normalized rows of cluster k.
struct NovelWordClustering {
    std::vector<std::vector<int>> clusters;  // word ids, ascending
    std::vector<int> outliers;               // C_out
    std::vector<int> residual;               // words not in the candidate set
    std::vector<RowMatrix> cluster_matrices; // Y_k
};

// Lasso self-representation, one problem per candidate:
//   min_c  penalty_i * ||c||_1 + 1/2 ||x_i - sum_{j != i} c_j x_j||_2^2
// solved by cyclic coordinate descent on the Gram matrix until the KKT
// residual drops below solver_tol. penalty_i = lambda1 * max_j |<x_i, x_j>|
// when coherence scaling is on, plain lambda1 otherwise. Throws
// NoConvergenceError when the sweep cap is hit.
SelfExpression self_express(const RowMatrix& rows, const SscParams& params,
                            int threads = 1);

// Max KKT violation of the stored coefficient row i (certificate check).
double kkt_residual(const RowMatrix& rows, const Eigen::MatrixXd& coefficients,
                    int i, double penalty);

// Splits candidate positions into (inliers, outliers). A point is an outlier
// when its L1 norm exceeds gamma times the cohort median, or its residual
// exceeds residual_outlier_factor times the median residual. Throws
// AllOutliersError when nothing survives.
std::pair<std::vector<int>, std::vector<int>> detect_outliers(const SelfExpression& se,
                                                              const SscParams& params);

// |C| + |C^T| restricted to the given positions; symmetric, zero diagonal.
Eigen::MatrixXd build_affinity(const Eigen::MatrixXd& coefficients,
                               const std::vector<int>& members);

// Normalized spectral clustering of the inlier positions into K groups:
// symmetric affinity, L = I - D^{-1/2} W D^{-1/2}, rows of the bottom-K
// eigenvector matrix normalized to unit length, then seeded k-means++ with
// restarts. ids (parallel to positions 0..n-1, defaults to identity) key the
// random choices, so permuting the input order permutes the output clusters
// identically. Throws DisconnectedDegenerateError on a zero-degree member and
// TooFewInliersError when fewer inliers (or distinct embedded points) than
// clusters exist.
std::vector<std::vector<int>> spectral_cluster(const SelfExpression& se,
                                               const std::vector<int>& inliers,
                                               const SscParams& params,
                                               const std::vector<int>& ids = {});

// Full step 3: self-expression, outlier detection (zero-degree inliers are
// re-routed to the outlier set), spectral clustering, and assembly of the
// cluster matrices Y_k.
NovelWordClustering cluster_candidates(const StochasticRows& xt, const CandidateSet& e,
                                       const SscParams& params, int threads = 1);

} // namespace topicgeo
