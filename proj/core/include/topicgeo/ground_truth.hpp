#pragma once

#include <Eigen/Dense>
#include <vector>

namespace topicgeo {

// Separable topic model ground truth: column-stochastic beta (W x K) whose
// novel-word rows are 1-sparse, column-stochastic theta (K x M), and the
// novel-word index sets per topic.
struct GroundTruth {
    Eigen::MatrixXd beta;                       // W x K
    Eigen::MatrixXd theta;                      // K x M
    std::vector<std::vector<int>> novel_sets;   // C_1..C_K, disjoint, 0-based
    std::vector<int> non_novel;                 // C_0
    double rho = 0.0;                           // realized novel fraction W1/W
    Eigen::VectorXd alpha;                      // Dirichlet parameters (may be empty)

    int vocab_size() const { return static_cast<int>(beta.rows()); }
    int topic_count() const { return static_cast<int>(beta.cols()); }
    int doc_count() const { return static_cast<int>(theta.cols()); }

    // Throws std::invalid_argument on any violated invariant: stochastic
    // columns, exact separability of novel rows, and C_0..C_K partitioning
    // the vocabulary with |C_1 u ... u C_K| = round(rho * W).
    void validate() const;
};

} // namespace topicgeo
