#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "topicgeo/subspace_cluster.hpp"

namespace topicgeo {

// Permutation-matched comparison of an estimated topic matrix against the
// ground truth. permutation[j] is the estimate column matched to truth
// column j; frobenius_error is ||beta_hat_pi - beta||_F under that matching.
struct EvalReport {
    double frobenius_error = 0.0;
    std::vector<int> permutation;
    std::vector<double> per_topic_l2;     // column L2 error per truth topic
    std::vector<double> matched_cosine;   // cosine similarity per truth topic
    int recovered_count = 0;              // matched cosines >= cos_threshold
    double cos_threshold = 0.8;
    std::optional<double> purity;

    std::string to_json() const;
};

// Solves the column matching exactly (assignment on squared column L2
// distances, so the reported Frobenius error is minimal over permutations).
// Throws ShapeMismatchError when shapes differ.
EvalReport matched_error(const Eigen::MatrixXd& beta_hat, const Eigen::MatrixXd& beta,
                         double cos_threshold = 0.8);

// Ground-truth topics whose matched estimate reaches the cosine threshold.
int recovery_count(const Eigen::MatrixXd& beta_hat, const Eigen::MatrixXd& beta,
                   double cos_threshold = 0.8);

// sum_k max_j |C_hat_k intersect C_j| / sum_k |C_hat_k| over the K novel-word
// clusters (outliers and residual words do not count).
double cluster_purity(const NovelWordClustering& clustering,
                      const std::vector<std::vector<int>>& gt_novel_sets);

} // namespace topicgeo
