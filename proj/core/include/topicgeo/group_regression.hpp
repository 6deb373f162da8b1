#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "topicgeo/matrix.hpp"
#include "topicgeo/params.hpp"
#include "topicgeo/subspace_cluster.hpp"

namespace topicgeo {

// Result of one group-sparse fit
//   min_{b >= 0}  ||x - sum_l b_l Y_l||_2^2 + lambda2 * sum_l ||b_l||_inf
struct GroupFit {
    int word = -1;
    std::vector<Eigen::VectorXd> blocks; // b_l >= 0, one block per topic
    double objective = 0.0;
    std::vector<double> group_norms;     // ||b_l||_inf
    double fixed_point_residual = 0.0;   // ||b - prox_step(b)|| * L at exit
    bool converged = true;
    int iterations = 0;
    std::vector<double> objective_trace;

    double block_l1(int l) const { return blocks[static_cast<std::size_t>(l)].sum(); }
};

enum class WordOrigin : unsigned char { Novel, Regressed, OutlierRegressed, ZeroRow };

struct WordProvenance {
    WordOrigin origin = WordOrigin::Regressed;
    int topic = -1; // set when origin == Novel
};

// Column-stochastic topic estimate with per-word provenance and the full
// parameter record of the run that produced it.
struct TopicEstimate {
    Eigen::MatrixXd beta_hat; // W x K
    std::vector<WordProvenance> provenance;
    PipelineParams params_used;
    int k = 0;

    void validate() const; // stochastic columns, 1-sparse novel rows
};

// argmin_{u >= 0} 1/2 ||u - v||^2 + t ||u||_inf. Negative coordinates clamp
// to zero; the remaining L-infinity prox goes through the Moreau identity
// (subtract the Euclidean projection onto the L1 ball of radius t).
Eigen::VectorXd prox_linf_nonneg(const Eigen::VectorXd& v, double t);

// Euclidean projection onto {z : ||z||_1 <= radius, z >= 0} for nonneg v.
Eigen::VectorXd project_l1_ball_nonneg(const Eigen::VectorXd& v, double radius);

// Shared precomputation (stacked rows, Gram, Lipschitz constant) for fitting
// many words against the same cluster matrices.
class GroupDesign {
public:
    explicit GroupDesign(const std::vector<RowMatrix>& groups);

    GroupFit fit(const Eigen::RowVectorXd& x_row, const GroupFitParams& params) const;

    int coefficient_count() const { return static_cast<int>(stacked_.rows()); }
    int group_count() const { return static_cast<int>(sizes_.size()); }
    double lipschitz() const { return lipschitz_; }

private:
    RowMatrix stacked_;          // all cluster rows, group blocks contiguous
    std::vector<int> offsets_;   // block start per group
    std::vector<int> sizes_;
    Eigen::MatrixXd gram_;
    double lipschitz_ = 0.0;
};

// One-off convenience wrapper around GroupDesign.
GroupFit group_sparse_fit(const Eigen::RowVectorXd& x_row,
                          const std::vector<RowMatrix>& groups,
                          const GroupFitParams& params);

// Step 5: beta_hat[w][k] = N_w * 1(w in C_k) for novel words and
// N_w * ||b_wk||_1 for regressed words, before column normalization.
Eigen::MatrixXd assemble_beta_raw(const NovelWordClustering& clustering,
                                  const std::vector<GroupFit>& fits,
                                  const Eigen::VectorXd& row_weights);

// Column-normalized estimate with provenance. Throws EmptyColumnError when a
// topic column sums to zero.
TopicEstimate assemble_beta(const NovelWordClustering& clustering,
                            const std::vector<GroupFit>& fits,
                            const Eigen::VectorXd& row_weights);

} // namespace topicgeo
