#pragma once

#include <vector>

#include "topicgeo/candidates.hpp"
#include "topicgeo/group_regression.hpp"
#include "topicgeo/matrix.hpp"
#include "topicgeo/params.hpp"
#include "topicgeo/subspace_cluster.hpp"

namespace topicgeo {

struct DiscoveryDiagnostics {
    int candidate_count = 0;
    std::vector<int> cluster_sizes;
    int outlier_count = 0;
    int residual_count = 0;
    int zero_count_words = 0;       // rows skipped for lack of any observation
    int nonconverged_fits = 0;
    double max_fit_residual = 0.0;  // worst proximal fixed-point residual
};

struct DiscoveryResult {
    TopicEstimate estimate;
    NovelWordClustering clustering;
    CandidateSet candidates;
    DiscoveryDiagnostics diagnostics;
};

// Steps 2-5 on an already-normalized matrix. row_weights are the N_w counts
// (or the exact row masses of A when bypassing sampling). Stage seeds are
// derived from params.seed; candidate projections default to 100*K when
// params.candidates.projections <= 0.
DiscoveryResult discover_topics(const StochasticRows& xt, const Eigen::VectorXd& row_weights,
                                int k, PipelineParams params);

// Steps 1-5 on raw counts. Words with zero total count carry no evidence and
// the step-5 formula gives them identically zero estimate rows; they are
// excluded from the geometric stages and reported as ZeroRow provenance. All
// indices in the result refer to the original vocabulary.
DiscoveryResult discover_topics(const CountMatrix& x, int k, PipelineParams params);

} // namespace topicgeo
