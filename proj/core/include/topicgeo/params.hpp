#pragma once

#include <cstdint>

namespace topicgeo {

// Random-projection extreme-point search.
struct CandidateParams {
    int projections = 1000; // P; the pipeline substitutes 100*K when <= 0
    double delta = 0.05;    // L1 tolerance around each argmax/argmin row
    std::uint64_t seed = 0;
};

// Sparse subspace clustering of candidate rows.
struct SscParams {
    double lambda1 = 0.1;   // L1 trade-off; dimensionless when coherence-scaled
    double gamma = 2.0;     // outlier threshold relative to the cohort median L1 norm
    int num_clusters = 1;   // K
    double solver_tol = 1e-8;
    int max_iter = 10000;   // coordinate-descent sweeps per point
    // Scale the per-point penalty by max_j |<x_i, x_j>| so lambda1 does not
    // depend on the candidate-set geometry.
    bool coherence_scaled_lambda = true;
    double residual_outlier_factor = 10.0;
    int kmeans_restarts = 20;
    std::uint64_t seed = 0;
    bool record_objectives = false; // keep per-sweep objective traces (tests)
};

// Group-sparse nonnegative regression of non-novel rows.
struct GroupFitParams {
    double lambda2 = 0.01;
    double tol = 1e-9;      // proximal-gradient fixed-point tolerance
    int max_iter = 5000;
    bool record_objectives = false;
};

// Full five-step run. Per-stage seeds are derived from the master seed, so a
// single integer reproduces the whole pipeline.
struct PipelineParams {
    CandidateParams candidates{.projections = 0}; // 0 -> 100*K
    SscParams ssc;
    GroupFitParams fit;
    std::uint64_t seed = 1;
    int threads = 0; // 0 -> hardware concurrency
};

} // namespace topicgeo
