#pragma once

#include <cstdint>
#include <utility>

#include "topicgeo/ground_truth.hpp"
#include "topicgeo/matrix.hpp"

namespace topicgeo {

// Synthetic separable corpus. Novel rows carry a single Uniform(0,1] entry;
// non-novel rows are uniform on the K-simplex; columns are then normalized.
// Theta columns are iid Dirichlet(alpha * 1). Every document draws
// words_per_doc iid words from its column of A = beta * theta.
struct SyntheticSpec {
    int vocab_size = 500;   // W
    int num_topics = 5;     // K
    int num_docs = 200;     // M
    int words_per_doc = 50; // N
    double rho = 0.2;       // novel fraction W1/W (floored to a multiple of K)
    double alpha = 0.1;
    std::uint64_t seed = 1;

    void validate() const;
};

// Deterministic for a fixed seed: every random draw comes from a sub-stream
// keyed by (seed, stage, integer index), so the beta realization and the
// per-document samples are independent of M and of thread count. Throws
// DegenerateThetaError when A keeps a zero word row after 10 theta redraws.
std::pair<GroundTruth, CountMatrix> generate_synthetic(const SyntheticSpec& spec,
                                                       int threads = 1);

} // namespace topicgeo
