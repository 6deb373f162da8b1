#pragma once

#include <vector>

#include "topicgeo/matrix.hpp"
#include "topicgeo/params.hpp"

namespace topicgeo {

// Candidate novel-word rows: indices are ascending word ids, hit_counts[i]
// is the number of projection rounds that selected indices[i] (diagnostic).
struct CandidateSet {
    std::vector<int> indices;
    std::vector<int> hit_counts;

    bool contains(int w) const;
};

// Randomized extreme-point search. For each of P directions drawn uniformly
// from the unit sphere, takes the rows maximizing and minimizing the
// projection (lowest index on ties) and admits every row within L1 distance
// delta of either. Rounds have independent per-round sub-seeds, so the result
// is identical for any thread count, and E grows monotonically in both P and
// delta for a fixed seed.
CandidateSet find_candidates(const StochasticRows& xt, const CandidateParams& params,
                             int threads = 1);

} // namespace topicgeo
