#pragma once

#include <Eigen/Dense>

#include "topicgeo/ground_truth.hpp"
#include "topicgeo/matrix.hpp"

namespace topicgeo {

// X_w / N_w per word row. Throws ZeroRowError if some row has zero total
// count; zero rows must be pruned (or routed around) upstream.
StochasticRows row_normalize(const CountMatrix& x);

// Row-normalized A = beta * theta. Rows of novel words of the same topic are
// identical (equal to the normalized theta row of that topic). Throws
// ZeroRowError on an identically-zero word row, which signals a degenerate
// theta draw.
StochasticRows exact_document_matrix(const GroundTruth& gt);

// Row sums of A = beta * theta; the exact-matrix analogue of the N_w counts.
Eigen::VectorXd exact_row_weights(const GroundTruth& gt);

} // namespace topicgeo
