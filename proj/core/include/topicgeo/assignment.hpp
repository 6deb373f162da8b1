#pragma once

#include <Eigen/Dense>
#include <vector>

namespace topicgeo {

// Exact minimum-cost assignment on a square cost matrix (Kuhn-Munkres with
// potentials, O(n^3)). Returns col_of_row: row i is matched to column
// col_of_row[i].
std::vector<int> solve_assignment(const Eigen::MatrixXd& cost);

} // namespace topicgeo
