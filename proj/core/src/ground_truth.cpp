#include "topicgeo/ground_truth.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "topicgeo/matrix.hpp"

namespace topicgeo {

namespace {

void check_column_stochastic(const Eigen::MatrixXd& m, const char* name) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        double sum = 0.0, comp = 0.0;
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            const double v = m(i, j);
            if (v < 0.0)
                throw std::invalid_argument(std::string(name) + ": negative entry in column " +
                                            std::to_string(j));
            const double y = v - comp;
            const double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        if (std::abs(sum - 1.0) > 1e-12)
            throw std::invalid_argument(std::string(name) + ": column " + std::to_string(j) +
                                        " sums to " + std::to_string(sum));
    }
}

} // namespace

void GroundTruth::validate() const {
    const int w_count = vocab_size();
    const int k_count = topic_count();
    if (w_count < 1 || k_count < 1 || theta.cols() < 1)
        throw std::invalid_argument("GroundTruth: empty matrices");
    if (theta.rows() != k_count)
        throw std::invalid_argument("GroundTruth: beta/theta topic dimension mismatch");
    if (static_cast<int>(novel_sets.size()) != k_count)
        throw std::invalid_argument("GroundTruth: need one novel set per topic");

    check_column_stochastic(beta, "beta");
    check_column_stochastic(theta, "theta");

    std::vector<int> owner(static_cast<std::size_t>(w_count), -2);
    std::size_t novel_total = 0;
    for (int k = 0; k < k_count; ++k) {
        for (int w : novel_sets[static_cast<std::size_t>(k)]) {
            if (w < 0 || w >= w_count)
                throw std::invalid_argument("GroundTruth: novel index out of range");
            if (owner[static_cast<std::size_t>(w)] != -2)
                throw std::invalid_argument("GroundTruth: word " + std::to_string(w) +
                                            " in two sets");
            owner[static_cast<std::size_t>(w)] = k;
            ++novel_total;
            // Separability: exactly one nonzero, in column k.
            if (!(beta(w, k) > 0.0))
                throw std::invalid_argument("GroundTruth: novel word " + std::to_string(w) +
                                            " has zero weight in its topic");
            for (int j = 0; j < k_count; ++j)
                if (j != k && beta(w, j) != 0.0)
                    throw std::invalid_argument("GroundTruth: novel word " + std::to_string(w) +
                                                " leaks into topic " + std::to_string(j));
        }
    }
    for (int w : non_novel) {
        if (w < 0 || w >= w_count)
            throw std::invalid_argument("GroundTruth: non-novel index out of range");
        if (owner[static_cast<std::size_t>(w)] != -2)
            throw std::invalid_argument("GroundTruth: word " + std::to_string(w) +
                                        " in two sets");
        owner[static_cast<std::size_t>(w)] = -1;
    }
    for (int w = 0; w < w_count; ++w)
        if (owner[static_cast<std::size_t>(w)] == -2)
            throw std::invalid_argument("GroundTruth: word " + std::to_string(w) +
                                        " in no set");
    if (novel_total != static_cast<std::size_t>(std::llround(rho * w_count)))
        throw std::invalid_argument("GroundTruth: novel count disagrees with rho");
}

} // namespace topicgeo
