#include "topicgeo/evaluate.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "topicgeo/assignment.hpp"
#include "topicgeo/errors.hpp"

namespace topicgeo {

EvalReport matched_error(const Eigen::MatrixXd& beta_hat, const Eigen::MatrixXd& beta,
                         double cos_threshold) {
    if (beta_hat.rows() != beta.rows() || beta_hat.cols() != beta.cols())
        throw ShapeMismatchError("matched_error: shapes differ");
    const int k = static_cast<int>(beta.cols());

    // Squared column distances: the optimal assignment then minimizes the
    // squared Frobenius norm of the matched difference.
    Eigen::MatrixXd cost(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            cost(i, j) = (beta_hat.col(i) - beta.col(j)).squaredNorm();
    const std::vector<int> col_of_row = solve_assignment(cost);

    EvalReport report;
    report.cos_threshold = cos_threshold;
    report.permutation.assign(static_cast<std::size_t>(k), -1);
    for (int i = 0; i < k; ++i)
        report.permutation[static_cast<std::size_t>(col_of_row[static_cast<std::size_t>(i)])] = i;

    double total = 0.0;
    for (int j = 0; j < k; ++j) {
        const int i = report.permutation[static_cast<std::size_t>(j)];
        const double sq = cost(i, j);
        total += sq;
        report.per_topic_l2.push_back(std::sqrt(sq));
        const double denom = beta_hat.col(i).norm() * beta.col(j).norm();
        const double cosine = denom > 0.0 ? beta_hat.col(i).dot(beta.col(j)) / denom : 0.0;
        report.matched_cosine.push_back(cosine);
        if (cosine >= cos_threshold) ++report.recovered_count;
    }
    report.frobenius_error = std::sqrt(total);
    return report;
}

int recovery_count(const Eigen::MatrixXd& beta_hat, const Eigen::MatrixXd& beta,
                   double cos_threshold) {
    return matched_error(beta_hat, beta, cos_threshold).recovered_count;
}

double cluster_purity(const NovelWordClustering& clustering,
                      const std::vector<std::vector<int>>& gt_novel_sets) {
    std::vector<std::vector<int>> sorted_truth = gt_novel_sets;
    for (auto& s : sorted_truth) std::sort(s.begin(), s.end());

    std::size_t clustered = 0;
    std::size_t agree = 0;
    for (const auto& cluster : clustering.clusters) {
        clustered += cluster.size();
        std::size_t best = 0;
        for (const auto& truth : sorted_truth) {
            std::size_t overlap = 0;
            for (int w : cluster)
                if (std::binary_search(truth.begin(), truth.end(), w)) ++overlap;
            best = std::max(best, overlap);
        }
        agree += best;
    }
    if (clustered == 0) throw std::invalid_argument("cluster_purity: empty clustering");
    return static_cast<double>(agree) / static_cast<double>(clustered);
}

std::string EvalReport::to_json() const {
    nlohmann::ordered_json j;
    j["frobenius_error"] = frobenius_error;
    j["permutation"] = permutation;
    j["per_topic_l2"] = per_topic_l2;
    j["matched_cosine"] = matched_cosine;
    j["recovered_count"] = recovered_count;
    j["cos_threshold"] = cos_threshold;
    if (purity.has_value())
        j["purity"] = *purity;
    else
        j["purity"] = nullptr;
    return j.dump(2);
}

} // namespace topicgeo
