#include "topicgeo/normalize.hpp"

#include "topicgeo/errors.hpp"

namespace topicgeo {

StochasticRows row_normalize(const CountMatrix& x) {
    RowMatrix rows = RowMatrix::Zero(x.vocab_size(), x.num_docs());
    for (int w = 0; w < x.vocab_size(); ++w) {
        const std::int64_t n_w = x.row_sum(w);
        if (n_w == 0) throw ZeroRowError(w);
        const double inv = 1.0 / static_cast<double>(n_w);
        for (const auto& [d, c] : x.row(w)) rows(w, d) = static_cast<double>(c) * inv;
    }
    return StochasticRows(std::move(rows), RowKind::Empirical);
}

StochasticRows exact_document_matrix(const GroundTruth& gt) {
    const Eigen::MatrixXd a = gt.beta * gt.theta;
    RowMatrix rows(a.rows(), a.cols());
    for (Eigen::Index w = 0; w < a.rows(); ++w) {
        const double sum = a.row(w).sum();
        if (!(sum > 0.0)) throw ZeroRowError(static_cast<int>(w));
        rows.row(w) = a.row(w) / sum;
    }
    return StochasticRows(std::move(rows), RowKind::Exact);
}

Eigen::VectorXd exact_row_weights(const GroundTruth& gt) {
    return (gt.beta * gt.theta).rowwise().sum();
}

} // namespace topicgeo
