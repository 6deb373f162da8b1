#include "topicgeo/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace topicgeo {

namespace detail {

double kahan_sum(const double* v, std::ptrdiff_t n) {
    double sum = 0.0, comp = 0.0;
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const double y = v[i] - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

} // namespace detail

CountMatrix::CountMatrix(int vocab_size, int num_docs, std::vector<Triplet> triplets)
    : vocab_size_(vocab_size), num_docs_(num_docs) {
    if (vocab_size < 1 || num_docs < 1)
        throw std::invalid_argument("CountMatrix: W and M must be >= 1");
    rows_.resize(static_cast<std::size_t>(vocab_size));
    row_sums_.assign(static_cast<std::size_t>(vocab_size), 0);

    std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
        return a.word != b.word ? a.word < b.word : a.doc < b.doc;
    });
    for (std::size_t i = 0; i < triplets.size(); ++i) {
        const Triplet& t = triplets[i];
        if (t.word < 0 || t.word >= vocab_size || t.doc < 0 || t.doc >= num_docs)
            throw std::invalid_argument("CountMatrix: entry index out of range");
        if (t.count < 0)
            throw std::invalid_argument("CountMatrix: negative count at word " +
                                        std::to_string(t.word));
        if (t.count == 0) continue;
        auto& row = rows_[static_cast<std::size_t>(t.word)];
        if (!row.empty() && row.back().first == t.doc) {
            row.back().second += t.count; // merge duplicate coordinates
        } else {
            row.emplace_back(t.doc, t.count);
        }
        row_sums_[static_cast<std::size_t>(t.word)] += t.count;
        total_ += t.count;
    }
    for (const auto& row : rows_) nnz_ += row.size();
}

std::vector<Triplet> CountMatrix::to_triplets() const {
    std::vector<Triplet> out;
    out.reserve(nnz_);
    for (int w = 0; w < vocab_size_; ++w)
        for (const auto& [d, c] : rows_[static_cast<std::size_t>(w)])
            out.push_back({w, d, c});
    return out;
}

bool CountMatrix::operator==(const CountMatrix& other) const {
    return vocab_size_ == other.vocab_size_ && num_docs_ == other.num_docs_ &&
           rows_ == other.rows_;
}

StochasticRows::StochasticRows(RowMatrix rows, RowKind kind)
    : rows_(std::move(rows)), kind_(kind) {
    const auto w = rows_.rows();
    const auto m = rows_.cols();
    if (w < 1 || m < 1) throw std::invalid_argument("StochasticRows: empty matrix");
    for (Eigen::Index i = 0; i < w; ++i) {
        const double* r = rows_.data() + i * m;
        for (Eigen::Index j = 0; j < m; ++j) {
            const double v = r[j];
            if (!(v >= 0.0 && v <= 1.0))
                throw std::invalid_argument("StochasticRows: entry outside [0,1] at row " +
                                            std::to_string(i));
        }
        const double sum = detail::kahan_sum(r, m);
        if (std::abs(sum - 1.0) > kRowSumTol)
            throw std::invalid_argument("StochasticRows: row " + std::to_string(i) +
                                        " sums to " + std::to_string(sum));
    }
}

} // namespace topicgeo
