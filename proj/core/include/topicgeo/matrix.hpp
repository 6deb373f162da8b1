#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

namespace topicgeo {

// Row-major throughout: every stage works on word rows.
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct Triplet {
    int word = 0;
    int doc = 0;
    std::int64_t count = 0;
};

// Sparse W x M nonnegative word-document counts with cached row sums.
// Immutable after construction; safe to share across threads.
class CountMatrix {
public:
    using Entry = std::pair<int, std::int64_t>; // (doc, count), sorted by doc

    CountMatrix(int vocab_size, int num_docs, std::vector<Triplet> triplets);

    int vocab_size() const noexcept { return vocab_size_; }
    int num_docs() const noexcept { return num_docs_; }
    const std::vector<Entry>& row(int w) const { return rows_[static_cast<std::size_t>(w)]; }
    std::int64_t row_sum(int w) const { return row_sums_[static_cast<std::size_t>(w)]; }
    const std::vector<std::int64_t>& row_sums() const noexcept { return row_sums_; }
    std::size_t nnz() const noexcept { return nnz_; }
    std::int64_t total() const noexcept { return total_; }

    std::vector<Triplet> to_triplets() const; // word-major, doc-sorted

    bool operator==(const CountMatrix& other) const;

private:
    int vocab_size_;
    int num_docs_;
    std::vector<std::vector<Entry>> rows_;
    std::vector<std::int64_t> row_sums_;
    std::size_t nnz_ = 0;
    std::int64_t total_ = 0;
};

enum class RowKind { Empirical, Exact };

// Dense matrix whose rows are probability vectors over documents.
class StochasticRows {
public:
    StochasticRows(RowMatrix rows, RowKind kind);

    const RowMatrix& rows() const noexcept { return rows_; }
    RowKind kind() const noexcept { return kind_; }
    int word_count() const noexcept { return static_cast<int>(rows_.rows()); }
    int doc_count() const noexcept { return static_cast<int>(rows_.cols()); }

    static constexpr double kRowSumTol = 1e-12;

private:
    RowMatrix rows_;
    RowKind kind_;
};

namespace detail {
// Compensated summation; keeps the row-sum check meaningful at M ~ thousands.
double kahan_sum(const double* v, std::ptrdiff_t n);
} // namespace detail

} // namespace topicgeo
