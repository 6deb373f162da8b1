#pragma once

#include <stdexcept>
#include <string>

namespace topicgeo {

// Base class for recoverable pipeline failures. Each subclass carries a
// stable short name; the CLI prints it and exits with code 3.
class PipelineError : public std::runtime_error {
public:
    PipelineError(std::string name, const std::string& what)
        : std::runtime_error(what), name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

// A word row with zero total count reached a stage that needs unit row sums.
class ZeroRowError : public PipelineError {
public:
    explicit ZeroRowError(int word)
        : PipelineError("ZeroRow",
                        "word row " + std::to_string(word) + " has zero sum; prune the vocabulary first"),
          word_(word) {}
    int word() const noexcept { return word_; }

private:
    int word_;
};

// An iterative solver failed to reach its tolerance within the iteration cap.
class NoConvergenceError : public PipelineError {
public:
    NoConvergenceError(int index, double residual, double tol)
        : PipelineError("NoConvergence",
                        "solver for point " + std::to_string(index) + " stopped at residual " +
                            std::to_string(residual) + " > tol " + std::to_string(tol)),
          index_(index) {}
    int index() const noexcept { return index_; }

private:
    int index_;
};

class AllOutliersError : public PipelineError {
public:
    AllOutliersError()
        : PipelineError("AllOutliers",
                        "every candidate was flagged as an outlier; revisit delta/lambda1") {}
};

class TooFewInliersError : public PipelineError {
public:
    TooFewInliersError(int inliers, int k, const std::string& detail = "")
        : PipelineError("TooFewInliers",
                        std::to_string(inliers) + " usable candidates for " + std::to_string(k) +
                            " clusters" + (detail.empty() ? "" : ": " + detail)) {}
};

class DisconnectedDegenerateError : public PipelineError {
public:
    explicit DisconnectedDegenerateError(int index)
        : PipelineError("DisconnectedDegenerate",
                        "inlier " + std::to_string(index) + " has zero affinity degree") {}
};

class EmptyColumnError : public PipelineError {
public:
    explicit EmptyColumnError(int topic)
        : PipelineError("EmptyColumn",
                        "estimated topic column " + std::to_string(topic) + " sums to zero"),
          topic_(topic) {}
    int topic() const noexcept { return topic_; }

private:
    int topic_;
};

class DegenerateThetaError : public PipelineError {
public:
    explicit DegenerateThetaError(int retries)
        : PipelineError("DegenerateTheta",
                        "document matrix still has zero word rows after " +
                            std::to_string(retries) + " theta redraws") {}
};

class ShapeMismatchError : public PipelineError {
public:
    explicit ShapeMismatchError(const std::string& what)
        : PipelineError("ShapeMismatch", what) {}
};

class EmptyAfterPruneError : public PipelineError {
public:
    EmptyAfterPruneError() : PipelineError("EmptyAfterPrune", "no words survive pruning") {}
};

// Corpus/file parsing failures.
class MalformedHeaderError : public PipelineError {
public:
    explicit MalformedHeaderError(const std::string& what)
        : PipelineError("MalformedHeader", what) {}
};

class IndexOutOfRangeError : public PipelineError {
public:
    IndexOutOfRangeError(std::size_t line, const std::string& what)
        : PipelineError("IndexOutOfRange", "line " + std::to_string(line) + ": " + what) {}
};

class CountNonPositiveError : public PipelineError {
public:
    explicit CountNonPositiveError(std::size_t line)
        : PipelineError("CountNonPositive",
                        "line " + std::to_string(line) + ": count must be positive") {}
};

class VocabSizeMismatchError : public PipelineError {
public:
    VocabSizeMismatchError(int expected, int got)
        : PipelineError("VocabSizeMismatch",
                        "vocabulary has " + std::to_string(got) + " terms, header says " +
                            std::to_string(expected)) {}
};

class IoError : public PipelineError {
public:
    explicit IoError(const std::string& what) : PipelineError("IoFailure", what) {}
};

} // namespace topicgeo
