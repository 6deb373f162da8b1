#pragma once

#include <istream>
#include <string>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "topicgeo/group_regression.hpp"
#include "topicgeo/matrix.hpp"

namespace topicgeo {

struct Vocabulary {
    std::vector<std::string> terms;
    std::unordered_map<std::string, int> index;

    static Vocabulary from_terms(std::vector<std::string> terms);
    int size() const { return static_cast<int>(terms.size()); }
};

// "w000001"-style terms for generated corpora.
Vocabulary synthetic_vocabulary(int vocab_size, const std::string& prefix = "w");

struct PruneRules {
    std::unordered_set<std::string> stopwords;
    std::int64_t min_term_count = 5; // total occurrences across the corpus
    int min_doc_count = 5;           // documents the word appears in
    bool drop_numeric_and_single_char = true;
};

struct PruneReport {
    std::vector<std::string> stopword_dropped;
    std::vector<std::string> numeric_or_short_dropped;
    std::vector<std::string> low_count_dropped;
    std::vector<std::string> low_doc_count_dropped;

    std::size_t total_dropped() const {
        return stopword_dropped.size() + numeric_or_short_dropped.size() +
               low_count_dropped.size() + low_doc_count_dropped.size();
    }
};

// UCI bag-of-words reader: three header lines (D, W, NNZ) followed by NNZ
// lines of "docID wordID count", all 1-based. The vocabulary file holds one
// term per line. Throws MalformedHeaderError, IndexOutOfRangeError,
// CountNonPositiveError, or VocabSizeMismatchError.
std::pair<CountMatrix, Vocabulary> read_uci_bow(const std::string& docword_path,
                                                const std::string& vocab_path);

// Exact inverse of read_uci_bow (doc-major triplets).
void write_uci_bow(const CountMatrix& x, const Vocabulary& vocab,
                   const std::string& docword_path, const std::string& vocab_path);

// Removes stopwords (and numeric/single-character terms when flagged) first,
// then words under the count thresholds; reindexes densely. Documents are
// never dropped, so the transform is idempotent. Throws EmptyAfterPruneError.
std::tuple<CountMatrix, Vocabulary, PruneReport> prune(const CountMatrix& x,
                                                       const Vocabulary& vocab,
                                                       const PruneRules& rules);

// TSV with a header line and one row per word: term, then K probabilities
// printed with enough digits to round-trip exactly.
void write_matrix_tsv(const Eigen::MatrixXd& matrix, const std::vector<std::string>& row_names,
                      const std::string& path);
std::pair<Eigen::MatrixXd, std::vector<std::string>> read_matrix_tsv(const std::string& path);

// Full estimate TSV plus a per-topic top-N summary in descending probability
// (ties broken by word index).
void write_topics(const TopicEstimate& est, const Vocabulary& vocab,
                  const std::string& tsv_path, const std::string& summary_path, int top_n = 5);

// One term per line.
std::unordered_set<std::string> load_stopwords(const std::string& path);

// Convenience converter: one document per line, whitespace tokens, ASCII
// lowercasing. Vocabulary is ordered by first appearance.
std::pair<CountMatrix, Vocabulary> corpus_from_lines(std::istream& in);

} // namespace topicgeo
