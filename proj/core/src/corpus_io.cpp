#include "topicgeo/corpus_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "topicgeo/errors.hpp"

namespace topicgeo {

namespace {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

bool parse_int64(const std::string& s, std::int64_t& out) {
    const char* begin = s.data();
    const char* end = begin + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    return out;
}

std::string rstrip(std::string s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    return s;
}

bool is_numeric_or_single_char(const std::string& term) {
    if (term.size() <= 1) return true;
    return std::all_of(term.begin(), term.end(), [](unsigned char c) {
        return std::isdigit(c) != 0 || c == '.' || c == ',' || c == '-' || c == '+';
    });
}

std::vector<std::string> read_term_lines(const std::string& path) {
    std::ifstream in = open_input(path);
    std::vector<std::string> terms;
    std::string line;
    while (std::getline(in, line)) {
        line = rstrip(line);
        if (!line.empty()) terms.push_back(line);
    }
    return terms;
}

} // namespace

Vocabulary Vocabulary::from_terms(std::vector<std::string> term_list) {
    Vocabulary v;
    v.terms = std::move(term_list);
    for (std::size_t i = 0; i < v.terms.size(); ++i) {
        if (!v.index.emplace(v.terms[i], static_cast<int>(i)).second)
            throw std::invalid_argument("Vocabulary: duplicate term '" + v.terms[i] + "'");
    }
    return v;
}

Vocabulary synthetic_vocabulary(int vocab_size, const std::string& prefix) {
    std::vector<std::string> terms;
    terms.reserve(static_cast<std::size_t>(vocab_size));
    char buf[32];
    for (int w = 0; w < vocab_size; ++w) {
        std::snprintf(buf, sizeof(buf), "%s%06d", prefix.c_str(), w);
        terms.emplace_back(buf);
    }
    return Vocabulary::from_terms(std::move(terms));
}

std::pair<CountMatrix, Vocabulary> read_uci_bow(const std::string& docword_path,
                                                const std::string& vocab_path) {
    std::ifstream in = open_input(docword_path);

    std::int64_t num_docs = 0, num_words = 0, nnz = 0;
    std::string line;
    std::size_t line_no = 0;
    for (std::int64_t* field : {&num_docs, &num_words, &nnz}) {
        if (!std::getline(in, line))
            throw MalformedHeaderError("expected three header lines (D, W, NNZ)");
        ++line_no;
        if (!parse_int64(rstrip(line), *field) || *field < 0)
            throw MalformedHeaderError("bad header line " + std::to_string(line_no) + ": '" +
                                       line + "'");
    }
    if (num_docs < 1 || num_words < 1)
        throw MalformedHeaderError("header requires D >= 1 and W >= 1");

    std::vector<Triplet> triplets;
    triplets.reserve(static_cast<std::size_t>(nnz));
    std::int64_t seen = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        std::istringstream fields(line);
        std::int64_t doc = 0, word = 0, count = 0;
        if (!(fields >> doc >> word >> count))
            throw MalformedHeaderError("unparsable triplet at line " + std::to_string(line_no));
        ++seen;
        if (doc < 1 || doc > num_docs || word < 1 || word > num_words)
            throw IndexOutOfRangeError(line_no, "doc " + std::to_string(doc) + ", word " +
                                                    std::to_string(word));
        if (count < 1) throw CountNonPositiveError(line_no);
        triplets.push_back({static_cast<int>(word - 1), static_cast<int>(doc - 1), count});
    }
    if (seen != nnz)
        throw MalformedHeaderError("header promises " + std::to_string(nnz) +
                                   " entries, found " + std::to_string(seen));

    std::vector<std::string> terms = read_term_lines(vocab_path);
    if (static_cast<std::int64_t>(terms.size()) != num_words)
        throw VocabSizeMismatchError(static_cast<int>(num_words),
                                     static_cast<int>(terms.size()));

    return {CountMatrix(static_cast<int>(num_words), static_cast<int>(num_docs),
                        std::move(triplets)),
            Vocabulary::from_terms(std::move(terms))};
}

void write_uci_bow(const CountMatrix& x, const Vocabulary& vocab,
                   const std::string& docword_path, const std::string& vocab_path) {
    if (vocab.size() != x.vocab_size())
        throw VocabSizeMismatchError(x.vocab_size(), vocab.size());

    std::vector<Triplet> triplets = x.to_triplets();
    std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
        return a.doc != b.doc ? a.doc < b.doc : a.word < b.word;
    });

    std::ofstream out = open_output(docword_path);
    out << x.num_docs() << '\n' << x.vocab_size() << '\n' << triplets.size() << '\n';
    for (const Triplet& t : triplets)
        out << t.doc + 1 << ' ' << t.word + 1 << ' ' << t.count << '\n';
    if (!out) throw IoError("failed writing " + docword_path);

    std::ofstream vout = open_output(vocab_path);
    for (const std::string& term : vocab.terms) vout << term << '\n';
    if (!vout) throw IoError("failed writing " + vocab_path);
}

std::tuple<CountMatrix, Vocabulary, PruneReport> prune(const CountMatrix& x,
                                                       const Vocabulary& vocab,
                                                       const PruneRules& rules) {
    if (vocab.size() != x.vocab_size())
        throw VocabSizeMismatchError(x.vocab_size(), vocab.size());

    PruneReport report;
    std::vector<int> new_id(static_cast<std::size_t>(x.vocab_size()), -1);
    std::vector<std::string> kept_terms;

    for (int w = 0; w < x.vocab_size(); ++w) {
        const std::string& term = vocab.terms[static_cast<std::size_t>(w)];
        // Stopword and lexical filters first, then the count thresholds.
        if (rules.stopwords.count(term) != 0) {
            report.stopword_dropped.push_back(term);
            continue;
        }
        if (rules.drop_numeric_and_single_char && is_numeric_or_single_char(term)) {
            report.numeric_or_short_dropped.push_back(term);
            continue;
        }
        if (x.row_sum(w) < rules.min_term_count) {
            report.low_count_dropped.push_back(term);
            continue;
        }
        if (static_cast<int>(x.row(w).size()) < rules.min_doc_count) {
            report.low_doc_count_dropped.push_back(term);
            continue;
        }
        new_id[static_cast<std::size_t>(w)] = static_cast<int>(kept_terms.size());
        kept_terms.push_back(term);
    }
    if (kept_terms.empty()) throw EmptyAfterPruneError();

    std::vector<Triplet> triplets;
    for (int w = 0; w < x.vocab_size(); ++w) {
        const int nw = new_id[static_cast<std::size_t>(w)];
        if (nw < 0) continue;
        for (const auto& [d, c] : x.row(w)) triplets.push_back({nw, d, c});
    }
    return {CountMatrix(static_cast<int>(kept_terms.size()), x.num_docs(), std::move(triplets)),
            Vocabulary::from_terms(std::move(kept_terms)), std::move(report)};
}

void write_matrix_tsv(const Eigen::MatrixXd& matrix, const std::vector<std::string>& row_names,
                      const std::string& path) {
    if (static_cast<Eigen::Index>(row_names.size()) != matrix.rows())
        throw ShapeMismatchError("write_matrix_tsv: one name per row required");
    std::ofstream out = open_output(path);
    out << "word";
    for (Eigen::Index k = 0; k < matrix.cols(); ++k) out << "\ttopic_" << k;
    out << '\n';
    for (Eigen::Index w = 0; w < matrix.rows(); ++w) {
        out << row_names[static_cast<std::size_t>(w)];
        for (Eigen::Index k = 0; k < matrix.cols(); ++k)
            out << '\t' << format_double(matrix(w, k));
        out << '\n';
    }
    if (!out) throw IoError("failed writing " + path);
}

std::pair<Eigen::MatrixXd, std::vector<std::string>> read_matrix_tsv(const std::string& path) {
    std::ifstream in = open_input(path);
    std::string line;
    if (!std::getline(in, line)) throw MalformedHeaderError(path + ": empty file");
    std::size_t cols = 0;
    {
        std::istringstream header(line);
        std::string tok;
        while (header >> tok) ++cols;
    }
    if (cols < 2) throw MalformedHeaderError(path + ": header needs at least one topic column");
    const std::size_t k = cols - 1;

    std::vector<std::string> names;
    std::vector<double> values;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        std::istringstream fields(line);
        std::string name;
        if (!(fields >> name))
            throw MalformedHeaderError(path + ": bad row at line " + std::to_string(line_no));
        names.push_back(name);
        for (std::size_t c = 0; c < k; ++c) {
            double v = 0.0;
            if (!(fields >> v))
                throw MalformedHeaderError(path + ": expected " + std::to_string(k) +
                                           " values at line " + std::to_string(line_no));
            values.push_back(v);
        }
    }
    Eigen::MatrixXd m(static_cast<Eigen::Index>(names.size()), static_cast<Eigen::Index>(k));
    for (std::size_t w = 0; w < names.size(); ++w)
        for (std::size_t c = 0; c < k; ++c)
            m(static_cast<Eigen::Index>(w), static_cast<Eigen::Index>(c)) = values[w * k + c];
    return {std::move(m), std::move(names)};
}

void write_topics(const TopicEstimate& est, const Vocabulary& vocab,
                  const std::string& tsv_path, const std::string& summary_path, int top_n) {
    if (vocab.size() != static_cast<int>(est.beta_hat.rows()))
        throw VocabSizeMismatchError(static_cast<int>(est.beta_hat.rows()), vocab.size());
    write_matrix_tsv(est.beta_hat, vocab.terms, tsv_path);

    std::ofstream out = open_output(summary_path);
    std::vector<int> order(static_cast<std::size_t>(est.beta_hat.rows()));
    for (int k = 0; k < est.k; ++k) {
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            const double pa = est.beta_hat(a, k), pb = est.beta_hat(b, k);
            return pa != pb ? pa > pb : a < b; // descending, ties by word index
        });
        out << "topic_" << k << '\n';
        const int limit = std::min<int>(top_n, static_cast<int>(order.size()));
        for (int i = 0; i < limit; ++i)
            out << "  " << vocab.terms[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])]
                << '\t' << format_double(est.beta_hat(order[static_cast<std::size_t>(i)], k))
                << '\n';
    }
    if (!out) throw IoError("failed writing " + summary_path);
}

std::unordered_set<std::string> load_stopwords(const std::string& path) {
    const std::vector<std::string> terms = read_term_lines(path);
    return {terms.begin(), terms.end()};
}

std::pair<CountMatrix, Vocabulary> corpus_from_lines(std::istream& in) {
    std::vector<std::string> terms;
    std::unordered_map<std::string, int> index;
    std::vector<Triplet> triplets;
    std::string line;
    int doc = 0;
    while (std::getline(in, line)) {
        std::istringstream words(line);
        std::unordered_map<int, std::int64_t> counts;
        std::string tok;
        while (words >> tok) {
            std::transform(tok.begin(), tok.end(), tok.begin(),
                           [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
            auto [it, fresh] = index.emplace(tok, static_cast<int>(terms.size()));
            if (fresh) terms.push_back(tok);
            ++counts[it->second];
        }
        for (const auto& [w, c] : counts) triplets.push_back({w, doc, c});
        ++doc;
    }
    if (doc == 0 || terms.empty())
        throw MalformedHeaderError("raw corpus: no documents or no tokens");
    return {CountMatrix(static_cast<int>(terms.size()), doc, std::move(triplets)),
            Vocabulary::from_terms(std::move(terms))};
}

} // namespace topicgeo
