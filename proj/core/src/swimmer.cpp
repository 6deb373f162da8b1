#include "topicgeo/swimmer.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "topicgeo/parallel.hpp"
#include "topicgeo/rng.hpp"

namespace topicgeo {

namespace {

constexpr int kLimbs = 4;
constexpr int kPositions = 4;
constexpr int kTopics = kLimbs * kPositions;
constexpr int kDocs = 256; // 4^4 position combinations

struct Offset {
    int dr, dc;
};

// Per-limb anchor corner of the torso and the four directions its segment
// can point (away from the torso).
struct LimbLayout {
    int anchor_r, anchor_c;
    Offset dirs[kPositions];
};

std::vector<LimbLayout> limb_layouts(const SwimmerGeometry& g) {
    const int top = g.torso_row;
    const int bottom = g.torso_row + g.torso_height - 1;
    const int left = g.torso_col;
    const int right = g.torso_col + g.torso_width - 1;
    return {
        {top, left, {{-1, 0}, {-1, -1}, {0, -1}, {1, -1}}},     // left arm
        {top, right, {{-1, 0}, {-1, 1}, {0, 1}, {1, 1}}},       // right arm
        {bottom, left, {{1, 0}, {1, -1}, {0, -1}, {-1, -1}}},   // left leg
        {bottom, right, {{1, 0}, {1, 1}, {0, 1}, {-1, 1}}},     // right leg
    };
}

} // namespace

std::vector<int> swimmer_torso(const SwimmerGeometry& g) {
    std::vector<int> pixels;
    for (int r = g.torso_row; r < g.torso_row + g.torso_height; ++r)
        for (int c = g.torso_col; c < g.torso_col + g.torso_width; ++c)
            pixels.push_back(r * g.image_side + c);
    return pixels;
}

std::vector<std::vector<int>> swimmer_limb_segments(const SwimmerGeometry& g) {
    std::vector<std::vector<int>> segments;
    segments.reserve(kTopics);
    for (const LimbLayout& limb : limb_layouts(g)) {
        for (int pos = 0; pos < kPositions; ++pos) {
            const Offset d = limb.dirs[pos];
            std::vector<int> pixels;
            for (int step = 1; step <= g.limb_length; ++step) {
                const int r = limb.anchor_r + step * d.dr;
                const int c = limb.anchor_c + step * d.dc;
                if (r < 0 || r >= g.image_side || c < 0 || c >= g.image_side)
                    throw std::invalid_argument("swimmer geometry: limb leaves the grid");
                pixels.push_back(r * g.image_side + c);
            }
            segments.push_back(std::move(pixels));
        }
    }
    // Segments and torso must be pairwise disjoint; separability depends on it.
    const std::vector<int> torso = swimmer_torso(g);
    std::set<int> seen(torso.begin(), torso.end());
    for (const auto& seg : segments)
        for (int p : seg)
            if (!seen.insert(p).second)
                throw std::invalid_argument("swimmer geometry: overlapping body pixels");
    return segments;
}

SwimmerData generate_swimmer(const SwimmerSpec& spec, int threads) {
    const SwimmerGeometry& g = spec.geometry;
    if (spec.words_per_doc < 1)
        throw std::invalid_argument("SwimmerSpec: words_per_doc must be positive");
    if (!(spec.body_value > 0.0) || !(spec.background_value >= 0.0))
        throw std::invalid_argument("SwimmerSpec: invalid pixel values");

    const int w_count = g.image_side * g.image_side;
    const auto segments = swimmer_limb_segments(g);
    const auto torso = swimmer_torso(g);

    SwimmerData data{
        .gt = {},
        .counts = CountMatrix(1, 1, {}),
        .clean_images = Eigen::MatrixXd::Constant(w_count, kDocs, spec.background_value),
    };

    // Image m shows limb l at position (m >> 2l) & 3.
    for (int m = 0; m < kDocs; ++m) {
        for (int p : torso) data.clean_images(p, m) = spec.body_value;
        for (int l = 0; l < kLimbs; ++l) {
            const int pos = (m >> (2 * l)) & 3;
            for (int p : segments[static_cast<std::size_t>(l * kPositions + pos)])
                data.clean_images(p, m) = spec.body_value;
        }
        data.clean_images.col(m) /= data.clean_images.col(m).sum();
    }

    // Ground truth: topic (l, pos) is uniform over its segment pixels.
    GroundTruth& gt = data.gt;
    gt.beta = Eigen::MatrixXd::Zero(w_count, kTopics);
    gt.theta = Eigen::MatrixXd::Zero(kTopics, kDocs);
    gt.novel_sets.assign(kTopics, {});
    for (int k = 0; k < kTopics; ++k) {
        const auto& seg = segments[static_cast<std::size_t>(k)];
        for (int p : seg) gt.beta(p, k) = 1.0 / static_cast<double>(seg.size());
        gt.novel_sets[static_cast<std::size_t>(k)] = seg;
        std::sort(gt.novel_sets[static_cast<std::size_t>(k)].begin(),
                  gt.novel_sets[static_cast<std::size_t>(k)].end());
    }
    for (int m = 0; m < kDocs; ++m)
        for (int l = 0; l < kLimbs; ++l)
            gt.theta(l * kPositions + ((m >> (2 * l)) & 3), m) = 1.0 / kLimbs;

    std::vector<char> is_novel(static_cast<std::size_t>(w_count), 0);
    for (const auto& seg : segments)
        for (int p : seg) is_novel[static_cast<std::size_t>(p)] = 1;
    for (int p = 0; p < w_count; ++p)
        if (!is_novel[static_cast<std::size_t>(p)]) gt.non_novel.push_back(p);
    gt.rho = static_cast<double>(kTopics * g.limb_length) / static_cast<double>(w_count);
    gt.alpha = Eigen::VectorXd();

    // Sample documents from the clean pixel distributions.
    std::vector<std::vector<std::pair<int, std::int64_t>>> doc_counts(kDocs);
    parallel_for(kDocs, threads, [&](std::size_t m) {
        std::vector<double> cdf(static_cast<std::size_t>(w_count));
        double acc = 0.0;
        for (int p = 0; p < w_count; ++p) {
            acc += data.clean_images(p, static_cast<Eigen::Index>(m));
            cdf[static_cast<std::size_t>(p)] = acc;
        }
        std::vector<std::int64_t> counts(static_cast<std::size_t>(w_count), 0);
        rng::Stream stream(rng::substream(spec.seed, "swimmer-doc", m));
        const double total = cdf.back();
        for (int t = 0; t < spec.words_per_doc; ++t) {
            const double u = stream.next_unit() * total;
            auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
            std::size_t idx = static_cast<std::size_t>(it - cdf.begin());
            if (idx >= counts.size()) idx = counts.size() - 1;
            ++counts[idx];
        }
        for (int p = 0; p < w_count; ++p)
            if (counts[static_cast<std::size_t>(p)] > 0)
                doc_counts[m].emplace_back(p, counts[static_cast<std::size_t>(p)]);
    });

    std::vector<Triplet> triplets;
    for (int m = 0; m < kDocs; ++m)
        for (const auto& [p, c] : doc_counts[static_cast<std::size_t>(m)])
            triplets.push_back({p, m, c});
    data.counts = CountMatrix(w_count, kDocs, std::move(triplets));
    return data;
}

} // namespace topicgeo
