#pragma once

#include <cstdint>
#include <vector>

#include "topicgeo/ground_truth.hpp"
#include "topicgeo/matrix.hpp"

namespace topicgeo {

// Swimmer image corpus: a fixed torso plus four limbs, each in one of four
// positions, on a 32x32 grid. The 256 clean images (all position
// combinations) are normalized to pixel distributions and each document
// samples words_per_doc iid pixels. The 16 single-limb positions are the
// ground-truth topics; their segments are pairwise disjoint, so each owns all
// of its pixels as novel words.
struct SwimmerGeometry {
    int image_side = 32;
    int torso_row = 10, torso_col = 14;  // top-left corner
    int torso_height = 12, torso_width = 4;
    int limb_length = 6;
};

struct SwimmerSpec {
    int words_per_doc = 200; // N
    double body_value = 10.0;
    double background_value = 1.0;
    std::uint64_t seed = 1;
    SwimmerGeometry geometry;
};

struct SwimmerData {
    GroundTruth gt;               // K = 16 topics, one per limb position
    CountMatrix counts;           // W x 256 sampled corpus
    Eigen::MatrixXd clean_images; // W x 256 column-stochastic distributions
};

// Topic k = 4 * limb + position; limbs ordered left arm, right arm, left leg,
// right leg. Throws std::invalid_argument when the geometry makes segments
// overlap or leave the grid.
SwimmerData generate_swimmer(const SwimmerSpec& spec, int threads = 1);

// Pixel index sets of the 16 limb segments for a given geometry.
std::vector<std::vector<int>> swimmer_limb_segments(const SwimmerGeometry& geometry);

// Pixel indices of the torso bar.
std::vector<int> swimmer_torso(const SwimmerGeometry& geometry);

} // namespace topicgeo
