#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "brandgraph/graph.hpp"
#include "brandgraph/ingest.hpp"

namespace brandgraph {

/// Planted-partition dataset: every user likes each same-block post with
/// probability p_in and each other-block post with probability p_out.
struct PlantedSpec {
  std::size_t n_blocks = 4;
  std::size_t posts_per_block = 10;
  std::size_t users_per_block = 25;
  double p_in = 0.9;
  double p_out = 0.01;
  std::uint64_t seed = 0;
};

struct PlantedResult {
  PageDataset dataset;
  /// Block id per generated node (posts and users).
  std::vector<std::pair<NodeId, std::uint32_t>> ground_truth;
};

/// Deterministic for a given spec. Throws InvalidSpec on bad parameters
/// (requires 0 <= p_out < p_in <= 1 and at most 999 posts).
PlantedResult synth_planted(const PlantedSpec& spec);

/// Writes `truth.json` next to a generated dataset.
void write_truth_json(const PlantedResult& planted, const std::filesystem::path& dir);

/// Dataset with exact headline counts: n_posts posts, n_users users who
/// all engage, exactly n_pairs distinct (user, post) pairs and
/// total_engagements summed event counts. Used to reproduce published
/// graph shapes at full scale.
struct ScaleSpec {
  std::size_t n_posts = 0;
  std::size_t n_users = 0;
  std::size_t n_pairs = 0;
  std::uint64_t total_engagements = 0;
  std::uint64_t seed = 0;
  std::string page_id = "synthetic-page";
  std::string country = "synthetic";
  std::string language = "en";
  std::string culture_label = "synthetic";
};

PageDataset synth_scale(const ScaleSpec& spec);

}  // namespace brandgraph
