#include "brandgraph/synth.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>

#include "brandgraph/error.hpp"
#include "brandgraph/rng.hpp"
#include "brandgraph/text.hpp"
#include "json.hpp"

namespace brandgraph {

namespace {

// Window used by all generated datasets: H1 2015, UTC.
constexpr std::int64_t kWindowStart = 1420070400;  // 2015-01-01T00:00:00Z
constexpr std::int64_t kWindowEnd = 1435708799;    // 2015-06-30T23:59:59Z

std::int64_t spread_timestamp(std::size_t index, std::size_t total) {
  if (total <= 1) return kWindowStart;
  const std::int64_t span = kWindowEnd - kWindowStart;
  return kWindowStart + span * static_cast<std::int64_t>(index) /
                            static_cast<std::int64_t>(total - 1);
}

PostType post_type_cycle(std::size_t i) {
  // Mostly photos, mirroring typical brand-page exports.
  switch (i % 8) {
    case 5: return PostType::video;
    case 6: return PostType::link;
    case 7: return PostType::status;
    default: return PostType::photo;
  }
}

}  // namespace

PlantedResult synth_planted(const PlantedSpec& spec) {
  if (spec.n_blocks == 0 || spec.posts_per_block == 0 || spec.users_per_block == 0)
    throw Error(ErrorCode::InvalidSpec, "block counts must all be positive");
  if (!(spec.p_out >= 0.0 && spec.p_out < spec.p_in && spec.p_in <= 1.0))
    throw Error(ErrorCode::InvalidSpec, "need 0 <= p_out < p_in <= 1");
  const std::size_t n_posts = spec.n_blocks * spec.posts_per_block;
  if (n_posts > kMaxPostsPerDataset)
    throw Error(ErrorCode::InvalidSpec,
                "spec generates " + std::to_string(n_posts) + " posts; limit is 999");

  PlantedResult result;
  PageDataset& ds = result.dataset;
  ds.page_id = "planted-" + std::to_string(spec.seed);
  ds.country = "synthetic";
  ds.language = "en";
  ds.culture_label = "synthetic";
  ds.window_start = kWindowStart;
  ds.window_end = kWindowEnd;

  for (std::size_t b = 0; b < spec.n_blocks; ++b) {
    for (std::size_t j = 0; j < spec.posts_per_block; ++j) {
      PostRecord p;
      p.post_id = "p" + std::to_string(b) + "_" + std::to_string(j);
      p.post_type = post_type_cycle(b * spec.posts_per_block + j);
      p.created_at = spread_timestamp(b * spec.posts_per_block + j, n_posts);
      p.text = "block " + std::to_string(b) + " post " + std::to_string(j);
      ds.posts.push_back(std::move(p));
      result.ground_truth.push_back(
          {{NodeKind::post, ds.posts.back().post_id}, static_cast<std::uint32_t>(b)});
    }
  }
  for (std::size_t b = 0; b < spec.n_blocks; ++b) {
    for (std::size_t i = 0; i < spec.users_per_block; ++i) {
      UserRecord u;
      u.user_id = "u" + std::to_string(b) + "_" + std::to_string(i);
      ds.users.push_back(std::move(u));
      result.ground_truth.push_back(
          {{NodeKind::user, ds.users.back().user_id}, static_cast<std::uint32_t>(b)});
    }
  }

  Rng rng(spec.seed);
  for (std::size_t b = 0; b < spec.n_blocks; ++b) {
    for (std::size_t i = 0; i < spec.users_per_block; ++i) {
      const std::string& user = ds.users[b * spec.users_per_block + i].user_id;
      for (std::size_t pb = 0; pb < spec.n_blocks; ++pb) {
        for (std::size_t j = 0; j < spec.posts_per_block; ++j) {
          const double p = pb == b ? spec.p_in : spec.p_out;
          if (rng.next_double() < p) {
            ds.events.push_back(
                {user, ds.posts[pb * spec.posts_per_block + j].post_id,
                 EventKind::like, 1});
          }
        }
      }
    }
  }
  return result;
}

void write_truth_json(const PlantedResult& planted, const std::filesystem::path& dir) {
  nlohmann::json assignment;
  std::uint32_t n_blocks = 0;
  for (const auto& [node, block] : planted.ground_truth) {
    assignment[std::string(to_string(node.kind)) + ":" + node.id] = block;
    n_blocks = std::max(n_blocks, block + 1);
  }
  nlohmann::json j;
  j["n_blocks"] = n_blocks;
  j["assignment"] = std::move(assignment);

  std::ofstream out(dir / "truth.json", std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write truth.json");
  out << j.dump(2) << '\n';
  if (!out) throw Error(ErrorCode::IoError, "write failed for truth.json");
}

PageDataset synth_scale(const ScaleSpec& spec) {
  if (spec.n_posts == 0 || spec.n_posts > kMaxPostsPerDataset)
    throw Error(ErrorCode::InvalidSpec, "n_posts must be in [1, 999]");
  if (spec.n_users == 0)
    throw Error(ErrorCode::InvalidSpec, "n_users must be positive");
  if (spec.n_pairs < spec.n_users || spec.n_pairs > spec.n_users * spec.n_posts)
    throw Error(ErrorCode::InvalidSpec,
                "n_pairs must lie in [n_users, n_users * n_posts]");
  if (spec.total_engagements < spec.n_pairs)
    throw Error(ErrorCode::InvalidSpec, "total_engagements must be >= n_pairs");

  PageDataset ds;
  ds.page_id = spec.page_id;
  ds.country = spec.country;
  ds.language = spec.language;
  ds.culture_label = spec.culture_label;
  ds.window_start = kWindowStart;
  ds.window_end = kWindowEnd;

  ds.posts.reserve(spec.n_posts);
  for (std::size_t j = 0; j < spec.n_posts; ++j) {
    PostRecord p;
    p.post_id = "p" + std::to_string(j);
    p.post_type = post_type_cycle(j);
    p.created_at = spread_timestamp(j, spec.n_posts);
    p.text = "post " + std::to_string(j);
    ds.posts.push_back(std::move(p));
  }
  ds.users.reserve(spec.n_users);
  for (std::size_t i = 0; i < spec.n_users; ++i)
    ds.users.push_back({"u" + std::to_string(i), false});

  // Every user gets `base` distinct posts; a seeded selection of users
  // gets one more so the pair total is exact.
  const std::size_t base = spec.n_pairs / spec.n_users;
  const std::size_t remainder = spec.n_pairs % spec.n_users;
  Rng rng(spec.seed);
  std::vector<std::uint32_t> user_order(spec.n_users);
  std::iota(user_order.begin(), user_order.end(), 0);
  rng.shuffle(user_order);
  std::vector<std::size_t> quota(spec.n_users, base);
  for (std::size_t k = 0; k < remainder; ++k) ++quota[user_order[k]];

  ds.events.reserve(spec.n_pairs);
  std::vector<std::uint32_t> picks;
  for (std::size_t i = 0; i < spec.n_users; ++i) {
    const std::size_t want = quota[i];
    picks.clear();
    if (want >= spec.n_posts) {
      picks.resize(spec.n_posts);
      std::iota(picks.begin(), picks.end(), 0);
    } else {
      std::set<std::uint32_t> chosen;
      while (chosen.size() < want)
        chosen.insert(static_cast<std::uint32_t>(rng.next_below(spec.n_posts)));
      picks.assign(chosen.begin(), chosen.end());
    }
    for (std::uint32_t j : picks)
      ds.events.push_back({ds.users[i].user_id, ds.posts[j].post_id,
                           EventKind::like, 1});
  }

  // Spread the remaining engagement mass as extra counts on random events.
  for (std::uint64_t k = spec.total_engagements - spec.n_pairs; k > 0; --k)
    ++ds.events[rng.next_below(ds.events.size())].count;

  return ds;
}

}  // namespace brandgraph
