#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace brandgraph {

enum class PostType { photo, video, link, status };
enum class EventKind { like, comment, comment_reply, share };

std::string_view to_string(PostType t);
std::string_view to_string(EventKind k);
std::optional<PostType> post_type_from(std::string_view s);
std::optional<EventKind> event_kind_from(std::string_view s);

struct PostRecord {
  std::string post_id;
  PostType post_type = PostType::photo;
  std::int64_t created_at = 0;  // Unix seconds, UTC
  std::string text;
  std::optional<std::string> permalink;

  bool operator==(const PostRecord&) const = default;
};

struct UserRecord {
  std::string user_id;
  bool is_page_owner = false;

  bool operator==(const UserRecord&) const = default;
};

struct EngagementEvent {
  std::string user_id;
  std::string post_id;
  EventKind kind = EventKind::like;
  std::uint64_t count = 1;

  bool operator==(const EngagementEvent&) const = default;
};

/// One brand page's activity export: roster, posts and typed engagement
/// events plus page metadata. Valid datasets satisfy referential
/// integrity, unique ids, at most one page owner, at most 999 posts and
/// at most one event per (user, post, kind).
struct PageDataset {
  std::string page_id;
  std::string country;
  std::string language;
  std::string culture_label;
  std::int64_t window_start = 0;
  std::int64_t window_end = 0;
  std::vector<PostRecord> posts;
  std::vector<UserRecord> users;
  std::vector<EngagementEvent> events;

  const UserRecord* page_owner() const;

  bool operator==(const PageDataset&) const = default;
};

struct DatasetStats {
  std::size_t n_posts = 0;
  std::size_t n_users = 0;
  std::size_t n_events = 0;
  std::uint64_t total_engagements = 0;

  bool operator==(const DatasetStats&) const = default;
};

inline constexpr std::size_t kMaxPostsPerDataset = 999;

/// Parses a dataset directory (meta.json, posts.tsv, users.tsv,
/// events.tsv). Repeated (user, post, kind) rows merge by summing counts.
/// Events dated outside [window_start, window_end] append a warning when
/// `warnings` is given; they are never an error.
///
/// Throws Error with codes MissingFile, MalformedRow, DuplicateId,
/// ReferentialIntegrity, PostLimitExceeded or IoError.
PageDataset parse_page_dataset(const std::filesystem::path& dir,
                               std::vector<std::string>* warnings = nullptr);

DatasetStats dataset_stats(const PageDataset& ds);

/// Checks every PageDataset invariant; throws the matching Error.
void validate_dataset(const PageDataset& ds);

/// Writes the canonical four-file layout. write is the inverse of parse:
/// parse_page_dataset(write_page_dataset(ds)) == ds for valid datasets,
/// and a second write of the re-parsed dataset is byte-identical.
void write_page_dataset(const PageDataset& ds, const std::filesystem::path& dir);

}  // namespace brandgraph
