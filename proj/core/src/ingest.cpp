#include "brandgraph/ingest.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "brandgraph/error.hpp"
#include "brandgraph/text.hpp"
#include "json.hpp"

namespace brandgraph {

namespace {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path,
                      const std::string& display_name) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec) || ec)
    throw Error(ErrorCode::MissingFile, display_name + " not found in dataset directory");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + display_name);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::IoError, "read failed for " + display_name);
  std::string content = buf.str();
  // UTF-8 byte order mark
  if (content.size() >= 3 && content.compare(0, 3, "\xEF\xBB\xBF") == 0)
    content.erase(0, 3);
  return content;
}

/// Splits file content into physical lines; tolerates CRLF and a missing
/// final newline.
std::vector<std::string_view> split_lines(std::string_view content) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= content.size()) {
    std::size_t nl = content.find('\n', start);
    std::string_view line = nl == std::string_view::npos
                                ? content.substr(start)
                                : content.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

/// Maps required column names to their index in the header. Unknown
/// columns are ignored; missing required ones are a MalformedRow at
/// line 1.
std::unordered_map<std::string, std::size_t> header_index(
    std::string_view header_line, const std::vector<std::string>& required,
    const std::string& file) {
  auto fields = split_tsv_line(header_line);
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < fields.size(); ++i)
    index.emplace(std::string(fields[i]), i);
  for (const auto& col : required) {
    if (!index.count(col))
      throw Error(ErrorCode::MalformedRow, file, 1,
                  "missing required column '" + col + "'");
  }
  return index;
}

std::string field_at(const std::vector<std::string_view>& fields,
                     std::size_t idx, const std::string& file, int line) {
  if (idx >= fields.size())
    throw Error(ErrorCode::MalformedRow, file, line, "row has too few fields");
  auto unescaped = tsv_unescape(fields[idx]);
  if (!unescaped)
    throw Error(ErrorCode::MalformedRow, file, line, "bad escape sequence");
  return *unescaped;
}

std::int64_t meta_timestamp(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string())
    throw Error(ErrorCode::MalformedRow, "meta.json", 1,
                std::string("missing or non-string key '") + key + "'");
  auto ts = parse_rfc3339(j[key].get<std::string>());
  if (!ts)
    throw Error(ErrorCode::MalformedRow, "meta.json", 1,
                std::string("key '") + key + "' is not an RFC 3339 timestamp");
  return *ts;
}

std::string meta_string(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string())
    throw Error(ErrorCode::MalformedRow, "meta.json", 1,
                std::string("missing or non-string key '") + key + "'");
  return j[key].get<std::string>();
}

}  // namespace

std::string_view to_string(PostType t) {
  switch (t) {
    case PostType::photo: return "photo";
    case PostType::video: return "video";
    case PostType::link: return "link";
    case PostType::status: return "status";
  }
  return "photo";
}

std::string_view to_string(EventKind k) {
  switch (k) {
    case EventKind::like: return "like";
    case EventKind::comment: return "comment";
    case EventKind::comment_reply: return "comment_reply";
    case EventKind::share: return "share";
  }
  return "like";
}

std::optional<PostType> post_type_from(std::string_view s) {
  if (s == "photo") return PostType::photo;
  if (s == "video") return PostType::video;
  if (s == "link") return PostType::link;
  if (s == "status") return PostType::status;
  return std::nullopt;
}

std::optional<EventKind> event_kind_from(std::string_view s) {
  if (s == "like") return EventKind::like;
  if (s == "comment") return EventKind::comment;
  if (s == "comment_reply") return EventKind::comment_reply;
  if (s == "share") return EventKind::share;
  return std::nullopt;
}

const UserRecord* PageDataset::page_owner() const {
  for (const auto& u : users)
    if (u.is_page_owner) return &u;
  return nullptr;
}

PageDataset parse_page_dataset(const std::filesystem::path& dir,
                               std::vector<std::string>* warnings) {
  PageDataset ds;

  // meta.json
  {
    std::string content = read_file(dir / "meta.json", "meta.json");
    json j;
    try {
      j = json::parse(content);
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::MalformedRow, "meta.json", 1,
                  std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object())
      throw Error(ErrorCode::MalformedRow, "meta.json", 1, "top level is not an object");
    ds.page_id = meta_string(j, "page_id");
    ds.country = meta_string(j, "country");
    ds.language = meta_string(j, "language");
    ds.culture_label = meta_string(j, "culture_label");
    ds.window_start = meta_timestamp(j, "window_start");
    ds.window_end = meta_timestamp(j, "window_end");
  }

  // posts.tsv
  std::unordered_set<std::string> post_ids;
  {
    const std::string file = "posts.tsv";
    std::string content = read_file(dir / file, file);
    auto lines = split_lines(content);
    if (lines.empty())
      throw Error(ErrorCode::MalformedRow, file, 1, "missing header row");
    auto cols = header_index(lines[0],
                             {"post_id", "post_type", "created_at", "text", "permalink"},
                             file);
    for (std::size_t li = 1; li < lines.size(); ++li) {
      const int line_no = static_cast<int>(li) + 1;
      if (lines[li].empty())
        throw Error(ErrorCode::MalformedRow, file, line_no, "empty row");
      auto fields = split_tsv_line(lines[li]);
      PostRecord p;
      p.post_id = field_at(fields, cols["post_id"], file, line_no);
      if (p.post_id.empty())
        throw Error(ErrorCode::MalformedRow, file, line_no, "empty post_id");
      std::string type_s = field_at(fields, cols["post_type"], file, line_no);
      auto type = post_type_from(type_s);
      if (!type)
        throw Error(ErrorCode::MalformedRow, file, line_no,
                    "unknown post_type '" + type_s + "'");
      p.post_type = *type;
      std::string ts = field_at(fields, cols["created_at"], file, line_no);
      auto created = parse_rfc3339(ts);
      if (!created)
        throw Error(ErrorCode::MalformedRow, file, line_no,
                    "created_at is not an RFC 3339 timestamp: '" + ts + "'");
      p.created_at = *created;
      p.text = field_at(fields, cols["text"], file, line_no);
      std::string link = field_at(fields, cols["permalink"], file, line_no);
      if (!link.empty()) p.permalink = std::move(link);

      if (!post_ids.insert(p.post_id).second)
        throw Error(ErrorCode::DuplicateId, file, line_no,
                    "duplicate post id '" + p.post_id + "'");
      if (warnings && (p.created_at < ds.window_start || p.created_at > ds.window_end))
        warnings->push_back(file + ":" + std::to_string(line_no) +
                            ": post '" + p.post_id + "' dated outside the page window");
      ds.posts.push_back(std::move(p));
    }
    if (ds.posts.size() > kMaxPostsPerDataset)
      throw Error(ErrorCode::PostLimitExceeded, file, 0,
                  "dataset has " + std::to_string(ds.posts.size()) +
                      " posts; the export format allows at most 999");
  }

  // users.tsv
  std::unordered_set<std::string> user_ids;
  {
    const std::string file = "users.tsv";
    std::string content = read_file(dir / file, file);
    auto lines = split_lines(content);
    if (lines.empty())
      throw Error(ErrorCode::MalformedRow, file, 1, "missing header row");
    auto cols = header_index(lines[0], {"user_id", "is_page_owner"}, file);
    bool owner_seen = false;
    for (std::size_t li = 1; li < lines.size(); ++li) {
      const int line_no = static_cast<int>(li) + 1;
      if (lines[li].empty())
        throw Error(ErrorCode::MalformedRow, file, line_no, "empty row");
      auto fields = split_tsv_line(lines[li]);
      UserRecord u;
      u.user_id = field_at(fields, cols["user_id"], file, line_no);
      if (u.user_id.empty())
        throw Error(ErrorCode::MalformedRow, file, line_no, "empty user_id");
      std::string flag = field_at(fields, cols["is_page_owner"], file, line_no);
      if (flag == "true") {
        u.is_page_owner = true;
      } else if (flag == "false") {
        u.is_page_owner = false;
      } else {
        throw Error(ErrorCode::MalformedRow, file, line_no,
                    "is_page_owner must be 'true' or 'false', got '" + flag + "'");
      }
      if (u.is_page_owner) {
        if (owner_seen)
          throw Error(ErrorCode::MalformedRow, file, line_no,
                      "more than one page owner");
        owner_seen = true;
      }
      if (!user_ids.insert(u.user_id).second)
        throw Error(ErrorCode::DuplicateId, file, line_no,
                    "duplicate user id '" + u.user_id + "'");
      ds.users.push_back(std::move(u));
    }
  }

  // events.tsv: duplicate (user, post, kind) rows merge by summing counts.
  {
    const std::string file = "events.tsv";
    std::string content = read_file(dir / file, file);
    auto lines = split_lines(content);
    if (lines.empty())
      throw Error(ErrorCode::MalformedRow, file, 1, "missing header row");
    auto cols = header_index(lines[0], {"user_id", "post_id", "kind", "count"}, file);
    std::map<std::tuple<std::string, std::string, EventKind>, std::size_t> seen;
    for (std::size_t li = 1; li < lines.size(); ++li) {
      const int line_no = static_cast<int>(li) + 1;
      if (lines[li].empty())
        throw Error(ErrorCode::MalformedRow, file, line_no, "empty row");
      auto fields = split_tsv_line(lines[li]);
      EngagementEvent e;
      e.user_id = field_at(fields, cols["user_id"], file, line_no);
      e.post_id = field_at(fields, cols["post_id"], file, line_no);
      std::string kind_s = field_at(fields, cols["kind"], file, line_no);
      auto kind = event_kind_from(kind_s);
      if (!kind)
        throw Error(ErrorCode::MalformedRow, file, line_no,
                    "unknown event kind '" + kind_s + "'");
      e.kind = *kind;
      std::string count_s = field_at(fields, cols["count"], file, line_no);
      try {
        std::size_t used = 0;
        long long v = std::stoll(count_s, &used);
        if (used != count_s.size() || v < 1)
          throw std::invalid_argument("range");
        e.count = static_cast<std::uint64_t>(v);
      } catch (const std::exception&) {
        throw Error(ErrorCode::MalformedRow, file, line_no,
                    "count must be a positive integer, got '" + count_s + "'");
      }
      if (!user_ids.count(e.user_id))
        throw Error(ErrorCode::ReferentialIntegrity, file, line_no,
                    "unknown user id '" + e.user_id + "'");
      if (!post_ids.count(e.post_id))
        throw Error(ErrorCode::ReferentialIntegrity, file, line_no,
                    "unknown post id '" + e.post_id + "'");

      auto key = std::make_tuple(e.user_id, e.post_id, e.kind);
      auto it = seen.find(key);
      if (it != seen.end()) {
        ds.events[it->second].count += e.count;
      } else {
        seen.emplace(std::move(key), ds.events.size());
        ds.events.push_back(std::move(e));
      }
    }
  }

  return ds;
}

DatasetStats dataset_stats(const PageDataset& ds) {
  DatasetStats s;
  s.n_posts = ds.posts.size();
  s.n_users = ds.users.size();
  s.n_events = ds.events.size();
  for (const auto& e : ds.events) s.total_engagements += e.count;
  return s;
}

void validate_dataset(const PageDataset& ds) {
  if (ds.posts.size() > kMaxPostsPerDataset)
    throw Error(ErrorCode::PostLimitExceeded,
                "dataset has " + std::to_string(ds.posts.size()) + " posts");
  std::unordered_set<std::string> post_ids, user_ids;
  for (const auto& p : ds.posts) {
    if (p.post_id.empty())
      throw Error(ErrorCode::MalformedRow, "empty post_id");
    if (p.permalink && p.permalink->empty())
      throw Error(ErrorCode::MalformedRow,
                  "permalink must be absent or non-empty (post '" + p.post_id + "')");
    if (!post_ids.insert(p.post_id).second)
      throw Error(ErrorCode::DuplicateId, "duplicate post id '" + p.post_id + "'");
  }
  bool owner_seen = false;
  for (const auto& u : ds.users) {
    if (u.user_id.empty())
      throw Error(ErrorCode::MalformedRow, "empty user_id");
    if (!user_ids.insert(u.user_id).second)
      throw Error(ErrorCode::DuplicateId, "duplicate user id '" + u.user_id + "'");
    if (u.is_page_owner) {
      if (owner_seen) throw Error(ErrorCode::MalformedRow, "more than one page owner");
      owner_seen = true;
    }
  }
  std::unordered_set<std::string> event_keys;
  for (const auto& e : ds.events) {
    if (e.count < 1)
      throw Error(ErrorCode::MalformedRow, "event count must be >= 1");
    if (!user_ids.count(e.user_id))
      throw Error(ErrorCode::ReferentialIntegrity, "unknown user id '" + e.user_id + "'");
    if (!post_ids.count(e.post_id))
      throw Error(ErrorCode::ReferentialIntegrity, "unknown post id '" + e.post_id + "'");
    std::string key = e.user_id + '\x1f' + e.post_id + '\x1f' +
                      std::string(to_string(e.kind));
    if (!event_keys.insert(std::move(key)).second)
      throw Error(ErrorCode::DuplicateId,
                  "duplicate event (" + e.user_id + ", " + e.post_id + ", " +
                      std::string(to_string(e.kind)) + ")");
  }
}

void write_page_dataset(const PageDataset& ds, const std::filesystem::path& dir) {
  validate_dataset(ds);

  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create directory " + dir.string());

  auto open = [&](const char* name) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, std::string("cannot write ") + name);
    return out;
  };

  {
    json j;
    j["page_id"] = ds.page_id;
    j["country"] = ds.country;
    j["language"] = ds.language;
    j["culture_label"] = ds.culture_label;
    j["window_start"] = format_rfc3339(ds.window_start);
    j["window_end"] = format_rfc3339(ds.window_end);
    auto out = open("meta.json");
    out << j.dump(2) << '\n';
    if (!out) throw Error(ErrorCode::IoError, "write failed for meta.json");
  }
  {
    auto out = open("posts.tsv");
    out << "post_id\tpost_type\tcreated_at\ttext\tpermalink\n";
    for (const auto& p : ds.posts) {
      out << tsv_escape(p.post_id) << '\t' << to_string(p.post_type) << '\t'
          << format_rfc3339(p.created_at) << '\t' << tsv_escape(p.text) << '\t'
          << tsv_escape(p.permalink.value_or("")) << '\n';
    }
    if (!out) throw Error(ErrorCode::IoError, "write failed for posts.tsv");
  }
  {
    auto out = open("users.tsv");
    out << "user_id\tis_page_owner\n";
    for (const auto& u : ds.users)
      out << tsv_escape(u.user_id) << '\t' << (u.is_page_owner ? "true" : "false")
          << '\n';
    if (!out) throw Error(ErrorCode::IoError, "write failed for users.tsv");
  }
  {
    auto out = open("events.tsv");
    out << "user_id\tpost_id\tkind\tcount\n";
    for (const auto& e : ds.events)
      out << tsv_escape(e.user_id) << '\t' << tsv_escape(e.post_id) << '\t'
          << to_string(e.kind) << '\t' << e.count << '\n';
    if (!out) throw Error(ErrorCode::IoError, "write failed for events.tsv");
  }
}

}  // namespace brandgraph
