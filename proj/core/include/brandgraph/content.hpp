#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "brandgraph/ingest.hpp"

namespace brandgraph {

/// Keyword rules for post classification. Theme patterns are matched
/// case-insensitively against word tokens; multi-word patterns must
/// appear as consecutive tokens. The "advertising" label is driven by
/// shop_domains alone: a post is advertising iff its text or permalink
/// links to a host ending in one of them.
struct Lexicon {
  /// (theme name, patterns), sorted by theme name, names unique.
  std::vector<std::pair<std::string, std::vector<std::string>>> themes;
  std::vector<std::string> shop_domains;
  std::map<std::string, std::set<std::string>> stopwords;  // language -> words
};

Lexicon default_lexicon();
Lexicon lexicon_from_json(const std::string& json_text);
Lexicon load_lexicon(const std::filesystem::path& path);

struct ThemeEvidence {
  std::string theme;
  std::string token;  // matched pattern or shop domain

  bool operator==(const ThemeEvidence&) const = default;
};

struct PostTheme {
  std::string post_id;
  std::set<std::string> labels;
  std::vector<ThemeEvidence> evidence;
};

struct KeywordCount {
  std::string token;
  std::size_t count = 0;

  bool operator==(const KeywordCount&) const = default;
};

struct CommunityTheme {
  std::uint32_t community_id = 0;
  std::string dominant_theme = "unlabeled";
  std::map<std::string, std::size_t> label_histogram;  // theme -> post count
  /// Every non-stopword token, ranked by frequency then token.
  std::vector<KeywordCount> top_keywords;
};

PostTheme classify_post(const PostRecord& post, const Lexicon& lex);

/// Aggregates one community's posts: dominant label (ties break
/// lexicographically, none -> "unlabeled") and the stopword-filtered
/// keyword histogram. An unknown language falls back to no stopwords and
/// appends a warning.
CommunityTheme community_theme(std::span<const PostRecord> community_posts,
                               std::span<const PostTheme> labels, const Lexicon& lex,
                               const std::string& lang,
                               std::vector<std::string>* warnings = nullptr);

/// Lowercased Unicode word tokens. Letters and digits of the Latin
/// (including accented), Greek, Cyrillic, Hebrew and Arabic ranges count
/// as word characters; anything else separates tokens.
std::vector<std::string> tokenize_words(std::string_view utf8_text);

}  // namespace brandgraph
