#include "brandgraph/content.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "brandgraph/error.hpp"
#include "json.hpp"

namespace brandgraph {

namespace {

// --- UTF-8 word segmentation -------------------------------------------

/// Decodes the codepoint at byte offset i, advancing i. Invalid bytes
/// decode as U+FFFD and advance by one.
char32_t decode_utf8(std::string_view s, std::size_t& i) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) {
    ++i;
    return b0;
  }
  auto cont = [&](std::size_t k) {
    return i + k < s.size() &&
           (static_cast<unsigned char>(s[i + k]) & 0xC0) == 0x80;
  };
  if ((b0 & 0xE0) == 0xC0 && cont(1)) {
    char32_t cp = (b0 & 0x1F) << 6 |
                  (static_cast<unsigned char>(s[i + 1]) & 0x3F);
    i += 2;
    return cp;
  }
  if ((b0 & 0xF0) == 0xE0 && cont(1) && cont(2)) {
    char32_t cp = (b0 & 0x0F) << 12 |
                  (static_cast<unsigned char>(s[i + 1]) & 0x3F) << 6 |
                  (static_cast<unsigned char>(s[i + 2]) & 0x3F);
    i += 3;
    return cp;
  }
  if ((b0 & 0xF8) == 0xF0 && cont(1) && cont(2) && cont(3)) {
    char32_t cp = (b0 & 0x07) << 18 |
                  (static_cast<unsigned char>(s[i + 1]) & 0x3F) << 12 |
                  (static_cast<unsigned char>(s[i + 2]) & 0x3F) << 6 |
                  (static_cast<unsigned char>(s[i + 3]) & 0x3F);
    i += 4;
    return cp;
  }
  ++i;
  return 0xFFFD;
}

void encode_utf8(char32_t cp, std::string& out) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

bool is_word_cp(char32_t cp) {
  if ((cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') ||
      (cp >= '0' && cp <= '9'))
    return true;
  if (cp >= 0x00C0 && cp <= 0x00FF) return cp != 0x00D7 && cp != 0x00F7;
  if (cp >= 0x0100 && cp <= 0x024F) return true;  // Latin Extended-A/B
  if (cp >= 0x0370 && cp <= 0x03FF) return true;  // Greek
  if (cp >= 0x0400 && cp <= 0x04FF) return true;  // Cyrillic
  if (cp >= 0x0590 && cp <= 0x05FF) return true;  // Hebrew
  if (cp >= 0x0600 && cp <= 0x06FF) return true;  // Arabic
  if (cp >= 0x0750 && cp <= 0x077F) return true;  // Arabic Supplement
  if (cp >= 0xFB50 && cp <= 0xFDFF) return true;  // Arabic Presentation-A
  if (cp >= 0xFE70 && cp <= 0xFEFF) return true;  // Arabic Presentation-B
  return false;
}

char32_t fold_cp(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
  if (cp >= 0x00C0 && cp <= 0x00DE && cp != 0x00D7) return cp + 0x20;
  if (cp == 0x0178) return 0x00FF;  // Y with diaeresis
  // Latin Extended-A pairs: uppercase even/odd alternation.
  if (cp >= 0x0100 && cp <= 0x0137) return (cp % 2 == 0) ? cp + 1 : cp;
  if (cp >= 0x0139 && cp <= 0x0148) return (cp % 2 == 1) ? cp + 1 : cp;
  if (cp >= 0x014A && cp <= 0x0177) return (cp % 2 == 0) ? cp + 1 : cp;
  if (cp >= 0x0179 && cp <= 0x017E) return (cp % 2 == 1) ? cp + 1 : cp;
  if (cp >= 0x0391 && cp <= 0x03A9 && cp != 0x03A2) return cp + 0x20;  // Greek
  if (cp >= 0x0410 && cp <= 0x042F) return cp + 0x20;                  // Cyrillic
  if (cp >= 0x0400 && cp <= 0x040F) return cp + 0x50;
  return cp;
}

// --- URL host matching ---------------------------------------------------

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (c >= 'A' && c <= 'Z') c += 0x20;
  return out;
}

/// Extracts lowercased hosts of every http(s) URL in the text.
std::vector<std::string> extract_hosts(std::string_view text) {
  std::vector<std::string> hosts;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t at = text.find("http", pos);
    if (at == std::string_view::npos) break;
    std::size_t rest = at + 4;
    if (rest < text.size() && (text[rest] == 's' || text[rest] == 'S')) ++rest;
    if (text.compare(rest, 3, "://") != 0) {
      pos = at + 4;
      continue;
    }
    rest += 3;
    std::size_t end = rest;
    while (end < text.size() && text[end] != '/' && text[end] != '?' &&
           text[end] != '#' && text[end] != ' ' && text[end] != '\t' &&
           text[end] != '\n' && text[end] != '<' && text[end] != '>' &&
           text[end] != '"' && text[end] != ')')
      ++end;
    std::string host = ascii_lower(text.substr(rest, end - rest));
    if (auto colon = host.find(':'); colon != std::string::npos)
      host.resize(colon);
    if (auto at_sign = host.find('@'); at_sign != std::string::npos)
      host.erase(0, at_sign + 1);
    if (!host.empty()) hosts.push_back(std::move(host));
    pos = end;
  }
  return hosts;
}

bool host_matches_domain(const std::string& host, const std::string& domain) {
  if (host == domain) return true;
  if (host.size() > domain.size() &&
      host.compare(host.size() - domain.size(), domain.size(), domain) == 0 &&
      host[host.size() - domain.size() - 1] == '.')
    return true;
  return false;
}

/// True when `pattern_tokens` occurs as a consecutive run in `tokens`.
bool contains_token_seq(const std::vector<std::string>& tokens,
                        const std::vector<std::string>& pattern_tokens) {
  if (pattern_tokens.empty() || pattern_tokens.size() > tokens.size()) return false;
  for (std::size_t i = 0; i + pattern_tokens.size() <= tokens.size(); ++i) {
    bool match = true;
    for (std::size_t k = 0; k < pattern_tokens.size(); ++k) {
      if (tokens[i + k] != pattern_tokens[k]) {
        match = false;
        break;
      }
    }
    if (match) return true;
  }
  return false;
}

void validate_lexicon(const Lexicon& lex) {
  if (lex.themes.empty())
    throw Error(ErrorCode::InvalidSpec, "lexicon must define at least one theme");
  for (std::size_t i = 0; i < lex.themes.size(); ++i) {
    if (lex.themes[i].first.empty())
      throw Error(ErrorCode::InvalidSpec, "lexicon theme name is empty");
    if (i > 0 && lex.themes[i - 1].first == lex.themes[i].first)
      throw Error(ErrorCode::InvalidSpec,
                  "duplicate lexicon theme '" + lex.themes[i].first + "'");
    if (lex.themes[i].second.empty())
      throw Error(ErrorCode::InvalidSpec,
                  "lexicon theme '" + lex.themes[i].first + "' has no patterns");
    for (const auto& p : lex.themes[i].second)
      if (tokenize_words(p).empty())
        throw Error(ErrorCode::InvalidSpec,
                    "pattern '" + p + "' contains no word characters");
  }
}

}  // namespace

std::vector<std::string> tokenize_words(std::string_view utf8_text) {
  std::vector<std::string> tokens;
  std::string current;
  std::size_t i = 0;
  while (i < utf8_text.size()) {
    char32_t cp = decode_utf8(utf8_text, i);
    if (is_word_cp(cp)) {
      encode_utf8(fold_cp(cp), current);
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

Lexicon default_lexicon() {
  Lexicon lex;
  lex.themes = {
      {"contest", {"contest", "giveaway", "concours", "jeu concours", "tirage au sort",
                   "مسابقة", "سحب"}},
      {"fragrances", {"fragrance", "perfume", "parfum", "eau de toilette",
                      "eau de parfum", "scent", "عطر", "عطور"}},
      {"make-up", {"makeup", "make up", "maquillage", "mascara", "lipstick",
                   "rouge à lèvres", "eyeliner", "smoky eyes", "مكياج", "ماسكارا",
                   "أحمر شفاه"}},
      {"skin-care", {"skincare", "skin care", "soin", "crème", "moisturizer",
                     "hydratant", "serum", "sérum", "بشرة", "كريم", "ترطيب"}},
      {"socialization", {"mother's day", "mothers day", "fête des mères",
                         "labour day", "labor day", "1er mai", "premier mai",
                         "muguet", "happy new year", "bonne année", "merci",
                         "عيد الأم", "عيد العمال", "كل عام وأنتم بخير"}},
  };
  // Brand shop domains are page-specific; configure them per dataset via
  // a lexicon file.
  lex.shop_domains = {};
  lex.stopwords = {
      {"en", {"a", "an", "and", "are", "at", "be", "by", "for", "from", "in",
              "is", "it", "of", "on", "or", "our", "the", "to", "with", "you",
              "your"}},
      {"fr", {"au", "aux", "avec", "ce", "ces", "dans", "de", "des", "du", "en",
              "et", "il", "la", "le", "les", "nos", "notre", "nous", "ou",
              "pour", "que", "qui", "sur", "un", "une", "vos", "votre", "vous"}},
      {"ar", {"في", "من", "على", "إلى", "عن", "مع", "هذا", "هذه", "أن", "إن",
              "كل", "لا", "ما", "هو", "هي", "و", "يا"}},
  };
  return lex;
}

Lexicon lexicon_from_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::MalformedRow, "lexicon", 1,
                std::string("invalid JSON: ") + e.what());
  }
  Lexicon lex;
  if (!j.is_object() || !j.contains("themes") || !j["themes"].is_object())
    throw Error(ErrorCode::InvalidSpec, "lexicon JSON must have a 'themes' object");
  for (const auto& [name, patterns] : j["themes"].items()) {
    if (!patterns.is_array())
      throw Error(ErrorCode::InvalidSpec, "theme '" + name + "' must map to an array");
    std::vector<std::string> pats;
    for (const auto& p : patterns) pats.push_back(p.get<std::string>());
    lex.themes.emplace_back(name, std::move(pats));
  }
  std::sort(lex.themes.begin(), lex.themes.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  if (j.contains("shop_domains")) {
    for (const auto& d : j["shop_domains"])
      lex.shop_domains.push_back(ascii_lower(d.get<std::string>()));
  }
  if (j.contains("stopwords")) {
    for (const auto& [lang, words] : j["stopwords"].items()) {
      std::set<std::string> ws;
      for (const auto& w : words) ws.insert(w.get<std::string>());
      lex.stopwords.emplace(lang, std::move(ws));
    }
  }
  validate_lexicon(lex);
  return lex;
}

Lexicon load_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::MissingFile, "lexicon file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return lexicon_from_json(buf.str());
}

PostTheme classify_post(const PostRecord& post, const Lexicon& lex) {
  PostTheme result;
  result.post_id = post.post_id;

  // advertising: shop-domain link in text or permalink
  std::vector<std::string> hosts = extract_hosts(post.text);
  if (post.permalink) {
    auto extra = extract_hosts(*post.permalink);
    hosts.insert(hosts.end(), extra.begin(), extra.end());
  }
  for (const auto& domain : lex.shop_domains) {
    bool matched = false;
    for (const auto& host : hosts) {
      if (host_matches_domain(host, domain)) {
        result.labels.insert("advertising");
        result.evidence.push_back({"advertising", domain});
        matched = true;
        break;
      }
    }
    if (matched) break;
  }

  // keyword themes
  const auto tokens = tokenize_words(post.text);
  for (const auto& [theme, patterns] : lex.themes) {
    for (const auto& pattern : patterns) {
      if (contains_token_seq(tokens, tokenize_words(pattern))) {
        result.labels.insert(theme);
        result.evidence.push_back({theme, pattern});
        break;
      }
    }
  }
  return result;
}

CommunityTheme community_theme(std::span<const PostRecord> community_posts,
                               std::span<const PostTheme> labels, const Lexicon& lex,
                               const std::string& lang,
                               std::vector<std::string>* warnings) {
  if (community_posts.size() != labels.size())
    throw std::invalid_argument("community_theme: labels must match posts 1:1");

  CommunityTheme result;
  for (const auto& pt : labels)
    for (const auto& label : pt.labels) ++result.label_histogram[label];

  if (!result.label_histogram.empty()) {
    // Highest count wins; the map's key order makes ties lexicographic.
    std::size_t best = 0;
    for (const auto& [theme, count] : result.label_histogram) {
      if (count > best) {
        best = count;
        result.dominant_theme = theme;
      }
    }
  }

  const std::set<std::string>* stop = nullptr;
  auto it = lex.stopwords.find(lang);
  if (it != lex.stopwords.end()) {
    stop = &it->second;
  } else if (warnings) {
    warnings->push_back("no stopword list for language '" + lang +
                        "'; keeping all tokens");
  }

  std::map<std::string, std::size_t> counts;
  for (const auto& post : community_posts) {
    for (auto& token : tokenize_words(post.text)) {
      if (stop && stop->count(token)) continue;
      ++counts[token];
    }
  }
  result.top_keywords.reserve(counts.size());
  for (auto& [token, count] : counts) result.top_keywords.push_back({token, count});
  std::sort(result.top_keywords.begin(), result.top_keywords.end(),
            [](const KeywordCount& a, const KeywordCount& b) {
              if (a.count != b.count) return a.count > b.count;
              return a.token < b.token;
            });
  return result;
}

}  // namespace brandgraph
