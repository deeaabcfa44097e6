#include "normgraph/urn.hpp"

#include <utility>

#include "normgraph/error.hpp"

namespace normgraph {

namespace {

constexpr std::string_view kPrefix = "urn:lex:";

bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alnum(char c) { return is_lower(c) || is_digit(c); }

// token = [a-z0-9]+ ('-' [a-z0-9]+)*
std::size_t token_length(std::string_view s) {
  std::size_t i = 0;
  while (true) {
    std::size_t start = i;
    while (i < s.size() && is_alnum(s[i])) ++i;
    if (i == start) return start == 0 ? 0 : start - 1;
    if (i < s.size() && s[i] == '-' && i + 1 < s.size() && is_alnum(s[i + 1])) {
      ++i;
      continue;
    }
    return i;
  }
}

std::optional<PathSegment> parse_segment(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size() && is_lower(s[i])) ++i;
  if (i == 0) return std::nullopt;
  PathSegment seg{std::string(s.substr(0, i)), std::nullopt};
  if (i == s.size()) return seg;
  auto digits = s.substr(i);
  if (digits[0] == '0' || digits.size() > 9) return std::nullopt;
  unsigned v = 0;
  for (char c : digits) {
    if (!is_digit(c)) return std::nullopt;
    v = v * 10 + static_cast<unsigned>(c - '0');
  }
  seg.index = v;
  return seg;
}

bool segment_ok(const PathSegment& seg) {
  if (seg.kind.empty()) return false;
  for (char c : seg.kind) {
    if (!is_lower(c)) return false;
  }
  return !seg.index || *seg.index > 0;
}

class UrnParser {
 public:
  explicit UrnParser(std::string_view text) : text_(text) {}

  Urn run() {
    if (text_.substr(0, kPrefix.size()) != kPrefix) fail("expected prefix 'urn:lex:'");
    pos_ = kPrefix.size();
    Urn urn;
    urn.jurisdiction = token("jurisdiction");
    expect(':', "jurisdiction");
    urn.authority = token("authority");
    expect(':', "authority");
    urn.doctype = doctype();
    expect(':', "document type");
    urn.base_date = date("base date");
    expect(';', "base date");
    urn.base_id = token("base id");

    if (peek('@')) {
      ++pos_;
      std::size_t at = pos_;
      urn.version_date = date("version date");
      if (*urn.version_date < urn.base_date) {
        pos_ = at;
        fail("version date precedes base date");
      }
    }
    if (peek('~')) {
      ++pos_;
      urn.form = token("form");
      if (!peek(';')) fail("'~form' must be followed by ';language'");
      ++pos_;
      urn.language = language();
    }
    if (peek('!')) {
      ++pos_;
      urn.component_path = path();
    }
    if (pos_ != text_.size()) {
      char c = text_[pos_];
      if (c == '@' || c == '~' || c == '!') {
        fail(std::string("segment '") + c + "' out of order (expected base, @, ~, !)");
      }
      fail(std::string("unexpected character '") + c + "'");
    }
    return urn;
  }

 private:
  [[noreturn]] void fail(const std::string& reason) const { throw MalformedUrn(pos_, reason); }

  bool peek(char c) const { return pos_ < text_.size() && text_[pos_] == c; }

  void expect(char c, const char* after) {
    if (!peek(c)) fail(std::string("expected '") + c + "' after " + after);
    ++pos_;
  }

  std::string token(const char* what) {
    std::size_t n = token_length(text_.substr(pos_));
    if (n == 0) fail(std::string("empty or invalid ") + what);
    std::string out(text_.substr(pos_, n));
    pos_ += n;
    return out;
  }

  std::string doctype() {
    std::size_t start = pos_;
    while (true) {
      token("document type");
      if (peek('.')) {
        ++pos_;
        continue;
      }
      break;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  Date date(const char* what) {
    auto d = Date::parse(text_.substr(pos_, 10));
    if (!d) fail(std::string("invalid ") + what + " (expected YYYY-MM-DD)");
    pos_ += 10;
    return *d;
  }

  std::string language() {
    std::size_t start = pos_;
    std::size_t n = 0;
    while (pos_ + n < text_.size() && is_lower(text_[pos_ + n])) ++n;
    if (n < 2 || n > 8) fail("invalid language code");
    pos_ += n;
    while (peek('-')) {
      std::size_t sub = 0;
      while (pos_ + 1 + sub < text_.size() && is_alnum(text_[pos_ + 1 + sub])) ++sub;
      if (sub == 0 || sub > 8) fail("invalid language subtag");
      pos_ += 1 + sub;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  ComponentPath path() {
    std::vector<PathSegment> segs;
    while (true) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && is_alnum(text_[pos_])) ++pos_;
      if (pos_ == start) fail("empty component path segment");
      auto seg = parse_segment(text_.substr(start, pos_ - start));
      if (!seg) {
        pos_ = start;
        fail("invalid component path segment (expected [a-z]+ followed by an optional positive index)");
      }
      segs.push_back(std::move(*seg));
      if (peek('_')) {
        ++pos_;
        continue;
      }
      break;
    }
    return ComponentPath(std::move(segs));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

ComponentPath::ComponentPath(std::vector<PathSegment> segments) : segments_(std::move(segments)) {
  if (segments_.empty()) throw Error(ErrorCode::InvalidArgument, "component path must not be empty");
  for (const auto& seg : segments_) {
    if (!segment_ok(seg)) {
      throw Error(ErrorCode::InvalidArgument, "invalid component path segment '" + seg.kind + "'");
    }
  }
}

ComponentPath ComponentPath::parse(std::string_view text) {
  // Reuse the URN grammar for the path suffix so errors carry positions.
  std::vector<PathSegment> segs;
  std::size_t pos = 0;
  while (true) {
    std::size_t start = pos;
    while (pos < text.size() && is_alnum(text[pos])) ++pos;
    if (pos == start) throw MalformedUrn(pos, "empty component path segment");
    auto seg = parse_segment(text.substr(start, pos - start));
    if (!seg) throw MalformedUrn(start, "invalid component path segment");
    segs.push_back(std::move(*seg));
    if (pos < text.size() && text[pos] == '_') {
      ++pos;
      continue;
    }
    break;
  }
  if (pos != text.size()) throw MalformedUrn(pos, "unexpected character in component path");
  return ComponentPath(std::move(segs));
}

std::string ComponentPath::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    if (i) out += '_';
    out += segments_[i].kind;
    if (segments_[i].index) out += std::to_string(*segments_[i].index);
  }
  return out;
}

Urn parse_urn(std::string_view text) { return UrnParser(text).run(); }

std::string format_urn(const Urn& urn) {
  std::string out(kPrefix);
  out += urn.jurisdiction;
  out += ':';
  out += urn.authority;
  out += ':';
  out += urn.doctype;
  out += ':';
  out += urn.base_date.to_string();
  out += ';';
  out += urn.base_id;
  if (urn.version_date) {
    out += '@';
    out += urn.version_date->to_string();
  }
  if (urn.language) {
    out += '~';
    out += urn.form.value_or("");
    out += ';';
    out += *urn.language;
  }
  if (urn.component_path) {
    out += '!';
    out += urn.component_path->to_string();
  }
  return out;
}

bool is_valid_token(std::string_view s) { return !s.empty() && token_length(s) == s.size(); }

bool is_valid_doctype(std::string_view s) {
  std::size_t start = 0;
  while (true) {
    auto dot = s.find('.', start);
    auto part = s.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start);
    if (!is_valid_token(part)) return false;
    if (dot == std::string_view::npos) return true;
    start = dot + 1;
  }
}

bool is_valid_language(std::string_view s) {
  try {
    std::string probe = "urn:lex:x:x:x:2000-01-01;1~f;" + std::string(s);
    return parse_urn(probe).language == s;
  } catch (const Error&) {
    return false;
  }
}

void check_urn(const Urn& urn) {
  auto bad = [](const std::string& what) { throw Error(ErrorCode::InvalidArgument, what); };
  if (!is_valid_token(urn.jurisdiction)) bad("invalid jurisdiction '" + urn.jurisdiction + "'");
  if (!is_valid_token(urn.authority)) bad("invalid authority '" + urn.authority + "'");
  if (!is_valid_doctype(urn.doctype)) bad("invalid document type '" + urn.doctype + "'");
  if (!is_valid_token(urn.base_id)) bad("invalid base id '" + urn.base_id + "'");
  if (urn.form.has_value() != urn.language.has_value()) {
    bad("form and language must be both present or both absent");
  }
  if (urn.form && !is_valid_token(*urn.form)) bad("invalid form '" + *urn.form + "'");
  if (urn.language && !is_valid_language(*urn.language)) bad("invalid language '" + *urn.language + "'");
  if (urn.version_date && *urn.version_date < urn.base_date) bad("version date precedes base date");
  if (urn.component_path && urn.component_path->empty()) bad("component path must not be empty");
}

Urn with_version(const Urn& urn, Date date) {
  if (date < urn.base_date) {
    throw Error(ErrorCode::InvalidArgument, "version date " + date.to_string() +
                                                " precedes base date " + urn.base_date.to_string());
  }
  Urn out = urn;
  out.version_date = date;
  return out;
}

Urn with_language(const Urn& urn, std::string form, std::string language) {
  if (!is_valid_token(form)) throw Error(ErrorCode::InvalidArgument, "invalid form '" + form + "'");
  if (!is_valid_language(language)) {
    throw Error(ErrorCode::InvalidArgument, "invalid language '" + language + "'");
  }
  Urn out = urn;
  out.form = std::move(form);
  out.language = std::move(language);
  return out;
}

Urn with_component(const Urn& urn, ComponentPath path) {
  if (path.empty()) throw Error(ErrorCode::InvalidArgument, "component path must not be empty");
  Urn out = urn;
  out.component_path = std::move(path);
  return out;
}

Urn without_version(const Urn& urn) {
  Urn out = urn;
  out.version_date.reset();
  return out;
}

Urn without_language(const Urn& urn) {
  Urn out = urn;
  out.form.reset();
  out.language.reset();
  return out;
}

Urn without_component(const Urn& urn) {
  Urn out = urn;
  out.component_path.reset();
  return out;
}

Urn strip_to_concept(const Urn& urn) { return without_component(without_language(without_version(urn))); }

}  // namespace normgraph
