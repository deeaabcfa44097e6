#include "normgraph/turtle.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "normgraph/error.hpp"

namespace normgraph {

namespace {

constexpr std::string_view kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
constexpr std::string_view kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";
constexpr std::string_view kCrm = "http://www.cidoc-crm.org/cidoc-crm/";
constexpr std::string_view kLrmoo = "http://iflastandards.info/ns/lrm/lrmoo/";
constexpr std::string_view kNg = "urn:x-normgraph:vocab#";

struct Prefix {
  std::string_view name;
  std::string_view iri;
};
constexpr Prefix kPrefixes[] = {{"rdf", kRdf}, {"rdfs", kRdfs}, {"xsd", kXsd},
                                {"crm", kCrm}, {"lrmoo", kLrmoo}, {"ng", kNg}};

std::string iri(std::string_view ns, std::string_view local) { return std::string(ns) + std::string(local); }

// Vocabulary.
const std::string kType = iri(kRdf, "type");
const std::string kStatement = iri(kRdf, "Statement");
const std::string kSubject = iri(kRdf, "subject");
const std::string kPredicate = iri(kRdf, "predicate");
const std::string kObject = iri(kRdf, "object");
const std::string kLabel = iri(kRdfs, "label");
const std::string kDate = iri(kXsd, "date");
const std::string kInteger = iri(kXsd, "integer");
const std::string kF1 = iri(kLrmoo, "F1_Work");
const std::string kF2 = iri(kLrmoo, "F2_Expression");
const std::string kF27 = iri(kLrmoo, "F27_Work_Creation");
const std::string kE11 = iri(kCrm, "E11_Modification");
const std::string kE33 = iri(kCrm, "E33_Linguistic_Object");
const std::string kE39 = iri(kCrm, "E39_Actor");
const std::string kE52 = iri(kCrm, "E52_Time-Span");
const std::string kP2 = iri(kCrm, "P2_has_type");
const std::string kP4 = iri(kCrm, "P4_has_time-span");
const std::string kP14 = iri(kCrm, "P14_carried_out_by");
const std::string kP72 = iri(kCrm, "P72_has_language");
const std::string kP82a = iri(kCrm, "P82a_begin_of_the_begin");
const std::string kP82b = iri(kCrm, "P82b_end_of_the_end");
const std::string kP190 = iri(kCrm, "P190_has_symbolic_content");
const std::string kR2_1 = iri(kLrmoo, "R2.1_has_type");
const std::string kWorkKind = iri(kNg, "workKind");
const std::string kStatus = iri(kNg, "status");
const std::string kExpressionKind = iri(kNg, "expressionKind");
const std::string kEventLevel = iri(kNg, "eventLevel");
const std::string kOrdinal = iri(kNg, "ordinal");
const std::string kPosition = iri(kNg, "position");

constexpr std::string_view kStatementNs = "urn:x-normgraph:statement:";

const std::map<EdgeKind, std::string>& edge_predicates() {
  static const std::map<EdgeKind, std::string> m = {
      {EdgeKind::MemberOf, iri(kLrmoo, "R10_is_member_of")},
      {EdgeKind::DerivativeOf, iri(kLrmoo, "R2_is_derivative_of")},
      {EdgeKind::RealisedIn, iri(kLrmoo, "R3_is_realised_in")},
      {EdgeKind::HasPart, iri(kLrmoo, "R67_has_part")},
      {EdgeKind::HasComponent, iri(kLrmoo, "R5_has_component")},
      {EdgeKind::TranslationDerivativeOf, iri(kLrmoo, "R76_is_derivative_of")},
      {EdgeKind::Modified, iri(kCrm, "P31_has_modified")},
      {EdgeKind::Created, iri(kLrmoo, "R16_created")},
      {EdgeKind::ConsistsOf, iri(kCrm, "P9_consists_of")},
      {EdgeKind::Used, iri(kCrm, "P16_used_specific_object")},
  };
  return m;
}

std::optional<EdgeKind> edge_kind_of(const std::string& predicate) {
  for (const auto& [k, p] : edge_predicates()) {
    if (p == predicate) return k;
  }
  return std::nullopt;
}

bool qualified(EdgeKind k) {
  return k == EdgeKind::DerivativeOf || k == EdgeKind::HasPart || k == EdgeKind::HasComponent;
}

const std::set<std::string>& known_predicates() {
  static const std::set<std::string> s = [] {
    std::set<std::string> out = {kType,  kSubject, kPredicate, kObject,   kLabel,          kP2,
                                 kP4,    kP14,     kP72,       kP82a,     kP82b,           kP190,
                                 kR2_1,  kWorkKind, kStatus,   kExpressionKind, kEventLevel, kOrdinal,
                                 kPosition};
    for (const auto& [k, p] : edge_predicates()) out.insert(p);
    return out;
  }();
  return s;
}

const std::set<std::string>& known_classes() {
  static const std::set<std::string> s = {kF1, kF2, kF27, kE11, kE33, kE39, kE52, kStatement};
  return s;
}

// ---------------------------------------------------------------------------
// Export

Triple res(std::string s, std::string p, std::string o) { return {std::move(s), std::move(p), std::move(o), false, {}}; }
Triple lit(std::string s, std::string p, std::string o, std::string dt = {}) {
  return {std::move(s), std::move(p), std::move(o), true, std::move(dt)};
}

bool pn_local_ok(std::string_view s) {
  if (s.empty() || s.back() == '.' || s.front() == '.' || s.front() == '-') return false;
  for (char c : s) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
              c == '-' || c == '.';
    if (!ok) return false;
  }
  return true;
}

std::string render_iri(const std::string& value) {
  for (const auto& p : kPrefixes) {
    if (value.size() > p.iri.size() && value.compare(0, p.iri.size(), p.iri) == 0) {
      std::string_view local(value.data() + p.iri.size(), value.size() - p.iri.size());
      if (pn_local_ok(local)) return std::string(p.name) + ":" + std::string(local);
    }
  }
  return "<" + value + ">";
}

std::string render_literal(const Triple& t) {
  std::string out = "\"";
  for (char c : t.object) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
  if (!t.datatype.empty()) out += "^^" + render_iri(t.datatype);
  return out;
}

bool iri_safe(std::string_view s) {
  if (s.find(':') == std::string_view::npos) return false;
  for (unsigned char c : s) {
    if (c <= 0x20 || std::string_view("<>\"{}|^`\\").find(static_cast<char>(c)) != std::string_view::npos) {
      return false;
    }
  }
  return true;
}

std::string statement_iri(const Edge& e) {
  return std::string(kStatementNs) + std::string(to_string(e.kind)) + ":" + std::to_string(e.ordinal) + ":" +
         e.from + "::" + e.to;
}

std::vector<Triple> graph_triples(const TemporalGraph& g) {
  std::vector<Triple> out;
  for (const auto& [id, w] : g.works()) {
    out.push_back(res(id, kType, kF1));
    out.push_back(lit(id, kWorkKind, std::string(to_string(w->kind))));
    if (w->status) out.push_back(lit(id, kStatus, std::string(to_string(*w->status))));
    if (w->validity) {
      std::string span = id + "#validity";
      out.push_back(res(id, kP4, span));
      out.push_back(res(span, kType, kE52));
      out.push_back(lit(span, kP82a, w->validity->start.to_string(), kDate));
      if (w->validity->end) out.push_back(lit(span, kP82b, w->validity->end->to_string(), kDate));
    }
  }
  for (const auto& [id, x] : g.expressions()) {
    out.push_back(res(id, kType, kF2));
    out.push_back(res(id, kType, kE33));
    out.push_back(lit(id, kExpressionKind, std::string(to_string(x->kind))));
    out.push_back(lit(id, kP72, x->language));
    if (x->content) out.push_back(lit(id, kP190, *x->content));
  }
  for (const auto& [id, ev] : g.events()) {
    out.push_back(res(id, kType, kF27));
    if (!ev->modified.empty()) out.push_back(res(id, kType, kE11));
    out.push_back(lit(id, kEventLevel, std::string(to_string(ev->level))));
    out.push_back(lit(id, kP2, ev->nature));
    std::string span = id + "#time-span";
    out.push_back(res(id, kP4, span));
    out.push_back(res(span, kType, kE52));
    out.push_back(lit(span, kP82a, ev->time_span.to_string(), kDate));
    for (std::size_t i = 0; i < ev->actors.size(); ++i) {
      std::string actor = id + "#actor-" + std::to_string(i + 1);
      out.push_back(res(id, kP14, actor));
      out.push_back(res(actor, kType, kE39));
      out.push_back(lit(actor, kLabel, ev->actors[i]));
      out.push_back(lit(actor, kPosition, std::to_string(i + 1), kInteger));
    }
  }
  for (const auto& e : g.edges()) {
    const std::string& pred = edge_predicates().at(e.kind);
    out.push_back(res(e.from, pred, e.to));
    if (!qualified(e.kind)) continue;
    std::string st = statement_iri(e);
    out.push_back(res(st, kType, kStatement));
    out.push_back(res(st, kSubject, e.from));
    out.push_back(res(st, kPredicate, pred));
    out.push_back(res(st, kObject, e.to));
    if (e.kind == EdgeKind::DerivativeOf) {
      out.push_back(lit(st, kR2_1, e.qualifier));
    } else {
      out.push_back(lit(st, kOrdinal, std::to_string(e.ordinal), kInteger));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parser

class TurtleParser {
 public:
  explicit TurtleParser(std::string_view text) : text_(text) {}

  std::vector<Triple> run() {
    while (true) {
      skip_ws();
      if (at_end()) break;
      if (peek() == '@' || starts_with_keyword("PREFIX")) {
        directive();
        continue;
      }
      triples();
    }
    return std::move(out_);
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::TurtleParse, "line " + std::to_string(line_) + ": " + msg);
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  char get() {
    char c = text_[pos_++];
    if (c == '\n') ++line_;
    return c;
  }
  void skip_ws() {
    while (!at_end()) {
      char c = peek();
      if (c == '#') {
        while (!at_end() && peek() != '\n') get();
      } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        get();
      } else {
        break;
      }
    }
  }
  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    get();
  }
  bool starts_with_keyword(std::string_view kw) const {
    return text_.substr(pos_, kw.size()) == kw;
  }

  void directive() {
    bool sparql = !starts_with_keyword("@");
    if (starts_with_keyword("@prefix")) {
      pos_ += 7;
    } else if (sparql) {
      pos_ += 6;
    } else {
      fail("unsupported directive");
    }
    skip_ws();
    std::string name;
    while (!at_end() && peek() != ':') {
      char c = get();
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.')) {
        fail("invalid prefix name");
      }
      name += c;
    }
    if (at_end()) fail("unterminated prefix directive");
    get();
    skip_ws();
    prefixes_[name] = iriref();
    if (!sparql) expect('.');
  }

  std::string iriref() {
    if (peek() != '<') fail("expected IRI");
    get();
    std::string out;
    while (true) {
      if (at_end()) fail("unterminated IRI");
      char c = get();
      if (c == '>') break;
      if (static_cast<unsigned char>(c) <= 0x20 || c == '"' || c == '{' || c == '}' || c == '|' ||
          c == '^' || c == '`' || c == '\\' || c == '<') {
        fail("invalid character in IRI");
      }
      out += c;
    }
    return out;
  }

  static bool name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
           static_cast<unsigned char>(c) >= 0x80;
  }

  std::string prefixed_name() {
    std::string prefix;
    while (!at_end() && peek() != ':') {
      char c = peek();
      if (!(name_char(c) || c == '.')) fail(std::string("unexpected character '") + c + "'");
      prefix += get();
    }
    if (at_end()) fail("unexpected end of input");
    get();
    std::string local;
    while (!at_end()) {
      char c = peek();
      if (name_char(c) || c == ':') {
        local += get();
      } else if (c == '.' && pos_ + 1 < text_.size() && (name_char(text_[pos_ + 1]) || text_[pos_ + 1] == '.')) {
        local += get();
      } else {
        break;
      }
    }
    auto it = prefixes_.find(prefix);
    if (it == prefixes_.end()) fail("undeclared prefix '" + prefix + "'");
    return it->second + local;
  }

  std::string iri_term() {
    skip_ws();
    if (peek() == '<') return iriref();
    if (peek() == '_' || peek() == '[') fail("blank nodes are not supported");
    return prefixed_name();
  }

  static void append_utf8(std::string& out, unsigned long cp) {
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

  std::string string_literal() {
    get();  // opening quote
    std::string out;
    while (true) {
      if (at_end()) fail("unterminated string literal");
      if (peek() == '\n' || peek() == '\r') fail("newline in string literal");
      char c = get();
      if (c == '"') break;
      if (c != '\\') {
        out += c;
        continue;
      }
      if (at_end()) fail("unterminated escape");
      char e = get();
      switch (e) {
        case 't': out += '\t'; break;
        case 'n': out += '\n'; break;
        case 'r': out += '\r'; break;
        case 'b': out += '\b'; break;
        case 'f': out += '\f'; break;
        case '"': out += '"'; break;
        case '\'': out += '\''; break;
        case '\\': out += '\\'; break;
        case 'u':
        case 'U': {
          std::size_t n = e == 'u' ? 4 : 8;
          if (pos_ + n > text_.size()) fail("truncated unicode escape");
          unsigned long cp = 0;
          for (std::size_t i = 0; i < n; ++i) {
            char h = get();
            cp <<= 4;
            if (h >= '0' && h <= '9') cp |= static_cast<unsigned long>(h - '0');
            else if (h >= 'a' && h <= 'f') cp |= static_cast<unsigned long>(h - 'a' + 10);
            else if (h >= 'A' && h <= 'F') cp |= static_cast<unsigned long>(h - 'A' + 10);
            else fail("invalid unicode escape");
          }
          append_utf8(out, cp);
          break;
        }
        default: fail(std::string("invalid escape '\\") + e + "'");
      }
    }
    return out;
  }

  Triple object_term(const std::string& s, const std::string& p) {
    skip_ws();
    char c = peek();
    if (c == '"') {
      std::string value = string_literal();
      std::string dt;
      if (peek() == '^' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '^') {
        pos_ += 2;
        dt = iri_term();
      } else if (peek() == '@') {
        get();
        std::string lang;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-')) lang += get();
        if (lang.empty()) fail("empty language tag");
        dt = iri(kRdf, "langString");
      }
      return lit(s, p, std::move(value), std::move(dt));
    }
    if (c == '-' || c == '+' || std::isdigit(static_cast<unsigned char>(c))) {
      std::string num;
      num += get();
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) num += get();
      if (num == "-" || num == "+") fail("invalid number");
      return lit(s, p, num, kInteger);
    }
    return res(s, p, iri_term());
  }

  void triples() {
    std::string subject = iri_term();
    while (true) {
      skip_ws();
      std::string predicate;
      if (peek() == 'a' && pos_ + 1 < text_.size() &&
          (text_[pos_ + 1] == ' ' || text_[pos_ + 1] == '\t' || text_[pos_ + 1] == '\n')) {
        get();
        predicate = kType;
      } else {
        predicate = iri_term();
      }
      while (true) {
        out_.push_back(object_term(subject, predicate));
        skip_ws();
        if (peek() == ',') {
          get();
          continue;
        }
        break;
      }
      skip_ws();
      if (peek() == ';') {
        get();
        skip_ws();
        if (peek() == '.') break;
        continue;
      }
      break;
    }
    expect('.');
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::map<std::string, std::string> prefixes_;
  std::vector<Triple> out_;
};

// ---------------------------------------------------------------------------
// Import

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorCode::TurtleParse, msg); }

struct Resource {
  std::set<std::string> types;
  std::multimap<std::string, const Triple*> props;

  const Triple* one(const std::string& p, const std::string& subject, bool required = true) const {
    auto [lo, hi] = props.equal_range(p);
    if (lo == hi) {
      if (required) bad(subject + ": missing " + render_iri(p));
      return nullptr;
    }
    if (std::next(lo) != hi) bad(subject + ": repeated " + render_iri(p));
    return lo->second;
  }
  std::string literal(const std::string& p, const std::string& subject) const {
    const Triple* t = one(p, subject);
    if (!t->is_literal) bad(subject + ": " + render_iri(p) + " must be a literal");
    return t->object;
  }
};

Date date_literal(const Resource& r, const std::string& p, const std::string& subject) {
  auto d = Date::parse(r.literal(p, subject));
  if (!d) bad(subject + ": invalid date");
  return *d;
}

unsigned integer_literal(const Triple* t, const std::string& subject) {
  if (!t->is_literal || t->object.empty() || t->object.size() > 9) bad(subject + ": invalid integer");
  unsigned v = 0;
  for (char c : t->object) {
    if (c < '0' || c > '9') bad(subject + ": invalid integer");
    v = v * 10 + static_cast<unsigned>(c - '0');
  }
  return v;
}

Urn node_urn(const std::string& id) {
  try {
    return parse_urn(id);
  } catch (const MalformedUrn& e) {
    bad("node " + id + " is not a valid urn: " + e.detail());
  }
}

}  // namespace

std::vector<Triple> parse_turtle(std::string_view text) { return TurtleParser(text).run(); }

std::string export_turtle(const TemporalGraph& g) {
  auto violations = validate(g);
  if (!violations.empty()) {
    throw Error(ErrorCode::InvalidGraph, std::to_string(violations.size()) + " violations, first: " +
                                             violations.front().rule + " " + violations.front().message);
  }
  std::vector<std::tuple<std::string, std::string, std::string>> lines;
  for (const auto& t : graph_triples(g)) {
    if (!iri_safe(t.subject) || (!t.is_literal && !iri_safe(t.object))) {
      throw Error(ErrorCode::InvalidGraph, "identifier is not a valid IRI: " + t.subject);
    }
    lines.emplace_back(render_iri(t.subject), render_iri(t.predicate),
                       t.is_literal ? render_literal(t) : render_iri(t.object));
  }
  std::sort(lines.begin(), lines.end());
  std::string out(kTurtleHeader);
  out += '\n';
  for (const auto& p : kPrefixes) {
    out += "@prefix " + std::string(p.name) + ": <" + std::string(p.iri) + "> .\n";
  }
  if (!lines.empty()) out += '\n';
  for (const auto& [s, p, o] : lines) out += s + " " + p + " " + o + " .\n";
  return out;
}

TemporalGraph import_turtle(std::string_view text) {
  std::vector<Triple> triples = parse_turtle(text);
  std::map<std::string, Resource> resources;
  std::set<std::tuple<std::string, std::string, std::string>> asserted;
  for (const auto& t : triples) {
    if (!known_predicates().count(t.predicate)) {
      throw Error(ErrorCode::UnknownVocabularyTerm, "unknown predicate " + render_iri(t.predicate));
    }
    auto& r = resources[t.subject];
    if (t.predicate == kType) {
      if (t.is_literal || !known_classes().count(t.object)) {
        throw Error(ErrorCode::UnknownVocabularyTerm, "unknown class " + t.object);
      }
      r.types.insert(t.object);
    } else {
      r.props.emplace(t.predicate, &t);
    }
    if (!t.is_literal) asserted.emplace(t.subject, t.predicate, t.object);
  }

  GraphEditor ed;
  std::vector<Edge> edges;
  for (const auto& [id, r] : resources) {
    if (r.types.count(kF1)) {
      WorkNode w;
      w.urn = node_urn(id);
      auto kind = work_kind_from_string(r.literal(kWorkKind, id));
      if (!kind) throw Error(ErrorCode::UnknownVocabularyTerm, id + ": unknown work kind");
      w.kind = *kind;
      if (const Triple* st = r.one(kStatus, id, false)) {
        auto status = version_status_from_string(st->object);
        if (!status) throw Error(ErrorCode::UnknownVocabularyTerm, id + ": unknown status " + st->object);
        w.status = *status;
      }
      if (const Triple* span = r.one(kP4, id, false)) {
        auto it = resources.find(span->object);
        if (it == resources.end() || !it->second.types.count(kE52)) bad(id + ": time-span node missing");
        ValidityInterval v;
        v.start = date_literal(it->second, kP82a, span->object);
        if (it->second.one(kP82b, span->object, false)) v.end = date_literal(it->second, kP82b, span->object);
        w.validity = v;
      }
      ed.add_work(std::move(w));
    } else if (r.types.count(kF2)) {
      ExpressionNode x;
      x.urn = node_urn(id);
      auto kind = expression_kind_from_string(r.literal(kExpressionKind, id));
      if (!kind) throw Error(ErrorCode::UnknownVocabularyTerm, id + ": unknown expression kind");
      x.kind = *kind;
      x.language = r.literal(kP72, id);
      if (const Triple* c = r.one(kP190, id, false)) x.content = c->object;
      ed.add_expression(std::move(x));
    } else if (r.types.count(kF27)) {
      LegislativeEvent ev;
      ev.id = id;
      auto level = event_level_from_string(r.literal(kEventLevel, id));
      if (!level) throw Error(ErrorCode::UnknownVocabularyTerm, id + ": unknown event level");
      ev.level = *level;
      ev.nature = r.literal(kP2, id);
      const Triple* span = r.one(kP4, id);
      auto it = resources.find(span->object);
      if (it == resources.end() || !it->second.types.count(kE52)) bad(id + ": time-span node missing");
      ev.time_span = date_literal(it->second, kP82a, span->object);
      std::vector<std::pair<unsigned, std::string>> actors;
      auto [lo, hi] = r.props.equal_range(kP14);
      for (auto a = lo; a != hi; ++a) {
        auto ar = resources.find(a->second->object);
        if (ar == resources.end() || !ar->second.types.count(kE39)) bad(id + ": actor node missing");
        actors.emplace_back(integer_literal(ar->second.one(kPosition, a->second->object), a->second->object),
                            ar->second.literal(kLabel, a->second->object));
      }
      std::sort(actors.begin(), actors.end());
      for (auto& [pos, name] : actors) ev.actors.push_back(std::move(name));
      ed.add_event(std::move(ev));
    } else if (r.types.count(kStatement)) {
      const Triple* s = r.one(kSubject, id);
      const Triple* p = r.one(kPredicate, id);
      const Triple* o = r.one(kObject, id);
      auto kind = edge_kind_of(p->object);
      if (!kind || !qualified(*kind)) bad(id + ": statement about an unqualified predicate");
      if (!asserted.count({s->object, p->object, o->object})) bad(id + ": statement without asserted triple");
      Edge e{s->object, *kind, o->object, {}, 0};
      if (*kind == EdgeKind::DerivativeOf) {
        e.qualifier = r.literal(kR2_1, id);
      } else {
        e.ordinal = integer_literal(r.one(kOrdinal, id), id);
      }
      edges.push_back(std::move(e));
    }
  }

  std::set<std::tuple<std::string, std::string, std::string>> reified;
  for (const auto& e : edges) reified.emplace(e.from, edge_predicates().at(e.kind), e.to);
  for (const auto& t : triples) {
    auto kind = edge_kind_of(t.predicate);
    if (!kind) continue;
    if (t.is_literal) bad(t.subject + ": edge object must be an IRI");
    if (qualified(*kind)) {
      if (!reified.count({t.subject, t.predicate, t.object})) {
        bad(t.subject + ": " + render_iri(t.predicate) + " edge lacks its statement node");
      }
      continue;
    }
    edges.push_back({t.subject, *kind, t.object, {}, 0});
  }
  for (auto& e : edges) ed.add_edge(std::move(e));
  return std::move(ed).commit();
}

}  // namespace normgraph
