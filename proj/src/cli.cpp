#include "normgraph/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "normgraph/error.hpp"
#include "normgraph/events.hpp"
#include "normgraph/reconstruction.hpp"
#include "normgraph/script_io.hpp"
#include "normgraph/store.hpp"
#include "normgraph/turtle.hpp"

namespace normgraph {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Date parse_date_flag(const std::string& flag, const std::string& value) {
  auto d = Date::parse(value);
  if (!d) throw UsageError(flag + ": expected a date as YYYY-MM-DD, got '" + value + "'");
  return *d;
}

std::string opt(const std::optional<std::string>& s) { return s ? *s : "-"; }

std::string join(const std::vector<std::string>& v, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += v[i];
  }
  return out;
}

json node_json(const DocumentNode& n) {
  json j = json::object();
  if (n.path) j["path"] = n.path->to_string();
  j["status"] = std::string(to_string(n.status));
  j["ordinal"] = n.ordinal;
  j["text"] = n.text;
  json children = json::array();
  for (const auto& c : n.children) children.push_back(node_json(c));
  j["children"] = std::move(children);
  return j;
}

json record_json(const ChangeRecord& r) {
  json j = json::object();
  j["path"] = r.path ? json(r.path->to_string()) : json(nullptr);
  j["change"] = std::string(to_string(r.change));
  j["from"] = r.from_ctv ? json(*r.from_ctv) : json(nullptr);
  j["to"] = r.to_ctv ? json(*r.to_ctv) : json(nullptr);
  j["event"] = r.event;
  j["macro_event"] = r.macro_event;
  j["instruction"] = r.instruction ? json(*r.instruction) : json(nullptr);
  j["nature"] = r.nature;
  j["actors"] = r.actors;
  j["date"] = r.date.to_string();
  return j;
}

std::string record_flat(const ChangeRecord& r) {
  return (r.path ? r.path->to_string() : std::string("-")) + "\t" + std::string(to_string(r.change)) + "\t" +
         opt(r.from_ctv) + "\t" + opt(r.to_ctv) + "\t" + opt(r.instruction) + "\t" + r.date.to_string() +
         "\t" + r.event + "\n";
}

class Commands {
 public:
  Commands(std::ostream& out, const CliConfig& cfg) : out_(out), cfg_(cfg) {}

  std::optional<std::string> log_path;

  void init() { init_log_file(log()); out_ << "initialized " << log() << "\n"; }

  void ingest(const std::string& file) {
    NormDocument doc = parse_norm_document(read_file(file));
    append_to_log_file(log(), EntryKind::Bootstrap, bootstrap_payload(doc), utc_timestamp(),
                       [&](const EventLog& current) { bootstrap_norm(replay(current), doc); });
    out_ << "ingested " << format_urn(doc.concept_urn) << "\n";
  }

  void amend(const std::string& file, const std::optional<std::string>& norm) {
    AmendmentScript script = parse_amendment_script(read_file(file));
    std::optional<Urn> flag;
    if (norm) flag = parse_urn(*norm);
    if (flag && script.amends && format_urn(*flag) != format_urn(*script.amends)) {
      throw Error(ErrorCode::InvalidArgument,
                  "--norm " + *norm + " contradicts the script's target " + format_urn(*script.amends));
    }
    Urn concept_urn = script.amends ? *script.amends : flag ? *flag : sole_norm(load_log_file(log()));
    AmendmentReport report;
    append_to_log_file(log(), EntryKind::Amendment, amendment_payload(concept_urn, script), utc_timestamp(),
                       [&](const EventLog& current) {
                         report = apply_amendment(replay(current), concept_urn, script).second;
                       });
    out_ << "amended " << format_urn(concept_urn) << " -> " << report.new_tv << " (" << report.micro_events.size()
         << " instructions)\n";
  }

  void reconstruct(const std::string& urn_text, const std::optional<std::string>& at,
                   const std::optional<std::string>& lang, const std::string& format) {
    Urn urn = parse_urn(urn_text);
    std::string language = lang.value_or(cfg_.default_language);
    if (urn.language) {
      if (lang && *lang != *urn.language) {
        throw UsageError("--lang " + *lang + " contradicts the urn language " + *urn.language);
      }
      language = *urn.language;
      urn = without_language(urn);
    }
    TemporalGraph g = load();
    Urn concept_urn = urn;
    Date date;
    if (urn.version_date) {
      NodeId id = format_urn(urn);
      const WorkNode* w = g.find_work(id);
      if (!w || !is_version_kind(w->kind) || w->kind == WorkKind::AmendmentInstrument) {
        throw Error(ErrorCode::UnknownVersion, "no temporal version " + id);
      }
      concept_urn = g.find_work(*g.concept_of(id))->urn;
      date = w->validity->start;
    } else {
      if (!at) throw UsageError("reconstruct: --at is required for a concept urn");
      date = parse_date_flag("--at", *at);
    }
    DocumentTree tree = reconstruct_text(g, concept_urn, date, language);
    if (format == "tree") {
      out_ << render_tree(tree);
    } else if (format == "structured") {
      json j = {{"version", tree.tv_urn}, {"language", tree.language}, {"as_of", tree.as_of.to_string()},
                {"root", node_json(tree.root)}};
      out_ << j.dump(2) << "\n";
    } else {
      out_ << render_flat(tree);
    }
  }

  void history_cmd(const std::string& urn_text, const std::string& format) {
    Urn urn = strip_versioning(parse_urn(urn_text));
    TemporalGraph g = load();
    auto rows = history(g, urn);
    json arr = json::array();
    for (const auto& [w, ev] : rows) {
      std::string end = w.validity && w.validity->end ? w.validity->end->to_string() : "-";
      std::string status = w.status ? std::string(to_string(*w.status)) : "-";
      if (format == "structured") {
        arr.push_back({{"version", w.id()},
                       {"start", w.validity ? w.validity->start.to_string() : ""},
                       {"end", end == "-" ? json(nullptr) : json(end)},
                       {"status", status},
                       {"event", ev}});
      } else {
        out_ << w.id() << "\t" << (w.validity ? w.validity->start.to_string() : "-") << "\t" << end << "\t"
             << status << "\t" << (ev.empty() ? "-" : ev) << "\n";
      }
    }
    if (format == "structured") out_ << arr.dump(2) << "\n";
  }

  void diff_cmd(const std::string& urn_text, const std::string& from, const std::string& to,
                const std::string& format) {
    Urn urn = strip_versioning(parse_urn(urn_text));
    Date d1 = parse_date_flag("--from", from);
    Date d2 = parse_date_flag("--to", to);
    TemporalGraph g = load();
    auto records = diff(g, urn, d1, d2);
    if (format == "structured") {
      json arr = json::array();
      for (const auto& r : records) arr.push_back(record_json(r));
      out_ << arr.dump(2) << "\n";
    } else {
      for (const auto& r : records) out_ << record_flat(r);
    }
  }

  void provenance_cmd(const std::string& urn_text, const std::string& format) {
    Urn urn = parse_urn(urn_text);
    if (urn.language) urn = without_language(urn);
    TemporalGraph g = load();
    ChangeRecord r = provenance(g, urn);
    if (format == "structured") {
      out_ << record_json(r).dump(2) << "\n";
      return;
    }
    out_ << "version\t" << opt(r.to_ctv) << "\n"
         << "predecessor\t" << opt(r.from_ctv) << "\n"
         << "change\t" << to_string(r.change) << "\n"
         << "event\t" << r.event << "\n"
         << "macro_event\t" << r.macro_event << "\n"
         << "instruction\t" << opt(r.instruction) << "\n"
         << "nature\t" << r.nature << "\n"
         << "actors\t" << join(r.actors, "; ") << "\n"
         << "date\t" << r.date.to_string() << "\n";
  }

  int validate_cmd(const std::string& format) {
    auto violations = validate(load());
    if (format == "structured") {
      json arr = json::array();
      for (const auto& v : violations) {
        arr.push_back({{"rule", v.rule}, {"subjects", v.subjects}, {"message", v.message}});
      }
      out_ << json{{"violations", arr}, {"count", violations.size()}}.dump(2) << "\n";
    } else {
      for (const auto& v : violations) {
        out_ << v.rule << "\t" << join(v.subjects, ",") << "\t" << v.message << "\n";
      }
      out_ << violations.size() << (violations.size() == 1 ? " violation" : " violations") << "\n";
    }
    return violations.empty() ? 0 : 1;
  }

  void export_cmd() { out_ << export_turtle(load()); }

 private:
  std::string log() const {
    if (!log_path || log_path->empty()) throw UsageError("no log file: pass --log or set NORMGRAPH_LOG");
    return *log_path;
  }

  TemporalGraph load() const { return replay(load_log_file(log())); }

  static Urn strip_versioning(Urn urn) {
    if (urn.language) urn = without_language(urn);
    if (urn.version_date) urn = without_version(urn);
    return urn;
  }

  static Urn sole_norm(const EventLog& log) {
    std::set<std::string> norms;
    for (const auto& e : log.entries()) {
      if (e.kind == EntryKind::Bootstrap) norms.insert(e.payload.at("concept").get<std::string>());
    }
    if (norms.size() != 1) {
      throw Error(ErrorCode::InvalidArgument,
                  "the log holds " + std::to_string(norms.size()) +
                      " norms; name the amended norm with --norm or the script's \"amends\" key");
    }
    return parse_urn(*norms.begin());
  }

  std::ostream& out_;
  const CliConfig& cfg_;
};

}  // namespace

CliConfig config_from_environment() {
  CliConfig cfg;
  if (const char* log = std::getenv("NORMGRAPH_LOG"); log && *log) cfg.log_path = log;
  if (const char* lang = std::getenv("NORMGRAPH_LANG"); lang && *lang) cfg.default_language = lang;
  return cfg;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const CliConfig& defaults) {
  CLI::App app{"Point-in-time reconstruction of versioned legal norms.", "normgraph"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  Commands cmd(out, defaults);
  std::optional<std::string> log_flag;
  app.add_option("--log", log_flag, "event log file (default: $NORMGRAPH_LOG)");

  const std::vector<std::string> text_formats = {"flat", "tree", "structured"};
  const std::vector<std::string> record_formats = {"flat", "structured"};
  std::string format = defaults.output_format;
  auto add_format = [&](CLI::App* sub, const std::vector<std::string>& allowed, std::string fallback) {
    sub->add_option("--format", format, "output format")->check(CLI::IsMember(allowed));
    sub->preparse_callback([&format, fallback, allowed](std::size_t) {
      if (std::find(allowed.begin(), allowed.end(), format) == allowed.end()) format = fallback;
    });
  };

  std::string file, urn, from, to;
  std::optional<std::string> at, lang, norm;
  std::function<int()> action;

  auto* init = app.add_subcommand("init", "create an empty event log");
  init->callback([&] { action = [&] { cmd.init(); return 0; }; });

  auto* ingest = app.add_subcommand("ingest", "bootstrap a norm from a JSON document");
  ingest->add_option("norm_file", file, "norm document")->required();
  ingest->callback([&] { action = [&] { cmd.ingest(file); return 0; }; });

  auto* amend = app.add_subcommand("amend", "apply a JSON amendment script");
  amend->add_option("script_file", file, "amendment script")->required();
  amend->add_option("--norm", norm, "urn of the amended norm");
  amend->callback([&] { action = [&] { cmd.amend(file, norm); return 0; }; });

  auto* rec = app.add_subcommand("reconstruct", "text of a norm or component at a date");
  rec->add_option("urn", urn, "concept, component or version urn")->required();
  rec->add_option("--at", at, "date YYYY-MM-DD (ignored for version urns)");
  rec->add_option("--lang", lang, "language code (default: $NORMGRAPH_LANG or pt)");
  add_format(rec, text_formats, "flat");
  rec->callback([&] { action = [&] { cmd.reconstruct(urn, at, lang, format); return 0; }; });

  auto* hist = app.add_subcommand("history", "version chain of a norm or component");
  hist->add_option("urn", urn, "concept or component urn")->required();
  add_format(hist, record_formats, "flat");
  hist->callback([&] { action = [&] { cmd.history_cmd(urn, format); return 0; }; });

  auto* dif = app.add_subcommand("diff", "components that changed between two dates");
  dif->add_option("urn", urn, "concept or component urn")->required();
  dif->add_option("--from", from, "date YYYY-MM-DD")->required();
  dif->add_option("--to", to, "date YYYY-MM-DD")->required();
  add_format(dif, record_formats, "flat");
  dif->callback([&] { action = [&] { cmd.diff_cmd(urn, from, to, format); return 0; }; });

  auto* prov = app.add_subcommand("provenance", "event that created a version");
  prov->add_option("urn", urn, "version urn")->required();
  add_format(prov, record_formats, "flat");
  prov->callback([&] { action = [&] { cmd.provenance_cmd(urn, format); return 0; }; });

  auto* val = app.add_subcommand("validate", "check structural invariants");
  add_format(val, record_formats, "flat");
  val->callback([&] { action = [&] { return cmd.validate_cmd(format); }; });

  auto* exp = app.add_subcommand("export", "serialize the graph");
  std::string export_format = "turtle";
  exp->add_option("--format", export_format, "output format")->check(CLI::IsMember({"turtle"}));
  exp->callback([&] { action = [&] { cmd.export_cmd(); return 0; }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "normgraph: " << e.what() << "\n";
    return 2;
  }

  cmd.log_path = log_flag;
  if (!cmd.log_path && defaults.log_path) cmd.log_path = defaults.log_path->string();
  try {
    return action();
  } catch (const UsageError& e) {
    err << "normgraph: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "normgraph: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "normgraph: unexpected failure: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace normgraph
