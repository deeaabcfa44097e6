#include "normgraph/store.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <ctime>

#include <openssl/evp.h>

#include "normgraph/error.hpp"
#include "normgraph/script_io.hpp"

namespace normgraph {

using nlohmann::json;

namespace {

std::string hex(const unsigned char* data, unsigned len) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned i = 0; i < len; ++i) {
    out += digits[data[i] >> 4];
    out += digits[data[i] & 0xf];
  }
  return out;
}

std::string header_line() {
  return json{{"format", kLogFormat}, {"version", kLogVersion}}.dump();
}

[[noreturn]] void io_error(const std::string& what, const std::filesystem::path& path) {
  throw Error(ErrorCode::Io, what + " " + path.string() + ": " + std::strerror(errno));
}

// RAII flock() on an open descriptor.
class LockedFile {
 public:
  LockedFile(const std::filesystem::path& path, int flags, int lock) : path_(path) {
    fd_ = ::open(path.c_str(), flags | O_CLOEXEC, 0644);
    if (fd_ < 0) io_error("cannot open", path);
    if (::flock(fd_, lock) != 0) {
      ::close(fd_);
      io_error("cannot lock", path);
    }
  }
  ~LockedFile() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
  LockedFile(const LockedFile&) = delete;
  LockedFile& operator=(const LockedFile&) = delete;

  std::string read_all() {
    std::string out;
    if (::lseek(fd_, 0, SEEK_SET) < 0) io_error("cannot seek", path_);
    char buf[1 << 16];
    while (true) {
      ssize_t n = ::read(fd_, buf, sizeof buf);
      if (n < 0) {
        if (errno == EINTR) continue;
        io_error("cannot read", path_);
      }
      if (n == 0) break;
      out.append(buf, static_cast<std::size_t>(n));
    }
    return out;
  }

  void write_all(std::string_view data) {
    while (!data.empty()) {
      ssize_t n = ::write(fd_, data.data(), data.size());
      if (n < 0) {
        if (errno == EINTR) continue;
        io_error("cannot write", path_);
      }
      data.remove_prefix(static_cast<std::size_t>(n));
    }
    if (::fsync(fd_) != 0) io_error("cannot sync", path_);
  }

  void truncate() {
    if (::ftruncate(fd_, 0) != 0) io_error("cannot truncate", path_);
  }

 private:
  std::filesystem::path path_;
  int fd_ = -1;
};

json entry_to_json(const LogEntry& e) {
  return {{"seq", e.seq},
          {"kind", std::string(to_string(e.kind))},
          {"recorded_at", e.recorded_at},
          {"checksum", e.checksum},
          {"payload", e.payload}};
}

void verify_sequence(const std::vector<LogEntry>& entries) {
  std::uint64_t expect = 1;
  for (const auto& e : entries) {
    if (e.seq != expect) {
      throw Error(ErrorCode::OutOfOrderSeq, "expected seq " + std::to_string(expect) + ", found " +
                                                std::to_string(e.seq));
    }
    if (payload_checksum(e.payload) != e.checksum) {
      throw Error(ErrorCode::ChecksumMismatch, "payload checksum mismatch at seq " + std::to_string(e.seq));
    }
    ++expect;
  }
}

}  // namespace

std::string_view to_string(EntryKind k) { return k == EntryKind::Bootstrap ? "Bootstrap" : "Amendment"; }

std::string payload_checksum(const json& payload) {
  std::string bytes = payload.dump();
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::Io, "SHA-256 digest failed");
  }
  return "sha256:" + hex(md, len);
}

std::string utc_timestamp() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json bootstrap_payload(const NormDocument& doc) { return to_json(doc); }

json amendment_payload(const Urn& concept_urn, const AmendmentScript& script) {
  return {{"concept", format_urn(concept_urn)}, {"script", to_json(script)}};
}

const LogEntry& EventLog::append(EntryKind kind, json payload, std::string recorded_at) {
  LogEntry e;
  e.seq = entries_.size() + 1;
  e.kind = kind;
  e.checksum = payload_checksum(payload);
  e.payload = std::move(payload);
  e.recorded_at = std::move(recorded_at);
  entries_.push_back(std::move(e));
  return entries_.back();
}

EventLog EventLog::prefix(std::size_t n) const {
  EventLog out;
  out.entries_.assign(entries_.begin(), entries_.begin() + static_cast<std::ptrdiff_t>(std::min(n, entries_.size())));
  return out;
}

std::string EventLog::serialize() const {
  std::string out = header_line() + "\n";
  for (const auto& e : entries_) out += entry_to_json(e).dump() + "\n";
  return out;
}

EventLog EventLog::deserialize(std::string_view text) {
  EventLog log;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (!text.empty()) {
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error&) {
      throw Error(ErrorCode::LogFormat, "line " + std::to_string(line_no) + " is not a JSON record");
    }
    if (!header_seen) {
      if (!j.is_object() || j.value("format", "") != kLogFormat) {
        throw Error(ErrorCode::LogFormat, "missing normgraph-log header");
      }
      if (j.value("version", 0) != kLogVersion) {
        throw Error(ErrorCode::LogFormat, "unsupported log version " + j.value("version", json()).dump());
      }
      header_seen = true;
      continue;
    }
    LogEntry e;
    try {
      e.seq = j.at("seq").get<std::uint64_t>();
      auto kind = j.at("kind").get<std::string>();
      if (kind == "Bootstrap") {
        e.kind = EntryKind::Bootstrap;
      } else if (kind == "Amendment") {
        e.kind = EntryKind::Amendment;
      } else {
        throw Error(ErrorCode::LogFormat, "line " + std::to_string(line_no) + ": unknown entry kind " + kind);
      }
      e.recorded_at = j.at("recorded_at").get<std::string>();
      e.checksum = j.at("checksum").get<std::string>();
      e.payload = j.at("payload");
    } catch (const json::exception& ex) {
      throw Error(ErrorCode::LogFormat, "line " + std::to_string(line_no) + ": " + ex.what());
    }
    log.entries_.push_back(std::move(e));
  }
  if (!header_seen) throw Error(ErrorCode::LogFormat, "missing normgraph-log header");
  verify_sequence(log.entries_);
  return log;
}

TemporalGraph replay(const EventLog& log) {
  verify_sequence(log.entries());
  TemporalGraph g;
  for (const auto& e : log.entries()) {
    try {
      if (e.kind == EntryKind::Bootstrap) {
        g = bootstrap_norm(g, norm_document_from_json(e.payload));
      } else {
        if (!e.payload.is_object() || !e.payload.contains("concept") || !e.payload.contains("script") ||
            !e.payload.at("concept").is_string()) {
          throw Error(ErrorCode::InvalidScript, "amendment entry needs 'concept' and 'script'");
        }
        Urn concept_urn = parse_urn(e.payload.at("concept").get<std::string>());
        g = apply_amendment(g, concept_urn, amendment_script_from_json(e.payload.at("script"))).first;
      }
    } catch (const Error& err) {
      throw Error(ErrorCode::ReplayFailure, "seq " + std::to_string(e.seq) + ": " + err.what());
    }
  }
  return g;
}

void init_log_file(const std::filesystem::path& path) {
  if (std::filesystem::exists(path)) {
    throw Error(ErrorCode::Io, "log already exists: " + path.string());
  }
  LockedFile f(path, O_RDWR | O_CREAT | O_EXCL, LOCK_EX);
  f.write_all(header_line() + "\n");
}

EventLog load_log_file(const std::filesystem::path& path) {
  LockedFile f(path, O_RDONLY, LOCK_SH);
  return EventLog::deserialize(f.read_all());
}

void save_log_file(const std::filesystem::path& path, const EventLog& log) {
  LockedFile f(path, O_RDWR | O_CREAT, LOCK_EX);
  f.truncate();
  f.write_all(log.serialize());
}

LogEntry append_to_log_file(const std::filesystem::path& path, EntryKind kind, json payload,
                            std::string recorded_at, const std::function<void(const EventLog&)>& precheck) {
  LockedFile f(path, O_RDWR | O_APPEND, LOCK_EX);
  EventLog log = EventLog::deserialize(f.read_all());
  if (precheck) precheck(log);
  LogEntry e = log.append(kind, std::move(payload), std::move(recorded_at));
  f.write_all(entry_to_json(e).dump() + "\n");
  return e;
}

}  // namespace normgraph
