#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "normgraph/events.hpp"
#include "normgraph/model.hpp"

// Append-only event log. Entries hold the input documents (norm bootstraps
// and amendment scripts); the graph is always a deterministic fold over them.
//
// File format: UTF-8 text, one JSON object per line. The first line is the
// header {"format":"normgraph-log","version":1}; every further line is
// {"seq":N,"kind":"Bootstrap"|"Amendment","recorded_at":"...Z",
//  "checksum":"sha256:<hex>","payload":{...}} where the checksum covers the
// compact, key-sorted serialization of the payload.
namespace normgraph {

inline constexpr std::string_view kLogFormat = "normgraph-log";
inline constexpr int kLogVersion = 1;

enum class EntryKind { Bootstrap, Amendment };
std::string_view to_string(EntryKind k);

struct LogEntry {
  std::uint64_t seq = 0;
  EntryKind kind = EntryKind::Bootstrap;
  nlohmann::json payload;
  std::string recorded_at;
  std::string checksum;

  friend bool operator==(const LogEntry&, const LogEntry&) = default;
};

std::string payload_checksum(const nlohmann::json& payload);
// Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();

nlohmann::json bootstrap_payload(const NormDocument& doc);
nlohmann::json amendment_payload(const Urn& concept_urn, const AmendmentScript& script);

class EventLog {
 public:
  const std::vector<LogEntry>& entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t size() const noexcept { return entries_.size(); }

  const LogEntry& append(EntryKind kind, nlohmann::json payload,
                         std::string recorded_at = utc_timestamp());
  EventLog prefix(std::size_t n) const;

  std::string serialize() const;
  // Verifies header, sequence numbers and checksums. Throws LogFormat,
  // OutOfOrderSeq or ChecksumMismatch.
  static EventLog deserialize(std::string_view text);

  friend bool operator==(const EventLog&, const EventLog&) = default;

 private:
  std::vector<LogEntry> entries_;
};

// Throws ChecksumMismatch, OutOfOrderSeq, or ReplayFailure wrapping the
// underlying domain error.
TemporalGraph replay(const EventLog& log);

// File operations. Writers take an exclusive lock on the log file, readers a
// shared one.
void init_log_file(const std::filesystem::path& path);
EventLog load_log_file(const std::filesystem::path& path);
void save_log_file(const std::filesystem::path& path, const EventLog& log);
// `precheck` runs on the current log contents while the lock is held; it
// vetoes the append by throwing.
LogEntry append_to_log_file(const std::filesystem::path& path, EntryKind kind, nlohmann::json payload,
                            std::string recorded_at = utc_timestamp(),
                            const std::function<void(const EventLog&)>& precheck = {});

}  // namespace normgraph
