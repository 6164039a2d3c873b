#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "essencery/graph.hpp"

namespace essencery {

struct GraphSummary {
  std::string id;
  std::string title;
  std::uint64_t revision = 0;
  std::chrono::sys_seconds modified;
};

/// `YYYY-MM-DDTHH:MM:SSZ`
std::string format_utc(std::chrono::sys_seconds t);

class StoreError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One canonical `<id>.ess` file per graph in a data directory. Writes go
/// through a temp file and rename; writes to the same id are serialized.
class GraphStore {
 public:
  enum class SaveStatus { Saved, Stale, NotFound };

  struct SaveResult {
    SaveStatus status = SaveStatus::Saved;
    std::uint64_t revision = 0;  // stored revision after the call
  };

  /// Throws StoreError if `data_dir` is missing or not writable. Leftover
  /// temp files from interrupted saves are removed.
  explicit GraphStore(std::filesystem::path data_dir);

  const std::filesystem::path& data_dir() const noexcept { return data_dir_; }
  std::filesystem::path path_for(const std::string& id) const;

  /// Summaries of every parseable graph file, sorted by id. Files that fail
  /// to parse (or whose meta id disagrees with the file name) are skipped and
  /// described in `warnings`.
  std::vector<GraphSummary> list(std::vector<std::string>* warnings = nullptr) const;

  Graph create(std::string title);

  /// nullopt when no such graph; ParseError if the stored file is corrupt.
  std::optional<Graph> load(const std::string& id) const;

  /// Replaces the stored graph iff its revision equals `expected_revision`;
  /// the stored copy gets revision expected_revision + 1.
  SaveResult save(const std::string& id, std::uint64_t expected_revision, Graph graph);

  bool remove(const std::string& id);

  /// Runs between the durable temp write and the rename (crash simulation).
  void set_before_rename_hook(std::function<void(const std::filesystem::path&)> hook) {
    before_rename_ = std::move(hook);
  }

  /// Lowercase alphanumerics, 1..64 chars. Anything else is never a stored id.
  static bool is_valid_graph_id(std::string_view id);

 private:
  std::mutex& lock_for(const std::string& id);

  std::filesystem::path data_dir_;
  std::function<void(const std::filesystem::path&)> before_rename_;
  mutable std::mutex locks_guard_;
  std::map<std::string, std::unique_ptr<std::mutex>> locks_;
  std::mutex create_mutex_;
};

}  // namespace essencery
