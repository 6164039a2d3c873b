#include "essencery/store.hpp"

#include <algorithm>
#include <ctime>
#include <fstream>

#include "essencery/essfmt.hpp"
#include "text_util.hpp"

namespace essencery {

namespace fs = std::filesystem;

std::string format_utc(std::chrono::sys_seconds t) {
  const std::time_t tt = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

namespace {

std::chrono::sys_seconds modified_time(const fs::path& path) {
  const auto ftime = fs::last_write_time(path);
  const auto sys = std::chrono::time_point_cast<std::chrono::system_clock::duration>(
      ftime - fs::file_time_type::clock::now() + std::chrono::system_clock::now());
  return std::chrono::floor<std::chrono::seconds>(sys);
}

bool is_temp_file(const fs::path& path) { return path.filename().string().find(".ess.tmp-") != std::string::npos; }

}  // namespace

bool GraphStore::is_valid_graph_id(std::string_view id) {
  if (id.empty() || id.size() > 64) return false;
  for (const char c : id) {
    if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9'))) return false;
  }
  return true;
}

GraphStore::GraphStore(fs::path data_dir) : data_dir_(std::move(data_dir)) {
  std::error_code ec;
  if (!fs::is_directory(data_dir_, ec)) throw StoreError("data directory " + data_dir_.string() + " does not exist");
  const fs::path probe = data_dir_ / ".write-probe";
  {
    std::ofstream out(probe);
    if (!out || !(out << "ok") || !out.flush()) {
      throw StoreError("data directory " + data_dir_.string() + " is not writable");
    }
  }
  fs::remove(probe, ec);
  for (const auto& entry : fs::directory_iterator(data_dir_, ec)) {
    if (entry.is_regular_file() && is_temp_file(entry.path())) fs::remove(entry.path(), ec);
  }
}

fs::path GraphStore::path_for(const std::string& id) const { return data_dir_ / (id + ".ess"); }

std::mutex& GraphStore::lock_for(const std::string& id) {
  std::lock_guard guard(locks_guard_);
  auto& slot = locks_[id];
  if (!slot) slot = std::make_unique<std::mutex>();
  return *slot;
}

std::vector<GraphSummary> GraphStore::list(std::vector<std::string>* warnings) const {
  std::vector<GraphSummary> out;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(data_dir_, ec)) {
    const fs::path& path = entry.path();
    if (!entry.is_regular_file() || path.extension() != ".ess") continue;
    const std::string id = path.stem().string();
    auto warn = [&](const std::string& message) {
      if (warnings) warnings->push_back(path.filename().string() + ": " + message);
    };
    if (!is_valid_graph_id(id)) {
      warn("file name is not a valid graph id");
      continue;
    }
    try {
      const Graph g = essfmt::parse(detail::read_file(path));
      if (g.id != id) {
        warn("meta id \"" + g.id + "\" does not match the file name");
        continue;
      }
      out.push_back({id, g.title, g.revision, modified_time(path)});
    } catch (const std::exception& e) {
      warn(e.what());
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return out;
}

Graph GraphStore::create(std::string title) {
  std::lock_guard guard(create_mutex_);
  Graph g;
  do {
    g.id = generate_document_id();
  } while (fs::exists(path_for(g.id)));
  g.title = std::move(title);
  g.revision = 0;
  std::lock_guard lock(lock_for(g.id));
  detail::write_file_atomic(path_for(g.id), essfmt::print(g), before_rename_);
  return g;
}

std::optional<Graph> GraphStore::load(const std::string& id) const {
  if (!is_valid_graph_id(id)) return std::nullopt;
  const fs::path path = path_for(id);
  std::string text;
  try {
    text = detail::read_file(path);
  } catch (const std::exception&) {
    std::error_code ec;
    if (!fs::exists(path, ec)) return std::nullopt;
    throw;
  }
  return essfmt::parse(text);
}

GraphStore::SaveResult GraphStore::save(const std::string& id, std::uint64_t expected_revision, Graph graph) {
  if (!is_valid_graph_id(id)) return {SaveStatus::NotFound, 0};
  std::lock_guard lock(lock_for(id));
  const auto current = load(id);
  if (!current) return {SaveStatus::NotFound, 0};
  if (current->revision != expected_revision) return {SaveStatus::Stale, current->revision};
  graph.id = id;
  graph.revision = expected_revision + 1;
  detail::write_file_atomic(path_for(id), essfmt::print(graph), before_rename_);
  return {SaveStatus::Saved, graph.revision};
}

bool GraphStore::remove(const std::string& id) {
  if (!is_valid_graph_id(id)) return false;
  std::lock_guard lock(lock_for(id));
  std::error_code ec;
  return fs::remove(path_for(id), ec);
}

}  // namespace essencery
