#pragma once

#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "essencery/kernel.hpp"
#include "essencery/store.hpp"

namespace essencery {

struct StoreConfig {
  std::filesystem::path data_dir;
  int port = 8080;  // 0 picks a free port
  std::optional<std::filesystem::path> kernel_path;
  std::string host = "127.0.0.1";
  std::filesystem::path ui_dir;  // static editor assets; empty uses the shipped web/ directory
};

class ServiceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// HTTP front end over a GraphStore.
///
///   GET    /api/graphs               index
///   POST   /api/graphs               {title} -> 201 {id, title, revision}
///   GET    /api/graphs/{id}          structured graph (ETag: "<revision>")
///   GET    /api/graphs/{id}.ess      canonical text
///   PUT    /api/graphs/{id}          If-Match: "<revision>" -> 200 | 404 | 409 | 422 | 428
///   DELETE /api/graphs/{id}          204 | 404
///   GET    /api/graphs/{id}/svg      rendered graph
///   GET    /api/kernel               structured kernel
///   GET    /, /assets/*              editor UI
class Service {
 public:
  using Logger = std::function<void(std::string_view)>;

  /// Throws StoreError for an unusable data directory.
  Service(StoreConfig config, Kernel kernel, Logger log = {});
  ~Service();

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Binds the listening socket; returns the bound port. Throws
  /// ServiceError when the port is unavailable.
  int bind();
  /// Serves until stop(). bind() must have succeeded.
  void listen();
  void stop();

  GraphStore& store();
  const Kernel& kernel() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::filesystem::path default_ui_dir();

}  // namespace essencery
