#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace essencery {

enum class KernelCategory { Alpha, Space, Competency };

std::string_view to_string(KernelCategory category);
std::optional<KernelCategory> parse_category(std::string_view text);

struct AreaOfConcern {
  std::string key;           // customer | solution | endeavor in the standard kernel
  std::string display_name;
  std::string color;         // render-color token, e.g. "green"
  bool operator==(const AreaOfConcern&) const = default;
};

struct KernelAlpha {
  std::string name;
  std::string area;
  std::vector<std::string> states;
  bool operator==(const KernelAlpha&) const = default;
};

struct KernelSpace {
  std::string name;
  std::string area;
  bool operator==(const KernelSpace&) const = default;
};

struct KernelCompetency {
  std::string name;
  std::string area;
  std::vector<std::string> levels;
  bool operator==(const KernelCompetency&) const = default;
};

/// Immutable after load. Element lists are kept grouped by area, in area
/// declaration order.
struct Kernel {
  std::string title;
  std::vector<AreaOfConcern> areas;
  std::vector<KernelAlpha> alphas;
  std::vector<KernelSpace> spaces;
  std::vector<KernelCompetency> competencies;

  const AreaOfConcern* find_area(std::string_view key) const;
  bool operator==(const Kernel&) const = default;
};

/// `kernel.<category>.<Name>`
struct KernelPath {
  KernelCategory category = KernelCategory::Alpha;
  std::string name;

  static std::optional<KernelPath> parse(std::string_view text);
  std::string str() const;
  bool operator==(const KernelPath&) const = default;
  auto operator<=>(const KernelPath&) const = default;
};

struct KernelElementRef {
  KernelCategory category = KernelCategory::Alpha;
  const KernelAlpha* alpha = nullptr;
  const KernelSpace* space = nullptr;
  const KernelCompetency* competency = nullptr;

  const std::string& name() const;
  const std::string& area() const;
  KernelPath path() const { return {category, name()}; }
};

enum class ResolveStatus { Found, NotFound, WrongCategory, Malformed };

struct Resolution {
  ResolveStatus status = ResolveStatus::NotFound;
  std::optional<KernelElementRef> element;           // set iff Found
  std::optional<KernelCategory> found_in_category;   // set iff WrongCategory

  explicit operator bool() const { return status == ResolveStatus::Found; }
};

/// Exact, case-sensitive lookup of `path` in `kernel`.
Resolution resolve(const Kernel& kernel, const KernelPath& path);
Resolution resolve(const Kernel& kernel, std::string_view path_text);

/// Every element of the kernel, in alpha, space, competency order.
std::vector<KernelElementRef> elements(const Kernel& kernel);

/// Failure to load or validate a kernel. `line()` is 0 when the error has no
/// source position (missing file, I/O).
class KernelError : public std::runtime_error {
 public:
  KernelError(std::string message, int line = 0, int column = 0);
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

enum class KernelLoadMode { Replace, Extend };

/// Location of the shipped kernel data file.
std::filesystem::path standard_kernel_path();

Kernel load_standard_kernel();

/// Parses kernel text. In Extend mode the declarations are merged into `base`;
/// an area key already in `base` merges its elements and overrides display name
/// and color, any element name already present in its category is rejected.
Kernel parse_kernel(std::string_view text, KernelLoadMode mode = KernelLoadMode::Replace,
                    const Kernel* base = nullptr);

Kernel load_kernel(const std::filesystem::path& path, KernelLoadMode mode = KernelLoadMode::Replace,
                   const Kernel* base = nullptr);

/// Checks area references and name uniqueness; throws KernelError.
void validate_kernel(const Kernel& kernel);

/// Kernel file text that parses back to an equal kernel.
std::string print_kernel(const Kernel& kernel);

/// Standard kernel, then `override_path` (or $ESSENCERY_KERNEL when unset)
/// applied in `mode` (or $ESSENCERY_KERNEL_MODE, default extend).
Kernel load_effective_kernel(const std::optional<std::filesystem::path>& override_path = std::nullopt,
                             std::optional<KernelLoadMode> mode = std::nullopt);

std::optional<KernelLoadMode> parse_load_mode(std::string_view text);

}  // namespace essencery
