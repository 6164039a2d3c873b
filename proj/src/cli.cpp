#include "essencery/cli.hpp"

#include <CLI11.hpp>

#include <csignal>
#include <fstream>
#include <iostream>

#include "essencery/essfmt.hpp"
#include "essencery/json_codec.hpp"
#include "essencery/lint.hpp"
#include "essencery/render.hpp"
#include "essencery/service.hpp"
#include "text_util.hpp"

namespace essencery::cli {

namespace {

namespace fs = std::filesystem;

constexpr int kOk = 0;
constexpr int kFindings = 1;
constexpr int kFailure = 2;

struct Options {
  std::string kernel_path;
  std::string kernel_mode;

  std::string file;
  std::string title;
  bool write = false;
  bool deny_warnings = false;
  std::string format = "text";
  std::string output;

  int port = 8080;
  std::string data_dir;
  std::string host = "127.0.0.1";
  std::string ui_dir;
};

Kernel effective_kernel(const Options& o) {
  std::optional<fs::path> path;
  if (!o.kernel_path.empty()) path = o.kernel_path;
  std::optional<KernelLoadMode> mode;
  if (!o.kernel_mode.empty()) mode = parse_load_mode(o.kernel_mode);
  return load_effective_kernel(path, mode);
}

Graph read_graph(const std::string& file) { return essfmt::parse(detail::read_file(file)); }

int cmd_new(const Options& o, std::ostream& out, std::ostream& err) {
  if (fs::exists(o.file)) {
    err << "essencery: " << o.file << " already exists\n";
    return kFailure;
  }
  Graph g;
  g.id = generate_document_id();
  g.title = o.title;
  detail::write_file_atomic(o.file, essfmt::print(g));
  out << "created " << o.file << " (id " << g.id << ")\n";
  return kOk;
}

int cmd_fmt(const Options& o, std::ostream& out) {
  const auto result = essfmt::format_file(o.file, o.write);
  if (!o.write) out << result.canonical;
  return kOk;
}

int cmd_lint(const Options& o, std::ostream& out) {
  const Kernel kernel = effective_kernel(o);
  const Graph graph = read_graph(o.file);
  const auto diagnostics = lint::lint(graph, kernel);
  if (o.format == "structured") {
    nlohmann::json report = {{"file", o.file}, {"diagnostics", json_codec::to_json(diagnostics)}};
    out << report.dump(2) << "\n";
  } else {
    for (const auto& d : diagnostics) out << lint::format_line(d) << "\n";
  }
  if (lint::has_errors(diagnostics)) return kFindings;
  if (o.deny_warnings && lint::has_warnings(diagnostics)) return kFindings;
  return kOk;
}

void write_output(const std::string& target, const std::string& contents, std::ostream& out) {
  if (target == "-") {
    out << contents;
  } else {
    detail::write_file_atomic(target, contents);
  }
}

int cmd_render(const Options& o, std::ostream& out) {
  const Kernel kernel = effective_kernel(o);
  const Graph graph = read_graph(o.file);
  write_output(o.output, render::render_graph_svg(graph, render::RenderTheme::from_kernel(kernel)), out);
  return kOk;
}

int cmd_cards(const Options& o, std::ostream& out) {
  const Kernel kernel = effective_kernel(o);
  const Graph graph = read_graph(o.file);
  const auto theme = render::RenderTheme::from_kernel(kernel);
  fs::create_directories(o.output);
  for (const auto& [owner, card] : graph.cards) {
    const Node& node = graph.nodes.at(owner);
    const auto binding = graph.bindings.find(owner);
    const Binding* bound = binding == graph.bindings.end() ? nullptr : &binding->second;
    detail::write_file_atomic(fs::path(o.output) / (owner + ".svg"),
                              render::render_card_svg(node, card, bound, kernel, theme));
  }
  out << graph.cards.size() << " card(s) written to " << o.output << "\n";
  return kOk;
}

Service* g_running = nullptr;

extern "C" void on_signal(int) {
  if (g_running) g_running->stop();
}

int cmd_serve(const Options& o, std::ostream& out, std::ostream& err) {
  StoreConfig config;
  config.data_dir = o.data_dir;
  config.port = o.port;
  config.host = o.host;
  if (!o.kernel_path.empty()) config.kernel_path = o.kernel_path;
  if (!o.ui_dir.empty()) config.ui_dir = o.ui_dir;
  Service service(config, effective_kernel(o), [&err](std::string_view m) { err << m << std::endl; });
  const int port = service.bind();
  out << "serving " << o.data_dir << " on http://" << o.host << ":" << port << "/" << std::endl;
  std::vector<std::string> warnings;
  service.store().list(&warnings);
  for (const auto& w : warnings) err << "skipping " << w << std::endl;
  g_running = &service;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  service.listen();
  g_running = nullptr;
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Draw, check, format and render Essence practice graphs", "essencery"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--kernel", o.kernel_path, "Kernel file (default: $ESSENCERY_KERNEL)");
  app.add_option("--kernel-mode", o.kernel_mode, "How --kernel combines with the standard kernel")
      ->check(CLI::IsMember({"extend", "replace"}));

  auto* new_cmd = app.add_subcommand("new", "Write an empty graph");
  new_cmd->add_option("file", o.file)->required();
  new_cmd->add_option("--title", o.title, "Graph title")->required();

  auto* fmt_cmd = app.add_subcommand("fmt", "Print the canonical form of a graph");
  fmt_cmd->add_option("file", o.file)->required();
  fmt_cmd->add_flag("--write", o.write, "Rewrite the file in place");

  auto* lint_cmd = app.add_subcommand("lint", "Check a graph; exit 1 on errors");
  lint_cmd->add_option("file", o.file)->required();
  lint_cmd->add_flag("--deny-warnings", o.deny_warnings, "Treat warnings as findings");
  lint_cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "structured"}));

  auto* render_cmd = app.add_subcommand("render", "Render a graph to SVG");
  render_cmd->add_option("file", o.file)->required();
  render_cmd->add_option("-o,--output", o.output, "SVG file, or - for stdout")->required();

  auto* cards_cmd = app.add_subcommand("cards", "Render one SVG per practice card");
  cards_cmd->add_option("file", o.file)->required();
  cards_cmd->add_option("-o,--output", o.output, "Output directory")->required();

  auto* serve_cmd = app.add_subcommand("serve", "Run the graph service");
  serve_cmd->add_option("--port", o.port, "TCP port")->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--data-dir", o.data_dir, "Directory of .ess files")->required();
  serve_cmd->add_option("--host", o.host, "Listen address");
  serve_cmd->add_option("--ui-dir", o.ui_dir, "Editor UI directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "essencery: " << e.what() << "\n" << app.help();
    return kFailure;
  }

  try {
    if (*new_cmd) return cmd_new(o, out, err);
    if (*fmt_cmd) return cmd_fmt(o, out);
    if (*lint_cmd) return cmd_lint(o, out);
    if (*render_cmd) return cmd_render(o, out);
    if (*cards_cmd) return cmd_cards(o, out);
    if (*serve_cmd) return cmd_serve(o, out, err);
  } catch (const ParseError& e) {
    err << o.file << ":" << e.what() << "\n";
    return kFailure;
  } catch (const std::exception& e) {
    err << "essencery: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}

}  // namespace essencery::cli
