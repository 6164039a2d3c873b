#pragma once

// Shared test helpers: random graph and command generators, an independent
// reference-scan oracle and the scripted "week of project work" fixture.

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "essencery/command.hpp"
#include "essencery/graph.hpp"

namespace essencery::testing {

std::filesystem::path test_dir();
std::filesystem::path fixture(const std::string& relative);
std::string read_text(const std::filesystem::path& path);

/// Random UTF-8 text mixing ASCII, Nordic letters, CJK, emoji and the
/// characters the printer must escape.
std::string random_text(std::mt19937& rng, std::size_t max_len = 12);

struct GraphLimits {
  int max_nodes = 50;
  int max_relations = 100;
  int max_cards = 20;
  int max_notes = 8;
};

/// A graph built only through EditSession commands.
Graph random_graph(std::mt19937& rng, const GraphLimits& limits = {});

/// A command against `graph`; mostly valid, occasionally referencing unknown
/// ids so rejection paths are exercised too.
Command random_command(std::mt19937& rng, const Graph& graph);

/// Every relation endpoint, card owner and binding owner that does not name
/// a node, found by enumerating all references.
std::vector<std::string> dangling_references(const Graph& graph);

/// 12 nodes, 14 relations: one week of a student project drawn as an
/// Essence graph.
Graph week_of_project_work();

}  // namespace essencery::testing
