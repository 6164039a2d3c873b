#include "support.hpp"

#include <fstream>
#include <sstream>

#include "essencery/session.hpp"

#ifndef ESSENCERY_TEST_DIR
#define ESSENCERY_TEST_DIR "tests"
#endif

namespace essencery::testing {

std::filesystem::path test_dir() { return ESSENCERY_TEST_DIR; }

std::filesystem::path fixture(const std::string& relative) { return test_dir() / "fixtures" / relative; }

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

namespace {

const std::vector<std::string> kPieces = {
    "a", "b", "Z", "7", " ", "_", "-", ".", "å", "ä", "ö", "Å", "Ä", "Ö", "æ", "ø", "ü", "ß",
    "é", "Ω", "漢", "字", "🙂", "\"", "\\", "\n", "#", "{", "}", "->", "'", "\t", "&", "<",
};

int pick(std::mt19937& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

template <typename Map>
const std::string& random_key(std::mt19937& rng, const Map& map) {
  auto it = map.begin();
  std::advance(it, pick(rng, 0, static_cast<int>(map.size()) - 1));
  return it->first;
}

Position random_position(std::mt19937& rng) { return {pick(rng, -2000, 2000), pick(rng, -2000, 2000)}; }

const std::vector<std::string> kUrls = {
    "https://essence.example.org/practice", "http://example.com/a?b=c#d", "mailto:team@example.org",
    "https://xn--jyvskyl-7wae.fi/kurssi", "ftp://files.example.net/cards.pdf",
};

Card random_card(std::mt19937& rng, const std::string& owner) {
  Card card;
  card.owner = owner;
  if (pick(rng, 0, 2) > 0) card.description = random_text(rng, 20);
  for (int i = pick(rng, 0, 4); i > 0; --i) card.items.push_back(random_text(rng));
  for (int i = pick(rng, 0, 2); i > 0; --i) card.links.push_back(kUrls[pick(rng, 0, int(kUrls.size()) - 1)]);
  return card;
}

KernelPath random_kernel_path(std::mt19937& rng) {
  static const std::vector<KernelPath> paths = {
      {KernelCategory::Alpha, "Work"},         {KernelCategory::Alpha, "Team"},
      {KernelCategory::Alpha, "Requirements"}, {KernelCategory::Space, "ShapeTheSystem"},
      {KernelCategory::Competency, "Testing"}, {KernelCategory::Alpha, "Nope"},
  };
  return paths[pick(rng, 0, int(paths.size()) - 1)];
}

}  // namespace

std::string random_text(std::mt19937& rng, std::size_t max_len) {
  std::string out;
  const int len = pick(rng, 0, static_cast<int>(max_len));
  for (int i = 0; i < len; ++i) out += kPieces[pick(rng, 0, int(kPieces.size()) - 1)];
  return out;
}

Graph random_graph(std::mt19937& rng, const GraphLimits& limits) {
  EditSession session(Graph{"g" + std::to_string(pick(rng, 0, 9999)), random_text(rng), 0, {}, {}, {}, {}, {}});
  const int nodes = pick(rng, 0, limits.max_nodes);
  for (int i = 0; i < nodes; ++i) {
    Node n;
    n.id = fresh_id(session.graph(), "n");
    n.kind = kAllNodeKinds[pick(rng, 0, 5)];
    n.name = random_text(rng);
    n.position = random_position(rng);
    if (pick(rng, 0, 1)) n.area = kAllAreas[pick(rng, 0, 2)];
    session.apply(cmd::AddNode{n});
  }
  for (int i = pick(rng, 0, limits.max_notes); i > 0; --i) {
    session.apply(cmd::AddNote{TextNote{fresh_id(session.graph(), "t"), random_text(rng, 30), random_position(rng)}});
  }
  if (!session.graph().nodes.empty()) {
    for (int i = pick(rng, 0, limits.max_relations); i > 0; --i) {
      Relation r;
      r.id = fresh_id(session.graph(), "r");
      r.source = random_key(rng, session.graph().nodes);
      r.target = random_key(rng, session.graph().nodes);
      r.directed = pick(rng, 0, 3) > 0;
      if (pick(rng, 0, 1)) r.label = random_text(rng);
      session.apply(cmd::AddRelation{r});
    }
    for (int i = pick(rng, 0, limits.max_cards); i > 0; --i) {
      session.apply(cmd::SetCard{random_card(rng, random_key(rng, session.graph().nodes))});
    }
    for (int i = pick(rng, 0, 6); i > 0; --i) {
      session.apply(cmd::SetBinding{Binding{random_key(rng, session.graph().nodes), random_kernel_path(rng)}});
    }
  }
  return session.graph();
}

Command random_command(std::mt19937& rng, const Graph& g) {
  const bool bogus = pick(rng, 0, 19) == 0;
  auto node_id = [&]() -> std::string {
    if (bogus || g.nodes.empty()) return "missing" + std::to_string(pick(rng, 0, 3));
    return random_key(rng, g.nodes);
  };
  const int choice = g.nodes.empty() ? pick(rng, 0, 1) : pick(rng, 0, 14);
  switch (choice) {
    case 0: {
      Node n{fresh_id(g, "n"), kAllNodeKinds[pick(rng, 0, 5)], random_text(rng), random_position(rng), std::nullopt};
      if (pick(rng, 0, 1)) n.area = kAllAreas[pick(rng, 0, 2)];
      return cmd::AddNode{n};
    }
    case 1: return cmd::AddNote{TextNote{fresh_id(g, "t"), random_text(rng), random_position(rng)}};
    case 2: return cmd::RemoveNode{node_id()};
    case 3: return cmd::RenameNode{node_id(), random_text(rng)};
    case 4: {
      cmd::MoveNodes move;
      for (int i = pick(rng, 1, 4); i > 0; --i) move.ids.insert(node_id());
      if (!g.notes.empty() && pick(rng, 0, 1)) move.ids.insert(random_key(rng, g.notes));
      move.delta = {pick(rng, -300, 300), pick(rng, -300, 300)};
      return move;
    }
    case 5: return cmd::SetKind{node_id(), kAllNodeKinds[pick(rng, 0, 5)]};
    case 6:
    case 7: {
      Relation r{fresh_id(g, "r"), node_id(), node_id(), std::nullopt, pick(rng, 0, 1) == 1};
      if (pick(rng, 0, 1)) r.label = random_text(rng);
      return cmd::AddRelation{r};
    }
    case 8:
      if (!g.relations.empty() && !bogus) return cmd::RemoveRelation{random_key(rng, g.relations)};
      return cmd::RemoveRelation{"r999"};
    case 9:
      if (!g.relations.empty()) {
        std::optional<std::string> label;
        if (pick(rng, 0, 2)) label = random_text(rng);
        return cmd::SetRelationLabel{random_key(rng, g.relations), label};
      }
      return cmd::SetRelationLabel{"r999", std::nullopt};
    case 10:
      if (!g.notes.empty()) return cmd::SetNoteText{random_key(rng, g.notes), random_text(rng)};
      return cmd::RemoveNote{"t999"};
    case 11:
      if (!g.notes.empty()) return cmd::RemoveNote{random_key(rng, g.notes)};
      return cmd::RemoveNote{"t999"};
    case 12: return cmd::SetCard{random_card(rng, node_id())};
    case 13:
      if (!g.cards.empty() && pick(rng, 0, 1)) return cmd::RemoveCard{random_key(rng, g.cards)};
      if (!g.bindings.empty()) return cmd::RemoveBinding{random_key(rng, g.bindings)};
      return cmd::RemoveCard{node_id()};
    default: return cmd::SetBinding{Binding{node_id(), random_kernel_path(rng)}};
  }
}

std::vector<std::string> dangling_references(const Graph& graph) {
  std::vector<std::string> out;
  auto node_exists = [&](const std::string& id) {
    for (const auto& [key, node] : graph.nodes) {
      if (node.id == id) return true;
    }
    return false;
  };
  for (const auto& [key, rel] : graph.relations) {
    if (!node_exists(rel.source)) out.push_back("relation " + rel.id + " source " + rel.source);
    if (!node_exists(rel.target)) out.push_back("relation " + rel.id + " target " + rel.target);
  }
  for (const auto& [key, card] : graph.cards) {
    if (!node_exists(card.owner)) out.push_back("card owner " + card.owner);
  }
  for (const auto& [key, binding] : graph.bindings) {
    if (!node_exists(binding.owner)) out.push_back("binding owner " + binding.owner);
  }
  return out;
}

Graph week_of_project_work() {
  EditSession s(Graph{"a1b2c3d4", "Week 3 – fuzzy front end project", 0, {}, {}, {}, {}, {}});
  auto node = [&](const char* id, NodeKind kind, const char* name, int x, int y, std::optional<Area> area) {
    s.apply(cmd::AddNode{Node{id, kind, name, {x, y}, area}});
  };
  node("n1", NodeKind::Alpha, "Stakeholders", 100, 100, Area::Customer);
  node("n2", NodeKind::Alpha, "Requirements", 400, 100, Area::Solution);
  node("n3", NodeKind::Alpha, "Work", 700, 100, Area::Endeavor);
  node("n4", NodeKind::Alpha, "Team", 1000, 100, Area::Endeavor);
  node("n5", NodeKind::ActivitySpace, "Understand Stakeholder Needs", 100, 300, Area::Customer);
  node("n6", NodeKind::Activity, "Customer interview", 100, 500, Area::Customer);
  node("n7", NodeKind::Activity, "Idea workshop", 400, 500, Area::Solution);
  node("n8", NodeKind::WorkProduct, "Interview notes", 100, 700, std::nullopt);
  node("n9", NodeKind::WorkProduct, "Paper prototype", 400, 700, Area::Solution);
  node("n10", NodeKind::Activity, "Weekly meeting", 700, 500, Area::Endeavor);
  node("n11", NodeKind::Competency, "Development", 1000, 300, Area::Solution);
  node("n12", NodeKind::Pattern, "Scrum master – Työviikko", 1000, 500, Area::Endeavor);

  auto rel = [&](const char* id, const char* from, const char* to, std::optional<std::string> label,
                 bool directed = true) {
    s.apply(cmd::AddRelation{Relation{id, from, to, std::move(label), directed}});
  };
  rel("r1", "n5", "n1", "involves");
  rel("r2", "n6", "n5", "part of");
  rel("r3", "n6", "n8", "produces");
  rel("r4", "n8", "n2", "describes");
  rel("r5", "n7", "n9", "produces");
  rel("r6", "n9", "n2", "evidences");
  rel("r7", "n8", "n7", "input to");
  rel("r8", "n10", "n3", "tracks");
  rel("r9", "n4", "n10", "attends");
  rel("r10", "n12", "n10", "facilitates");
  rel("r11", "n11", "n9", "needed for");
  rel("r12", "n4", "n3", std::nullopt, false);
  rel("r13", "n3", "n3", "iterates");
  rel("r14", "n1", "n6", "interviewed in", false);

  s.apply(cmd::AddNote{TextNote{"t1", "Week 3: ideas → prototype\nNext: usability test", {400, 300}}});
  s.apply(cmd::SetCard{Card{"n6", "Interview two potential users about their weekly planning.",
                            {"Prepare question list", "Record answers", "Summarise findings"},
                            {"https://essence.example.org/practices/interviews"}}});
  s.apply(cmd::SetBinding{Binding{"n2", {KernelCategory::Alpha, "Requirements"}}});
  s.apply(cmd::SetBinding{Binding{"n3", {KernelCategory::Alpha, "Work"}}});
  s.apply(cmd::SetBinding{Binding{"n5", {KernelCategory::Space, "UnderstandStakeholderNeeds"}}});
  s.apply(cmd::SetBinding{Binding{"n11", {KernelCategory::Competency, "Development"}}});
  return s.graph();
}

}  // namespace essencery::testing
