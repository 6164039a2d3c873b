#include "essencery/command.hpp"

#include "essencery/utf8.hpp"

namespace essencery {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

using Code = CommandError::Code;

[[noreturn]] void reject(Code code, std::string message) { throw CommandError(code, std::move(message)); }

void require_utf8(std::string_view text, std::string_view what) {
  if (!utf8::valid(text)) reject(Code::InvalidValue, std::string(what) + " is not valid UTF-8");
}

void require_fresh(const Graph& g, const std::string& id) {
  if (!is_valid_id(id)) reject(Code::InvalidValue, "invalid id '" + id + "'");
  if (g.has_element(id)) reject(Code::DuplicateId, "id '" + id + "' already in use");
}

void require_position(Position p) {
  if (!in_canvas(p)) reject(Code::InvalidValue, "position outside canvas bounds");
}

Node& node_at(Graph& g, const std::string& id) {
  const auto it = g.nodes.find(id);
  if (it == g.nodes.end()) reject(Code::UnknownId, "unknown node '" + id + "'");
  return it->second;
}

void validate_card(const Graph& g, const Card& card) {
  if (!g.nodes.count(card.owner)) reject(Code::UnknownId, "unknown node '" + card.owner + "'");
  require_utf8(card.description, "card description");
  for (const auto& item : card.items) require_utf8(item, "card item");
  for (const auto& link : card.links) {
    if (!is_absolute_url(link)) reject(Code::InvalidValue, "'" + link + "' is not an absolute URL");
  }
}

struct Applier {
  Graph& g;

  std::vector<Command> operator()(const cmd::AddNode& c) {
    require_fresh(g, c.node.id);
    require_position(c.node.position);
    require_utf8(c.node.name, "node name");
    g.nodes.emplace(c.node.id, c.node);
    return {cmd::RemoveNode{c.node.id}};
  }

  std::vector<Command> operator()(const cmd::RemoveNode& c) {
    const Node node = node_at(g, c.id);
    std::vector<Command> inverse{cmd::AddNode{node}};
    for (auto it = g.relations.begin(); it != g.relations.end();) {
      if (it->second.source == c.id || it->second.target == c.id) {
        inverse.emplace_back(cmd::AddRelation{it->second});
        it = g.relations.erase(it);
      } else {
        ++it;
      }
    }
    if (const auto card = g.cards.find(c.id); card != g.cards.end()) {
      inverse.emplace_back(cmd::SetCard{card->second});
      g.cards.erase(card);
    }
    if (const auto binding = g.bindings.find(c.id); binding != g.bindings.end()) {
      inverse.emplace_back(cmd::SetBinding{binding->second});
      g.bindings.erase(binding);
    }
    g.nodes.erase(c.id);
    return inverse;
  }

  std::vector<Command> operator()(const cmd::RenameNode& c) {
    Node& node = node_at(g, c.id);
    require_utf8(c.name, "node name");
    std::vector<Command> inverse{cmd::RenameNode{c.id, node.name}};
    node.name = c.name;
    return inverse;
  }

  std::vector<Command> operator()(const cmd::MoveNodes& c) {
    const auto shifted = [&](Position p) {
      const std::int64_t x = std::int64_t{p.x} + c.delta.x;
      const std::int64_t y = std::int64_t{p.y} + c.delta.y;
      if (x < -kCoordinateLimit || x > kCoordinateLimit || y < -kCoordinateLimit || y > kCoordinateLimit) {
        reject(Code::InvalidValue, "move would leave the canvas bounds");
      }
      return Position{static_cast<std::int32_t>(x), static_cast<std::int32_t>(y)};
    };
    // Validate everything before touching the graph.
    for (const auto& id : c.ids) {
      if (const auto n = g.nodes.find(id); n != g.nodes.end()) {
        shifted(n->second.position);
      } else if (const auto t = g.notes.find(id); t != g.notes.end()) {
        shifted(t->second.position);
      } else {
        reject(Code::UnknownId, "unknown node or note '" + id + "'");
      }
    }
    for (const auto& id : c.ids) {
      if (const auto n = g.nodes.find(id); n != g.nodes.end()) {
        n->second.position = shifted(n->second.position);
      } else {
        auto& note = g.notes.at(id);
        note.position = shifted(note.position);
      }
    }
    return {cmd::MoveNodes{c.ids, Position{-c.delta.x, -c.delta.y}}};
  }

  std::vector<Command> operator()(const cmd::SetKind& c) {
    Node& node = node_at(g, c.id);
    std::vector<Command> inverse;
    const auto b = g.bindings.find(c.id);
    if (b == g.bindings.end()) {
      inverse.emplace_back(cmd::SetKind{c.id, node.kind});
    } else if (!binding_compatible(c.kind, b->second.target.category)) {
      inverse.emplace_back(cmd::SetKind{c.id, node.kind});
      inverse.emplace_back(cmd::SetBinding{b->second});
      g.bindings.erase(b);
    } else {
      // Restoring the old kind must not drop the binding the new kind kept.
      inverse.emplace_back(cmd::RemoveBinding{c.id});
      inverse.emplace_back(cmd::SetKind{c.id, node.kind});
      inverse.emplace_back(cmd::SetBinding{b->second});
    }
    node.kind = c.kind;
    return inverse;
  }

  std::vector<Command> operator()(const cmd::AddRelation& c) {
    const Relation& r = c.relation;
    require_fresh(g, r.id);
    for (const auto* end : {&r.source, &r.target}) {
      if (!g.nodes.count(*end)) reject(Code::MissingEndpoint, "relation endpoint '" + *end + "' is not a node");
    }
    if (r.label) require_utf8(*r.label, "relation label");
    g.relations.emplace(r.id, r);
    return {cmd::RemoveRelation{r.id}};
  }

  std::vector<Command> operator()(const cmd::RemoveRelation& c) {
    const auto it = g.relations.find(c.id);
    if (it == g.relations.end()) reject(Code::UnknownId, "unknown relation '" + c.id + "'");
    std::vector<Command> inverse{cmd::AddRelation{it->second}};
    g.relations.erase(it);
    return inverse;
  }

  std::vector<Command> operator()(const cmd::SetRelationLabel& c) {
    const auto it = g.relations.find(c.id);
    if (it == g.relations.end()) reject(Code::UnknownId, "unknown relation '" + c.id + "'");
    if (c.label) require_utf8(*c.label, "relation label");
    std::vector<Command> inverse{cmd::SetRelationLabel{c.id, it->second.label}};
    it->second.label = c.label;
    return inverse;
  }

  std::vector<Command> operator()(const cmd::AddNote& c) {
    require_fresh(g, c.note.id);
    require_position(c.note.position);
    require_utf8(c.note.text, "note text");
    g.notes.emplace(c.note.id, c.note);
    return {cmd::RemoveNote{c.note.id}};
  }

  std::vector<Command> operator()(const cmd::SetNoteText& c) {
    const auto it = g.notes.find(c.id);
    if (it == g.notes.end()) reject(Code::UnknownId, "unknown note '" + c.id + "'");
    require_utf8(c.text, "note text");
    std::vector<Command> inverse{cmd::SetNoteText{c.id, it->second.text}};
    it->second.text = c.text;
    return inverse;
  }

  std::vector<Command> operator()(const cmd::RemoveNote& c) {
    const auto it = g.notes.find(c.id);
    if (it == g.notes.end()) reject(Code::UnknownId, "unknown note '" + c.id + "'");
    std::vector<Command> inverse{cmd::AddNote{it->second}};
    g.notes.erase(it);
    return inverse;
  }

  std::vector<Command> operator()(const cmd::SetCard& c) {
    validate_card(g, c.card);
    std::vector<Command> inverse;
    if (const auto it = g.cards.find(c.card.owner); it != g.cards.end()) {
      inverse.emplace_back(cmd::SetCard{it->second});
      it->second = c.card;
    } else {
      inverse.emplace_back(cmd::RemoveCard{c.card.owner});
      g.cards.emplace(c.card.owner, c.card);
    }
    return inverse;
  }

  std::vector<Command> operator()(const cmd::RemoveCard& c) {
    const auto it = g.cards.find(c.owner);
    if (it == g.cards.end()) reject(Code::UnknownId, "node '" + c.owner + "' has no card");
    std::vector<Command> inverse{cmd::SetCard{it->second}};
    g.cards.erase(it);
    return inverse;
  }

  std::vector<Command> operator()(const cmd::SetBinding& c) {
    if (!g.nodes.count(c.binding.owner)) reject(Code::UnknownId, "unknown node '" + c.binding.owner + "'");
    if (!is_valid_kernel_name(c.binding.target.name)) {
      reject(Code::InvalidValue, "invalid kernel element name '" + c.binding.target.name + "'");
    }
    std::vector<Command> inverse;
    if (const auto it = g.bindings.find(c.binding.owner); it != g.bindings.end()) {
      inverse.emplace_back(cmd::SetBinding{it->second});
      it->second = c.binding;
    } else {
      inverse.emplace_back(cmd::RemoveBinding{c.binding.owner});
      g.bindings.emplace(c.binding.owner, c.binding);
    }
    return inverse;
  }

  std::vector<Command> operator()(const cmd::RemoveBinding& c) {
    const auto it = g.bindings.find(c.owner);
    if (it == g.bindings.end()) reject(Code::UnknownId, "node '" + c.owner + "' has no binding");
    std::vector<Command> inverse{cmd::SetBinding{it->second}};
    g.bindings.erase(it);
    return inverse;
  }

  static bool is_valid_kernel_name(const std::string& name) {
    return KernelPath::parse("kernel.alpha." + name).has_value();
  }
};

}  // namespace

std::string_view command_name(const Command& command) {
  return std::visit(overloaded{
                        [](const cmd::AddNode&) { return "AddNode"; },
                        [](const cmd::RemoveNode&) { return "RemoveNode"; },
                        [](const cmd::RenameNode&) { return "RenameNode"; },
                        [](const cmd::MoveNodes&) { return "MoveNodes"; },
                        [](const cmd::SetKind&) { return "SetKind"; },
                        [](const cmd::AddRelation&) { return "AddRelation"; },
                        [](const cmd::RemoveRelation&) { return "RemoveRelation"; },
                        [](const cmd::SetRelationLabel&) { return "SetRelationLabel"; },
                        [](const cmd::AddNote&) { return "AddNote"; },
                        [](const cmd::SetNoteText&) { return "SetNoteText"; },
                        [](const cmd::RemoveNote&) { return "RemoveNote"; },
                        [](const cmd::SetCard&) { return "SetCard"; },
                        [](const cmd::RemoveCard&) { return "RemoveCard"; },
                        [](const cmd::SetBinding&) { return "SetBinding"; },
                        [](const cmd::RemoveBinding&) { return "RemoveBinding"; },
                    },
                    command);
}

std::vector<Command> apply_command(Graph& graph, const Command& command) {
  return std::visit(Applier{graph}, command);
}

}  // namespace essencery
