#include "boscribe/diagram.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace boscribe
{
namespace
{

/// Escapes text for a `shape=record` label, where braces, bars and angle
/// brackets are structural.
std::string record_escape(std::string_view s)
{
  std::string out;
  for (char c : s) {
    if (std::string_view("{}|<>\"\\").find(c) != std::string_view::npos) out += '\\';
    out += c;
  }
  return out;
}

/// Escapes text for an ordinary double-quoted DOT string.
std::string dot_string(std::string_view s)
{
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + '"';
}

std::string params_text(const std::vector<Param> &ps)
{
  std::string out = "(";
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (i) out += ", ";
    out += ps[i].name + " : " + to_string(ps[i].type);
  }
  return out + ")";
}

std::string stereotype(const ContractDef &c)
{
  switch (c.kind) {
    case ContractKind::contract: return "«contract»";
    case ContractKind::library: return "«library contract»";
    case ContractKind::interface: return "«interface»";
    case ContractKind::abstract: return "«contract»";
  }
  return "";
}

std::string effects_text(const EffectSet &e)
{
  std::vector<std::string> parts;
  auto list = [&](const char *word, const std::vector<std::string> &names) {
    if (names.empty()) return;
    std::string s = word;
    for (std::size_t i = 0; i < names.size(); ++i) s += (i ? ", " : " ") + names[i];
    parts.push_back(s);
  };
  list("reads", e.reads);
  list("writes", e.writes);
  list("emits", e.emits);
  list("iterates", e.iterates);
  list("creates", e.creates);
  if (e.transfers_eth) parts.push_back("transfers");
  if (e.destroys) parts.push_back("destroys");
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "; " : "") + parts[i];
  return out;
}

class ClassDiagram
{
 public:
  ClassDiagram(const ResolvedModel &r, const DiagramOptions &o) : r_(r), opt_(o) {}

  std::string run()
  {
    const Model &m = r_.model;
    std::string header = "// class diagram";
    if (!m.name.empty()) header += " of " + m.name;
    header += ", generated by boscribe\n";
    if (m.contracts.empty()) return header + "digraph model {}\n";

    out_ << header << "digraph model {\n";
    out_ << "  graph [rankdir=BT];\n";
    out_ << "  node [shape=record, fontname=\"Helvetica\", fontsize=10];\n";
    out_ << "  edge [fontname=\"Helvetica\", fontsize=9];\n";
    for (const auto &c : m.contracts) {
      out_ << '\n';
      contract_node(c);
      for (const auto &s : c.structs) struct_node(c, s);
      for (const auto &e : c.enums) enum_node(c, e);
    }
    std::ostringstream edges;
    for (const auto &c : m.contracts) {
      for (const auto &b : c.inherits) {
        edges << "  " << dot_string(c.name) << " -> " << dot_string(b) << " [arrowhead=empty];\n";
      }
      for (const auto &v : c.state_vars) relationship(edges, c, v);
    }
    if (!edges.str().empty()) out_ << '\n' << edges.str();
    out_ << "}\n";
    return out_.str();
  }

 private:
  void contract_node(const ContractDef &c)
  {
    std::string head = record_escape(stereotype(c)) + "\\n" + record_escape(c.name);
    if (c.kind == ContractKind::abstract) head += "\\n" + record_escape("{abstract}");

    std::string attrs;
    for (const auto &r : c.roles) attrs += record_escape("+ «role» " + r.name + " : address set") + "\\l";
    for (const auto &v : c.state_vars) {
      attrs += record_escape((v.visibility == Visibility::public_ ? "+ " : "- ") + v.name + " : " +
                             to_string(v.type)) +
               "\\l";
    }

    std::string ops;
    for (const auto &mo : c.modifiers)
      ops += record_escape("«modifier» " + mo.name + params_text(mo.params)) + "\\l";
    for (const auto &f : c.functions) {
      std::string line = f.is_constructor ? "«constructor» " : "+ ";
      if (!f.is_constructor)
        line += f.name;
      else
        line += "constructor";
      line += params_text(f.params);
      if (!f.returns.empty()) {
        line += " : ";
        for (std::size_t i = 0; i < f.returns.size(); ++i) line += (i ? ", " : "") + to_string(f.returns[i]);
      }
      if (f.mutability == Mutability::view) line += " «view»";
      if (f.mutability == Mutability::pure) line += " «pure»";
      if (f.payable) line += " «payable»";
      if (!f.applied_modifiers.empty()) {
        line += " [";
        for (std::size_t i = 0; i < f.applied_modifiers.size(); ++i)
          line += (i ? ", " : "") + f.applied_modifiers[i];
        line += "]";
      }
      ops += record_escape(line) + "\\l";
      if (opt_.show_effects && !f.effects.empty())
        ops += record_escape("    effects: " + effects_text(f.effects)) + "\\l";
    }

    std::string label = "{" + head + "|" + attrs + "|" + ops;
    if (opt_.show_events) {
      std::string evs;
      for (const auto &e : c.events)
        evs += record_escape("«event» " + e.name + params_text(e.params)) + "\\l";
      label += "|" + evs;
    }
    label += "}";
    out_ << "  " << dot_string(c.name) << " [label=\"" << label << "\"];\n";
  }

  void struct_node(const ContractDef &c, const StructDef &s)
  {
    std::string fields;
    for (const auto &f : s.fields) fields += record_escape(f.name + " : " + to_string(f.type)) + "\\l";
    out_ << "  " << dot_string(c.name + "." + s.name) << " [label=\"{" << record_escape("«struct»") << "\\n"
         << record_escape(s.name) << "|" << fields << "}\"];\n";
  }

  void enum_node(const ContractDef &c, const EnumDef &e)
  {
    std::string members;
    for (const auto &m : e.members) members += record_escape(m) + "\\l";
    out_ << "  " << dot_string(c.name + "." + e.name) << " [label=\"{" << record_escape("«enum»") << "\\n"
         << record_escape(e.name) << "|" << members << "}\"];\n";
  }

  /// The node id of a struct or enum named `name` as seen from contract `c`:
  /// its own declarations first, then those of its bases.
  std::optional<std::string> type_node(const ContractDef &c, const std::string &name) const
  {
    auto own = [&](const ContractDef &d) {
      return std::any_of(d.structs.begin(), d.structs.end(),
                         [&](const StructDef &s) { return s.name == name; }) ||
             std::any_of(d.enums.begin(), d.enums.end(), [&](const EnumDef &e) { return e.name == name; });
    };
    if (own(c)) return c.name + "." + name;
    if (const FlatContract *fc = r_.contract(c.name)) {
      for (const auto &b : fc->linearization) {
        if (const ContractDef *d = r_.model.contract(b); d && own(*d)) return b + "." + name;
      }
    }
    return std::nullopt;
  }

  void relationship(std::ostringstream &edges, const ContractDef &c, const StateVar &v)
  {
    std::string label;
    if (v.type.kind == TypeRef::Kind::array) {
      label = "«array»";
    } else if (v.type.kind == TypeRef::Kind::map) {
      label = v.type.impl == RelImpl::map_uint ? "«map[uint]»" : "«map»";
    } else {
      return;
    }
    const TypeRef &elem = v.type.inner();
    if (!elem.is_named()) return;
    auto target = type_node(c, elem.name);
    if (!target) return;
    edges << "  " << dot_string(c.name) << " -> " << dot_string(*target) << " [label=" << dot_string(label)
          << ", taillabel=\"1\", headlabel=\"n\", xlabel=" << dot_string(v.name) << ", arrowhead=vee];\n";
  }

  const ResolvedModel &r_;
  const DiagramOptions &opt_;
  std::ostringstream out_;
};

std::string action_text(const ChartAction &a)
{
  return a.subject + "." + a.attr + " " + std::string(to_string(a.op)) + " " + to_string(a.value);
}

/// Mermaid treats `;` and `#` specially inside message text.
std::string mermaid_text(std::string_view s)
{
  std::string out;
  for (char c : s) {
    if (c == ';') {
      out += "#59;";
    } else if (c == '#') {
      out += "#35;";
    } else if (c == '\n') {
      out += ' ';
    } else {
      out += c;
    }
  }
  return out;
}

}  // namespace

std::string emit_class_dot(const ResolvedModel &resolved, const DiagramOptions &options)
{
  return ClassDiagram(resolved, options).run();
}

std::string emit_statechart_dot(const ResolvedModel &resolved, std::string_view chart)
{
  const Statechart *sc = resolved.model.statechart(chart);
  if (!sc) throw Error("unknown statechart '" + std::string(chart) + "'");

  std::ostringstream out;
  out << "// statechart " << sc->name << " of " << sc->subject << " in " << sc->scoped_to
      << ", generated by boscribe\n";
  out << "digraph " << dot_string(sc->name) << " {\n";
  out << "  node [shape=box, style=rounded, fontname=\"Helvetica\", fontsize=10];\n";
  out << "  edge [fontname=\"Helvetica\", fontsize=9];\n";
  if (!sc->initial.empty()) {
    out << "  \"__initial\" [shape=point, style=filled, width=0.15, label=\"\"];\n";
  }
  for (const auto &s : sc->states) {
    bool has_attrs = !sc->attrs.empty() && s == sc->initial;
    if (has_attrs) {
      // attribute initial values ride on the initial state
      std::string label = s + "\n";
      for (std::size_t i = 0; i < sc->attrs.size(); ++i) {
        label += (i ? ", " : "") + sc->attrs[i].name + " = " + sc->attrs[i].initial.str();
      }
      out << "  " << dot_string(s) << " [label=" << dot_string(label) << "];\n";
    } else {
      out << "  " << dot_string(s) << ";\n";
    }
  }
  if (!sc->initial.empty()) out << "  \"__initial\" -> " << dot_string(sc->initial) << ";\n";
  for (const auto &t : sc->transitions) {
    std::string label = t.trigger;
    if (t.guard) label += " [" + to_string(t.guard) + "]";
    if (!t.actions.empty()) {
      label += " / ";
      for (std::size_t i = 0; i < t.actions.size(); ++i) label += (i ? ", " : "") + action_text(t.actions[i]);
    }
    out << "  " << dot_string(t.source) << " -> " << dot_string(t.target) << " [label=" << dot_string(label)
        << "];\n";
  }
  out << "}\n";
  return out.str();
}

std::string emit_sequence_mermaid(const ResolvedModel &resolved, std::string_view scenario)
{
  const Scenario *s = resolved.model.scenario(scenario);
  if (!s) throw Error("unknown scenario '" + std::string(scenario) + "'");

  std::set<std::string> created_later;
  for (const auto &m : s->messages) {
    if (m.kind == MessageKind::create) created_later.insert(m.to);
  }

  std::ostringstream out;
  out << "sequenceDiagram\n";
  out << "    %% scenario " << s->name << ", generated by boscribe\n";
  auto declare = [&](const Participant &p) {
    out << "    participant " << p.alias << " as «" << to_string(p.kind) << "» " << p.alias << "\n";
  };
  for (const auto &p : s->participants) {
    if (!created_later.contains(p.alias)) declare(p);
  }

  std::set<std::string> declared;
  for (std::size_t i = 0; i < s->messages.size(); ++i) {
    const MessageSpec &m = s->messages[i];
    const Outcome expected = i < s->expected.size() ? s->expected[i] : Outcome::ok();

    if (m.at) out << "    Note over " << m.from << ": at " << m.at->str() << "\n";

    std::string args = "(";
    for (std::size_t k = 0; k < m.args.size(); ++k) args += (k ? ", " : "") + to_string(m.args[k]);
    args += ")";
    std::string label;
    std::string arrow = "->>";
    switch (m.kind) {
      case MessageKind::create: {
        if (const Participant *p = s->participant(m.to); p && declared.insert(m.to).second) declare(*p);
        const Participant *p = s->participant(m.to);
        label = "«create» " + (p ? p->ref : m.to) + args;
        break;
      }
      case MessageKind::call:
      case MessageKind::view_call: {
        std::string prefix;
        if (m.kind == MessageKind::view_call) {
          prefix = "«view» ";
          const Participant *p = s->participant(m.to);
          const FlatContract *fc = p ? resolved.contract(p->ref) : nullptr;
          const FunctionDef *f = fc ? fc->function(m.function.value_or("")) : nullptr;
          if (f && f->mutability == Mutability::pure) prefix = "«pure» ";
        }
        label = prefix + m.function.value_or("") + args;
        break;
      }
      case MessageKind::eth_transfer:
        arrow = "--)";
        label = "ETH " + m.value.str();
        break;
    }
    if (m.kind != MessageKind::eth_transfer && m.value != 0) label += " [value " + m.value.str() + " wei]";
    out << "    " << m.from << arrow << m.to << ": " << mermaid_text(label) << "\n";

    if (expected.kind == Outcome::Kind::revert) {
      out << "    " << m.to << "-->>" << m.from << ": " << mermaid_text("revert " + expected.detail) << "\n";
    } else if (expected.kind == Outcome::Kind::error) {
      out << "    " << m.to << "--x" << m.from << ": " << mermaid_text("error " + expected.detail) << "\n";
    }
  }
  return out.str();
}

}  // namespace boscribe
