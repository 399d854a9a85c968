#include "boscribe/parser.hpp"

#include <sstream>

namespace boscribe
{
namespace
{

class Printer
{
 public:
  std::string run(const Model &m)
  {
    const bool wrapped = !m.name.empty() || !m.goal.empty();
    if (wrapped) {
      out_ << "system " << (m.name.empty() ? "Model" : m.name) << " {\n";
      ++depth_;
      if (!m.goal.empty()) line("goal " + quote_string(m.goal));
    }

    bool first = m.goal.empty();
    auto separate = [&] {
      if (!first) out_ << '\n';
      first = false;
    };
    for (const auto &c : m.contracts) {
      separate();
      contract(c);
    }
    if (!m.actors.empty()) {
      separate();
      for (const auto &a : m.actors) actor(a);
    }
    for (const auto &sc : m.statecharts) {
      separate();
      statechart(sc);
    }
    for (const auto &s : m.scenarios) {
      separate();
      scenario(s);
    }
    if (!m.stories.empty()) {
      separate();
      for (const auto &u : m.stories) story(u);
    }

    if (wrapped) {
      --depth_;
      out_ << "}\n";
    }
    std::string text = out_.str();
    if (text.empty()) text = "\n";
    return text;
  }

 private:
  void line(const std::string &text)
  {
    out_ << std::string(static_cast<std::size_t>(depth_) * 4, ' ') << text << '\n';
  }

  static std::string join(const std::vector<std::string> &items)
  {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i) out += ", ";
      out += items[i];
    }
    return out;
  }

  static std::string params(const std::vector<Param> &ps)
  {
    std::string out = "(";
    for (std::size_t i = 0; i < ps.size(); ++i) {
      if (i) out += ", ";
      out += to_string(ps[i].type) + " " + ps[i].name;
    }
    return out + ")";
  }

  void contract(const ContractDef &c)
  {
    std::string head;
    switch (c.kind) {
      case ContractKind::contract: head = "contract "; break;
      case ContractKind::library: head = "library "; break;
      case ContractKind::interface: head = "interface "; break;
      case ContractKind::abstract: head = "abstract contract "; break;
    }
    head += c.name;
    if (!c.inherits.empty()) head += " inherits " + join(c.inherits);
    line(head + " {");
    ++depth_;
    for (const auto &s : c.structs) {
      line("struct " + s.name + " {");
      ++depth_;
      for (const auto &f : s.fields) line(to_string(f.type) + " " + f.name + ";");
      --depth_;
      line("}");
    }
    for (const auto &e : c.enums) line("enum " + e.name + " { " + join(e.members) + " }");
    for (const auto &r : c.roles) line("role " + r.name + ";");
    for (const auto &v : c.state_vars) {
      std::string text = v.visibility == Visibility::public_ ? "public " : "";
      text += to_string(v.type) + " " + v.name;
      if (v.type.kind == TypeRef::Kind::map && v.type.impl == RelImpl::map_uint) {
        text += " impl map_uint";
      }
      line(text + ";");
    }
    for (const auto &e : c.events) line("event " + e.name + params(e.params) + ";");
    for (const auto &m : c.modifiers) {
      line("modifier " + m.name + params(m.params) + " requires " + to_string(m.guard) + ";");
    }
    for (const auto &f : c.functions) function(f);
    --depth_;
    line("}");
  }

  void function(const FunctionDef &f)
  {
    std::string text = f.is_constructor ? "constructor" : "function " + f.name;
    text += params(f.params);
    if (f.mutability == Mutability::view) text += " view";
    if (f.mutability == Mutability::pure) text += " pure";
    if (f.payable) text += " payable";
    if (!f.returns.empty()) {
      text += " returns (";
      for (std::size_t i = 0; i < f.returns.size(); ++i) {
        if (i) text += ", ";
        text += to_string(f.returns[i]);
      }
      text += ")";
    }
    if (!f.applied_modifiers.empty()) text += " uses " + join(f.applied_modifiers);
    if (!f.effects.empty()) {
      std::vector<std::string> parts;
      const auto &e = f.effects;
      if (!e.reads.empty()) parts.push_back("reads " + join(e.reads));
      if (!e.writes.empty()) parts.push_back("writes " + join(e.writes));
      if (!e.emits.empty()) parts.push_back("emits " + join(e.emits));
      if (!e.iterates.empty()) parts.push_back("iterates " + join(e.iterates));
      if (!e.creates.empty()) parts.push_back("creates " + join(e.creates));
      if (e.transfers_eth) parts.push_back("transfers");
      if (e.destroys) parts.push_back("destroys");
      std::string joined;
      for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) joined += ' ';
        joined += parts[i];
      }
      text += " effects(" + joined + ")";
    }
    if (!f.sets.empty()) {
      text += " sets ";
      for (std::size_t i = 0; i < f.sets.size(); ++i) {
        if (i) text += ", ";
        const auto &a = f.sets[i];
        text += a.target + " " + std::string(to_string(a.op)) + " " + to_string(a.value);
      }
    }
    if (!f.note.empty()) text += " note " + quote_string(f.note);
    line(text + ";");
  }

  void actor(const ActorDef &a)
  {
    std::string text = "actor " + a.name + " : " + std::string(to_string(a.kind));
    if (a.trusted_writer_for) text += " writes " + *a.trusted_writer_for;
    line(text + ";");
  }

  void statechart(const Statechart &sc)
  {
    line("statechart " + sc.name + " for " + sc.subject + " in " + sc.scoped_to + " {");
    ++depth_;
    for (const auto &a : sc.attrs) line("attr " + a.name + " = " + a.initial.str() + ";");
    if (!sc.states.empty()) line("states " + join(sc.states) + ";");
    if (!sc.initial.empty()) line("initial " + sc.initial + ";");
    for (const auto &t : sc.transitions) {
      std::string text = "transition " + t.source + " -> " + t.target + " on " + t.trigger;
      if (t.guard) text += " when " + to_string(t.guard);
      if (!t.actions.empty()) {
        text += " do ";
        for (std::size_t i = 0; i < t.actions.size(); ++i) {
          if (i) text += ", ";
          const auto &a = t.actions[i];
          text += a.subject + "." + a.attr + " " + std::string(to_string(a.op)) + " " + to_string(a.value);
        }
      }
      line(text + ";");
    }
    --depth_;
    line("}");
  }

  void scenario(const Scenario &s)
  {
    line("scenario " + s.name + " {");
    ++depth_;
    for (const auto &p : s.participants) {
      line("participant <<" + std::string(to_string(p.kind)) + ">> " + p.alias + " : " + p.ref + ";");
    }
    for (const auto &g : s.genesis) line("genesis " + g.alias + " = " + g.wei.str() + ";");
    for (std::size_t i = 0; i < s.messages.size(); ++i) {
      const auto &m = s.messages[i];
      std::string text = std::string(to_string(m.kind)) + " " + m.from + " -> " + m.to;
      if (m.kind == MessageKind::call || m.kind == MessageKind::view_call) {
        text += "." + m.function.value_or("");
      }
      if (m.kind != MessageKind::eth_transfer) {
        text += "(";
        for (std::size_t k = 0; k < m.args.size(); ++k) {
          if (k) text += ", ";
          text += to_string(m.args[k]);
        }
        text += ")";
      }
      if (m.value != 0) text += " value " + m.value.str();
      if (m.at) text += " at " + m.at->str();
      const Outcome &o = i < s.expected.size() ? s.expected[i] : Outcome::ok();
      text += " => " + to_string(o) + ";";
      line(text);
    }
    --depth_;
    line("}");
  }

  void story(const UserStory &u)
  {
    line("story " + u.id + " by " + u.actor + " " + std::string(to_string(u.subsystem)) + " " +
         quote_string(u.narrative) + ";");
  }

  std::ostringstream out_;
  int depth_ = 0;
};

}  // namespace

std::string print(const Model &model) { return Printer().run(model); }

}  // namespace boscribe
