#include "boscribe/cli.hpp"

#include "boscribe/diagram.hpp"
#include "boscribe/parser.hpp"
#include "boscribe/scaffold.hpp"
#include "boscribe/sim.hpp"
#include "boscribe/solidity.hpp"
#include "boscribe/validator.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

namespace fs = std::filesystem;

namespace boscribe
{
namespace
{

constexpr int exit_ok = 0;
constexpr int exit_findings = 1;
constexpr int exit_usage = 2;

/// Reported as exit 2 after printing its message.
struct UsageError
{
  std::string message;
};

std::string read_file(const std::string &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError{"cannot read '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path &path, const std::string &text)
{
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text) || !out.flush()) throw UsageError{"cannot write '" + path.string() + "'"};
}

struct Context
{
  std::ostream &out;
  std::ostream &err;
  bool color;

  void report(const std::vector<Diagnostic> &diags) const
  {
    for (const auto &d : diags) err << format_diagnostic(d, color) << '\n';
  }

  /// The `check` gate in front of every emitter: nullopt when the model has
  /// errors (already reported).
  std::optional<CheckResult> load(const std::string &path) const
  {
    CheckResult r = check_source(SourceFile{path, read_file(path)});
    report(r.diagnostics);
    if (!r.ok()) return std::nullopt;
    return r;
  }

  void emit(const std::string &text, const std::string &output) const
  {
    if (output.empty())
      out << text;
    else
      write_file(output, text);
  }
};

struct CheckArgs
{
  std::vector<std::string> files;
  bool rules = false;
  std::string explain;
};

int cmd_check(const Context &ctx, const CheckArgs &a)
{
  if (a.rules) {
    ctx.out << rules_table();
    return exit_ok;
  }
  if (!a.explain.empty()) {
    try {
      const Rule &r = explain(a.explain);
      ctx.out << r.code << " (" << (r.severity == Severity::error ? "error" : "warning") << "): " << r.summary
              << "\n\n"
              << r.rationale << '\n';
      return exit_ok;
    } catch (const Error &e) {
      throw UsageError{e.what()};
    }
  }
  if (a.files.empty()) throw UsageError{"check: no input files"};
  bool clean = true;
  for (const auto &f : a.files) clean = ctx.load(f).has_value() && clean;
  return clean ? exit_ok : exit_findings;
}

struct DiagramArgs
{
  std::string file;
  std::string kind;
  std::string target;
  std::string output;
  bool no_events = false;
  bool effects = false;
};

int cmd_diagram(const Context &ctx, const DiagramArgs &a)
{
  if (a.kind != "class" && a.target.empty())
    throw UsageError{"diagram: --kind " + a.kind + " needs --target"};
  const auto checked = ctx.load(a.file);
  if (!checked) return exit_findings;
  std::string text;
  try {
    if (a.kind == "class")
      text = emit_class_dot(checked->resolved, DiagramOptions{!a.no_events, a.effects});
    else if (a.kind == "statechart")
      text = emit_statechart_dot(checked->resolved, a.target);
    else
      text = emit_sequence_mermaid(checked->resolved, a.target);
  } catch (const Error &e) {
    throw UsageError{e.what()};
  }
  ctx.emit(text, a.output);
  return exit_ok;
}

struct CodegenArgs
{
  std::string file;
  std::string out_dir;
  std::string pragma = GenConfig{}.pragma_version;
  bool no_natspec = false;
  bool single_file = false;
};

int cmd_codegen(const Context &ctx, const CodegenArgs &a)
{
  const auto checked = ctx.load(a.file);
  if (!checked) return exit_findings;
  const Generation gen = emit_all(checked->resolved, GenConfig{a.pragma, !a.no_natspec, !a.single_file});
  ctx.report(gen.warnings);
  std::error_code ec;
  fs::create_directories(a.out_dir, ec);
  if (ec || !fs::is_directory(a.out_dir))
    throw UsageError{"cannot create output directory '" + a.out_dir + "'"};
  for (const auto &f : gen.files) {
    const fs::path p = fs::path(a.out_dir) / f.path;
    write_file(p, f.text);
    ctx.out << p.generic_string() << '\n';
  }
  return exit_ok;
}

struct SimulateArgs
{
  std::string file;
  std::string scenario;
  std::string format = "text";
};

int cmd_simulate(const Context &ctx, const SimulateArgs &a)
{
  const auto checked = ctx.load(a.file);
  if (!checked) return exit_findings;
  const Model &m = checked->resolved.model;
  std::vector<const Scenario *> picked;
  if (a.scenario.empty())
    for (const auto &s : m.scenarios) picked.push_back(&s);
  else if (const Scenario *s = m.scenario(a.scenario))
    picked.push_back(s);
  else
    throw UsageError{"unknown scenario '" + a.scenario + "'"};

  std::vector<Report> reports;
  bool pass = true;
  for (const Scenario *s : picked) {
    try {
      reports.push_back(run(checked->resolved, *s));
    } catch (const Error &e) {
      throw UsageError{e.what()};
    }
    pass = pass && reports.back().pass;
  }

  if (a.format == "json")
    ctx.out << (a.scenario.empty() ? report_json(reports) : report_json(reports.front()));
  else
    for (std::size_t i = 0; i < reports.size(); ++i) ctx.out << (i ? "\n" : "") << report_text(reports[i]);
  return pass ? exit_ok : exit_findings;
}

struct InitArgs
{
  std::string name;
  std::string dir;
};

int cmd_init(const Context &ctx, const InitArgs &a)
{
  const fs::path root = a.dir.empty() ? fs::path(a.name) : fs::path(a.dir);
  std::error_code ec;
  if (fs::exists(root, ec) && (!fs::is_directory(root, ec) || !fs::is_empty(root, ec)))
    throw UsageError{"'" + root.string() + "' exists and is not an empty directory"};
  for (const auto &f : scaffold(a.name)) {
    write_file(root / f.path, f.text);
    ctx.out << (root / f.path).generic_string() << '\n';
  }
  return exit_ok;
}

struct FmtArgs
{
  std::string file;
  bool write = false;
};

int cmd_fmt(const Context &ctx, const FmtArgs &a)
{
  const std::string text = read_file(a.file);
  const ParseResult parsed = parse(SourceFile{a.file, text});
  ctx.report(parsed.diagnostics);
  if (!parsed.ok()) return exit_findings;
  const std::string canonical = print(parsed.model);
  if (!a.write)
    ctx.out << canonical;
  else if (canonical != text)
    write_file(a.file, canonical);
  return exit_ok;
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err, bool color)
{
  CLI::App app{"Modeling toolchain for blockchain-oriented systems", "boscribe"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "boscribe 0.1.0");

  CheckArgs check;
  auto *c = app.add_subcommand("check", "Parse, resolve and validate models");
  c->add_option("files", check.files, "Model files")->check(CLI::ExistingFile);
  c->add_flag("--rules", check.rules, "Print the rule catalog");
  c->add_option("--explain", check.explain, "Explain one rule code");

  DiagramArgs diagram;
  auto *d = app.add_subcommand("diagram", "Emit a class, statechart or sequence diagram");
  d->add_option("file", diagram.file, "Model file")->required()->check(CLI::ExistingFile);
  d->add_option("--kind", diagram.kind, "class, statechart or sequence")
      ->required()
      ->check(CLI::IsMember({"class", "statechart", "sequence"}));
  d->add_option("--target", diagram.target, "Statechart or scenario name");
  d->add_option("-o,--output", diagram.output, "Output file (default: stdout)");
  d->add_flag("--no-events", diagram.no_events, "Omit event compartments");
  d->add_flag("--effects", diagram.effects, "Show function effects");

  CodegenArgs codegen;
  auto *g = app.add_subcommand("codegen", "Emit Solidity skeletons and ABI summaries");
  g->add_option("file", codegen.file, "Model file")->required()->check(CLI::ExistingFile);
  g->add_option("--out-dir", codegen.out_dir, "Output directory")->required();
  g->add_option("--pragma", codegen.pragma, "Solidity version constraint");
  g->add_flag("--no-natspec", codegen.no_natspec, "Skip NatSpec comments");
  g->add_flag("--single-file", codegen.single_file, "One combined .sol file");

  SimulateArgs simulate;
  auto *s = app.add_subcommand("simulate", "Run scenarios on the simulated ledger");
  s->add_option("file", simulate.file, "Model file")->required()->check(CLI::ExistingFile);
  s->add_option("--scenario", simulate.scenario, "Scenario name (default: all)");
  s->add_option("--report", simulate.format, "json or text")->check(CLI::IsMember({"json", "text"}));

  InitArgs init;
  auto *i = app.add_subcommand("init", "Scaffold a new project");
  i->add_option("name", init.name, "Project name")->required();
  i->add_option("--dir", init.dir, "Target directory (default: the name)");

  FmtArgs fmt;
  auto *f = app.add_subcommand("fmt", "Print a model in canonical form");
  f->add_option("file", fmt.file, "Model file")->required()->check(CLI::ExistingFile);
  f->add_flag("--write", fmt.write, "Rewrite the file in place");

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  const Context ctx{out, err, color};
  try {
    if (*c) return cmd_check(ctx, check);
    if (*d) return cmd_diagram(ctx, diagram);
    if (*g) return cmd_codegen(ctx, codegen);
    if (*s) return cmd_simulate(ctx, simulate);
    if (*i) return cmd_init(ctx, init);
    return cmd_fmt(ctx, fmt);
  } catch (const UsageError &e) {
    err << "boscribe: " << e.message << '\n';
    return exit_usage;
  }
}

}  // namespace boscribe
