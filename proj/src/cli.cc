#include "coexpr/cli.hh"

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "coexpr/derivative.hh"
#include "coexpr/equivalence.hh"
#include "coexpr/error.hh"
#include "coexpr/extraction.hh"
#include "coexpr/instances.hh"
#include "coexpr/io.hh"
#include "coexpr/synthesis.hh"

namespace coexpr {

namespace {

using json = nlohmann::json;

/// Failure that maps to exit code 2 with a plain message.
struct UsageError : Error {
  using Error::Error;
};

struct Options {
  std::string spec;
  std::string preset;
  std::string alphabet;
  std::string atoms;
  std::string functor;
  std::string format = "text";
  std::string expr, e1, e2;
  std::string coalgebra, coalgebra2, s1, s2, state;
  std::string ingredient;
  std::string mode, input, word, regex;
  bool all = false;
  bool minimal = false;
};

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

/// Functor, lattices and named expressions assembled from the options.
class Context {
 public:
  explicit Context(const Options& o) {
    if (!o.spec.empty()) {
      doc_ = read_spec_file(o.spec);
      lattices_ = doc_->lattices;
    }
    if (!o.preset.empty()) {
      PresetParams p;
      p.alphabet = split_commas(o.alphabet);
      p.atoms = split_commas(o.atoms);
      Preset pr = make_preset(o.preset, p);
      for (const auto& l : pr.lattices)
        if (!lattices_.find(l->name())) lattices_.add(l);
      functor_ = pr.functor;
      params_ = p;
      preset_ = o.preset;
    } else if (!o.functor.empty()) {
      functor_ = parse_functor(o.functor, lattices_);
    } else if (doc_) {
      functor_ = doc_->functor;
      params_ = doc_->preset_params;
      preset_ = doc_->preset;
    }
  }

  bool has_functor() const { return functor_ != nullptr; }
  const Functor& functor() const {
    if (!functor_) throw UsageError("no functor given; use --spec, --preset or --functor");
    return functor_;
  }
  const std::string& preset() const { return preset_; }
  const LatticeRegistry& lattices() const { return lattices_; }
  const PresetParams& params() const { return params_; }

  /// A named expression of the spec file, else inline syntax.
  Expr expr(const std::string& text, const char* option) const {
    if (text.empty()) throw UsageError(std::string("missing ") + option);
    if (doc_)
      if (Expr e = doc_->find_expr(text)) return e;
    return parse_expr(text);
  }

 private:
  std::optional<SpecDocument> doc_;
  LatticeRegistry lattices_;
  Functor functor_;
  PresetParams params_;
  std::string preset_;
};

void require_format(const Options& o, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed)
    if (o.format == f) return;
  std::string list;
  for (const char* f : allowed) list += (list.empty() ? "" : ", ") + std::string(f);
  throw UsageError("--format " + o.format + " not supported here (use " + list + ")");
}

void print_coalgebra(const Coalgebra& c, const Options& o, std::ostream& out) {
  require_format(o, {"text", "json", "dot"});
  if (o.format == "dot") {
    out << write_dot(c);
  } else if (o.format == "json") {
    out << write_coalgebra(c);
  } else {
    out << c.size() << (c.size() == 1 ? " state" : " states") << ", functor " << to_string(c.functor) << "\n";
    for (std::size_t s = 0; s < c.size(); ++s) {
      out << c.names[s] << (c.point == s ? " (point)" : "");
      if (!c.labels.empty()) out << " = " << to_string(c.labels[s]);
      out << "\n  " << state_value_to_string(c, c.transition[s]) << "\n";
    }
  }
}

json certificate_json(const Certificate& cert, const Coalgebra& c1, const Coalgebra& c2) {
  json j;
  j["bisimilar"] = cert.bisimilar;
  json w = json::array();
  for (auto [x, y] : cert.witness) w.push_back({c1.names[x], c2.names[y]});
  j["witness"] = w;
  j["trace"] = cert.trace;
  j["reason"] = cert.reason;
  return j;
}

int report(const Certificate& cert, const Coalgebra& c1, StateId s1, const Coalgebra& c2, StateId s2,
           const Options& o, std::ostream& out) {
  require_format(o, {"text", "json"});
  if (o.format == "json") {
    out << certificate_json(cert, c1, c2).dump(2) << "\n";
  } else {
    std::string text = to_string(cert, c1, s1, c2, s2);
    if (!cert.bisimilar) text.replace(0, text.find('\n'), "not equivalent");
    out << text;
  }
  return cert.bisimilar ? 0 : 1;
}

void print_expr(const std::string& key, const std::string& text, const Options& o, std::ostream& out) {
  require_format(o, {"text", "json"});
  if (o.format == "json") out << json{{key, text}}.dump(2) << "\n";
  else out << text << "\n";
}

StateId pick_state(const Coalgebra& c, const std::string& name) {
  if (!name.empty()) return c.require_state(name);
  if (c.point) return *c.point;
  if (!c.size()) throw CoalgebraError("coalgebra has no states");
  return 0;
}

void collect_letters(const Expr& e, std::set<std::string>& out) {
  if (e->kind == ExprKind::Act) out.insert(e->name);
  if (e->a) collect_letters(e->a, out);
  if (e->b) collect_letters(e->b, out);
}

/// The deterministic functor for regex work: from the options when given,
/// else over the letters that occur.
Functor det_functor(const Context& ctx, const std::vector<std::string>& letters) {
  if (ctx.has_functor()) return ctx.functor();
  std::vector<std::string> alphabet = letters;
  if (alphabet.empty()) alphabet.push_back("a");
  return make_preset("dfa", PresetParams{alphabet, {}, nullptr}).functor;
}

std::vector<std::string> regex_letters(const Regex& r) {
  std::set<std::string> s;
  std::vector<Regex> todo{r};
  while (!todo.empty()) {
    Regex x = todo.back();
    todo.pop_back();
    if (x->kind == RegexKind::Letter) s.insert(x->letter);
    if (x->a) todo.push_back(x->a);
    if (x->b) todo.push_back(x->b);
  }
  return {s.begin(), s.end()};
}

// ---- subcommands ----------------------------------------------------------

int cmd_check(const Options& o, std::ostream& out) {
  Context ctx(o);
  Expr e = ctx.expr(o.expr, "--expr");
  const Functor& g = ctx.functor();
  Functor f = o.ingredient.empty() ? g : parse_functor(o.ingredient, ctx.lattices());
  for (const auto& i : ingredients(g))
    if (functor_equal(i, f)) f = i;
  TypeCheckResult r = typecheck(e, f, g);
  if (!r) throw TypeError(r.message);
  require_format(o, {"text", "json"});
  if (o.format == "json") out << json{{"ok", true}, {"functor", to_string(g)}, {"expr", to_string(e)}}.dump(2) << "\n";
  else out << "ok: " << to_string(e) << " : " << to_string(f) << " <| " << to_string(g) << "\n";
  return 0;
}

int cmd_delta(const Options& o, std::ostream& out) {
  Context ctx(o);
  Expr e = ctx.expr(o.expr, "--expr");
  const Functor& g = ctx.functor();
  Functor f = g;
  if (!o.ingredient.empty()) {
    f = parse_functor(o.ingredient, ctx.lattices());
    for (const auto& i : ingredients(g))
      if (functor_equal(i, f)) f = i;
  }
  FValue<Expr> v = delta(f, g, e);
  require_format(o, {"text", "json"});
  if (o.format == "json") out << fvalue_to_json(v, 2) << "\n";
  else out << fvalue_to_string(v, [](const Expr& x) { return to_string(x); }) << "\n";
  return 0;
}

int cmd_synthesize(const Options& o, std::ostream& out) {
  Context ctx(o);
  Coalgebra c = synthesize(ctx.functor(), ctx.expr(o.expr, "--expr"));
  if (o.minimal) c = minimize(c);
  print_coalgebra(c, o, out);
  return 0;
}

int cmd_minimize(const Options& o, std::ostream& out) {
  Coalgebra c;
  if (!o.coalgebra.empty()) {
    c = read_coalgebra(o.coalgebra);
    if (!o.state.empty() || c.point) c = reachable(c, pick_state(c, o.state));
  } else {
    Context ctx(o);
    c = synthesize(ctx.functor(), ctx.expr(o.expr, "--expr"));
  }
  print_coalgebra(minimize(c), o, out);
  return 0;
}

int cmd_extract(const Options& o, std::ostream& out) {
  if (o.coalgebra.empty()) throw UsageError("missing --coalgebra");
  Coalgebra c = read_coalgebra(o.coalgebra);
  require_format(o, {"text", "json"});
  if (o.all) {
    Extraction x = extract_all(c, pick_state(c, o.state));
    json j = json::object();
    for (std::size_t i = 0; i < x.states.size(); ++i) {
      std::string text = to_string(x.expressions[i]);
      if (o.format == "json") j[c.names[x.states[i]]] = text;
      else out << c.names[x.states[i]] << ": " << text << "\n";
    }
    if (o.format == "json") out << j.dump(2) << "\n";
    return 0;
  }
  StateId s = pick_state(c, o.state);
  print_expr("expr", to_string(extract(c, s)), o, out);
  return 0;
}

int cmd_equiv(const Options& o, std::ostream& out) {
  if (!o.coalgebra.empty()) {
    Coalgebra a = read_coalgebra(o.coalgebra);
    Coalgebra b = o.coalgebra2.empty() ? a : read_coalgebra(o.coalgebra2);
    if (o.s1.empty() || o.s2.empty()) throw UsageError("equiv on coalgebras needs --s1 and --s2");
    StateId x = a.require_state(o.s1), y = b.require_state(o.s2);
    return report(bisimilar(a, x, b, y), a, x, b, y, o, out);
  }
  Context ctx(o);
  const Functor& g = ctx.functor();
  Expr e1 = ctx.expr(o.e1, "--e1");
  Expr e2 = ctx.expr(o.e2, "--e2");
  Coalgebra a = synthesize(g, e1), b = synthesize(g, e2);
  return report(bisimilar(a, 0, b, 0), a, 0, b, 0, o, out);
}

int cmd_normalize(const Options& o, std::ostream& out) {
  Context ctx(o);
  Expr e = ctx.expr(o.expr, "--expr");
  TermOrder order = ctx.has_functor() ? TermOrder(ctx.functor()) : TermOrder();
  print_expr("expr", to_string(acie_normal_form(e, order)), o, out);
  return 0;
}

int cmd_canon(const Options& o, std::ostream& out) {
  Context ctx(o);
  print_expr("expr", to_string(canonical_form(ctx.functor(), ctx.expr(o.expr, "--expr"))), o, out);
  return 0;
}

int cmd_translate(const Options& o, std::ostream& out) {
  Context ctx(o);
  const std::string& in = o.input.empty() ? o.expr : o.input;
  if (in.empty()) throw UsageError("missing --input");
  if (o.mode == "regex2d") {
    print_expr("expr", to_string(regex_to_det(parse_regex(in))), o, out);
  } else if (o.mode == "d2regex") {
    Expr e = ctx.expr(in, "--input");
    std::set<std::string> letters;
    collect_letters(e, letters);
    Functor d = det_functor(ctx, {letters.begin(), letters.end()});
    print_expr("regex", to_string(det_to_regex(d, e)), o, out);
  } else if (o.mode == "lts2core") {
    print_expr("expr", to_string(lts_to_core(parse_lts(in))), o, out);
  } else if (o.mode == "core2lts") {
    print_expr("lts", to_string(core_to_lts(ctx.expr(in, "--input"))), o, out);
  } else if (o.mode == "gs2core") {
    std::vector<std::string> atoms = ctx.params().atoms, actions = ctx.params().alphabet;
    if (!o.atoms.empty()) atoms = split_commas(o.atoms);
    if (!o.alphabet.empty()) actions = split_commas(o.alphabet);
    if (atoms.empty() || actions.empty()) throw UsageError("gs2core needs --atoms and --alphabet (or a guarded spec)");
    Lattice tests = JoinSemilattice::powerset("B", atoms);
    print_expr("expr", to_string(gs_to_core(parse_gs(in), *tests, atoms, actions)), o, out);
  } else {
    throw UsageError("unknown --mode '" + o.mode + "' (regex2d, d2regex, lts2core, core2lts, gs2core)");
  }
  return 0;
}

int cmd_accepts(const Options& o, std::ostream& out) {
  Context ctx(o);
  std::vector<std::string> word = split_word(o.word);
  bool accepted;
  if (!o.regex.empty()) {
    Regex r = parse_regex(o.regex);
    std::vector<std::string> letters = regex_letters(r);
    for (const auto& a : word)
      if (std::find(letters.begin(), letters.end(), a) == letters.end()) letters.push_back(a);
    std::sort(letters.begin(), letters.end());
    accepted = det_accepts(det_functor(ctx, letters), regex_to_det(r), word);
  } else {
    Expr e = ctx.expr(o.expr, "--expr or --regex");
    std::set<std::string> letters(word.begin(), word.end());
    collect_letters(e, letters);
    accepted = det_accepts(det_functor(ctx, {letters.begin(), letters.end()}), e, word);
  }
  require_format(o, {"text", "json"});
  if (o.format == "json") out << json{{"accepted", accepted}}.dump(2) << "\n";
  else out << (accepted ? "accepted" : "rejected") << "\n";
  return accepted ? 0 : 1;
}

void add_context(CLI::App* sub, Options& o) {
  sub->add_option("--spec", o.spec, "spec file with lattices, functor and named expressions");
  sub->add_option("--preset", o.preset, "dfa, partial, nfa, mealy, lts or guarded");
  sub->add_option("--alphabet", o.alphabet, "comma-separated letters for --preset");
  sub->add_option("--atoms", o.atoms, "comma-separated atoms for the guarded preset");
  sub->add_option("--functor", o.functor, "functor in the DSL, e.g. \"const(bool2) * Id^{a,b}\"");
}

void add_format(CLI::App* sub, Options& o, std::vector<std::string> allowed) {
  sub->add_option("--format", o.format, "output format")->check(CLI::IsMember(allowed));
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app("Generalized regular expressions for non-deterministic functors", "coexpr");
  app.require_subcommand(1, 1);

  auto* check = app.add_subcommand("check", "type-check an expression");
  add_context(check, o);
  check->add_option("--expr", o.expr, "expression or spec name")->required();
  check->add_option("--ingredient", o.ingredient, "ingredient F to check at (default G)");
  add_format(check, o, {"text", "json"});

  auto* del = app.add_subcommand("delta", "one derivative step");
  add_context(del, o);
  del->add_option("--expr", o.expr)->required();
  del->add_option("--ingredient", o.ingredient, "ingredient F (default G)");
  add_format(del, o, {"text", "json"});

  auto* syn = app.add_subcommand("synthesize", "build the coalgebra generated by an expression");
  add_context(syn, o);
  syn->add_option("--expr", o.expr)->required();
  syn->add_flag("--minimize", o.minimal, "quotient by bisimilarity");
  add_format(syn, o, {"text", "json", "dot"});

  auto* ext = app.add_subcommand("extract", "expression for a state of a coalgebra document");
  ext->add_option("--coalgebra", o.coalgebra, "coalgebra JSON document")->required();
  ext->add_option("--state", o.state, "state name (default: the point)");
  ext->add_flag("--all", o.all, "every reachable state, sharing one enumeration");
  add_format(ext, o, {"text", "json"});

  auto* eq = app.add_subcommand("equiv", "decide equivalence by bisimulation");
  add_context(eq, o);
  eq->add_option("--e1", o.e1);
  eq->add_option("--e2", o.e2);
  eq->add_option("--coalgebra", o.coalgebra, "compare states of coalgebra documents instead");
  eq->add_option("--coalgebra2", o.coalgebra2, "second document (default: the first)");
  eq->add_option("--s1", o.s1);
  eq->add_option("--s2", o.s2);
  add_format(eq, o, {"text", "json"});

  auto* norm = app.add_subcommand("normalize", "ACIE normal form");
  add_context(norm, o);
  norm->add_option("--expr", o.expr)->required();
  add_format(norm, o, {"text", "json"});

  auto* canon = app.add_subcommand("canon", "canonical representative of the equivalence class");
  add_context(canon, o);
  canon->add_option("--expr", o.expr)->required();
  add_format(canon, o, {"text", "json"});

  auto* mini = app.add_subcommand("minimize", "minimal coalgebra");
  add_context(mini, o);
  mini->add_option("--coalgebra", o.coalgebra, "coalgebra JSON document");
  mini->add_option("--state", o.state, "restrict to the part reachable from this state");
  mini->add_option("--expr", o.expr, "synthesize this expression first");
  add_format(mini, o, {"text", "json", "dot"});

  auto* tr = app.add_subcommand("translate", "translate between surface syntaxes and expressions");
  add_context(tr, o);
  tr->add_option("--mode", o.mode, "regex2d, d2regex, lts2core, core2lts or gs2core")->required();
  tr->add_option("--input", o.input, "term to translate");
  add_format(tr, o, {"text", "json"});

  auto* acc = app.add_subcommand("accepts", "membership of a word");
  add_context(acc, o);
  acc->add_option("--expr", o.expr, "deterministic expression");
  acc->add_option("--regex", o.regex, "classical regular expression");
  acc->add_option("--word", o.word, "word, as `ab` or `a,b`; empty for the empty word");
  add_format(acc, o, {"text", "json"});

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (check->parsed()) return cmd_check(o, out);
    if (del->parsed()) return cmd_delta(o, out);
    if (syn->parsed()) return cmd_synthesize(o, out);
    if (ext->parsed()) return cmd_extract(o, out);
    if (eq->parsed()) return cmd_equiv(o, out);
    if (norm->parsed()) return cmd_normalize(o, out);
    if (canon->parsed()) return cmd_canon(o, out);
    if (mini->parsed()) return cmd_minimize(o, out);
    if (tr->parsed()) return cmd_translate(o, out);
    if (acc->parsed()) return cmd_accepts(o, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const TypeError& e) {
    err << "type error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "usage error: no subcommand\n";
  return 2;
}

}  // namespace coexpr
