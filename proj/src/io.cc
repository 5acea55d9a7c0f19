#include "coexpr/io.hh"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "coexpr/error.hh"

namespace coexpr {

using json = nlohmann::json;

Expr SpecDocument::find_expr(std::string_view name) const {
  for (const auto& [n, e] : exprs)
    if (n == name) return e;
  return nullptr;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---- spec files -----------------------------------------------------------

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_list(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
  return out;
}

/// Cursor over one statement; offsets are reported relative to the file.
class Statement {
 public:
  Statement(std::string text, std::size_t base) : t_(std::move(text)), base_(base) {}

  void skip() {
    while (p_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[p_]))) ++p_;
  }
  bool accept(std::string_view tok) {
    skip();
    if (std::string_view(t_).substr(p_, tok.size()) != tok) return false;
    p_ += tok.size();
    return true;
  }
  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }
  std::string word() {
    skip();
    std::size_t start = p_;
    while (p_ < t_.size() && (std::isalnum(static_cast<unsigned char>(t_[p_])) || t_[p_] == '_' || t_[p_] == '*'))
      ++p_;
    if (start == p_) fail("expected a name");
    return t_.substr(start, p_ - start);
  }
  /// Text up to the matching close character.
  std::string block(char open, char close) {
    expect(std::string(1, open));
    std::size_t start = p_;
    int depth = 1;
    while (p_ < t_.size()) {
      if (t_[p_] == open) ++depth;
      if (t_[p_] == close && --depth == 0) break;
      ++p_;
    }
    if (p_ >= t_.size()) fail(std::string("missing '") + close + "'");
    std::string inner = t_.substr(start, p_ - start);
    ++p_;
    return inner;
  }
  std::string rest() {
    skip();
    std::string r = t_.substr(p_);
    p_ = t_.size();
    return trim(r);
  }
  std::size_t offset() const { return base_ + p_; }
  bool done() {
    skip();
    return p_ >= t_.size();
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, base_ + p_); }

 private:
  std::string t_;
  std::size_t base_;
  std::size_t p_ = 0;
};

Lattice parse_lattice_statement(Statement& st) {
  std::string name = st.word();
  st.expect("=");
  if (st.accept("powerset")) {
    std::string atoms = st.block('(', ')');
    try {
      return JoinSemilattice::powerset(name, split_list(atoms, ','));
    } catch (const LatticeError& e) {
      st.fail(e.what());
    }
  }
  LatticeTable t;
  t.name = name;
  t.elements = split_list(st.block('{', '}'), ',');
  st.expect("bottom");
  t.bottom = st.word();
  std::map<std::pair<std::string, std::string>, std::string> entries;
  if (st.accept("join")) {
    for (const auto& item : split_list(st.block('{', '}'), ',')) {
      if (item.empty()) continue;
      auto eq = item.find('=');
      if (eq == std::string::npos) st.fail("join entry '" + item + "' lacks '='");
      std::istringstream lhs(item.substr(0, eq));
      std::string x, y, extra;
      lhs >> x >> y >> extra;
      if (x.empty() || y.empty() || !extra.empty()) st.fail("join entry '" + item + "' must read 'x y = z'");
      std::string z = trim(item.substr(eq + 1));
      for (auto key : {std::make_pair(x, y), std::make_pair(y, x)}) {
        auto [it, fresh] = entries.emplace(key, z);
        if (!fresh && it->second != z) st.fail("conflicting join entries for " + x + " and " + y);
      }
    }
  }
  const std::size_t n = t.elements.size();
  t.join.assign(n, std::vector<std::string>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto& a = t.elements[i];
      const auto& b = t.elements[j];
      if (auto it = entries.find({a, b}); it != entries.end()) t.join[i][j] = it->second;
      else if (a == b) t.join[i][j] = a;
      else if (a == t.bottom) t.join[i][j] = b;
      else if (b == t.bottom) t.join[i][j] = a;
      else st.fail("join of " + a + " and " + b + " not given for lattice " + name);
    }
  try {
    return JoinSemilattice::create(t);
  } catch (const LatticeError& e) {
    st.fail(e.what());
  }
}

}  // namespace

SpecDocument parse_spec(std::string_view text) {
  SpecDocument doc;
  std::vector<std::pair<std::string, std::size_t>> statements;
  {
    std::string cur;
    std::size_t cur_start = 0;
    int depth = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      std::string_view line = text.substr(pos, end - pos);
      std::string t = trim(line);
      if (depth == 0 && (t.empty() || t[0] == '#')) {
        pos = end + 1;
        continue;
      }
      if (depth == 0) cur_start = pos;
      cur += std::string(line) + "\n";
      for (char c : line) depth += (c == '{') - (c == '}');
      if (depth <= 0) {
        statements.emplace_back(cur, cur_start);
        cur.clear();
        depth = 0;
      }
      pos = end + 1;
    }
    if (!cur.empty()) throw ParseError("unbalanced braces", cur_start);
  }

  std::set<std::string> names;
  for (auto& [s, base] : statements) {
    Statement st(s, base);
    std::string kw = st.word();
    if (kw == "lattice") {
      Lattice l = parse_lattice_statement(st);
      if (doc.lattices.find(l->name())) st.fail("lattice " + l->name() + " declared twice");
      doc.lattices.add(l);
    } else if (kw == "functor") {
      if (doc.functor) st.fail("functor declared twice");
      std::size_t at = st.offset();
      std::string dsl = st.rest();
      try {
        doc.functor = parse_functor(dsl, doc.lattices);
      } catch (const ParseError& e) {
        throw ParseError("functor: " + e.message(), at + e.offset());
      }
    } else if (kw == "preset") {
      if (doc.functor) st.fail("functor declared twice");
      doc.preset = st.word();
      doc.preset_params.alphabet = split_list(st.block('{', '}'), ',');
      while (!st.done()) {
        std::string opt = st.word();
        if (opt == "output") doc.preset_params.output = doc.lattices.require(st.word());
        else if (opt == "atoms") doc.preset_params.atoms = split_list(st.block('{', '}'), ',');
        else st.fail("unknown preset option '" + opt + "'");
      }
      try {
        Preset p = make_preset(doc.preset, doc.preset_params);
        for (const auto& l : p.lattices)
          if (!doc.lattices.find(l->name())) doc.lattices.add(l);
        doc.functor = p.functor;
      } catch (const Error& e) {
        st.fail(e.what());
      }
    } else if (kw == "expr") {
      std::string name = st.word();
      st.expect("=");
      std::size_t at = st.offset();
      std::string body = st.rest();
      if (!names.insert(name).second) st.fail("expression " + name + " declared twice");
      try {
        doc.exprs.emplace_back(name, parse_expr(body));
      } catch (const ParseError& e) {
        throw ParseError("expression " + name + ": " + e.message(), at + e.offset());
      }
    } else {
      st.fail("unknown statement '" + kw + "'");
    }
  }
  if (!doc.functor) throw ParseError("spec declares no functor", text.size());
  return doc;
}

SpecDocument read_spec_file(const std::string& path) { return parse_spec(read_text_file(path)); }

// ---- coalgebra documents --------------------------------------------------

namespace {

[[noreturn]] void doc_error(const std::string& where, const std::string& msg) {
  throw CoalgebraError(where + ": " + msg);
}

StateValue decode(const json& j, const Functor& f, const std::map<std::string, StateId>& states,
                  const std::string& state, const std::string& where) {
  if (!j.is_object() || j.size() != 1) doc_error(where, "expected an object with exactly one key");
  const std::string key = j.begin().key();
  const json& v = j.begin().value();
  switch (f->kind) {
    case FunctorKind::Id: {
      if (key != "id" || !v.is_string()) doc_error(where, "expected {\"id\": state}");
      auto it = states.find(v.get<std::string>());
      if (it == states.end())
        doc_error(where, "unknown state '" + v.get<std::string>() + "' referenced by state " + state);
      return StateValue::carrier(it->second);
    }
    case FunctorKind::Const: {
      if (key != "const" || !v.is_array() || v.size() != 2 || !v[0].is_string() || !v[1].is_string())
        doc_error(where, "expected {\"const\": [lattice, element]}");
      if (v[0].get<std::string>() != f->lattice->name())
        doc_error(where, "expected an element of lattice " + f->lattice->name());
      auto e = f->lattice->index_of(v[1].get<std::string>());
      if (!e) doc_error(where, "unknown element '" + v[1].get<std::string>() + "' of " + f->lattice->name());
      return StateValue::constant(f->lattice, *e);
    }
    case FunctorKind::Product:
      if (key != "pair" || !v.is_array() || v.size() != 2) doc_error(where, "expected {\"pair\": [u, v]}");
      return StateValue::pair(decode(v[0], f->left, states, state, where + ".pair[0]"),
                              decode(v[1], f->right, states, state, where + ".pair[1]"));
    case FunctorKind::Sum:
      if (key == "inl") return StateValue::inl(decode(v, f->left, states, state, where + ".inl"));
      if (key == "inr") return StateValue::inr(decode(v, f->right, states, state, where + ".inr"));
      if (key == "bot") return StateValue::bot();
      if (key == "top") return StateValue::top();
      doc_error(where, "expected inl, inr, bot or top");
    case FunctorKind::Exp: {
      if (key != "fun" || !v.is_object()) doc_error(where, "expected {\"fun\": {letter: value}}");
      std::vector<StateValue> vals;
      for (const auto& a : f->alphabet) {
        auto it = v.find(a);
        if (it == v.end()) throw CoalgebraError("fun not total at state " + state + ", letter " + a);
        vals.push_back(decode(*it, f->left, states, state, where + ".fun." + a));
      }
      for (const auto& [letter, _] : v.items())
        if (std::find(f->alphabet.begin(), f->alphabet.end(), letter) == f->alphabet.end())
          doc_error(where, "letter '" + letter + "' is not in the alphabet");
      return StateValue::fun(f->alphabet, std::move(vals));
    }
    case FunctorKind::Pow: {
      if (key != "set" || !v.is_array()) doc_error(where, "expected {\"set\": [values]}");
      std::vector<StateValue> members;
      for (std::size_t i = 0; i < v.size(); ++i)
        members.push_back(decode(v[i], f->left, states, state, where + ".set[" + std::to_string(i) + "]"));
      TermOrder plain;
      return StateValue::set(std::move(members), FValueCmp<StateId>{&plain});
    }
  }
  doc_error(where, "unknown functor");
}

template <class C, class P>
json encode(const FValue<C>& v, P&& carrier) {
  switch (v.kind) {
    case FKind::Carrier: return json{{"id", carrier(v.item)}};
    case FKind::Const: return json{{"const", json::array({v.lattice->name(), v.lattice->element(v.element)})}};
    case FKind::Pair: return json{{"pair", json::array({encode(v.kids[0], carrier), encode(v.kids[1], carrier)})}};
    case FKind::Inl: return json{{"inl", encode(v.kids[0], carrier)}};
    case FKind::Inr: return json{{"inr", encode(v.kids[0], carrier)}};
    case FKind::Bot: return json{{"bot", true}};
    case FKind::Top: return json{{"top", true}};
    case FKind::Fun: {
      json m = json::object();
      for (std::size_t i = 0; i < v.kids.size(); ++i) m[v.letters[i]] = encode(v.kids[i], carrier);
      return json{{"fun", m}};
    }
    case FKind::Set: {
      json a = json::array();
      for (const auto& k : v.kids) a.push_back(encode(k, carrier));
      return json{{"set", a}};
    }
  }
  return json();
}

json lattice_to_json(const JoinSemilattice& l) {
  LatticeTable t = l.table();
  return json{{"name", t.name}, {"elements", t.elements}, {"bottom", t.bottom}, {"join", t.join}};
}

Lattice lattice_from_json(const json& j, std::size_t i) {
  const std::string where = "lattices[" + std::to_string(i) + "]";
  if (!j.is_object() || !j.contains("name") || !j["name"].is_string()) doc_error(where, "lattice needs a name");
  try {
    if (j.contains("powerset")) return JoinSemilattice::powerset(j["name"], j["powerset"].get<std::vector<std::string>>());
    LatticeTable t;
    t.name = j.at("name").get<std::string>();
    t.elements = j.at("elements").get<std::vector<std::string>>();
    t.bottom = j.at("bottom").get<std::string>();
    t.join = j.at("join").get<std::vector<std::vector<std::string>>>();
    return JoinSemilattice::create(t);
  } catch (const json::exception& e) {
    doc_error(where, e.what());
  } catch (const LatticeError& e) {
    doc_error(where, e.what());
  }
}

}  // namespace

Coalgebra parse_coalgebra(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
  }
  if (!doc.is_object()) doc_error("document", "expected an object");
  LatticeRegistry lattices;
  if (doc.contains("lattices")) {
    if (!doc["lattices"].is_array()) doc_error("lattices", "expected an array");
    for (std::size_t i = 0; i < doc["lattices"].size(); ++i) {
      Lattice l = lattice_from_json(doc["lattices"][i], i);
      if (lattices.is_builtin(l->name())) {
        if (!(*l == *lattices.require(l->name()))) doc_error("lattices", "redefines built-in " + l->name());
        continue;
      }
      try {
        lattices.add(l);
      } catch (const LatticeError& e) {
        doc_error("lattices", e.what());
      }
    }
  }
  if (!doc.contains("functor") || !doc["functor"].is_string()) doc_error("functor", "missing functor string");
  Coalgebra c;
  try {
    c.functor = parse_functor(doc["functor"].get<std::string>(), lattices);
  } catch (const ParseError& e) {
    doc_error("functor", e.what());
  }
  if (!doc.contains("states") || !doc["states"].is_array()) doc_error("states", "missing state list");
  std::map<std::string, StateId> index;
  for (const auto& s : doc["states"]) {
    if (!s.is_string()) doc_error("states", "state names must be strings");
    std::string name = s.get<std::string>();
    if (!index.emplace(name, static_cast<StateId>(c.names.size())).second) doc_error("states", "duplicate state " + name);
    c.names.push_back(name);
  }
  if (!doc.contains("transition") || !doc["transition"].is_object()) doc_error("transition", "missing transition map");
  const json& tr = doc["transition"];
  for (const auto& [name, _] : tr.items())
    if (!index.count(name)) doc_error("transition", "unknown state '" + name + "'");
  for (const auto& name : c.names) {
    auto it = tr.find(name);
    if (it == tr.end()) doc_error("transition", "no transition for state " + name);
    c.transition.push_back(decode(*it, c.functor, index, name, "transition." + name));
  }
  if (doc.contains("point")) {
    if (!doc["point"].is_string() || !index.count(doc["point"].get<std::string>()))
      doc_error("point", "point must name a state");
    c.point = index.at(doc["point"].get<std::string>());
  }
  if (doc.contains("labels")) {
    const json& lab = doc["labels"];
    if (!lab.is_object()) doc_error("labels", "expected an object");
    for (const auto& name : c.names) {
      auto it = lab.find(name);
      if (it == lab.end() || !it->is_string()) {
        c.labels.clear();
        doc_error("labels", "missing label for state " + name);
      }
      try {
        c.labels.push_back(parse_expr(it->get<std::string>()));
      } catch (const ParseError& e) {
        doc_error("labels." + name, e.what());
      }
    }
  }
  validate_coalgebra(c);
  return c;
}

Coalgebra read_coalgebra(const std::string& path) { return parse_coalgebra(read_text_file(path)); }

std::string write_coalgebra(const Coalgebra& c, int indent) {
  json doc;
  doc["functor"] = to_string(c.functor);
  json lats = json::array();
  for (const auto& l : functor_lattices(c.functor))
    if (l->name() != "bool2" && l->name() != "unit") lats.push_back(lattice_to_json(*l));
  doc["lattices"] = lats;
  doc["states"] = c.names;
  json tr = json::object();
  for (std::size_t i = 0; i < c.size(); ++i)
    tr[c.names[i]] = encode(c.transition[i], [&](StateId s) { return c.names.at(s); });
  doc["transition"] = tr;
  if (c.point) doc["point"] = c.names[*c.point];
  if (!c.labels.empty()) {
    json lab = json::object();
    for (std::size_t i = 0; i < c.size(); ++i) lab[c.names[i]] = to_string(c.labels[i]);
    doc["labels"] = lab;
  }
  return doc.dump(indent) + "\n";
}

std::string fvalue_to_json(const FValue<Expr>& v, int indent) {
  return encode(v, [](const Expr& e) { return to_string(e); }).dump(indent);
}

// ---- DOT ------------------------------------------------------------------

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

struct DotEdge {
  std::string target;  // node id
  std::string label;
  bool dashed;
};

class DotWalker {
 public:
  DotWalker(const Coalgebra& c, std::vector<DotEdge>& edges, bool& accepting, std::vector<std::string>& outputs)
      : c_(c), edges_(edges), accepting_(accepting), outputs_(outputs) {}

  void walk(const StateValue& v, const Functor& f, const std::string& label, bool top_level) {
    switch (f->kind) {
      case FunctorKind::Id: edges_.push_back({"n" + std::to_string(v.item), label, false}); return;
      case FunctorKind::Const:
        if (top_level) {
          if (f->lattice->name() == "bool2") accepting_ = accepting_ || v.element == 1;
          else if (f->lattice->name() != "unit") outputs_.push_back(f->lattice->element(v.element));
        }
        return;
      case FunctorKind::Product: {
        std::string l = label;
        // Outputs inside a transition (Mealy style) annotate the edge label.
        if (!top_level)
          for (int i = 0; i < 2; ++i) {
            const Functor& part = i ? f->right : f->left;
            if (part->kind == FunctorKind::Const && part->lattice->name() != "unit")
              l += "/" + part->lattice->element(v.kids[i].element);
          }
        walk(v.kids[0], f->left, l, top_level);
        walk(v.kids[1], f->right, l, top_level);
        return;
      }
      case FunctorKind::Sum:
        if (v.kind == FKind::Bot) edges_.push_back({"bot", label, true});
        else if (v.kind == FKind::Top) edges_.push_back({"top", label, true});
        else walk(v.kids[0], v.kind == FKind::Inl ? f->left : f->right, label, false);
        return;
      case FunctorKind::Exp:
        for (std::size_t i = 0; i < f->alphabet.size(); ++i)
          walk(v.kids[i], f->left, label.empty() ? f->alphabet[i] : label + "." + f->alphabet[i], false);
        return;
      case FunctorKind::Pow:
        for (const auto& m : v.kids) walk(m, f->left, label, false);
        return;
    }
  }

 private:
  const Coalgebra& c_;
  std::vector<DotEdge>& edges_;
  bool& accepting_;
  std::vector<std::string>& outputs_;
};

}  // namespace

std::string write_dot(const Coalgebra& c) {
  std::vector<StateId> order;
  std::vector<bool> seen(c.size(), false);
  if (c.size()) {
    for (StateId s : bfs_order(c, c.point.value_or(0))) {
      order.push_back(s);
      seen[s] = true;
    }
    for (StateId s = 0; s < c.size(); ++s)
      if (!seen[s]) order.push_back(s);
  }
  std::ostringstream out;
  out << "digraph coalgebra {\n  rankdir=LR;\n  node [shape=circle];\n";
  if (c.point) out << "  start [shape=point];\n";
  std::vector<std::string> edge_lines;
  bool uses_bot = false, uses_top = false;
  for (StateId s : order) {
    std::vector<DotEdge> edges;
    bool accepting = false;
    std::vector<std::string> outputs;
    DotWalker(c, edges, accepting, outputs).walk(c.transition[s], c.functor, "", true);
    std::string label = c.names[s];
    for (const auto& o : outputs) label += "\\n" + o;
    out << "  n" << s << " [label=" << quote(label);
    if (accepting) out << ", shape=doublecircle";
    if (!c.labels.empty()) out << ", tooltip=" << quote(to_string(c.labels[s]));
    out << "];\n";
    // Merge labels of parallel edges with the same style.
    std::vector<std::pair<std::pair<std::string, bool>, std::vector<std::string>>> merged;
    for (const auto& e : edges) {
      uses_bot = uses_bot || e.target == "bot";
      uses_top = uses_top || e.target == "top";
      auto key = std::make_pair(e.target, e.dashed);
      auto it = std::find_if(merged.begin(), merged.end(), [&](const auto& m) { return m.first == key; });
      if (it == merged.end()) merged.push_back({key, {e.label}});
      else if (std::find(it->second.begin(), it->second.end(), e.label) == it->second.end()) it->second.push_back(e.label);
    }
    for (const auto& [key, labels] : merged) {
      std::string l;
      for (std::size_t i = 0; i < labels.size(); ++i) l += (i ? "," : "") + labels[i];
      std::string line = "  n" + std::to_string(s) + " -> " + key.first + " [label=" + quote(l);
      if (key.second) line += ", style=dashed";
      edge_lines.push_back(line + "];");
    }
  }
  if (uses_bot) out << "  bot [shape=square, label=\"⊥\"];\n";
  if (uses_top) out << "  top [shape=square, label=\"⊤\"];\n";
  if (c.point) out << "  start -> n" << *c.point << ";\n";
  for (const auto& l : edge_lines) out << l << "\n";
  out << "}\n";
  return out.str();
}

}  // namespace coexpr
