#include "coexpr/lattice.hh"

#include <set>

#include "coexpr/error.hh"

namespace coexpr {

std::string_view to_string(LatticeViolation v) {
  switch (v) {
    case LatticeViolation::none: return "ok";
    case LatticeViolation::bad_dimensions: return "bad table dimensions";
    case LatticeViolation::duplicate_element: return "duplicate element";
    case LatticeViolation::unknown_bottom: return "bottom not listed";
    case LatticeViolation::entry_outside: return "table entry outside elements";
    case LatticeViolation::idempotency: return "idempotency";
    case LatticeViolation::commutativity: return "commutativity";
    case LatticeViolation::associativity: return "associativity";
    case LatticeViolation::neutrality: return "neutrality";
  }
  return "?";
}

namespace {

LatticeReport fail(LatticeViolation v, std::vector<std::string> witnesses, const std::string& name) {
  LatticeReport r;
  r.violation = v;
  r.witnesses = std::move(witnesses);
  r.message = "lattice " + name + ": " + std::string(to_string(v));
  if (!r.witnesses.empty()) {
    r.message += " (";
    for (std::size_t i = 0; i < r.witnesses.size(); ++i) {
      if (i) r.message += ", ";
      r.message += r.witnesses[i];
    }
    r.message += ")";
  }
  return r;
}

}  // namespace

LatticeReport validate_lattice(const LatticeTable& t) {
  const std::size_t n = t.elements.size();
  if (n == 0) return fail(LatticeViolation::bad_dimensions, {}, t.name);
  if (t.join.size() != n) return fail(LatticeViolation::bad_dimensions, {}, t.name);
  for (const auto& row : t.join)
    if (row.size() != n) return fail(LatticeViolation::bad_dimensions, {}, t.name);

  std::map<std::string, std::size_t, std::less<>> index;
  for (std::size_t i = 0; i < n; ++i)
    if (!index.emplace(t.elements[i], i).second)
      return fail(LatticeViolation::duplicate_element, {t.elements[i]}, t.name);
  auto bot = index.find(t.bottom);
  if (bot == index.end()) return fail(LatticeViolation::unknown_bottom, {t.bottom}, t.name);

  std::vector<std::size_t> j(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      auto it = index.find(t.join[a][b]);
      if (it == index.end()) return fail(LatticeViolation::entry_outside, {t.join[a][b]}, t.name);
      j[a * n + b] = it->second;
    }
  auto J = [&](std::size_t a, std::size_t b) { return j[a * n + b]; };
  const auto& E = t.elements;

  for (std::size_t a = 0; a < n; ++a)
    if (J(a, a) != a) return fail(LatticeViolation::idempotency, {E[a]}, t.name);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (J(a, b) != J(b, a)) return fail(LatticeViolation::commutativity, {E[a], E[b]}, t.name);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (J(J(a, b), c) != J(a, J(b, c)))
          return fail(LatticeViolation::associativity, {E[a], E[b], E[c]}, t.name);
  for (std::size_t b = 0; b < n; ++b)
    if (J(bot->second, b) != b) return fail(LatticeViolation::neutrality, {t.bottom, E[b]}, t.name);
  return {};
}

std::shared_ptr<const JoinSemilattice> JoinSemilattice::create(const LatticeTable& t) {
  auto report = validate_lattice(t);
  if (!report.ok()) throw LatticeError(report.message);
  std::shared_ptr<JoinSemilattice> l(new JoinSemilattice());
  l->name_ = t.name;
  l->elements_ = t.elements;
  const std::size_t n = t.elements.size();
  l->table_.resize(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) l->table_[a * n + b] = *l->index_of(t.join[a][b]);
  l->bottom_ = *l->index_of(t.bottom);
  return l;
}

std::shared_ptr<const JoinSemilattice> JoinSemilattice::bool2() {
  static const auto l = create({"bool2", {"0", "1"}, "0", {{"0", "1"}, {"1", "1"}}});
  return l;
}

std::shared_ptr<const JoinSemilattice> JoinSemilattice::unit() {
  static const auto l = create({"unit", {"*"}, "*", {{"*"}}});
  return l;
}

std::shared_ptr<const JoinSemilattice> JoinSemilattice::powerset(std::string name,
                                                                 const std::vector<std::string>& atoms) {
  if (atoms.empty() || atoms.size() > 4) throw LatticeError("powerset needs between 1 and 4 atoms");
  std::set<std::string> seen;
  for (const auto& a : atoms) {
    if (a.empty() || a.find('_') != std::string::npos || a == "none")
      throw LatticeError("invalid powerset atom '" + a + "'");
    if (!seen.insert(a).second) throw LatticeError("duplicate powerset atom '" + a + "'");
  }
  const std::size_t n = std::size_t{1} << atoms.size();
  auto label = [&](std::size_t mask) {
    if (mask == 0) return std::string("none");
    std::string s;
    for (std::size_t i = 0; i < atoms.size(); ++i)
      if (mask & (std::size_t{1} << i)) {
        if (!s.empty()) s += '_';
        s += atoms[i];
      }
    return s;
  };
  LatticeTable t;
  t.name = std::move(name);
  for (std::size_t m = 0; m < n; ++m) t.elements.push_back(label(m));
  t.bottom = "none";
  t.join.assign(n, std::vector<std::string>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t.join[a][b] = label(a | b);
  return create(t);
}

std::optional<std::size_t> JoinSemilattice::index_of(std::string_view element) const {
  for (std::size_t i = 0; i < elements_.size(); ++i)
    if (elements_[i] == element) return i;
  return std::nullopt;
}

std::size_t JoinSemilattice::require(std::string_view element) const {
  if (auto i = index_of(element)) return *i;
  throw LatticeError("unknown element '" + std::string(element) + "' of lattice " + name_);
}

LatticeTable JoinSemilattice::table() const {
  LatticeTable t;
  t.name = name_;
  t.elements = elements_;
  t.bottom = elements_[bottom_];
  const std::size_t n = size();
  t.join.assign(n, std::vector<std::string>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t.join[a][b] = elements_[join(a, b)];
  return t;
}

bool operator==(const JoinSemilattice& a, const JoinSemilattice& b) {
  return a.name_ == b.name_ && a.elements_ == b.elements_ && a.bottom_ == b.bottom_ && a.table_ == b.table_;
}

std::string join_eval(const JoinSemilattice& l, std::string_view a, std::string_view b) {
  return l.element(l.join(l.require(a), l.require(b)));
}

bool leq_eval(const JoinSemilattice& l, std::string_view a, std::string_view b) {
  return l.leq(l.require(a), l.require(b));
}

LatticeRegistry::LatticeRegistry() {
  lattices_.emplace("bool2", JoinSemilattice::bool2());
  lattices_.emplace("unit", JoinSemilattice::unit());
}

void LatticeRegistry::add(Lattice lattice) {
  std::string name = lattice->name();
  if (!lattices_.emplace(name, std::move(lattice)).second)
    throw LatticeError("lattice " + name + " already declared");
}

Lattice LatticeRegistry::find(std::string_view name) const {
  auto it = lattices_.find(name);
  return it == lattices_.end() ? nullptr : it->second;
}

Lattice LatticeRegistry::require(std::string_view name) const {
  if (auto l = find(name)) return l;
  throw LatticeError("unknown lattice '" + std::string(name) + "'");
}

bool LatticeRegistry::is_builtin(std::string_view name) const { return name == "bool2" || name == "unit"; }

std::vector<Lattice> LatticeRegistry::user_lattices() const {
  std::vector<Lattice> out;
  for (const auto& [name, l] : lattices_)
    if (!is_builtin(name)) out.push_back(l);
  return out;
}

}  // namespace coexpr
