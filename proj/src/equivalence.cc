#include "coexpr/equivalence.hh"

#include <algorithm>
#include <map>

#include "coexpr/error.hh"
#include "coexpr/extraction.hh"
#include "coexpr/synthesis.hh"

namespace coexpr {

namespace {

const TermOrder& plain_order() {
  static const TermOrder order;
  return order;
}

StateValue relabel(const StateValue& v, const std::vector<std::size_t>& cls) {
  return fmap<StateId>(v, [&](StateId s) { return static_cast<StateId>(cls[s]); }, plain_order());
}

struct KeyLess {
  bool operator()(const std::pair<std::size_t, StateValue>& a, const std::pair<std::size_t, StateValue>& b) const {
    if (a.first != b.first) return a.first < b.first;
    return fvalue_compare(a.second, b.second, plain_order()) < 0;
  }
};

/// rounds[k][s] is the class of s after k refinement steps; the last entry
/// is bisimilarity.
std::vector<std::vector<std::size_t>> refine(const Coalgebra& c) {
  std::vector<std::vector<std::size_t>> rounds{std::vector<std::size_t>(c.size(), 0)};
  std::size_t count = c.size() ? 1 : 0;
  while (true) {
    const auto& prev = rounds.back();
    std::map<std::pair<std::size_t, StateValue>, std::size_t, KeyLess> ids;
    std::vector<std::size_t> next(c.size());
    for (std::size_t s = 0; s < c.size(); ++s) {
      auto key = std::make_pair(prev[s], relabel(c.transition[s], prev));
      auto it = ids.emplace(std::move(key), ids.size()).first;
      next[s] = it->second;
    }
    if (ids.size() == count) break;
    count = ids.size();
    rounds.push_back(std::move(next));
  }
  return rounds;
}

class Distinguisher {
 public:
  Distinguisher(const Coalgebra& u, const std::vector<std::vector<std::size_t>>& rounds, const Functor& g)
      : u_(u), rounds_(rounds), g_(g) {}

  void run(StateId s, StateId t, Certificate& cert) {
    std::size_t k = 1;
    while (rounds_[k][s] == rounds_[k][t]) ++k;
    const auto& prev = rounds_[k - 1];
    walk(g_, u_.transition[s], u_.transition[t], prev, k, cert);
  }

 private:
  bool differ(const StateValue& a, const StateValue& b, const std::vector<std::size_t>& prev) const {
    return fvalue_compare(relabel(a, prev), relabel(b, prev), plain_order()) != 0;
  }

  std::string show(const StateValue& v) const { return state_value_to_string(u_, v); }

  void walk(const Functor& f, const StateValue& a, const StateValue& b, const std::vector<std::size_t>& prev,
            std::size_t k, Certificate& cert) {
    switch (f->kind) {
      case FunctorKind::Id:
        cert.trace.push_back(u_.names[a.item] + "|" + u_.names[b.item]);
        run(a.item, b.item, cert);
        return;
      case FunctorKind::Const:
        cert.reason = "output " + f->lattice->element(a.element) + " vs " + f->lattice->element(b.element);
        return;
      case FunctorKind::Product:
        if (differ(a.kids[0], b.kids[0], prev)) {
          cert.trace.push_back("left");
          walk(f->left, a.kids[0], b.kids[0], prev, k, cert);
        } else {
          cert.trace.push_back("right");
          walk(f->right, a.kids[1], b.kids[1], prev, k, cert);
        }
        return;
      case FunctorKind::Sum:
        if (a.kind != b.kind) {
          cert.reason = show(a) + " vs " + show(b);
          return;
        }
        cert.trace.push_back(a.kind == FKind::Inl ? "inl" : "inr");
        walk(a.kind == FKind::Inl ? f->left : f->right, a.kids[0], b.kids[0], prev, k, cert);
        return;
      case FunctorKind::Exp:
        for (std::size_t i = 0; i < f->alphabet.size(); ++i)
          if (differ(a.kids[i], b.kids[i], prev)) {
            cert.trace.push_back(f->alphabet[i]);
            walk(f->left, a.kids[i], b.kids[i], prev, k, cert);
            return;
          }
        return;
      case FunctorKind::Pow: {
        cert.trace.push_back("set");
        auto unmatched = [&](const StateValue& x, const StateValue& y) -> const StateValue* {
          for (const auto& m : x.kids) {
            bool found = false;
            for (const auto& n : y.kids) found = found || !differ(m, n, prev);
            if (!found) return &m;
          }
          return nullptr;
        };
        if (const StateValue* m = unmatched(a, b))
          cert.reason = "member " + show(*m) + " of the first set has no match";
        else if (const StateValue* m2 = unmatched(b, a))
          cert.reason = "member " + show(*m2) + " of the second set has no match";
        return;
      }
    }
  }

  const Coalgebra& u_;
  const std::vector<std::vector<std::size_t>>& rounds_;
  Functor g_;
};

}  // namespace

std::vector<std::size_t> bisimilarity_classes(const Coalgebra& c) { return refine(c).back(); }

std::vector<std::vector<bool>> greatest_bisimulation_pairwise(const Coalgebra& c) {
  const std::size_t n = c.size();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, true));
  bool changed = true;
  while (changed) {
    changed = false;
    auto rel = [&](StateId x, StateId y) { return static_cast<bool>(r[x][y]); };
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t t = 0; t < n; ++t)
        if (r[s][t] && !lifted_related(c.functor, rel, c.transition[s], c.transition[t])) {
          r[s][t] = false;
          changed = true;
        }
  }
  return r;
}

Coalgebra disjoint_union(const Coalgebra& a, const Coalgebra& b) {
  if (!functor_equal(a.functor, b.functor))
    throw CoalgebraError("functor mismatch: " + to_string(a.functor) + " vs " + to_string(b.functor));
  Coalgebra u;
  u.functor = a.functor;
  u.names = a.names;
  u.transition = a.transition;
  const auto shift = static_cast<StateId>(a.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    std::string name = b.names[i];
    if (a.find_state(name)) name = "2:" + name;
    u.names.push_back(name);
    u.transition.push_back(fmap<StateId>(b.transition[i], [&](StateId s) { return s + shift; }, plain_order()));
  }
  if (!a.labels.empty() && !b.labels.empty()) {
    u.labels = a.labels;
    u.labels.insert(u.labels.end(), b.labels.begin(), b.labels.end());
  }
  u.point = a.point;
  return u;
}

Certificate bisimilar(const Coalgebra& c1, StateId s1, const Coalgebra& c2, StateId s2) {
  if (s1 >= c1.size() || s2 >= c2.size()) throw CoalgebraError("unknown state");
  Coalgebra u = disjoint_union(c1, c2);
  const auto shift = static_cast<StateId>(c1.size());
  auto rounds = refine(u);
  const auto& cls = rounds.back();
  Certificate cert;
  StateId t2 = s2 + shift;
  if (cls[s1] == cls[t2]) {
    cert.bisimilar = true;
    auto left = bfs_order(c1, s1);
    auto right = bfs_order(c2, s2);
    std::sort(left.begin(), left.end());
    std::sort(right.begin(), right.end());
    for (StateId x : left)
      for (StateId y : right)
        if (cls[x] == cls[y + shift]) cert.witness.emplace_back(x, y);
    return cert;
  }
  Distinguisher(u, rounds, u.functor).run(s1, t2, cert);
  return cert;
}

Coalgebra minimize(const Coalgebra& c) {
  auto cls = bisimilarity_classes(c);
  std::size_t n = 0;
  for (auto k : cls) n = std::max(n, k + 1);
  Coalgebra m;
  m.functor = c.functor;
  m.names.resize(n);
  m.transition.resize(n);
  std::vector<bool> done(n, false);
  if (!c.labels.empty()) m.labels.resize(n);
  for (std::size_t s = 0; s < c.size(); ++s) {
    std::size_t k = cls[s];
    if (done[k]) continue;
    done[k] = true;
    m.names[k] = c.names[s];
    m.transition[k] = relabel(c.transition[s], cls);
    if (!c.labels.empty()) m.labels[k] = c.labels[s];
  }
  if (c.point) m.point = static_cast<StateId>(cls[*c.point]);
  return m;
}

Certificate equiv(const Functor& g, const Expr& e1, const Expr& e2) {
  Coalgebra a = synthesize(g, e1);
  Coalgebra b = synthesize(g, e2);
  return bisimilar(a, *a.point, b, *b.point);
}

Coalgebra canonical_relabel(const Coalgebra& c) {
  const std::size_t n = c.size();
  std::vector<std::size_t> rank(n, 0);
  std::size_t count = n ? 1 : 0;
  while (true) {
    std::map<std::pair<std::size_t, StateValue>, std::size_t, KeyLess> keys;
    for (std::size_t s = 0; s < n; ++s) keys.emplace(std::make_pair(rank[s], relabel(c.transition[s], rank)), 0);
    std::size_t i = 0;
    for (auto& [k, v] : keys) v = i++;
    std::vector<std::size_t> next(n);
    for (std::size_t s = 0; s < n; ++s) next[s] = keys.at(std::make_pair(rank[s], relabel(c.transition[s], rank)));
    rank = std::move(next);
    if (keys.size() == count) break;
    count = keys.size();
  }
  // Non-minimal input: break remaining ties by index.
  std::vector<StateId> by_rank(n);
  for (std::size_t s = 0; s < n; ++s) by_rank[s] = static_cast<StateId>(s);
  std::stable_sort(by_rank.begin(), by_rank.end(), [&](StateId x, StateId y) { return rank[x] < rank[y]; });
  std::vector<std::size_t> pos(n);
  for (std::size_t i = 0; i < n; ++i) pos[by_rank[i]] = i;

  Coalgebra out;
  out.functor = c.functor;
  for (std::size_t i = 0; i < n; ++i) {
    StateId s = by_rank[i];
    out.names.push_back("s" + std::to_string(i));
    out.transition.push_back(relabel(c.transition[s], pos));
    if (!c.labels.empty()) out.labels.push_back(c.labels[s]);
  }
  if (c.point) out.point = static_cast<StateId>(pos[*c.point]);
  return out;
}

Expr canonical_form(const Functor& g, const Expr& e) {
  Coalgebra c = synthesize(g, e);
  Coalgebra k = canonical_relabel(minimize(reachable(c, *c.point)));
  return acie_normal_form(extract(k, *k.point), TermOrder(g));
}

std::string to_string(const Certificate& cert, const Coalgebra& c1, StateId s1, const Coalgebra& c2, StateId s2) {
  std::string out;
  if (cert.bisimilar) {
    out = "bisimilar\nwitness:";
    for (auto [x, y] : cert.witness) out += " (" + c1.names[x] + ", " + c2.names[y] + ")";
    return out + "\n";
  }
  out = "not bisimilar\npath: " + c1.names[s1] + "|" + c2.names[s2];
  for (const auto& step : cert.trace) out += " -> " + step;
  return out + "\nreason: " + cert.reason + "\n";
}

}  // namespace coexpr
