#include "coexpr/coalgebra.hh"

#include <deque>

#include "coexpr/error.hh"

namespace coexpr {

std::optional<StateId> Coalgebra::find_state(std::string_view name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<StateId>(i);
  return std::nullopt;
}

StateId Coalgebra::require_state(std::string_view name) const {
  if (auto s = find_state(name)) return *s;
  throw CoalgebraError("unknown state '" + std::string(name) + "'");
}

void validate_coalgebra(const Coalgebra& c) {
  if (!c.functor) throw CoalgebraError("coalgebra without functor");
  if (c.transition.size() != c.names.size())
    throw CoalgebraError("transition map is not total: " + std::to_string(c.names.size()) + " states, " +
                         std::to_string(c.transition.size()) + " transitions");
  for (std::size_t i = 0; i < c.names.size(); ++i) {
    std::string why;
    auto ok = [&](StateId s) { return s < c.names.size(); };
    if (!has_shape(c.transition[i], c.functor, ok, &why))
      throw CoalgebraError("transition of state " + c.names[i] + ": " + why);
  }
  if (c.point && *c.point >= c.names.size()) throw CoalgebraError("point is not a state");
  if (!c.labels.empty() && c.labels.size() != c.names.size()) throw CoalgebraError("labels do not match states");
}

void successors(const StateValue& v, std::vector<StateId>& out) {
  if (v.kind == FKind::Carrier) {
    out.push_back(v.item);
    return;
  }
  for (const auto& k : v.kids) successors(k, out);
}

std::vector<StateId> bfs_order(const Coalgebra& c, StateId s) {
  if (s >= c.size()) throw CoalgebraError("unknown state index " + std::to_string(s));
  std::vector<StateId> order{s};
  std::vector<bool> seen(c.size(), false);
  seen[s] = true;
  std::vector<StateId> next;
  for (std::size_t i = 0; i < order.size(); ++i) {
    next.clear();
    successors(c.transition[order[i]], next);
    for (StateId t : next)
      if (!seen[t]) {
        seen[t] = true;
        order.push_back(t);
      }
  }
  return order;
}

Coalgebra reachable(const Coalgebra& c, StateId s) {
  std::vector<StateId> order = bfs_order(c, s);
  std::vector<StateId> index(c.size(), 0);
  for (std::size_t i = 0; i < order.size(); ++i) index[order[i]] = static_cast<StateId>(i);
  Coalgebra out;
  out.functor = c.functor;
  out.point = 0;
  TermOrder plain;
  for (StateId old : order) {
    out.names.push_back(c.names[old]);
    out.transition.push_back(fmap<StateId>(c.transition[old], [&](StateId t) { return index[t]; }, plain));
    if (!c.labels.empty()) out.labels.push_back(c.labels[old]);
  }
  return out;
}

std::string state_value_to_string(const Coalgebra& c, const StateValue& v) {
  return fvalue_to_string(v, [&](StateId s) { return c.names.at(s); });
}

}  // namespace coexpr
