#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace coexpr {

/// A join-semilattice exactly as declared by the user, before any checks.
/// `join[i][j]` names the element `elements[i] v elements[j]`.
struct LatticeTable {
  std::string name;
  std::vector<std::string> elements;
  std::string bottom;
  std::vector<std::vector<std::string>> join;
};

enum class LatticeViolation {
  none,
  bad_dimensions,
  duplicate_element,
  unknown_bottom,
  entry_outside,
  idempotency,
  commutativity,
  associativity,
  neutrality,
};

std::string_view to_string(LatticeViolation v);

/// Outcome of validate_lattice. `witnesses` lists the element names that
/// exhibit the first failing law (or the offending name for structural
/// errors).
struct LatticeReport {
  LatticeViolation violation = LatticeViolation::none;
  std::vector<std::string> witnesses;
  std::string message;

  bool ok() const noexcept { return violation == LatticeViolation::none; }
};

LatticeReport validate_lattice(const LatticeTable& table);

/// A finite bounded join-semilattice with a precomputed join table.
/// Elements are addressed by their index in declaration order; that order is
/// also the tie-break order used when sorting lattice literals.
class JoinSemilattice {
 public:
  /// Validates `table` and throws LatticeError with the report message if any
  /// law fails.
  static std::shared_ptr<const JoinSemilattice> create(const LatticeTable& table);

  /// {0,1} with 0 as bottom.
  static std::shared_ptr<const JoinSemilattice> bool2();
  /// The one-element lattice {*}.
  static std::shared_ptr<const JoinSemilattice> unit();
  /// Subsets of up to four atoms with union as join. Element names are the
  /// member atoms joined by '_' in atom order; the empty set is `none`.
  static std::shared_ptr<const JoinSemilattice> powerset(std::string name,
                                                         const std::vector<std::string>& atoms);

  const std::string& name() const noexcept { return name_; }
  const std::vector<std::string>& elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  std::size_t bottom() const noexcept { return bottom_; }
  const std::string& element(std::size_t i) const { return elements_.at(i); }

  std::optional<std::size_t> index_of(std::string_view element) const;
  /// Throws LatticeError for unknown names.
  std::size_t require(std::string_view element) const;

  std::size_t join(std::size_t a, std::size_t b) const { return table_[a * size() + b]; }
  bool leq(std::size_t a, std::size_t b) const { return join(a, b) == b; }

  LatticeTable table() const;

  /// Same name and same join table.
  friend bool operator==(const JoinSemilattice& a, const JoinSemilattice& b);

 private:
  JoinSemilattice() = default;

  std::string name_;
  std::vector<std::string> elements_;
  std::size_t bottom_ = 0;
  std::vector<std::size_t> table_;
};

using Lattice = std::shared_ptr<const JoinSemilattice>;

/// Join by element name; throws LatticeError for unknown elements.
std::string join_eval(const JoinSemilattice& lattice, std::string_view a, std::string_view b);
bool leq_eval(const JoinSemilattice& lattice, std::string_view a, std::string_view b);

/// Name -> lattice lookup, pre-populated with `bool2` and `unit`.
class LatticeRegistry {
 public:
  LatticeRegistry();

  /// Throws LatticeError when the name is already taken.
  void add(Lattice lattice);
  Lattice find(std::string_view name) const;
  Lattice require(std::string_view name) const;
  bool is_builtin(std::string_view name) const;

  std::vector<Lattice> user_lattices() const;

 private:
  std::map<std::string, Lattice, std::less<>> lattices_;
};

}  // namespace coexpr
