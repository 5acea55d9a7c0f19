#include "coexpr/functor.hh"

#include <cctype>
#include <set>

#include "coexpr/error.hh"

namespace coexpr {

Functor make_id() {
  static const Functor id = std::make_shared<const FunctorNode>(FunctorNode{FunctorKind::Id, nullptr, nullptr, nullptr, {}});
  return id;
}

Functor make_const(Lattice lattice) {
  if (!lattice) throw FunctorError("const functor without lattice");
  return std::make_shared<const FunctorNode>(FunctorNode{FunctorKind::Const, std::move(lattice), nullptr, nullptr, {}});
}

Functor make_product(Functor left, Functor right) {
  return std::make_shared<const FunctorNode>(
      FunctorNode{FunctorKind::Product, nullptr, std::move(left), std::move(right), {}});
}

Functor make_sum(Functor left, Functor right) {
  return std::make_shared<const FunctorNode>(FunctorNode{FunctorKind::Sum, nullptr, std::move(left), std::move(right), {}});
}

Functor make_exp(Functor base, std::vector<std::string> alphabet) {
  if (alphabet.empty()) throw FunctorError("empty alphabet");
  std::set<std::string> seen;
  for (const auto& a : alphabet)
    if (!seen.insert(a).second) throw FunctorError("repeated letter '" + a + "' in alphabet");
  return std::make_shared<const FunctorNode>(
      FunctorNode{FunctorKind::Exp, nullptr, std::move(base), nullptr, std::move(alphabet)});
}

Functor make_pow(Functor base) {
  return std::make_shared<const FunctorNode>(FunctorNode{FunctorKind::Pow, nullptr, std::move(base), nullptr, {}});
}

bool functor_equal(const Functor& a, const Functor& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case FunctorKind::Id: return true;
    case FunctorKind::Const: return *a->lattice == *b->lattice;
    case FunctorKind::Product:
    case FunctorKind::Sum: return functor_equal(a->left, b->left) && functor_equal(a->right, b->right);
    case FunctorKind::Exp: return a->alphabet == b->alphabet && functor_equal(a->left, b->left);
    case FunctorKind::Pow: return functor_equal(a->left, b->left);
  }
  return false;
}

namespace {

// 0: sum, 1: product, 2: postfix/atom.
int level(const Functor& f) {
  switch (f->kind) {
    case FunctorKind::Sum: return 0;
    case FunctorKind::Product: return 1;
    default: return 2;
  }
}

std::string print(const Functor& f, int min_level) {
  std::string s;
  switch (f->kind) {
    case FunctorKind::Id: s = "Id"; break;
    case FunctorKind::Const: s = "const(" + f->lattice->name() + ")"; break;
    case FunctorKind::Product: s = print(f->left, 1) + " * " + print(f->right, 2); break;
    case FunctorKind::Sum: s = print(f->left, 0) + " (+) " + print(f->right, 1); break;
    case FunctorKind::Exp: {
      s = print(f->left, 2) + "^{";
      for (std::size_t i = 0; i < f->alphabet.size(); ++i) s += (i ? "," : "") + f->alphabet[i];
      s += "}";
      break;
    }
    case FunctorKind::Pow: s = "Pow(" + print(f->left, 0) + ")"; break;
  }
  if (level(f) < min_level) return "(" + s + ")";
  return s;
}

class FunctorParser {
 public:
  FunctorParser(std::string_view text, const LatticeRegistry& lattices) : text_(text), lattices_(lattices) {}

  Functor parse() {
    Functor f = sum();
    skip();
    if (pos_ != text_.size()) throw ParseError("unexpected input in functor", pos_);
    return f;
  }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(std::string_view tok) {
    skip();
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view tok) {
    if (!accept(tok)) throw ParseError("expected '" + std::string(tok) + "' in functor", pos_);
  }
  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.'; }
  std::string ident() {
    skip();
    std::size_t start = pos_;
    if (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_])))
      while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    if (start == pos_) throw ParseError("expected identifier in functor", pos_);
    return std::string(text_.substr(start, pos_ - start));
  }

  Functor sum() {
    Functor f = product();
    while (accept("(+)")) f = make_sum(f, product());
    return f;
  }
  Functor product() {
    Functor f = postfix();
    while (accept("*")) f = make_product(f, postfix());
    return f;
  }
  Functor postfix() {
    Functor f = atom();
    while (accept("^")) {
      std::size_t at = pos_;
      expect("{");
      std::vector<std::string> letters;
      if (!accept("}")) {
        do letters.push_back(ident());
        while (accept(","));
        expect("}");
      }
      try {
        f = make_exp(f, std::move(letters));
      } catch (const FunctorError& e) {
        throw ParseError(e.what(), at);
      }
    }
    return f;
  }
  Functor atom() {
    skip();
    std::size_t at = pos_;
    if (accept("(")) {
      Functor f = sum();
      expect(")");
      return f;
    }
    std::string word = ident();
    if (word == "Id") return make_id();
    if (word == "Pow") {
      expect("(");
      Functor f = sum();
      expect(")");
      return make_pow(f);
    }
    if (word == "const") {
      expect("(");
      std::size_t name_at = pos_;
      std::string name = ident();
      expect(")");
      Lattice l = lattices_.find(name);
      if (!l) throw ParseError("unknown lattice '" + name + "'", name_at);
      return make_const(l);
    }
    throw ParseError("unexpected '" + word + "' in functor", at);
  }

  std::string_view text_;
  const LatticeRegistry& lattices_;
  std::size_t pos_ = 0;
};

void collect(const Functor& f, std::vector<Functor>& out) {
  for (const auto& g : out)
    if (functor_equal(f, g)) return;
  out.push_back(f);
  if (f->left) collect(f->left, out);
  if (f->right) collect(f->right, out);
}

}  // namespace

std::string to_string(const Functor& f) { return print(f, 0); }

Functor parse_functor(std::string_view text, const LatticeRegistry& lattices) {
  return FunctorParser(text, lattices).parse();
}

std::vector<Functor> ingredients(const Functor& g) {
  std::vector<Functor> out;
  collect(g, out);
  return out;
}

bool ingredient_check(const Functor& f, const Functor& g) {
  for (const auto& h : ingredients(g))
    if (functor_equal(f, h)) return true;
  return false;
}

std::vector<Lattice> functor_lattices(const Functor& g) {
  std::vector<Lattice> out;
  for (const auto& f : ingredients(g)) {
    if (f->kind != FunctorKind::Const) continue;
    bool seen = false;
    for (const auto& l : out) seen = seen || *l == *f->lattice;
    if (!seen) out.push_back(f->lattice);
  }
  return out;
}

TermOrder::TermOrder(const Functor& g) {
  // Preorder walk so that ranks follow the textual order of the functor.
  std::vector<Functor> stack{g};
  while (!stack.empty()) {
    Functor f = stack.back();
    stack.pop_back();
    if (f->kind == FunctorKind::Exp)
      for (const auto& a : f->alphabet) letter_rank_.emplace(a, letter_rank_.size());
    if (f->kind == FunctorKind::Const)
      for (const auto& e : f->lattice->elements()) element_rank_.emplace(e, element_rank_.size());
    if (f->right) stack.push_back(f->right);
    if (f->left) stack.push_back(f->left);
  }
}

int TermOrder::compare_ranked(const std::map<std::string, std::size_t, std::less<>>& ranks, const std::string& a,
                              const std::string& b) {
  if (a == b) return 0;
  auto ia = ranks.find(a), ib = ranks.find(b);
  if (ia != ranks.end() && ib != ranks.end()) return ia->second < ib->second ? -1 : 1;
  if (ia != ranks.end()) return -1;
  if (ib != ranks.end()) return 1;
  return a < b ? -1 : 1;
}

int TermOrder::compare_letters(const std::string& a, const std::string& b) const {
  return compare_ranked(letter_rank_, a, b);
}

int TermOrder::compare_elements(const std::string& a, const std::string& b) const {
  return compare_ranked(element_rank_, a, b);
}

}  // namespace coexpr
