#include "zsup/clifford.hpp"

#include <algorithm>

#include "zsup/detail/format.hpp"
#include "zsup/error.hpp"
#include "zsup/expression.hpp"

namespace zsup {

// ---------------------------------------------------------------------------
// Presentation

ColorAlgebraPresentation::ColorAlgebraPresentation(std::size_t rank, std::vector<Generator> generators,
                                                   std::vector<std::vector<Rational>> h,
                                                   std::map<std::string, Rational> squares)
    : rank_(rank), generators_(std::move(generators)), h_(std::move(h)), squares_(std::move(squares)) {
  const std::size_t m = generators_.size();
  for (std::size_t a = 0; a < m; ++a) {
    if (generators_[a].degree.rank() != rank_) {
      throw DimensionError("generator '" + generators_[a].name + "' has a degree of the wrong rank");
    }
    for (std::size_t b = 0; b < a; ++b) {
      if (generators_[a].name == generators_[b].name) {
        throw ValidationError("duplicate generator '" + generators_[a].name + "'");
      }
    }
  }
  if (h_.size() != m) throw ValidationError("h must have one row per generator");
  for (const auto& row : h_) {
    if (row.size() != m) throw ValidationError("h must be square");
  }
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      const auto& ga = generators_[a];
      const auto& gb = generators_[b];
      if (h_[b][a] != -sign(a, b) * h_[a][b]) {
        throw ValidationError("h violates h_ba = -(-1)^<a,b> h_ab at (" + ga.name + "," + gb.name + ")");
      }
      if (h_[a][b] != 0 && ga.degree != gb.degree) {
        throw ValidationError("h_(" + ga.name + "," + gb.name + ") is nonzero between different degrees");
      }
    }
  }
  for (const auto& [name, value] : squares_) {
    auto a = index(name);
    if (!a) throw UnknownSymbol("square given for unknown generator '" + name + "'");
    if (parity(generators_[*a].degree) == 1) {
      throw ValidationError("square of '" + name + "' is fixed by the relations and cannot be overridden");
    }
  }
}

std::optional<std::size_t> ColorAlgebraPresentation::index(const std::string& name) const {
  for (std::size_t a = 0; a < generators_.size(); ++a) {
    if (generators_[a].name == name) return a;
  }
  return std::nullopt;
}

int ColorAlgebraPresentation::sign(std::size_t a, std::size_t b) const {
  return commutation_sign(generators_.at(a).degree, generators_.at(b).degree);
}

std::optional<Rational> ColorAlgebraPresentation::square(std::size_t a) const {
  const auto& g = generators_.at(a);
  if (parity(g.degree) == 1) return Rational(h_[a][a] / 2);
  if (auto it = squares_.find(g.name); it != squares_.end()) return it->second;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Elements

CliffordElement CliffordElement::scalar(const Rational& c) {
  CliffordElement e;
  e.add_term({}, c);
  return e;
}

CliffordElement CliffordElement::generator(std::size_t index) {
  CliffordElement e;
  e.add_term({index}, 1);
  return e;
}

Rational CliffordElement::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Rational(0) : it->second;
}

void CliffordElement::add_term(const Word& w, const Rational& c) {
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (w[i - 1] >= w[i]) throw ValidationError("clifford basis words must be strictly ascending");
  }
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

CliffordElement& CliffordElement::operator+=(const CliffordElement& other) {
  for (const auto& [w, c] : other.terms_) add_term(w, c);
  return *this;
}

CliffordElement& CliffordElement::operator-=(const CliffordElement& other) {
  for (const auto& [w, c] : other.terms_) add_term(w, -c);
  return *this;
}

CliffordElement& CliffordElement::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, v] : terms_) v *= c;
  return *this;
}

std::string CliffordElement::to_string(const ColorAlgebraPresentation& p) const {
  std::vector<const TermMap::value_type*> ordered;
  for (const auto& t : terms_) ordered.push_back(&t);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](auto* a, auto* b) { return a->first.size() < b->first.size(); });
  detail::TermJoiner joiner(false);
  for (const auto* t : ordered) {
    std::vector<detail::PowerFactor> factors;
    for (auto a : t->first) factors.emplace_back(p.generators()[a].name, 1);
    joiner.add(t->second, factors);
  }
  return joiner.str();
}

// ---------------------------------------------------------------------------
// Rewriting

CliffordElement normalize_word(const ColorAlgebraPresentation& p, const CliffordElement::Word& word) {
  for (auto a : word) {
    if (a >= p.generators().size()) throw UnknownSymbol("generator index out of range");
  }
  CliffordElement out;
  std::vector<std::pair<CliffordElement::Word, Rational>> pending{{word, Rational(1)}};
  while (!pending.empty()) {
    auto [w, c] = std::move(pending.back());
    pending.pop_back();
    std::size_t i = 0;
    while (i + 1 < w.size() && w[i] < w[i + 1]) ++i;
    if (i + 1 >= w.size()) {
      out.add_term(w, c);
      continue;
    }
    CliffordElement::Word contracted(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
    contracted.insert(contracted.end(), w.begin() + static_cast<std::ptrdiff_t>(i + 2), w.end());
    const std::size_t b = w[i], a = w[i + 1];
    if (a == b) {
      auto sq = p.square(a);
      if (!sq) {
        throw ValidationError("square of '" + p.generators()[a].name +
                              "' is not determined by the relations and no value was supplied");
      }
      if (*sq != 0) pending.emplace_back(std::move(contracted), c * *sq);
      continue;
    }
    // f_b f_a = (-1)^<a,b> f_a f_b + h_ba
    CliffordElement::Word swapped = w;
    std::swap(swapped[i], swapped[i + 1]);
    pending.emplace_back(std::move(swapped), c * p.sign(a, b));
    const Rational& h = p.h()[b][a];
    if (h != 0) pending.emplace_back(std::move(contracted), c * h);
  }
  return out;
}

CliffordElement clifford_mul(const ColorAlgebraPresentation& p, const CliffordElement& u, const CliffordElement& v) {
  CliffordElement out;
  for (const auto& [wu, cu] : u.terms()) {
    for (const auto& [wv, cv] : v.terms()) {
      CliffordElement::Word w = wu;
      w.insert(w.end(), wv.begin(), wv.end());
      CliffordElement t = normalize_word(p, w);
      t *= cu * cv;
      out += t;
    }
  }
  return out;
}

namespace {

class CliffordAlgebra {
 public:
  explicit CliffordAlgebra(const ColorAlgebraPresentation& p) : p_(p) {}

  CliffordElement constant(const Rational& c) const { return CliffordElement::scalar(c); }
  CliffordElement symbol(const std::string& name, const Expr& where) const {
    auto a = p_.index(name);
    if (!a) {
      throw UnknownSymbol("unknown generator '" + name + "' at line " + std::to_string(where.line) + ", column " +
                          std::to_string(where.column));
    }
    return CliffordElement::generator(*a);
  }
  CliffordElement add(const CliffordElement& a, const CliffordElement& b) const { return a + b; }
  CliffordElement sub(const CliffordElement& a, const CliffordElement& b) const { return a - b; }
  CliffordElement mul(const CliffordElement& a, const CliffordElement& b) const { return clifford_mul(p_, a, b); }
  CliffordElement neg(const CliffordElement& a) const { return a * Rational(-1); }

 private:
  const ColorAlgebraPresentation& p_;
};

}  // namespace

CliffordElement parse_clifford(const ColorAlgebraPresentation& p, const std::string& text) {
  return evaluate(parse_expression(text), CliffordAlgebra(p));
}

// ---------------------------------------------------------------------------
// Structure-constant algebras

void StructureConstantAlgebra::validate() const {
  const std::size_t m = names.size();
  if (degrees.size() != m) throw ValidationError("one degree per basis element required");
  for (const auto& d : degrees) {
    if (!degrees.empty() && d.rank() != degrees.front().rank()) throw DimensionError("degrees of mixed rank");
  }
  if (table.size() != m) throw ValidationError("multiplication table has the wrong number of rows");
  for (const auto& row : table) {
    if (row.size() != m) throw ValidationError("multiplication table is not square");
    for (const auto& entry : row) {
      if (entry.size() != m) throw ValidationError("product is not expressed in the basis");
    }
  }
}

ColorCommutativityReport check_color_commutative(const StructureConstantAlgebra& algebra) {
  algebra.validate();
  const std::size_t m = algebra.names.size();
  ColorCommutativityReport report;
  auto fail = [&](std::size_t i, std::size_t j, std::string reason) {
    report.ok = false;
    report.counterexample = std::make_pair(algebra.names[i], algebra.names[j]);
    report.reason = std::move(reason);
  };
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const Degree want = algebra.degrees[i] + algebra.degrees[j];
      const auto& prod = algebra.table[i][j];
      std::optional<Degree> seen;
      for (std::size_t k = 0; k < m; ++k) {
        if (prod[k] == 0) continue;
        if (seen && *seen != algebra.degrees[k]) {
          fail(i, j, "inhomogeneous product");
          return report;
        }
        seen = algebra.degrees[k];
      }
      if (seen && *seen != want) {
        fail(i, j, "product has degree " + seen->to_string() + ", expected " + want.to_string());
        return report;
      }
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      const int s = commutation_sign(algebra.degrees[i], algebra.degrees[j]);
      for (std::size_t k = 0; k < m; ++k) {
        if (algebra.table[i][j][k] != s * algebra.table[j][i][k]) {
          fail(i, j, s > 0 ? "elements do not commute" : "elements do not anticommute");
          return report;
        }
      }
    }
  }
  return report;
}

StructureConstantAlgebra quaternion_presentation() {
  StructureConstantAlgebra q;
  q.names = {"1", "i", "j", "k"};
  q.degrees = {Degree{0, 0, 0}, Degree{1, 1, 0}, Degree{1, 0, 1}, Degree{0, 1, 1}};
  // unit(idx) with sign: basis vectors as coefficient rows.
  auto e = [](int sign, std::size_t idx) {
    std::vector<Rational> v(4, Rational(0));
    v[idx] = sign;
    return v;
  };
  q.table = {
      {e(1, 0), e(1, 1), e(1, 2), e(1, 3)},
      {e(1, 1), e(-1, 0), e(1, 3), e(-1, 2)},
      {e(1, 2), e(-1, 3), e(-1, 0), e(1, 1)},
      {e(1, 3), e(1, 2), e(-1, 1), e(-1, 0)},
  };
  return q;
}

ColorAlgebraPresentation quaternion_clifford_presentation() {
  std::vector<Generator> gens{{"e1", Degree{1}}, {"e2", Degree{1}}};
  std::vector<std::vector<Rational>> h{{Rational(-2), Rational(0)}, {Rational(0), Rational(-2)}};
  return ColorAlgebraPresentation(1, std::move(gens), std::move(h));
}

}  // namespace zsup
