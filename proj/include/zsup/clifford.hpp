#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zsup/grading.hpp"
#include "zsup/rational.hpp"

namespace zsup {

struct Generator {
  std::string name;
  Degree degree;
};

/// Color Clifford algebra: the free algebra on graded generators f_a modulo
///   f_a f_b - (-1)^<a,b> f_b f_a = h_ab * 1.
/// When <a,a> is odd the relation fixes f_a^2 = h_aa / 2. When <a,a> is even
/// the square is free; it may be pinned through `squares`, otherwise words
/// needing it are rejected.
class ColorAlgebraPresentation {
 public:
  /// Throws ValidationError unless h_ba = -(-1)^<a,b> h_ab for all pairs and
  /// h_ab = 0 whenever deg a != deg b. Squares may only be given for
  /// generators with <a,a> even.
  ColorAlgebraPresentation(std::size_t rank, std::vector<Generator> generators, std::vector<std::vector<Rational>> h,
                           std::map<std::string, Rational> squares = {});

  std::size_t rank() const noexcept { return rank_; }
  const std::vector<Generator>& generators() const noexcept { return generators_; }
  const std::vector<std::vector<Rational>>& h() const noexcept { return h_; }
  const std::map<std::string, Rational>& squares() const noexcept { return squares_; }
  std::optional<std::size_t> index(const std::string& name) const;
  /// (-1)^<deg a, deg b>.
  int sign(std::size_t a, std::size_t b) const;
  /// Scalar value of f_a f_a, or nullopt when the relations leave it free.
  std::optional<Rational> square(std::size_t a) const;

 private:
  std::size_t rank_;
  std::vector<Generator> generators_;
  std::vector<std::vector<Rational>> h_;
  std::map<std::string, Rational> squares_;
};

/// Linear combination of strictly ascending generator words; the empty word
/// is the unit.
class CliffordElement {
 public:
  using Word = std::vector<std::size_t>;
  using TermMap = std::map<Word, Rational>;

  CliffordElement() = default;
  static CliffordElement scalar(const Rational& c);
  static CliffordElement generator(std::size_t index);

  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  Rational coefficient(const Word& w) const;
  /// `w` must already be strictly ascending.
  void add_term(const Word& w, const Rational& c);

  CliffordElement& operator+=(const CliffordElement& other);
  CliffordElement& operator-=(const CliffordElement& other);
  CliffordElement& operator*=(const Rational& c);
  friend CliffordElement operator+(CliffordElement a, const CliffordElement& b) { return a += b; }
  friend CliffordElement operator-(CliffordElement a, const CliffordElement& b) { return a -= b; }
  friend CliffordElement operator*(CliffordElement a, const Rational& c) { return a *= c; }

  std::string to_string(const ColorAlgebraPresentation& p) const;
  bool operator==(const CliffordElement&) const = default;

 private:
  TermMap terms_;
};

/// Rewrites an arbitrary word to the ordered basis using
///   f_b f_a = (-1)^<a,b> f_a f_b + h_ba   (a < b)
/// and the square rule. Throws ValidationError when a free square is needed.
CliffordElement normalize_word(const ColorAlgebraPresentation& p, const CliffordElement::Word& word);

CliffordElement clifford_mul(const ColorAlgebraPresentation& p, const CliffordElement& u, const CliffordElement& v);

/// Evaluates an expression over generator names with the Clifford product.
CliffordElement parse_clifford(const ColorAlgebraPresentation& p, const std::string& text);

/// Finite-dimensional algebra given by structure constants:
/// basis_i * basis_j = sum_k table[i][j][k] basis_k.
struct StructureConstantAlgebra {
  std::vector<std::string> names;
  std::vector<Degree> degrees;
  std::vector<std::vector<std::vector<Rational>>> table;

  /// Throws ValidationError for ragged tables or mismatched degree ranks.
  void validate() const;
  std::vector<Rational> product(std::size_t i, std::size_t j) const { return table.at(i).at(j); }
};

struct ColorCommutativityReport {
  bool ok = true;
  std::optional<std::pair<std::string, std::string>> counterexample;
  std::string reason;
};

/// Checks e_i e_j = (-1)^<deg e_i, deg e_j> e_j e_i for every basis pair,
/// after confirming each product is homogeneous of degree deg e_i + deg e_j.
ColorCommutativityReport check_color_commutative(const StructureConstantAlgebra& algebra);

/// H = R + Ri + Rj + Rk with deg(1) = (0,0,0), deg(i) = (1,1,0),
/// deg(j) = (1,0,1), deg(k) = (0,1,1).
StructureConstantAlgebra quaternion_presentation();

/// Rank-one presentation with two odd generators e1, e2 and h = -2 * identity,
/// whose ordered basis {1, e1, e2, e1e2} realizes the quaternions.
ColorAlgebraPresentation quaternion_clifford_presentation();

}  // namespace zsup
