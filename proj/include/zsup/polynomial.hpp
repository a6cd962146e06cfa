#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zsup/rational.hpp"

namespace zsup {

/// Multivariate polynomial over Q in a fixed number of variables. Zero
/// coefficients are never stored, so structural equality is mathematical
/// equality.
class Polynomial {
 public:
  using Exponents = std::vector<std::uint32_t>;
  using TermMap = std::map<Exponents, Rational>;

  explicit Polynomial(std::size_t nvars = 0) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, const Rational& c);
  static Polynomial variable(std::size_t nvars, std::size_t index);
  static Polynomial monomial(Exponents exponents, const Rational& c);

  std::size_t nvars() const noexcept { return nvars_; }
  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  Rational constant_term() const;
  /// nullopt for the zero polynomial.
  std::optional<std::size_t> total_degree() const;

  void add_term(const Exponents& exponents, const Rational& c);

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  Polynomial operator-() const;

  Polynomial pow(unsigned exponent) const;
  Polynomial derivative(std::size_t var) const;
  Rational evaluate(std::span<const Rational> point) const;

  /// p(q_1, ..., q_k) where every q_i lives in a ring of `result_vars`
  /// variables.
  Polynomial substitute(std::span<const Polynomial> values, std::size_t result_vars) const;
  /// p(x + center).
  Polynomial shifted(std::span<const Rational> center) const;
  /// Keeps only terms of total degree <= max_degree.
  Polynomial truncated(std::size_t max_degree) const;
  /// Order of vanishing at `point`; nullopt when the polynomial is zero.
  std::optional<std::size_t> vanishing_order(std::span<const Rational> point) const;

  /// Degree-descending canonical rendering, e.g. "3/2*x^2 - 1".
  std::string to_string(const std::vector<std::string>& names, bool spaced = true) const;

  bool operator==(const Polynomial& other) const = default;

 private:
  void check_same_ring(const Polynomial& other) const;

  std::size_t nvars_;
  TermMap terms_;
};

/// Printing order: total degree descending, then lexicographically
/// descending exponents.
bool printing_precedes(const Polynomial::Exponents& a, const Polynomial::Exponents& b);

}  // namespace zsup
