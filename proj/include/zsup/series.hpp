#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zsup/grading.hpp"
#include "zsup/polynomial.hpp"
#include "zsup/rational.hpp"

namespace zsup {

struct FormalVariable {
  std::string name;
  Degree degree;

  bool operator==(const FormalVariable&) const = default;
};

/// Local model of a Z_2^n-superdomain: zero-degree base variables, formal
/// variables of nonzero degree, and the truncation order N (largest tracked
/// total formal exponent).
///
/// Formal variables are stored in canonical order: grouped by lexicographic
/// degree, declaration order within a group. Monomial exponent vectors index
/// into this canonical order.
class DomainSpec {
 public:
  DomainSpec(std::size_t rank, std::vector<std::string> base_vars, std::vector<FormalVariable> formal_vars,
             std::size_t truncation_order);

  std::size_t rank() const noexcept { return rank_; }
  const std::vector<std::string>& base_vars() const noexcept { return base_vars_; }
  const std::vector<FormalVariable>& formal_vars() const noexcept { return formal_vars_; }
  std::size_t base_count() const noexcept { return base_vars_.size(); }
  std::size_t formal_count() const noexcept { return formal_vars_.size(); }
  std::size_t truncation_order() const noexcept { return order_; }

  const Degree& formal_degree(std::size_t a) const { return formal_vars_.at(a).degree; }
  bool is_odd(std::size_t a) const { return odd_.at(a); }
  /// <deg a, deg b> for formal variables a, b.
  int formal_product(std::size_t a, std::size_t b) const { return products_[a * formal_vars_.size() + b]; }

  std::optional<std::size_t> base_index(std::string_view name) const;
  std::optional<std::size_t> formal_index(std::string_view name) const;

  /// q_k for every nonzero degree s_k, in lexicographic order.
  std::vector<std::size_t> formal_counts() const;
  /// "p|(q_1,...,q_{2^n-1})".
  std::string dimension_string() const;

  bool operator==(const DomainSpec& other) const;

 private:
  std::size_t rank_;
  std::vector<std::string> base_vars_;
  std::vector<FormalVariable> formal_vars_;
  std::size_t order_;
  std::vector<bool> odd_;
  std::vector<int> products_;
};

using Domain = std::shared_ptr<const DomainSpec>;

Domain make_domain(std::size_t rank, std::vector<std::string> base_vars, std::vector<FormalVariable> formal_vars,
                   std::size_t truncation_order);
/// Same variables, different truncation order.
Domain with_order(const Domain& domain, std::size_t truncation_order);
bool same_domain(const Domain& a, const Domain& b);

/// Exponents over the formal variables of a domain, canonical order.
using Monomial = std::vector<std::uint32_t>;

std::size_t total_exponent(const Monomial& mu);

/// Term-map order: total exponent ascending, then lexicographically
/// descending (so xi precedes eta precedes theta at equal order).
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Result of reordering a product of generators. `monomial` is empty when
/// the product vanishes because an odd generator repeats.
struct NormalizedProduct {
  int sign = 1;
  std::optional<Monomial> monomial;
};

/// Sorts a word of formal generators (given by canonical index) into
/// canonical order, collecting (-1)^<deg a, deg b> per transposition.
NormalizedProduct normalize_product(const DomainSpec& domain, std::span<const std::size_t> word);
/// Same, with generators given by name. Throws UnknownSymbol.
NormalizedProduct normalize_product(const DomainSpec& domain, std::span<const std::string> word);
/// xi^a * xi^b for canonical monomials.
NormalizedProduct multiply_monomials(const DomainSpec& domain, const Monomial& a, const Monomial& b);

/// sum_a mu_a deg(xi^a) in Z_2^n.
Degree monomial_degree(const DomainSpec& domain, const Monomial& mu);

/// Truncated formal power series sum_mu f_mu(x) xi^mu with exact polynomial
/// coefficients. Every operation truncates eagerly to the domain order;
/// operands must share the same domain (including its order).
class Series {
 public:
  using TermMap = std::map<Monomial, Polynomial, MonomialOrder>;

  explicit Series(Domain domain);

  static Series constant(Domain domain, const Rational& c);
  static Series from_base(Domain domain, const Polynomial& f);
  /// A base or formal coordinate by name.
  static Series variable(Domain domain, std::string_view name);
  static Series term(Domain domain, const Monomial& mu, const Polynomial& coeff);

  const Domain& domain() const noexcept { return domain_; }
  const DomainSpec& spec() const noexcept { return *domain_; }
  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  Polynomial coefficient(const Monomial& mu) const;

  /// Adds coeff*xi^mu. Terms beyond the truncation order are dropped.
  /// Throws ValidationError for a non-canonical monomial (odd exponent > 1).
  void add_term(const Monomial& mu, const Polynomial& coeff);

  Series& operator+=(const Series& other);
  Series& operator-=(const Series& other);
  Series& operator*=(const Rational& c);
  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  friend Series operator*(Series a, const Rational& c) { return a *= c; }
  friend Series operator*(const Rational& c, Series a) { return a *= c; }
  friend Series operator*(const Series& a, const Series& b);
  Series operator-() const;
  Series pow(unsigned exponent) const;

  /// Degree of a nonzero homogeneous series; nullopt for zero or mixed.
  std::optional<Degree> homogeneous_degree() const;
  /// Zero counts as homogeneous of every degree.
  bool is_homogeneous_of(const Degree& d) const;

  /// Expanded canonical rendering in the expression grammar, e.g.
  /// "1+theta+theta^2" or "3/2*x^2*xi-xi".
  std::string to_string() const;

  bool operator==(const Series& other) const;

 private:
  void check_same_domain(const Series& other) const;

  Domain domain_;
  TermMap terms_;
};

Series add(const Series& f, const Series& g);
Series scale(const Series& f, const Rational& c);
Series mul(const Series& f, const Series& g);

/// Independent term f_0.
Polynomial base_project(const Series& f);

/// Inverse of f = c + j with c a nonzero constant and j in J:
/// c^{-1} sum_{k<=N} (-c^{-1} j)^k. Throws NotInvertible otherwise.
Series invert(const Series& f);

/// min |mu| over stored terms; nullopt (+infinity) for zero.
std::optional<std::size_t> j_adic_valuation(const Series& f);

/// Drops every term with |mu| >= k. Valid for k <= N+1, where k = N+1 is the
/// identity on representable series; larger k throws ValidationError.
Series truncate(const Series& f, std::size_t k);

/// Sum of the terms whose monomial degree is d.
Series homogeneous_component(const Series& f, const Degree& d);

/// All canonical monomials with |mu| <= max_order and degree d, in term-map
/// order.
std::vector<Monomial> enumerate_monomials(const DomainSpec& domain, const Degree& d, std::size_t max_order);

}  // namespace zsup
