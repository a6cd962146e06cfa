#include "zsup/series.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "zsup/detail/format.hpp"
#include "zsup/error.hpp"

namespace zsup {

// ---------------------------------------------------------------------------
// DomainSpec

DomainSpec::DomainSpec(std::size_t rank, std::vector<std::string> base_vars, std::vector<FormalVariable> formal_vars,
                       std::size_t truncation_order)
    : rank_(rank), base_vars_(std::move(base_vars)), formal_vars_(std::move(formal_vars)), order_(truncation_order) {
  std::set<std::string> seen;
  for (const auto& name : base_vars_) {
    if (name.empty()) throw ValidationError("empty variable name");
    if (!seen.insert(name).second) throw ValidationError("duplicate variable name '" + name + "'");
  }
  for (const auto& v : formal_vars_) {
    if (v.name.empty()) throw ValidationError("empty variable name");
    if (!seen.insert(v.name).second) throw ValidationError("duplicate variable name '" + v.name + "'");
    if (v.degree.rank() != rank_) {
      throw DimensionError("formal variable '" + v.name + "' has degree of rank " +
                           std::to_string(v.degree.rank()) + ", expected " + std::to_string(rank_));
    }
    if (v.degree.is_zero()) throw ValidationError("formal variable '" + v.name + "' has zero degree");
  }
  std::stable_sort(formal_vars_.begin(), formal_vars_.end(),
                   [](const FormalVariable& a, const FormalVariable& b) { return a.degree < b.degree; });

  const std::size_t q = formal_vars_.size();
  odd_.resize(q);
  products_.resize(q * q);
  for (std::size_t a = 0; a < q; ++a) {
    odd_[a] = parity(formal_vars_[a].degree) == 1;
    for (std::size_t b = 0; b < q; ++b) {
      products_[a * q + b] = scalar_product(formal_vars_[a].degree, formal_vars_[b].degree);
    }
  }
}

std::optional<std::size_t> DomainSpec::base_index(std::string_view name) const {
  for (std::size_t i = 0; i < base_vars_.size(); ++i) {
    if (base_vars_[i] == name) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> DomainSpec::formal_index(std::string_view name) const {
  for (std::size_t i = 0; i < formal_vars_.size(); ++i) {
    if (formal_vars_[i].name == name) return i;
  }
  return std::nullopt;
}

std::vector<std::size_t> DomainSpec::formal_counts() const {
  const auto degrees = enumerate_degrees(rank_);
  std::vector<std::size_t> counts(degrees.size() - 1, 0);
  for (const auto& v : formal_vars_) {
    const auto it = std::lower_bound(degrees.begin(), degrees.end(), v.degree);
    ++counts[static_cast<std::size_t>(it - degrees.begin()) - 1];
  }
  return counts;
}

std::string DomainSpec::dimension_string() const {
  std::string s = std::to_string(base_vars_.size()) + "|(";
  const auto counts = formal_counts();
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(counts[i]);
  }
  return s + ")";
}

bool DomainSpec::operator==(const DomainSpec& other) const {
  return rank_ == other.rank_ && order_ == other.order_ && base_vars_ == other.base_vars_ &&
         formal_vars_ == other.formal_vars_;
}

Domain make_domain(std::size_t rank, std::vector<std::string> base_vars, std::vector<FormalVariable> formal_vars,
                   std::size_t truncation_order) {
  return std::make_shared<const DomainSpec>(rank, std::move(base_vars), std::move(formal_vars), truncation_order);
}

Domain with_order(const Domain& domain, std::size_t truncation_order) {
  return make_domain(domain->rank(), domain->base_vars(), domain->formal_vars(), truncation_order);
}

bool same_domain(const Domain& a, const Domain& b) { return a == b || (a && b && *a == *b); }

// ---------------------------------------------------------------------------
// Monomials

std::size_t total_exponent(const Monomial& mu) { return std::accumulate(mu.begin(), mu.end(), std::size_t{0}); }

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const {
  const auto da = total_exponent(a);
  const auto db = total_exponent(b);
  if (da != db) return da < db;
  return a > b;
}

NormalizedProduct normalize_product(const DomainSpec& domain, std::span<const std::size_t> word) {
  const std::size_t q = domain.formal_count();
  for (auto a : word) {
    if (a >= q) throw UnknownSymbol("formal variable index " + std::to_string(a) + " out of range");
  }
  // Each inversion (i < j, word[i] > word[j]) is one transposition of the
  // two factors in a bubble sort.
  int exponent = 0;
  for (std::size_t i = 0; i < word.size(); ++i) {
    for (std::size_t j = i + 1; j < word.size(); ++j) {
      if (word[i] > word[j]) exponent ^= domain.formal_product(word[i], word[j]);
    }
  }
  Monomial mu(q, 0);
  for (auto a : word) ++mu[a];
  for (std::size_t a = 0; a < q; ++a) {
    if (domain.is_odd(a) && mu[a] > 1) return {1, std::nullopt};
  }
  return {exponent ? -1 : 1, std::move(mu)};
}

NormalizedProduct normalize_product(const DomainSpec& domain, std::span<const std::string> word) {
  std::vector<std::size_t> indices;
  indices.reserve(word.size());
  for (const auto& name : word) {
    auto idx = domain.formal_index(name);
    if (!idx) throw UnknownSymbol("unknown formal variable '" + name + "'");
    indices.push_back(*idx);
  }
  return normalize_product(domain, indices);
}

NormalizedProduct multiply_monomials(const DomainSpec& domain, const Monomial& a, const Monomial& b) {
  const std::size_t q = domain.formal_count();
  Monomial mu(q);
  for (std::size_t i = 0; i < q; ++i) {
    mu[i] = a[i] + b[i];
    if (domain.is_odd(i) && mu[i] > 1) return {1, std::nullopt};
  }
  // Every factor xi^j of b moves left past the factors xi^i of a with i > j.
  int exponent = 0;
  for (std::size_t j = 0; j < q; ++j) {
    if (!(b[j] & 1u)) continue;
    for (std::size_t i = j + 1; i < q; ++i) {
      if (a[i] & 1u) exponent ^= domain.formal_product(i, j);
    }
  }
  return {exponent ? -1 : 1, std::move(mu)};
}

Degree monomial_degree(const DomainSpec& domain, const Monomial& mu) {
  if (mu.size() != domain.formal_count()) throw DimensionError("monomial has wrong length");
  Degree d(domain.rank());
  for (std::size_t a = 0; a < mu.size(); ++a) {
    if (mu[a] & 1u) d += domain.formal_degree(a);
  }
  return d;
}

// ---------------------------------------------------------------------------
// Series

Series::Series(Domain domain) : domain_(std::move(domain)) {
  if (!domain_) throw ValidationError("series needs a domain");
}

Series Series::constant(Domain domain, const Rational& c) {
  const auto p = domain->base_count();
  Series s(std::move(domain));
  s.add_term(Monomial(s.spec().formal_count(), 0), Polynomial::constant(p, c));
  return s;
}

Series Series::from_base(Domain domain, const Polynomial& f) {
  Series s(std::move(domain));
  s.add_term(Monomial(s.spec().formal_count(), 0), f);
  return s;
}

Series Series::variable(Domain domain, std::string_view name) {
  const auto& spec = *domain;
  if (auto i = spec.base_index(name)) {
    return from_base(domain, Polynomial::variable(spec.base_count(), *i));
  }
  if (auto a = spec.formal_index(name)) {
    Monomial mu(spec.formal_count(), 0);
    mu[*a] = 1;
    return term(domain, mu, Polynomial::constant(spec.base_count(), 1));
  }
  throw UnknownSymbol("unknown variable '" + std::string(name) + "'");
}

Series Series::term(Domain domain, const Monomial& mu, const Polynomial& coeff) {
  Series s(std::move(domain));
  s.add_term(mu, coeff);
  return s;
}

Polynomial Series::coefficient(const Monomial& mu) const {
  auto it = terms_.find(mu);
  return it == terms_.end() ? Polynomial(spec().base_count()) : it->second;
}

void Series::add_term(const Monomial& mu, const Polynomial& coeff) {
  const auto& d = spec();
  if (mu.size() != d.formal_count()) throw DimensionError("monomial has wrong length");
  if (coeff.nvars() != d.base_count()) throw DimensionError("coefficient lives in the wrong base ring");
  for (std::size_t a = 0; a < mu.size(); ++a) {
    if (d.is_odd(a) && mu[a] > 1) {
      throw ValidationError("odd variable '" + d.formal_vars()[a].name + "' with exponent > 1");
    }
  }
  if (coeff.is_zero() || total_exponent(mu) > d.truncation_order()) return;
  auto [it, inserted] = terms_.try_emplace(mu, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void Series::check_same_domain(const Series& other) const {
  if (!same_domain(domain_, other.domain_)) {
    throw DomainMismatch("series over different domains (" + spec().dimension_string() + " N=" +
                         std::to_string(spec().truncation_order()) + " vs " + other.spec().dimension_string() +
                         " N=" + std::to_string(other.spec().truncation_order()) + ")");
  }
}

Series& Series::operator+=(const Series& other) {
  check_same_domain(other);
  for (const auto& [mu, c] : other.terms_) add_term(mu, c);
  return *this;
}

Series& Series::operator-=(const Series& other) {
  check_same_domain(other);
  for (const auto& [mu, c] : other.terms_) add_term(mu, -c);
  return *this;
}

Series& Series::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [mu, coeff] : terms_) coeff *= c;
  return *this;
}

Series operator*(const Series& a, const Series& b) {
  a.check_same_domain(b);
  const auto& d = a.spec();
  const std::size_t order = d.truncation_order();
  Series out(a.domain_);
  for (const auto& [ma, ca] : a.terms_) {
    const auto oa = total_exponent(ma);
    for (const auto& [mb, cb] : b.terms_) {
      // Term map is ordered by total exponent, so later terms only grow.
      if (oa + total_exponent(mb) > order) break;
      auto prod = multiply_monomials(d, ma, mb);
      if (!prod.monomial) continue;
      Polynomial c = ca * cb;
      if (prod.sign < 0) c = -c;
      out.add_term(*prod.monomial, c);
    }
  }
  return out;
}

Series Series::operator-() const {
  Series out = *this;
  out *= Rational(-1);
  return out;
}

Series Series::pow(unsigned exponent) const {
  Series result = constant(domain_, 1);
  for (unsigned i = 0; i < exponent; ++i) result = result * *this;
  return result;
}

std::optional<Degree> Series::homogeneous_degree() const {
  std::optional<Degree> deg;
  for (const auto& [mu, c] : terms_) {
    Degree d = monomial_degree(spec(), mu);
    if (!deg) {
      deg = d;
    } else if (*deg != d) {
      return std::nullopt;
    }
  }
  return deg;
}

bool Series::is_homogeneous_of(const Degree& d) const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [&](const auto& t) { return monomial_degree(spec(), t.first) == d; });
}

std::string Series::to_string() const {
  const auto& d = spec();
  detail::TermJoiner joiner(false);
  for (const auto& [mu, coeff] : terms_) {
    std::vector<const Polynomial::TermMap::value_type*> ordered;
    for (const auto& t : coeff.terms()) ordered.push_back(&t);
    std::sort(ordered.begin(), ordered.end(),
              [](auto* x, auto* y) { return printing_precedes(x->first, y->first); });
    for (const auto* t : ordered) {
      std::vector<detail::PowerFactor> factors;
      for (std::size_t i = 0; i < d.base_count(); ++i) {
        if (t->first[i]) factors.emplace_back(d.base_vars()[i], t->first[i]);
      }
      for (std::size_t a = 0; a < d.formal_count(); ++a) {
        if (mu[a]) factors.emplace_back(d.formal_vars()[a].name, mu[a]);
      }
      joiner.add(t->second, factors);
    }
  }
  return joiner.str();
}

bool Series::operator==(const Series& other) const {
  return same_domain(domain_, other.domain_) && terms_ == other.terms_;
}

// ---------------------------------------------------------------------------
// Free operations

Series add(const Series& f, const Series& g) { return f + g; }
Series scale(const Series& f, const Rational& c) { return f * c; }
Series mul(const Series& f, const Series& g) { return f * g; }

Polynomial base_project(const Series& f) { return f.coefficient(Monomial(f.spec().formal_count(), 0)); }

Series invert(const Series& f) {
  const Polynomial f0 = base_project(f);
  if (f0.is_zero()) throw NotInvertible("independent term is zero");
  if (!f0.is_constant()) {
    throw NotInvertible("independent term '" + f0.to_string(f.spec().base_vars()) +
                        "' is not a nonzero constant in the polynomial coefficient ring");
  }
  const Rational c = f0.constant_term();
  const Rational c_inv = 1 / c;
  // ratio = -c^{-1} j lies in J, so ratio^k lies in J^k and vanishes past N.
  Series ratio = f - Series::constant(f.domain(), c);
  ratio *= Rational(-c_inv);
  Series sum = Series::constant(f.domain(), 1);
  Series power = sum;
  for (std::size_t k = 1; k <= f.spec().truncation_order(); ++k) {
    power = power * ratio;
    if (power.is_zero()) break;
    sum += power;
  }
  sum *= c_inv;
  return sum;
}

std::optional<std::size_t> j_adic_valuation(const Series& f) {
  if (f.is_zero()) return std::nullopt;
  return total_exponent(f.terms().begin()->first);
}

Series truncate(const Series& f, std::size_t k) {
  if (k > f.spec().truncation_order() + 1) {
    throw ValidationError("truncation order " + std::to_string(k) + " exceeds domain order " +
                          std::to_string(f.spec().truncation_order()) + " + 1");
  }
  Series out(f.domain());
  for (const auto& [mu, c] : f.terms()) {
    if (total_exponent(mu) < k) out.add_term(mu, c);
  }
  return out;
}

Series homogeneous_component(const Series& f, const Degree& d) {
  Series out(f.domain());
  for (const auto& [mu, c] : f.terms()) {
    if (monomial_degree(f.spec(), mu) == d) out.add_term(mu, c);
  }
  return out;
}

std::vector<Monomial> enumerate_monomials(const DomainSpec& domain, const Degree& d, std::size_t max_order) {
  if (d.rank() != domain.rank()) throw DimensionError("degree rank does not match domain");
  const std::size_t q = domain.formal_count();
  std::vector<Monomial> out;
  Monomial mu(q, 0);
  // Depth-first over variables, bounded by the remaining order budget.
  auto recurse = [&](auto&& self, std::size_t a, std::size_t budget) -> void {
    if (a == q) {
      if (monomial_degree(domain, mu) == d) out.push_back(mu);
      return;
    }
    const std::size_t cap = domain.is_odd(a) ? std::min<std::size_t>(1, budget) : budget;
    for (std::size_t e = 0; e <= cap; ++e) {
      mu[a] = static_cast<std::uint32_t>(e);
      self(self, a + 1, budget - e);
    }
    mu[a] = 0;
  };
  recurse(recurse, 0, max_order);
  std::sort(out.begin(), out.end(), MonomialOrder{});
  return out;
}

}  // namespace zsup
