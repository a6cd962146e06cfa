#include "zsup/polynomial.hpp"

#include <algorithm>
#include <numeric>

#include "zsup/detail/format.hpp"
#include "zsup/error.hpp"

namespace zsup {

namespace {

std::size_t degree_of(const Polynomial::Exponents& e) {
  return std::accumulate(e.begin(), e.end(), std::size_t{0});
}

}  // namespace

bool printing_precedes(const Polynomial::Exponents& a, const Polynomial::Exponents& b) {
  const auto da = degree_of(a);
  const auto db = degree_of(b);
  if (da != db) return da > db;
  return a > b;
}

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
  Polynomial p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw DimensionError("variable index out of range");
  Exponents e(nvars, 0);
  e[index] = 1;
  Polynomial p(nvars);
  p.add_term(e, 1);
  return p;
}

Polynomial Polynomial::monomial(Exponents exponents, const Rational& c) {
  Polynomial p(exponents.size());
  p.add_term(exponents, c);
  return p;
}

bool Polynomial::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && degree_of(terms_.begin()->first) == 0);
}

Rational Polynomial::constant_term() const {
  auto it = terms_.find(Exponents(nvars_, 0));
  return it == terms_.end() ? Rational(0) : it->second;
}

std::optional<std::size_t> Polynomial::total_degree() const {
  if (terms_.empty()) return std::nullopt;
  std::size_t d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, degree_of(e));
  return d;
}

void Polynomial::add_term(const Exponents& exponents, const Rational& c) {
  if (exponents.size() != nvars_) throw DimensionError("exponent vector has wrong length");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponents, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void Polynomial::check_same_ring(const Polynomial& other) const {
  if (nvars_ != other.nvars_) {
    throw DimensionError("polynomials over " + std::to_string(nvars_) + " and " +
                         std::to_string(other.nvars_) + " variables");
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  check_same_ring(other);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  check_same_ring(other);
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_same_ring(b);
  Polynomial out(a.nvars_);
  Polynomial::Exponents e(a.nvars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) { return *this = *this * other; }

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& [e, v] : out.terms_) v = -v;
  return out;
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial result = constant(nvars_, 1);
  Polynomial base = *this;
  while (exponent) {
    if (exponent & 1u) result *= base;
    exponent >>= 1;
    if (exponent) base *= base;
  }
  return result;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  if (var >= nvars_) throw DimensionError("derivative variable out of range");
  Polynomial out(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents d = e;
    --d[var];
    out.add_term(d, c * e[var]);
  }
  return out;
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  if (point.size() != nvars_) throw DimensionError("evaluation point has wrong dimension");
  Rational acc = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < nvars_; ++i) {
      for (std::uint32_t k = 0; k < e[i]; ++k) t *= point[i];
    }
    acc += t;
  }
  return acc;
}

Polynomial Polynomial::substitute(std::span<const Polynomial> values, std::size_t target_vars) const {
  if (values.size() != nvars_) throw DimensionError("substitution needs one polynomial per variable");
  for (const auto& v : values) {
    if (v.nvars() != target_vars) throw DimensionError("substituted polynomials live in different rings");
  }
  // Power cache per variable, grown on demand.
  std::vector<std::vector<Polynomial>> powers(nvars_);
  auto power = [&](std::size_t i, std::uint32_t k) -> const Polynomial& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(constant(target_vars, 1));
    while (cache.size() <= k) cache.push_back(cache.back() * values[i]);
    return cache[k];
  };
  Polynomial out(target_vars);
  for (const auto& [e, c] : terms_) {
    Polynomial t = constant(target_vars, c);
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i]) t *= power(i, e[i]);
    }
    out += t;
  }
  return out;
}

Polynomial Polynomial::shifted(std::span<const Rational> center) const {
  if (center.size() != nvars_) throw DimensionError("shift center has wrong dimension");
  std::vector<Polynomial> values;
  values.reserve(nvars_);
  for (std::size_t i = 0; i < nvars_; ++i) {
    values.push_back(variable(nvars_, i) + constant(nvars_, center[i]));
  }
  return substitute(values, nvars_);
}

Polynomial Polynomial::truncated(std::size_t max_degree) const {
  Polynomial out(nvars_);
  for (const auto& [e, c] : terms_) {
    if (degree_of(e) <= max_degree) out.terms_.emplace(e, c);
  }
  return out;
}

std::optional<std::size_t> Polynomial::vanishing_order(std::span<const Rational> point) const {
  const Polynomial local = shifted(point);
  if (local.is_zero()) return std::nullopt;
  std::size_t order = SIZE_MAX;
  for (const auto& [e, c] : local.terms_) order = std::min(order, degree_of(e));
  return order;
}

std::string Polynomial::to_string(const std::vector<std::string>& names, bool spaced) const {
  if (names.size() != nvars_) throw DimensionError("wrong number of variable names");
  std::vector<const TermMap::value_type*> ordered;
  ordered.reserve(terms_.size());
  for (const auto& t : terms_) ordered.push_back(&t);
  std::sort(ordered.begin(), ordered.end(),
            [](auto* a, auto* b) { return printing_precedes(a->first, b->first); });
  detail::TermJoiner joiner(spaced);
  for (const auto* t : ordered) {
    std::vector<detail::PowerFactor> factors;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (t->first[i]) factors.emplace_back(names[i], t->first[i]);
    }
    joiner.add(t->second, factors);
  }
  return joiner.str();
}

}  // namespace zsup
