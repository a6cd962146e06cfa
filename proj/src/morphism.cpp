#include "zsup/morphism.hpp"

#include <algorithm>

#include "zsup/error.hpp"

namespace zsup {

namespace {

Series map_coefficients(const Series& f, const auto& fn) {
  Series out(f.domain());
  for (const auto& [mu, c] : f.terms()) out.add_term(mu, fn(c));
  return out;
}

std::vector<Rational> negated(const std::vector<Rational>& v) {
  std::vector<Rational> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(-x);
  return out;
}

void require_point(const DomainSpec& d, const std::vector<Rational>& point) {
  if (point.size() != d.base_count()) {
    throw DimensionError("base point has " + std::to_string(point.size()) + " coordinates, domain has " +
                         std::to_string(d.base_count()));
  }
}

void require_valid(const Morphism& phi) {
  const auto report = check_morphism_data(phi);
  if (!report.ok) throw ValidationError("invalid morphism: " + report.problems.front());
}

}  // namespace

// ---------------------------------------------------------------------------
// Morphism

Morphism::Morphism(Domain source, Domain target, std::vector<Series> pullbacks)
    : source_(std::move(source)), target_(std::move(target)), pullbacks_(std::move(pullbacks)) {
  if (!source_ || !target_) throw ValidationError("morphism needs source and target domains");
  if (source_->rank() != target_->rank()) {
    throw DimensionError("morphism between gradings of rank " + std::to_string(source_->rank()) + " and " +
                         std::to_string(target_->rank()));
  }
  const std::size_t expected = target_->base_count() + target_->formal_count();
  if (pullbacks_.size() != expected) {
    throw DimensionError("morphism needs " + std::to_string(expected) + " pullbacks, got " +
                         std::to_string(pullbacks_.size()));
  }
  for (const auto& s : pullbacks_) {
    if (!same_domain(s.domain(), source_)) throw DomainMismatch("pullback series is not over the source domain");
  }
}

Morphism Morphism::from_named(Domain source, Domain target, const std::map<std::string, Series>& pullbacks) {
  std::vector<Series> ordered;
  std::size_t used = 0;
  auto take = [&](const std::string& name) {
    auto it = pullbacks.find(name);
    if (it == pullbacks.end()) throw ValidationError("missing pullback for target coordinate '" + name + "'");
    ordered.push_back(it->second);
    ++used;
  };
  for (const auto& name : target->base_vars()) take(name);
  for (const auto& v : target->formal_vars()) take(v.name);
  if (used != pullbacks.size()) throw UnknownSymbol("pullback given for an unknown target coordinate");
  return Morphism(std::move(source), std::move(target), std::move(ordered));
}

Morphism Morphism::identity(const Domain& domain) {
  std::vector<Series> pullbacks;
  for (const auto& name : domain->base_vars()) pullbacks.push_back(Series::variable(domain, name));
  for (const auto& v : domain->formal_vars()) pullbacks.push_back(Series::variable(domain, v.name));
  return Morphism(domain, domain, std::move(pullbacks));
}

const Series& Morphism::pullback_of(const std::string& coordinate) const {
  if (auto i = target_->base_index(coordinate)) return pullbacks_[*i];
  if (auto a = target_->formal_index(coordinate)) return pullbacks_[target_->base_count() + *a];
  throw UnknownSymbol("unknown target coordinate '" + coordinate + "'");
}

std::string Morphism::coordinate_name(std::size_t k) const {
  const std::size_t p = target_->base_count();
  return k < p ? target_->base_vars().at(k) : target_->formal_vars().at(k - p).name;
}

Degree Morphism::coordinate_degree(std::size_t k) const {
  const std::size_t p = target_->base_count();
  return k < p ? Degree(target_->rank()) : target_->formal_degree(k - p);
}

std::vector<Polynomial> Morphism::base_map() const {
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < target_->base_count(); ++i) out.push_back(base_project(pullbacks_[i]));
  return out;
}

bool Morphism::operator==(const Morphism& other) const {
  return same_domain(source_, other.source_) && same_domain(target_, other.target_) &&
         pullbacks_ == other.pullbacks_;
}

// ---------------------------------------------------------------------------
// Validation

MorphismReport check_morphism_data(const Morphism& phi, const std::optional<RangeCheck>& range) {
  MorphismReport report;
  auto problem = [&](std::string what) {
    report.ok = false;
    report.problems.push_back(std::move(what));
  };
  for (std::size_t k = 0; k < phi.pullbacks().size(); ++k) {
    const Series& s = phi.pullbacks()[k];
    const Degree want = phi.coordinate_degree(k);
    if (s.is_homogeneous_of(want)) continue;
    if (auto got = s.homogeneous_degree()) {
      problem("degree mismatch: pullback of '" + phi.coordinate_name(k) + "' has degree " + got->to_string() +
              ", coordinate has degree " + want.to_string());
    } else {
      problem("degree mismatch: pullback of '" + phi.coordinate_name(k) + "' is not homogeneous (expected " +
              want.to_string() + ")");
    }
  }
  if (range) {
    const auto& src = *phi.source();
    const auto& tgt = *phi.target();
    if (range->source_box.dimension() != src.base_count() || range->target_box.dimension() != tgt.base_count()) {
      throw DimensionError("range boxes do not match the base dimensions");
    }
    const auto base = phi.base_map();
    for (const auto& point : range->source_box.sample_points(range->samples, range->seed)) {
      std::vector<Rational> image;
      for (const auto& f : base) image.push_back(f.evaluate(point));
      if (!range->target_box.contains(image)) {
        std::string at;
        for (const auto& x : point) at += (at.empty() ? "" : ",") + to_string(x);
        problem("base map sends sample point (" + at + ") outside the target box");
        break;
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Pullback

Series pullback_section(const Morphism& phi, const Series& g) {
  if (!same_domain(g.domain(), phi.target())) throw DomainMismatch("section is not over the morphism target");
  require_valid(phi);

  const Domain& src = phi.source();
  const DomainSpec& tgt = *phi.target();
  const std::size_t p_target = tgt.base_count();
  const std::size_t order = src->truncation_order();

  // phi^*(y^i) = base_i(x) + j_i(x, xi) with j_i in J.
  const std::vector<Polynomial> base = phi.base_map();
  std::vector<Series> nilpotent;
  for (std::size_t i = 0; i < p_target; ++i) {
    nilpotent.push_back(phi.pullbacks()[i] - Series::from_base(src, base[i]));
  }
  std::vector<std::vector<Series>> j_powers(p_target);
  auto j_power = [&](std::size_t i, std::size_t e) -> const Series& {
    auto& cache = j_powers[i];
    if (cache.empty()) cache.push_back(Series::constant(src, 1));
    while (cache.size() <= e) cache.push_back(cache.back() * nilpotent[i]);
    return cache[e];
  };

  // Formal Taylor expansion of one coefficient g_nu(y). Terms with
  // |alpha| > N lie in J^{N+1} and vanish after truncation.
  auto taylor = [&](const Polynomial& g_nu) {
    Series acc(src);
    auto recurse = [&](auto&& self, std::size_t i, const Polynomial& derivative, const Series& j_alpha,
                       const Rational& inv_factorial, std::size_t used) -> void {
      if (i == p_target) {
        Series term = Series::from_base(src, derivative.substitute(base, src->base_count())) * j_alpha;
        term *= inv_factorial;
        acc += term;
        return;
      }
      Polynomial d = derivative;
      Rational fact = inv_factorial;
      for (std::size_t e = 0; used + e <= order; ++e) {
        if (e > 0) {
          d = d.derivative(i);
          fact /= static_cast<unsigned long>(e);
        }
        if (d.is_zero()) break;
        const Series& jp = j_power(i, e);
        if (jp.is_zero()) break;
        self(self, i + 1, d, e == 0 ? j_alpha : j_alpha * jp, fact, used + e);
      }
    };
    recurse(recurse, 0, g_nu, Series::constant(src, 1), Rational(1), 0);
    return acc;
  };

  const std::size_t q_target = tgt.formal_count();
  std::vector<std::vector<Series>> eta_powers(q_target);
  auto eta_power = [&](std::size_t b, std::size_t e) -> const Series& {
    auto& cache = eta_powers[b];
    if (cache.empty()) cache.push_back(Series::constant(src, 1));
    while (cache.size() <= e) cache.push_back(cache.back() * phi.pullbacks()[p_target + b]);
    return cache[e];
  };

  Series result(src);
  for (const auto& [nu, g_nu] : g.terms()) {
    Series formal = Series::constant(src, 1);
    for (std::size_t b = 0; b < q_target && !formal.is_zero(); ++b) {
      if (nu[b]) formal = formal * eta_power(b, nu[b]);
    }
    if (formal.is_zero()) continue;
    result += taylor(g_nu) * formal;
  }
  return result;
}

Morphism compose(const Morphism& psi, const Morphism& phi) {
  if (!same_domain(phi.target(), psi.source())) {
    throw DomainMismatch("cannot compose: target of the first map is not the source of the second");
  }
  std::vector<Series> pullbacks;
  pullbacks.reserve(psi.pullbacks().size());
  for (const auto& s : psi.pullbacks()) pullbacks.push_back(pullback_section(phi, s));
  return Morphism(phi.source(), psi.target(), std::move(pullbacks));
}

// ---------------------------------------------------------------------------
// Derivatives

Series partial_derivative(const Series& f, std::size_t formal_index) {
  const auto& d = f.spec();
  if (formal_index >= d.formal_count()) throw UnknownSymbol("formal variable index out of range");
  const std::size_t a = formal_index;
  Series out(f.domain());
  for (const auto& [mu, c] : f.terms()) {
    if (mu[a] == 0) continue;
    // Moving one factor of xi^a to the front crosses every factor xi^b with
    // b < a; further copies of xi^a only occur when it is even.
    int exponent = 0;
    for (std::size_t b = 0; b < a; ++b) {
      if (mu[b] & 1u) exponent ^= d.formal_product(a, b);
    }
    Monomial reduced = mu;
    --reduced[a];
    Polynomial coeff = c * Rational(mu[a]);
    if (exponent) coeff = -coeff;
    out.add_term(reduced, coeff);
  }
  return out;
}

Series partial_derivative(const Series& f, const std::string& variable) {
  const auto& d = f.spec();
  if (auto i = d.base_index(variable)) {
    Series out(f.domain());
    for (const auto& [mu, c] : f.terms()) out.add_term(mu, c.derivative(*i));
    return out;
  }
  if (auto a = d.formal_index(variable)) return partial_derivative(f, *a);
  throw UnknownSymbol("unknown variable '" + variable + "'");
}

std::vector<std::vector<Series>> jacobian(const Morphism& phi) {
  const auto& src = *phi.source();
  std::vector<std::string> columns = src.base_vars();
  for (const auto& v : src.formal_vars()) columns.push_back(v.name);
  std::vector<std::vector<Series>> rows;
  rows.reserve(phi.pullbacks().size());
  for (const auto& s : phi.pullbacks()) {
    std::vector<Series> row;
    row.reserve(columns.size());
    for (const auto& v : columns) row.push_back(partial_derivative(s, v));
    rows.push_back(std::move(row));
  }
  return rows;
}

bool base_map_commutes(const Morphism& phi, const Series& g) {
  const Polynomial lhs = base_project(pullback_section(phi, g));
  const Polynomial rhs = base_project(g).substitute(phi.base_map(), phi.source()->base_count());
  return lhs == rhs;
}

// ---------------------------------------------------------------------------
// Germs and jets

std::optional<std::size_t> maximal_ideal_order(const Series& f, const std::vector<Rational>& point) {
  require_point(f.spec(), point);
  std::optional<std::size_t> best;
  for (const auto& [mu, c] : f.terms()) {
    const auto v = c.vanishing_order(point);
    if (!v) continue;
    const std::size_t w = *v + total_exponent(mu);
    if (!best || w < *best) best = w;
  }
  return best;
}

Series Jet::to_series() const {
  const auto back = negated(center);
  return map_coefficients(local, [&](const Polynomial& c) { return c.shifted(back); });
}

Series truncate_weight(const Series& local, std::size_t order) {
  Series out(local.domain());
  for (const auto& [mu, c] : local.terms()) {
    const std::size_t formal = total_exponent(mu);
    if (formal <= order) out.add_term(mu, c.truncated(order - formal));
  }
  return out;
}

Jet local_jet(const Series& f, const std::vector<Rational>& point, std::size_t order) {
  require_point(f.spec(), point);
  Series shifted = map_coefficients(f, [&](const Polynomial& c) { return c.shifted(point); });
  return Jet{point, order, truncate_weight(shifted, order)};
}

Jet jet_at(const Series& f, const std::vector<Rational>& point, std::size_t k) {
  if (k == 0) throw ValidationError("jet order must be at least 1");
  return local_jet(f, point, k - 1);
}

Jet germ_invert(const Series& f, const std::vector<Rational>& point, std::size_t k) {
  require_point(f.spec(), point);
  const Rational value = base_project(f).evaluate(point);
  if (value == 0) throw NotInvertible("germ is not invertible: independent term vanishes at the point");
  const Jet local = local_jet(f, point, k);
  const Domain& dom = f.domain();
  // local = c + r with every term of r of weight >= 1, so r^i has weight >= i.
  Series ratio = local.local - Series::constant(dom, value);
  ratio *= Rational(-1 / value);
  Series sum = Series::constant(dom, 1);
  Series power = sum;
  for (std::size_t i = 1; i <= k; ++i) {
    power = truncate_weight(power * ratio, k);
    if (power.is_zero()) break;
    sum += power;
  }
  sum *= Rational(1 / value);
  return Jet{point, k, truncate_weight(sum, k)};
}

Jet jet_product(const Jet& a, const Jet& b) {
  if (a.center != b.center) throw ValidationError("jets at different points");
  const std::size_t order = std::min(a.order, b.order);
  return Jet{a.center, order, truncate_weight(a.local * b.local, order)};
}

}  // namespace zsup
