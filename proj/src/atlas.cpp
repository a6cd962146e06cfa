#include "zsup/atlas.hpp"

#include <set>

#include "zsup/error.hpp"

namespace zsup {

namespace {

Rational determinant(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      const Rational factor = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= factor * m[col][c];
    }
  }
  return det;
}

Rational determinant_at(const PolyMatrix& m, const std::vector<Rational>& point) {
  std::vector<std::vector<Rational>> values;
  for (const auto& row : m) {
    std::vector<Rational> r;
    for (const auto& p : row) r.push_back(p.evaluate(point));
    values.push_back(std::move(r));
  }
  return determinant(std::move(values));
}

void require_square(const PolyMatrix& m, std::size_t n, const char* what) {
  if (m.size() != n) throw ValidationError(std::string("matrix ") + what + " has the wrong number of rows");
  for (const auto& row : m) {
    if (row.size() != n) throw ValidationError(std::string("matrix ") + what + " is not square");
  }
}

std::vector<std::string> default_names(const std::string& stem, std::size_t count) {
  if (count == 1) return {stem};
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= count; ++i) out.push_back(stem + std::to_string(i));
  return out;
}

PolyMatrix substitute_all(const PolyMatrix& m, const std::vector<Polynomial>& values, std::size_t nvars) {
  PolyMatrix out;
  for (const auto& row : m) {
    std::vector<Polynomial> r;
    for (const auto& p : row) r.push_back(p.substitute(values, nvars));
    out.push_back(std::move(r));
  }
  return out;
}

PolyMatrix multiply(const PolyMatrix& lhs, const PolyMatrix& rhs, std::size_t nvars) {
  const std::size_t rows = lhs.size();
  const std::size_t inner = rhs.size();
  const std::size_t cols = inner ? rhs.front().size() : 0;
  PolyMatrix out(rows, std::vector<Polynomial>(cols, Polynomial(nvars)));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t k = 0; k < inner; ++k) {
      for (std::size_t j = 0; j < cols; ++j) out[i][j] += lhs[i][k] * rhs[k][j];
    }
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Atlas

Atlas::Atlas(std::vector<Chart> charts, std::vector<Transition> transitions)
    : charts_(std::move(charts)), transitions_(std::move(transitions)) {
  std::set<std::string> ids;
  for (const auto& c : charts_) {
    if (!ids.insert(c.id).second) throw ValidationError("duplicate chart id '" + c.id + "'");
    if (c.box.dimension() != c.domain->base_count()) {
      throw DimensionError("chart '" + c.id + "' box does not match its base dimension");
    }
  }
  for (std::size_t i = 0; i < transitions_.size(); ++i) {
    const auto& t = transitions_[i];
    const Chart& from = chart(t.from);
    const Chart& to = chart(t.to);
    if (!same_domain(t.map.source(), from.domain) || !same_domain(t.map.target(), to.domain)) {
      throw DomainMismatch("transition " + t.from + "->" + t.to + " does not map between its chart domains");
    }
    if (t.overlap.dimension() != from.domain->base_count()) {
      throw DimensionError("transition " + t.from + "->" + t.to + " overlap has the wrong dimension");
    }
    if (!index_.emplace(std::make_pair(t.from, t.to), i).second) {
      throw ValidationError("duplicate transition " + t.from + "->" + t.to);
    }
  }
}

const Chart& Atlas::chart(const std::string& id) const {
  for (const auto& c : charts_) {
    if (c.id == id) return c;
  }
  throw ValidationError("unknown chart '" + id + "'");
}

bool Atlas::has_transition(const std::string& from, const std::string& to) const {
  return index_.contains({from, to});
}

Transition Atlas::transition(const std::string& from, const std::string& to) const {
  if (auto it = index_.find({from, to}); it != index_.end()) return transitions_[it->second];
  if (from == to) {
    const Chart& c = chart(from);
    return Transition{from, to, c.box, Morphism::identity(c.domain)};
  }
  throw ValidationError("missing transition " + from + "->" + to);
}

bool transition_invertible_at_samples(const Transition& t, std::size_t samples, std::uint64_t seed) {
  const auto& src = *t.map.source();
  const auto& tgt = *t.map.target();
  if (src.base_count() + src.formal_count() != tgt.base_count() + tgt.formal_count()) return false;
  const auto jac = jacobian(t.map);
  PolyMatrix eps;
  for (const auto& row : jac) {
    std::vector<Polynomial> r;
    for (const auto& entry : row) r.push_back(base_project(entry));
    eps.push_back(std::move(r));
  }
  for (const auto& point : t.overlap.sample_points(samples, seed)) {
    if (determinant_at(eps, point) == 0) return false;
  }
  return true;
}

AtlasReport validate_atlas(const Atlas& atlas, std::size_t samples, std::uint64_t seed) {
  AtlasReport report;
  auto problem = [&](std::string what) {
    report.ok = false;
    report.problems.push_back(std::move(what));
  };
  for (const auto& t : atlas.transitions()) {
    const std::string label = t.from + "->" + t.to;
    if (!atlas.has_transition(t.to, t.from)) problem("transition " + label + " has no reverse direction");
    const auto check = check_morphism_data(t.map, RangeCheck{t.overlap, atlas.chart(t.to).box, samples, seed});
    for (const auto& p : check.problems) problem("transition " + label + ": " + p);
    if (!check.ok) continue;
    if (!transition_invertible_at_samples(t, samples, seed)) {
      problem("transition " + label + " has a singular Jacobian at a sample point");
    }
    if (t.from == t.to && !(t.map == Morphism::identity(t.map.source()))) {
      problem("self transition of '" + t.from + "' is not the identity");
    }
  }
  return report;
}

CocycleResult check_cocycle(const Atlas& atlas, const std::string& alpha, const std::string& beta,
                            const std::string& gamma) {
  const Transition ab = atlas.transition(alpha, beta);
  const Transition ag = atlas.transition(alpha, gamma);
  const Transition gb = atlas.transition(gamma, beta);
  if (!ab.overlap.intersect(ag.overlap)) {
    throw ValidationError("charts " + alpha + ", " + beta + ", " + gamma + " have no common overlap");
  }
  const Morphism composite = compose(gb.map, ag.map);
  CocycleResult result{{alpha, beta, gamma}, true, std::nullopt};
  for (std::size_t k = 0; k < composite.pullbacks().size(); ++k) {
    if (!(composite.pullbacks()[k] == ab.map.pullbacks()[k])) {
      result.ok = false;
      result.counterexample_coordinate = ab.map.coordinate_name(k);
      break;
    }
  }
  return result;
}

std::vector<CocycleResult> check_all_cocycles(const Atlas& atlas) {
  std::vector<CocycleResult> out;
  const auto& charts = atlas.charts();
  for (const auto& a : charts) {
    for (const auto& b : charts) {
      for (const auto& g : charts) {
        if (a.id == b.id || a.id == g.id || b.id == g.id) continue;
        if (!atlas.has_transition(a.id, b.id) || !atlas.has_transition(a.id, g.id)) continue;
        const auto ab = atlas.transition(a.id, b.id);
        const auto ag = atlas.transition(a.id, g.id);
        if (!ab.overlap.intersect(ag.overlap)) continue;
        out.push_back(check_cocycle(atlas, a.id, b.id, g.id));
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Tangent lift

std::string dotted_name(const std::string& coordinate) { return coordinate + "dot"; }

Domain lift_domain(const Domain& domain, std::optional<std::size_t> order) {
  std::vector<FormalVariable> formal;
  for (const auto& v : domain->formal_vars()) formal.push_back({v.name, Degree{0}.concat(v.degree)});
  const Degree base_dot = Degree{1}.concat(Degree(domain->rank()));
  for (const auto& x : domain->base_vars()) formal.push_back({dotted_name(x), base_dot});
  for (const auto& v : domain->formal_vars()) formal.push_back({dotted_name(v.name), Degree{1}.concat(v.degree)});
  return make_domain(domain->rank() + 1, domain->base_vars(), std::move(formal),
                     order.value_or(domain->truncation_order() + 1));
}

Series transport(const Series& f, const Domain& to) {
  const auto& src = f.spec();
  const auto& dst = *to;
  std::vector<std::size_t> base_map;
  for (const auto& x : src.base_vars()) {
    auto i = dst.base_index(x);
    if (!i) throw UnknownSymbol("base variable '" + x + "' missing from the target domain");
    base_map.push_back(*i);
  }
  std::vector<std::size_t> formal_map;
  for (const auto& v : src.formal_vars()) {
    auto a = dst.formal_index(v.name);
    if (!a) throw UnknownSymbol("formal variable '" + v.name + "' missing from the target domain");
    formal_map.push_back(*a);
  }
  Series out(to);
  for (const auto& [mu, c] : f.terms()) {
    Monomial nu(dst.formal_count(), 0);
    for (std::size_t a = 0; a < mu.size(); ++a) nu[formal_map[a]] = mu[a];
    Polynomial coeff(dst.base_count());
    for (const auto& [e, value] : c.terms()) {
      Polynomial::Exponents moved(dst.base_count(), 0);
      for (std::size_t i = 0; i < e.size(); ++i) moved[base_map[i]] = e[i];
      coeff.add_term(moved, value);
    }
    // Canonical order can change under the embedding, so reinsert through
    // a product of variables when the formal index map is not monotone.
    bool monotone = true;
    for (std::size_t a = 1; a < formal_map.size(); ++a) monotone = monotone && formal_map[a - 1] < formal_map[a];
    if (monotone) {
      out.add_term(nu, coeff);
    } else {
      std::vector<std::size_t> word;
      for (std::size_t a = 0; a < mu.size(); ++a) {
        for (std::uint32_t k = 0; k < mu[a]; ++k) word.push_back(formal_map[a]);
      }
      auto prod = normalize_product(dst, word);
      if (prod.monomial) out.add_term(*prod.monomial, prod.sign < 0 ? -coeff : coeff);
    }
  }
  return out;
}

Morphism tangent_lift(const Morphism& phi, std::optional<std::size_t> order) {
  const Domain src = lift_domain(phi.source(), order);
  const Domain tgt = lift_domain(phi.target(), order);
  std::vector<std::string> source_coords = phi.source()->base_vars();
  for (const auto& v : phi.source()->formal_vars()) source_coords.push_back(v.name);

  std::map<std::string, Series> named;
  for (std::size_t k = 0; k < phi.pullbacks().size(); ++k) {
    const std::string u = phi.coordinate_name(k);
    const Series& image = phi.pullbacks()[k];
    named.emplace(u, transport(image, src));
    Series dotted(src);
    for (const auto& v : source_coords) {
      dotted += Series::variable(src, dotted_name(v)) * transport(partial_derivative(image, v), src);
    }
    named.emplace(dotted_name(u), std::move(dotted));
  }
  return Morphism::from_named(src, tgt, named);
}

Transition tangent_lift(const Transition& t, std::optional<std::size_t> order) {
  const auto report = check_morphism_data(t.map);
  if (!report.ok) throw ValidationError("cannot lift invalid transition: " + report.problems.front());
  return Transition{t.from, t.to, t.overlap, tangent_lift(t.map, order)};
}

Atlas tangent_lift(const Atlas& atlas, std::optional<std::size_t> order) {
  std::vector<Chart> charts;
  for (const auto& c : atlas.charts()) charts.push_back({c.id, lift_domain(c.domain, order), c.box});
  std::vector<Transition> transitions;
  for (const auto& t : atlas.transitions()) transitions.push_back(tangent_lift(t, order));
  return Atlas(std::move(charts), std::move(transitions));
}

// ---------------------------------------------------------------------------
// Double vector bundles

DvbSpec make_dvb_spec(std::vector<std::string> base_vars, std::vector<Polynomial> base_map, PolyMatrix a,
                      PolyMatrix b, PolyMatrix c, std::vector<PolyMatrix> d) {
  DvbSpec s;
  s.xi_names = default_names("xi", a.size());
  s.eta_names = default_names("eta", b.size());
  s.psi_names = default_names("psi", c.size());
  s.sample_box = Box::symmetric(base_vars.size(), 1);
  s.base_vars = std::move(base_vars);
  s.base_map = std::move(base_map);
  s.a = std::move(a);
  s.b = std::move(b);
  s.c = std::move(c);
  s.d = std::move(d);
  return s;
}

Domain dvb_domain(const DvbSpec& spec) {
  std::vector<FormalVariable> formal;
  for (const auto& n : spec.xi_names) formal.push_back({n, Degree{0, 1}});
  for (const auto& n : spec.eta_names) formal.push_back({n, Degree{1, 0}});
  for (const auto& n : spec.psi_names) formal.push_back({n, Degree{1, 1}});
  return make_domain(2, spec.base_vars, std::move(formal), spec.truncation_order);
}

Morphism superize_dvb(const DvbSpec& spec) {
  const std::size_t p = spec.base_vars.size();
  const std::size_t r01 = spec.xi_names.size(), r10 = spec.eta_names.size(), r11 = spec.psi_names.size();
  if (spec.base_map.size() != p) throw ValidationError("base map needs one polynomial per base variable");
  require_square(spec.a, r01, "a");
  require_square(spec.b, r10, "b");
  require_square(spec.c, r11, "c");
  if (spec.d.size() != r11) throw ValidationError("d needs one matrix per psi coordinate");
  for (const auto& dk : spec.d) {
    if (dk.size() != r01) throw ValidationError("d blocks must have one row per xi coordinate");
    for (const auto& row : dk) {
      if (row.size() != r10) throw ValidationError("d blocks must have one column per eta coordinate");
    }
  }
  if (spec.sample_box.dimension() != p) throw DimensionError("sample box does not match the base");
  for (const auto& point : spec.sample_box.sample_points(spec.samples, spec.seed)) {
    for (const auto* block : {&spec.a, &spec.b, &spec.c}) {
      if (determinant_at(*block, point) == 0) {
        const char* name = block == &spec.a ? "a" : block == &spec.b ? "b" : "c";
        throw ValidationError(std::string("matrix ") + name + " is singular at a sample point");
      }
    }
  }

  const Domain dom = dvb_domain(spec);
  auto var = [&](const std::string& n) { return Series::variable(dom, n); };
  std::map<std::string, Series> named;
  for (std::size_t i = 0; i < p; ++i) named.emplace(spec.base_vars[i], Series::from_base(dom, spec.base_map[i]));
  auto linear = [&](const PolyMatrix& m, const std::vector<std::string>& names) {
    for (std::size_t i = 0; i < names.size(); ++i) {
      Series s(dom);
      for (std::size_t j = 0; j < names.size(); ++j) s += Series::from_base(dom, m[i][j]) * var(names[j]);
      named.emplace(names[i], std::move(s));
    }
  };
  linear(spec.a, spec.xi_names);
  linear(spec.b, spec.eta_names);
  linear(spec.c, spec.psi_names);
  for (std::size_t k = 0; k < r11; ++k) {
    Series& s = named.at(spec.psi_names[k]);
    for (std::size_t i = 0; i < r01; ++i) {
      for (std::size_t j = 0; j < r10; ++j) {
        const Series product = spec.product_order == DvbSpec::ProductOrder::XiEta
                                   ? var(spec.xi_names[i]) * var(spec.eta_names[j])
                                   : var(spec.eta_names[j]) * var(spec.xi_names[i]);
        s += Series::from_base(dom, spec.d[k][i][j]) * product;
      }
    }
  }
  return Morphism::from_named(dom, dom, named);
}

DvbSpec compose_dvb(const DvbSpec& second, const DvbSpec& first) {
  const std::size_t p = first.base_vars.size();
  DvbSpec out = first;
  out.base_map.clear();
  for (const auto& f : second.base_map) out.base_map.push_back(f.substitute(first.base_map, p));
  const PolyMatrix a2 = substitute_all(second.a, first.base_map, p);
  const PolyMatrix b2 = substitute_all(second.b, first.base_map, p);
  const PolyMatrix c2 = substitute_all(second.c, first.base_map, p);
  out.a = multiply(a2, first.a, p);
  out.b = multiply(b2, first.b, p);
  out.c = multiply(c2, first.c, p);
  const std::size_t r01 = first.a.size(), r10 = first.b.size(), r11 = first.c.size();
  out.d.assign(r11, PolyMatrix(r01, std::vector<Polynomial>(r10, Polynomial(p))));
  for (std::size_t k = 0; k < r11; ++k) {
    const PolyMatrix d2 = substitute_all(second.d[k], first.base_map, p);
    for (std::size_t i = 0; i < r01; ++i) {
      for (std::size_t j = 0; j < r10; ++j) {
        Polynomial acc(p);
        for (std::size_t l = 0; l < r11; ++l) acc += c2[k][l] * first.d[l][i][j];
        for (std::size_t i2 = 0; i2 < r01; ++i2) {
          for (std::size_t j2 = 0; j2 < r10; ++j2) acc += d2[i2][j2] * first.a[i2][i] * first.b[j2][j];
        }
        out.d[k][i][j] = std::move(acc);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// n-fold vector bundles

Morphism superize_nvb(const NvbSpec& spec) {
  const std::size_t n = spec.rank;
  std::map<std::string, std::vector<int>> degree_of;
  std::vector<FormalVariable> formal;
  for (const auto& c : spec.coordinates) {
    if (c.multidegree.size() != n) throw DimensionError("coordinate '" + c.name + "' multidegree has wrong length");
    bool nonzero = false;
    for (int bit : c.multidegree) {
      if (bit != 0 && bit != 1) throw ValidationError("coordinate '" + c.name + "' multidegree must lie in {0,1}^n");
      nonzero = nonzero || bit == 1;
    }
    if (!nonzero) throw ValidationError("fiber coordinate '" + c.name + "' has zero multidegree");
    degree_of.emplace(c.name, c.multidegree);
    formal.push_back({c.name, Degree(c.multidegree)});
  }
  if (spec.base_map.size() != spec.base_vars.size()) {
    throw ValidationError("base map needs one polynomial per base variable");
  }
  const Domain dom = make_domain(n, spec.base_vars, std::move(formal), spec.truncation_order.value_or(n));

  std::map<std::string, Series> named;
  for (std::size_t i = 0; i < spec.base_vars.size(); ++i) {
    named.emplace(spec.base_vars[i], Series::from_base(dom, spec.base_map[i]));
  }
  for (const auto& c : spec.coordinates) {
    auto it = spec.fiber_map.find(c.name);
    if (it == spec.fiber_map.end()) throw ValidationError("no transition law for coordinate '" + c.name + "'");
    Series image(dom);
    for (const auto& term : it->second) {
      std::vector<int> total(n, 0);
      Series product = Series::from_base(dom, term.coeff);
      for (const auto& f : term.factors) {
        auto d = degree_of.find(f);
        if (d == degree_of.end()) throw UnknownSymbol("unknown fiber coordinate '" + f + "'");
        for (std::size_t i = 0; i < n; ++i) {
          if (total[i] && d->second[i]) {
            throw ValidationError("product feeding '" + c.name + "' multiplies coordinates with overlapping supports");
          }
          total[i] += d->second[i];
        }
        product = product * Series::variable(dom, f);
      }
      if (total != c.multidegree) {
        throw ValidationError("term feeding '" + c.name + "' does not preserve its multidegree");
      }
      image += product;
    }
    named.emplace(c.name, std::move(image));
  }
  for (const auto& [name, terms] : spec.fiber_map) {
    if (!degree_of.contains(name)) throw UnknownSymbol("transition law for unknown coordinate '" + name + "'");
  }
  Morphism out = Morphism::from_named(dom, dom, named);
  const auto report = check_morphism_data(out);
  if (!report.ok) throw ValidationError(report.problems.front());
  return out;
}

NvbSpec dvb_as_nvb(const DvbSpec& spec) {
  NvbSpec out;
  out.rank = 2;
  out.base_vars = spec.base_vars;
  out.base_map = spec.base_map;
  out.truncation_order = spec.truncation_order;
  for (const auto& n : spec.xi_names) out.coordinates.push_back({n, {0, 1}});
  for (const auto& n : spec.eta_names) out.coordinates.push_back({n, {1, 0}});
  for (const auto& n : spec.psi_names) out.coordinates.push_back({n, {1, 1}});
  auto linear = [&](const PolyMatrix& m, const std::vector<std::string>& names) {
    for (std::size_t i = 0; i < names.size(); ++i) {
      auto& terms = out.fiber_map[names[i]];
      for (std::size_t j = 0; j < names.size(); ++j) {
        if (!m[i][j].is_zero()) terms.push_back({m[i][j], {names[j]}});
      }
    }
  };
  linear(spec.a, spec.xi_names);
  linear(spec.b, spec.eta_names);
  linear(spec.c, spec.psi_names);
  for (std::size_t k = 0; k < spec.psi_names.size(); ++k) {
    auto& terms = out.fiber_map[spec.psi_names[k]];
    for (std::size_t i = 0; i < spec.xi_names.size(); ++i) {
      for (std::size_t j = 0; j < spec.eta_names.size(); ++j) {
        if (spec.d[k][i][j].is_zero()) continue;
        if (spec.product_order == DvbSpec::ProductOrder::XiEta) {
          terms.push_back({spec.d[k][i][j], {spec.xi_names[i], spec.eta_names[j]}});
        } else {
          terms.push_back({spec.d[k][i][j], {spec.eta_names[j], spec.xi_names[i]}});
        }
      }
    }
  }
  return out;
}

}  // namespace zsup
