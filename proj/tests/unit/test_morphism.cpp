#include <doctest.h>

#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "zsup/error.hpp"
#include "zsup/expression.hpp"
#include "zsup/morphism.hpp"

using namespace zsup;
using namespace zsup::testing;

namespace {

Domain source_domain(std::size_t order = 6) {
  return make_domain(2, {"x"}, {{"xi", Degree{0, 1}}, {"eta", Degree{1, 0}}, {"theta", Degree{1, 1}}}, order);
}

Domain target_domain(std::size_t order = 6) {
  return make_domain(2, {"y"}, {{"alpha", Degree{0, 1}}, {"beta", Degree{1, 0}}, {"gamma", Degree{1, 1}}}, order);
}

// Coordinate form of a general morphism 1|(1,1,1) -> 1|(1,1,1).
Morphism example_morphism() {
  const Domain s = source_domain(), t = target_domain();
  return Morphism::from_named(
      s, t,
      {{"y", parse_series("x^2 + 1 + x*theta^2 + 2*theta*xi*eta", s)},
       {"alpha", parse_series("(1+x)*xi + 3*theta*eta + theta^2*xi", s)},
       {"beta", parse_series("eta - x*theta*xi", s)},
       {"gamma", parse_series("2*theta + x^2*xi*eta + theta^3", s)}});
}

}  // namespace

TEST_CASE("morphism data checks") {
  const Domain s = source_domain(), t = target_domain();
  CHECK(check_morphism_data(example_morphism()).ok);
  CHECK(check_morphism_data(Morphism::identity(s)).ok);

  auto bad = Morphism::from_named(s, t,
                                  {{"y", parse_series("x", s)},
                                   {"alpha", parse_series("xi", s)},
                                   {"beta", parse_series("eta", s)},
                                   {"gamma", parse_series("xi", s)}});
  const auto report = check_morphism_data(bad);
  CHECK_FALSE(report.ok);
  REQUIRE(report.problems.size() == 1);
  CHECK(report.problems[0].find("gamma") != std::string::npos);

  auto inhomogeneous = Morphism::from_named(s, t,
                                            {{"y", parse_series("x + xi", s)},
                                             {"alpha", parse_series("xi", s)},
                                             {"beta", parse_series("eta", s)},
                                             {"gamma", parse_series("theta", s)}});
  CHECK_FALSE(check_morphism_data(inhomogeneous).ok);
  CHECK_THROWS_AS(pullback_section(inhomogeneous, parse_series("y", t)), ValidationError);

  CHECK_THROWS(Morphism::from_named(s, t, {{"y", parse_series("x", s)}}));
  CHECK_THROWS_AS(Morphism(s, make_domain(1, {"y"}, {}, 6), {parse_series("x", s)}), DimensionError);
}

TEST_CASE("range condition by sampling") {
  const Domain s = source_domain();
  const Domain line = make_domain(2, {"y"}, {}, 6);
  const Morphism square(s, line, {parse_series("x^2", s)});
  CHECK(check_morphism_data(square, RangeCheck{Box::symmetric(1, 1), Box({{Rational(-1, 10), Rational(1)}})}).ok);
  const auto report = check_morphism_data(square, RangeCheck{Box::symmetric(1, 2), Box::symmetric(1, 1)});
  CHECK_FALSE(report.ok);
}

TEST_CASE("pullback examples") {
  const Domain s = source_domain();
  const Domain line = make_domain(2, {"y"}, {}, 6);
  const Morphism phi(s, line, {parse_series("x + theta^2", s)});
  CHECK(pullback_section(phi, parse_series("y^2", line)) == parse_series("x^2 + 2*x*theta^2 + theta^4", s));
  CHECK(pullback_section(phi, parse_series("1", line)) == parse_series("1", s));

  const Morphism classical(s, line, {parse_series("x^2 - 1", s)});
  CHECK(pullback_section(classical, parse_series("y^3 + y", line)) == parse_series("(x^2-1)^3 + x^2 - 1", s));

  Rng rng(41);
  for (int t = 0; t < 10; ++t) {
    const Series g = random_series(rng, s);
    CHECK(pullback_section(Morphism::identity(s), g) == g);
  }
  CHECK_THROWS_AS(pullback_section(phi, parse_series("x", s)), DomainMismatch);
}

TEST_CASE("pullback of a coordinate is its pullback series") {
  const Morphism phi = example_morphism();
  for (std::size_t k = 0; k < phi.pullbacks().size(); ++k) {
    const Series coordinate = Series::variable(phi.target(), phi.coordinate_name(k));
    CHECK(pullback_section(phi, coordinate) == phi.pullbacks()[k]);
  }
}

TEST_CASE("partial derivatives") {
  const Domain s = source_domain();
  auto d = [&](const char* f, const char* v) { return partial_derivative(parse_series(f, s), v); };
  CHECK(d("xi*eta", "xi") == parse_series("eta", s));
  CHECK(d("xi*eta", "eta") == parse_series("xi", s));
  CHECK(d("theta^2", "theta") == parse_series("2*theta", s));
  CHECK(d("xi*theta", "theta") == parse_series("-xi", s));
  CHECK(d("x^2*xi", "x") == parse_series("2*x*xi", s));
  CHECK(d("xi*eta*theta", "theta") == parse_series("xi*eta", s));
  CHECK_THROWS_AS(d("xi", "zeta"), UnknownSymbol);
}

TEST_CASE("Jacobian") {
  const Domain s = source_domain();
  const auto id = jacobian(Morphism::identity(s));
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) CHECK(id[i][j] == Series::constant(s, i == j ? 1 : 0));
  }

  const Domain line = make_domain(2, {"y"}, {}, 6);
  const auto row = jacobian(Morphism(s, line, {parse_series("x + theta^2", s)}));
  REQUIRE(row.size() == 1);
  CHECK(row[0][0] == parse_series("1", s));
  CHECK(row[0][1].is_zero());
  CHECK(row[0][2].is_zero());
  CHECK(row[0][3] == parse_series("2*theta", s));

  const Morphism phi = example_morphism();
  const auto jac = jacobian(phi);
  const Morphism ids = Morphism::identity(s);
  for (std::size_t w = 0; w < 4; ++w) {
    for (std::size_t v = 0; v < 4; ++v) {
      CHECK(jac[w][v].is_homogeneous_of(phi.coordinate_degree(w) + ids.coordinate_degree(v)));
    }
  }
}

TEST_CASE("property: graded Leibniz rule") {
  Rng rng(42);
  const Domain s = source_domain(5);
  for (int t = 0; t < 60; ++t) {
    const Degree a = random_degree(rng, 2);
    const Series f = random_homogeneous(rng, s, a), g = random_series(rng, s);
    for (std::size_t v = 0; v < s->formal_count(); ++v) {
      const Rational sign(commutation_sign(s->formal_degree(v), a));
      // Both sides agree below the top order, where the product truncates.
      const Series lhs = partial_derivative(f * g, v);
      const Series rhs = partial_derivative(f, v) * g + sign * (f * partial_derivative(g, v));
      CHECK(truncate(lhs, s->truncation_order()) == truncate(rhs, s->truncation_order()));
    }
    CHECK(partial_derivative(f * g, "x") == partial_derivative(f, "x") * g + f * partial_derivative(g, "x"));
  }
}

TEST_CASE("property: pullback is a degree-preserving unital algebra morphism") {
  Rng rng(43);
  const Domain s = source_domain(5), t = target_domain(5);
  for (int i = 0; i < 30; ++i) {
    const Morphism phi = random_morphism(rng, s, t);
    const Series g = random_series(rng, t), h = random_series(rng, t);
    CHECK(pullback_section(phi, g + h) == pullback_section(phi, g) + pullback_section(phi, h));
    CHECK(pullback_section(phi, g * h) == pullback_section(phi, g) * pullback_section(phi, h));
    CHECK(pullback_section(phi, Series::constant(t, 1)) == Series::constant(s, 1));
    const Degree d = random_degree(rng, 2);
    CHECK(pullback_section(phi, random_homogeneous(rng, t, d)).is_homogeneous_of(d));
    CHECK(pullback_section(phi, g) == substitution_pullback(phi, g));
    CHECK(base_map_commutes(phi, g));
    Series in_j = g - Series::from_base(t, base_project(g));
    CHECK(j_adic_valuation(pullback_section(phi, in_j)).value_or(1) >= 1u);
  }
}

TEST_CASE("property: composition") {
  Rng rng(44);
  const Domain s = source_domain(5), t = target_domain(5);
  for (int i = 0; i < 20; ++i) {
    const Morphism phi = random_morphism(rng, s, t);
    const Morphism psi = random_morphism(rng, t, s);
    const Morphism chi = random_morphism(rng, s, t);
    CHECK(compose(Morphism::identity(t), phi) == phi);
    CHECK(compose(phi, Morphism::identity(s)) == phi);
    CHECK(compose(chi, compose(psi, phi)) == compose(compose(chi, psi), phi));
    const Morphism both = compose(psi, phi);
    const Series g = random_series(rng, s);
    CHECK(pullback_section(both, g) == pullback_section(phi, pullback_section(psi, g)));
    const std::vector<Rational> pt{random_rational(rng)};
    const Rational inner = phi.base_map()[0].evaluate(pt);
    CHECK(both.base_map()[0].evaluate(pt) == psi.base_map()[0].evaluate(std::vector<Rational>{inner}));
  }
  CHECK_THROWS_AS(compose(random_morphism(rng, s, t), random_morphism(rng, s, t)), DomainMismatch);
}

TEST_CASE("property: chain rule for Jacobians") {
  Rng rng(45);
  const Domain s = source_domain(5), t = target_domain(5);
  for (int i = 0; i < 10; ++i) {
    const Morphism phi = random_morphism(rng, s, t);
    const Morphism psi = random_morphism(rng, t, s);
    const auto lhs = jacobian(compose(psi, phi));
    const auto inner = jacobian(phi);
    const auto outer = jacobian(psi);
    const std::size_t top = s->truncation_order();
    for (std::size_t k = 0; k < lhs.size(); ++k) {
      for (std::size_t v = 0; v < lhs[k].size(); ++v) {
        Series rhs(s);
        for (std::size_t j = 0; j < inner.size(); ++j) rhs += inner[j][v] * pullback_section(phi, outer[k][j]);
        CHECK(truncate(lhs[k][v], top) == truncate(rhs, top));
      }
    }
  }
}

TEST_CASE("maximal ideal order") {
  const Domain s = source_domain();
  auto order = [&](const char* f, Rational m) { return maximal_ideal_order(parse_series(f, s), {m}); };
  CHECK(order("1", 0) == 0u);
  CHECK(order("1", 5) == 0u);
  CHECK(order("x^2 + x*xi + xi*eta*theta", 0) == 2u);
  CHECK_FALSE(order("0", 0).has_value());
  CHECK(order("(x-1)^3 + theta^2", 1) == 2u);
  CHECK(order("x", 1) == 0u);
}

TEST_CASE("jets") {
  const Domain s = source_domain();
  const std::vector<Rational> origin{Rational(0)};
  auto jet = [&](const char* f, std::size_t k) { return jet_at(parse_series(f, s), origin, k).to_series(); };
  CHECK(jet("x^2 + x*xi + xi*eta*theta", 2).is_zero());
  CHECK(jet("1 + x + theta", 1) == parse_series("1", s));
  CHECK(jet("1 + x + theta", 3) == parse_series("1 + x + theta", s));
  CHECK(jet("x^3 + xi", 3) == parse_series("xi", s));
  CHECK_THROWS_AS(jet("x", 0), ValidationError);

  const std::vector<Rational> one{Rational(1)};
  const Series f = parse_series("x^3 + x*theta", s);
  const Series p = jet_at(f, one, 2).to_series();
  CHECK(p == parse_series("1 + 3*(x-1) + theta", s));
  CHECK(maximal_ideal_order(f - p, one) >= 2u);
}

TEST_CASE("germ inversion") {
  const Domain s = source_domain();
  const std::vector<Rational> origin{Rational(0)};
  CHECK(germ_invert(parse_series("1 + x", s), origin, 2).to_series() == parse_series("1 - x + x^2", s));
  CHECK_THROWS_AS(germ_invert(parse_series("x", s), origin, 2), NotInvertible);

  const Series f = parse_series("2 + x + theta", s);
  const Jet inv = germ_invert(f, origin, 2);
  const Jet product = jet_product(local_jet(f, origin, 2), inv);
  CHECK(product.to_series() == Series::constant(s, 1));
  const Series remainder = f * inv.to_series() - Series::constant(s, 1);
  CHECK(maximal_ideal_order(remainder, origin) >= 3u);

  const std::vector<Rational> two{Rational(2)};
  const Jet at_two = germ_invert(parse_series("x + xi*eta", s), two, 3);
  CHECK(maximal_ideal_order(parse_series("x + xi*eta", s) * at_two.to_series() - Series::constant(s, 1), two) >= 4u);
}

TEST_CASE("property: jets approximate to the requested order") {
  Rng rng(46);
  const Domain s = source_domain();
  for (int t = 0; t < 60; ++t) {
    const Series f = random_series(rng, s, {5, 6, 3, 3});
    const std::vector<Rational> m{random_rational(rng)};
    const auto k = static_cast<std::size_t>(uniform_int(rng, 1, 4));
    const Series rest = f - jet_at(f, m, k).to_series();
    const auto order = maximal_ideal_order(rest, m);
    CHECK((!order || *order >= k));
  }
}

TEST_CASE("property: pullbacks preserve the maximal ideal") {
  Rng rng(47);
  const Domain s = source_domain(5), t = target_domain(5);
  for (int i = 0; i < 20; ++i) {
    const Morphism phi = random_morphism(rng, s, t);
    const std::vector<Rational> m{random_rational(rng)};
    const std::vector<Rational> image{phi.base_map()[0].evaluate(m)};
    Series g = random_series(rng, t);
    g -= Series::constant(t, base_project(g).evaluate(image));
    REQUIRE(maximal_ideal_order(g, image).value_or(1) >= 1);
    CHECK(maximal_ideal_order(pullback_section(phi, g), m).value_or(1) >= 1);
  }
}
