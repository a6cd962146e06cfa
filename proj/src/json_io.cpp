#include "zsup/json_io.hpp"

#include "zsup/error.hpp"
#include "zsup/expression.hpp"

namespace zsup::json {

namespace {

template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed ") + what + ": " + e.what());
  }
}

std::vector<std::string> string_list(const Json& j) { return j.get<std::vector<std::string>>(); }

Polynomial polynomial_from_json(const Json& j, const std::vector<std::string>& vars) {
  if (j.is_number_integer()) return Polynomial::constant(vars.size(), Rational(j.get<long>()));
  return parse_polynomial(j.get<std::string>(), vars);
}

PolyMatrix poly_matrix_from_json(const Json& j, const std::vector<std::string>& vars) {
  PolyMatrix out;
  for (const auto& row : j) {
    std::vector<Polynomial> r;
    for (const auto& e : row) r.push_back(polynomial_from_json(e, vars));
    out.push_back(std::move(r));
  }
  return out;
}

Json poly_matrix_to_json(const PolyMatrix& m, const std::vector<std::string>& vars) {
  Json out = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const auto& p : row) r.push_back(p.to_string(vars));
    out.push_back(std::move(r));
  }
  return out;
}

Json pullbacks_to_json(const Morphism& m) {
  Json out = Json::object();
  for (std::size_t k = 0; k < m.pullbacks().size(); ++k) out[m.coordinate_name(k)] = m.pullbacks()[k].to_string();
  return out;
}

Morphism morphism_from_pullbacks(const Domain& source, const Domain& target, const Json& pullbacks) {
  std::map<std::string, Series> named;
  for (const auto& [name, value] : pullbacks.items()) named.emplace(name, series_from_json(value, source));
  return Morphism::from_named(source, target, named);
}

}  // namespace

Rational rational_from_json(const Json& j) {
  return guarded("rational", [&] {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw ValidationError("rationals must be integers or strings like \"-3/2\"");
  });
}

Json to_json(const Rational& q) { return to_string(q); }

Json to_json(const Degree& d) { return d.bits(); }

Degree degree_from_json(const Json& j) {
  return guarded("degree", [&] { return Degree(j.get<std::vector<int>>()); });
}

Json to_json(const SignTable& t) { return Json{{"m", t.size()}, {"phi", t.rows()}}; }

SignTable sign_table_from_json(const Json& j) {
  return guarded("sign table", [&] {
    if (j.is_array()) return SignTable(j.get<std::vector<std::vector<int>>>());
    SignTable t(j.at("phi").get<std::vector<std::vector<int>>>());
    if (j.contains("m") && j.at("m").get<std::size_t>() != t.size()) {
      throw ValidationError("sign table: m does not match the size of phi");
    }
    return t;
  });
}

Json to_json(const DegreeAssignment& a) {
  Json sigmas = Json::array();
  for (const auto& s : a.sigmas) sigmas.push_back(to_json(s));
  return Json{{"n", a.rank}, {"sigmas", sigmas}};
}

DegreeAssignment assignment_from_json(const Json& j) {
  return guarded("degree assignment", [&] {
    DegreeAssignment a;
    a.rank = j.at("n").get<std::size_t>();
    for (const auto& s : j.at("sigmas")) a.sigmas.push_back(degree_from_json(s));
    return a;
  });
}

Json to_json(const DomainSpec& d) {
  Json formal = Json::array();
  for (const auto& v : d.formal_vars()) formal.push_back(Json{{"name", v.name}, {"degree", to_json(v.degree)}});
  return Json{{"n", d.rank()},
              {"base_vars", d.base_vars()},
              {"formal_vars", formal},
              {"truncation_order", d.truncation_order()}};
}

Domain domain_from_json(const Json& j) {
  return guarded("domain", [&] {
    std::vector<FormalVariable> formal;
    for (const auto& v : j.at("formal_vars")) {
      formal.push_back({v.at("name").get<std::string>(), degree_from_json(v.at("degree"))});
    }
    std::vector<std::string> base;
    if (j.contains("base_vars")) base = string_list(j.at("base_vars"));
    return make_domain(j.at("n").get<std::size_t>(), std::move(base), std::move(formal),
                       j.at("truncation_order").get<std::size_t>());
  });
}

Json series_to_json(const Series& f) {
  Json out = Json::array();
  for (const auto& [mu, c] : f.terms()) {
    out.push_back(Json{{"mu", mu}, {"coeff", c.to_string(f.spec().base_vars())}});
  }
  return out;
}

Series series_from_json(const Json& j, const Domain& domain) {
  return guarded("series", [&] {
    if (j.is_string()) return parse_series(j.get<std::string>(), domain);
    Series out(domain);
    for (const auto& t : j) {
      out.add_term(t.at("mu").get<Monomial>(), polynomial_from_json(t.at("coeff"), domain->base_vars()));
    }
    return out;
  });
}

Json to_json(const Box& b) {
  Json out = Json::array();
  for (const auto& [lo, hi] : b.bounds()) out.push_back(Json::array({to_json(lo), to_json(hi)}));
  return out;
}

Box box_from_json(const Json& j) {
  return guarded("box", [&] {
    std::vector<std::pair<Rational, Rational>> bounds;
    for (const auto& edge : j) {
      if (edge.size() != 2) throw ValidationError("box edges are [lo, hi] pairs");
      bounds.emplace_back(rational_from_json(edge[0]), rational_from_json(edge[1]));
    }
    return Box(std::move(bounds));
  });
}

Json to_json(const Morphism& m) {
  return Json{{"source", to_json(*m.source())}, {"target", to_json(*m.target())}, {"pullbacks", pullbacks_to_json(m)}};
}

Morphism morphism_from_json(const Json& j) {
  return guarded("morphism", [&] {
    const Domain source = domain_from_json(j.at("source"));
    const Domain target = j.contains("target") ? domain_from_json(j.at("target")) : source;
    return morphism_from_pullbacks(source, target, j.at("pullbacks"));
  });
}

std::optional<RangeCheck> range_from_json(const Json& j) {
  return guarded("range check", [&]() -> std::optional<RangeCheck> {
    if (!j.contains("source_box") || !j.contains("target_box")) return std::nullopt;
    RangeCheck r{box_from_json(j.at("source_box")), box_from_json(j.at("target_box"))};
    if (j.contains("samples")) r.samples = j.at("samples").get<std::size_t>();
    if (j.contains("seed")) r.seed = j.at("seed").get<std::uint64_t>();
    return r;
  });
}

Json to_json(const MorphismReport& r) { return Json{{"ok", r.ok}, {"problems", r.problems}}; }

Json to_json(const Atlas& a) {
  Json charts = Json::array();
  for (const auto& c : a.charts()) {
    charts.push_back(Json{{"id", c.id}, {"domain", to_json(*c.domain)}, {"base_box", to_json(c.box)}});
  }
  Json transitions = Json::array();
  for (const auto& t : a.transitions()) {
    transitions.push_back(
        Json{{"from", t.from}, {"to", t.to}, {"overlap", to_json(t.overlap)}, {"pullbacks", pullbacks_to_json(t.map)}});
  }
  return Json{{"charts", charts}, {"transitions", transitions}};
}

Atlas atlas_from_json(const Json& j) {
  return guarded("atlas", [&] {
    std::vector<Chart> charts;
    std::map<std::string, std::size_t> by_id;
    for (const auto& c : j.at("charts")) {
      Chart chart{c.at("id").get<std::string>(), domain_from_json(c.at("domain")), Box()};
      if (c.contains("base_box")) {
        chart.box = box_from_json(c.at("base_box"));
      } else if (c.contains("box")) {
        chart.box = box_from_json(c.at("box"));
      } else {
        chart.box = Box::symmetric(chart.domain->base_count(), 1);
      }
      by_id[chart.id] = charts.size();
      charts.push_back(std::move(chart));
    }
    std::vector<Transition> transitions;
    const Json empty = Json::array();
    for (const auto& t : j.contains("transitions") ? j.at("transitions") : empty) {
      const std::string from = t.at("from").get<std::string>();
      const std::string to = t.at("to").get<std::string>();
      if (!by_id.contains(from) || !by_id.contains(to)) {
        throw ValidationError("transition " + from + "->" + to + " references an unknown chart");
      }
      const Chart& src = charts[by_id[from]];
      const Chart& dst = charts[by_id[to]];
      Box overlap = t.contains("overlap") ? box_from_json(t.at("overlap")) : src.box;
      transitions.push_back(
          Transition{from, to, std::move(overlap), morphism_from_pullbacks(src.domain, dst.domain, t.at("pullbacks"))});
    }
    return Atlas(std::move(charts), std::move(transitions));
  });
}

Json to_json(const CocycleResult& r) {
  Json out{{"triple", r.triple}, {"ok", r.ok}, {"counterexample_coordinate", nullptr}};
  if (r.counterexample_coordinate) out["counterexample_coordinate"] = *r.counterexample_coordinate;
  return out;
}

Json to_json(const ColorAlgebraPresentation& p) {
  Json gens = Json::array();
  for (const auto& g : p.generators()) gens.push_back(Json{{"name", g.name}, {"degree", to_json(g.degree)}});
  Json h = Json::array();
  for (const auto& row : p.h()) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(to_json(v));
    h.push_back(std::move(r));
  }
  Json out{{"n", p.rank()}, {"generators", gens}, {"h", h}};
  if (!p.squares().empty()) {
    Json sq = Json::object();
    for (const auto& [name, v] : p.squares()) sq[name] = to_json(v);
    out["squares"] = sq;
  }
  return out;
}

ColorAlgebraPresentation presentation_from_json(const Json& j) {
  return guarded("presentation", [&] {
    std::vector<Generator> gens;
    for (const auto& g : j.at("generators")) {
      gens.push_back({g.at("name").get<std::string>(), degree_from_json(g.at("degree"))});
    }
    std::vector<std::vector<Rational>> h;
    for (const auto& row : j.at("h")) {
      std::vector<Rational> r;
      for (const auto& v : row) r.push_back(rational_from_json(v));
      h.push_back(std::move(r));
    }
    std::map<std::string, Rational> squares;
    if (j.contains("squares")) {
      for (const auto& [name, v] : j.at("squares").items()) squares.emplace(name, rational_from_json(v));
    }
    return ColorAlgebraPresentation(j.at("n").get<std::size_t>(), std::move(gens), std::move(h), std::move(squares));
  });
}

Json to_json(const StructureConstantAlgebra& a) {
  Json degrees = Json::array();
  for (const auto& d : a.degrees) degrees.push_back(to_json(d));
  Json table = Json::array();
  for (const auto& row : a.table) {
    Json r = Json::array();
    for (const auto& entry : row) {
      Json e = Json::array();
      for (const auto& v : entry) e.push_back(to_json(v));
      r.push_back(std::move(e));
    }
    table.push_back(std::move(r));
  }
  return Json{{"names", a.names}, {"degrees", degrees}, {"table", table}};
}

StructureConstantAlgebra structure_algebra_from_json(const Json& j) {
  return guarded("structure-constant algebra", [&] {
    StructureConstantAlgebra a;
    a.names = string_list(j.at("names"));
    for (const auto& d : j.at("degrees")) a.degrees.push_back(degree_from_json(d));
    for (const auto& row : j.at("table")) {
      std::vector<std::vector<Rational>> r;
      for (const auto& entry : row) {
        std::vector<Rational> e;
        for (const auto& v : entry) e.push_back(rational_from_json(v));
        r.push_back(std::move(e));
      }
      a.table.push_back(std::move(r));
    }
    a.validate();
    return a;
  });
}

Json to_json(const DvbSpec& s) {
  Json base_map = Json::array();
  for (const auto& f : s.base_map) base_map.push_back(f.to_string(s.base_vars));
  Json d = Json::array();
  for (const auto& dk : s.d) d.push_back(poly_matrix_to_json(dk, s.base_vars));
  return Json{{"base_vars", s.base_vars},
              {"base_map", base_map},
              {"a", poly_matrix_to_json(s.a, s.base_vars)},
              {"b", poly_matrix_to_json(s.b, s.base_vars)},
              {"c", poly_matrix_to_json(s.c, s.base_vars)},
              {"d", d},
              {"xi_names", s.xi_names},
              {"eta_names", s.eta_names},
              {"psi_names", s.psi_names},
              {"product_order", s.product_order == DvbSpec::ProductOrder::XiEta ? "xi_eta" : "eta_xi"},
              {"sample_box", to_json(s.sample_box)},
              {"samples", s.samples},
              {"seed", s.seed},
              {"truncation_order", s.truncation_order}};
}

DvbSpec dvb_from_json(const Json& j) {
  return guarded("double vector bundle spec", [&] {
    const auto vars = string_list(j.at("base_vars"));
    std::vector<Polynomial> base_map;
    for (const auto& f : j.at("base_map")) base_map.push_back(polynomial_from_json(f, vars));
    std::vector<PolyMatrix> d;
    for (const auto& dk : j.at("d")) d.push_back(poly_matrix_from_json(dk, vars));
    DvbSpec s = make_dvb_spec(vars, std::move(base_map), poly_matrix_from_json(j.at("a"), vars),
                              poly_matrix_from_json(j.at("b"), vars), poly_matrix_from_json(j.at("c"), vars),
                              std::move(d));
    if (j.contains("xi_names")) s.xi_names = string_list(j.at("xi_names"));
    if (j.contains("eta_names")) s.eta_names = string_list(j.at("eta_names"));
    if (j.contains("psi_names")) s.psi_names = string_list(j.at("psi_names"));
    if (j.contains("product_order")) {
      const auto order = j.at("product_order").get<std::string>();
      if (order == "xi_eta") {
        s.product_order = DvbSpec::ProductOrder::XiEta;
      } else if (order == "eta_xi") {
        s.product_order = DvbSpec::ProductOrder::EtaXi;
      } else {
        throw ValidationError("product_order must be \"xi_eta\" or \"eta_xi\"");
      }
    }
    if (j.contains("sample_box")) s.sample_box = box_from_json(j.at("sample_box"));
    if (j.contains("samples")) s.samples = j.at("samples").get<std::size_t>();
    if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("truncation_order")) s.truncation_order = j.at("truncation_order").get<std::size_t>();
    return s;
  });
}

Json to_json(const NvbSpec& s) {
  Json coords = Json::array();
  for (const auto& c : s.coordinates) coords.push_back(Json{{"name", c.name}, {"multidegree", c.multidegree}});
  Json base_map = Json::array();
  for (const auto& f : s.base_map) base_map.push_back(f.to_string(s.base_vars));
  Json fiber = Json::object();
  for (const auto& [name, terms] : s.fiber_map) {
    Json list = Json::array();
    for (const auto& t : terms) list.push_back(Json{{"coeff", t.coeff.to_string(s.base_vars)}, {"factors", t.factors}});
    fiber[name] = std::move(list);
  }
  Json out{{"n", s.rank}, {"base_vars", s.base_vars}, {"base_map", base_map}, {"coordinates", coords},
           {"fiber_map", fiber}};
  if (s.truncation_order) out["truncation_order"] = *s.truncation_order;
  return out;
}

NvbSpec nvb_from_json(const Json& j) {
  return guarded("n-fold vector bundle spec", [&] {
    NvbSpec s;
    s.rank = j.at("n").get<std::size_t>();
    if (j.contains("base_vars")) s.base_vars = string_list(j.at("base_vars"));
    if (j.contains("base_map")) {
      for (const auto& f : j.at("base_map")) s.base_map.push_back(polynomial_from_json(f, s.base_vars));
    } else {
      for (std::size_t i = 0; i < s.base_vars.size(); ++i) {
        s.base_map.push_back(Polynomial::variable(s.base_vars.size(), i));
      }
    }
    for (const auto& c : j.at("coordinates")) {
      s.coordinates.push_back({c.at("name").get<std::string>(), c.at("multidegree").get<std::vector<int>>()});
    }
    for (const auto& [name, terms] : j.at("fiber_map").items()) {
      auto& list = s.fiber_map[name];
      for (const auto& t : terms) {
        list.push_back({polynomial_from_json(t.contains("coeff") ? t.at("coeff") : Json(1), s.base_vars),
                        string_list(t.at("factors"))});
      }
    }
    if (j.contains("truncation_order")) s.truncation_order = j.at("truncation_order").get<std::size_t>();
    return s;
  });
}

}  // namespace zsup::json
