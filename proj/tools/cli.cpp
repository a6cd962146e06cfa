#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <array>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "zsup/atlas.hpp"
#include "zsup/clifford.hpp"
#include "zsup/error.hpp"
#include "zsup/expression.hpp"
#include "zsup/grading.hpp"
#include "zsup/json_io.hpp"
#include "zsup/morphism.hpp"

namespace zsup::cli {

namespace {

using json::Json;

struct Request {
  std::string command;
  std::vector<std::string> args;
  std::array<std::optional<std::string>, 4> slots;  // one positional per argument
  std::optional<std::size_t> order;
  std::optional<std::string> domain_file;
  std::string output;
  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> at;
  bool minimize = false;
  bool invert = false;
};

struct Report {
  Json data;
  std::string text;
  bool ok = true;
};

using Handler = std::function<Report(const Request&, Session&)>;

struct CommandInfo {
  std::string usage;
  std::string summary;
  std::size_t min_args;
  std::size_t max_args;
  Handler handler;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

Json load_json(const std::string& arg) {
  const std::string t = trim(arg);
  try {
    if (!t.empty() && (t.front() == '{' || t.front() == '[')) return Json::parse(t);
    std::ifstream in(arg);
    if (!in) throw ValidationError("cannot open '" + arg + "'");
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("invalid JSON in '" + arg + "': " + e.what());
  }
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string status(bool ok, const Session& s) {
  if (!s.color) return ok ? "ok" : "FAIL";
  return ok ? "\033[32mok\033[0m" : "\033[31mFAIL\033[0m";
}

Domain active_domain(const Request& r, const Session& s) {
  Domain d = r.domain_file ? json::domain_from_json(load_json(*r.domain_file)) : (s.domain ? s.domain : default_domain());
  if (auto n = r.order ? r.order : s.order) d = with_order(d, *n);
  return d;
}

Bindings bindings_for(const Domain& domain, const Session& s) {
  Bindings b;
  for (const auto& [name, text] : s.lets) {
    if (domain->base_index(name) || domain->formal_index(name)) continue;
    try {
      b.insert_or_assign(name, parse_series(text, domain, &b));
    } catch (const Error&) {
      // Bindings that do not make sense over this domain stay unbound.
    }
  }
  return b;
}

Series series_arg(const std::string& text, const Domain& domain, const Session& s) {
  const Bindings b = bindings_for(domain, s);
  return parse_series(text, domain, &b);
}

std::vector<Rational> point_arg(const std::optional<std::string>& text, const DomainSpec& domain) {
  const std::size_t p = domain.base_count();
  if (!text) return std::vector<Rational>(p, Rational(0));
  std::vector<Rational> point;
  std::stringstream in(*text);
  std::string piece;
  while (std::getline(in, piece, ',')) point.push_back(parse_rational(trim(piece)));
  if (point.size() == 1 && p > 1) point.assign(p, point.front());
  if (point.size() != p) {
    throw DimensionError("base point has " + std::to_string(point.size()) + " coordinates, domain has " +
                         std::to_string(p));
  }
  return point;
}

std::size_t count_arg(const std::string& text, const char* what) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (used == text.size() && v >= 0) return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
  }
  throw ValidationError(std::string(what) + " must be a non-negative integer, got '" + text + "'");
}

Json point_json(const std::vector<Rational>& point) {
  Json out = Json::array();
  for (const auto& c : point) out.push_back(json::to_json(c));
  return out;
}

std::string morphism_lines(const Morphism& m) {
  std::string out;
  for (std::size_t k = 0; k < m.pullbacks().size(); ++k) {
    out += m.coordinate_name(k) + " = " + m.pullbacks()[k].to_string() + "\n";
  }
  return out;
}

Report series_report(const Series& f) {
  return {Json{{"series", f.to_string()}, {"terms", json::series_to_json(f)}}, f.to_string() + "\n"};
}

// ---------------------------------------------------------------------------
// Commands

Report cmd_invert(const Request& r, Session& s) {
  const Domain d = active_domain(r, s);
  return series_report(invert(series_arg(r.args[0], d, s)));
}

Report cmd_decompose(const Request& r, Session& s) {
  const Domain d = active_domain(r, s);
  const Series f = series_arg(r.args[0], d, s);
  Report rep{Json::array(), ""};
  for (const auto& deg : enumerate_degrees(d->rank())) {
    const Series part = homogeneous_component(f, deg);
    if (part.is_zero()) continue;
    rep.data.push_back(Json{{"degree", json::to_json(deg)}, {"series", part.to_string()}});
    rep.text += deg.to_string() + ": " + part.to_string() + "\n";
  }
  if (rep.text.empty()) rep.text = "0\n";
  return rep;
}

Report cmd_pullback(const Request& r, Session& s) {
  const Morphism phi = json::morphism_from_json(load_json(r.args[0]));
  const Series g = series_arg(r.args[1], phi.target(), s);
  return series_report(pullback_section(phi, g));
}

Report cmd_compose(const Request& r, Session&) {
  const Morphism psi = json::morphism_from_json(load_json(r.args[0]));
  const Morphism phi = json::morphism_from_json(load_json(r.args[1]));
  const Morphism both = compose(psi, phi);
  return {json::to_json(both), morphism_lines(both)};
}

Report cmd_check_morphism(const Request& r, Session& s) {
  const Json doc = load_json(r.args[0]);
  const Morphism phi = json::morphism_from_json(doc);
  auto range = json::range_from_json(doc);
  if (range) {
    if (!doc.contains("samples")) range->samples = s.samples;
    if (!doc.contains("seed")) range->seed = s.seed;
    if (r.samples) range->samples = *r.samples;
    if (r.seed) range->seed = *r.seed;
  }
  const MorphismReport report = check_morphism_data(phi, range);
  std::string text = status(report.ok, s) + "\n";
  for (const auto& p : report.problems) text += "  " + p + "\n";
  return {json::to_json(report), text, report.ok};
}

Report cmd_jacobian(const Request& r, Session&) {
  const Morphism phi = json::morphism_from_json(load_json(r.args[0]));
  const auto jac = jacobian(phi);
  const Morphism id = Morphism::identity(phi.source());
  Json rows = Json::array();
  Json columns = Json::array();
  Json entries = Json::array();
  std::string text;
  for (std::size_t v = 0; v < id.pullbacks().size(); ++v) columns.push_back(id.coordinate_name(v));
  for (std::size_t w = 0; w < jac.size(); ++w) {
    rows.push_back(phi.coordinate_name(w));
    Json row = Json::array();
    for (std::size_t v = 0; v < jac[w].size(); ++v) {
      row.push_back(jac[w][v].to_string());
      text += "d_" + id.coordinate_name(v) + "(" + phi.coordinate_name(w) + ") = " + jac[w][v].to_string() + "\n";
    }
    entries.push_back(std::move(row));
  }
  return {Json{{"rows", rows}, {"columns", columns}, {"entries", entries}}, text};
}

Report cmd_check_cocycle(const Request& r, Session& s) {
  const Atlas atlas = json::atlas_from_json(load_json(r.args[0]));
  std::vector<CocycleResult> results;
  if (r.args.size() == 4) {
    results.push_back(check_cocycle(atlas, r.args[1], r.args[2], r.args[3]));
  } else if (r.args.size() == 1) {
    results = check_all_cocycles(atlas);
  } else {
    throw ValidationError("check-cocycle takes an atlas and optionally a triple alpha beta gamma");
  }
  Report rep{Json::array(), ""};
  for (const auto& c : results) {
    rep.data.push_back(json::to_json(c));
    rep.ok = rep.ok && c.ok;
    rep.text += c.triple[0] + "," + c.triple[1] + "," + c.triple[2] + ": " + status(c.ok, s);
    if (c.counterexample_coordinate) rep.text += " (coordinate " + *c.counterexample_coordinate + ")";
    rep.text += "\n";
  }
  if (results.empty()) rep.text = "no triples with a common overlap\n";
  return rep;
}

Report cmd_tangent_lift(const Request& r, Session&) {
  const Json doc = load_json(r.args[0]);
  if (doc.contains("charts")) {
    const Atlas lifted = tangent_lift(json::atlas_from_json(doc), r.order);
    std::string text;
    for (const auto& c : lifted.charts()) text += "chart " + c.id + ": " + c.domain->dimension_string() + "\n";
    for (const auto& t : lifted.transitions()) {
      text += t.from + " -> " + t.to + "\n";
      std::istringstream lines(morphism_lines(t.map));
      for (std::string line; std::getline(lines, line);) text += "  " + line + "\n";
    }
    return {json::to_json(lifted), text};
  }
  const Morphism lifted = tangent_lift(json::morphism_from_json(doc), r.order);
  return {json::to_json(lifted), morphism_lines(lifted)};
}

Report cmd_superize_dvb(const Request& r, Session&) {
  DvbSpec spec = json::dvb_from_json(load_json(r.args[0]));
  if (r.samples) spec.samples = *r.samples;
  if (r.seed) spec.seed = *r.seed;
  if (r.order) spec.truncation_order = *r.order;
  const Morphism m = superize_dvb(spec);
  return {json::to_json(m), morphism_lines(m)};
}

Report cmd_superize_nvb(const Request& r, Session&) {
  NvbSpec spec = json::nvb_from_json(load_json(r.args[0]));
  if (r.order) spec.truncation_order = *r.order;
  const Morphism m = superize_nvb(spec);
  return {json::to_json(m), morphism_lines(m)};
}

std::string assignment_lines(const DegreeAssignment& a) {
  std::string text = "n = " + std::to_string(a.rank) + "\n";
  for (std::size_t i = 0; i < a.sigmas.size(); ++i) {
    text += "sigma" + std::to_string(i + 1) + " = " + a.sigmas[i].to_string() + "\n";
  }
  return text;
}

Report cmd_realize_signs(const Request& r, Session&) {
  const SignTable table = json::sign_table_from_json(load_json(r.args[0]));
  DegreeAssignment a = realize_sign_table(table);
  if (r.minimize) a = minimize_assignment(a);
  const bool verified = verify_assignment(table, a);
  Json data = json::to_json(a);
  data["verified"] = verified;
  return {data, assignment_lines(a) + "verified: " + (verified ? "true" : "false") + "\n", verified};
}

Report cmd_verify_signs(const Request& r, Session&) {
  const SignTable table = json::sign_table_from_json(load_json(r.args[0]));
  const DegreeAssignment a = json::assignment_from_json(load_json(r.args[1]));
  const bool verified = verify_assignment(table, a);
  return {Json{{"verified", verified}}, std::string("verified: ") + (verified ? "true" : "false") + "\n", verified};
}

Report cmd_clifford_mul(const Request& r, Session&) {
  const ColorAlgebraPresentation p = r.args[0] == "quaternions"
                                         ? quaternion_clifford_presentation()
                                         : json::presentation_from_json(load_json(r.args[0]));
  const CliffordElement product = clifford_mul(p, parse_clifford(p, r.args[1]), parse_clifford(p, r.args[2]));
  Json terms = Json::array();
  for (const auto& [word, c] : product.terms()) {
    Json names = Json::array();
    for (auto g : word) names.push_back(p.generators()[g].name);
    terms.push_back(Json{{"word", names}, {"coeff", json::to_json(c)}});
  }
  const std::string text = product.to_string(p);
  return {Json{{"element", text}, {"terms", terms}}, text + "\n"};
}

Report cmd_check_color_comm(const Request& r, Session& s) {
  const StructureConstantAlgebra algebra = r.args[0] == "quaternions"
                                               ? quaternion_presentation()
                                               : json::structure_algebra_from_json(load_json(r.args[0]));
  const ColorCommutativityReport report = check_color_commutative(algebra);
  Json data{{"ok", report.ok}, {"counterexample", nullptr}, {"reason", report.reason}};
  std::string text = status(report.ok, s);
  if (report.counterexample) {
    data["counterexample"] = Json::array({report.counterexample->first, report.counterexample->second});
    text += ": " + report.counterexample->first + ", " + report.counterexample->second;
  }
  if (!report.reason.empty()) text += " (" + report.reason + ")";
  return {data, text + "\n", report.ok};
}

Report cmd_jet(const Request& r, Session& s) {
  const Domain d = active_domain(r, s);
  const Series f = series_arg(r.args[0], d, s);
  const auto point = point_arg(r.at, *d);
  const std::size_t k = count_arg(r.args[1], "jet order");
  const Jet jet = r.invert ? germ_invert(f, point, k) : jet_at(f, point, k);
  const Series full = jet.to_series();
  return {Json{{"center", point_json(jet.center)},
               {"order", jet.order},
               {"local", jet.local.to_string()},
               {"series", full.to_string()}},
          full.to_string() + "\n"};
}

Report cmd_madic_order(const Request& r, Session& s) {
  const Domain d = active_domain(r, s);
  const Series f = series_arg(r.args[0], d, s);
  const auto point = point_arg(r.at, *d);
  const auto order = maximal_ideal_order(f, point);
  Json data{{"point", point_json(point)}, {"order", nullptr}};
  if (order) data["order"] = *order;
  return {data, (order ? std::to_string(*order) : std::string("inf")) + "\n"};
}

const std::map<std::string, CommandInfo>& commands() {
  static const std::map<std::string, CommandInfo> table{
      {"invert", {"<expr>", "inverse of a series with nonzero constant independent term", 1, 1, cmd_invert}},
      {"decompose", {"<expr>", "split a series into homogeneous components", 1, 1, cmd_decompose}},
      {"pullback", {"<morphism> <expr>", "pull a target series back along a morphism", 2, 2, cmd_pullback}},
      {"compose", {"<psi> <phi>", "composite psi o phi of two morphisms", 2, 2, cmd_compose}},
      {"check-morphism", {"<morphism>", "degree and range checks for morphism data", 1, 1, cmd_check_morphism}},
      {"jacobian", {"<morphism>", "left-derivative Jacobian of a morphism", 1, 1, cmd_jacobian}},
      {"check-cocycle",
       {"<atlas> [alpha beta gamma]", "cocycle condition on atlas triples", 1, 4, cmd_check_cocycle}},
      {"tangent-lift", {"<atlas|morphism>", "tangent lift to one rank higher", 1, 1, cmd_tangent_lift}},
      {"superize-dvb", {"<spec>", "double vector bundle transition as a Z2^2 morphism", 1, 1, cmd_superize_dvb}},
      {"superize-nvb", {"<spec>", "n-fold vector bundle transition as a Z2^n morphism", 1, 1, cmd_superize_nvb}},
      {"realize-signs", {"<table>", "degree assignment realizing a sign table", 1, 1, cmd_realize_signs}},
      {"verify-signs", {"<table> <assignment>", "check a degree assignment against a table", 2, 2, cmd_verify_signs}},
      {"clifford-mul",
       {"<presentation|quaternions> <u> <v>", "product in a color Clifford algebra", 3, 3, cmd_clifford_mul}},
      {"check-color-comm",
       {"<algebra|quaternions>", "color commutativity of a structure-constant algebra", 1, 1, cmd_check_color_comm}},
      {"jet", {"<expr> <k>", "jet of weight < k at a base point; --invert gives the inverse germ to weight k", 2, 2, cmd_jet}},
      {"madic-order", {"<expr>", "order in the maximal ideal at a base point", 1, 1, cmd_madic_order}},
  };
  return table;
}

Outcome render(const Report& rep, bool as_json) {
  Outcome o;
  o.code = rep.ok ? kOk : kVerificationFailed;
  o.out = as_json ? rep.data.dump(2) + "\n" : rep.text;
  return o;
}

Outcome input_error(const std::string& message) { return {kInputError, "", "error: " + message + "\n"}; }

Outcome run_file_script(const Request& r, Session& s) {
  Session local = s;
  if (r.domain_file) local.domain = json::domain_from_json(load_json(*r.domain_file));
  if (r.order) local.order = r.order;
  if (!r.output.empty()) local.json = r.output == "json";
  if (r.samples) local.samples = *r.samples;
  if (r.seed) local.seed = *r.seed;
  std::istringstream script(read_text(r.args[0]));
  return run_script(script, local);
}

}  // namespace

Domain default_domain() {
  static const Domain d = make_domain(
      2, {"x"}, {{"xi", Degree{0, 1}}, {"eta", Degree{1, 0}}, {"theta", Degree{1, 1}}}, 6);
  return d;
}

Outcome run(const std::vector<std::string>& tokens, Session& session) {
  Request req;
  CLI::App app{"Exact computations in Z2^n-graded commutative algebra and on Z2^n-superdomains", "zsup"};
  app.require_subcommand(1, 1);
  app.add_option("--order", req.order, "truncation order N");
  app.add_option("--domain", req.domain_file, "domain JSON file for expression arguments");
  app.add_option("--output", req.output, "report format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--samples", req.samples, "sample count for range and invertibility checks");
  app.add_option("--seed", req.seed, "seed for deterministic sampling");

  for (const auto& [name, info] : commands()) {
    auto* sub = app.add_subcommand(name, info.summary);
    sub->fallthrough();
    for (std::size_t k = 0; k < info.max_args; ++k) {
      sub->add_option("arg" + std::to_string(k + 1), req.slots.at(k), k == 0 ? info.usage : "");
    }
    if (name == "realize-signs") sub->add_flag("--minimize", req.minimize, "drop unused degree components");
    if (name == "jet") sub->add_flag("--invert", req.invert, "jet of the inverse germ instead");
    if (name == "jet" || name == "madic-order") sub->add_option("--at", req.at, "base point, comma separated");
  }
  auto* run_sub = app.add_subcommand("run", "execute a script file");
  run_sub->fallthrough();
  run_sub->add_option("script", req.args, "script path")->expected(1);

  try {
    std::vector<std::string> reversed(tokens.rbegin(), tokens.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    return {kOk, app.help(), ""};
  } catch (const CLI::ParseError& e) {
    return input_error(e.what());
  }

  req.command = app.get_subcommands().front()->get_name();
  for (auto& slot : req.slots) {
    if (slot) req.args.push_back(std::move(*slot));
  }
  if (req.command == "run") {
    try {
      return run_file_script(req, session);
    } catch (const Error& e) {
      return input_error(e.what());
    }
  }
  const CommandInfo& info = commands().at(req.command);
  if (req.args.size() < info.min_args) {
    return input_error(req.command + ": expected " + info.usage);
  }
  const bool as_json = req.output.empty() ? session.json : req.output == "json";
  try {
    return render(info.handler(req, session), as_json);
  } catch (const ParseError& e) {
    return input_error(req.command + ": syntax error: " + e.what());
  } catch (const Error& e) {
    return input_error(req.command + ": " + e.what());
  }
}

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> words;
  std::string current;
  bool in_word = false;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (c == '\\' && i + 1 < line.size()) {
      current += line[++i];
      in_word = true;
    } else if (c == '"') {
      quoted = !quoted;
      in_word = true;
    } else if (!quoted && (c == ' ' || c == '\t')) {
      if (in_word) words.push_back(current);
      current.clear();
      in_word = false;
    } else {
      current += c;
      in_word = true;
    }
  }
  if (quoted) throw ValidationError("unterminated quote");
  if (in_word) words.push_back(current);
  return words;
}

Outcome run_script(std::istream& script, Session& session) {
  Outcome total;
  std::string line;
  std::size_t number = 0;
  auto fail = [&](const std::string& message) {
    total.code = kInputError;
    total.err += "error: line " + std::to_string(number) + ": " + message + "\n";
    return total;
  };
  while (std::getline(script, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    try {
      const auto space = line.find_first_of(" \t");
      const std::string head = line.substr(0, space);
      const std::string rest = space == std::string::npos ? "" : trim(line.substr(space));
      if (head == "domain") {
        session.domain = json::domain_from_json(load_json(rest));
        session.order.reset();
        session.lets.clear();
        continue;
      }
      if (head == "order") {
        session.order = count_arg(rest, "order");
        continue;
      }
      if (head == "let") {
        const auto eq = rest.find('=');
        if (eq == std::string::npos) return fail("expected 'let <name> = <expression>'");
        const std::string name = trim(rest.substr(0, eq));
        const std::string text = trim(rest.substr(eq + 1));
        const Expr parsed = parse_expression(name);
        if (parsed.kind != Expr::Kind::Symbol) return fail("'" + name + "' is not a valid name");
        const Domain d = active_domain(Request{}, session);
        if (d->base_index(name) || d->formal_index(name)) return fail("'" + name + "' is a domain variable");
        series_arg(text, d, session);
        session.lets.emplace_back(name, text);
        continue;
      }
      if (head == "run") return fail("scripts cannot run other scripts");
      const Outcome o = run(tokenize(line), session);
      total.out += o.out;
      if (!o.err.empty()) total.err += "line " + std::to_string(number) + ": " + o.err;
      total.code = std::max(total.code, o.code);
      if (o.code == kInputError) return total;
    } catch (const Error& e) {
      return fail(e.what());
    }
  }
  return total;
}

}  // namespace zsup::cli
