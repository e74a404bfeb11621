#include "npf/civita/collapse.hpp"
#include "npf/fixtures.hpp"
#include "npf/graphflow/induce.hpp"
#include "npf/graphflow/tetra.hpp"
#include "npf/jetcalc/json.hpp"
#include "npf/jetcalc/text.hpp"
#include "npf/nambu/nambu.hpp"
#include "npf/parallel.hpp"
#include "npf/trivialize/micrograph.hpp"
#include "npf/trivialize/xfield.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>

using namespace npf;
using jetcalc::DiffPoly;
using multivec::PolyVector;
using nambu::NambuData;
using json = nlohmann::ordered_json;

namespace {

struct Config {
  int dim = 3;
  std::string rho = "symbolic";
  int order_cap = 3;
  bool heavy = false;
  std::string format = "text";
  unsigned jobs = 0;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Collects "key: value" lines for text output and the same pairs as JSON.
class Report {
public:
  explicit Report(const Config& c) : cfg_(c) {}
  template <class T>
  void put(const std::string& key, const T& value) {
    j_[key] = value;
    std::ostringstream os;
    if constexpr (std::is_same_v<T, bool>) os << (value ? "yes" : "no");
    else os << value;
    lines_.push_back(key + ": " + os.str());
  }
  void text(const std::string& key, const std::string& body) {
    j_[key] = body;
    lines_.push_back(body.ends_with('\n') ? body.substr(0, body.size() - 1) : body);
  }
  void check(const std::string& what, bool ok) {
    j_["checks"][what] = ok;
    lines_.push_back((ok ? "PASS " : "FAIL ") + what);
    pass_ = pass_ && ok;
  }
  int finish() const {
    if (cfg_.format == "json") {
      json out = j_;
      out["result"] = pass_ ? "PASS" : "FAIL";
      std::cout << out.dump(2) << "\n";
    } else {
      for (const auto& l : lines_) std::cout << l << "\n";
      std::cout << (pass_ ? "PASS" : "FAIL") << "\n";
    }
    return pass_ ? 0 : 1;
  }

private:
  const Config& cfg_;
  json j_ = json::object();
  std::vector<std::string> lines_;
  bool pass_ = true;
};

void common(CLI::App* sub, Config& cfg) {
  sub->add_option("--dim", cfg.dim, "base dimension")->check(CLI::Range(2, 6));
  sub->add_option("--rho", cfg.rho, "density mode")->check(CLI::IsMember({"symbolic", "unit"}));
  sub->add_option("--order-cap", cfg.order_cap, "max derivative order per factor in the induction ansatz")
      ->check(CLI::Range(1, 7));
  sub->add_flag("--heavy", cfg.heavy, "allow runs that take hours");
  sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"text", "json"}));
  sub->add_option("--jobs", cfg.jobs, "worker threads (default: all cores)");
}

NambuData nambu_data(const Config& cfg) {
  return NambuData::symbolic(jetcalc::make_space(cfg.dim), cfg.rho == "unit");
}

void need_heavy(const Config& cfg, bool big, const std::string& what) {
  if (big && !cfg.heavy) throw UsageError(what + " is a heavy-tier run; pass --heavy");
}

graphflow::Velocities induce(const Config& cfg, const NambuData& nd, const PolyVector& flow) {
  graphflow::InduceOptions opt;
  opt.order_cap = cfg.order_cap;
  return graphflow::induce_velocities(nd, flow, opt);
}

std::string casimir_label(const NambuData& nd, std::size_t i) {
  return jetcalc::print(nd.casimirs[i]) + "dot";
}

void write_text(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << body;
}

// First term (in printed order) where two polynomials differ.
std::string first_difference(const DiffPoly& want, const DiffPoly& got) {
  DiffPoly diff = got - want;
  if (diff.is_zero()) return "";
  const auto& t = diff.leading_term();
  DiffPoly mono = DiffPoly::monomial(want.space(), t.mono);
  return "first differing monomial " + jetcalc::print(mono) + ": expected " + want.coefficient(t.mono).str() +
         ", got " + got.coefficient(t.mono).str();
}

struct Targets {
  std::vector<std::pair<std::string, DiffPoly>> polys;
  int tuples = 3;
};

// A source is an expanded-velocity file, a marker formula (.civ), or nothing
// (the d=3 velocities are induced).
Targets load_targets(const Config& cfg, const std::string& source) {
  Targets t;
  if (source.empty()) {
    auto nd = NambuData::symbolic(jetcalc::make_space(3), false);
    auto v = induce(cfg, nd, graphflow::tetra_flow(nambu::nambu_bivector(nd)));
    t.polys = {{"adot", v.casimirs[0]}, {"rhodot", v.density}};
    return t;
  }
  std::string body = read_file(source);
  if (squeeze(body).find("adot=") != std::string::npos) {
    auto v = parse_expanded_velocities(body, jetcalc::make_space(3));
    t.polys = {{"adot", v.adot}, {"rhodot", v.rhodot}};
    return t;
  }
  auto f = civita::parse_civita_formula(body);
  need_heavy(cfg, f.space->d >= 4 && f.markers.size() > 4, "expanding this formula");
  t.tuples = f.tuples;
  t.polys = {{source, civita::expand_civita_formula(f)}};
  return t;
}

int cmd_jacobi(const Config& cfg, const std::string& family, int k) {
  Report r(cfg);
  auto sp = jetcalc::make_space(cfg.dim);
  if (family == "ve") {
    auto p = multivec::wedge(multivec::homogeneous_power_field(sp, k), multivec::euler_field(sp));
    r.put("family", "V^E, V^i = (x^i)^" + std::to_string(k));
    r.check("1/2 [[P,P]] = 0", nambu::jacobi_check(p).is_zero());
    return r.finish();
  }
  auto nd = nambu_data(cfg);
  auto p = nambu::nambu_bivector(nd);
  r.put("family", std::string("Nambu, rho ") + cfg.rho);
  r.text("bivector", multivec::print(p));
  r.check("1/2 [[P,P]] = 0", nambu::jacobi_check(p).is_zero());
  bool casimirs = true;
  for (const auto& a : nd.casimirs) casimirs = casimirs && nambu::hamiltonian_field(p, a).is_zero();
  r.check("[[P,a_i]] = 0", casimirs);
  bool minors = true;
  for (const auto& m : nambu::coefficient_minors3(p)) minors = minors && m.is_zero();
  r.check("3x3 minors vanish", minors);
  r.check("iterated bracket equals the determinant formula", nambu::nambu_bivector_iterated(nd) == p);
  return r.finish();
}

int cmd_flow(const Config& cfg, const std::string& method, const std::string& graph_file, const std::string& output) {
  Report r(cfg);
  auto nd = nambu_data(cfg);
  need_heavy(cfg, cfg.dim >= 4 && !nd.unit_density(), "the symbolic-density flow for d >= 4");
  auto p = nambu::nambu_bivector(nd);
  PolyVector q;
  if (!graph_file.empty()) q = graphflow::evaluate_graph(graphflow::load_graph_sum(read_file(graph_file)), {p}, p.space());
  else if (method == "graph") q = graphflow::tetra_flow_graph(p);
  else q = graphflow::tetra_flow(p);
  json counts = json::object();
  for (const auto& [mask, c] : q.components()) {
    std::string name;
    for (int i : multivec::indices_of(mask)) name += p.space()->names[i];
    counts[name] = c.size();
    r.put("terms P[" + name + "]", c.size());
  }
  r.put("zero", q.is_zero());
  if (!output.empty()) write_text(output, cfg.format == "json" ? multivec::to_json(q).dump() + "\n" : multivec::print(q, "Pdot") + "\n");
  return r.finish();
}

int cmd_induce(const Config& cfg, const std::string& gamma, const std::string& output, bool division) {
  if (gamma != "g3") throw UsageError("only the tetrahedral cocycle g3 is built in");
  Report r(cfg);
  auto nd = nambu_data(cfg);
  need_heavy(cfg, cfg.dim >= 4, "induction for d >= 4");
  auto q = graphflow::tetra_flow(nambu::nambu_bivector(nd));
  auto v = induce(cfg, nd, q);
  r.put("unknowns", v.unknowns);
  r.put("equations", v.equations);
  std::string body;
  for (std::size_t i = 0; i < v.casimirs.size(); ++i) {
    r.put("terms " + casimir_label(nd, i), v.casimirs[i].size());
    body += casimir_label(nd, i) + " = " + jetcalc::print(v.casimirs[i]) + "\n";
  }
  if (!nd.unit_density()) {
    r.put("terms rhodot", v.density.size());
    body += "rhodot = " + jetcalc::print(v.density) + "\n";
  }
  r.check("reassembly reproduces the flow", graphflow::reassemble(nd, v.casimirs, v.density) == q);
  if (division && !nd.unit_density()) r.check("division path agrees", graphflow::extract_density_velocity(nd, q, v.casimirs) == v.density);
  if (!output.empty()) write_text(output, body);
  return r.finish();
}

int cmd_profiles(const Config& cfg, const std::string& source) {
  Report r(cfg);
  auto t = load_targets(cfg, source);
  for (const auto& [name, poly] : t.polys) {
    r.put("terms " + name, poly.size());
    for (const auto& [prof, cls] : civita::partition_by_profile(poly)) r.put("  " + prof.str(), cls.size());
    if (poly.space() && poly.space()->d == 3) r.put("diagonal orbits " + name, civita::greedy_skew_decompose(poly).size());
  }
  return r.finish();
}

int cmd_collapse(const Config& cfg, const std::string& source, const std::string& target, bool symmetry, const std::string& output) {
  Report r(cfg);
  auto t = load_targets(cfg, source);
  std::string all;
  for (const auto& [name, poly] : t.polys) {
    if (target != "all" && name != target) continue;
    try {
      auto res = civita::collapse_search(poly, t.tuples);
      r.put("markers " + name, res.formula.markers.size());
      std::string text = civita::print_civita_formula(res.formula);
      r.text("formula " + name, text);
      all += "# " + name + "\n" + text;
      r.check("expansion reproduces " + name, civita::expand_civita_formula(res.formula) == poly);
    } catch (const civita::CollapseError& e) {
      r.put("collapse " + name, std::string(e.what()));
      r.check("collapse found for " + name, false);
    }
    if (symmetry)
      for (const auto& [prof, cls] : civita::partition_by_profile(poly)) {
        auto rep = civita::extra_symmetry_check(cls, t.tuples);
        r.put("  rank " + prof.str(), rep.rank);
        r.put("  markers needed " + prof.str(), rep.min_span);
        r.put("  nonzero markers " + prof.str(), rep.nonzero_markers);
        r.put("  class in span " + prof.str(), rep.class_in_span);
      }
  }
  if (!output.empty()) write_text(output, all);
  return r.finish();
}

int cmd_verify_collapsed(const Config& cfg, const std::string& formula, const std::string& against, const std::string& target,
                         long expect_terms, const std::string& pair) {
  Report r(cfg);
  auto f = civita::load_civita_formula(formula);
  need_heavy(cfg, f.space->d >= 4 && f.markers.size() > 4, "expanding this formula");
  auto poly = civita::expand_civita_formula(f);
  r.put("markers", f.markers.size());
  r.put("terms", poly.size());
  for (const auto& [prof, cls] : civita::partition_by_profile(poly)) r.put("  " + prof.str(), cls.size());
  if (expect_terms >= 0) r.check("term count " + std::to_string(expect_terms), static_cast<long>(poly.size()) == expect_terms);
  if (!against.empty()) {
    auto v = load_expanded_velocities(against, f.space);
    const DiffPoly& want = target == "rhodot" ? v.rhodot : v.adot;
    bool ok = want == poly;
    r.check("expansion equals " + target + " of " + against, ok);
    if (!ok) r.put("mismatch", first_difference(want, poly));
  }
  if (!pair.empty()) {
    auto g = civita::load_civita_formula(pair);
    auto other = civita::expand_civita_formula(g);
    auto has_rho = [](const DiffPoly& p) {
      for (const auto& t : p.terms())
        if (t.mono.degree_in(jetcalc::rho_symbol()) > 0) return true;
      return false;
    };
    // formulas without rho are the rho = 1 case
    bool unit = !has_rho(poly) && !has_rho(other);
    auto nd = NambuData::symbolic(f.space, unit);
    if (nd.casimirs.size() != 2) throw UsageError("--pair needs d = 4");
    auto q = graphflow::tetra_flow(nambu::nambu_bivector(nd));
    r.put("terms per flow component", q.components().begin()->second.size());
    DiffPoly rho_dot;
    if (!unit) {
      rho_dot = graphflow::extract_density_velocity(nd, q, {poly, other});
      r.put("terms rhodot", rho_dot.size());
    }
    auto residual = q - graphflow::reassemble(nd, {poly, other}, rho_dot);
    r.check("flow residual of the reassembled velocities is zero", residual.is_zero());
  }
  return r.finish();
}

int cmd_trivialize(const Config& cfg, bool no_tadpoles, const std::string& dump) {
  Report r(cfg);
  if (cfg.dim != 3) throw UsageError("the micro-graph ansatz is built for d = 3");
  auto nd = NambuData::symbolic(jetcalc::make_space(3), false);
  auto p = nambu::nambu_bivector(nd);
  auto res = trivialize::solve_trivialization(nd, graphflow::tetra_flow(p), {!no_tadpoles});
  r.put("tadpoles", !no_tadpoles);
  r.put("graphs", res.graphs);
  r.put("nonzero graphs", res.columns.size());
  r.put("equations", res.equations);
  r.put("feasible", res.feasible);
  if (!res.feasible) {
    r.put("reason", res.reason);
    r.check(no_tadpoles ? "no solution without tadpoles" : "solution found", no_tadpoles);
    return r.finish();
  }
  r.put("kernel dimension", res.kernel.size());
  r.check("coboundary residual is zero", trivialize::verify_coboundary(p, res.field).is_zero());
  auto builtin = trivialize::builtin_x_field();
  r.check("builtin X / 4 differs by a [[P,.]]-closed field",
          multivec::schouten(p, res.field - Rational(1, 4) * builtin).is_zero());
  if (!dump.empty()) write_text(dump, trivialize::dump_solution(res));
  return r.finish();
}

int cmd_verify_x(const Config& cfg, const std::string& formula, const std::string& scale_text) {
  Report r(cfg);
  auto nd = NambuData::symbolic(jetcalc::make_space(3), false);
  auto f = formula.empty() ? trivialize::builtin_x_formula() : civita::load_civita_formula(formula);
  Rational scale = Rational::parse(scale_text);
  auto x = scale * civita::expand_civita_field(f);
  auto p = nambu::nambu_bivector(nd);
  auto q = graphflow::tetra_flow(p);
  auto bracket = multivec::schouten(p, x);
  bool ok = bracket == q;
  r.put("scale", scale.str());
  r.check("tetra_flow(P) = [[P,X]]", ok);
  if (!ok)
    for (const auto& [mask, c] : q.components()) {
      auto lam = civita::proportion(bracket.at(mask), c);
      r.put("[[P,X]] / flow", lam ? lam->str() : std::string("not proportional"));
      break;
    }
  auto v = induce(cfg, nd, q);
  auto rep = trivialize::verify_velocity_consistency(nd, x, v);
  r.check("adot = -X(a)", rep.casimir_ok);
  r.check("rhodot d_x^d_y^d_z = [[rho d_x^d_y^d_z, X]]", rep.density_ok);
  std::string which;
  for (auto i : trivialize::contributing_markers(f, nd.casimirs[0])) which += (which.empty() ? "" : " ") + std::to_string(i + 1);
  r.put("markers contributing to X(a)", which);
  return r.finish();
}

int cmd_casimir(const Config& cfg, const std::string& family, int max_degree, int k) {
  Report r(cfg);
  auto sp = jetcalc::make_space(cfg.dim);
  PolyVector p;
  if (family == "ve") {
    p = multivec::wedge(multivec::homogeneous_power_field(sp, k), multivec::euler_field(sp));
  } else {
    if (cfg.dim != 3) throw UsageError("euler and log families are for d = 3");
    auto x = DiffPoly::coordinate(sp, 0), y = DiffPoly::coordinate(sp, 1), z = DiffPoly::coordinate(sp, 2);
    DiffPoly a = family == "euler" ? Rational(1, 2) * (x * x + y * y + z * z) : Rational(1, 2) * (x * y * z);
    NambuData nd{sp, DiffPoly(1), {a}};
    p = nambu::nambu_bivector(nd);
  }
  auto basis = nambu::casimir_search(p, max_degree);
  r.put("dimension", basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) r.put("c" + std::to_string(i + 1), jetcalc::print(basis[i]));
  return r.finish();
}

int cmd_appendix(const Config& cfg, const std::string& fixture) {
  Report r(cfg);
  auto sp = jetcalc::make_space(3);
  auto want = load_expanded_velocities(fixture, sp);
  auto nd = NambuData::symbolic(sp, false);
  auto q = graphflow::tetra_flow(nambu::nambu_bivector(nd));
  auto v = induce(cfg, nd, q);
  r.put("terms adot", v.casimirs[0].size());
  r.put("terms rhodot", v.density.size());
  bool a_ok = jetcalc::print(want.adot) == jetcalc::print(v.casimirs[0]);
  bool r_ok = jetcalc::print(want.rhodot) == jetcalc::print(v.density);
  r.check("adot matches the fixture", a_ok);
  if (!a_ok) r.put("adot mismatch", first_difference(want.adot, v.casimirs[0]));
  r.check("rhodot matches the fixture", r_ok);
  if (!r_ok) r.put("rhodot mismatch", first_difference(want.rhodot, v.density));
  r.check("division path agrees", graphflow::extract_density_velocity(nd, q, v.casimirs) == v.density);
  return r.finish();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nambu-Poisson brackets under Kontsevich graph flows"};
  app.require_subcommand(1);
  Config cfg;

  std::string family = "nambu", method = "formula", graph_file, output, gamma = "g3", source, target = "all",
              against, pair, dump, formula, scale = "1";
  int k = 2, max_degree = 2;
  long expect_terms = -1;
  bool division = true, no_tadpoles = false, symmetry = false;

  auto* jac = app.add_subcommand("jacobi", "Jacobi identity and Casimir checks for Nambu or V^E bivectors");
  common(jac, cfg);
  jac->add_option("--family", family)->check(CLI::IsMember({"nambu", "ve"}));
  jac->add_option("--k", k, "power in V^i = (x^i)^k")->check(CLI::Range(2, 7));

  auto* flow = app.add_subcommand("flow", "tetrahedral flow of the Nambu bivector");
  common(flow, cfg);
  flow->add_option("--method", method)->check(CLI::IsMember({"formula", "graph"}));
  flow->add_option("--graph", graph_file, "graph-sum file instead of the built-in cocycle")->check(CLI::ExistingFile);
  flow->add_option("--output", output, "write the flow here");

  auto* ind = app.add_subcommand("induce", "velocities of the Casimirs and the density");
  common(ind, cfg);
  ind->add_option("--gamma", gamma);
  ind->add_option("--output", output, "write canonical expressions here");
  ind->add_flag("!--no-division", division, "skip the division cross-check");

  auto* prof = app.add_subcommand("profiles", "differential profile counts and diagonal orbit counts");
  common(prof, cfg);
  prof->add_option("source", source, "expanded-velocity velocities or a marker formula (default: induce d=3)")->check(CLI::ExistingFile);

  auto* col = app.add_subcommand("collapse", "search marker formulas for velocities");
  common(col, cfg);
  col->add_option("source", source, "expanded-velocity velocities or a marker formula (default: induce d=3)")->check(CLI::ExistingFile);
  col->add_option("--target", target)->check(CLI::IsMember({"all", "adot", "rhodot"}));
  col->add_flag("--symmetry", symmetry, "also run the exhaustive marker rank check per profile");
  col->add_option("--output", output, "write the formulas here");

  auto* vc = app.add_subcommand("verify-collapsed", "expand a marker formula and compare");
  common(vc, cfg);
  vc->add_option("formula", formula)->check(CLI::ExistingFile)->required();
  vc->add_option("--against", against, "expanded-velocity velocities file")->check(CLI::ExistingFile);
  vc->add_option("--target", target)->check(CLI::IsMember({"all", "adot", "rhodot"}));
  vc->add_option("--expect-terms", expect_terms);
  vc->add_option("--pair", pair, "formula for the second Casimir; checks the flow reassembly (d = 4)")->check(CLI::ExistingFile);

  auto* tri = app.add_subcommand("trivialize", "micro-graph ansatz for a trivializing vector field");
  common(tri, cfg);
  tri->add_flag("--no-tadpoles", no_tadpoles);
  tri->add_option("--dump", dump, "write (graph, coefficient) lines here");

  auto* vx = app.add_subcommand("verify-x", "coboundary and velocity checks for a vector field formula");
  common(vx, cfg);
  vx->add_option("--formula", formula, "marker formula with a free index (default: built-in)")->check(CLI::ExistingFile);
  vx->add_option("--scale", scale, "multiply the field by this rational");

  auto* cas = app.add_subcommand("casimir-search", "polynomial Casimirs up to a degree");
  common(cas, cfg);
  cas->add_option("--family", family)->check(CLI::IsMember({"euler", "log", "ve"}));
  cas->add_option("--max-degree", max_degree)->check(CLI::Range(0, 12));
  cas->add_option("--k", k)->check(CLI::Range(2, 7));

  auto* app_check = app.add_subcommand("appendix-check", "induced d=3 velocities against the appendix fixture");
  common(app_check, cfg);
  std::string fixture;
  app_check->add_option("fixture", fixture)->check(CLI::ExistingFile)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (cfg.jobs > 0) set_jobs(cfg.jobs);

  try {
    if (*jac) return cmd_jacobi(cfg, family, k);
    if (*flow) return cmd_flow(cfg, method, graph_file, output);
    if (*ind) return cmd_induce(cfg, gamma, output, division);
    if (*prof) return cmd_profiles(cfg, source);
    if (*col) return cmd_collapse(cfg, source, target, symmetry, output);
    if (*vc) return cmd_verify_collapsed(cfg, formula, against, target == "all" ? "adot" : target, expect_terms, pair);
    if (*tri) return cmd_trivialize(cfg, no_tadpoles, dump);
    if (*vx) return cmd_verify_x(cfg, formula, scale);
    if (*cas) return cmd_casimir(cfg, family == "nambu" ? "euler" : family, max_degree, k);
    if (*app_check) return cmd_appendix(cfg, fixture);
  } catch (const jetcalc::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const graphflow::GraphParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
