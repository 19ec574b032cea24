#include "kwb/cli.hpp"

#include <CLI11.hpp>
#include <cstdint>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "kwb/diophantine.hpp"
#include "kwb/expr_io.hpp"
#include "kwb/fibers.hpp"
#include "kwb/keller.hpp"
#include "kwb/lattice.hpp"
#include "kwb/transforms.hpp"

namespace kwb::cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// What a verb produced: text for humans, the same content as JSON.
struct Outcome {
  int code = ok;
  std::string text;
  json results = json::object();
};

// FNV-1a over everything a run read, so JSON reports can be matched to inputs.
class Digest {
 public:
  void add(std::string_view s) {
    for (unsigned char c : s) {
      h_ ^= c;
      h_ *= 0x100000001b3ULL;
    }
    h_ ^= 0xff;
    h_ *= 0x100000001b3ULL;
  }
  std::string hex() const {
    std::ostringstream s;
    s << std::hex << h_;
    return "fnv1a64:" + s.str();
  }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return {};
  return s.substr(a, s.find_last_not_of(" \t") - a + 1);
}

Rational parse_rational(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) throw UsageError("empty number");
  try {
    Rational r(t);
    if (r.get_den() == 0) throw UsageError("zero denominator in '" + t + "'");
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw UsageError("not a rational number: '" + t + "'");
  }
}

RatVector parse_rationals(const std::string& text) {
  RatVector v;
  for (const auto& part : split(text, ',')) v.push_back(parse_rational(part));
  return v;
}

IntVector parse_integers(const std::string& text) {
  IntVector v;
  for (const auto& r : parse_rationals(text)) {
    if (!is_integer(r)) throw UsageError("not an integer: '" + to_string(r) + "'");
    v.push_back(r.get_num());
  }
  return v;
}

RatMatrix parse_matrix(const std::string& text) {
  std::vector<RatVector> rows;
  for (const auto& row : split(text, ';')) rows.push_back(parse_rationals(row));
  RatMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols()) throw UsageError("ragged matrix");
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::string join(const IntVector& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + v[i].get_str();
  return s;
}

std::string matrix_text(const IntMatrix& m) {
  std::string s;
  for (std::size_t i = 0; i < m.rows(); ++i) s += join(IntVector(m.row(i).begin(), m.row(i).end())) + "\n";
  return s;
}

json matrix_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (const auto& c : m.row(i)) row.push_back(c.get_str());
    rows.push_back(row);
  }
  return rows;
}

json points_json(const std::vector<IntVector>& points) {
  json out = json::array();
  for (const auto& p : points) {
    json row = json::array();
    for (const auto& c : p) row.push_back(c.get_str());
    out.push_back(row);
  }
  return out;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(const std::vector<std::string>& args);

 private:
  PolyMap load_map(const std::string& path) {
    const std::string text = read_text_file(path);
    digest_.add(text);
    try {
      return parse_map_file(text).to_map();
    } catch (const ParseError& e) {
      throw DomainError(path + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) +
                        ": " + e.what());
    }
  }

  EquationSystem load_system(const std::string& path) {
    const std::string text = read_text_file(path);
    digest_.add(text);
    try {
      return EquationSystem(parse_system_file(text).equations);
    } catch (const ParseError& e) {
      throw DomainError(path + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) +
                        ": " + e.what());
    }
  }

  Outcome emit_text(std::string text, const std::string& output, json results) {
    Outcome o;
    if (output.empty()) {
      o.text = text;
    } else {
      std::ofstream file(output, std::ios::binary);
      if (!file) throw DomainError("cannot write '" + output + "'");
      file << text;
      o.text = "wrote " + output + "\n";
      results["output"] = output;
    }
    o.results = std::move(results);
    o.results["text"] = std::move(text);
    return o;
  }

  Outcome check();
  Outcome bifurcation();
  Outcome sigma_verb();
  Outcome transform(const std::string& sub);
  Outcome sl_complete_verb();
  Outcome sl_map_verb();
  Outcome curve();
  Outcome search();
  Outcome hurwitz();

  std::ostream& out_;
  std::ostream& err_;
  Digest digest_;

  // option storage, shared by the verbs that use them
  std::string path_, output_;
  unsigned degree_cap_ = 0;
  bool show_inverse_ = false;
  unsigned seed_ = 1;
  std::size_t max_basis_ = GroebnerBudget{}.max_basis_size;
  std::string eval_;
  std::vector<std::string> components_;
  std::string r_ = "2", matrix_, point_, weights_, names_;
  std::size_t m_ = 1;
  std::string vector_, from_, to_;
  std::string kind_ = "cf", u_, v_;
  long radius_ = 10;
  std::uint64_t budget_ = SearchOptions{}.node_budget;
  unsigned threads_ = 1;
  bool nonzero_ = false;
  long d_ = 1;
  std::string branches_, genus_;
};

Outcome Runner::check() {
  const PolyMap f = load_map(path_);
  const bool keller = is_keller(f);
  const auto cubic = as_cubic_linear(f);
  const bool is_cubic = std::holds_alternative<CubicLinearForm>(cubic);
  Outcome o;
  std::string inverse;
  o.results["keller"] = keller;
  o.results["cubic_linear"] = is_cubic;
  if (keller) {
    const unsigned cap = degree_cap_ ? degree_cap_ : default_degree_cap(f.nvars());
    // Remove the constant part: F = F0 + F(0) inverts iff F0 does.
    std::vector<Polynomial> shifted;
    for (const auto& c : f.components()) shifted.push_back(c - Polynomial::constant(c, c.constant_term()));
    const FormalInverse inv = formal_inverse(PolyMap(shifted), cap);
    o.results["degree_cap"] = cap;
    o.results["inverse_exact"] = inv.exact;
    if (inv.exact) {
      inverse = "exact (degree " + std::to_string(inv.map.degree()) + ")";
      o.results["inverse_degree"] = inv.map.degree();
    } else {
      inverse = "none within degree cap " + std::to_string(cap);
    }
    if (show_inverse_ && inv.exact) {
      // G(Y - F(0)) inverts F.
      std::vector<Polynomial> back;
      for (std::size_t i = 0; i < f.size(); ++i)
        back.push_back(Polynomial::variable(f.ring(), i) -
                       Polynomial::constant(f[i], f[i].constant_term()));
      const std::string text = write_map_file(MapFile::from_map(compose(inv.map, PolyMap(back))));
      o.results["inverse"] = text;
      inverse += "\n" + text;
      inverse.pop_back();
    }
  } else {
    inverse = "skipped (not Keller)";
  }
  if (!is_cubic) o.results["cubic_rejection"] = std::get<CubicRejection>(cubic).reason;
  o.text = "keller: " + yes_no(keller) + ", cubic-linear: " + yes_no(is_cubic) +
           ", inverse: " + inverse + "\n";
  return o;
}

Outcome Runner::bifurcation() {
  const PolyMap f = load_map(path_);
  BifurcationOptions options;
  options.seed = seed_;
  options.budget.max_basis_size = max_basis_;
  const BifurcationData data = bifurcation_data(f, options);
  Outcome o;
  std::ostringstream text;
  json h = json::array(), a = json::array();
  for (std::size_t i = 0; i < data.h.size(); ++i) {
    text << "h" << i + 1 << " = " << print_polynomial(data.h[i]) << "\n";
    h.push_back(print_polynomial(data.h[i]));
  }
  for (std::size_t i = 0; i < data.a.size(); ++i) {
    text << "a" << i + 1 << " = " << print_polynomial(data.a[i]) << "\n";
    a.push_back(print_polynomial(data.a[i]));
  }
  text << "H = " << print_polynomial(data.H) << "\n";
  text << "cone = " << (data.cone_form ? print_polynomial(*data.cone_form) : "(empty)") << "\n";
  text << "d_F = " << (data.fiber_degree ? std::to_string(*data.fiber_degree) : "unknown") << "\n";
  o.text = text.str();
  o.results = {{"h", h},
               {"a", a},
               {"H", print_polynomial(data.H)},
               {"cone", data.cone_form ? json(print_polynomial(*data.cone_form)) : json(nullptr)},
               {"fiber_degree", data.fiber_degree ? json(*data.fiber_degree) : json(nullptr)}};
  return o;
}

Outcome Runner::sigma_verb() {
  const PolyMap f = load_map(path_);
  const std::size_t n = f.size();
  BifurcationOptions options;
  options.fiber_degree = false;
  options.budget.max_basis_size = max_basis_;
  const BifurcationData data = bifurcation_data(f, options);
  std::vector<ComponentData> comps;
  const auto yring = target_ring(n);
  for (const auto& spec : components_) {
    const auto parts = split(spec, '|');
    if (parts.size() != 2) throw UsageError("--component expects 'h_W | g1, g2, ...'");
    ComponentData c{parse_polynomial(trim(parts[0]), yring), {}};
    for (const auto& g : split(parts[1], ',')) c.g_list.push_back(parse_polynomial(trim(g), yring));
    comps.push_back(std::move(c));
  }
  const Polynomial s = sigma(data, comps);
  Outcome o;
  o.text = "sigma = " + print_polynomial(s) + "\n";
  o.results["sigma"] = print_polynomial(s);
  if (!eval_.empty()) {
    RatVector uv;
    const auto halves = split(eval_, ';');
    if (halves.size() == 2) {
      uv = parse_rationals(halves[0]);
      const RatVector v = parse_rationals(halves[1]);
      uv.insert(uv.end(), v.begin(), v.end());
    } else {
      uv = parse_rationals(eval_);
    }
    if (uv.size() != 2 * n) throw UsageError("--eval needs " + std::to_string(2 * n) + " numbers");
    const Rational value = s.evaluate(uv);
    o.text += "sigma(u, v) = " + to_string(value) + "\ngeneric line: " + yes_no(value != 0) + "\n";
    o.results["value"] = to_string(value);
    o.results["generic"] = value != 0;
  }
  return o;
}

Outcome Runner::transform(const std::string& sub) {
  const PolyMap f = load_map(path_);
  json results = {{"transform", sub}};
  PolyMap g = f;
  if (sub == "scale") {
    g = scale_conjugate(f, parse_rational(r_));
    results["r"] = r_;
  } else if (sub == "extend") {
    VarList names;
    if (!names_.empty())
      for (const auto& nm : split(names_, ',')) names.push_back(trim(nm));
    g = extend_variables(f, m_, names);
    results["m"] = m_;
  } else if (sub == "conjugate") {
    g = conjugate_by_linear(f, parse_matrix(matrix_));
  } else if (sub == "translate") {
    g = translate_to_origin(f, parse_rationals(point_));
  } else if (sub == "theoremB" || sub == "cor1") {
    const auto form = as_cubic_linear(f);
    if (auto* bad = std::get_if<CubicRejection>(&form))
      throw DomainError("component F" + std::to_string(bad->component + 1) +
                        " is not cubic-linear: " + bad->reason);
    const auto& cubic = std::get<CubicLinearForm>(form);
    if (sub == "theoremB") {
      const auto out = diagonal_cube_conjugate(cubic, DiagonalTransform(parse_integers(weights_)));
      g = out.to_map(f.ring());
      results["rows"] = matrix_json(out.integer_matrix());
    } else {
      const auto out = diagonal_shift_extension(cubic);
      g = out.to_map(extend_variables(f, 1).ring());
      results["rows"] = matrix_json(out.integer_matrix());
    }
  }
  return emit_text(write_map_file(MapFile::from_map(g)), output_, std::move(results));
}

Outcome Runner::sl_complete_verb() {
  const auto a = sl_complete(PrimitiveVector(parse_integers(vector_)));
  Outcome o;
  o.text = matrix_text(a.matrix());
  o.results["matrix"] = matrix_json(a.matrix());
  return o;
}

Outcome Runner::sl_map_verb() {
  const auto a = map_primitive_pair(PrimitiveVector(parse_integers(from_)),
                                    PrimitiveVector(parse_integers(to_)));
  Outcome o;
  o.text = matrix_text(a.matrix());
  o.results["matrix"] = matrix_json(a.matrix());
  return o;
}

Outcome Runner::curve() {
  const PolyMap f = load_map(path_);
  SystemFile file;
  file.variables = f.variables();
  if (kind_ == "cf") {
    file.equations = curve_CF(f).equations();
  } else if (kind_ == "cfm") {
    file.equations = curve_CFm(f, m_).equations();
  } else if (kind_ == "line") {
    const RatVector u = u_.empty() ? RatVector(f.size(), Rational(0)) : parse_rationals(u_);
    if (v_.empty()) throw UsageError("--kind line needs --v");
    file.equations = line_preimage(f, Line(u, parse_rationals(v_))).equations();
  } else if (kind_ == "squares") {
    file.equations = {sum_of_squares(f)};
  }
  return emit_text(write_system_file(file), output_, {{"kind", kind_}});
}

Outcome Runner::search() {
  const EquationSystem sys = load_system(path_);
  SearchOptions options;
  options.radius = radius_;
  options.node_budget = budget_;
  options.threads = threads_;
  Outcome o;
  o.results["radius"] = radius_;
  if (nonzero_) {
    const PointVerdict v = nonzero_point_exists(sys, options);
    o.text = v.describe() + "\n";
    o.results["verdict"] = v.describe();
    if (v.point) o.results["point"] = points_json({*v.point});
    if (v.kind == PointVerdict::Kind::budget_exceeded) o.code = budget_exhausted;
    return o;
  }
  const SearchReport report = search_box(sys, options);
  o.text = write_report(report);
  o.results["points"] = points_json(report.points);
  o.results["exhausted"] = report.exhausted;
  o.results["nodes"] = report.nodes_visited;
  if (!report.exhausted) o.code = budget_exhausted;
  return o;
}

Outcome Runner::hurwitz() {
  std::vector<long> degrees;
  for (const auto& r : parse_integers(branches_)) {
    if (!r.fits_slong_p()) throw UsageError("local degree out of range");
    degrees.push_back(r.get_si());
  }
  const Rational g = hurwitz_genus(d_, degrees);
  const Rational supplied = genus_.empty() ? g : parse_rational(genus_);
  const Feasibility verdict = branch_data_feasible(d_, degrees, supplied);
  Outcome o;
  o.code = verdict.feasible ? ok : domain_error;
  o.text = (verdict.feasible ? std::string("feasible") : "infeasible: " + verdict.reason) +
           "\ngenus: " + to_string(g) + "\n";
  o.results = {{"genus", to_string(g)}, {"feasible", verdict.feasible}, {"reason", verdict.reason}};
  return o;
}

int Runner::run(const std::vector<std::string>& args) {
  CLI::App app{"Keller maps, bifurcation sets and integer points", "kwb"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "Emit a JSON report");

  auto map_arg = [&](CLI::App* sub) {
    sub->add_option("map", path_, "Map file")->required();
  };

  auto* check = app.add_subcommand("check", "Keller test, cubic-linear recognition, formal inverse");
  map_arg(check);
  check->add_option("--degree-cap", degree_cap_, "Truncation degree for the inverse (default 3^(n-1))");
  check->add_flag("--show-inverse", show_inverse_, "Print the inverse map when exact");

  auto* bif = app.add_subcommand("bifurcation", "Minimal polynomials, H, cone and generic fiber degree");
  map_arg(bif);
  bif->add_option("--seed", seed_, "Seed for the fiber-degree sample");
  bif->add_option("--max-basis", max_basis_, "Groebner basis size cap");

  auto* sig = app.add_subcommand("sigma", "Genericity polynomial of lines");
  map_arg(sig);
  sig->add_option("--eval", eval_, "Evaluate at u,v (2n numbers, or 'u;v')");
  sig->add_option("--component", components_, "Component data 'h_W | g1, g2'");
  sig->add_option("--max-basis", max_basis_, "Groebner basis size cap");

  auto* tr = app.add_subcommand("transform", "Map transformations");
  tr->require_subcommand(1);
  std::vector<std::pair<std::string, CLI::App*>> subs;
  for (const char* name : {"scale", "extend", "conjugate", "translate", "theoremB", "cor1"}) {
    auto* s = tr->add_subcommand(name);
    map_arg(s);
    s->add_option("-o,--output", output_, "Write the map here instead of stdout");
    subs.emplace_back(name, s);
  }
  subs[0].second->description("(1/r) F(rX)");
  subs[0].second->add_option("--r", r_, "Scale factor")->required();
  subs[1].second->description("Append identity coordinates");
  subs[1].second->add_option("--m", m_, "Number of new variables");
  subs[1].second->add_option("--names", names_, "Comma-separated names for them");
  subs[2].second->description("A F A^{-1}");
  subs[2].second->add_option("--matrix", matrix_, "Rows separated by ';', entries by ','")->required();
  subs[3].second->description("F(Z - a) - F(-a)");
  subs[3].second->add_option("--point", point_, "The point a")->required();
  subs[4].second->description("Diagonal cube conjugation of an integer cubic-linear map");
  subs[4].second->add_option("--weights", weights_, "Nonzero integers w_1..w_n")->required();
  subs[5].second->description("Shift extension X -> X + X_{n+1}(1, ..., 1)");

  auto* slc = app.add_subcommand("sl-complete", "SL(n,Z) matrix with a given first column");
  slc->add_option("--vector", vector_, "Primitive vector")->required();
  auto* slm = app.add_subcommand("sl-map", "SL(n,Z) matrix sending one primitive vector to another");
  slm->add_option("--from", from_, "Source vector")->required();
  slm->add_option("--to", to_, "Target vector")->required();

  auto* cur = app.add_subcommand("curve", "Emit an equation system");
  map_arg(cur);
  cur->add_option("--kind", kind_, "cf, cfm, line or squares")
      ->check(CLI::IsMember({"cf", "cfm", "line", "squares"}));
  cur->add_option("--m", m_, "Number of vanishing components for cfm");
  cur->add_option("--u", u_, "Line base point");
  cur->add_option("--v", v_, "Line direction");
  cur->add_option("-o,--output", output_, "Write the system here instead of stdout");

  auto* sea = app.add_subcommand("search", "Integer points of a system in a box");
  sea->add_option("system", path_, "System file")->required();
  sea->add_option("--radius", radius_, "Box radius")->check(CLI::NonNegativeNumber);
  sea->add_option("--budget", budget_, "Node budget");
  sea->add_option("--threads", threads_, "Worker threads")->check(CLI::PositiveNumber);
  sea->add_flag("--nonzero", nonzero_, "Report one nonzero point or its absence");

  auto* hur = app.add_subcommand("hurwitz", "Hurwitz genus and branch-data feasibility");
  hur->add_option("--d", d_, "Covering degree")->required();
  hur->add_option("--branches", branches_, "Local degrees over infinity, comma-separated")->required();
  hur->add_option("--genus", genus_, "Genus to test (default: the Hurwitz value)");

  std::vector<std::string> argv_store{"kwb"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out_, err_);
    return code == 0 ? ok : usage_error;
  }

  std::string verb;
  for (auto* s : app.get_subcommands()) verb = s->get_name();
  digest_.add(verb);
  for (const auto& a : args) digest_.add(a);

  Outcome outcome;
  try {
    if (check->parsed()) outcome = this->check();
    else if (bif->parsed()) outcome = bifurcation();
    else if (sig->parsed()) outcome = sigma_verb();
    else if (tr->parsed()) {
      for (const auto& [name, s] : subs)
        if (s->parsed()) {
          verb = "transform " + name;
          outcome = transform(name);
        }
    } else if (slc->parsed()) outcome = sl_complete_verb();
    else if (slm->parsed()) outcome = sl_map_verb();
    else if (cur->parsed()) outcome = curve();
    else if (sea->parsed()) outcome = search();
    else if (hur->parsed()) outcome = hurwitz();
  } catch (const UsageError& e) {
    err_ << "kwb: " << e.what() << "\n";
    return usage_error;
  } catch (const BudgetExceeded& e) {
    err_ << "kwb: budget exceeded: " << e.what() << "\n";
    return budget_exhausted;
  } catch (const ParseError& e) {
    err_ << "kwb: " << e.what() << "\n";
    return domain_error;
  } catch (const DomainError& e) {
    err_ << "kwb: " << e.what() << "\n";
    return domain_error;
  } catch (const InternalError& e) {
    err_ << "kwb: internal error: " << e.what() << "\n";
    return domain_error;
  }

  if (as_json) {
    const json report = {{"verb", verb},
                         {"inputs_digest", digest_.hex()},
                         {"exit_code", outcome.code},
                         {"results", outcome.results}};
    out_ << report.dump(2) << "\n";
  } else {
    out_ << outcome.text;
  }
  return outcome.code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Runner runner(out, err);
  return runner.run(args);
}

}  // namespace kwb::cli
