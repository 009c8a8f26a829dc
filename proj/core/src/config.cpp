#include "qgls/config.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"

namespace qgls::config {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
}

void check_keys(const json& j, const std::string& path,
                const std::set<std::string>& allowed) {
  require_object(j, path);
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!allowed.count(key)) fail(path + "." + key, "unknown field");
  }
}

double get_number(const json& j, const std::string& path, const std::string& key) {
  if (!j.contains(key)) fail(path + "." + key, "missing required field");
  const json& v = j.at(key);
  if (!v.is_number()) fail(path + "." + key, "expected a number");
  return v.get<double>();
}

double get_number_or(const json& j, const std::string& path,
                     const std::string& key, double fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number()) fail(path + "." + key, "expected a number");
  return v.get<double>();
}

std::string get_string(const json& j, const std::string& path,
                       const std::string& key) {
  if (!j.contains(key)) fail(path + "." + key, "missing required field");
  const json& v = j.at(key);
  if (!v.is_string()) fail(path + "." + key, "expected a string");
  return v.get<std::string>();
}

std::vector<double> get_number_array(const json& j, const std::string& path,
                                     const std::string& key) {
  if (!j.contains(key)) fail(path + "." + key, "missing required field");
  const json& v = j.at(key);
  if (!v.is_array()) fail(path + "." + key, "expected an array");
  std::vector<double> out;
  for (const json& e : v) {
    if (!e.is_number()) fail(path + "." + key, "expected numeric entries");
    out.push_back(e.get<double>());
  }
  return out;
}

SlowlyVarying parse_slowly_varying(const json& j, const std::string& path) {
  check_keys(j, path, {"kind", "kappa"});
  const std::string kind = get_string(j, path, "kind");
  if (kind == "one") {
    if (j.contains("kappa")) fail(path + ".kappa", "not a field of kind 'one'");
    return SlowlyVarying::one();
  }
  if (kind == "log_power")
    return SlowlyVarying::log_power(get_number(j, path, "kappa"));
  fail(path + ".kind", "expected 'one' or 'log_power'");
}

MeasureSpace parse_space(const json& j, const std::string& path) {
  check_keys(j, path, {"kind", "atoms", "weights"});
  const std::string kind = get_string(j, path, "kind");
  if (kind == "unit_interval") return MeasureSpace::unit_interval();
  if (kind == "half_line") return MeasureSpace::half_line();
  if (kind == "finite_discrete")
    return MeasureSpace::finite_discrete(get_number_array(j, path, "atoms"),
                                         get_number_array(j, path, "weights"));
  fail(path + ".kind", "expected 'unit_interval', 'half_line' or 'finite_discrete'");
}

TailFunction parse_tail(const json& j, const std::string& path) {
  check_keys(j, path,
             {"kind", "C", "b_t", "gamma", "slowly_varying", "mass",
              "thresholds", "measures"});
  const std::string kind = get_string(j, path, "kind");
  if (kind == "analytic") {
    TailFunction::Analytic a;
    a.scale = get_number(j, path, "C");
    a.exponent = get_number(j, path, "b_t");
    a.log_exponent = get_number_or(j, path, "gamma", 0.0);
    a.mass = get_number_or(j, path, "mass", 1.0);
    if (j.contains("slowly_varying"))
      a.sv = parse_slowly_varying(j.at("slowly_varying"), path + ".slowly_varying");
    return TailFunction::analytic(a);
  }
  if (kind == "empirical") {
    TailFunction::Step s;
    s.thresholds = get_number_array(j, path, "thresholds");
    s.measure_above = get_number_array(j, path, "measures");
    s.mass = get_number_or(j, path, "mass", 1.0);
    return TailFunction::step(std::move(s));
  }
  fail(path + ".kind", "expected 'analytic' or 'empirical'");
}

FunctionRep parse_function(const json& j, const std::string& path) {
  require_object(j, path);
  if (j.empty()) fail(path, "empty function configuration");
  const std::string variant = get_string(j, path, "variant");
  MeasureSpace space = MeasureSpace::unit_interval();
  if (j.contains("space")) space = parse_space(j.at("space"), path + ".space");

  if (variant == "power_log") {
    check_keys(j, path, {"variant", "space", "Delta", "delta", "slowly_varying"});
    PowerLogParams params;
    params.Delta = get_number(j, path, "Delta");
    params.delta = get_number_or(j, path, "delta", 0.0);
    if (j.contains("slowly_varying"))
      params.slowly_varying =
          parse_slowly_varying(j.at("slowly_varying"), path + ".slowly_varying");
    return FunctionRep::power_log(params, std::move(space));
  }
  if (variant == "sampled") {
    check_keys(j, path, {"variant", "space", "grid", "values", "interpolation"});
    if (j.contains("interpolation") &&
        j.at("interpolation").get<std::string>() != "piecewise_constant")
      fail(path + ".interpolation", "only 'piecewise_constant' is supported");
    return FunctionRep::sampled(get_number_array(j, path, "grid"),
                                get_number_array(j, path, "values"),
                                std::move(space));
  }
  if (variant == "indicator") {
    check_keys(j, path, {"variant", "space", "set"});
    if (!j.contains("set")) fail(path + ".set", "missing required field");
    const json& set = j.at("set");
    if (!set.is_array()) fail(path + ".set", "expected an array of [lo, hi] pairs");
    std::vector<Interval> intervals;
    for (const json& e : set) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        fail(path + ".set", "expected [lo, hi] numeric pairs");
      intervals.push_back({e[0].get<double>(), e[1].get<double>()});
    }
    return FunctionRep::indicator(std::move(intervals), std::move(space));
  }
  if (variant == "tail_defined") {
    check_keys(j, path, {"variant", "space", "tail"});
    if (!j.contains("tail")) fail(path + ".tail", "missing required field");
    return FunctionRep::tail_defined(parse_tail(j.at("tail"), path + ".tail"),
                                     std::move(space));
  }
  fail(path + ".variant",
       "expected 'power_log', 'sampled', 'indicator' or 'tail_defined'");
}

PsiFunction parse_psi(const json& j, const std::string& path) {
  require_object(j, path);
  const std::string kind = get_string(j, path, "kind");
  if (kind == "constant") {
    check_keys(j, path, {"kind", "a", "b", "c"});
    return PsiFunction::constant(get_number(j, path, "c"),
                                 get_number(j, path, "a"),
                                 get_number(j, path, "b"));
  }
  if (kind == "iwaniec_sbordone") {
    check_keys(j, path, {"kind", "a", "b", "theta"});
    return PsiFunction::iwaniec_sbordone(get_number(j, path, "theta"),
                                         get_number(j, path, "a"),
                                         get_number(j, path, "b"));
  }
  if (kind == "bandaliyev") {
    check_keys(j, path, {"kind", "b"});
    return PsiFunction::bandaliyev(get_number(j, path, "b"));
  }
  if (kind == "tail_model") {
    check_keys(j, path, {"kind", "b", "gamma", "slowly_varying"});
    SlowlyVarying sv = SlowlyVarying::one();
    if (j.contains("slowly_varying"))
      sv = parse_slowly_varying(j.at("slowly_varying"), path + ".slowly_varying");
    return PsiFunction::tail_model(get_number(j, path, "b"),
                                   get_number_or(j, path, "gamma", 0.0), sv);
  }
  if (kind == "tabulated") {
    check_keys(j, path, {"kind", "a", "b", "p_nodes", "values", "ends"});
    PsiFunction::TabulatedEnds ends = PsiFunction::TabulatedEnds::Clamp;
    if (j.contains("ends")) {
      const std::string e = j.at("ends").get<std::string>();
      if (e == "extend")
        ends = PsiFunction::TabulatedEnds::Extend;
      else if (e != "clamp")
        fail(path + ".ends", "expected 'clamp' or 'extend'");
    }
    return PsiFunction::tabulated(get_number_array(j, path, "p_nodes"),
                                  get_number_array(j, path, "values"),
                                  get_number(j, path, "a"),
                                  get_number(j, path, "b"), ends);
  }
  fail(path + ".kind",
       "expected 'constant', 'iwaniec_sbordone', 'bandaliyev', 'tail_model' or 'tabulated'");
}

FixpointSpec parse_fixpoint(const json& j, const std::string& path) {
  check_keys(j, path,
             {"space", "map", "alpha", "x0", "mode", "target_bound",
              "max_iterations"});
  FixpointSpec spec;
  if (!j.contains("space")) fail(path + ".space", "missing required field");
  const json& space = j.at("space");
  check_keys(space, path + ".space", {"kind", "p", "piece_measures", "K", "K_quad"});
  spec.space_kind = get_string(space, path + ".space", "kind");
  if (spec.space_kind == "lp_sampled") {
    spec.p = get_number(space, path + ".space", "p");
    if (space.contains("piece_measures"))
      spec.piece_measures = get_number_array(space, path + ".space", "piece_measures");
  } else if (spec.space_kind != "squared_euclidean") {
    fail(path + ".space.kind", "expected 'squared_euclidean' or 'lp_sampled'");
  }
  if (space.contains("K")) spec.K = get_number(space, path + ".space", "K");
  if (space.contains("K_quad"))
    spec.K_quad = get_number(space, path + ".space", "K_quad");

  if (!j.contains("map")) fail(path + ".map", "missing required field");
  const json& map = j.at("map");
  check_keys(map, path + ".map", {"kind", "scale", "offset"});
  spec.map_kind = get_string(map, path + ".map", "kind");
  if (spec.map_kind != "affine")
    fail(path + ".map.kind", "expected 'affine'");
  spec.scale = get_number(map, path + ".map", "scale");
  spec.offset = get_number_array(map, path + ".map", "offset");

  spec.alpha = get_number(j, path, "alpha");
  spec.x0 = get_number_array(j, path, "x0");
  spec.mode = j.contains("mode") ? get_string(j, path, "mode") : "triangle_squared";
  if (spec.mode != "triangle_squared" && spec.mode != "quadrilateral")
    fail(path + ".mode", "expected 'triangle_squared' or 'quadrilateral'");
  spec.target_bound = get_number_or(j, path, "target_bound", 0.0);
  spec.max_iterations = static_cast<std::size_t>(
      get_number_or(j, path, "max_iterations", 100.0));
  return spec;
}

TransferSpec parse_transfer(const json& j, const std::string& path) {
  check_keys(j, path, {"operator", "theta", "corpus"});
  TransferSpec spec;
  if (!j.contains("operator")) fail(path + ".operator", "missing required field");
  const json& op = j.at("operator");
  check_keys(op, path + ".operator", {"kind", "factor"});
  spec.operator_kind = get_string(op, path + ".operator", "kind");
  spec.factor = get_number_or(op, path + ".operator", "factor", 1.0);

  if (!j.contains("theta")) fail(path + ".theta", "missing required field");
  const json& theta = j.at("theta");
  check_keys(theta, path + ".theta", {"kind", "value", "p_nodes", "values"});
  spec.theta_kind = get_string(theta, path + ".theta", "kind");
  spec.theta_value = get_number_or(theta, path + ".theta", "value", 1.0);
  if (theta.contains("p_nodes"))
    spec.theta_p_nodes = get_number_array(theta, path + ".theta", "p_nodes");
  if (theta.contains("values"))
    spec.theta_values = get_number_array(theta, path + ".theta", "values");

  if (!j.contains("corpus")) fail(path + ".corpus", "missing required field");
  const json& corpus = j.at("corpus");
  if (!corpus.is_array()) fail(path + ".corpus", "expected an array");
  std::size_t index = 0;
  for (const json& entry : corpus) {
    const std::string entry_path = path + ".corpus[" + std::to_string(index) + "]";
    check_keys(entry, entry_path, {"id", "function"});
    std::string id = entry.contains("id")
                         ? entry.at("id").get<std::string>()
                         : "f" + std::to_string(index);
    if (!entry.contains("function"))
      fail(entry_path + ".function", "missing required field");
    spec.corpus.emplace_back(std::move(id),
                             parse_function(entry.at("function"),
                                            entry_path + ".function"));
    ++index;
  }
  return spec;
}

}  // namespace

Document parse_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("$: invalid JSON: ") + e.what());
  }
  check_keys(j, "$",
             {"function", "psi", "fixpoint", "transfer", "boyd", "tail",
              "fundamental", "natural"});
  Document doc;
  if (j.contains("function"))
    doc.function = parse_function(j.at("function"), "$.function");
  if (j.contains("psi")) doc.psi = parse_psi(j.at("psi"), "$.psi");
  if (j.contains("fixpoint"))
    doc.fixpoint = parse_fixpoint(j.at("fixpoint"), "$.fixpoint");
  if (j.contains("transfer"))
    doc.transfer = parse_transfer(j.at("transfer"), "$.transfer");
  if (j.contains("boyd")) {
    check_keys(j.at("boyd"), "$.boyd", {"s_grid"});
    doc.boyd = BoydSpec{get_number_array(j.at("boyd"), "$.boyd", "s_grid")};
  }
  if (j.contains("tail")) {
    const json& t = j.at("tail");
    check_keys(t, "$.tail", {"u_grid", "c", "log_x_grid"});
    TailSpec spec;
    if (t.contains("u_grid")) spec.u_grid = get_number_array(t, "$.tail", "u_grid");
    if (t.contains("c")) spec.c = get_number(t, "$.tail", "c");
    if (t.contains("log_x_grid"))
      spec.log_x_grid = get_number_array(t, "$.tail", "log_x_grid");
    doc.tail = std::move(spec);
  }
  if (j.contains("fundamental")) {
    const json& f = j.at("fundamental");
    check_keys(f, "$.fundamental", {"delta", "delta_grid"});
    FundamentalSpec spec;
    if (f.contains("delta"))
      spec.delta_grid.push_back(get_number(f, "$.fundamental", "delta"));
    if (f.contains("delta_grid")) {
      const std::vector<double> extra =
          get_number_array(f, "$.fundamental", "delta_grid");
      spec.delta_grid.insert(spec.delta_grid.end(), extra.begin(), extra.end());
    }
    if (spec.delta_grid.empty())
      fail("$.fundamental", "needs 'delta' or 'delta_grid'");
    doc.fundamental = std::move(spec);
  }
  if (j.contains("natural")) {
    const json& nat = j.at("natural");
    check_keys(nat, "$.natural", {"a", "b", "grid_size"});
    NaturalSpec spec;
    spec.a = get_number(nat, "$.natural", "a");
    spec.b = get_number(nat, "$.natural", "b");
    spec.grid_size = static_cast<std::size_t>(
        get_number_or(nat, "$.natural", "grid_size", 65.0));
    doc.natural = spec;
  }
  return doc;
}

namespace {

jout::Value sv_to_json(const SlowlyVarying& sv) {
  jout::Value out = jout::Value::object();
  if (sv.kind() == SlowlyVarying::Kind::One) {
    out.set("kind", jout::Value::string("one"));
  } else {
    out.set("kind", jout::Value::string("log_power"));
    out.set("kappa", jout::Value::number(sv.kappa()));
  }
  return out;
}

jout::Value space_to_json(const MeasureSpace& space) {
  jout::Value out = jout::Value::object();
  switch (space.kind()) {
    case MeasureSpace::Kind::UnitInterval:
      out.set("kind", jout::Value::string("unit_interval"));
      break;
    case MeasureSpace::Kind::HalfLine:
      out.set("kind", jout::Value::string("half_line"));
      break;
    case MeasureSpace::Kind::FiniteDiscrete: {
      out.set("kind", jout::Value::string("finite_discrete"));
      jout::Value atoms = jout::Value::array();
      for (double a : space.atoms()) atoms.push(jout::Value::number(a));
      jout::Value weights = jout::Value::array();
      for (double w : space.weights()) weights.push(jout::Value::number(w));
      out.set("atoms", std::move(atoms));
      out.set("weights", std::move(weights));
      break;
    }
  }
  return out;
}

jout::Value numbers_to_json(const std::vector<double>& xs) {
  jout::Value out = jout::Value::array();
  for (double x : xs) out.push(jout::Value::number(x));
  return out;
}

}  // namespace

jout::Value function_to_json(const FunctionRep& f) {
  jout::Value out = jout::Value::object();
  if (f.is_power_log()) {
    const PowerLogParams& p = f.power_log_data().params;
    out.set("variant", jout::Value::string("power_log"));
    out.set("space", space_to_json(f.space()));
    out.set("Delta", jout::Value::number(p.Delta));
    out.set("delta", jout::Value::number(p.delta));
    out.set("slowly_varying", sv_to_json(p.slowly_varying));
  } else if (f.is_sampled()) {
    out.set("variant", jout::Value::string("sampled"));
    out.set("space", space_to_json(f.space()));
    out.set("grid", numbers_to_json(f.sampled_data().grid));
    out.set("values", numbers_to_json(f.sampled_data().values));
    out.set("interpolation", jout::Value::string("piecewise_constant"));
  } else if (f.is_indicator()) {
    out.set("variant", jout::Value::string("indicator"));
    out.set("space", space_to_json(f.space()));
    jout::Value set = jout::Value::array();
    for (const Interval& iv : f.indicator_data().set) {
      jout::Value pair = jout::Value::array();
      pair.push(jout::Value::number(iv.lo));
      pair.push(jout::Value::number(iv.hi));
      set.push(std::move(pair));
    }
    out.set("set", std::move(set));
  } else {
    const TailFunction& tail = f.tail_data().tail;
    out.set("variant", jout::Value::string("tail_defined"));
    out.set("space", space_to_json(f.space()));
    jout::Value t = jout::Value::object();
    if (tail.is_analytic()) {
      const TailFunction::Analytic& a = tail.analytic_params();
      t.set("kind", jout::Value::string("analytic"));
      t.set("C", jout::Value::number(a.scale));
      t.set("b_t", jout::Value::number(a.exponent));
      t.set("gamma", jout::Value::number(a.log_exponent));
      t.set("slowly_varying", sv_to_json(a.sv));
      t.set("mass", jout::Value::number(a.mass));
    } else if (tail.is_step()) {
      const TailFunction::Step& s = tail.step_data();
      t.set("kind", jout::Value::string("empirical"));
      t.set("thresholds", numbers_to_json(s.thresholds));
      t.set("measures", numbers_to_json(s.measure_above));
      t.set("mass", jout::Value::number(s.mass));
    }
    out.set("tail", std::move(t));
  }
  return out;
}

jout::Value psi_to_json(const PsiFunction& psi) {
  jout::Value out = jout::Value::object();
  switch (psi.kind()) {
    case PsiFunction::Kind::Constant:
      out.set("kind", jout::Value::string("constant"));
      out.set("a", jout::Value::number(psi.lower()));
      out.set("b", jout::Value::number(psi.upper()));
      out.set("c", jout::Value::number(psi.constant_value()));
      break;
    case PsiFunction::Kind::IwaniecSbordone:
      out.set("kind", jout::Value::string("iwaniec_sbordone"));
      out.set("a", jout::Value::number(psi.lower()));
      out.set("b", jout::Value::number(psi.upper()));
      out.set("theta", jout::Value::number(psi.theta()));
      break;
    case PsiFunction::Kind::Bandaliyev:
      out.set("kind", jout::Value::string("bandaliyev"));
      out.set("b", jout::Value::number(psi.upper()));
      break;
    case PsiFunction::Kind::TailModel:
      out.set("kind", jout::Value::string("tail_model"));
      out.set("b", jout::Value::number(psi.upper()));
      out.set("gamma", jout::Value::number(psi.gamma()));
      out.set("slowly_varying", sv_to_json(psi.slowly_varying()));
      break;
    case PsiFunction::Kind::Tabulated: {
      out.set("kind", jout::Value::string("tabulated"));
      out.set("a", jout::Value::number(psi.lower()));
      out.set("b", jout::Value::number(psi.upper()));
      out.set("p_nodes", numbers_to_json(psi.p_nodes()));
      std::vector<double> values;
      values.reserve(psi.log_values().size());
      for (double lv : psi.log_values()) values.push_back(std::exp(lv));
      out.set("values", numbers_to_json(values));
      out.set("ends", jout::Value::string(
                          psi.tabulated_ends() == PsiFunction::TabulatedEnds::Clamp
                              ? "clamp"
                              : "extend"));
      break;
    }
  }
  return out;
}

jout::Value echo_document(const Document& doc) {
  jout::Value out = jout::Value::object();
  if (doc.function) out.set("function", function_to_json(*doc.function));
  if (doc.psi) out.set("psi", psi_to_json(*doc.psi));
  if (doc.fixpoint) {
    const FixpointSpec& s = *doc.fixpoint;
    jout::Value fp = jout::Value::object();
    jout::Value space = jout::Value::object();
    space.set("kind", jout::Value::string(s.space_kind));
    if (s.space_kind == "lp_sampled") {
      space.set("p", jout::Value::number(s.p));
      if (!s.piece_measures.empty())
        space.set("piece_measures", numbers_to_json(s.piece_measures));
    }
    if (s.K) space.set("K", jout::Value::number(*s.K));
    if (s.K_quad) space.set("K_quad", jout::Value::number(*s.K_quad));
    fp.set("space", std::move(space));
    jout::Value map = jout::Value::object();
    map.set("kind", jout::Value::string(s.map_kind));
    map.set("scale", jout::Value::number(s.scale));
    map.set("offset", numbers_to_json(s.offset));
    fp.set("map", std::move(map));
    fp.set("alpha", jout::Value::number(s.alpha));
    fp.set("x0", numbers_to_json(s.x0));
    fp.set("mode", jout::Value::string(s.mode));
    fp.set("target_bound", jout::Value::number(s.target_bound));
    fp.set("max_iterations",
           jout::Value::integer(static_cast<long long>(s.max_iterations)));
    out.set("fixpoint", std::move(fp));
  }
  if (doc.transfer) {
    const TransferSpec& s = *doc.transfer;
    jout::Value tr = jout::Value::object();
    jout::Value op = jout::Value::object();
    op.set("kind", jout::Value::string(s.operator_kind));
    op.set("factor", jout::Value::number(s.factor));
    tr.set("operator", std::move(op));
    jout::Value theta = jout::Value::object();
    theta.set("kind", jout::Value::string(s.theta_kind));
    theta.set("value", jout::Value::number(s.theta_value));
    if (!s.theta_p_nodes.empty()) {
      theta.set("p_nodes", numbers_to_json(s.theta_p_nodes));
      theta.set("values", numbers_to_json(s.theta_values));
    }
    tr.set("theta", std::move(theta));
    jout::Value corpus = jout::Value::array();
    for (const auto& [id, f] : s.corpus) {
      jout::Value entry = jout::Value::object();
      entry.set("id", jout::Value::string(id));
      entry.set("function", function_to_json(f));
      corpus.push(std::move(entry));
    }
    tr.set("corpus", std::move(corpus));
    out.set("transfer", std::move(tr));
  }
  if (doc.boyd) {
    jout::Value b = jout::Value::object();
    b.set("s_grid", numbers_to_json(doc.boyd->s_grid));
    out.set("boyd", std::move(b));
  }
  if (doc.tail) {
    jout::Value t = jout::Value::object();
    if (!doc.tail->u_grid.empty())
      t.set("u_grid", numbers_to_json(doc.tail->u_grid));
    if (doc.tail->c) t.set("c", jout::Value::number(*doc.tail->c));
    if (!doc.tail->log_x_grid.empty())
      t.set("log_x_grid", numbers_to_json(doc.tail->log_x_grid));
    out.set("tail", std::move(t));
  }
  if (doc.fundamental) {
    jout::Value f = jout::Value::object();
    f.set("delta_grid", numbers_to_json(doc.fundamental->delta_grid));
    out.set("fundamental", std::move(f));
  }
  if (doc.natural) {
    jout::Value n = jout::Value::object();
    n.set("a", jout::Value::number(doc.natural->a));
    n.set("b", jout::Value::number(doc.natural->b));
    n.set("grid_size",
          jout::Value::integer(static_cast<long long>(doc.natural->grid_size)));
    out.set("natural", std::move(n));
  }
  return out;
}

}  // namespace qgls::config
