#pragma once

// Subcommands of the `crn` tool.  Each command fills a JSON report and
// returns an exit status: 0 when every requested check passes, 2 when a check
// fails, 1 on input errors (thrown as InputError or a library error).

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "crn/crn.hpp"
#include "json.hpp"

namespace crn::cli {

using nlohmann::json;

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  Tolerance tol;
  std::string json_out;
  bool quiet = false;
};

struct Model {
  std::string path;
  ParsedModel parsed;
  const ReactionNetwork& net() const { return parsed.network; }
  const KineticsSpec& spec() const { return parsed.kinetics; }
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Model load_model(const std::string& path) {
  try {
    return Model{path, parse_network(read_file(path))};
  } catch (const ParseError& e) {
    throw InputError(path + ": " + e.what());
  } catch (const NetworkError& e) {
    throw InputError(path + ": " + e.what());
  }
}

/// Writes text with LF line endings exactly as given.
inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

inline std::vector<double> parse_reals(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || *end != '\0' || !std::isfinite(v)) throw InputError(std::string("bad ") + what + ": " + text);
    out.push_back(v);
  }
  if (out.empty()) throw InputError(std::string("empty ") + what);
  return out;
}

inline LatticeState parse_state(const std::string& text, std::size_t n, const char* what) {
  LatticeState x;
  for (double v : parse_reals(text, what)) {
    if (v < 0 || v != std::floor(v)) throw InputError(std::string(what) + " must be non-negative integers");
    x.push_back(static_cast<std::int64_t>(v));
  }
  if (x.size() != n) throw InputError(std::string(what) + " needs " + std::to_string(n) + " entries");
  return x;
}

inline json tolerance_json(Tolerance tol) { return json{{"abs", tol.abs}, {"rel", tol.rel}}; }

inline json state_json(const LatticeState& x) { return json(x); }

inline json network_digest(const ReactionNetwork& net) {
  const auto d = deficiency(net);
  std::vector<std::string> species;
  for (const auto& s : net.species()) species.push_back(s.name);
  std::vector<std::string> reactions;
  for (std::size_t k = 0; k < net.num_reactions(); ++k) reactions.push_back(net.reaction_string(k));
  return json{{"n", net.num_species()},   {"m", net.num_complexes()}, {"r", net.num_reactions()},
              {"ell", d.ell},             {"s", d.s},                 {"delta", d.delta},
              {"species", species},       {"reactions", reactions}};
}

inline json kinetics_json(const KineticsSpec& spec) {
  std::vector<std::string> theta;
  for (const auto& t : spec.theta) theta.push_back(t.describe());
  return json{{"kind", to_string(spec.kind)}, {"kappa", spec.kappa}, {"theta", theta}};
}

/// Common report skeleton.
inline json base_report(const std::string& command, const Model& model) {
  json r;
  r["schema_version"] = kSchemaVersion;
  r["tool"] = {{"name", "crn"}, {"version", kToolVersion}};
  r["command"] = command;
  r["input"] = model.path;
  r["network"] = network_digest(model.net());
  r["kinetics"] = kinetics_json(model.spec());
  r["checks"] = json::array();
  r["notes"] = json::array();
  const char* threads = std::getenv("CRN_THREADS");
  r["threads"] = {{"requested", threads ? threads : ""}, {"used", 1}};
  return r;
}

inline void add_check(json& report, const std::string& name, bool passed, json details, Tolerance tol) {
  details["name"] = name;
  details["passed"] = passed;
  details["tolerance"] = tolerance_json(tol);
  report["checks"].push_back(std::move(details));
}

inline int exit_status(const json& report) {
  for (const auto& c : report["checks"])
    if (!c["passed"].get<bool>()) return 2;
  return 0;
}

inline json measure_check_json(const MeasureCheck& chk, const ReactionNetwork& net) {
  json j{{"max_relative_residual", chk.max_relative},
         {"max_absolute_residual", chk.max_absolute},
         {"equations_checked", chk.checked},
         {"equations_skipped", chk.skipped}};
  if (chk.first_violation_state) {
    json w{{"x", state_json(*chk.first_violation_state)}};
    if (chk.first_violation_complex) w["y"] = net.complex_string(*chk.first_violation_complex);
    j["witness"] = w;
  }
  return j;
}

inline json witness_json(const CopyWitness& w, const ReactionNetwork& net) {
  json images = json::object();
  for (std::size_t j = 0; j < w.images.size(); ++j) images[net.complex_string(j)] = w.images[j];
  return json{{"offsets", w.offsets}, {"images", images}, {"max_relative_residual", w.max_relative}};
}

// ---------------------------------------------------------------------------
// Measures given on the command line

struct MeasureChoice {
  LatticeMeasure measure = LatticeMeasure::zero();
  json description;
};

/// Stationary law of the box truncation {0..N}^n with boundary exits dropped,
/// tabulated on the box (zero on transient states).
inline MeasureChoice solved_measure(const Model& model, std::int64_t box) {
  const SpecRates rates(model.net(), model.spec());
  const auto chain = build_box_truncation(model.net(), rates, box);
  const auto dec = decompose(chain, ExitPolicy::Reflect);
  const auto closed = dec.closed_classes();
  if (closed.size() != 1)
    throw InputError("stationary:" + std::to_string(box) + " needs exactly one closed class, found " +
                     std::to_string(closed.size()));
  const auto res = solve_stationary(chain, dec, closed[0]);
  std::map<LatticeState, double> table;
  for (const auto& x : chain.states()) table[x] = 0.0;
  for (const auto& [x, p] : as_state_map(chain, res)) table[x] = p;
  return {LatticeMeasure::tabulated(std::move(table)),
          json{{"form", "stationary"}, {"box", box}, {"boundary", "reflect"}, {"solver", res.method},
               {"residual", res.residual}}};
}

/// CSV with a header row: one column per species, then the value.
inline MeasureChoice table_measure(const Model& model, const std::string& path) {
  std::istringstream in(read_file(path));
  std::string line;
  if (!std::getline(in, line)) throw InputError(path + ": empty measure table");
  std::map<LatticeState, double> table;
  const std::size_t n = model.net().num_species();
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto vals = parse_reals(line, "table row");
    if (vals.size() != n + 1) throw InputError(path + ":" + std::to_string(line_no) + ": wrong column count");
    LatticeState x;
    for (std::size_t i = 0; i < n; ++i) {
      if (vals[i] < 0 || vals[i] != std::floor(vals[i]))
        throw InputError(path + ":" + std::to_string(line_no) + ": bad state");
      x.push_back(static_cast<std::int64_t>(vals[i]));
    }
    table[x] = vals[n];
  }
  try {
    return {LatticeMeasure::tabulated(std::move(table)), json{{"form", "table"}, {"file", path}}};
  } catch (const MeasureError& e) {
    throw InputError(path + ": " + e.what());
  }
}

/// "product:c=1,1", "product" (c from the complex balanced state),
/// "table:FILE" or "stationary:N".
inline MeasureChoice parse_measure(const Model& model, const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (kind == "product") {
    RealVector c;
    if (arg.empty()) {
      const auto cb = find_complex_balanced_state(model.net(), model.spec());
      if (!cb.found()) throw InputError("product measure without c needs a complex balanced state: " + to_string(cb.status));
      c = cb.c;
    } else {
      if (arg.rfind("c=", 0) != 0) throw InputError("expected product:c=...");
      c = parse_reals(arg.substr(2), "c");
    }
    if (c.size() != model.net().num_species()) throw InputError("c needs one entry per species");
    try {
      return {product_form_measure(c, model.spec().theta), json{{"form", "product"}, {"c", c}}};
    } catch (const MeasureError& e) {
      throw InputError(e.what());
    }
  }
  if (kind == "table" && !arg.empty()) return table_measure(model, arg);
  if (kind == "stationary" && !arg.empty()) {
    const auto v = parse_reals(arg, "box");
    if (v.size() != 1 || v[0] < 0 || v[0] != std::floor(v[0])) throw InputError("stationary:N needs an integer N");
    return solved_measure(model, static_cast<std::int64_t>(v[0]));
  }
  throw InputError("unknown measure '" + text + "' (use product[:c=..], table:FILE or stationary:N)");
}

// ---------------------------------------------------------------------------
// analyze

struct AnalyzeOptions {
  std::string file;
  bool auxiliary = false;
};

inline json analyze_network(const ReactionNetwork& net, const KineticsSpec& spec) {
  const auto d = deficiency(net);
  const auto link = linkage_classes(net);
  json classes = json::array();
  for (const auto& cls : link.classes) {
    std::vector<std::string> names;
    for (auto j : cls) names.push_back(net.complex_string(j));
    classes.push_back(names);
  }
  std::vector<std::string> complexes;
  for (std::size_t j = 0; j < net.num_complexes(); ++j) complexes.push_back(net.complex_string(j));
  json out{{"complexes", complexes},
           {"linkage_classes", classes},
           {"deficiency", {{"combinatorial", d.delta}, {"kernel", d.delta_kernel}}},
           {"weakly_reversible", is_weakly_reversible(net)},
           {"reversible", is_reversible(net)},
           {"digest", network_digest(net)}};
  if (is_weakly_reversible(net) && spec.all_linear()) {
    const auto cb = find_complex_balanced_state(net, spec);
    json s{{"status", to_string(cb.status)}};
    if (cb.found()) s["c"] = cb.c;
    out["complex_balanced_state"] = s;
  }
  return out;
}

inline int cmd_analyze(const AnalyzeOptions& opt, const GlobalOptions& g, json& report) {
  const auto model = load_model(opt.file);
  report = base_report("analyze", model);
  report["analysis"] = analyze_network(model.net(), model.spec());
  const auto d = deficiency(model.net());
  add_check(report, "deficiency_routes_agree", d.delta == d.delta_kernel,
            json{{"combinatorial", d.delta}, {"kernel", d.delta_kernel}}, Tolerance{0, 0});
  if (opt.auxiliary) {
    const auto aux = build_auxiliary_network(model.net());
    const auto aux_spec = auxiliary_kinetics(model.net(), model.spec());
    report["auxiliary"] = analyze_network(aux, aux_spec);
    const auto ad = deficiency(aux);
    add_check(report, "auxiliary_deficiency_zero", ad.delta == 0 && ad.delta_kernel == 0,
              json{{"delta", ad.delta}}, Tolerance{0, 0});
    add_check(report, "auxiliary_preserves_weak_reversibility",
              is_weakly_reversible(aux) == is_weakly_reversible(model.net()), json::object(), Tolerance{0, 0});
  }
  (void)g;
  return exit_status(report);
}

// ---------------------------------------------------------------------------
// stationary

struct StationaryOptions {
  std::string file;
  std::int64_t box = -1;
  std::string states_file;
  bool solve_all = false;
  std::string chain = "truncation";   // or "copies"
  std::string boundary = "strict";    // or "reflect"
  std::string csv_out;
};

inline std::vector<LatticeState> read_states(const std::string& path, std::size_t n) {
  std::istringstream in(read_file(path));
  std::string line;
  std::getline(in, line);   // header
  std::vector<LatticeState> out;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    out.push_back(parse_state(line, n, "state row"));
  }
  if (out.empty()) throw InputError(path + ": no states");
  return out;
}

inline std::string csv_header(const ReactionNetwork& net, const std::vector<std::string>& lead,
                              const std::vector<std::string>& tail) {
  std::string h;
  for (const auto& c : lead) h += c + ",";
  for (const auto& s : net.species()) h += s.name + ",";
  for (std::size_t i = 0; i < tail.size(); ++i) h += tail[i] + (i + 1 < tail.size() ? "," : "");
  return h + "\n";
}

inline std::string format_real(double v) { return crn::detail::format_real(v); }

inline int cmd_stationary(const StationaryOptions& opt, const GlobalOptions& g, json& report) {
  const auto model = load_model(opt.file);
  report = base_report("stationary", model);
  const SpecRates rates(model.net(), model.spec());
  if ((opt.box >= 0) == !opt.states_file.empty()) throw InputError("give exactly one of --box and --states");
  if (opt.boundary != "strict" && opt.boundary != "reflect") throw InputError("--boundary is strict or reflect");

  TruncatedChain chain;
  if (opt.chain == "copies") {
    if (opt.box < 0) throw InputError("--chain copies needs --box");
    const auto copies = enumerate_copies(model.net(), opt.box, false);
    if (copies.empty()) throw InputError("no copies fit in the box");
    chain = union_chain(model.net(), rates, copies);
    report["chain"] = {{"kind", "union-of-copies"}, {"box", opt.box}, {"copies", copies.size()}};
  } else if (opt.chain == "truncation") {
    chain = opt.box >= 0 ? build_box_truncation(model.net(), rates, opt.box)
                         : build_truncation(model.net(), rates, read_states(opt.states_file, model.net().num_species()));
    report["chain"] = {{"kind", "truncation"}, {"boundary", opt.boundary}};
    if (opt.box >= 0) report["chain"]["box"] = opt.box;
    else report["chain"]["states_file"] = opt.states_file;
  } else {
    throw InputError("--chain is truncation or copies");
  }
  report["chain"]["states"] = chain.size();
  report["chain"]["transitions"] = chain.num_transitions();

  const auto dec = decompose(chain, opt.boundary == "reflect" ? ExitPolicy::Reflect : ExitPolicy::Strict);
  const auto closed = dec.closed_classes();
  report["classes"] = {{"count", dec.classes.size()}, {"closed", closed.size()}};
  if (closed.empty()) {
    report["notes"].push_back("no closed class: every terminal class has a boundary exit; try --boundary reflect");
    add_check(report, "closed_class_exists", false, json::object(), Tolerance{0, 0});
    return exit_status(report);
  }
  std::vector<std::size_t> to_solve = closed;
  if (!opt.solve_all) to_solve.resize(1);

  std::string csv = csv_header(model.net(), {"class"}, {"pi"});
  json solved = json::array();
  const double resid_tol = 1e-10;
  for (auto c : to_solve) {
    const auto res = solve_stationary(chain, dec, c, resid_tol);
    std::vector<std::pair<LatticeState, double>> rows;
    for (std::size_t a = 0; a < res.states.size(); ++a) rows.emplace_back(chain.state(res.states[a]), res.pi[a]);
    std::sort(rows.begin(), rows.end());
    double mass = 0, mean_first = 0;
    for (const auto& [x, p] : rows) {
      csv += std::to_string(c);
      for (auto v : x) csv += "," + std::to_string(v);
      csv += "," + format_real(p) + "\n";
      mass += p;
      mean_first += p * static_cast<double>(x.empty() ? 0 : x[0]);
    }
    solved.push_back({{"class", c}, {"states", res.states.size()}, {"method", res.method},
                      {"residual", res.residual}, {"mass", mass}});
    add_check(report, "generator_residual_class_" + std::to_string(c), res.residual <= resid_tol,
              json{{"residual", res.residual}}, Tolerance{resid_tol, 0});
  }
  report["solved"] = solved;
  if (!opt.csv_out.empty()) {
    write_file(opt.csv_out, csv);
    report["csv"] = opt.csv_out;
  }
  (void)g;
  return exit_status(report);
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateOptions {
  std::string file;
  std::string x0;
  double t_end = 0;
  std::optional<std::uint64_t> seed;
  double burn_in = 0.1;
  std::size_t batches = 20;
  std::string hist_out;
};

inline std::uint64_t generate_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

inline int cmd_simulate(const SimulateOptions& opt, const GlobalOptions& g, json& report) {
  const auto model = load_model(opt.file);
  report = base_report("simulate", model);
  const auto x0 = parse_state(opt.x0, model.net().num_species(), "--x0");
  if (!(opt.t_end > 0)) throw InputError("--t-end must be positive");
  if (!(opt.burn_in >= 0 && opt.burn_in < 1)) throw InputError("--burn-in must be in [0, 1)");
  SsaOptions so;
  so.t_end = opt.t_end;
  so.seed = opt.seed ? *opt.seed : generate_seed();
  so.burn_in_fraction = opt.burn_in;
  so.num_batches = opt.batches;
  report["seeds"] = {{{"value", so.seed}, {"source", opt.seed ? "given" : "generated"}}};
  report["rng"] = "mt19937_64, uniform = (w >> 11) * 2^-53";
  const SpecRates rates(model.net(), model.spec());
  const auto res = simulate_ssa(model.net(), rates, x0, so);
  json est = json::object();
  for (std::size_t i = 0; i < model.net().num_species(); ++i) {
    const auto e = batch_estimate(res, i);
    est[model.net().species()[i].name] = {{"mean", e.mean}, {"std_error", e.std_error}};
  }
  report["simulation"] = {{"t_end", opt.t_end},         {"burn_in_fraction", opt.burn_in},
                          {"events", res.events},       {"absorbed", res.absorbed},
                          {"final_state", res.final_state}, {"final_time", res.final_time},
                          {"batches", opt.batches},     {"mean_counts", est},
                          {"distinct_states", res.occupancy.size()}};
  if (res.absorbed) report["notes"].push_back("absorbing state reached; the trajectory holds there until t_end");
  if (!opt.hist_out.empty()) {
    std::string csv = csv_header(model.net(), {}, {"time", "fraction"});
    for (const auto& [x, t] : res.occupancy) {
      for (auto v : x) csv += std::to_string(v) + ",";
      csv += format_real(t) + "," + format_real(t / res.recorded_time) + "\n";
    }
    write_file(opt.hist_out, csv);
    report["histogram"] = opt.hist_out;
  }
  (void)g;
  return exit_status(report);
}

// ---------------------------------------------------------------------------
// copies

struct CopiesOptions {
  std::string file;
  std::int64_t box = 0;
  bool injective_only = false;
  std::string measure;
  std::string csv_out;
  std::size_t limit = 1000;
};

inline int cmd_copies(const CopiesOptions& opt, const GlobalOptions& g, json& report) {
  const auto model = load_model(opt.file);
  report = base_report("copies", model);
  const auto link = linkage_classes(model.net());
  const SpecRates rates(model.net(), model.spec());
  std::optional<MeasureChoice> nu;
  if (!opt.measure.empty()) {
    nu = parse_measure(model, opt.measure);
    report["measure"] = nu->description;
  }
  std::string csv = "copy,class,";
  for (const auto& s : model.net().species()) csv += "h_" + s.name + ",";
  csv += "injective";
  if (nu) csv += ",active,node_balanced,max_relative_residual";
  csv += "\n";
  std::size_t count = 0, injective = 0, balanced = 0;
  json listed = json::array();
  for_each_copy(model.net(), link, opt.box, opt.injective_only, [&](const Copy& f) {
    const bool inj = f.is_injective();
    injective += inj;
    json entry{{"offsets", f.offsets()}, {"injective", inj}};
    std::string tail = inj ? "1" : "0";
    if (nu) {
      const auto nb = is_node_balanced(model.net(), rates, nu->measure, f, g.tol);
      const bool act = is_active_copy(model.net(), rates, nu->measure, f);
      balanced += nb.balanced;
      entry["active"] = act;
      entry["node_balanced"] = nb.balanced;
      entry["max_relative_residual"] = nb.max_relative;
      tail += std::string(",") + (act ? "1" : "0") + "," + (nb.balanced ? "1" : "0") + "," + format_real(nb.max_relative);
    }
    for (std::size_t c = 0; c < f.offsets().size(); ++c) {
      csv += std::to_string(count) + "," + std::to_string(c);
      for (auto v : f.offsets()[c]) csv += "," + std::to_string(v);
      csv += "," + tail + "\n";
    }
    if (listed.size() < opt.limit) listed.push_back(std::move(entry));
    ++count;
    return true;
  });
  report["copies"] = {{"box", opt.box}, {"injective_only", opt.injective_only}, {"count", count},
                      {"injective", injective}, {"listed", listed}};
  if (count > listed.size()) report["notes"].push_back("copy list truncated in the report; the CSV has all copies");
  if (nu) report["copies"]["node_balanced"] = balanced;
  if (!opt.csv_out.empty()) {
    write_file(opt.csv_out, csv);
    report["csv"] = opt.csv_out;
  }
  return exit_status(report);
}

// ---------------------------------------------------------------------------
// verify

struct VerifyOptions {
  std::string file;
  std::string theorem;   // any | single | translations | cube
  std::string measure;
  std::string c;
  std::int64_t box = 6;
  std::int64_t m1 = 4;
  bool full = false;
  std::int64_t side = 0;
  std::string offsets;   // "h1;h2;..." one comma list per linkage class
};

inline Copy parse_copy(const Model& model, const std::string& text) {
  const auto link = linkage_classes(model.net());
  if (text.empty()) return inclusion_copy(model.net(), link);
  std::vector<IntVector> offsets;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ';')) {
    IntVector h;
    for (double v : parse_reals(part, "offset")) {
      if (v != std::floor(v)) throw InputError("offsets must be integers");
      h.push_back(static_cast<std::int64_t>(v));
    }
    offsets.push_back(h);
  }
  try {
    return Copy(model.net(), link, offsets);
  } catch (const CopyError& e) {
    throw InputError(std::string("--offsets: ") + e.what());
  }
}

inline int cmd_verify(const VerifyOptions& opt, const GlobalOptions& g, json& report) {
  const auto model = load_model(opt.file);
  report = base_report("verify", model);
  report["theorem"] = opt.theorem;
  const auto& net = model.net();
  const SpecRates rates(net, model.spec());
  auto measure_or = [&](const std::string& fallback) {
    auto m = parse_measure(model, opt.measure.empty() ? fallback : opt.measure);
    report["measure"] = m.description;
    return m;
  };

  if (opt.theorem == "any") {
    const auto nu = measure_or(opt.c.empty() ? "product" : "product:c=" + opt.c);
    const auto rep = verify_any_kinetics(net, rates, nu.measure, opt.box, g.tol);
    json details{{"box", opt.box},
                 {"every_injective_copy_node_balanced", rep.every_injective_copy_balanced},
                 {"complex_balanced", rep.complex_balanced},
                 {"every_copy_node_balanced", rep.every_copy_balanced},
                 {"injective_copies", rep.injective_copies},
                 {"copies", rep.copies},
                 {"pairs_checked", rep.pairs_checked},
                 {"unevaluable", rep.unevaluable}};
    if (rep.injective_witness) details["injective_witness"] = witness_json(*rep.injective_witness, net);
    if (rep.copy_witness) details["copy_witness"] = witness_json(*rep.copy_witness, net);
    if (rep.pair_witness)
      details["pair_witness"] = {{"x", rep.pair_witness->x}, {"y", net.complex_string(rep.pair_witness->complex)},
                                 {"lhs", rep.pair_witness->residual.lhs}, {"rhs", rep.pair_witness->residual.rhs}};
    add_check(report, "three_way_agreement", rep.agree(), details, g.tol);
  } else if (opt.theorem == "single") {
    if (opt.c.empty()) throw InputError("--theorem single needs --c");
    const auto c = parse_reals(opt.c, "c");
    if (c.size() != net.num_species()) throw InputError("c needs one entry per species");
    const auto rep = verify_single_copy_theorem(net, model.spec(), c, opt.box, g.tol);
    json details{{"box", opt.box},
                 {"c", c},
                 {"balanced_copy_found", rep.balanced_copy.has_value()},
                 {"injective_copies_examined", rep.injective_copies_examined},
                 {"complex_balanced_on_box", rep.complex_balanced_on_box},
                 {"kappa_identity_holds", rep.kappa_balanced},
                 {"box_check", measure_check_json(rep.box_check, net)}};
    if (rep.balanced_copy) details["copy"] = witness_json(*rep.balanced_copy, net);
    else report["notes"].push_back("no active injective node-balanced copy found in the box");
    add_check(report, "single_copy_consistency", rep.consistent(), details, g.tol);
  } else if (opt.theorem == "translations") {
    const auto nu = measure_or(opt.c.empty() ? "product" : "product:c=" + opt.c);
    const auto f = parse_copy(model, opt.offsets);
    const auto rep = verify_translation_family_theorem(net, model.spec(), nu.measure, f,
                                                       opt.full ? TranslationMode::Full : TranslationMode::Probe,
                                                       opt.side, g.tol);
    json details{{"mode", opt.full ? "full" : "probe"},
                 {"copy_offsets", f.offsets()},
                 {"degree", rep.degree},
                 {"grid_max", rep.grid_max},
                 {"translates_checked", rep.translates_checked},
                 {"all_translates_node_balanced", rep.all_translates_balanced},
                 {"copy_active", rep.copy_active},
                 {"hypothesis_holds", rep.hypothesis_holds},
                 {"independent_complex_balance_check", rep.complex_balanced_check},
                 {"polynomial_identity_error", rep.polynomial_identity_error},
                 {"status", to_string(rep.status)}};
    if (rep.first_unbalanced_v) details["first_unbalanced_translate"] = *rep.first_unbalanced_v;
    if (rep.fitted_c) details["fitted_c"] = *rep.fitted_c;
    if (rep.status == TranslationStatus::HypothesisViolated)
      report["notes"].push_back(
          "hypothesis violated: the measure is not of the form c^x / x! under mass action, so node balance of the "
          "translates does not imply complex balance; no conclusion drawn");
    add_check(report, "translation_family_consistency", rep.status != TranslationStatus::TheoremInconsistent,
              details, g.tol);
  } else if (opt.theorem == "cube") {
    const auto nu = measure_or(opt.c.empty() ? "product" : "product:c=" + opt.c);
    const auto rep = verify_box_theorem(net, rates, nu.measure, opt.m1, g.tol);
    json details{{"m1", opt.m1},
                 {"enumeration_box", rep.enumeration_box},
                 {"stationary_on_cube", rep.stationary_on_cube},
                 {"stationary_check", measure_check_json(rep.stationary_check, net)},
                 {"positive_on_examined_copies", rep.positive_on_examined},
                 {"copies_examined", rep.copies_examined},
                 {"every_injective_copy_node_balanced", rep.condition_holds}};
    if (rep.witness) details["witness"] = witness_json(*rep.witness, net);
    if (rep.complex_balanced_on_cube) details["complex_balanced_on_cube"] = *rep.complex_balanced_on_cube;
    if (!rep.stationary_on_cube) report["notes"].push_back("measure is not stationary on the cube; premise not met");
    add_check(report, "stationary_premise", rep.stationary_on_cube, measure_check_json(rep.stationary_check, net),
              g.tol);
    add_check(report, "cube_consistency", !rep.condition_holds || rep.complex_balanced_on_cube.value_or(false),
              details, g.tol);
  } else {
    throw InputError("--theorem is any, single, translations or cube");
  }
  return exit_status(report);
}

// ---------------------------------------------------------------------------
// check

struct CheckOptions {
  std::string file;
  std::string measure;
  std::int64_t box = 10;
  std::string what = "both";   // stationary | complex-balance | both
};

inline int cmd_check(const CheckOptions& opt, const GlobalOptions& g, json& report) {
  const auto model = load_model(opt.file);
  report = base_report("check", model);
  if (opt.measure.empty()) throw InputError("--measure is required");
  if (opt.what != "stationary" && opt.what != "complex-balance" && opt.what != "both")
    throw InputError("--what is stationary, complex-balance or both");
  const auto nu = parse_measure(model, opt.measure);
  report["measure"] = nu.description;
  const SpecRates rates(model.net(), model.spec());
  const auto domain = box_states(model.net().num_species(), 0, opt.box);
  report["domain"] = {{"box", opt.box}, {"states", domain.size()}};
  if (opt.what != "complex-balance") {
    const auto chk = is_stationary_measure(model.net(), rates, nu.measure, domain, g.tol);
    add_check(report, "stationary", chk.ok && chk.skipped == 0, measure_check_json(chk, model.net()), g.tol);
  }
  if (opt.what != "stationary") {
    const auto chk = is_complex_balanced_measure(model.net(), rates, nu.measure, domain, g.tol);
    add_check(report, "complex_balanced", chk.ok && chk.skipped == 0, measure_check_json(chk, model.net()), g.tol);
  }
  for (const auto& c : report["checks"])
    if (c.value("equations_skipped", 0) > 0)
      report["notes"].push_back("measure not evaluable at some states needed by the domain; those equations fail");
  return exit_status(report);
}

}  // namespace crn::cli
