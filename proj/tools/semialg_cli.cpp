// Command-line front end: one subcommand per module, JSON reports.
//
// Exit codes: 0 success, 1 malformed input, 2 theorem hypothesis not met,
// 3 a tightness check measured a different value, 4 the computation could
// not finish (budget, genericity or unsupported input).

#include <CLI11.hpp>

#include <cctype>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "semialg/act.hpp"
#include "semialg/bounds.hpp"
#include "semialg/constructions.hpp"
#include "semialg/entropy.hpp"
#include "semialg/errors.hpp"
#include "semialg/regions.hpp"
#include "semialg/relrank.hpp"
#include "semialg/varieties.hpp"

using namespace semialg;

namespace {

constexpr int kExitInput = 1;
constexpr int kExitHypothesis = 2;
constexpr int kExitMismatch = 3;
constexpr int kExitIncomplete = 4;

struct Config {
  std::uint64_t seed = 1;
  std::size_t resolution = 8;
  std::size_t max_resolution = 4096;
  std::uint64_t budget = std::uint64_t{1} << 22;
  unsigned threads = 1;
  std::string constant_profile;
  std::string out;
  std::string format = "json";
  std::string input;
  std::vector<std::string> args;
};

// A check failed after a complete report was produced.
struct Mismatch {
  Json report;
};

Json read_json_text(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError("malformed JSON in " + what + ": " + e.what());
  }
}

// A path, or inline JSON when the text starts with '{', '[' or '"'.
Json load_input(const std::string& source) {
  if (source.empty()) throw InputError("this subcommand needs --input");
  std::size_t first = source.find_first_not_of(" \t\n");
  if (first != std::string::npos && (source[first] == '{' || source[first] == '[' || source[first] == '"')) {
    return read_json_text(source, "inline input");
  }
  std::ifstream in(source);
  if (!in) throw InputError("cannot open input file '" + source + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return read_json_text(ss.str(), source);
}

bool is_integer_text(const std::string& s) {
  std::size_t i = (s.size() > 1 && s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  // "01" stays text, it is a bit string rather than a number.
  if (s[i] == '0' && s.size() > i + 1) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return s.size() < 19;
}

Json scalar_value(const std::string& s) {
  if (is_integer_text(s)) return Json(std::stoll(s));
  return Json(s);
}

// key=value words; a comma makes a list.
Json parse_assignments(const std::vector<std::string>& words) {
  Json j = Json::object();
  for (const auto& w : words) {
    auto eq = w.find('=');
    if (eq == std::string::npos || eq == 0) throw InputError("expected key=value, got '" + w + "'");
    std::string key = w.substr(0, eq), value = w.substr(eq + 1);
    if (value.find(',') != std::string::npos) {
      Json arr = Json::array();
      std::stringstream ss(value);
      std::string item;
      while (std::getline(ss, item, ',')) arr.push_back(scalar_value(item));
      j[key] = std::move(arr);
    } else {
      j[key] = scalar_value(value);
    }
  }
  return j;
}

Rational rational_param(const Json& params, const std::string& key, const Rational& fallback) {
  if (!params.contains(key)) return fallback;
  const Json& v = params[key];
  if (v.is_number_integer()) return Rational(BigInt(std::to_string(v.get<long long>())));
  if (v.is_string()) return parse_rational(v.get<std::string>());
  throw InputError("parameter '" + key + "' must be a rational");
}

unsigned long count_param(const Json& params, const std::string& key, std::optional<unsigned long> fallback = {}) {
  if (!params.contains(key)) {
    if (fallback) return *fallback;
    throw InputError("missing parameter '" + key + "'");
  }
  if (!json_is_count(params[key])) throw InputError("parameter '" + key + "' must be a non-negative integer");
  return params[key].get<unsigned long>();
}

BigInt big_param(const Json& params, const std::string& key) {
  if (!params.contains(key)) throw InputError("missing parameter '" + key + "'");
  const Json& v = params[key];
  if (v.is_number_integer()) return BigInt(std::to_string(v.get<long long>()));
  if (v.is_string()) {
    BigInt z;
    if (z.set_str(v.get<std::string>(), 10) != 0) throw InputError("parameter '" + key + "' must be an integer");
    return z;
  }
  throw InputError("parameter '" + key + "' must be an integer");
}

std::string text_param(const Json& params, const std::string& key, const std::string& fallback) {
  if (!params.contains(key)) return fallback;
  if (!params[key].is_string()) throw InputError("parameter '" + key + "' must be a string");
  return params[key].get<std::string>();
}

// Rejects unknown keys so typos do not pass silently.
void allow_keys(const Json& params, std::initializer_list<const char*> keys) {
  for (const auto& [k, v] : params.items()) {
    bool ok = false;
    for (const char* a : keys) ok = ok || k == a;
    if (!ok) throw InputError("unexpected parameter '" + k + "'");
  }
}

ConstantProfile load_profile(const Config& cfg) {
  if (cfg.constant_profile.empty()) return {};
  return constant_profile_from_json(load_input(cfg.constant_profile));
}

AtlasOptions atlas_options(const Config& cfg) {
  AtlasOptions o;
  o.budget = cfg.budget;
  o.threads = cfg.threads;
  return o;
}

VarietySpec variety_of(const Json& j) {
  if (j.is_string() && j.get<std::string>() == "unit_circle") return unit_circle();
  return variety_from_json(j);
}

std::vector<Interval> box_of(const Json& j) {
  std::vector<Interval> box;
  if (j.is_null()) return box;
  if (!j.is_array()) throw InputError("'box' must be an array of [lo, hi] pairs");
  for (const auto& iv : j) {
    auto v = rational_vector_from_json(iv);
    if (v.size() != 2 || v[0] >= v[1]) throw InputError("box entries must be [lo, hi] with lo < hi");
    box.push_back({v[0], v[1]});
  }
  return box;
}

// ------------------------------------------------------------ subcommands

Json run_bounds(const Config& cfg, Json& params) {
  ConstantProfile profile = load_profile(cfg);
  std::vector<std::pair<std::string, Json>> requests;
  bool batch = false;
  if (!cfg.input.empty()) {
    Json in = load_input(cfg.input);
    batch = in.is_array();
    if (!batch) in = Json::array({in});
    for (const auto& r : in) {
      if (!r.is_object() || !r.contains("theorem_id") || !r["theorem_id"].is_string()) {
        throw InputError("bound request needs a 'theorem_id' string");
      }
      requests.emplace_back(r["theorem_id"].get<std::string>(), r.value("params", Json::object()));
    }
    params = Json{{"requests", in}};
  } else {
    if (cfg.args.empty()) throw InputError("bounds needs a theorem id or --input");
    std::vector<std::string> rest(cfg.args.begin() + 1, cfg.args.end());
    requests.emplace_back(cfg.args[0], parse_assignments(rest));
    params = Json{{"theorem_id", requests[0].first}, {"params", requests[0].second}};
  }
  params["constant_profile"] = to_json(profile);
  Json reports = Json::array();
  for (const auto& [id, p] : requests) reports.push_back(to_json(compute_bound(id, p, profile)));
  return batch ? reports : reports[0];
}

Json run_enumerate(const Config& cfg, Json& params) {
  Json in = load_input(cfg.input);
  if (!in.is_object() || !in.contains("variety") || !in.contains("family")) {
    throw InputError("enumerate input needs 'variety' and 'family'");
  }
  params = in;
  params["resolution"] = cfg.resolution;
  params["max_resolution"] = cfg.max_resolution;
  RegionAtlas a = enumerate_sign_conditions(poly_family_from_json(in["family"]), variety_of(in["variety"]),
                                            box_of(in.value("box", Json())), cfg.resolution, cfg.seed,
                                            atlas_options(cfg));
  a = refine_until_converged(std::move(a), cfg.max_resolution);
  return to_json(a);
}

Json run_patterns(const Config& cfg, Json& params) {
  Json in = load_input(cfg.input);
  if (!in.is_object() || !in.contains("variety") || !in.contains("family")) {
    throw InputError("patterns input needs 'variety' and 'family'");
  }
  params = in;
  PatternMap pm = enumerate_patterns(poly_family_from_json(in["family"]), variety_of(in["variety"]));
  return to_json(pm);
}

Json run_tightness(const Config& cfg, Json& params, bool check) {
  if (cfg.args.empty()) throw InputError("tightness needs a family: ovals or subspaces");
  const std::string family = cfg.args[0];
  Json kv = parse_assignments(std::vector<std::string>(cfg.args.begin() + 1, cfg.args.end()));
  TightInstance inst;
  if (family == "ovals") {
    allow_keys(kv, {"D", "s", "d", "contraction"});
    inst = ovals_family(count_param(kv, "D"), count_param(kv, "s"), count_param(kv, "d"),
                        rational_param(kv, "contraction", Rational(1) / 64));
  } else if (family == "subspaces") {
    allow_keys(kv, {"D", "p", "s", "d", "N"});
    inst = subspace_family(count_param(kv, "D"), count_param(kv, "p"), count_param(kv, "s"), count_param(kv, "d"),
                           count_param(kv, "N"), cfg.seed);
  } else {
    throw InputError("unknown tightness family '" + family + "'");
  }
  params = Json{{"family", family}, {"params", kv}, {"check", check}};
  Json result{{"instance", to_json(inst)}, {"expected_total", json_integer(inst.expected_total)}};
  if (check) {
    TightnessResult r = check_tightness(inst, cfg.max_resolution, atlas_options(cfg));
    result["check"] = to_json(r);
    result["verdict"] = r.equal ? "PASS" : "FAIL";
    // A mismatch is reported in full and then signalled by the exit code.
    if (!r.equal) throw Mismatch{result};
  }
  return result;
}

Json run_entropy(const Config& cfg, Json& params) {
  Json kv = parse_assignments(cfg.args);
  allow_keys(kv, {"circle", "eps", "n", "D", "p", "K", "C"});
  PointCloud cloud;
  if (!cfg.input.empty()) {
    cloud = point_cloud_from_json(load_input(cfg.input));
  } else {
    cloud = circle_cloud(count_param(kv, "circle", 2000));
  }
  std::vector<Rational> eps;
  if (!kv.contains("eps")) {
    eps = {Rational(1) / 10};
  } else if (kv["eps"].is_array()) {
    eps = rational_vector_from_json(kv["eps"]);
  } else {
    eps = {rational_param(kv, "eps", 0)};
  }
  const unsigned long n = count_param(kv, "n", 1);
  const Rational C = rational_param(kv, "C", 1);
  BigInt K = kv.contains("K") ? big_param(kv, "K")
                              : zk_default_components(count_param(kv, "D", 2), count_param(kv, "p", 1));
  params = kv;
  params["points"] = cloud.size();
  params["ambient_dim"] = cloud.ambient_dim();
  params["K"] = json_integer(K);
  Json rows = Json::array();
  for (const auto& e : eps) {
    Cover c = greedy_cover(cloud, e);
    double bound = zk_bound(n, K, cloud.ambient_dim(), e, C);
    double measured = c.count() == 0 ? 0.0 : log2_of(BigInt(static_cast<unsigned long>(c.count())));
    rows.push_back(Json{{"eps", to_string(e)},
                        {"count", c.count()},
                        {"log2_count", measured},
                        {"zk_bound", bound},
                        {"entropy_bound", entropy_bound(count_param(kv, "p", 1), count_param(kv, "D", 2),
                                                        cloud.ambient_dim(), e, C)},
                        {"holds", measured <= bound}});
  }
  return Json{{"covers", rows}};
}

std::vector<Rational> parse_point(const std::string& text) {
  std::vector<Rational> x;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) x.push_back(parse_rational(item));
  return x;
}

Json run_act(const Config& cfg, Json& params) {
  if (cfg.args.empty()) throw InputError("act needs a mode: simulate, extract or lower-bound");
  const std::string mode = cfg.args[0];
  Json kv = parse_assignments(std::vector<std::string>(cfg.args.begin() + 1, cfg.args.end()));
  params = Json{{"mode", mode}, {"params", kv}};
  if (mode == "lower-bound") {
    allow_keys(kv, {"b0", "D", "p"});
    return Json{{"height", lower_bound_height(big_param(kv, "b0"), count_param(kv, "D"), count_param(kv, "p"))}};
  }
  ActTree tree = act_tree_from_json(load_input(cfg.input));
  params["tree"] = to_json(tree);
  if (mode == "simulate") {
    allow_keys(kv, {"x"});
    if (!kv.contains("x")) throw InputError("simulate needs x=v1,v2,...");
    std::string text = kv["x"].is_array() ? "" : (kv["x"].is_string() ? kv["x"].get<std::string>() : kv["x"].dump());
    std::vector<Rational> x;
    if (kv["x"].is_array()) {
      x = rational_vector_from_json(kv["x"]);
    } else {
      x = parse_point(text);
    }
    return to_json(simulate(tree, x));
  }
  if (mode == "extract") {
    allow_keys(kv, {"leaf"});
    Json systems = Json::array();
    if (kv.contains("leaf")) {
      systems.push_back(to_json(leaf_system(tree, count_param(kv, "leaf"))));
    } else {
      for (auto l : tree.leaves()) systems.push_back(to_json(leaf_system(tree, l)));
    }
    return Json{{"leaf_systems", systems}, {"height", tree.height()}};
  }
  throw InputError("unknown act mode '" + mode + "'");
}

Json run_rank(const Config& cfg, Json& params) {
  const std::string mode = cfg.args.empty() ? "solve" : cfg.args[0];
  std::vector<std::string> rest = cfg.args.empty() ? std::vector<std::string>{}
                                                   : std::vector<std::string>(cfg.args.begin() + 1, cfg.args.end());
  Json kv = parse_assignments(rest);
  params = Json{{"mode", mode}, {"params", kv}};
  if (mode == "solve") {
    Json in = load_input(cfg.input);
    RankInstance inst = rank_instance_from_json(in);
    if (kv.contains("budget")) inst.budget = count_param(kv, "budget");
    inst.max_elements = cfg.budget;
    std::vector<Vector> targets;
    if (in.contains("targets")) {
      for (const auto& t : in["targets"]) targets.push_back(rational_vector_from_json(t));
    }
    params["instance"] = to_json(inst);
    Json per = Json::array();
    for (const auto& t : targets) {
      auto r = relative_rank(inst, t);
      per.push_back(Json{{"target", to_json(std::span<const Rational>(t))},
                         {"rank", r ? Json(*r) : Json("exceeds budget")}});
    }
    auto set_rank = rank_of_set(inst, targets);
    return Json{{"ranks", per}, {"set_rank", set_rank ? Json(*set_rank) : Json("exceeds budget")}};
  }
  if (mode == "bound") {
    allow_keys(kv, {"card", "p", "D", "s", "delta_deg", "kind", "c"});
    const std::string kind = text_param(kv, "kind", "vector");
    if (kind != "vector" && kind != "algebra") throw InputError("kind must be vector or algebra");
    RankBound b = rank_lower_bound(big_param(kv, "card"), count_param(kv, "p"), count_param(kv, "D"),
                                   count_param(kv, "s"), count_param(kv, "delta_deg"),
                                   kind == "vector" ? RankBoundMode::vector : RankBoundMode::algebra,
                                   rational_param(kv, "c", 1));
    return Json{{"value", b.value}, {"floor", json_integer(b.floor)}};
  }
  if (mode == "quantum") {
    allow_keys(kv, {"n", "p", "D", "t", "C", "variant"});
    const std::string variant = text_param(kv, "variant", "stringent");
    if (variant != "stringent" && variant != "relaxed") throw InputError("variant must be stringent or relaxed");
    double v = quantum_bound(count_param(kv, "n"), count_param(kv, "p"), big_param(kv, "D"), count_param(kv, "t", 0),
                             rational_param(kv, "C", 1),
                             variant == "stringent" ? QuantumVariant::stringent : QuantumVariant::relaxed);
    return Json{{"value", v}};
  }
  if (mode == "uf") {
    allow_keys(kv, {"n", "table"});
    const unsigned long n = count_param(kv, "n");
    std::string table = kv.contains("table") ? (kv["table"].is_string() ? kv["table"].get<std::string>()
                                                                         : kv["table"].dump())
                                             : "";
    std::vector<bool> bits;
    for (char ch : table) {
      if (ch != '0' && ch != '1') throw InputError("table must be a string of 0 and 1");
      bits.push_back(ch == '1');
    }
    PermutationMatrix u = build_uf(static_cast<unsigned>(n), bits);
    return Json{{"matrix", u}, {"size", u.size()}};
  }
  throw InputError("unknown rank mode '" + mode + "'");
}

Json run_validate(const Config& cfg, Json& params) {
  Json in = load_input(cfg.input);
  params = Json{{"variety", in}};
  return to_json(validate(variety_of(in), cfg.seed));
}

// Flat reports only: one row per bound report.
std::string bounds_csv(const Json& result) {
  Json rows = result.is_array() ? result : Json::array({result});
  std::ostringstream out;
  out << "theorem_id,params,value,exact,constant_parameterized\n";
  for (const auto& r : rows) {
    std::string p;
    for (const auto& [k, v] : r["params"].items()) {
      if (!p.empty()) p += ';';
      p += k + "=" + (v.is_string() ? v.get<std::string>() : v.dump());
    }
    std::string value = r["value"].is_string() ? r["value"].get<std::string>() : r["value"].dump();
    out << r["theorem_id"].get<std::string>() << ",\"" << p << "\"," << value << ","
        << r["exact"].get<std::string>() << "," << (r["constant_parameterized"].get<bool>() ? "true" : "false")
        << "\n";
  }
  return out.str();
}

Json envelope(const std::string& sub, const Config& cfg, const Json& params, const Json& result) {
  return Json{{"tool", "semialg"},  {"version", SEMIALG_VERSION}, {"subcommand", sub},
              {"seed", cfg.seed},   {"params", params},           {"result", result}};
}

int emit(const std::string& text, const Config& cfg) {
  if (cfg.out.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(cfg.out);
  if (!f) {
    std::cerr << "error: cannot write '" << cfg.out << "'\n";
    return kExitInput;
  }
  f << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sign conditions, components and rank bounds on small polynomial families"};
  app.require_subcommand(1);
  Config cfg;
  bool check = false;
  app.add_option("--seed", cfg.seed, "Seed for every generic choice")->capture_default_str();
  app.add_option("--resolution", cfg.resolution, "Initial sampling resolution")
      ->check(CLI::Range(std::size_t{8}, std::size_t{1} << 20))
      ->capture_default_str();
  app.add_option("--max-resolution", cfg.max_resolution, "Refinement stops with an error beyond this")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--budget", cfg.budget, "Node or element budget")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--threads", cfg.threads, "Worker threads for grid sampling")->check(CLI::PositiveNumber);
  app.add_option("--constant-profile", cfg.constant_profile, "JSON object of positive constants");
  app.add_option("--out", cfg.out, "Write the report here instead of stdout");
  app.add_option("--format", cfg.format, "json or csv (csv for bounds only)")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  std::map<std::string, CLI::App*> subs;
  auto add = [&](const std::string& name, const std::string& help, bool takes_args) {
    CLI::App* s = app.add_subcommand(name, help);
    s->add_option("--input,-i", cfg.input, "Input file, or inline JSON");
    if (takes_args) s->add_option("args", cfg.args, "Positional words and key=value parameters");
    subs[name] = s;
    return s;
  };
  add("bounds", "Evaluate a bound: ID key=value... or --input request(s)", true);
  add("enumerate", "Refined sign-condition enumeration on a variety", false);
  add("patterns", "Exact zero-nonzero patterns on a curve", false);
  add("tightness", "Tightness family: ovals D= s= d= | subspaces D= p= s= d= N=", true)
      ->add_flag("--check", check, "Run the enumeration and compare");
  add("entropy", "Greedy covers of a point cloud against the entropy bound", true);
  add("act", "Computation trees: simulate x=... | extract [leaf=] | lower-bound b0= D= p=", true);
  add("rank", "Relative rank: solve | bound | quantum | uf", true);
  add("validate", "Check a variety specification", false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInput;
  }

  std::string sub;
  for (const auto& [name, s] : subs)
    if (s->parsed()) sub = name;

  Json params = Json::object();
  try {
    if (cfg.format == "csv" && sub != "bounds") throw InputError("csv output is available for bounds only");
    Json result;
    if (sub == "bounds") {
      result = run_bounds(cfg, params);
    } else if (sub == "enumerate") {
      result = run_enumerate(cfg, params);
    } else if (sub == "patterns") {
      result = run_patterns(cfg, params);
    } else if (sub == "tightness") {
      result = run_tightness(cfg, params, check);
    } else if (sub == "entropy") {
      result = run_entropy(cfg, params);
    } else if (sub == "act") {
      result = run_act(cfg, params);
    } else if (sub == "rank") {
      result = run_rank(cfg, params);
    } else {
      result = run_validate(cfg, params);
    }
    if (cfg.format == "csv") return emit(bounds_csv(result), cfg);
    return emit(envelope(sub, cfg, params, result).dump(2) + "\n", cfg);
  } catch (const Mismatch& m) {
    int rc = emit(envelope(sub, cfg, params, m.report).dump(2) + "\n", cfg);
    return rc != 0 ? rc : kExitMismatch;
  } catch (const HypothesisError& e) {
    std::cerr << "hypothesis not satisfied: " << e.what() << "\n";
    return kExitHypothesis;
  } catch (const InputError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInput;
  } catch (const Json::exception& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::runtime_error& e) {
    std::cerr << "could not complete: " << e.what() << "\n";
    return kExitIncomplete;
  } catch (const std::logic_error& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInput;
  }
}
