#pragma once

// Command-line front end. Exit codes: 0 all checks pass, 1 a mathematical
// check failed, 2 input or usage error.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "nij/io.hpp"
#include "nij/nij.hpp"

namespace nij::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
  std::string command;
  Backend backend = Backend::rational;
  std::string input;
  std::string output;
  std::string format = "json";
  std::uint64_t seed = 1;
  std::size_t count = 10;
  std::size_t random = 0;
  bool random_example = false;
  std::size_t m = 1;
  std::size_t jobs = 1;
  std::vector<int> preserve{1, 2, 3};
  std::string lambdas;
  std::string algebra;
  std::string alignment;
};

/// Input problems (unreadable files, bad JSON, wrong backend) map to exit 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline bool is_input_error(ErrorKind k) { return k == ErrorKind::parse_error || k == ErrorKind::backend_mismatch; }

inline std::uint64_t instance_seed(std::uint64_t seed, std::size_t index) {
  Rng rng = make_rng(seed, 0x5eedULL + index);
  return rng() >> 1;
}

inline Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError("malformed JSON in " + path + ": " + e.what());
  }
}

template <Field T>
InstanceData<T> load_instance(const std::string& path) {
  Json doc = read_json(path);
  if constexpr (std::same_as<T, Rational>) {
    if (instance_backend(doc) == Backend::floating)
      throw Error(ErrorKind::backend_mismatch, "instance holds float literals; rerun with --backend float");
  }
  return parse_instance<T>(doc);
}

template <Field T>
HNStructure<T> build_instance(const InstanceData<T>& d) {
  auto frame = build_lie_frame<T>(d.n, d.structure, d.metric);
  return build_hn(frame, Endo<T>(frame, d.j[0]), Endo<T>(frame, d.j[1]), Endo<T>(frame, d.j[2]));
}

template <Field T>
HNStructure<T> random_instance(std::uint64_t seed, std::size_t m) {
  if constexpr (std::same_as<T, double>) {
    return convert_hn<double>(random_hn<Rational>(seed, m));
  } else {
    return random_hn<Rational>(seed, m);
  }
}

// ---------------------------------------------------------------- text output

inline void render_text(const Json& j, std::ostream& out, const std::string& indent = "") {
  if (j.is_object() && j.contains("identity")) {
    out << indent << (j["zero"].get<bool>() ? "ok   " : "FAIL ") << j["identity"].get<std::string>()
        << "  max=" << (j["max_residual"].is_string() ? j["max_residual"].get<std::string>() : j["max_residual"].dump())
        << "\n";
    return;
  }
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_structured()) {
        out << indent << key << ":\n";
        render_text(value, out, indent + "  ");
      } else {
        out << indent << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
      }
    }
    return;
  }
  if (j.is_array()) {
    bool flat = std::none_of(j.begin(), j.end(), [](const Json& x) { return x.is_structured(); });
    if (flat) {
      out << indent << j.dump() << "\n";
      return;
    }
    for (const auto& x : j) {
      std::ostringstream item;
      render_text(x, item, indent + "  ");
      std::string text = item.str();
      text.replace(indent.size(), 2, "- ");
      out << text;
    }
    return;
  }
  out << indent << j.dump() << "\n";
}

inline void emit(const RunConfig& cfg, const Json& report, std::ostream& out) {
  if (cfg.format == "text") {
    render_text(report, out);
  } else {
    out << report.dump(2) << "\n";
  }
}

inline Json header(const RunConfig& cfg) {
  Json j;
  j["command"] = cfg.command;
  j["backend"] = std::string(to_string(cfg.backend));
  return j;
}

// ---------------------------------------------------------------- check

template <Field T>
int cmd_check(const RunConfig& cfg, std::ostream& out) {
  auto data = load_instance<T>(cfg.input);
  Json report = header(cfg);
  report["input"] = cfg.input;
  Json violations = Json::array();
  try {
    auto frame = build_lie_frame<T>(data.n, data.structure, data.metric);
    std::array<Endo<T>, 3> j{Endo<T>(frame, data.j[0]), Endo<T>(frame, data.j[1]), Endo<T>(frame, data.j[2])};
    for (const auto& v : validate_hn(frame, j)) {
      Json row{{"kind", std::string(to_string(v.kind))}, {"relation", v.relation}};
      if (v.alpha) {
        row["alpha"] = v.alpha;
        row["index"] = Json::array({v.index[0] + 1, v.index[1] + 1});
      }
      violations.push_back(std::move(row));
    }
  } catch (const Error& e) {
    if (is_input_error(e.kind())) throw;
    violations.push_back(Json{{"kind", std::string(to_string(e.kind()))}, {"relation", e.what()}});
  }
  report["valid"] = violations.empty();
  report["violations"] = violations;
  emit(cfg, report, out);
  return violations.empty() ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------- lemmas

template <Field T>
Json lemma_block(const HNStructure<T>& h, std::uint64_t triple_seed, std::size_t triples, bool& pass,
                 double& worst) {
  Json block;
  Rng rng = make_rng(triple_seed, 77);
  std::vector<ResidualRow<T>> l21;
  for (std::size_t t = 0; t < triples; ++t) {
    auto j = random_endo(rng, h.frame());
    auto k = random_endo(rng, h.frame());
    auto l = random_endo(rng, h.frame());
    l21.push_back(verify_lemma_2_1(j, k, l));
  }
  auto l31 = verify_lemma_3_1(h);
  for (const auto* rows : {&l21, &l31})
    for (const auto& r : *rows) {
      pass &= r.zero;
      worst = std::max(worst, magnitude(r.max_residual) / (1.0 + r.scale));
    }
  block["lemma_2_1"] = rows_to_json(l21);
  block["lemma_3_1"] = rows_to_json(l31);
  return block;
}

template <Field T>
int cmd_lemmas(const RunConfig& cfg, std::ostream& out) {
  Json report = header(cfg);
  report["seed"] = cfg.seed;
  bool pass = true;
  double worst = 0.0;
  Json instances = Json::array();
  if (!cfg.input.empty()) {
    auto h = build_instance(load_instance<T>(cfg.input));
    Json block = lemma_block(h, cfg.seed, cfg.count, pass, worst);
    block["source"] = cfg.input;
    instances.push_back(std::move(block));
  } else {
    if (cfg.random == 0) throw UsageError("lemmas needs an instance file or --random N");
    for (std::size_t i = 0; i < cfg.random; ++i) {
      const auto s = instance_seed(cfg.seed, i);
      auto h = random_instance<T>(s, cfg.m);
      Json block = lemma_block(h, s, cfg.count, pass, worst);
      block["source"] = Json{{"seed", s}, {"m", cfg.m}};
      instances.push_back(std::move(block));
    }
  }
  report["instances"] = std::move(instances);
  if constexpr (!ScalarTraits<T>::exact) {
    report["tolerance"] = kFloatTolerance;
    report["max_scaled_residual"] = worst;
  }
  report["pass"] = pass;
  emit(cfg, report, out);
  return pass ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------- classes

template <Field T>
Json assoc_six_json(const AssocSix<T>& six) {
  Json arr = Json::array();
  for (std::size_t i = 0; i < 6; ++i)
    arr.push_back(Json{{"tensor", AssocSix<T>::label(i)},
                       {"max_norm", scalar_to_json(six.max_norm[i])},
                       {"vanish", static_cast<bool>(six.vanish[i])}});
  return arr;
}

template <Field T>
Json class_json(const ClassReport& r) {
  return Json{{"G1(J1)", r.g1_j1},         {"W3(J2)", r.w3_j2},           {"W3(J3)", r.w3_j3},
              {"Kahler(J1)", r.kahler[0]}, {"Kahler(J2)", r.kahler[1]},   {"Kahler(J3)", r.kahler[2]},
              {"G1 via F1", r.g1_polarization}, {"G1 via 3-form", r.g1_three_form}};
}

/// Formula cross-checks, class membership and the six tensors for one structure.
template <Field T>
Json classes_block(const HNStructure<T>& h, bool& pass) {
  Json block;
  std::vector<ResidualRow<T>> rows;
  for (int a = 1; a <= 3; ++a) {
    for (auto& r : verify_en_formulas(h, a)) rows.push_back(std::move(r));
    for (auto& r : fa_prop_residuals(h, fundamental(h, a))) rows.push_back(std::move(r));
  }
  rows.push_back(verify_nn_nhat(h));
  pass &= all_zero(rows);

  auto six = assoc_six(h);  // throws on a Theorem 3.6 inconsistency
  auto classes = class_report(h);
  const bool w3_implies_g1 = !(classes.w3_j2 && classes.w3_j3) || classes.g1_j1;
  const bool g1_matches_assoc = classes.g1_j1 == static_cast<bool>(six.vanish[0]);
  pass &= w3_implies_g1 && g1_matches_assoc;

  block["classes"] = class_json<T>(classes);
  block["assoc_six"] = assoc_six_json(six);
  block["all_six_vanish"] = six.all_vanish();
  block["w3_j2_and_w3_j3_imply_g1_j1"] = w3_implies_g1;
  block["g1_iff_assoc_j1_vanishes"] = g1_matches_assoc;
  block["cross_checks"] = rows_to_json(rows);
  return block;
}

template <Field T>
int cmd_classes(const RunConfig& cfg, std::ostream& out) {
  auto h = build_instance(load_instance<T>(cfg.input));
  Json report = header(cfg);
  report["input"] = cfg.input;
  bool pass = true;
  report.update(classes_block(h, pass));
  report["pass"] = pass;
  emit(cfg, report, out);
  return pass ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------- torsion

struct Biconditional {
  bool applies = false;
  bool expected = false;
  bool consistent = true;
};

/// preserve={1}: exists iff {J1,J1}=0, and then unique.
/// two or more structures: exists iff all six associated tensors vanish.
template <Field T>
Biconditional torsion_biconditional(const std::vector<int>& preserve, const AssocSix<T>& six,
                                    const TorsionResult<T>& res) {
  Biconditional b;
  if (preserve == std::vector<int>{1}) {
    b.applies = true;
    b.expected = six.vanish[0];
    b.consistent = res.exists() == b.expected && (!res.exists() || res.status == TorsionStatus::unique);
  } else if (preserve.size() >= 2) {
    b.applies = true;
    b.expected = six.all_vanish();
    b.consistent = res.exists() == b.expected;
  }
  return b;
}

template <Field T>
Json torsion_block(const HNStructure<T>& h, const std::vector<int>& preserve, bool& pass) {
  TorsionProblem<T> problem(h, preserve);
  auto res = solve_skew_torsion(problem);
  std::vector<ResidualRow<T>> residuals;
  if (res.torsion) residuals = verify_connection(h, *res.torsion, problem.preserve);
  auto six = assoc_six(h);
  auto bic = torsion_biconditional(problem.preserve, six, res);
  pass &= all_zero(residuals) && bic.consistent;

  Json block = torsion_to_json(res, residuals);
  block["preserve"] = problem.preserve;
  Json flags = Json::array();
  for (bool v : six.vanish) flags.push_back(v);
  block["assoc_six_vanish"] = flags;
  block["biconditional"] = Json{{"applies", bic.applies}, {"expected_exists", bic.expected}, {"consistent", bic.consistent}};
  return block;
}

template <Field T>
int cmd_torsion(const RunConfig& cfg, std::ostream& out) {
  auto h = build_instance(load_instance<T>(cfg.input));
  Json report = header(cfg);
  report["input"] = cfg.input;
  bool pass = true;
  report.update(torsion_block(h, cfg.preserve, pass));
  report["pass"] = pass;
  emit(cfg, report, out);
  return pass ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------- example

inline std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  return parts;
}

inline AlgebraKind parse_algebra(const std::string& name) {
  for (auto k : kAlgebraKinds)
    if (to_string(k) == name) return k;
  std::string known;
  for (auto k : kAlgebraKinds) known += (known.empty() ? "" : ", ") + std::string(to_string(k));
  throw UsageError("unknown algebra '" + name + "' (one of " + known + ")");
}

/// Instances are generated exactly and then written on the requested backend.
template <Field T>
int cmd_example(const RunConfig& cfg, std::ostream& out) {
  Json doc;
  if (!cfg.lambdas.empty() && (cfg.random_example || !cfg.algebra.empty() || !cfg.alignment.empty()))
    throw UsageError("--lambdas cannot be combined with random-structure options");
  HNStructure<Rational> h = [&] {
    if (!cfg.lambdas.empty() || (cfg.algebra.empty() && cfg.alignment.empty() && !cfg.random_example)) {
      ExampleParams<Rational> p{{Rational(1), Rational(2), Rational(3), Rational(4)}};
      if (!cfg.lambdas.empty()) {
        auto parts = split_commas(cfg.lambdas);
        if (parts.size() != 4) throw UsageError("--lambdas needs four comma-separated values");
        for (std::size_t i = 0; i < 4; ++i) p.lambda[i] = parse_rational(parts[i]);
      }
      Json lam = Json::array();
      for (const auto& x : p.lambda) lam.push_back(x.get_str());
      doc["meta"] = Json{{"family", "example"}, {"lambda", lam}};
      return example_g4(p);
    }
    RandomHnOptions opts;
    if (!cfg.algebra.empty()) opts.algebra = parse_algebra(cfg.algebra);
    if (cfg.alignment == "aligned") opts.aligned = true;
    else if (cfg.alignment == "independent") opts.aligned = false;
    else if (!cfg.alignment.empty()) throw UsageError("--basis must be 'aligned' or 'independent'");
    RandomHnInfo info;
    auto r = random_hn<Rational>(cfg.seed, cfg.m, opts, &info);
    Json blocks = Json::array();
    for (auto k : info.blocks) blocks.push_back(std::string(to_string(k)));
    doc["meta"] = Json{{"family", "random"}, {"seed", cfg.seed}, {"m", cfg.m}, {"blocks", blocks},
                       {"basis", info.aligned ? "aligned" : "independent"}};
    return r;
  }();
  Json inst = [&] {
    if constexpr (std::same_as<T, double>) {
      return instance_to_json(convert_hn<double>(h), doc["meta"]);
    } else {
      return instance_to_json(h, doc["meta"]);
    }
  }();
  if (!cfg.output.empty()) {
    std::ofstream f(cfg.output);
    if (!f) throw UsageError("cannot write " + cfg.output);
    f << inst.dump(2) << "\n";
  } else {
    out << inst.dump(2) << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------- random-sweep

inline bool all_of_rows(const Json& j) {
  if (j.is_object() && j.contains("identity")) return j["zero"].get<bool>();
  if (j.is_structured())
    for (const auto& x : j)
      if (!all_of_rows(x)) return false;
  return true;
}

template <Field T>
Json sweep_one(std::uint64_t s, std::size_t m, bool& pass) {
  Json block;
  block["seed"] = s;
  try {
    RandomHnInfo info;
    HNStructure<T> h = [&] {
      if constexpr (std::same_as<T, double>) {
        return convert_hn<double>(random_hn<Rational>(s, m, {}, &info));
      } else {
        return random_hn<Rational>(s, m, {}, &info);
      }
    }();
    Json blocks = Json::array();
    for (auto k : info.blocks) blocks.push_back(std::string(to_string(k)));
    block["blocks"] = blocks;
    block["basis"] = info.aligned ? "aligned" : "independent";
    bool ok = true;
    double worst = 0.0;
    Json lemmas = lemma_block(h, s, 1, ok, worst);
    Json classes = classes_block(h, ok);
    Json t1 = torsion_block(h, {1}, ok);
    Json t123 = torsion_block(h, {1, 2, 3}, ok);
    block["lemmas_zero"] = all_of_rows(lemmas);
    block["all_six_vanish"] = classes["all_six_vanish"];
    block["classes"] = classes["classes"];
    block["cross_checks_zero"] = all_of_rows(classes["cross_checks"]);
    block["torsion_preserve_1"] = Json{{"status", t1["status"]}, {"consistent", t1["biconditional"]["consistent"]}};
    block["torsion_preserve_123"] = Json{{"status", t123["status"]}, {"consistent", t123["biconditional"]["consistent"]}};
    block["pass"] = ok;
    pass &= ok;
  } catch (const Error& e) {
    block["error"] = e.what();
    block["pass"] = false;
    pass = false;
  }
  return block;
}

template <Field T>
int cmd_random_sweep(const RunConfig& cfg, std::ostream& out) {
  const std::size_t count = cfg.count;
  std::vector<Json> blocks(count);
  std::vector<char> ok(count, 1);
  const std::size_t jobs = std::max<std::size_t>(1, std::min(cfg.jobs, count));
  {
    std::vector<std::jthread> workers;
    for (std::size_t w = 0; w < jobs; ++w)
      workers.emplace_back([&, w] {
        for (std::size_t i = w; i < count; i += jobs) {
          bool pass = true;
          blocks[i] = sweep_one<T>(instance_seed(cfg.seed, i), cfg.m, pass);
          ok[i] = pass;
        }
      });
  }
  Json report = header(cfg);
  report["seed"] = cfg.seed;
  report["m"] = cfg.m;
  report["count"] = count;
  std::size_t passed = static_cast<std::size_t>(std::count(ok.begin(), ok.end(), 1));
  report["passed"] = passed;
  report["instances"] = blocks;
  report["pass"] = passed == count;
  emit(cfg, report, out);
  return passed == count ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------- dispatch

template <Field T>
int dispatch(const RunConfig& cfg, std::ostream& out) {
  if (cfg.command == "check") return cmd_check<T>(cfg, out);
  if (cfg.command == "lemmas") return cmd_lemmas<T>(cfg, out);
  if (cfg.command == "classes") return cmd_classes<T>(cfg, out);
  if (cfg.command == "torsion") return cmd_torsion<T>(cfg, out);
  if (cfg.command == "example") return cmd_example<T>(cfg, out);
  if (cfg.command == "random-sweep") return cmd_random_sweep<T>(cfg, out);
  throw UsageError("unknown command " + cfg.command);
}

inline Backend parse_backend(const std::string& s) {
  if (s == "rational") return Backend::rational;
  if (s == "float") return Backend::floating;
  throw UsageError("backend must be 'rational' or 'float', got '" + s + "'");
}

/// Entry point shared by the binary and the tests. `args` excludes argv[0].
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Associated Nijenhuis tensors on almost hypercomplex HN-metric Lie groups", "nij"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  std::string backend;
  if (const char* env = std::getenv("NIJ_BACKEND")) backend = env;
  std::string preserve = "1,2,3";

  app.add_option("--backend", backend, "rational (default) or float; overrides NIJ_BACKEND");
  app.add_option("--format", cfg.format, "json or text")->check(CLI::IsMember({"json", "text"}));

  auto* check = app.add_subcommand("check", "validate an instance file");
  check->add_option("instance", cfg.input, "instance JSON")->required();

  auto* lemmas = app.add_subcommand("lemmas", "operator identities on an instance or random structures");
  lemmas->add_option("instance", cfg.input, "instance JSON");
  lemmas->add_option("--random", cfg.random, "number of random structures");
  lemmas->add_option("--seed", cfg.seed, "seed");
  lemmas->add_option("--m", cfg.m, "quaternionic dimension (n = 4m)");
  lemmas->add_option("--count", cfg.count, "random (J,K,L) triples per structure");

  auto* classes = app.add_subcommand("classes", "class membership, associated tensors and formula cross-checks");
  classes->add_option("instance", cfg.input, "instance JSON")->required();

  auto* torsion = app.add_subcommand("torsion", "skew-torsion connection existence");
  torsion->add_option("instance", cfg.input, "instance JSON")->required();
  torsion->add_option("--preserve", preserve, "comma-separated subset of 1,2,3");

  auto* example = app.add_subcommand("example", "write an instance JSON");
  example->add_option("--lambdas", cfg.lambdas, "p/q,p/q,p/q,p/q for the 4-dimensional family");
  example->add_option("--seed", cfg.seed, "seed for a random structure");
  example->add_option("--m", cfg.m, "quaternionic dimension of a random structure");
  example->add_option("--algebra", cfg.algebra, "random block algebra");
  example->add_option("--basis", cfg.alignment, "aligned or independent algebra basis change");
  example->add_flag("--random", cfg.random_example, "random structure instead of the family");
  example->add_option("--output,-o", cfg.output, "output path (stdout when omitted)");

  auto* sweep = app.add_subcommand("random-sweep", "full verification battery over random structures");
  sweep->add_option("--count", cfg.count, "number of structures");
  sweep->add_option("--seed", cfg.seed, "seed");
  sweep->add_option("--m", cfg.m, "quaternionic dimension");
  sweep->add_option("--jobs", cfg.jobs, "worker threads");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "nij: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    cfg.command = app.get_subcommands().front()->get_name();
    if (!backend.empty()) cfg.backend = parse_backend(backend);
    if (cfg.m == 0) throw UsageError("--m must be >= 1");
    if (cfg.command == "torsion") {
      cfg.preserve.clear();
      for (const auto& p : split_commas(preserve)) {
        if (p != "1" && p != "2" && p != "3") throw UsageError("--preserve entries must be 1, 2 or 3");
        cfg.preserve.push_back(std::stoi(p));
      }
      if (cfg.preserve.empty()) throw UsageError("--preserve must not be empty");
    }
    return cfg.backend == Backend::rational ? dispatch<Rational>(cfg, out) : dispatch<double>(cfg, out);
  } catch (const UsageError& e) {
    err << "nij: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "nij: " << e.what() << "\n";
    return is_input_error(e.kind()) ? kExitUsage : kExitCheckFailed;
  }
}

}  // namespace nij::cli
