// Acceptance run: one PASS/FAIL line per criterion. Exact criteria use the
// rational backend with zero as the target; float reruns use the scaled
// tolerance |r| <= 1e-9 * (1 + scale).

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "support.hpp"

using namespace nij;
using Q = Rational;

namespace {

constexpr double kFloatTol = 1e-9;
constexpr double kExampleSeconds = 1.0;
constexpr double kDim8SolveSeconds = 5.0;

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Tally {
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string first_failure;
  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok && failures++ == 0) first_failure = what;
  }
  bool ok() const { return failures == 0; }
};

// Cross-cutting bookkeeping: every frame built and every six-tensor evaluation.
Tally frames_seen;
Tally theorem_36;

void record_frame(const LieFrame<Q>& f, const std::string& tag) {
  auto [torsion, compat] = test::levi_civita_defects(f);
  frames_seen.expect(torsion == 0 && compat == 0, tag);
}

std::optional<AssocSix<Q>> six_checked(const HNStructure<Q>& h, const std::string& tag) {
  try {
    auto six = assoc_six(h);
    theorem_36.expect(true, tag);
    return six;
  } catch (const Error& e) {
    theorem_36.expect(false, tag + ": " + e.what());
    return std::nullopt;
  }
}

HNStructure<Q> random_structure(std::uint64_t seed, std::size_t m, std::optional<bool> aligned = std::nullopt) {
  auto h = random_hn<Q>(seed, m, RandomHnOptions{std::nullopt, aligned});
  record_frame(h.frame(), "random_hn seed " + std::to_string(seed));
  return h;
}

bool float_rows_ok(const std::vector<ResidualRow<double>>& rows, double& worst) {
  bool ok = true;
  for (const auto& r : rows) {
    const double scaled = std::abs(r.max_residual) / (1.0 + r.scale);
    worst = std::max(worst, scaled);
    ok &= r.zero && std::abs(r.max_residual) <= kFloatTol * (1.0 + r.scale);
  }
  return ok;
}

int report(int id, const std::string& name, const Tally& t, const std::string& detail) {
  std::printf("%s [%d] %s: %zu checks, %zu failures; %s%s%s\n", t.ok() ? "PASS" : "FAIL", id, name.c_str(), t.checks,
              t.failures, detail.c_str(), t.ok() ? "" : "; first failure: ", t.first_failure.c_str());
  std::fflush(stdout);
  return t.ok() ? 0 : 1;
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::vector<ExampleParams<Q>> example_family() {
  std::vector<ExampleParams<Q>> out{{{Q(1), Q(2), Q(3), Q(4)}}, {{Q(1), Q(0), Q(0), Q(0)}}, {{Q(0), Q(1), Q(0), Q(0)}}};
  Rng rng = make_rng(2024, 5);
  for (int i = 0; i < 50; ++i) out.push_back(random_lambda<Q>(rng));
  return out;
}

std::string lambda_str(const ExampleParams<Q>& p) {
  std::string s = "lambda=(";
  for (std::size_t i = 0; i < 4; ++i) s += (i ? "," : "") + p.lambda[i].get_str();
  return s + ")";
}

// [1] example family: structure valid, six tensors vanish, class membership
int criterion_example() {
  Tally t;
  double slowest = 0.0;
  for (const auto& p : example_family()) {
    const auto t0 = Clock::now();
    const std::string tag = lambda_str(p);
    try {
      auto h = example_g4(p);
      record_frame(h.frame(), tag);
      auto six = six_checked(h, tag);
      t.expect(six && six->all_vanish(), tag + " six tensors");
      for (std::size_t i = 0; six && i < 6; ++i) t.expect(six->max_norm[i] == 0, tag + " " + AssocSix<Q>::label(i));
      auto c = class_report(h);
      t.expect(c.g1_j1 && c.w3_j2 && c.w3_j3, tag + " classes");
    } catch (const Error& e) {
      t.expect(false, tag + ": " + e.what());
    }
    const double dt = seconds_since(t0);
    slowest = std::max(slowest, dt);
    t.expect(dt < kExampleSeconds, tag + " runtime " + fmt("%.3f s", dt));
  }
  return report(1, "example family (3 fixed + 50 random lambda)", t,
                "slowest instance " + fmt("%.3f s", slowest) + " (limit 1 s)");
}

// [2] Lemma 2.1 on random triples, Lemma 3.1 on random structures, float rerun
int criterion_lemmas() {
  Tally t;
  double worst = 0.0;
  for (std::uint64_t fs = 1; fs <= 20; ++fs) {
    auto f = random_lie_frame<Q>(fs, 1 + fs % 2);
    record_frame(f, "frame " + std::to_string(fs));
    auto fd = convert_frame<double>(f);
    Rng rng = make_rng(fs, 21);
    for (int k = 0; k < 10; ++k) {
      auto j = random_endo(rng, f), kk = random_endo(rng, f), l = random_endo(rng, f);
      auto row = verify_lemma_2_1(j, kk, l);
      t.expect(row.zero && row.max_residual == 0, "lemma 2.1 frame " + std::to_string(fs));
      Endo<double> jd(fd, convert_matrix<double>(j.matrix())), kd(fd, convert_matrix<double>(kk.matrix())),
          ld(fd, convert_matrix<double>(l.matrix()));
      t.expect(float_rows_ok({verify_lemma_2_1(jd, kd, ld)}, worst), "float lemma 2.1 frame " + std::to_string(fs));
    }
  }
  auto structures = [&](std::size_t m, std::uint64_t first, std::uint64_t count) {
    for (std::uint64_t s = first; s < first + count; ++s) {
      auto h = random_structure(s, m);
      six_checked(h, "lemma 3.1 seed " + std::to_string(s));
      auto rows = verify_lemma_3_1(h);
      t.expect(rows.size() == 10, "ten relations");
      for (const auto& r : rows) t.expect(r.zero && r.max_residual == 0, r.label + " seed " + std::to_string(s));
      t.expect(float_rows_ok(verify_lemma_3_1(convert_hn<double>(h)), worst), "float lemma 3.1 seed " + std::to_string(s));
    }
  };
  structures(1, 1000, 100);
  structures(2, 2000, 20);
  return report(2, "lemma suite (200 triples / 20 frames; 100 dim-4 + 20 dim-8 structures)", t,
                "float max scaled residual " + fmt("%.2e", worst) + " (limit 1e-9)");
}

// [3] operator identities on random draws
int criterion_operators() {
  Tally t;
  for (std::uint64_t s = 1; s <= 200; ++s) {
    auto f = random_lie_frame<Q>(5000 + s, 1);
    record_frame(f, "operator frame " + std::to_string(s));
    Rng rng = make_rng(s, 33);
    auto j = random_endo(rng, f), k = random_endo(rng, f);
    auto sten = random_tensor12(rng, f);
    const auto id = Endo<Q>::identity(f);
    const std::string tag = " draw " + std::to_string(s);
    t.expect(assoc_nijenhuis_pair(j, id).is_zero() && assoc_nijenhuis_pair(id, k).is_zero(), "{J,I}=0" + tag);
    t.expect(assoc_nijenhuis_pair(j, k) == assoc_nijenhuis_pair(k, j), "{J,K}={K,J}" + tag);
    t.expect(barwedge_right(barwedge_right(sten, j), k) - barwedge_right(barwedge_right(sten, k), j) ==
                 barwedge_right(sten, j * k) - barwedge_right(sten, k * j),
             "right composition" + tag);
    t.expect(barwedge_right(barwedge_left(j, sten), k) == barwedge_left(j, barwedge_right(sten, k)),
             "left-right association" + tag);
  }
  return report(3, "operator identities ({J,I}=0, symmetry, two barwedge laws; 200 draws each)", t, "exact");
}

// [4] expansions through F, the cyclic relation, G1 predicate agreement
int criterion_cross_checks() {
  Tally t;
  auto run = [&](const HNStructure<Q>& h, const std::string& tag) {
    try {
      for (int a = 1; a <= 3; ++a)
        for (const auto& r : verify_en_formulas(h, a)) t.expect(r.zero && r.max_residual == 0, r.label + " " + tag);
      auto nn = verify_nn_nhat(h);
      t.expect(nn.zero && nn.max_residual == 0, nn.label + " " + tag);
      auto c = class_report(h);
      t.expect(c.g1_polarization == c.g1_three_form, "G1 agreement " + tag);
      six_checked(h, tag);
    } catch (const Error& e) {
      t.expect(false, tag + ": " + e.what());
    }
  };
  for (const auto& p : example_family()) {
    auto h = example_g4(p);
    record_frame(h.frame(), lambda_str(p));
    run(h, lambda_str(p));
  }
  for (std::uint64_t s = 3000; s < 3100; ++s) run(random_structure(s, 1), "seed " + std::to_string(s));
  return report(4, "F-expansion cross-checks and G1 agreement (example family + 100 random)", t, "exact");
}

// [6] solver biconditionals
int criterion_solver() {
  Tally t;
  double slowest8 = 0.0;
  std::size_t nonvanishing = 0, j1_only = 0;
  for (const auto& p : example_family()) {
    auto h = example_g4(p);
    const auto tag = lambda_str(p);
    for (const auto& pres : {std::vector<int>{1}, std::vector<int>{1, 2, 3}}) {
      auto res = solve_skew_torsion(TorsionProblem<Q>(h, pres));
      t.expect(res.status == TorsionStatus::unique, tag + " exists and unique");
      if (res.torsion) t.expect(all_zero(verify_connection(h, *res.torsion, pres)), tag + " verify_connection");
    }
  }
  auto random_case = [&](std::uint64_t s, std::size_t m, std::optional<bool> aligned) {
    auto h = random_structure(s, m, aligned);
    const std::string tag = "seed " + std::to_string(s) + " m=" + std::to_string(m);
    auto six = six_checked(h, tag);
    if (!six || six->all_vanish()) return;
    ++nonvanishing;
    const auto t0 = Clock::now();
    auto one = solve_skew_torsion(TorsionProblem<Q>(h, {1}));
    auto all = solve_skew_torsion(TorsionProblem<Q>(h, {1, 2, 3}));
    const double per_solve = seconds_since(t0) / 2;
    if (m == 2) {
      slowest8 = std::max(slowest8, per_solve);
      t.expect(per_solve < kDim8SolveSeconds, tag + " runtime " + fmt("%.2f s", per_solve));
    }
    t.expect(one.exists() == six->vanish[0], tag + " preserve {1} biconditional");
    if (one.exists()) {
      ++j1_only;
      t.expect(one.status == TorsionStatus::unique, tag + " preserve {1} nullspace");
      t.expect(all_zero(verify_connection(h, *one.torsion, {1})), tag + " preserve {1} verify_connection");
    }
    t.expect(!all.exists(), tag + " preserve {1,2,3} none");
  };
  for (std::uint64_t s = 4000; s < 4024; ++s) random_case(s, 1, s % 3 == 0);
  for (std::uint64_t s = 4100; s < 4106; ++s) random_case(s, 2, s % 2 == 0);
  t.expect(nonvanishing >= 20, "at least 20 non-vanishing random instances, got " + std::to_string(nonvanishing));
  return report(6, "torsion solver biconditionals", t,
                std::to_string(nonvanishing) + " non-vanishing random instances (" + std::to_string(j1_only) +
                    " with {J1,J1}=0); slowest dim-8 solve " + fmt("%.2f s", slowest8) + " (limit 5 s)");
}

// [7a] Nijenhuis pair formula vs direct single-operator evaluation
Tally oracle_nj() {
  Tally t;
  for (std::uint64_t s = 1; s <= 100; ++s) {
    auto f = random_lie_frame<Q>(7000 + s, 1 + s % 2);
    record_frame(f, "oracle frame " + std::to_string(s));
    Rng rng = make_rng(s, 71);
    auto j = random_endo(rng, f);
    t.expect(nijenhuis_pair(j, j) == test::nijenhuis_direct(j), "draw " + std::to_string(s));
  }
  return t;
}

}  // namespace

int main() {
  int failed = 0;
  const auto t0 = Clock::now();
  failed += criterion_example();
  failed += criterion_lemmas();
  failed += criterion_operators();
  failed += criterion_cross_checks();
  failed += criterion_solver();
  Tally nj = oracle_nj();
  failed += report(5, "at least two of six vanish => all six vanish (every instance evaluated)", theorem_36, "exact");
  Tally oracle = nj;
  oracle.checks += frames_seen.checks;
  oracle.failures += frames_seen.failures;
  if (oracle.first_failure.empty()) oracle.first_failure = frames_seen.first_failure;
  failed += report(7, "oracle equivalence (pair formula vs direct, 100 draws; Levi-Civita on every frame)", oracle,
                   std::to_string(nj.checks) + " Nijenhuis draws, " + std::to_string(frames_seen.checks) +
                       " frames torsion-free and metric");
  std::printf("%s: %d criteria failed; total %.1f s\n", failed ? "FAIL" : "PASS", failed, seconds_since(t0));
  return failed ? 1 : 0;
}
