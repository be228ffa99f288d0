// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
//
// Usage: acceptance [AC...]   (no arguments runs every criterion)

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "../support.hpp"
#include "oprange/classify.hpp"
#include "oprange/lebesgue.hpp"
#include "oprange/pairs.hpp"
#include "oprange/towers.hpp"

using namespace oprange;
using namespace oprange::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

/// Collects failures; keeps the first few messages for the summary line.
struct Tally {
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first;

  void check(bool ok, const std::string& what) {
    if (ok) return;
    if (failures++ == 0) first = what;
  }
  Outcome outcome(const std::string& extra = {}) const {
    std::ostringstream os;
    os << cases << " cases, " << failures << " failures";
    if (!extra.empty()) os << ", " << extra;
    if (failures) os << "; first: " << first;
    return {failures == 0, os.str()};
  }
};

std::string where(int t, const std::string& what) { return "case " + std::to_string(t) + ": " + what; }

struct RationalCase {
  MQ a, b;
};

/// Rational corpus: dims in 1..6, entries {-3..3}/{1..3}. Every third B is
/// T A so the dominated branch is well represented.
std::vector<RationalCase> rational_corpus(std::size_t n) {
  std::mt19937 rng(20240601);
  std::vector<RationalCase> out;
  out.reserve(n);
  for (std::size_t t = 0; t < n; ++t) {
    const auto s = random_shape(rng, 6);
    MQ a = random_rational_structured(rng, s.h, s.e);
    MQ b = t % 3 == 2 ? MQ(random_rational(rng, s.k, s.h) * a) : random_rational_structured(rng, s.k, s.e);
    out.push_back({std::move(a), std::move(b)});
  }
  return out;
}

const std::vector<RationalCase>& corpus() {
  static const auto c = rational_corpus(1000);
  return c;
}

struct FloatCase {
  MD a, b;
};

std::vector<FloatCase> float_corpus(std::size_t n, std::size_t max_dim, unsigned seed) {
  std::mt19937 rng(seed);
  std::vector<FloatCase> out;
  for (std::size_t t = 0; t < n; ++t) {
    const auto s = random_shape(rng, max_dim);
    out.push_back({random_float_structured(rng, s.h, s.e), random_float_structured(rng, s.k, s.e)});
  }
  return out;
}

template <class F>
void guarded(Tally& tally, int t, F&& f) {
  try {
    f();
  } catch (const std::exception& e) {
    tally.check(false, where(t, std::string("threw: ") + e.what()));
  }
}

Outcome ac1() {
  Tally tally;
  std::size_t dominated = 0;
  const auto start = Clock::now();
  const auto& cs = corpus();
  for (std::size_t t = 0; t < cs.size(); ++t) {
    const auto& [a, b] = cs[t];
    ++tally.cases;
    guarded(tally, static_cast<int>(t), [&] {
      const auto r = is_dominated(a, b);
      const bool inclusion = contains(range(adjoint(a)), range(adjoint(b)));
      tally.check(r.dominated == inclusion, where(t, "verdict differs from range inclusion"));
      if (!inclusion) return;
      ++dominated;
      // PSD order at the bisected constant: holds at the upper end, fails at the lower end.
      const MQ ata = adjoint(a) * a;
      const MQ btb = adjoint(b) * b;
      tally.check(r.exact_bracket.has_value(), where(t, "no bracket"));
      if (!r.exact_bracket) return;
      const auto& [lo, hi] = *r.exact_bracket;
      tally.check(psd_order_leq(btb, MQ(ata * hi)), where(t, "B*B <= upper A*A fails"));
      if (!is_zero(btb)) tally.check(!psd_order_leq(btb, MQ(ata * lo)), where(t, "B*B <= lower A*A holds"));
    });
  }
  const double secs = seconds_since(start);
  tally.check(secs <= 60.0, "runtime " + std::to_string(secs) + " s");
  auto o = tally.outcome(std::to_string(dominated) + " dominated, " + std::to_string(secs).substr(0, 5) + " s");
  return o;
}

Outcome ac2() {
  Tally tally;
  const auto& cs = corpus();
  for (std::size_t t = 0; t < cs.size(); ++t) {
    const auto& [a, b] = cs[t];
    ++tally.cases;
    guarded(tally, static_cast<int>(t), [&] {
      const auto geometric = adjoint_rel(from_pair(a, b));
      const auto algebraic = adjoint_of_pair(a, b);
      tally.check(geometric.graph() == algebraic.graph(), where(t, "adjoint subspaces differ"));
    });
  }
  return tally.outcome();
}

Outcome ac3() {
  Tally tally;
  double worst_graph = 0.0, worst_gram = 0.0;
  const auto cs = float_corpus(250, 8, 3);
  for (std::size_t t = 0; t < cs.size(); ++t) {
    const auto& [a, b] = cs[t];
    ++tally.cases;
    guarded(tally, static_cast<int>(t), [&] {
      const OperatorPair<double> p(a, b);
      const auto cp = canonical_contractions(p);
      const double graph_gap = projection_distance(from_pair(a, b).graph(), from_pair(cp.c_a, cp.c_b).graph());
      const double closure_gap = projection_distance(closure(p).graph(), from_pair(a, b).graph());
      const MD gram_id = cp.c_a.transposed() * cp.c_a + cp.c_b.transposed() * cp.c_b - projection(range(p.gram()));
      const double gram_gap = operator_norm(gram_id);
      worst_graph = std::max({worst_graph, graph_gap, closure_gap});
      worst_gram = std::max(worst_gram, gram_gap);
      tally.check(graph_gap <= 1e-9 && closure_gap <= 1e-9, where(t, "graph projections differ"));
      tally.check(check_polar(cp), where(t, "check_polar"));
      tally.check(gram_gap <= 1e-9, where(t, "C_A*C_A + C_B*C_B != P"));
    });
  }
  std::ostringstream os;
  os << "max graph gap " << worst_graph << ", max projection-identity gap " << worst_gram;
  return tally.outcome(os.str());
}

Outcome ac4() {
  Tally tally;
  std::mt19937 rng(4);
  for (int t = 0; t < 200; ++t) {
    const auto s = random_shape(rng, 4);
    const auto [a, b] = random_q_normalized(rng, s.h, s.k, s.e);
    ++tally.cases;
    guarded(tally, t, [&] {
      const OperatorPair<Q> p(a, b);
      tally.check(is_q_normalized(p), where(t, "construction not Q-normalized"));
      tally.check(graph_projection(p) == projection(from_pair(a, b).graph()), where(t, "exact graph projection"));
      tally.check(adjoint_graph_projection(p) == projection(adjoint_rel(from_pair(a, b)).graph()),
                  where(t, "exact adjoint graph projection"));
    });
  }
  double worst = 0.0;
  const auto cs = float_corpus(200, 6, 44);
  for (std::size_t t = 0; t < cs.size(); ++t) {
    ++tally.cases;
    guarded(tally, static_cast<int>(t), [&] {
      const auto n = normalize(OperatorPair<double>(cs[t].a, cs[t].b));
      const auto rel = from_pair(n.a(), n.b());
      const double g = max_abs(MD(graph_projection(n) - projection(rel.graph())));
      const double h = max_abs(MD(adjoint_graph_projection(n) - projection(adjoint_rel(rel).graph())));
      worst = std::max({worst, g, h});
      tally.check(g <= 1e-10 && h <= 1e-10, where(t, "float graph projection"));
    });
  }
  std::ostringstream os;
  os << "max float gap " << worst;
  return tally.outcome(os.str());
}

Outcome ac5() {
  Tally tally;
  const auto& cs = corpus();
  for (std::size_t t = 0; t < cs.size(); ++t) {
    const auto& [a, b] = cs[t];
    ++tally.cases;
    guarded(tally, static_cast<int>(t), [&] {
      const auto d = lebesgue_decompose(a, b);
      tally.check(d.b_reg + d.b_sing == b, where(t, "sum"));
      tally.check(is_zero(MQ(adjoint(d.b_reg) * d.b_sing)), where(t, "ranges not orthogonal"));
      tally.check(classify(a, d.b_reg).almost_dominated, where(t, "b_reg not almost dominated"));
      tally.check(classify(a, d.b_sing).singular, where(t, "b_sing not singular"));
      const auto reg = lebesgue_decompose(a, d.b_reg);
      const auto sing = lebesgue_decompose(a, d.b_sing);
      tally.check(reg.b_reg == d.b_reg && is_zero(reg.b_sing), where(t, "b_reg not a fixed point"));
      tally.check(is_zero(sing.b_reg) && sing.b_sing == d.b_sing, where(t, "b_sing not a fixed point"));
    });
  }
  return tally.outcome();
}

Outcome ac6() {
  Tally tally;
  std::size_t candidates = 0;
  std::mt19937 rng(6);
  const auto& cs = corpus();
  for (std::size_t t = 0; t < cs.size() && candidates < 600; ++t) {
    const auto& [a, b] = cs[t];
    guarded(tally, static_cast<int>(t), [&] {
      std::uniform_int_distribution<std::size_t> r(1, b.rows());
      const auto l = range(random_rational(rng, b.rows(), r(rng)));
      if (!l.is_zero()) {
        ++candidates;
        ++tally.cases;
        const auto v = validate_l(a, b, l);
        tally.check(!v.valid && v.reason.rfind("admissible.", 0) == 0, where(t, "L accepted or reason '" + v.reason + "'"));
      }
      // L = {0} is the only valid choice; its B1 satisfies the optimality bound.
      ++tally.cases;
      const auto zero = Subspace<Q>::zero(b.rows());
      tally.check(validate_l(a, b, zero).valid, where(t, "L = {0} rejected"));
      const auto typed = lebesgue_type_decompose(a, b, zero);
      const auto canon = lebesgue_decompose(a, b);
      tally.check(psd_order_leq(MQ(adjoint(typed.b_reg) * typed.b_reg), MQ(adjoint(canon.b_reg) * canon.b_reg)),
                  where(t, "optimality"));
    });
  }
  tally.check(candidates >= 500, "only " + std::to_string(candidates) + " nonzero L");
  return tally.outcome(std::to_string(candidates) + " nonzero L rejected");
}

Outcome ac7() {
  Tally tally;
  double worst = 0.0;
  std::mt19937 rng(7);
  for (int t = 0; t < 200; ++t) {
    const auto s = random_shape(rng, 6);
    const MD a = random_float_structured(rng, s.h, s.e);
    const MD b1 = random_float(rng, s.k, s.h) * a;
    ++tally.cases;
    guarded(tally, t, [&] {
      const auto d = rn_derivative(a, b1);
      const double rel = d.route_gap / std::max(1.0, max_abs(d.representative));
      worst = std::max(worst, rel);
      tally.check(rel <= 1e-8, where(t, "routes differ"));
    });
  }
  std::size_t competitors = 0;
  for (int t = 0; t < 100; ++t) {
    const auto s = random_shape(rng, 5);
    const MQ a = random_rational_structured(rng, s.h, s.e);
    const MQ b1 = random_rational(rng, s.k, s.h) * a;
    ++tally.cases;
    guarded(tally, t, [&] {
      const auto d = rn_derivative(a, b1);
      // Any C A = B1 differs from R only on (ran A)^perp.
      const MQ off = projection(orthogonal_complement(range(a)));
      for (int c = 0; c < 10; ++c) {
        const MQ competitor = d.representative + random_rational(rng, s.k, s.h) * off;
        ++competitors;
        tally.check(competitor * a == b1, where(t, "competitor is not a factorization"));
        tally.check(rn_minimality_check(d, competitor), where(t, "graph not contained in competitor"));
      }
      const MQ g = random_invertible(rng, s.e);
      tally.check(rn_representation_invariance(a, b1, MQ(a * g), MQ(b1 * g)), where(t, "invariance under G"));
    });
  }
  std::ostringstream os;
  os << competitors << " competitors, max relative route gap " << worst;
  return tally.outcome(os.str());
}

Outcome ac8() {
  Tally tally;
  const MQ e1 = MQ::diagonal({q(1), q(0)});
  const MQ e2 = MQ::diagonal({q(0), q(1)});
  const MQ ones{{1, 1}, {1, 1}};
  tally.cases = 2;
  guarded(tally, 1, [&] {
    const auto d = lebesgue_decompose(e1, MQ::identity(2));
    tally.check(d.b_reg == e1, "mixed pair: b_reg");
    tally.check(d.b_sing == e2, "mixed pair: b_sing");
    tally.check(rn_derivative(e1, d.b_reg).representative == e1, "mixed pair: RN representative");
  });
  guarded(tally, 2, [&] {
    const auto d = lebesgue_decompose(e1, ones);
    tally.check(is_zero(d.b_reg), "ones pair: b_reg");
    tally.check(d.b_sing == ones, "ones pair: b_sing");
    tally.check(classify(e1, ones).singular, "ones pair: singular verdict");
  });
  return tally.outcome();
}

Outcome ac9() {
  Tally tally;
  const auto start = Clock::now();
  guarded(tally, 1, [&] {
    const auto r = run_tower({Generator::reciprocal(), Generator::constant(q(1)), 64});
    tally.cases += r.dims.size();
    for (std::size_t i = 0; i < r.dims.size(); ++i) {
      const Rational n(static_cast<long>(r.dims[i]));
      tally.check(r.constants[i] == std::optional<Rational>(n), "reciprocal/unit: c_n != n at " + n.get_str());
      tally.check(r.dominated[i], "reciprocal/unit: section not dominated");
    }
    tally.check(r.verdict == TowerVerdict::AlmostDominatedNotDominated,
                "reciprocal/unit verdict " + verdict_name(r.verdict));
  });
  guarded(tally, 2, [&] {
    const auto r = run_tower({Generator::constant(q(1)), Generator::constant(q(1)), 64});
    tally.cases += r.dims.size();
    for (const auto& c : r.constants) tally.check(c == std::optional<Rational>(q(1)), "unit/unit: c_n != 1");
    tally.check(r.verdict == TowerVerdict::DominatedLimit, "unit/unit verdict " + verdict_name(r.verdict));
  });
  const double secs = seconds_since(start);
  tally.check(secs <= 5.0, "runtime " + std::to_string(secs) + " s");
  return tally.outcome(std::to_string(secs).substr(0, 5) + " s");
}

struct Run {
  int status = -1;
  std::string out;
};

Run run_command(const std::string& cmd) {
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string quoted(const std::string& s) { return "'" + s + "'"; }

Outcome ac10() {
  Tally tally;
  const std::string cli = OPRANGE_CLI_PATH;
  const std::string data = OPRANGE_DATA_DIR;
  struct Example {
    std::string name;
    std::string args;
    int status;
  };
  const std::vector<Example> examples = {
      {"classify_singular", "classify " + data + "/diag10.csv " + data + "/diag01.csv", 0},
      {"classify_identity", "classify " + data + "/eye2.csv " + data + "/eye2.csv", 0},
      {"classify_malformed", "classify " + data + "/malformed.csv " + data + "/eye2.csv", 2},
      {"decompose_mixed", "decompose " + data + "/diag10.csv " + data + "/eye2.csv", 0},
      {"rnderiv_half", "rnderiv " + data + "/diag1half.csv " + data + "/eye2.csv", 0},
      {"tower_reciprocal_unit", "tower " + data + "/tower_reciprocal_unit.json", 0},
      {"tower_unit_unit", "tower " + data + "/tower_unit_unit.json", 0},
      {"closure_float", "--mode float closure " + data + "/diag10.csv " + data + "/ones2.csv", 0},
      {"adjoint_exact", "adjoint " + data + "/diag10.csv " + data + "/ones2.csv", 0},
  };
  const auto dir = std::filesystem::temp_directory_path() / "oprange_acceptance_reports";
  std::filesystem::create_directories(dir);
  std::string files;
  for (const auto& ex : examples) {
    ++tally.cases;
    const std::string cmd = "env -u OPRANGE_MODE " + quoted(cli) + " " + ex.args + " 2>/dev/null";
    const Run first = run_command(cmd);
    const Run second = run_command(cmd);
    tally.check(first.status == ex.status, ex.name + ": exit " + std::to_string(first.status));
    tally.check(first.out == second.out && !first.out.empty(), ex.name + ": reports differ between runs");
    const auto path = dir / (ex.name + ".json");
    std::ofstream(path, std::ios::binary) << first.out;
    files += " " + quoted(path.string());
  }
  ++tally.cases;
  const Run schema = run_command(quoted(OPRANGE_PYTHON) + " " + quoted(OPRANGE_VALIDATOR) + " " +
                                 quoted(OPRANGE_SCHEMA_PATH) + files + " 2>&1");
  tally.check(schema.status == 0, "schema validation: " + schema.out);
  return tally.outcome(std::to_string(examples.size()) + " examples run twice");
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4}, {"AC5", ac5},
      {"AC6", ac6}, {"AC7", ac7}, {"AC8", ac8}, {"AC9", ac9}, {"AC10", ac10},
  };
  std::vector<std::string> wanted(argv + 1, argv + argc);
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), name) == wanted.end()) continue;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    std::cout << name << ' ' << (o.pass ? "PASS" : "FAIL") << "  " << o.detail << std::endl;
    failed += !o.pass;
  }
  return failed ? 1 : 0;
}
