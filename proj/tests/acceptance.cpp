// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "oracle.hpp"

namespace {

using clk = std::chrono::steady_clock;
using vsp::format_type;
using vsp::make_field;
using vsp::parse_type;

struct Check {
  std::ostringstream why;
  bool ok = true;
  void expect(bool cond, const std::string& what) {
    if (!cond) {
      if (!ok) why << "; ";
      why << what;
      ok = false;
    }
  }
};

const vsp::KnownTable& table() {
  static const vsp::KnownTable t = vsp::load_known_table(VSP_DATA_DIR_FOR_TESTS);
  return t;
}

std::string pw(int d, std::uint64_t m) { return std::to_string(d) + "^" + std::to_string(m); }
std::string join(std::initializer_list<std::pair<int, std::uint64_t>> parts) {
  std::string s;
  for (auto [d, m] : parts)
    if (m) s += (s.empty() ? "" : " ") + pw(d, m);
  return s;
}

void c1(Check& c) {
  auto t0 = clk::now();
  auto n = vsp::gaussian_binomial(8, 4, 2);
  double dt = std::chrono::duration<double>(clk::now() - t0).count();
  c.expect(n == 200787, "got " + n.str());
  c.expect(dt < 1e-3, "took " + std::to_string(dt) + " s");
}

void c2(Check& c) {
  for (int q : {2, 3}) {
    const std::uint64_t q2 = q * q, q3 = q2 * q, q4 = q3 * q;
    std::map<int, std::set<std::string>> expect;
    expect[3] = {join({{2, 1}, {1, q2}}), pw(1, q2 + q + 1)};
    for (std::uint64_t j = 0; j <= q2 + 1; ++j) expect[4].insert(join({{2, q2 + 1 - j}, {1, (q + 1) * j}}));
    expect[4].insert(join({{3, 1}, {1, q3}}));
    expect[5].insert(join({{4, 1}, {1, q4}}));
    for (std::uint64_t j = 0; j <= q3; ++j) expect[5].insert(join({{3, 1}, {2, q3 - j}, {1, j * (q + 1)}}));
    for (std::uint64_t j = 0; j <= q3 + 1; ++j) expect[5].insert(join({{2, q3 + 1 - j}, {1, q2 + j * (q + 1)}}));
    for (auto& [v, want] : expect) {
      std::set<std::string> got;
      for (const auto& T : vsp::enumerate_types(v, q, vsp::FilterLevel::tails, &table()))
        got.insert(format_type(T));
      c.expect(got == want, "PG(" + std::to_string(v - 1) + "," + std::to_string(q) + "): " +
                                std::to_string(got.size()) + " types, expected " +
                                std::to_string(want.size()));
    }
  }
}

void c3(Check& c) {
  struct Case {
    std::uint64_t n, residue, lo, a_lo, hi, a_hi;
  };
  for (auto k : {Case{60, 4, 28, 195, 36, 60}, Case{75, 3, 35, 180, 43, 75}, Case{90, 2, 42, 165, 50, 90}}) {
    auto t0 = clk::now();
    std::vector<std::uint64_t> allowed;
    for (std::uint64_t i = k.residue; i <= k.n; i += 8) allowed.push_back(i);
    auto sols = vsp::solve_standard_equations(k.n, 8, 2, allowed, true);
    std::map<std::uint64_t, std::uint64_t> want{{k.lo, k.a_lo}, {k.hi, k.a_hi}};
    c.expect(sols.size() == 1 && sols[0].counts == want, "n=" + std::to_string(k.n));
    c.expect(std::chrono::duration<double>(clk::now() - t0).count() < 1.0, "n=" + std::to_string(k.n) + " slow");
  }
}

void c4(Check& c) {
  auto F = make_field(2);
  const std::map<std::uint64_t, std::uint64_t> s75{{35, 180}, {43, 75}}, s20{{8, 67}, {12, 59}, {16, 1}};
  for (const char* id : {"M75a", "M75b", "M75c", "M20"}) {
    auto t0 = clk::now();
    const bool big = std::string(id) != "M20";
    auto M = vsp::paper_pointset(id).multiset();
    auto S = vsp::spectrum(M);
    std::string tag = std::string(id) + ": ";
    if (big) {
      c.expect(M.cardinality() == 75 && M.is_set(), tag + "not a 75-point set");
      c.expect(vsp::is_divisible(M, 8), tag + "not 8-divisible");
      c.expect(S.counts == s75, tag + "spectrum");
      auto p = vsp::max_disjoint(M.ambient_dim(), F, M.support(), 3);
      c.expect(p.status == vsp::SearchStatus::found && p.value == 8,
               tag + "max disjoint planes " + std::to_string(p.value));
    } else {
      c.expect(M.cardinality() == 20 && M.is_set(), tag + "not a 20-point set");
      c.expect(vsp::is_divisible(M, 4), tag + "not 4-divisible");
      c.expect(S.k == 7, tag + "span " + std::to_string(S.k));
      c.expect(S.counts == s20, tag + "spectrum");
      auto p = vsp::max_disjoint(M.ambient_dim(), F, M.support(), 2);
      c.expect(p.status == vsp::SearchStatus::found && p.value == 5,
               tag + "max disjoint lines " + std::to_string(p.value));
    }
    c.expect(std::chrono::duration<double>(clk::now() - t0).count() < 300, tag + "slow");
  }
}

void c5(Check& c) {
  auto F = make_field(2);
  auto A = vsp::read_matrix_file(std::string(VSP_DATA_DIR_FOR_TESTS) + "/three_solids.txt", F);
  auto M = vsp::multiset_from_columns(A, F);
  auto ground = M.support();
  c.expect(M.is_set() && ground.size() == 45, "ground is not 45 distinct points");
  // the ground set really is three pairwise disjoint solids
  auto solids = vsp::max_disjoint(8, F, ground, 4);
  c.expect(solids.value == 3, "ground holds " + std::to_string(solids.value) + " disjoint solids");
  auto o = vsp::solve(vsp::build_problem(8, F, ground, parse_type("3^1 2^11 1^5", 8, 2)));
  c.expect(o.status == vsp::SearchStatus::infeasible,
           std::string("search ended with status ") + vsp::to_string(o.status));
  c.expect(!o.by_counting, "decided by counting");
  c.expect(o.stats.seconds < 600, "slow");
  std::cout << "      exhausted " << o.stats.nodes << " nodes in " << std::fixed << std::setprecision(2)
            << o.stats.seconds << " s\n";
}

void c6(Check& c) {
  auto F = make_field(2);
  std::vector<std::pair<vsp::Partition, std::string>> cases;
  cases.emplace_back(vsp::desarguesian_spread(8, 4, F), "4^17");
  cases.emplace_back(vsp::lifted_mrd(8, 2, F), "6^1 2^64");
  cases.emplace_back(vsp::lifted_mrd(8, 3, F), "5^1 3^32");
  cases.emplace_back(vsp::lifted_mrd(8, 4, F), "4^17");
  for (auto& [P, want] : cases) {
    auto rep = vsp::verify_partition(P);
    c.expect(rep.valid, want + " invalid");
    c.expect(format_type(rep.type) == want, "got " + format_type(rep.type) + " for " + want);
  }
}

void c7(Check& c) {
  auto T8 = [](const std::string& s) { return parse_type(s, 8, 2); };
  c.expect(!vsp::check_tails(T8("3^34 2^4 1^5"), table()).accepted, "3^34 2^4 1^5 accepted");
  for (int i = 0; i <= 3; ++i) {
    auto s = join({{3, 34}, {2, static_cast<std::uint64_t>(3 - i)}, {1, static_cast<std::uint64_t>(8 + 3 * i)}});
    c.expect(vsp::check_tails(T8(s), table()).accepted, s + " rejected");
  }
  std::size_t in_pg72 = 0, elsewhere = 0, types = 0;
  for (const auto& P : table().forbidden) {
    // some patterns leave a remainder no larger elements of PG(7,2) can fill
    int v = 8;
    auto cs = oracle::pattern_completions(P, v);
    while (cs.empty() && v < 11) cs = oracle::pattern_completions(P, ++v);
    c.expect(!cs.empty(), P.text + " fits in no space up to PG(10,2)");
    (v == 8 ? in_pg72 : elsewhere) += !cs.empty();
    for (const auto& T : cs) {
      ++types;
      auto V = vsp::check_tails(T, table());
      bool cited = std::any_of(V.citations.begin(), V.citations.end(),
                               [&](const vsp::Citation& x) { return x.key == P.key; });
      c.expect(!V.accepted && cited, P.text + " not rejected inside " + format_type(T));
    }
  }
  std::cout << "      " << in_pg72 << " patterns completed in PG(7,2), " << elsewhere
            << " only in larger spaces, " << types << " types checked\n";
}

void c8(Check& c) {
  auto t0 = clk::now();
  auto R = vsp::classify_pg72(table());
  double dt = std::chrono::duration<double>(clk::now() - t0).count();
  c.expect(R.ok(), "symmetric difference is not empty (" + std::to_string(R.missing_compact.size()) + "/" +
                       std::to_string(R.extra_compact.size()) + "/" + std::to_string(R.missing_explicit.size()) +
                       "/" + std::to_string(R.extra_explicit.size()) + ")");
  c.expect(R.feasible > 10000, "feasible " + std::to_string(R.feasible));
  c.expect(dt < 60, "classification slow");
  std::cout << "      " << R.tails << " candidates, " << R.exclusions << " excluded, " << R.feasible
            << " feasible\n";
  auto F = make_field(2);
  auto T = parse_type("3^9", 6, 2);
  auto o = vsp::search_type(6, F, T);
  c.expect(o.status == vsp::SearchStatus::found, "3^9 in PG(5,2) not found");
  if (o.status == vsp::SearchStatus::found) {
    auto rep = vsp::verify_cover(6, 2, o.witness);
    c.expect(rep.valid && rep.type == T, "3^9 witness invalid");
  }
  c.expect(o.stats.seconds < 60, "3^9 search slow");
}

void c9(Check& c) {
  std::mt19937_64 rng(2024);
  for (int q : {2, 3}) {
    auto F = make_field(q);
    for (int trial = 0; trial < 100; ++trial) {
      const int v = 3 + static_cast<int>(rng() % 4);
      const int k = 1 + static_cast<int>(rng() % (v - 2));
      vsp::PointMultiset M(v, F);
      for (int t = 0; t < 3; ++t) {
        int d = k + 1 + static_cast<int>(rng() % (v - k - 1));
        M += vsp::PointMultiset::from_subspace(oracle::random_subspace(rng, v, d, F));
      }
      const auto delta = vsp::ipow(q, k);
      c.expect(vsp::is_divisible(M, delta), "sum of subspaces not divisible");
      auto C = vsp::complement(M, M.max_multiplicity());
      c.expect(C.empty() || vsp::is_divisible(C, delta), "complement not divisible");
    }
  }
  for (int trial = 0; trial < 1000; ++trial) {
    const int q = trial % 3 ? 2 : 3;
    const int v = 2 + static_cast<int>(rng() % (q == 2 ? 6 : 4));
    vsp::PointMultiset M(v, make_field(q));
    for (std::uint32_t i = 0; i < M.space().size(); ++i)
      if (rng() % 3 == 0) M.set(i, 1 + static_cast<std::uint32_t>(rng() % (trial % 2 ? 1 : 3)));
    if (M.empty()) M.add(0);
    auto r = vsp::standard_equation_residuals(vsp::spectrum(M));
    c.expect(r.ok(), "residuals nonzero at trial " + std::to_string(trial));
  }
  auto F = make_field(2);
  std::size_t demands = 0;
  for (int v : {4, 5}) {
    oracle::NaiveCover naive(v, F);
    auto ground = vsp::all_points(*vsp::projective_space(v, F));
    for (const auto& T : vsp::enumerate_types(v, 2, vsp::FilterLevel::packing)) {
      ++demands;
      bool expect = naive.exists(T);
      auto o = vsp::solve(vsp::build_problem(v, F, ground, T));
      c.expect((o.status == vsp::SearchStatus::found) == expect, "disagreement on " + format_type(T));
    }
  }
  std::cout << "      " << demands << " exact cover demands compared\n";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
      {"gaussian_binomial(8,4,2) = 200787", c1},
      {"small-space classification for q = 2, 3", c2},
      {"unique spectra for 60, 75, 90 points", c3},
      {"M75a/b/c and M20 invariants", c4},
      {"three disjoint solids admit no 3^1 2^11 1^5", c5},
      {"spread and lifted MRD partitions of PG(7,2)", c6},
      {"forbidden supertails rejected, neighbours accepted", c7},
      {"PG(7,2) reconciliation and 3^9 witness", c8},
      {"property suites", c9},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    auto t0 = clk::now();
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    double dt = std::chrono::duration<double>(clk::now() - t0).count();
    std::cout << (c.ok ? "[PASS] " : "[FAIL] ") << i + 1 << " " << criteria[i].first << " (" << std::fixed
              << std::setprecision(3) << dt << " s)";
    if (!c.ok) std::cout << ": " << c.why.str();
    std::cout << std::endl;
    failed += !c.ok;
  }
  return failed ? 1 : 0;
}
