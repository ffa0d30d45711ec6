#include <gtest/gtest.h>

#include <bit>

#include "oracle.hpp"

namespace {

using vsp::make_field;

std::map<vsp::row_vec, std::uint32_t> as_map(const vsp::PointMultiset& M) {
  std::map<vsp::row_vec, std::uint32_t> out;
  for (auto i : M.support()) out[M.space().coords(i)] = M.multiplicity(i);
  return out;
}

bool naive_divisible(const vsp::PointMultiset& M, std::uint64_t delta) {
  for (auto w : oracle::hyperplane_weights(as_map(M), M.ambient_dim(), M.field()))
    if ((M.cardinality() - w) % delta) return false;
  return true;
}

vsp::PointMultiset random_multiset(std::mt19937_64& rng, int v, const vsp::Field& F, int maxm,
                                   double density) {
  vsp::PointMultiset M(v, F);
  std::uniform_real_distribution<double> u(0, 1);
  for (std::uint32_t i = 0; i < M.space().size(); ++i)
    if (u(rng) < density) M.set(i, 1 + static_cast<std::uint32_t>(rng() % maxm));
  if (M.empty()) M.add(0);
  return M;
}

TEST(Spectrum, MatchesHyperplaneCountsWhenSpanIsFull) {
  std::mt19937_64 rng(21);
  for (int q : {2, 3, 4}) {
    auto F = make_field(q);
    for (int trial = 0; trial < 60; ++trial) {
      const int v = 2 + static_cast<int>(rng() % 3);
      auto M = random_multiset(rng, v, F, 3, 0.6);
      auto S = vsp::spectrum(M);
      if (S.k != v) continue;
      std::map<std::uint64_t, std::uint64_t> expect;
      for (auto w : oracle::hyperplane_weights(as_map(M), v, F)) ++expect[w];
      EXPECT_EQ(S.counts, expect);
      EXPECT_EQ(S.cardinality, M.cardinality());
    }
  }
}

TEST(Spectrum, SpanOfSupport) {
  auto F = make_field(3);
  vsp::PointMultiset M(6, F);
  auto U = vsp::rref_canonical({{1, 0, 0, 0, 0, 0}, {0, 0, 1, 2, 0, 0}, {0, 0, 0, 0, 0, 1}}, F);
  M += vsp::PointMultiset::from_subspace(U);
  auto S = vsp::spectrum(M);
  EXPECT_EQ(S.k, 3);
  EXPECT_EQ(S.v, 6);
  // a plane of PG(5,3): the hyperplanes of its span are its lines
  EXPECT_EQ(S.counts, (std::map<std::uint64_t, std::uint64_t>{{4, 13}}));
}

TEST(Divisibility, AgreesWithNaiveHyperplaneCheck) {
  std::mt19937_64 rng(4);
  for (int q : {2, 3}) {
    auto F = make_field(q);
    for (int trial = 0; trial < 150; ++trial) {
      const int v = 2 + static_cast<int>(rng() % 4);
      auto M = random_multiset(rng, v, F, 2, 0.5);
      for (std::uint64_t delta : {2, 3, 4, 8, 9})
        EXPECT_EQ(vsp::is_divisible(M, delta), naive_divisible(M, delta));
    }
  }
}

TEST(Divisibility, SumsOfSubspacesAreDivisible) {
  // a k-space is q^{k-1}-divisible, so sums of spaces of dimension >= k are too
  std::mt19937_64 rng(9);
  for (int q : {2, 3, 4}) {
    auto F = make_field(q);
    for (int trial = 0; trial < 80; ++trial) {
      const int v = 3 + static_cast<int>(rng() % (q == 2 ? 5 : 3));
      const int k = 1 + static_cast<int>(rng() % (v - 1));
      vsp::PointMultiset M(v, F);
      const int parts = 1 + static_cast<int>(rng() % 4);
      for (int t = 0; t < parts; ++t) {
        int d = k + static_cast<int>(rng() % (v - k));
        M += vsp::PointMultiset::from_subspace(oracle::random_subspace(rng, v, d, F));
      }
      const auto delta = vsp::ipow(q, k - 1);
      EXPECT_TRUE(vsp::is_divisible(M, delta)) << "q=" << q << " v=" << v << " k=" << k;
      if (v <= 5) EXPECT_TRUE(naive_divisible(M, delta));
    }
  }
}

TEST(Divisibility, ComplementsStayDivisible) {
  // lambda * (all points) minus a q^r-divisible multiset, r <= v-2
  std::mt19937_64 rng(10);
  for (int q : {2, 3}) {
    auto F = make_field(q);
    for (int trial = 0; trial < 60; ++trial) {
      const int v = 3 + static_cast<int>(rng() % 3);
      const int k = 1 + static_cast<int>(rng() % (v - 2));
      vsp::PointMultiset M(v, F);
      for (int t = 0; t < 3; ++t)
        M += vsp::PointMultiset::from_subspace(oracle::random_subspace(rng, v, k + 1, F));
      const auto lambda = M.max_multiplicity() + static_cast<std::uint32_t>(rng() % 2);
      auto C = vsp::complement(M, lambda);
      EXPECT_EQ(C.cardinality(), lambda * vsp::q_integer(v, q) - M.cardinality());
      EXPECT_TRUE(vsp::is_divisible(C, vsp::ipow(q, k)));
      EXPECT_TRUE(naive_divisible(C, vsp::ipow(q, k)));
    }
  }
  auto M = vsp::paper_pointset("M75a").multiset();
  auto C = vsp::complement(M, 1);
  EXPECT_EQ(C.cardinality(), 180u);
  EXPECT_TRUE(vsp::is_divisible(C, 8));
  EXPECT_THROW(vsp::complement(M + M, 1), vsp::invalid_parameter);
}

TEST(StandardEquations, ResidualsVanishOnRandomMultisets) {
  std::mt19937_64 rng(1000);
  int checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int q = trial % 3 == 0 ? 3 : 2;
    const int v = 2 + static_cast<int>(rng() % (q == 2 ? 6 : 4));
    auto M = random_multiset(rng, v, make_field(q), trial % 2 ? 1 : 4, 0.3);
    auto S = vsp::spectrum(M);
    auto r = vsp::standard_equation_residuals(S);
    EXPECT_TRUE(r.ok()) << "trial " << trial << ": " << r.se1 << " " << r.se2 << " " << r.se5;
    ++checked;
    // a perturbed spectrum must be caught
    auto bad = S;
    bad.counts.begin()->second += 1;
    EXPECT_FALSE(vsp::standard_equation_residuals(bad).ok());
  }
  EXPECT_EQ(checked, 1000);
}

TEST(StandardEquations, UniqueSolutionsForComplementSets) {
  struct Case {
    std::uint64_t n, residue, lo, hi;
  };
  for (auto c : {Case{60, 4, 28, 36}, Case{75, 3, 35, 43}, Case{90, 2, 42, 50}}) {
    std::vector<std::uint64_t> allowed;
    for (std::uint64_t i = c.residue; i <= c.n; i += 8) allowed.push_back(i);
    auto sols = vsp::solve_standard_equations(c.n, 8, 2, allowed, true);
    ASSERT_EQ(sols.size(), 1u) << c.n;
    EXPECT_EQ(sols[0].counts.size(), 2u);
    // independent check of the returned spectrum
    EXPECT_TRUE(vsp::standard_equation_residuals(sols[0]).ok());
    EXPECT_TRUE(sols[0].counts.count(c.lo) && sols[0].counts.count(c.hi));
  }
}

TEST(StandardEquations, BruteForceAgreementOnSmallInstances) {
  // all nonnegative (a_x) with x in allowed and sum a_x = [k]_q, checked
  // against the residual function directly
  for (std::uint64_t n : {6, 7, 9, 10, 12, 14}) {
    const int k = 4;
    std::vector<std::uint64_t> allowed;
    for (std::uint64_t x = n % 2; x <= n; x += 2) allowed.push_back(x);
    auto sols = vsp::solve_standard_equations(n, k, 2, allowed, true);
    std::set<std::map<std::uint64_t, std::uint64_t>> got;
    for (const auto& s : sols) got.insert(s.counts);
    std::set<std::map<std::uint64_t, std::uint64_t>> expect;
    const std::uint64_t H = vsp::q_integer(k, 2);
    std::vector<std::uint64_t> a(allowed.size(), 0);
    auto rec = [&](auto&& self, std::size_t t, std::uint64_t left) -> void {
      if (t + 1 == allowed.size()) {
        a[t] = left;
        vsp::Spectrum S;
        S.k = k;
        S.q = 2;
        S.cardinality = n;
        S.is_set = true;
        for (std::size_t u = 0; u < a.size(); ++u)
          if (a[u]) S.counts[allowed[u]] = a[u];
        if (vsp::standard_equation_residuals(S).ok()) expect.insert(S.counts);
        return;
      }
      for (std::uint64_t x = 0; x <= left; ++x) {
        a[t] = x;
        self(self, t + 1, left - x);
      }
    };
    rec(rec, 0, H);
    EXPECT_EQ(got, expect) << n;
  }
}

TEST(Lengths, ProjectiveTableIsSoundOnAllSubsetsOfPG32) {
  // every 2-, 4-, 8-divisible set of PG(3,2) (exhaustive) and of PG(4,2)
  // (sums of subspaces and random sets) has an admissible length
  auto F = make_field(2);
  auto pts = oracle::all_points(4, F);
  std::vector<std::uint32_t> hyper;  // bitmask of points per hyperplane
  for (const auto& a : pts) {
    std::uint32_t m = 0;
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (oracle::dot(a, pts[i], F) == 0) m |= 1u << i;
    hyper.push_back(m);
  }
  std::map<int, std::set<int>> seen;
  for (std::uint32_t s = 1; s < (1u << 15); ++s) {
    const int n = std::popcount(s);
    int div = 8;
    for (auto h : hyper) {
      int out = n - std::popcount(s & h);
      while (div > 1 && out % div) div /= 2;
      if (div == 1) break;
    }
    for (int d = 2; d <= div; d *= 2) seen[d].insert(n);
  }
  for (auto& [d, lens] : seen)
    for (int n : lens) {
      auto verdict = vsp::admissible_length_projective_binary(d, n);
      EXPECT_EQ(verdict.admissible, vsp::Admissibility::yes) << "delta=" << d << " n=" << n;
    }
  EXPECT_TRUE(seen[2].count(3) && seen[4].count(7) && seen[8].count(15));
}

TEST(Lengths, ProjectiveTableIsSoundInPG42) {
  std::mt19937_64 rng(77);
  auto F = make_field(2);
  for (int trial = 0; trial < 3000; ++trial) {
    vsp::PointMultiset M(5, F);
    if (trial % 2) {
      // disjoint-ish sums of subspaces reduced mod 2 give projective sets
      for (int t = 0; t < 3; ++t) {
        auto U = oracle::random_subspace(rng, 5, 2 + static_cast<int>(rng() % 3), F);
        for (auto i : M.space().points_of(U)) M.set(i, M.multiplicity(i) ^ 1u);
      }
    } else {
      for (std::uint32_t i = 0; i < 31; ++i)
        if (rng() % 2) M.set(i, 1);
    }
    if (M.cardinality() == 0 || M.cardinality() > 20) continue;
    for (int d : {2, 4, 8})
      if (vsp::is_divisible(M, d))
        EXPECT_EQ(vsp::admissible_length_projective_binary(d, static_cast<long long>(M.cardinality())).admissible,
                  vsp::Admissibility::yes)
            << "delta=" << d << " n=" << M.cardinality();
  }
}

TEST(Lengths, ProjectiveTableKnownValues) {
  using vsp::Admissibility;
  auto yes = [](int d, long long n) {
    return vsp::admissible_length_projective_binary(d, n).admissible == Admissibility::yes;
  };
  EXPECT_TRUE(yes(2, 0));
  EXPECT_FALSE(yes(2, 1));
  EXPECT_FALSE(yes(2, 2));
  EXPECT_TRUE(yes(2, 3));
  for (int n : {1, 2, 3, 4, 5, 6, 9, 10, 11, 12, 13}) EXPECT_FALSE(yes(4, n)) << n;
  for (int n : {7, 8, 14, 15, 100}) EXPECT_TRUE(yes(4, n)) << n;
  for (int n : {15, 16, 30, 31, 32, 45, 51, 60, 61}) EXPECT_TRUE(yes(8, n)) << n;
  for (int n : {14, 17, 29, 33, 44, 52, 59}) EXPECT_FALSE(yes(8, n)) << n;
  EXPECT_THROW(vsp::admissible_length_projective_binary(16, 5), vsp::invalid_parameter);
}

TEST(Lengths, SemigroupMatchesBruteForce) {
  for (int q : {2, 3, 4, 5})
    for (int r = 1; r <= 3; ++r) {
      std::vector<long long> gens;
      for (int i = 0; i <= r; ++i)
        gens.push_back(static_cast<long long>(vsp::ipow(q, i) * vsp::q_integer(r + 1 - i, q)));
      const long long N = 400;
      std::set<long long> reach{0};
      for (auto g : gens) {
        std::set<long long> next = reach;
        for (auto x : reach)
          for (long long y = x + g; y <= N; y += g) next.insert(y);
        reach = next;
      }
      for (long long n = 0; n <= N; ++n)
        EXPECT_EQ(vsp::admissible_length_semigroup(q, r, n).admissible == vsp::Admissibility::yes,
                  reach.count(n) > 0)
            << "q=" << q << " r=" << r << " n=" << n;
    }
}

TEST(MatrixFiles, RoundTrip) {
  std::mt19937_64 rng(2);
  for (int q : {2, 3, 7, 16}) {
    auto F = make_field(q);
    for (int trial = 0; trial < 20; ++trial) {
      vsp::Matrix A;
      A.rows = 1 + static_cast<int>(rng() % 6);
      A.cols = 1 + static_cast<int>(rng() % 30);
      for (int i = 0; i < A.rows * A.cols; ++i) A.data.push_back(static_cast<vsp::elem>(rng() % q));
      auto text = vsp::format_matrix(A);
      EXPECT_EQ(vsp::parse_matrix(text, F), A);
      // spacing and comments are irrelevant
      std::string squashed = "# header\n\n";
      for (char ch : text)
        if (ch != ' ') squashed += ch;
      EXPECT_EQ(vsp::parse_matrix(squashed, F), A);
    }
  }
}

TEST(MatrixFiles, ErrorsCarryLocations) {
  auto F = make_field(2);
  auto message = [&](const std::string& text) {
    try {
      vsp::parse_matrix(text, F);
    } catch (const vsp::format_error& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_NE(message("1 0 1\n1 2 1\n").find("line 2, column 3"), std::string::npos);
  EXPECT_NE(message("1 0 1\n1 1\n").find("line 2"), std::string::npos);
  EXPECT_NE(message("# only a comment\n").find("no rows"), std::string::npos);
  EXPECT_NE(message("1 x\n").find("column 3"), std::string::npos);
  vsp::Matrix Z{2, 2, {1, 0, 0, 0}};
  try {
    vsp::multiset_from_columns(Z, F);
    FAIL();
  } catch (const vsp::format_error& e) {
    EXPECT_NE(std::string(e.what()).find("column 2 is zero"), std::string::npos);
  }
  EXPECT_THROW(vsp::read_matrix_file("/nonexistent/matrix.txt", F), vsp::format_error);
}

TEST(MatrixFiles, MultisetConversionRoundTrip) {
  std::mt19937_64 rng(12);
  auto F = make_field(3);
  for (int trial = 0; trial < 20; ++trial) {
    auto M = random_multiset(rng, 4, F, 3, 0.4);
    auto A = vsp::matrix_from_multiset(M);
    EXPECT_EQ(vsp::multiset_from_columns(A, F), M);
  }
}

TEST(Datasets, EmbeddedMatricesMatchDataFiles) {
  const std::string dir = VSP_DATA_DIR_FOR_TESTS;
  for (const auto& d : vsp::paper_datasets()) {
    auto file = vsp::read_matrix_file(dir + "/" + d.file, make_field(d.q));
    EXPECT_EQ(file, d.matrix()) << d.id;
    EXPECT_EQ(file.rows, d.rows) << d.id;
    EXPECT_EQ(static_cast<std::uint64_t>(file.cols), d.cardinality) << d.id;
  }
  EXPECT_EQ(&vsp::paper_pointset("m20"), &vsp::paper_pointset("M20"));
  EXPECT_THROW(vsp::paper_pointset("M21"), vsp::invalid_parameter);
}

TEST(Datasets, M75SetsAreDistinctProjectiveSets) {
  std::set<std::vector<std::uint32_t>> supports;
  for (const char* id : {"M75a", "M75b", "M75c"}) {
    auto M = vsp::paper_pointset(id).multiset();
    EXPECT_TRUE(M.is_set()) << id;
    supports.insert(M.support());
  }
  EXPECT_EQ(supports.size(), 3u);
}

}  // namespace
