#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "oracle.hpp"

namespace {

using vsp::make_field;

TEST(ExtensionField, IsAField) {
  for (auto [q, k] : {std::pair{2, 4}, {3, 2}, {2, 3}, {4, 2}}) {
    auto F = make_field(q);
    vsp::ExtensionField E(F, k);
    const std::uint64_t n = vsp::ipow(q, k);
    ASSERT_EQ(E.size(), n);
    const vsp::row_vec zero(k, 0);
    vsp::row_vec one(k, 0);
    one[0] = 1;
    // every nonzero element has exactly one inverse and there are no zero divisors
    for (std::uint64_t a = 1; a < n; ++a) {
      int inverses = 0;
      for (std::uint64_t b = 1; b < n; ++b) {
        auto c = E.mul(E.element(a), E.element(b));
        EXPECT_NE(c, zero);
        inverses += c == one;
        EXPECT_EQ(c, E.mul(E.element(b), E.element(a)));
      }
      EXPECT_EQ(inverses, 1) << "q=" << q << " k=" << k << " a=" << a;
    }
  }
}

TEST(Spreads, DesarguesianSpreadsAreValid) {
  for (auto [v, k, q] : {std::tuple{4, 2, 2}, {6, 2, 2}, {6, 3, 2}, {8, 4, 2}, {8, 2, 2}, {4, 2, 3},
                          {6, 2, 3}, {6, 3, 3}, {4, 2, 4}, {4, 2, 5}, {2, 1, 7}}) {
    auto P = vsp::desarguesian_spread(v, k, make_field(q));
    auto rep = vsp::verify_partition(P);
    EXPECT_TRUE(rep.valid) << v << " " << k << " " << q;
    vsp::PartitionType T(v, q);
    if (k < v) T.m[k] = vsp::q_integer(v, q) / vsp::q_integer(k, q);
    EXPECT_EQ(rep.type, T);
  }
  EXPECT_THROW(vsp::desarguesian_spread(8, 3, make_field(2)), vsp::invalid_parameter);
}

TEST(Spreads, SolidSpreadOfPG72) {
  auto rep = vsp::verify_partition(vsp::desarguesian_spread(8, 4, make_field(2)));
  EXPECT_TRUE(rep.valid);
  EXPECT_EQ(vsp::format_type(rep.type), "4^17");
}

TEST(LiftedMRD, TypesOfPG72) {
  auto F = make_field(2);
  const char* expect[] = {"", "", "6^1 2^64", "5^1 3^32", "4^17"};
  for (int k = 2; k <= 4; ++k) {
    auto P = vsp::lifted_mrd(8, k, F);
    auto rep = vsp::verify_partition(P);
    EXPECT_TRUE(rep.valid) << k;
    EXPECT_EQ(vsp::format_type(rep.type), expect[k]);
  }
}

TEST(LiftedMRD, OtherParameters) {
  for (auto [v, k, q] : {std::tuple{5, 2, 2}, {6, 3, 2}, {7, 3, 2}, {5, 2, 3}, {4, 1, 3}, {4, 2, 4}}) {
    auto P = vsp::lifted_mrd(v, k, make_field(q));
    auto rep = vsp::verify_partition(P);
    EXPECT_TRUE(rep.valid) << v << " " << k << " " << q;
    EXPECT_EQ(rep.type.count(k), vsp::ipow(q, v - k) + (v - k == k ? 1 : 0));
    if (v - k != k) EXPECT_EQ(rep.type.count(v - k), 1u);
  }
}

TEST(LiftedMRD, DifferencesHaveFullRank) {
  // elements other than the special one are row spaces of [I_k | A]; all
  // pairwise differences A - B have rank k
  for (auto [v, k, q] : {std::tuple{8, 3, 2}, {8, 2, 2}, {6, 2, 3}, {6, 3, 2}}) {
    auto F = make_field(q);
    auto P = vsp::lifted_mrd(v, k, F);
    std::vector<std::vector<vsp::row_vec>> blocks;
    for (const auto& E : P.elements) {
      if (E.dim() != k) continue;
      auto piv = E.pivots();
      bool identity_first = true;
      for (int i = 0; i < k; ++i) identity_first = identity_first && piv[i] == i;
      if (!identity_first) continue;
      std::vector<vsp::row_vec> A;
      for (int r = 0; r < k; ++r) {
        vsp::row_vec x;
        for (int c = k; c < v; ++c) x.push_back(E.at(r, c));
        A.push_back(x);
      }
      blocks.push_back(A);
    }
    ASSERT_EQ(blocks.size(), vsp::ipow(q, v - k));
    for (std::size_t a = 0; a < blocks.size(); ++a)
      for (std::size_t b = a + 1; b < blocks.size(); ++b) {
        std::vector<vsp::row_vec> D = blocks[a];
        for (int r = 0; r < k; ++r)
          for (int c = 0; c < v - k; ++c) D[r][c] = F.sub(D[r][c], blocks[b][r][c]);
        EXPECT_EQ(vsp::rank_of(D, F), std::min(k, v - k));
      }
  }
}

TEST(Expansion, ReductionRulesAreRealized) {
  auto F = make_field(2);
  for (int rule = 1; rule <= 6; ++rule) {
    const int src = vsp::reduction_rule(rule).source;
    vsp::Partition P = src == 2   ? vsp::lifted_mrd(8, 2, F)
                       : src == 3 ? vsp::lifted_mrd(8, 3, F)
                                  : vsp::desarguesian_spread(8, 4, F);
    std::size_t idx = 0;
    while (P.elements[idx].dim() != src) ++idx;
    auto Q = vsp::expand_element(P, idx, rule);
    auto rep = vsp::verify_partition(Q);
    EXPECT_TRUE(rep.valid) << rule;
    EXPECT_EQ(rep.type, vsp::apply_reduction(P.realized_type(), rule)) << rule;
  }
}

TEST(Expansion, RuleZeroAndOtherFields) {
  auto F = make_field(3);
  auto P = vsp::desarguesian_spread(6, 3, F);
  auto Q = vsp::expand_element(P, 0, 0);
  auto rep = vsp::verify_partition(Q);
  EXPECT_TRUE(rep.valid);
  EXPECT_EQ(rep.type.count(1), 13u);
  auto S = vsp::desarguesian_spread(8, 4, make_field(3));
  auto R = vsp::expand_element(S, 3, 5);  // solid -> 10 lines over GF(3)
  auto rr = vsp::verify_partition(R);
  EXPECT_TRUE(rr.valid);
  EXPECT_EQ(rr.type.count(2), 10u);
  EXPECT_THROW(vsp::expand_element(P, 0, 1), vsp::precondition_error);
  EXPECT_THROW(vsp::expand_element(P, 99, 0), vsp::precondition_error);
}

TEST(Verification, DetectsGapsAndOverlaps) {
  auto F = make_field(2);
  auto P = vsp::desarguesian_spread(8, 4, F);
  auto missing = P;
  missing.elements.pop_back();
  auto rep = vsp::verify_partition(missing);
  EXPECT_FALSE(rep.valid);
  EXPECT_FALSE(rep.covering);
  EXPECT_TRUE(rep.disjoint);
  EXPECT_EQ(rep.uncovered.size(), 15u);
  std::set<vsp::row_vec> un;
  for (const auto& x : rep.uncovered) un.insert(x.coords());
  EXPECT_EQ(un, oracle::span_points(P.elements.back().rows(), 8, F));

  auto doubled = P;
  doubled.elements.push_back(vsp::rref_canonical({P.elements[0].rows()[0]}, F));
  auto rd = vsp::verify_partition(doubled);
  EXPECT_FALSE(rd.valid);
  EXPECT_FALSE(rd.disjoint);
  ASSERT_TRUE(rd.overlap.has_value());
  EXPECT_FALSE(rd.first_violation.empty());
}

TEST(Verification, GroundSets) {
  auto F = make_field(2);
  auto space = vsp::projective_space(4, F);
  auto plane = vsp::coordinate_subspace(4, F, 0, 3);
  vsp::Partition P{4, 2, {vsp::coordinate_subspace(4, F, 0, 2)}, {}};
  for (auto i : space->points_of(plane)) {
    P.ground.push_back(space->point(i));
    if (!vsp::contains(P.elements[0], vsp::rref_canonical({space->coords(i)}, F)))
      P.elements.push_back(vsp::rref_canonical({space->coords(i)}, F));
  }
  EXPECT_TRUE(vsp::verify_partition(P).valid);
  P.elements.push_back(vsp::rref_canonical({{0, 0, 0, 1}}, F));
  EXPECT_FALSE(vsp::verify_partition(P).valid);
}

TEST(Reducibility, PairSpanWitness) {
  auto F = make_field(2);
  auto S = vsp::desarguesian_spread(8, 4, F);
  EXPECT_FALSE(vsp::find_reducible_pair_span(S).has_value());
  auto R = vsp::expand_element(S, 0, 5);
  auto w = vsp::find_reducible_pair_span(R);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->subspace, S.elements[0]);
  EXPECT_EQ(w->elements.size(), 5u);
  auto hints = vsp::reducibility_hints(S);
  ASSERT_EQ(hints.size(), 17u);
  EXPECT_EQ(hints[0].rules, (std::vector<int>{0, 4, 5, 6}));
}

TEST(PartitionFiles, RoundTrip) {
  for (int q : {2, 3, 4}) {
    auto P = vsp::desarguesian_spread(4, 2, make_field(q));
    auto Q = vsp::partition_from_json(vsp::partition_to_json(P));
    EXPECT_EQ(Q.v, P.v);
    EXPECT_EQ(Q.q, P.q);
    EXPECT_EQ(Q.elements, P.elements);
  }
  auto F = make_field(2);
  vsp::Partition G{3, 2, {vsp::coordinate_subspace(3, F, 0, 1)}, {vsp::Point::normalized({1, 0, 0}, F)}};
  auto H = vsp::partition_from_json(vsp::partition_to_json(G));
  EXPECT_EQ(H.ground, G.ground);
  EXPECT_TRUE(vsp::verify_partition(H).valid);
}

TEST(PartitionFiles, ErrorsNameTheirLocation) {
  auto message = [](const std::string& text) {
    try {
      vsp::partition_from_json(nlohmann::json::parse(text));
    } catch (const vsp::format_error& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  const std::string head = R"("format":"vsp-partition","version":1,)";
  EXPECT_NE(message("[]").find("document"), std::string::npos);
  EXPECT_NE(message(R"({"format":"other"})").find("format"), std::string::npos);
  EXPECT_NE(message("{" + head + R"("q":6,"v":3,"elements":[]})").find("q:"), std::string::npos);
  EXPECT_NE(message("{" + head + R"("q":2,"elements":[]})").find("v:"), std::string::npos);
  EXPECT_NE(message("{" + head + R"("q":2,"v":3,"elements":[["100"],["012"]]})").find("elements[1][0]"),
            std::string::npos);
  EXPECT_NE(message("{" + head + R"("q":2,"v":3,"elements":[["10"]]})").find("elements[0][0]"),
            std::string::npos);
  EXPECT_NE(message("{" + head + R"("q":2,"v":3,"elements":[["100","100"]]})").find("dependent"),
            std::string::npos);
  EXPECT_NE(message("{" + head + R"("q":2,"v":3,"elements":[["100"]],"ground":["000"]})").find("ground[0]"),
            std::string::npos);
  EXPECT_THROW(vsp::read_partition_file("/nonexistent/p.json"), vsp::format_error);
  auto tmp = std::filesystem::temp_directory_path() / "vsp_bad_partition.json";
  std::ofstream(tmp) << "{ not json";
  EXPECT_THROW(vsp::read_partition_file(tmp.string()), vsp::format_error);
  std::filesystem::remove(tmp);
}

}  // namespace
