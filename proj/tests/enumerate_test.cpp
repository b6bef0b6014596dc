#include <gtest/gtest.h>

#include <map>
#include <set>

#include "newton_maps/canon.hpp"
#include "newton_maps/duality.hpp"
#include "newton_maps/enumerate.hpp"
#include "newton_maps/newton.hpp"
#include "test_support.hpp"

using namespace newton_maps;
using namespace testing_support;

namespace {

const Enumeration& order3() {
  static const Enumeration e = enumerate_newton({3, 1, true});
  return e;
}

}  // namespace

TEST(Generation, MultiplicityVectors) {
  const auto two = multiplicity_vectors(2);
  ASSERT_EQ(two.size(), 1u);
  EXPECT_EQ(two.front(), (Multiplicity{4}));
  for (const auto& m : multiplicity_vectors(3)) {
    int total = 0;
    for (int x : m) total += x;
    EXPECT_EQ(total, 6);
    EXPECT_GE(m[0] + m[1], 2);
    EXPECT_GE(m[0] + m[2], 2);
    EXPECT_GE(m[1] + m[2], 2);
  }
  EXPECT_EQ(multiplicity_vectors(3).size(), 19u);  // 28 compositions, 9 leave a vertex below degree 2
}

TEST(Generation, CandidateCounts) {
  std::size_t n2 = 0, n3 = 0;
  for_each_candidate(2, true, [&](const EmbeddedMap&) { ++n2; });
  for_each_candidate(3, true, [&](const EmbeddedMap&) { ++n3; });
  EXPECT_EQ(n2, 36u);
  EXPECT_EQ(n3, 9432u);
  std::size_t unpruned = 0;
  for_each_candidate(2, false, [&](const EmbeddedMap&) { ++unpruned; });
  EXPECT_EQ(unpruned, 36u * 16u);
}

TEST(Generation, PruningKeepsEveryClass) {
  for (int order : {2, 3}) {
    std::set<CanonicalKey> pinned, all;
    for_each_candidate(order, true, [&](const EmbeddedMap& m) { pinned.insert(canonical_key(m, false)); });
    if (order == 2) {
      for_each_candidate(order, false, [&](const EmbeddedMap& m) { all.insert(canonical_key(m, false)); });
      EXPECT_EQ(pinned, all);
    }
    EXPECT_EQ(enumerate_newton({order, 1, true}).entries.size(),
              enumerate_newton({order, 1, false}).entries.size());
  }
}

TEST(Enumeration, OrderTwo) {
  const auto e = enumerate_newton({2, 1, true});
  EXPECT_TRUE(e.certified);
  ASSERT_EQ(e.entries.size(), 1u);
  EXPECT_TRUE(are_equivalent(e.entries.front().representative, load_fixture("n2.map"), false));
  EXPECT_TRUE(e.entries.front().self_dual);
  EXPECT_EQ(e.stats.candidates, 36u);
}

TEST(Enumeration, OrderThreeStats) {
  const auto& e = order3();
  EXPECT_EQ(e.stats.multiplicity_vectors, 19u);
  EXPECT_EQ(e.stats.candidates, 9432u);
  EXPECT_EQ(e.stats.toroidal, 6076u);
  EXPECT_EQ(e.stats.accepted, 1372u);
}

TEST(Enumeration, RepresentativesArePairwiseInequivalent) {
  const auto& entries = order3().entries;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    EXPECT_EQ(is_newton(entries[i].representative, 3).verdict, Verdict::kNewton);
    for (std::size_t j = i + 1; j < entries.size(); ++j) {
      ASSERT_FALSE(brute_force_iso(entries[i].representative, entries[j].representative, false));
      ASSERT_EQ(brute_force_iso(entries[i].representative, entries[j].representative, true),
                entries[i].key == entries[j].key);
    }
  }
}

TEST(Enumeration, EntriesAreNormalizedAndSorted) {
  const auto& entries = order3().entries;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& x = entries[i];
    EXPECT_TRUE(canonical_form(x.representative).same_structure(x.representative));
    EXPECT_EQ(canonical_key(x.representative, false), x.key_op);
    EXPECT_EQ(canonical_key(x.representative, true), x.key);
    EXPECT_EQ(x.delta, degree_sequence(x.representative));
    EXPECT_EQ(x.delta_star, face_degree_sequence(x.representative));
    EXPECT_GE(x.max_face, 4);
    EXPECT_LE(x.max_face, 6);
    if (i > 0) {
      EXPECT_LT(std::tie(entries[i - 1].key, entries[i - 1].key_op), std::tie(x.key, x.key_op));
    }
  }
}

TEST(Enumeration, ClosedUnderDualityAndMirror) {
  std::set<CanonicalKey> op, refl;
  for (const auto& x : order3().entries) {
    op.insert(x.key_op);
    refl.insert(x.key);
  }
  for (const auto& x : order3().entries) {
    EXPECT_TRUE(op.count(canonical_key(mirror(x.representative), false)));
    EXPECT_TRUE(op.count(canonical_key(mirror(dual(x.representative)), false)));
    EXPECT_TRUE(op.count(canonical_key(dual(x.representative), false)));
    EXPECT_TRUE(refl.count(x.dual_key));
    EXPECT_EQ(x.self_dual, x.dual_key == x.key);
  }
}

TEST(Enumeration, DeterministicAcrossJobs) {
  const auto one = enumerate_newton({3, 1, true});
  const auto four = enumerate_newton({3, 4, true});
  ASSERT_EQ(one.entries.size(), four.entries.size());
  for (std::size_t i = 0; i < one.entries.size(); ++i) {
    EXPECT_EQ(one.entries[i].key_op, four.entries[i].key_op);
    EXPECT_TRUE(one.entries[i].representative == four.entries[i].representative);
  }
  EXPECT_EQ(one.stats.accepted, four.stats.accepted);
}

TEST(Enumeration, UnsupportedOrders) {
  EXPECT_THROW(require_supported_order(1), UnsupportedOrder);
  EXPECT_THROW(require_supported_order(5), UnsupportedOrder);
  EXPECT_THROW(enumerate_newton({5, 1, true}), UnsupportedOrder);
  EXPECT_NO_THROW(require_supported_order(4));
  EXPECT_FALSE(is_certified_order(4));
  EXPECT_TRUE(is_certified_order(3));
}

TEST(Classification, OrderThreeCounts) {
  const auto report = classify(order3().entries);
  EXPECT_EQ(report.count_op, 14u);
  EXPECT_EQ(report.count_refl, 12u);
  EXPECT_EQ(report.count_dual, 9u);
  EXPECT_EQ(report.self_dual_count, 6u);
  EXPECT_EQ(report.dual_pairs.size(), 3u);
}

TEST(Classification, Strata) {
  const auto s = strata_check(order3().entries);
  const auto* h321 = s.find(6, {3, 2, 1});
  const auto* h222 = s.find(6, {2, 2, 2});
  const auto* p221 = s.find(5, {2, 2, 1});
  const auto* q211 = s.find(4, {2, 1, 1});
  ASSERT_TRUE(h321 && h222 && p221 && q211);
  EXPECT_EQ(h321->refl_classes, 2u);
  EXPECT_EQ(h321->self_dual_classes, 2u);
  EXPECT_EQ(h222->refl_classes, 2u);
  EXPECT_EQ(h222->self_dual_classes, 0u);
  EXPECT_EQ(p221->op_classes, 7u);
  EXPECT_EQ(p221->refl_classes, 5u);
  EXPECT_EQ(p221->reflection_merges, 2u);
  EXPECT_EQ(p221->dual_pairs, 1u);
  EXPECT_EQ(q211->refl_classes, 1u);
  EXPECT_EQ(q211->self_dual_classes, 1u);
  EXPECT_EQ(s.dual_only.refl_classes, 2u);
  EXPECT_EQ(s.refl_classes_with_max_face(6), 4u);
}

TEST(Classification, MissingDualIsAConsistencyFailure) {
  auto entries = order3().entries;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!entries[i].self_dual) {
      entries.erase(entries.begin() + static_cast<long>(i));
      break;
    }
  }
  EXPECT_THROW(classify(entries), ConsistencyError);
}

TEST(Labels, StratumCodes) {
  auto entries = order3().entries;
  const auto labels = label_atlas(entries);
  EXPECT_EQ(labels.size(), 9u);
  std::set<std::string> codes;
  for (const auto& l : labels) codes.insert(l.label.substr(0, 4));
  EXPECT_TRUE(codes.count("H321"));
  EXPECT_TRUE(codes.count("H222"));
  EXPECT_TRUE(codes.count("P221"));
  EXPECT_TRUE(codes.count("Q211"));
  for (const auto& x : entries) EXPECT_FALSE(x.label.empty());
  std::size_t starred = 0;
  for (const auto& x : entries) starred += x.label.back() == '*';
  EXPECT_GT(starred, 0u);
}

TEST(Labels, WrongCountsAreRejected) {
  auto entries = order3().entries;
  entries.pop_back();
  EXPECT_THROW(label_atlas(entries), ConsistencyError);
}
