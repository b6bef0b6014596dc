#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "newton_maps/canon.hpp"
#include "newton_maps/duality.hpp"
#include "newton_maps/enumerate.hpp"
#include "test_support.hpp"

using namespace newton_maps;
using namespace testing_support;

namespace {

const char* kFixtures[] = {"n2.map", "hexagon_triangles.map", "all_quads.map", "n2_non_euler.map", "n2_sphere.map"};

// A pentagon face v1 v3 v2 v1 v2 and the three places the sixth edge can go.
const std::string kPentagonFace = "v1 a v3 b v2 c v1 d v2 e";

std::vector<EmbeddedMap> pentagon_face(VertexId u, VertexId w) {
  return maps_with_face(3, {{0, 2}, {2, 1}, {1, 0}, {0, 1}, {1, 0}, {u, w}},
                        {"a", "b", "c", "d", "e", "f"}, kPentagonFace);
}

std::set<CanonicalKey> keys(const std::vector<EmbeddedMap>& maps, bool reflect) {
  std::set<CanonicalKey> out;
  for (const auto& m : maps) out.insert(canonical_key(m, reflect));
  return out;
}

}  // namespace

TEST(Key, InvariantUnderRelabeling) {
  std::mt19937 rng(42);
  for (const char* name : kFixtures) {
    const auto m = load_fixture(name);
    const auto k = canonical_key(m, false), kr = canonical_key(m, true);
    for (int i = 0; i < 100; ++i) {
      const auto r = relabeled(m, rng);
      ASSERT_EQ(canonical_key(r, false), k) << name;
      ASSERT_EQ(canonical_key(r, true), kr) << name;
    }
  }
}

TEST(Key, InvariantUnderArbitraryDartBijection) {
  std::mt19937 rng(5);
  for (const char* name : kFixtures) {
    const auto m = load_fixture(name);
    const auto k = canonical_key(m.sigma_perm(), m.alpha_perm(), false);
    for (int i = 0; i < 100; ++i) {
      const auto [sigma, alpha] = dart_relabeled(m, rng);
      ASSERT_EQ(canonical_key(sigma, alpha, false), k) << name;
      ASSERT_EQ(minimal_trace(sigma, alpha).trace, k.trace) << name;
    }
  }
}

TEST(Key, ReflectionKeyCoversMirror) {
  for (const char* name : kFixtures) {
    const auto m = load_fixture(name);
    EXPECT_EQ(canonical_key(m, true), canonical_key(mirror(m), true)) << name;
    EXPECT_EQ(canonical_key(m, true).trace,
              std::min(canonical_key(m, false).trace, canonical_key(mirror(m), false).trace));
  }
}

TEST(Key, HexRoundTrip) {
  for (const char* name : kFixtures) {
    for (bool reflect : {false, true}) {
      const auto k = canonical_key(load_fixture(name), reflect);
      const auto back = CanonicalKey::from_hex(k.hex());
      EXPECT_EQ(back, k);
      EXPECT_EQ(back.hex(), k.hex());
    }
  }
  EXPECT_NE(canonical_key(load_fixture("n2.map"), true).hex(),
            canonical_key(load_fixture("n2.map"), false).hex());
}

TEST(Key, TraceIsAPermutationEncoding) {
  const auto m = load_fixture("hexagon_triangles.map");
  std::vector<Dart> order;
  const auto t = dart_trace(m.sigma_perm(), m.alpha_perm(), 0, &order);
  ASSERT_EQ(t.size(), 2 * m.num_darts());
  ASSERT_EQ(order.size(), m.num_darts());
  EXPECT_EQ(order.front(), 0);
  std::set<Dart> seen(order.begin(), order.end());
  EXPECT_EQ(seen.size(), m.num_darts());
}

TEST(Equivalence, WitnessesVerify) {
  std::mt19937 rng(3);
  for (const char* name : kFixtures) {
    const auto m = load_fixture(name);
    for (int i = 0; i < 20; ++i) {
      const auto r = relabeled(m, rng);
      const auto w = are_equivalent(m, r, false);
      ASSERT_TRUE(w.has_value());
      EXPECT_FALSE(w->reverses);
      EXPECT_TRUE(verify_witness(m, r, *w));
      const auto wm = are_equivalent(m, mirror(r), true);
      ASSERT_TRUE(wm.has_value());
      EXPECT_TRUE(verify_witness(m, mirror(r), *wm));
    }
  }
}

TEST(Equivalence, CorruptedWitnessIsRejected) {
  const auto m = load_fixture("hexagon_triangles.map");
  auto w = are_equivalent(m, m, false);
  ASSERT_TRUE(w.has_value());
  std::swap(w->dart_map[0], w->dart_map[3]);
  EXPECT_FALSE(verify_witness(m, m, *w));
}

TEST(Equivalence, DifferentSizesAreNotEquivalent) {
  EXPECT_FALSE(are_equivalent(load_fixture("n2.map"), load_fixture("hexagon_triangles.map"), true).has_value());
}

TEST(BruteForce, AgreesOnAllOrderTwoPairs) {
  std::vector<EmbeddedMap> all;
  for_each_candidate(2, true, [&](const EmbeddedMap& m) { all.push_back(m); });
  ASSERT_EQ(all.size(), 36u);
  for (const auto& a : all) {
    for (const auto& b : all) {
      for (bool reflect : {false, true}) {
        const bool keyed = canonical_key(a, reflect) == canonical_key(b, reflect);
        ASSERT_EQ(brute_force_iso(a, b, reflect), keyed);
        ASSERT_EQ(are_equivalent(a, b, reflect).has_value(), keyed);
      }
    }
  }
}

TEST(BruteForce, AgreesOnSampledOrderThreePairs) {
  std::vector<EmbeddedMap> all;
  for_each_candidate(3, true, [&](const EmbeddedMap& m) {
    if (euler_characteristic(m).chi == 0) all.push_back(m);
  });
  std::mt19937 rng(2024);
  std::size_t positive = 0;
  for (int i = 0; i < 1500; ++i) {
    const auto& a = all[rng() % all.size()];
    // every third pair is a disguised copy so that both outcomes are exercised
    const EmbeddedMap b = i % 3 == 0 ? (i % 2 ? mirror(relabeled(a, rng)) : relabeled(a, rng))
                                     : all[rng() % all.size()];
    for (bool reflect : {false, true}) {
      const bool keyed = canonical_key(a, reflect) == canonical_key(b, reflect);
      ASSERT_EQ(brute_force_iso(a, b, reflect), keyed);
      positive += keyed;
    }
  }
  EXPECT_GT(positive, 500u);
}

TEST(BruteForce, RefusesLargeInputs) {
  std::vector<Dart> sigma(kBruteForceDartLimit + 2), alpha(kBruteForceDartLimit + 2);
  for (std::size_t d = 0; d < sigma.size(); ++d) {
    sigma[d] = static_cast<Dart>(d);
    alpha[d] = partner_dart(static_cast<Dart>(d));
  }
  EXPECT_THROW(brute_force_iso(sigma, alpha, sigma, alpha, false), std::length_error);
}

TEST(Equivalence, IsAnEquivalenceRelationOnOrderThree) {
  std::map<CanonicalKey, std::vector<EmbeddedMap>> classes;
  for (const auto& m : collect_candidates(3, true)) classes[canonical_key(m, false)].push_back(m);
  EXPECT_EQ(classes.size(), 14u);
  std::mt19937 rng(9);
  for (const auto& [key, members] : classes) {
    const auto& rep = members.front();
    for (const auto& m : members) {
      const auto w = are_equivalent(rep, m, false);
      ASSERT_TRUE(w.has_value());
      ASSERT_TRUE(verify_witness(rep, m, *w));
      const auto back = are_equivalent(m, rep, false);
      ASSERT_TRUE(back.has_value());
      ASSERT_TRUE(verify_witness(m, rep, *back));
    }
    // transitivity through random triples
    for (int i = 0; i < 10; ++i) {
      const auto& x = members[rng() % members.size()];
      const auto& y = members[rng() % members.size()];
      ASSERT_TRUE(are_equivalent(x, y, false).has_value());
    }
  }
  for (auto i = classes.begin(); i != classes.end(); ++i) {
    for (auto j = std::next(i); j != classes.end(); ++j) {
      ASSERT_FALSE(brute_force_iso(i->second.front(), j->second.front(), false));
    }
  }
}

TEST(CanonicalForm, EquivalentMapsNormalizeIdentically) {
  std::mt19937 rng(77);
  for (const char* name : kFixtures) {
    const auto m = load_fixture(name);
    const auto c = canonical_form(m);
    for (int i = 0; i < 20; ++i) ASSERT_TRUE(canonical_form(relabeled(m, rng)).same_structure(c));
    EXPECT_TRUE(are_equivalent(c, m, false).has_value());
    EXPECT_EQ(c.vertex_name(0), "v1");
    EXPECT_EQ(c.edge_name(0), "a");
  }
}

TEST(PentagonFace, EdgeBetweenV1AndV2GivesOneChiralPair) {
  const auto maps = pentagon_face(0, 1);
  EXPECT_EQ(keys(maps, false).size(), 4u);
  EXPECT_EQ(keys(maps, true).size(), 3u);
  // the merged pair: one orientation-reversing isomorphism, none preserving
  std::map<CanonicalKey, std::vector<CanonicalKey>> by_refl;
  for (const auto& m : maps) by_refl[canonical_key(m, true)].push_back(canonical_key(m, false));
  std::size_t chiral = 0;
  for (auto& [rk, ops] : by_refl) {
    std::sort(ops.begin(), ops.end());
    ops.erase(std::unique(ops.begin(), ops.end()), ops.end());
    if (ops.size() == 2) ++chiral;
  }
  EXPECT_EQ(chiral, 1u);
}

TEST(PentagonFace, ChiralPairIsMergedOnlyByReflection) {
  const auto maps = pentagon_face(0, 1);
  for (const auto& a : maps) {
    for (const auto& b : maps) {
      if (canonical_key(a, true) != canonical_key(b, true)) continue;
      if (canonical_key(a, false) == canonical_key(b, false)) continue;
      EXPECT_FALSE(are_equivalent(a, b, false).has_value());
      const auto w = are_equivalent(a, b, true);
      ASSERT_TRUE(w.has_value());
      EXPECT_TRUE(w->reverses);
      EXPECT_TRUE(verify_witness(a, b, *w));
    }
  }
}

TEST(PentagonFace, EdgeBetweenV1AndV3GivesTwoClasses) {
  const auto maps = pentagon_face(0, 2);
  EXPECT_EQ(keys(maps, false).size(), 2u);
  EXPECT_EQ(keys(maps, true).size(), 2u);
}

TEST(PentagonFace, EdgeBetweenV2AndV3IsOnlyEquivalentUpToReflection) {
  auto known = keys(pentagon_face(0, 1), false);
  for (const auto& k : keys(pentagon_face(0, 2), false)) known.insert(k);
  auto known_refl = keys(pentagon_face(0, 1), true);
  for (const auto& k : keys(pentagon_face(0, 2), true)) known_refl.insert(k);
  const auto maps = pentagon_face(1, 2);
  std::size_t new_op = 0;
  for (const auto& k : keys(maps, false)) new_op += !known.count(k);
  EXPECT_EQ(new_op, 1u);
  for (const auto& k : keys(maps, true)) EXPECT_TRUE(known_refl.count(k));
}

TEST(PentagonFace, DualPairAndSelfDualMembers) {
  std::vector<EmbeddedMap> maps = pentagon_face(0, 1);
  for (const auto& m : pentagon_face(0, 2)) maps.push_back(m);
  std::map<CanonicalKey, EmbeddedMap> reps;
  for (const auto& m : maps) reps.emplace(canonical_key(m, false), m);
  ASSERT_EQ(reps.size(), 6u);
  std::size_t self_dual = 0, paired = 0;
  for (const auto& [k, m] : reps) {
    if (is_self_dual(m, false)) {
      ++self_dual;
    } else {
      const auto dk = canonical_key(mirror(dual(m)), false);
      if (reps.count(dk)) ++paired;
    }
  }
  EXPECT_EQ(self_dual, 4u);
  EXPECT_EQ(paired, 2u);
}
