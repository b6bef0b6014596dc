// One line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <unistd.h>

#include "newton_maps/canon.hpp"
#include "newton_maps/cli.hpp"
#include "newton_maps/duality.hpp"
#include "newton_maps/enumerate.hpp"
#include "newton_maps/map_io.hpp"
#include "newton_maps/newton.hpp"
#include "test_support.hpp"

using namespace newton_maps;
using namespace testing_support;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int id, const std::string& title, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << "  " << id << "  " << title << ": " << detail << std::endl;
  if (!ok) ++failures;
}

struct CliRun {
  int code;
  std::string out;
  double seconds;
};

CliRun cli(std::vector<std::string> args) {
  args.insert(args.begin(), "newton-maps");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const auto t0 = Clock::now();
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  const double s = std::chrono::duration<double>(Clock::now() - t0).count();
  return {code, out.str(), s};
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void order_two() {
  const auto r = cli({"classify", "--order", "2", "--format", "json"});
  const auto j = nlohmann::json::parse(r.out);
  const auto atlas = enumerate_newton({2, 1, true});
  bool lengths = atlas.entries.size() == 1;
  if (lengths) {
    for (const auto& w : facial_walks(atlas.entries.front().representative)) lengths &= w.length() == 4;
    lengths &= facial_walks(atlas.entries.front().representative).size() == 2;
  }
  const bool ok = r.code == 0 && j["count_refl"] == 1 && j["count_dual"] == 1 && j["self_dual_count"] == 1 &&
                  lengths && r.seconds < 1.0;
  std::ostringstream d;
  d << "classes=" << j["count_refl"] << " self_dual=" << j["self_dual_count"]
    << " walks-of-length-4=" << (lengths ? "yes" : "no") << " time=" << r.seconds << "s";
  report(1, "order-2 classification", ok, d.str());
}

void order_three_counts(const nlohmann::json& j, double seconds) {
  const bool ok = j["count_refl"] == 12 && j["count_dual"] == 9 && seconds < 60.0;
  std::ostringstream d;
  d << "count_refl=" << j["count_refl"] << " count_dual=" << j["count_dual"] << " time=" << seconds
    << "s (jobs=1)";
  report(2, "order-3 headline counts", ok, d.str());
}

void order_three_structure(const nlohmann::json& j) {
  const bool ok = j["self_dual_count"] == 6 && j["dual_pairs"].size() == 3 &&
                  j["count_refl"].get<int>() == j["self_dual_count"].get<int>() + 2 * 3;
  std::ostringstream d;
  d << "self_dual=" << j["self_dual_count"] << " dual_pairs=" << j["dual_pairs"].size();
  report(3, "order-3 self-duality structure", ok, d.str());
}

void strata(const Enumeration& e) {
  const auto s = strata_check(e.entries);
  std::vector<std::string> parts;
  bool ok = true;
  auto check = [&](const std::string& what, std::size_t got, std::size_t want) {
    const bool pass = got == want;
    ok &= pass;
    parts.push_back(what + "=" + std::to_string(got) + (pass ? "" : " (want " + std::to_string(want) + ")"));
  };
  const Stratum none{};
  const auto* h222 = s.find(6, {2, 2, 2});
  const auto* h321 = s.find(6, {3, 2, 1});
  const auto* q211 = s.find(4, {2, 1, 1});
  check("6(2,2,2)", (h222 ? *h222 : none).refl_classes, 2);
  check("6(3,2,1)", (h321 ? *h321 : none).refl_classes, 2);
  check("6(3,2,1).self_dual", (h321 ? *h321 : none).self_dual_classes, 2);
  std::size_t op5 = 0, refl5 = 0, pairs5 = 0;
  for (const auto& st : s.strata) {
    if (st.max_face != 5) continue;
    op5 += st.op_classes;
    refl5 += st.refl_classes;
    pairs5 += st.dual_pairs;
  }
  check("5.op", op5, 6);
  check("5.merges", op5 - refl5, 1);
  check("5.dual_pairs", pairs5, 1);
  check("4", (q211 ? *q211 : none).refl_classes, 1);
  check("4.self_dual", (q211 ? *q211 : none).self_dual_classes, 1);
  // the two (3,2,1) classes must be inequivalent even under reflection
  std::vector<const AtlasEntry*> sub;
  for (const auto& x : e.entries) {
    if (x.max_face == 6 && x.vertex_pattern == std::vector<int>{3, 2, 1} && x.delta.front() <= x.max_face) {
      sub.push_back(&x);
    }
  }
  bool distinct = true;
  for (std::size_t i = 0; i < sub.size(); ++i)
    for (std::size_t k = i + 1; k < sub.size(); ++k)
      if (sub[i]->key == sub[k]->key) distinct = false;
  ok &= distinct;
  std::string d;
  for (const auto& p : parts) d += (d.empty() ? "" : " ") + p;
  report(4, "order-3 strata", ok, d + (distinct ? "" : " 6(3,2,1) not distinct"));
}

void derived_op_count(const nlohmann::json& j) {
  const int op = j["count_op"], refl = j["count_refl"];
  const bool ok = op == 13 && op == refl + 1;
  std::ostringstream d;
  d << "count_op=" << op << " count_refl=" << refl << " reflection merges=" << op - refl << " (want 13 = 12 + 1)";
  report(5, "orientation-preserving count", ok, d.str());
}

void properties(const Enumeration& e) {
  std::vector<std::string> failed;
  std::size_t checks = 0;

  bool involution = true, refine = true;
  for (const auto& x : e.entries) {
    const auto& m = x.representative;
    involution &= canonical_key(dual(dual(m)), false) == canonical_key(m, false);
    const auto ec = euler_characteristic(refinement(m).base);
    refine &= ec.vertices == 12 && ec.edges == 24 && ec.faces == 12;
    ++checks;
  }
  if (!involution) failed.push_back("dual-involution");
  if (!refine) failed.push_back("refinement-counts");

  bool e_iff = true;
  std::size_t candidates = 0;
  for (int order : {2, 3}) {
    for_each_candidate(order, true, [&](const EmbeddedMap& m) {
      const auto d = dual(m);
      bool loopless = true;
      for (std::size_t k = 0; k < d.num_edges(); ++k)
        loopless &= d.origin(static_cast<Dart>(2 * k)) != d.origin(static_cast<Dart>(2 * k + 1));
      e_iff &= check_e_property(m).holds == loopless;
      ++candidates;
    });
  }
  if (!e_iff) failed.push_back("E-iff-loopless-dual");

  std::mt19937 rng(20240611);
  bool invariant = true;
  for (const char* name : {"n2.map", "hexagon_triangles.map", "all_quads.map", "n2_non_euler.map", "n2_sphere.map"}) {
    const auto m = load_fixture(name);
    const auto k = canonical_key(m, false), kr = canonical_key(m, true);
    for (int i = 0; i < 100; ++i) {
      const auto r = relabeled(m, rng);
      invariant &= canonical_key(r, false) == k && canonical_key(r, true) == kr;
    }
  }
  if (!invariant) failed.push_back("key-invariance");

  bool agree = true;
  std::size_t pairs = 0;
  std::vector<EmbeddedMap> two, three;
  for_each_candidate(2, true, [&](const EmbeddedMap& m) { two.push_back(m); });
  for (const auto& a : two)
    for (const auto& b : two)
      for (bool refl : {false, true}) {
        agree &= are_equivalent(a, b, refl).has_value() == brute_force_iso(a, b, refl);
        ++pairs;
      }
  for_each_candidate(3, true, [&](const EmbeddedMap& m) {
    if (euler_characteristic(m).chi == 0) three.push_back(m);
  });
  for (int i = 0; i < 1200; ++i) {
    const auto& a = three[rng() % three.size()];
    const EmbeddedMap b = i % 3 == 0 ? relabeled(i % 2 ? mirror(a) : a, rng) : three[rng() % three.size()];
    for (bool refl : {false, true}) {
      agree &= are_equivalent(a, b, refl).has_value() == brute_force_iso(a, b, refl);
      ++pairs;
    }
  }
  if (!agree) failed.push_back("are_equivalent-vs-brute-force");

  std::ostringstream d;
  d << e.entries.size() << " atlas entries, " << candidates << " candidates, 500 relabelings, " << pairs
    << " iso pairs";
  if (!failed.empty()) {
    d << "; failing:";
    for (const auto& f : failed) d << ' ' << f;
  }
  report(6, "property suites", failed.empty(), d.str());
}

void determinism() {
  const auto base = fs::temp_directory_path() / ("newton-maps-acceptance-" + std::to_string(::getpid()));
  const auto a = base / "jobs1", b = base / "jobs4";
  const auto ra = cli({"classify", "--order", "3", "--jobs", "1", "--out", a.string()});
  const auto rb = cli({"classify", "--order", "3", "--jobs", "4", "--out", b.string()});
  const std::string file = "atlas-order3.jsonl";
  const auto fa = read_file(a / file), fb = read_file(b / file);
  const bool ok = ra.code == 0 && rb.code == 0 && !fa.empty() && fa == fb &&
                  read_file(a / "classification-order3.json") == read_file(b / "classification-order3.json");
  std::ostringstream d;
  d << "jobs=1 vs jobs=4, " << fa.size() << " bytes, " << (fa == fb ? "identical" : "differ");
  report(7, "determinism", ok, d.str());
  fs::remove_all(base);
}

}  // namespace

int main() {
  order_two();
  const auto r3 = cli({"classify", "--order", "3", "--jobs", "1", "--format", "json"});
  const auto j3 = nlohmann::json::parse(r3.out);
  const auto e3 = enumerate_newton({3, 1, true});
  order_three_counts(j3, r3.seconds);
  order_three_structure(j3);
  strata(e3);
  derived_op_count(j3);
  properties(e3);
  determinism();
  std::cout << (failures ? std::to_string(failures) + " criteria failed" : "all criteria passed") << std::endl;
  return failures ? 1 : 0;
}
