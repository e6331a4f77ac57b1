// Exercises the shared-library C API end to end: status codes, JSON
// payload shapes, violation documents, and the hygiene rules from the
// header (outputs untouched on hard errors, thread-local last_error,
// deterministic output for identical calls).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstring>
#include <memory>
#include <string>

#include "json.hpp"
#include "ultra.h"

using nlohmann::json;

namespace {

// Owns a char* produced by the library.
struct OutStr {
  char* p = nullptr;
  OutStr() = default;
  OutStr(const OutStr&) = delete;
  OutStr& operator=(const OutStr&) = delete;
  ~OutStr() { ultra_free_str(p); }
  json parse() const {
    REQUIRE(p != nullptr);
    return json::parse(p);
  }
  std::string text() const {
    REQUIRE(p != nullptr);
    return p;
  }
};

using SpacePtr = std::unique_ptr<ultra_space, decltype(&ultra_space_close)>;
using OrderPtr = std::unique_ptr<ultra_order, decltype(&ultra_order_close)>;

SpacePtr open_space(const std::string& text, int metric = 0) {
  ultra_space* raw = nullptr;
  OutStr invalid;
  const ultra_status st = ultra_space_open(text.c_str(), metric, &raw, &invalid.p);
  REQUIRE(st == ULTRA_OK);
  return SpacePtr(raw, &ultra_space_close);
}

OrderPtr open_order(const std::string& text) {
  ultra_order* raw = nullptr;
  OutStr invalid;
  const ultra_status st = ultra_order_open(text.c_str(), &raw, &invalid.p);
  REQUIRE(st == ULTRA_OK);
  return OrderPtr(raw, &ultra_order_close);
}

std::string gen_padic_text(long p, int precision) {
  OutStr out;
  REQUIRE(ultra_gen_padic(p, precision, 2048, &out.p) == ULTRA_OK);
  return out.text();
}

// Space documents used across the cases.
const char* kSpaceOk = R"({
  "labels": ["a", "b", "c"],
  "dist": [["0", "1/2", "1/2"], ["1/2", "0", "1/4"], ["1/2", "1/4", "0"]]
})";

const char* kSpaceBad = R"({
  "labels": ["a", "b", "c"],
  "dist": [["0", "1", "3"], ["1", "0", "2"], ["3", "2", "0"]]
})";

const char* kSpaceMetric = R"({
  "labels": ["x", "y", "z"],
  "dist": [["0", "1", "2"], ["1", "0", "1"], ["2", "1", "0"]]
})";

const char* kWeighted = R"({
  "labels": ["a", "b", "c"],
  "dist": [["0", "1/2", "1/2"], ["1/2", "0", "1/4"], ["1/2", "1/4", "0"]],
  "phi": ["1", "1/2", "0"]
})";

const char* kOrderQuasi = R"({
  "n": 3,
  "leq": [[1, 1, 1], [0, 1, 0], [0, 0, 1]],
  "phi": ["3", "1", "1"]
})";

const char* kOrderStrict = R"({"n": 3, "lt": [[0, 1, 1], [0, 0, 0], [0, 0, 0]]})";

const char* kOrderBad = R"({
  "n": 3,
  "leq": [[1, 1, 0], [0, 1, 1], [0, 0, 1]],
  "phi": ["2", "1", "0"]
})";

// 3x + 1 on the 27-point carrier, written point-index by point-index.
std::string map27_text() {
  json image = json::array();
  for (long i = 0; i < 27; ++i) image.push_back((3 * i + 1) % 27);
  return json{{"image", image}}.dump();
}

std::string identity_map_text(long n) {
  json image = json::array();
  for (long i = 0; i < n; ++i) image.push_back(i);
  return json{{"image", image}}.dump();
}

}  // namespace

TEST_CASE("version and string hygiene") {
  REQUIRE(ultra_version() != nullptr);
  CHECK(std::string(ultra_version()) == "1.0.0");
  REQUIRE(ultra_last_error() != nullptr);
  ultra_free_str(nullptr);  // must be a no-op

  // A failing call records a message for this thread.
  OutStr out;
  CHECK(ultra_space_check(nullptr, 0, &out.p) == ULTRA_ERR_ARG);
  CHECK(std::string(ultra_last_error()).find("null") != std::string::npos);
  CHECK(out.p == nullptr);  // hard errors leave outputs untouched
}

TEST_CASE("space check reports kind and distinct values") {
  OutStr ok;
  REQUIRE(ultra_space_check(kSpaceOk, 0, &ok.p) == ULTRA_OK);
  const json j = ok.parse();
  CHECK(j["points"] == 3);
  CHECK(j["kind"] == "ultrametric");
  CHECK(j["distinct_values"] == 3);  // {0, 1/4, 1/2}

  OutStr metric;
  REQUIRE(ultra_space_check(kSpaceMetric, 1, &metric.p) == ULTRA_OK);
  CHECK(metric.parse()["kind"] == "metric");

  // The same matrix fails the ultrametric check with a lex-least witness.
  OutStr bad;
  REQUIRE(ultra_space_check(kSpaceBad, 0, &bad.p) == ULTRA_INVALID);
  const json v = bad.parse()["violations"];
  REQUIRE(v.size() == 1);
  CHECK(v[0]["law"] == "strong-triangle");
  CHECK(v[0]["witness"] == json::array({0, 1, 2}));

  // ...but it is a perfectly fine ordinary metric.
  OutStr asMetric;
  CHECK(ultra_space_check(kSpaceBad, 1, &asMetric.p) == ULTRA_OK);

  OutStr parse;
  CHECK(ultra_space_check("{", 0, &parse.p) == ULTRA_ERR_PARSE);
  CHECK(parse.p == nullptr);
  OutStr shape;
  CHECK(ultra_space_check(R"({"labels": ["a", "b"], "dist": [["0"]]})", 0, &shape.p) ==
        ULTRA_ERR_PARSE);
}

TEST_CASE("space open round-trips through to_json") {
  const std::string padic9 = gen_padic_text(3, 2);
  SpacePtr s = open_space(padic9);
  OutStr round;
  REQUIRE(ultra_space_to_json(s.get(), &round.p) == ULTRA_OK);
  CHECK(round.parse() == json::parse(padic9));

  CHECK(ultra_space_to_json(nullptr, &round.p) == ULTRA_ERR_ARG);

  // Opening an invalid document writes the violation report and leaves
  // the handle untouched.
  ultra_space* raw = nullptr;
  OutStr invalid;
  REQUIRE(ultra_space_open(kSpaceBad, 0, &raw, &invalid.p) == ULTRA_INVALID);
  CHECK(raw == nullptr);
  CHECK(invalid.parse()["violations"][0]["law"] == "strong-triangle");

  ultra_space* rawNullOut = nullptr;
  OutStr argErr;
  CHECK(ultra_space_open(nullptr, 0, &rawNullOut, &argErr.p) == ULTRA_ERR_ARG);
  CHECK(ultra_space_open(kSpaceOk, 0, nullptr, &argErr.p) == ULTRA_ERR_ARG);
}

TEST_CASE("generators produce valid documents and respect limits") {
  OutStr disc;
  REQUIRE(ultra_gen_discrete(3, &disc.p) == ULTRA_OK);
  const json d = disc.parse();
  CHECK(d["labels"] == json::array({"1", "2", "3"}));
  CHECK(d["dist"][0][1] == "1");
  CHECK(d["dist"][2][2] == "0");

  OutStr zero;
  CHECK(ultra_gen_discrete(0, &zero.p) == ULTRA_ERR_ARG);

  OutStr r1, r2, r3;
  REQUIRE(ultra_gen_random(16, 42, &r1.p) == ULTRA_OK);
  REQUIRE(ultra_gen_random(16, 42, &r2.p) == ULTRA_OK);
  REQUIRE(ultra_gen_random(16, 43, &r3.p) == ULTRA_OK);
  CHECK(r1.text() == r2.text());     // same seed, same bytes
  CHECK(r1.text() != r3.text());     // seed matters
  OutStr check;
  CHECK(ultra_space_check(r1.text().c_str(), 0, &check.p) == ULTRA_OK);

  OutStr limit;
  CHECK(ultra_gen_padic(2, 12, 2048, &limit.p) == ULTRA_ERR_LIMIT);  // 4096 residues
  OutStr notPrime;
  CHECK(ultra_gen_padic(4, 1, 2048, &notPrime.p) == ULTRA_ERR_ARG);

  OutStr dendro;
  REQUIRE(ultra_gen_dendrogram(
              R"({"leaves": ["a", "b", "c"], "merges": [[0, 1, "1/2"], [3, 2, "1"]]})",
              &dendro.p) == ULTRA_OK);
  const json dj = dendro.parse();
  CHECK(dj["dist"][0][1] == "1/2");
  CHECK(dj["dist"][0][2] == "1");
  CHECK(dj["dist"][1][2] == "1");

  OutStr selfMerge;
  CHECK(ultra_gen_dendrogram(R"({"leaves": ["a", "b"], "merges": [[0, 0, "1"]]})",
                             &selfMerge.p) == ULTRA_ERR_ARG);
}

TEST_CASE("ball membership and comparison payloads") {
  SpacePtr s = open_space(gen_padic_text(3, 2));

  OutStr ball;
  REQUIRE(ultra_ball_members(s.get(), "0", "1/3", &ball.p) == ULTRA_OK);
  const json b = ball.parse();
  CHECK(b["center"] == "0");
  CHECK(b["radius"] == "1/3");
  CHECK(b["size"] == 3);
  CHECK(b["members"] == json::array({"0", "3", "6"}));

  OutStr point;
  REQUIRE(ultra_ball_members(s.get(), "4", "0", &point.p) == ULTRA_OK);
  CHECK(point.parse()["members"] == json::array({"4"}));

  OutStr cmp;
  REQUIRE(ultra_ball_compare(s.get(), "0", "1/3", "3", "1/9", &cmp.p) == ULTRA_OK);
  const json c = cmp.parse();
  CHECK(c["relation"] == "second-inside-first");
  CHECK(c["first"]["size"] == 3);
  CHECK(c["second"]["members"] == json::array({"3"}));

  OutStr eq;
  REQUIRE(ultra_ball_compare(s.get(), "0", "1/3", "6", "1/3", &eq.p) == ULTRA_OK);
  CHECK(eq.parse()["relation"] == "equal");  // recentering at a member

  OutStr dis;
  REQUIRE(ultra_ball_compare(s.get(), "0", "1/9", "1", "1/9", &dis.p) == ULTRA_OK);
  CHECK(dis.parse()["relation"] == "disjoint");

  OutStr err;
  CHECK(ultra_ball_members(s.get(), "nope", "1", &err.p) == ULTRA_ERR_ARG);
  CHECK(ultra_ball_members(s.get(), "0", "-1", &err.p) == ULTRA_ERR_ARG);
  CHECK(ultra_ball_members(s.get(), "0", "wide", &err.p) == ULTRA_ERR_PARSE);
  CHECK(ultra_ball_members(nullptr, "0", "1", &err.p) == ULTRA_ERR_ARG);
  CHECK(err.p == nullptr);
}

TEST_CASE("chain intersection payload and violations") {
  SpacePtr s = open_space(gen_padic_text(3, 2));

  const char* chain = R"({"chain": [
    {"center": "0", "radius": "1"},
    {"center": "3", "radius": "1/3"},
    {"center": "0", "radius": "1/9"}
  ]})";
  OutStr out;
  REQUIRE(ultra_chain_intersect(s.get(), chain, &out.p) == ULTRA_OK);
  const json j = out.parse();
  CHECK(j["balls"] == 3);
  CHECK(j["distinct_balls"] == 3);
  CHECK(j["size"] == 1);
  CHECK(j["intersection"] == json::array({"0"}));
  CHECK(j["witness"] == "0");

  // Repeating a ball collapses in the distinct count but not the length.
  const char* repeated = R"({"chain": [
    {"center": "0", "radius": "1/3"},
    {"center": "3", "radius": "1/3"},
    {"center": "6", "radius": "1/3"}
  ]})";
  OutStr rep;
  REQUIRE(ultra_chain_intersect(s.get(), repeated, &rep.p) == ULTRA_OK);
  CHECK(rep.parse()["balls"] == 3);
  CHECK(rep.parse()["distinct_balls"] == 1);

  const char* notDescending = R"({"chain": [
    {"center": "0", "radius": "1/9"},
    {"center": "1", "radius": "1/3"}
  ]})";
  OutStr bad;
  REQUIRE(ultra_chain_intersect(s.get(), notDescending, &bad.p) == ULTRA_INVALID);
  const json v = bad.parse()["violations"];
  REQUIRE(v.size() == 1);
  CHECK(v[0]["law"] == "descending-chain");
  CHECK(v[0]["witness"] == json::array({1}));

  OutStr err;
  CHECK(ultra_chain_intersect(s.get(), R"({"chain": []})", &err.p) == ULTRA_ERR_ARG);
  CHECK(ultra_chain_intersect(s.get(), R"({"chain": [{"center": "99", "radius": "1"}]})",
                              &err.p) == ULTRA_ERR_ARG);
}

TEST_CASE("order check distinguishes kinds and reports violations") {
  OutStr quasi;
  REQUIRE(ultra_order_check(kOrderQuasi, &quasi.p) == ULTRA_OK);
  const json q = quasi.parse();
  CHECK(q["elements"] == 3);
  CHECK(q["kind"] == "quasi-order");
  CHECK(q["weight"] == "given");

  OutStr strict;
  REQUIRE(ultra_order_check(kOrderStrict, &strict.p) == ULTRA_OK);
  const json st = strict.parse();
  CHECK(st["kind"] == "strict-order");
  CHECK(st["weight"] == "synthesized");

  OutStr strictPhi;
  REQUIRE(ultra_order_check(
              R"({"n": 2, "lt": [[0, 1], [0, 0]], "phi": ["1", "0"]})", &strictPhi.p) ==
          ULTRA_OK);
  CHECK(strictPhi.parse()["weight"] == "given");

  OutStr bad;
  REQUIRE(ultra_order_check(kOrderBad, &bad.p) == ULTRA_INVALID);
  const json v = bad.parse()["violations"];
  CHECK(v[0]["law"] == "transitivity");
  CHECK(v[0]["witness"] == json::array({0, 1, 2}));

  OutStr neither;
  CHECK(ultra_order_check(R"({"n": 1})", &neither.p) == ULTRA_ERR_PARSE);
  OutStr both;
  CHECK(ultra_order_check(R"({"n": 1, "leq": [[1]], "lt": [[0]], "phi": ["0"]})", &both.p) ==
        ULTRA_ERR_PARSE);
}

TEST_CASE("weight descent payload carries the audited ledger") {
  OrderPtr o = open_order(kOrderQuasi);

  OutStr out;
  REQUIRE(ultra_order_maximal(o.get(), 0, 1, &out.p) == ULTRA_OK);
  const json j = out.parse();
  CHECK(j["start"] == 0);
  CHECK(j["element"] == 1);
  CHECK(j["chain"] == json::array({0, 1}));
  CHECK(j["step_count"] == 1);
  const json step = j["steps"][0];
  CHECK(step["from"] == 0);
  CHECK(step["to"] == 1);
  CHECK(step["phi_from"] == "3");
  CHECK(step["floor_from"] == "1");
  CHECK(step["threshold"] == "2");
  CHECK(step["phi_to"] == "1");
  CHECK(j["phi"] == "1");
  CHECK(j["floor"] == "1");
  CHECK(j["maximal"] == true);
  CHECK(j["recheck"]["steps_valid"] == true);
  CHECK(j["recheck"]["definitional_scan"] == true);
  CHECK(j["recheck"]["maximal_set_size"] == 2);

  // Starting at a maximal element descends zero steps.
  OutStr already;
  REQUIRE(ultra_order_maximal(o.get(), 2, 0, &already.p) == ULTRA_OK);
  CHECK(already.parse()["step_count"] == 0);
  CHECK(already.parse().contains("recheck") == false);

  OutStr range;
  CHECK(ultra_order_maximal(o.get(), 5, 0, &range.p) == ULTRA_ERR_ARG);
  CHECK(ultra_order_maximal(nullptr, 0, 0, &range.p) == ULTRA_ERR_ARG);

  // Strict orders go through the closure and report the up-set recheck.
  OrderPtr strict = open_order(kOrderStrict);
  OutStr zorn;
  REQUIRE(ultra_order_maximal(strict.get(), 0, 1, &zorn.p) == ULTRA_OK);
  const json z = zorn.parse();
  CHECK(z["element"] == 1);  // synthesized weights break the tie by index
  CHECK(z["strict_section_empty"] == true);
  CHECK(z["maximal"] == true);
}

TEST_CASE("variational descent payloads") {
  OutStr out;
  REQUIRE(ultra_evp_point(kWeighted, "a", 0, 1, &out.p) == ULTRA_OK);
  const json j = out.parse();
  CHECK(j["u"] == "a");
  CHECK(j["v"] == "c");
  CHECK(j["phi_u"] == "1");
  CHECK(j["phi_v"] == "0");
  CHECK(j["ok"] == true);
  CHECK(j["reachability"]["ok"] == true);
  CHECK(j["minimality"]["checked"] == 2);
  CHECK(j["minimality"]["holds"] == true);
  CHECK(j["descent"]["element"] == 2);
  CHECK(j["recheck"]["independent_evaluation"] == true);

  // A null start means the first point.
  OutStr first;
  REQUIRE(ultra_evp_point(kWeighted, nullptr, 0, 0, &first.p) == ULTRA_OK);
  CHECK(first.parse()["u"] == "a");

  OutStr verify;
  REQUIRE(ultra_evp_verify(kWeighted, "a", "c", 0, &verify.p) == ULTRA_OK);
  const json vr = verify.parse();
  CHECK(vr["ok"] == true);
  CHECK(vr["minimality_checked"] == 2);

  // v = a is unreachable from c: the weight has to drop along descent.
  OutStr unreachable;
  REQUIRE(ultra_evp_verify(kWeighted, "c", "a", 0, &unreachable.p) == ULTRA_INVALID);
  CHECK(unreachable.parse()["violations"][0]["law"] == "reachability");

  // b is reachable from a but not minimal: c still improves on it.
  OutStr notMinimal;
  REQUIRE(ultra_evp_verify(kWeighted, "a", "b", 0, &notMinimal.p) == ULTRA_INVALID);
  const json nm = notMinimal.parse()["violations"];
  CHECK(nm[0]["law"] == "minimality");
  CHECK(nm[0]["witness"] == json::array({1, 2}));

  // An invalid space surfaces as the violation report, not a hard error.
  const std::string badWeighted = std::string(R"({
    "labels": ["a", "b", "c"],
    "dist": [["0", "1", "3"], ["1", "0", "2"], ["3", "2", "0"]],
    "phi": ["1", "1/2", "0"]
  })");
  OutStr badSpace;
  REQUIRE(ultra_evp_point(badWeighted.c_str(), "a", 0, 0, &badSpace.p) == ULTRA_INVALID);
  CHECK(badSpace.parse()["violations"][0]["law"] == "strong-triangle");

  // The plain-metric route works through the same entry point.
  const std::string weightedMetric = std::string(R"({
    "labels": ["x", "y", "z"],
    "dist": [["0", "1", "2"], ["1", "0", "1"], ["2", "1", "0"]],
    "phi": ["2", "1", "0"]
  })");
  OutStr metric;
  REQUIRE(ultra_evp_point(weightedMetric.c_str(), "x", 1, 1, &metric.p) == ULTRA_OK);
  CHECK(metric.parse()["v"] == "z");
  CHECK(metric.parse()["recheck"]["independent_evaluation"] == true);

  OutStr err;
  CHECK(ultra_evp_point(kWeighted, "zz", 0, 0, &err.p) == ULTRA_ERR_ARG);
  CHECK(ultra_evp_verify(kWeighted, "a", nullptr, 0, &err.p) == ULTRA_ERR_ARG);
}

TEST_CASE("fixpoint payload with strictly nested certificate") {
  SpacePtr s = open_space(gen_padic_text(3, 3));
  const std::string map = map27_text();

  OutStr out;
  REQUIRE(ultra_fixpoint(s.get(), map.c_str(), "0", 1, &out.p) == ULTRA_OK);
  const json j = out.parse();
  CHECK(j["start"] == "0");
  CHECK(j["point"] == "13");
  CHECK(j["iterations"] == 3);
  const json cert = j["certificate"];
  REQUIRE(cert.size() == 4);
  CHECK(cert[0] == json{{"center", "0"}, {"radius", "1"}});
  CHECK(cert[1] == json{{"center", "1"}, {"radius", "1/3"}});
  CHECK(cert[2] == json{{"center", "4"}, {"radius", "1/9"}});
  CHECK(cert[3] == json{{"center", "13"}, {"radius", "0"}});
  CHECK(j["fixed_set"] == json::array({"13"}));
  CHECK(j["unique"] == true);
  CHECK(j["recheck"]["certificate_valid"] == true);

  // Null start = first point; starting at the fixed point is a 0-step run.
  OutStr fromFix;
  REQUIRE(ultra_fixpoint(s.get(), map.c_str(), "13", 0, &fromFix.p) == ULTRA_OK);
  CHECK(fromFix.parse()["iterations"] == 0);
  CHECK(fromFix.parse()["certificate"].size() == 1);

  // The identity is nonexpansive but not strictly so.
  const std::string identity = identity_map_text(27);
  OutStr invalid;
  REQUIRE(ultra_fixpoint(s.get(), identity.c_str(), nullptr, 0, &invalid.p) == ULTRA_INVALID);
  const json v = invalid.parse()["violations"];
  CHECK(v[0]["law"] == "strictly-nonexpansive");
  CHECK(v[0]["witness"] == json::array({0, 1}));

  OutStr err;
  CHECK(ultra_fixpoint(s.get(), R"({"image": [0]})", nullptr, 0, &err.p) == ULTRA_ERR_PARSE);
  CHECK(ultra_fixpoint(s.get(), identity_map_text(26).c_str(), nullptr, 0, &err.p) ==
        ULTRA_ERR_PARSE);
  CHECK(ultra_fixpoint(s.get(), map.c_str(), "99", 0, &err.p) == ULTRA_ERR_ARG);
  CHECK(ultra_fixpoint(nullptr, map.c_str(), nullptr, 0, &err.p) == ULTRA_ERR_ARG);

  std::string outOfRange = map27_text();
  json oor = json::parse(outOfRange);
  oor["image"][0] = 99;
  OutStr range;
  CHECK(ultra_fixpoint(s.get(), oor.dump().c_str(), nullptr, 0, &range.p) == ULTRA_ERR_ARG);
}

TEST_CASE("banach payload with per-step rate ledger") {
  SpacePtr s = open_space(gen_padic_text(3, 3));
  const std::string map = map27_text();

  OutStr out;
  REQUIRE(ultra_banach(s.get(), map.c_str(), "1/3", "0", 1, &out.p) == ULTRA_OK);
  const json j = out.parse();
  CHECK(j["alpha"] == "1/3");
  CHECK(j["point"] == "13");
  CHECK(j["iterations"] == 3);
  CHECK(j["orbit"] == json::array({"0", "1", "4", "13"}));
  REQUIRE(j["rate"].size() == 4);  // one row per orbit point, endpoint included
  for (const auto& r : j["rate"]) CHECK(r["ok"] == true);
  CHECK(j["rate"][0]["dist"] == "1");
  CHECK(j["rate"][2]["dist"] == "1/9");
  CHECK(j["rate"][3]["dist"] == "0");
  CHECK(j["fixed_set"] == json::array({"13"}));
  CHECK(j["unique"] == true);
  CHECK(j.contains("certificate"));  // ultrametric route keeps the ball chain
  CHECK(j["recheck"]["fixed_point_confirmed"] == true);
  CHECK(j["recheck"]["certificate_valid"] == true);

  // alpha must certify every step: 1/4 is too tight for a 1/3-contraction.
  OutStr tight;
  REQUIRE(ultra_banach(s.get(), map.c_str(), "1/4", "0", 0, &tight.p) == ULTRA_INVALID);
  CHECK(tight.parse()["violations"][0]["law"] == "contraction");

  OutStr err;
  CHECK(ultra_banach(s.get(), map.c_str(), "2", "0", 0, &err.p) == ULTRA_ERR_ARG);
  CHECK(ultra_banach(s.get(), map.c_str(), "-1/2", "0", 0, &err.p) == ULTRA_ERR_ARG);
  CHECK(ultra_banach(s.get(), map.c_str(), nullptr, "0", 0, &err.p) == ULTRA_ERR_ARG);

  // Plain metric spaces run the orbit ledger without a ball certificate.
  SpacePtr metric = open_space(kSpaceMetric, 1);
  OutStr constant;
  REQUIRE(ultra_banach(metric.get(), R"({"image": [2, 2, 2]})", "0", "x", 1, &constant.p) ==
          ULTRA_OK);
  const json c = constant.parse();
  CHECK(c["point"] == "z");
  CHECK(c.contains("certificate") == false);
  CHECK(c["recheck"]["fixed_point_confirmed"] == true);
  CHECK(c["recheck"]["certificate_valid"].is_null());
}

TEST_CASE("arithmetic refinement payload and carrier scan") {
  const char* newton = R"({
    "p": 7, "precision": 4, "poly": ["-2", "0", "1"], "x0": "3", "mode": "newton"
  })";
  OutStr out;
  REQUIRE(ultra_hensel(newton, 1, &out.p) == ULTRA_OK);
  const json j = out.parse();
  CHECK(j["p"] == 7);
  CHECK(j["precision"] == 4);
  CHECK(j["mode"] == "newton");
  CHECK(j["seed"] == "3");
  CHECK(j["point"] == "2166");
  CHECK(j["residual"] == "0");
  REQUIRE(j["chain"].size() >= 2);
  CHECK(j["chain"].back()["radius"] == "0");
  CHECK(j["recheck"]["certificate_valid"] == true);
  CHECK(j["recheck"]["carrier_scan"]["hits"] == 1);  // 2401 residues, scanned
  CHECK(j["recheck"]["carrier_scan"]["only_the_reported_point"] == true);

  // Above the scan bound the recheck says so instead of guessing.
  const char* big = R"({
    "p": 3, "precision": 8, "poly": ["-7", "0", "1"], "x0": "1", "mode": "newton"
  })";
  OutStr bigOut;
  REQUIRE(ultra_hensel(big, 1, &bigOut.p) == ULTRA_OK);
  CHECK(bigOut.parse()["residual"] == "0");
  CHECK(bigOut.parse()["recheck"]["carrier_scan"] == "skipped");

  const char* affine = R"({
    "p": 3, "precision": 3, "poly": ["1", "3"], "x0": "0", "mode": "affine"
  })";
  OutStr aff;
  REQUIRE(ultra_hensel(affine, 1, &aff.p) == ULTRA_OK);
  const json a = aff.parse();
  CHECK(a["mode"] == "affine");
  CHECK(a["point"] == "13");
  CHECK(a.contains("residual") == false);
  CHECK(a["recheck"]["carrier_scan"]["hits"] == 1);

  // Seed diagnostics surface as violation documents.
  const char* singular = R"({
    "p": 3, "precision": 4, "poly": ["-9", "0", "1"], "x0": "0", "mode": "newton"
  })";
  OutStr sing;
  REQUIRE(ultra_hensel(singular, 0, &sing.p) == ULTRA_INVALID);
  CHECK(sing.parse()["violations"][0]["law"] == "unit-derivative-seed");

  const char* notRoot = R"({
    "p": 7, "precision": 2, "poly": ["-2", "0", "1"], "x0": "1", "mode": "newton"
  })";
  OutStr nr;
  REQUIRE(ultra_hensel(notRoot, 0, &nr.p) == ULTRA_INVALID);
  CHECK(nr.parse()["violations"][0]["law"] == "simple-root-seed");

  OutStr err;
  CHECK(ultra_hensel(nullptr, 0, &err.p) == ULTRA_ERR_ARG);
  CHECK(ultra_hensel(R"({"p": 4, "precision": 2, "poly": ["1"], "x0": "0"})", 0, &err.p) ==
        ULTRA_ERR_ARG);
  CHECK(ultra_hensel(R"({"p": 3, "precision": 2, "poly": [], "x0": "0"})", 0, &err.p) ==
        ULTRA_ERR_PARSE);
  CHECK(ultra_hensel(R"({"p": 3, "precision": 2, "poly": ["1"], "x0": "0", "mode": "x"})", 0,
                     &err.p) == ULTRA_ERR_PARSE);
  CHECK(ultra_hensel(R"({"p": 3, "precision": 3, "poly": ["1", "0", "1"], "x0": "0",
                         "mode": "affine"})",
                     0, &err.p) == ULTRA_ERR_ARG);
}

TEST_CASE("identical calls produce identical bytes") {
  OutStr a, b;
  REQUIRE(ultra_evp_point(kWeighted, "a", 0, 1, &a.p) == ULTRA_OK);
  REQUIRE(ultra_evp_point(kWeighted, "a", 0, 1, &b.p) == ULTRA_OK);
  CHECK(a.text() == b.text());

  const char* newton = R"({
    "p": 7, "precision": 4, "poly": ["-2", "0", "1"], "x0": "3", "mode": "newton"
  })";
  OutStr h1, h2;
  REQUIRE(ultra_hensel(newton, 1, &h1.p) == ULTRA_OK);
  REQUIRE(ultra_hensel(newton, 1, &h2.p) == ULTRA_OK);
  CHECK(h1.text() == h2.text());
}
