#include <doctest.h>

#include <json.hpp>

#include "tdlc/instance.hpp"
#include "test_support.hpp"

using namespace tdlc;
using nlohmann::json;
using testutil::thrown_kind;

namespace {

json padic_doc() {
  json rows = json::array({json::array({"1/3", "0"}), json::array({"0", "3"})});
  json basis = json::array({json::array({"1", "0"}), json::array({"0", "1"})});
  return json{
      {"op", "entropy"},
      {"universe", {{"kind", "padic"}, {"p", "3"}, {"dim", 2}}},
      {"automorphism", {{"kind", "matrix"}, {"rows", rows}}},
      {"subgroup", {{"kind", "lattice"}, {"basis", basis}}},
  };
}

json shift_doc() {
  return json{
      {"op", "entropy"},
      {"universe", {{"kind", "shift"}, {"m", 2}}},
      {"automorphism", {{"kind", "shift"}, {"k", 1}, {"unit", 1}}},
      {"subgroup", {{"kind", "cylinder"}, {"zero_coords", {0}}}},
  };
}

json product_doc() {
  json j;
  j["op"] = "entropy";
  j["universe"] = {{"kind", "product"},
                   {"factors",
                    {{{"kind", "padic"}, {"p", "2"}, {"dim", 1}},
                     {{"kind", "shift"}, {"m", 3}}}}};
  j["automorphism"] = {{"kind", "pair"},
                       {"components",
                        {{{"kind", "matrix"}, {"rows", {{"1/2"}}}},
                         {{"kind", "shift"}, {"k", 1}, {"unit", 1}}}}};
  j["subgroup"] = {{"kind", "pair"},
                   {"components",
                    {{{"kind", "lattice"}, {"basis", {{"1"}}}},
                     {{"kind", "cylinder"}, {"zero_coords", {0}}}}}};
  return j;
}

}  // namespace

TEST_CASE("instances echo canonically and re-parse to the same echo") {
  for (const json& doc : {padic_doc(), shift_doc(), product_doc()}) {
    Instance inst = parse_instance(doc);
    json echo = instance_to_json(inst);
    Instance again = parse_instance(echo);
    CHECK(instance_to_json(again) == echo);
  }
}

TEST_CASE("universe descriptors round-trip for every kind") {
  std::vector<json> descriptors = {
      {{"kind", "padic"}, {"p", "5"}, {"dim", 3}},
      {{"kind", "shift"}, {"m", 6}},
      {{"kind", "finite"}, {"moduli", {4, 6}}},
      {{"kind", "product"},
       {"factors",
        {{{"kind", "padic"}, {"p", "2"}, {"dim", 1}}, {{"kind", "shift"}, {"m", 2}}}}},
  };
  for (const json& d : descriptors) {
    auto u = universe_from_descriptor(d);
    REQUIRE(u != nullptr);
    CHECK(u->descriptor()["kind"] == d["kind"]);
    auto again = universe_from_descriptor(u->descriptor());
    CHECK(again->descriptor() == u->descriptor());
  }
}

TEST_CASE("entropy reports carry all three algorithm routes in agreement") {
  json report = run_instance(parse_instance(padic_doc()));
  CHECK(report["op"] == "entropy");
  CHECK(report["agreement"] == true);
  CHECK(report["value"]["display"] == "log(3)");
  for (const char* alg : {"limit", "limitfree", "corollary"}) {
    REQUIRE(report["algorithms"].contains(alg));
    CHECK(report["algorithms"][alg]["value"]["display"] == "log(3)");
  }
}

TEST_CASE("trace reports embed a CSV with both chains") {
  json doc = padic_doc();
  doc["op"] = "trace";
  json report = run_instance(parse_instance(doc));
  REQUIRE(report.contains("trace_csv"));
  std::string csv = report["trace_csv"].get<std::string>();
  CHECK(csv.rfind("n,c_n,alpha_n,d_index\n", 0) == 0);
  CHECK(csv.find("INCOMPLETE") == std::string::npos);
}

TEST_CASE("global reports list evaluations and certification") {
  json doc = shift_doc();
  doc["op"] = "entropy-global";
  doc.erase("subgroup");
  doc["params"] = {{"base_budget", 3}};
  json report = run_instance(parse_instance(doc));
  CHECK(report["op"] == "entropy-global");
  CHECK(report["value"]["display"] == "log(2)");
  CHECK(report["certified"] == true);
  CHECK(report["evaluations"].size() >= 2);
}

TEST_CASE("modulus reports expose the factored value") {
  json doc = padic_doc();
  doc["op"] = "modulus";
  json report = run_instance(parse_instance(doc));
  CHECK(report["op"] == "modulus");
  CHECK(report["modulus"] == "1");

  json div = json{
      {"op", "modulus"},
      {"universe", {{"kind", "padic"}, {"p", "3"}, {"dim", 1}}},
      {"automorphism", {{"kind", "matrix"}, {"rows", {{"1/3"}}}}},
  };
  json r2 = run_instance(parse_instance(div));
  CHECK(r2["modulus"] == "3");
}

TEST_CASE("scale reports carry candidates and oracle attainment") {
  json doc = padic_doc();
  doc["op"] = "scale";
  json report = run_instance(parse_instance(doc));
  CHECK(report["op"] == "scale");
  CHECK(report["scale"] == "3");
  CHECK(report["oracle"] == "3");
  CHECK(report["oracle_attained"] == true);
  CHECK(!report["per_candidate"].empty());
}

TEST_CASE("verify instances run the requested suite and count checks") {
  json doc = {{"op", "verify"},
              {"params", {{"suite", "gi-laws"}, {"seed", 7}, {"count", 3}}}};
  json report = run_instance(parse_instance(doc));
  CHECK(report["op"] == "verify");
  REQUIRE(report["suites"].size() == 1);
  CHECK(report["suites"][0]["suite"] == "gi-laws");
  CHECK(report["suites"][0]["failed"] == 0);
  CHECK(report["all_passed"] == true);
}

TEST_CASE("malformed documents raise ParseError, not foreign exceptions") {
  json bad_rat = padic_doc();
  bad_rat["automorphism"]["rows"][0][0] = "1/0";
  CHECK(thrown_kind([&] { parse_instance(bad_rat); }) == ErrorKind::ParseError);

  json bad_kind = padic_doc();
  bad_kind["universe"]["kind"] = "adelic";
  CHECK(thrown_kind([&] { parse_instance(bad_kind); }) == ErrorKind::ParseError);

  json no_aut = padic_doc();
  no_aut.erase("automorphism");
  CHECK(thrown_kind([&] { parse_instance(no_aut); }) == ErrorKind::ParseError);

  json bad_window = padic_doc();
  bad_window["params"] = {{"window", 1}};
  CHECK(thrown_kind([&] { parse_instance(bad_window); }) == ErrorKind::ParseError);

  json bad_type = padic_doc();
  bad_type["universe"]["dim"] = "two";
  CHECK(thrown_kind([&] { parse_instance(bad_type); }) == ErrorKind::ParseError);

  json bad_op = padic_doc();
  bad_op["op"] = "frobnicate";
  CHECK(thrown_kind([&] { parse_instance(bad_op); }) == ErrorKind::ParseError);
}

TEST_CASE("trace CSV stitches both chains and marks truncation") {
  std::vector<TraceRow> lim(3);
  std::vector<TraceRow> lf(2);
  for (int i = 0; i < 3; ++i) {
    lim[i].n = i + 1;
    lim[i].c = IndexValue::prime_power(2, i);
    if (i < 2) lim[i].alpha = IndexValue::prime_power(2, 1);
  }
  for (int i = 0; i < 2; ++i) {
    lf[i].n = i + 1;
    lf[i].d_index = IndexValue::prime_power(2, i);
  }
  std::string full = trace_to_csv(lim, lf, true);
  CHECK(full.rfind("n,c_n,alpha_n,d_index\n", 0) == 0);
  CHECK(full.find("# INCOMPLETE") == std::string::npos);
  // Three data rows: the longer chain wins.
  int rows = 0;
  for (char ch : full)
    if (ch == '\n') ++rows;
  CHECK(rows == 4);

  std::string cut = trace_to_csv(lim, lf, false);
  CHECK(cut.find("# INCOMPLETE") != std::string::npos);
}

TEST_CASE("identical instances produce byte-identical reports") {
  json a = run_instance(parse_instance(padic_doc()));
  json b = run_instance(parse_instance(padic_doc()));
  CHECK(a.dump(2) == b.dump(2));

  json verify_doc = {{"op", "verify"},
                     {"params", {{"suite", "algorithms-agree"}, {"seed", 11}, {"count", 2}}}};
  json va = run_instance(parse_instance(verify_doc));
  json vb = run_instance(parse_instance(verify_doc));
  CHECK(va.dump() == vb.dump());
}

TEST_CASE("engine overrides flow from params") {
  json doc = padic_doc();
  doc["params"] = {{"max_steps", 2}};
  CHECK(thrown_kind([&] { run_instance(parse_instance(doc)); }) ==
        ErrorKind::NotStabilized);
}
