#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "tameram/report.hpp"

using namespace tameram;

namespace {

Json entry(const std::string& name) { return catalog_entry(name).document(); }

Json report_for(const std::string& name) { return run(load_document(entry(name))); }

}  // namespace

TEST(Catalog, ListsTheRequiredEntries) {
  std::vector<std::string> names;
  for (const auto& e : catalog()) names.push_back(e.name);
  EXPECT_GE(names.size(), 15U);
  for (const char* n : {"gauss-p2", "gauss-p3", "gauss-p5", "regular-c2", "regular-c3", "regular-c4", "regular-s3",
                        "coset-s3-c2", "c4-coset-c2", "trivial-c2-f2", "trivial-c3-f3", "trivial-c2-f5", "trivial-c3-q",
                        "mu2-translation-f2", "mu3-translation-f3", "mu2-trivial-f2", "mu3-trivial-f3",
                        "alpha2-trivial"}) {
    EXPECT_NE(std::find(names.begin(), names.end(), n), names.end()) << n;
  }
}

TEST(Catalog, EveryEntryLoadsAndRoundTrips) {
  for (const auto& e : catalog()) {
    const Json doc = e.document();
    const auto in = load_document(doc);
    EXPECT_EQ(in.name, e.name);
    EXPECT_FALSE(in.points.empty()) << e.name;
    const auto again = load_document(Json::parse(doc.dump()));
    EXPECT_EQ(again.action.coaction(), in.action.coaction()) << e.name;
  }
}

TEST(Run, GaussVerdicts) {
  const auto r5 = report_for("gauss-p5");
  EXPECT_TRUE(r5["verdicts"]["tame"].get<bool>());
  EXPECT_TRUE(r5["verdicts"]["free"].get<bool>());
  EXPECT_TRUE(r5["verdicts"]["torsor"].get<bool>());
  EXPECT_EQ(r5["verdicts"]["equivalence"], "agree");
  const auto r2 = report_for("gauss-p2");
  EXPECT_FALSE(r2["verdicts"]["tame"].get<bool>());
  EXPECT_FALSE(r2["verdicts"]["free"].get<bool>());
  EXPECT_FALSE(r2["verdicts"]["torsor"].get<bool>());
  EXPECT_FALSE(r2["checks"]["total-integral"]["certificate"].is_null());
}

TEST(Run, AlphaTwoTrivialIsNotTame) {
  const auto r = report_for("alpha2-trivial");
  EXPECT_FALSE(r["verdicts"]["tame"].get<bool>());
  EXPECT_FALSE(r["checks"]["total-integral"]["certificate"].is_null());
}

TEST(Run, OnlySelectsChecks) {
  const auto in = load_document(entry("regular-c3"));
  RunOptions opt;
  opt.only = {"torsor"};
  const auto r = run(in, opt);
  EXPECT_TRUE(r["checks"].contains("torsor"));
  EXPECT_FALSE(r["checks"].contains("total-integral"));
  opt.only = {"nonsense"};
  EXPECT_THROW(run(in, opt), SchemaError);
}

TEST(Run, Deterministic) {
  for (const char* n : {"gauss-p3", "coset-s3-c2", "mu3-translation-f3"}) {
    EXPECT_EQ(report_for(n).dump(2), report_for(n).dump(2)) << n;
  }
}

TEST(Audit, CatalogWitnessesCheckOut) {
  for (const auto& e : catalog()) {
    const auto in = load_document(e.document());
    const auto r = run(in);
    const auto failures = audit(in, r);
    EXPECT_TRUE(failures.empty()) << e.name << ": " << (failures.empty() ? "" : failures.front());
  }
}

TEST(Audit, CatchesATamperedWitness) {
  const auto in = load_document(entry("gauss-p5"));
  auto r = run(in);
  r["checks"]["total-integral"]["alpha"][0][0] = "4";
  EXPECT_FALSE(audit(in, r).empty());
  auto r2 = run(load_document(entry("gauss-p2")));
  r2["checks"]["total-integral"]["certificate"] = Json::array({Json::array()});
  EXPECT_FALSE(audit(load_document(entry("gauss-p2")), r2).empty());
}

TEST(Schema, RejectsMalformedDocuments) {
  EXPECT_THROW(load_document_text("{ not json"), SchemaError);
  auto doc = entry("gauss-p3");
  doc["colour"] = "blue";
  EXPECT_THROW(load_document(doc), SchemaError);
  doc = entry("gauss-p3");
  doc["field"] = Json{{"kind", "prime"}, {"p", 5}, {"q", 1}};
  EXPECT_THROW(load_document(doc), SchemaError);
  doc = entry("gauss-p3");
  doc["gamma_action"]["generators"][0]["matrix"][0][0] = 1;
  EXPECT_THROW(load_document(doc), SchemaError);
  doc = entry("gauss-p3");
  doc["coaction"] = Json{{"name", "trivial"}};
  EXPECT_THROW(load_document(doc), SchemaError);
  doc = entry("mu2-trivial-f2");
  doc["checks"] = Json::array({"everything"});
  EXPECT_THROW(load_document(doc), SchemaError);
}

TEST(Schema, RejectsInvalidStructures) {
  auto doc = entry("gauss-p3");
  doc["gamma_action"]["generators"][0]["matrix"][0][1] = "1";  // x -> 1 - x does not respect x^2 = -1
  EXPECT_THROW(load_document(doc), ValidationError);
  doc = entry("gauss-p3");
  doc["gamma_action"]["generators"][0]["matrix"] = Json::array({Json::array({"1"})});
  EXPECT_THROW(load_document(doc), DimensionError);
  doc = entry("mu2-translation-f2");
  doc["points"][0]["residue_map"][0] = "0";
  EXPECT_THROW(load_document(doc), ValidationError);
  Json raw{{"field", Json{{"kind", "prime"}, {"p", 3}}},
           {"hopf", Json{{"name", "function_algebra"}, {"group", Json{{"name", "cyclic"}, {"n", 2}}}}},
           {"algebra", Json{{"name", "functions"}, {"points", 2}}},
           {"coaction", Json{{"name", "raw"},
                             {"matrix", Json::array({Json::array({"1", "0"}), Json::array({"0", "0"}),
                                                     Json::array({"0", "0"}), Json::array({"0", "0"})})}}}};
  EXPECT_THROW(load_document(raw), ValidationError);
}

TEST(Schema, AcceptsRationalAndExtensionScalars) {
  Json doc{{"field", Json{{"kind", "rationals"}}},
           {"hopf", Json{{"name", "trivial"}}},
           {"algebra", Json{{"name", "polynomial_quotient"}, {"modulus", Json::array({"-1/4", "0"})}}},
           {"coaction", Json{{"name", "trivial"}}}};
  const auto in = load_document(doc);
  EXPECT_EQ(in.action.dim(), 2U);
  const Field f4 = Field::extension(2, {1, 1, 1});
  const Json s = scalar_json(f4, f4.generator());
  EXPECT_EQ(parse_scalar(f4, s, "t"), f4.generator());
  EXPECT_THROW(parse_scalar(f4, Json("1"), "t"), SchemaError);
}

TEST(Schema, BatteryAdditions) {
  auto doc = entry("regular-plus-trivial-c2");
  doc["battery"] = Json::array({Json{{"label", "fixed-point"}, {"module", "regular"}, {"generators", Json::array({Json::array({"0", "0", "1"})})}}});
  const auto in = load_document(doc);
  const auto seqs = battery_sequences(in);
  ASSERT_EQ(seqs.size(), 1U);
  EXPECT_EQ(seqs[0].label, "fixed-point");
  const auto r = run(in);
  const auto& labels = r["checks"]["equivalence"]["sequences"];
  EXPECT_EQ(labels.back(), "fixed-point");
}

TEST(Docs, SampleDocumentsRunAndMatchTheCatalog) {
  std::size_t seen = 0;
  for (const auto& file : std::filesystem::directory_iterator(TAMERAM_DOCS_EXAMPLES)) {
    if (file.path().extension() != ".json") continue;
    ++seen;
    std::ifstream in(file.path());
    std::stringstream text;
    text << in.rdbuf();
    const Instance inst = load_document_text(text.str());
    EXPECT_TRUE(audit(inst, run(inst)).empty()) << file.path();
    const std::string stem = file.path().stem().string();
    bool listed = false;
    for (const auto& e : catalog()) listed = listed || e.name == stem;
    if (listed) {
      EXPECT_EQ(Json::parse(text.str()), entry(stem)) << stem << " is stale";
    }
  }
  EXPECT_GE(seen, 1U);
}
