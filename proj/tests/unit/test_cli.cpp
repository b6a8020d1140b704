#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "cli.hpp"
#include "fixtures.hpp"
#include "msc/io.hpp"
#include "msc/markov.hpp"

namespace msc {
namespace {

using namespace msc::testing;
using nlohmann::json;
namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
  json doc() const { return json::parse(out); }
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fx(const std::string& name) { return fixture_path(name); }

TEST(Cli, ValidateFixtures) {
  for (const char* f : {"example1.json", "example2.json", "example3.json", "q2.json", "q3.json", "q4.json"}) {
    auto r = run({"validate", fx(f)});
    EXPECT_EQ(r.code, cli::kSuccess) << f << r.out << r.err;
  }
  auto j = run({"validate", fx("q4.json"), "--format", "json"});
  EXPECT_TRUE(j.doc()["valid"].get<bool>());
}

TEST(Cli, ValidateReportsViolations) {
  fs::path p = fs::temp_directory_path() / "msc_cli_bad_sum.json";
  std::ofstream(p) << R"({"universe":["a","b"],"menus":[{"members":["a","b"],"probabilities":["0.7","0.2"]}]})";
  auto r = run({"validate", p.string(), "--format", "json"});
  EXPECT_EQ(r.code, cli::kConditionFails);
  EXPECT_FALSE(r.doc()["valid"].get<bool>());
}

TEST(Cli, ParseErrorsExitWithInputError) {
  fs::path p = fs::temp_directory_path() / "msc_cli_range.json";
  std::ofstream(p) << R"({"universe":["a","b"],"menus":[{"members":["a","b"],"probabilities":["1.2","0"]}]})";
  auto r = run({"validate", p.string()});
  EXPECT_EQ(r.code, cli::kInputError);
  EXPECT_NE(r.err.find("/menus/0/probabilities/0"), std::string::npos);
  EXPECT_EQ(run({"validate", "/nonexistent.json"}).code, cli::kInputError);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, cli::kInputError);
  EXPECT_EQ(run({"bogus"}).code, cli::kInputError);
  EXPECT_EQ(run({"classify", "--data", fx("example1.json"), "--menu", "i,j,k,l", "--nope"}).code, cli::kInputError);
  EXPECT_EQ(run({"classify", "--data", fx("example1.json"), "--menu", "i,j,z"}).code, cli::kInputError);
  EXPECT_EQ(run({"generate", "--model", fx("q3.json"), "--menu", "i,j,k,l", "--alpha", "1.5"}).code,
            cli::kInputError);
}

TEST(Cli, GenerateLimitAndFinite) {
  auto r = run({"generate", "--model", fx("q3.json"), "--menu", "i,j,k,l", "--limit", "--format", "json"});
  ASSERT_EQ(r.code, cli::kSuccess) << r.err;
  auto choice = r.doc()["choice"];
  EXPECT_NEAR(choice["j"].get<double>(), 0.28, 1e-12);
  auto pi = run({"generate", "--model", fx("q2.json"), "--menu", "i,j,k,l", "--limit", "--pi", "0.3,0.1,0.4,0.2",
                 "--format", "json"});
  ASSERT_EQ(pi.code, cli::kSuccess) << pi.err;
  EXPECT_NEAR(pi.doc()["choice"]["k"].get<double>(), 0.4, 1e-12);
  auto fin = run({"generate", "--model", fx("q3.json"), "--menu", "i,j,k,l", "--alpha", "0.5"});
  EXPECT_EQ(fin.code, cli::kSuccess);
}

TEST(Cli, ClassifySecondExample) {
  auto r = run({"classify", "--data", fx("example2.json"), "--menu", "i,j,k,l", "--format", "json"});
  ASSERT_EQ(r.code, cli::kSuccess) << r.err;
  auto flags = r.doc()["reports"][0]["flags"];
  EXPECT_TRUE(flags["fully"].get<bool>());
  EXPECT_FALSE(flags["reversible_only"].get<bool>());
  auto text = run({"classify", "--data", fx("example2.json"), "--menu", "i,j,k,l"});
  EXPECT_EQ(text.code, cli::kSuccess);
  EXPECT_NE(text.out.find("fully"), std::string::npos);
}

TEST(Cli, ClassifyAllMenus) {
  auto r = run({"classify", "--data", fx("example3.json"), "--all-menus", "--format", "json"});
  ASSERT_EQ(r.code, cli::kSuccess) << r.err;
  EXPECT_EQ(r.doc()["reports"].size(), 1u);
}

class Golden : public ::testing::TestWithParam<std::string> {};

TEST_P(Golden, ClassifyReportIsStable) {
  const std::string name = GetParam();
  auto r = run({"classify", "--data", fx(name + ".json"), "--menu", "i,j,k,l", "--format", "json"});
  ASSERT_EQ(r.code, cli::kSuccess);
  json expected = json::parse(read_text(golden_path("classify_" + name + ".json")));
  EXPECT_EQ(r.doc(), expected) << r.out;
}

INSTANTIATE_TEST_SUITE_P(Examples, Golden, ::testing::Values("example1", "example2", "example3"));

TEST(Cli, RationalizeIrreducibleFailsOnFirstExample) {
  auto r = run({"rationalize", "--data", fx("example1.json"), "--menu", "i,j,k,l", "--class", "irreducible",
                "--format", "json"});
  EXPECT_EQ(r.code, cli::kConditionFails);
  auto doc = r.doc();
  ASSERT_TRUE(doc.contains("blocking_pair"));
  auto pair = doc["blocking_pair"];
  EXPECT_TRUE(pair[0] == "k" || pair[1] == "k");
}

TEST(Cli, RationalizePairwiseCertificate) {
  auto r = run({"rationalize", "--data", fx("example1.json"), "--menu", "i,j,k,l", "--class", "pairwise",
                "--format", "json"});
  EXPECT_EQ(r.code, cli::kConditionFails);
  auto doc = r.doc();
  EXPECT_EQ(doc["status"], "only_zero");
  EXPECT_EQ(doc["certificate"].size(), 4u);
  EXPECT_EQ(doc["certificate"]["k"], "1");
  ASSERT_EQ(doc["certificate_image"].size(), 3u);
  EXPECT_EQ(doc["certificate_image"][0]["value"], "2/5");
  for (auto& v : doc["certificate_image"]) EXPECT_NE(v["value"].get<std::string>().front(), '-');
}

TEST(Cli, RationalizeWritesLoadableModel) {
  fs::path out = fs::temp_directory_path() / "msc_cli_irreducible.json";
  auto r = run({"rationalize", "--data", fx("example3.json"), "--menu", "i,j,k,l", "--class", "irreducible",
                "--out", out.string()});
  ASSERT_EQ(r.code, cli::kSuccess) << r.err;
  MscModel m = load_model(out);
  EXPECT_TRUE(validate_model(m).ok());
  EXPECT_TRUE(scc_decompose(m.block(grand()).q).irreducible());
  EXPECT_EQ(run({"validate", out.string()}).code, cli::kSuccess);
}

TEST(Cli, RationalizeToStdout) {
  auto r = run({"rationalize", "--data", fx("example2.json"), "--menu", "i,j,k,l", "--class", "fully"});
  ASSERT_EQ(r.code, cli::kSuccess) << r.err;
  MscModel m = parse_model(r.out);
  EXPECT_EQ(m.blocks().size(), 7u);
}

TEST(Cli, RestrictWorkedModels) {
  auto q2r = run({"restrict", "--model", fx("q2.json"), "--menu", "i,j,k,l", "--zero", "i,l", "--format", "json"});
  EXPECT_EQ(q2r.code, cli::kSuccess) << q2r.out << q2r.err;
  EXPECT_TRUE(q2r.doc()["unchanged"].get<bool>());
  auto weak = run({"restrict", "--model", fx("q2.json"), "--menu", "i,j,k,l", "--zero", "i,l", "--weak", "i,j=2"});
  EXPECT_EQ(weak.code, cli::kSuccess) << weak.out << weak.err;
  auto q4r = run({"restrict", "--model", fx("q4.json"), "--menu", "i,j,k,l", "--zero", "i,l", "--format", "json"});
  EXPECT_EQ(q4r.code, cli::kConditionFails);
  EXPECT_EQ(q4r.doc()["rejection"], "class_structure");
  auto bad = run({"restrict", "--model", fx("q2.json"), "--menu", "i,j,k,l", "--zero", "i,i"});
  EXPECT_EQ(bad.code, cli::kInputError);
}

TEST(Cli, DecoyAndNudge) {
  fs::path p = fs::temp_directory_path() / "msc_cli_decoy.json";
  std::ofstream(p) << R"({"universe":["i","j","k"],"blocks":[
    {"menu":["i","j","k"],"Q":[["0.9","0.1","0"],["0.1","0.8","0.1"],["0.2","0.1","0.7"]],"pi":["1","0","0"]},
    {"menu":["i","j"],"Q":[["0.9","0.1"],["0.1","0.9"]],"pi":["0.5","0.5"]},
    {"menu":["i","k"],"Q":[["1","0"],["0.2","0.8"]],"pi":["0.5","0.5"]},
    {"menu":["j","k"],"Q":[["0.9","0.1"],["0.1","0.9"]],"pi":["0.5","0.5"]}]})";
  auto d = run({"decoy", "--model", p.string(), "--triple", "i,j,k", "--format", "json"});
  ASSERT_EQ(d.code, cli::kSuccess) << d.err;
  EXPECT_TRUE(d.doc()["absolute_increase"].get<bool>());
  EXPECT_NEAR(d.doc()["triple_target"].get<double>(), 5.0 / 9, 1e-12);
  EXPECT_EQ(run({"decoy", "--model", p.string(), "--triple", "j,i,k"}).code, cli::kInputError);

  auto n = run({"nudge", "--model", fx("q3.json"), "--menu", "i,j,k,l", "--alpha", "0.5", "--target", "i",
                "--format", "json"});
  EXPECT_EQ(n.code, cli::kSuccess) << n.err;
  EXPECT_TRUE(n.doc()["strict_maximum"].get<bool>());
}

}  // namespace
}  // namespace msc
