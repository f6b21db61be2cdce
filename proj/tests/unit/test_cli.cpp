#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "support/oracles.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(CRN_TOOL_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string sample(const std::string& name) { return std::string(CRN_SAMPLES_DIR) + "/" + name; }

std::string temp_path(const std::string& name) { return ::testing::TempDir() + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const json* find_check(const json& report, const std::string& name) {
  for (const auto& c : report["checks"])
    if (c["name"] == name) return &c;
  return nullptr;
}

}  // namespace

TEST(Cli, AnalyzeSamples) {
  const std::pair<const char*, int> cases[] = {
      {"eq_ex.crn", 0}, {"reversible_pair.crn", 0}, {"cubic_death.crn", 1}};
  for (const auto& [file, delta] : cases) {
    const auto r = run("analyze " + sample(file));
    ASSERT_EQ(r.code, 0) << file;
    const auto rep = json::parse(r.out);
    EXPECT_EQ(rep["network"]["delta"], delta) << file;
    EXPECT_EQ(rep["analysis"]["deficiency"]["kernel"], delta) << file;
    EXPECT_EQ(rep["schema_version"], 1);
    ASSERT_NE(find_check(rep, "deficiency_routes_agree"), nullptr);
  }
}

TEST(Cli, AuxiliaryHasDeficiencyZero) {
  for (const char* file : {"eq_ex.crn", "reversible_pair.crn", "cubic_death.crn"}) {
    const auto r = run("analyze --auxiliary " + sample(file));
    ASSERT_EQ(r.code, 0) << file;
    const auto rep = json::parse(r.out);
    EXPECT_EQ(rep["auxiliary"]["digest"]["delta"], 0);
    EXPECT_TRUE((*find_check(rep, "auxiliary_deficiency_zero"))["passed"].get<bool>());
  }
}

TEST(Cli, InputErrorsExitOne) {
  const auto bad = temp_path("malformed.crn");
  std::ofstream(bad) << "A + -> B ; 1\n";
  EXPECT_EQ(run("analyze " + bad).code, 1);
  EXPECT_EQ(run("analyze " + temp_path("does_not_exist.crn")).code, 1);
  EXPECT_EQ(run("frobnicate").code, 1);
  EXPECT_EQ(run("simulate " + sample("eq_ex.crn") + " --x0 1 --t-end 5").code, 1);
  EXPECT_EQ(run("check " + sample("eq_ex.crn") + " --measure bogus:1").code, 1);
}

TEST(Cli, StationaryPoissonPairOnCopies) {
  const auto csv = temp_path("pp.csv");
  const auto r = run("stationary " + sample("eq_ex.crn") + " --box 8 --chain copies --csv-out " + csv);
  ASSERT_EQ(r.code, 0);
  std::istringstream in(slurp(csv));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "class,A,B,pi");
  std::vector<std::pair<double, double>> rows;   // (solved, Poisson)
  double mass = 0;
  while (std::getline(in, line)) {
    std::size_t cls;
    long a, b;
    double p;
    ASSERT_EQ(std::sscanf(line.c_str(), "%zu,%ld,%ld,%lf", &cls, &a, &b, &p), 4);
    rows.emplace_back(p, oracle::poisson_pmf(1.0, a) * oracle::poisson_pmf(1.0, b));
    mass += rows.back().second;
  }
  EXPECT_EQ(rows.size(), 80u);   // (0, 8) is not an image of any copy in the box
  // The Poisson law renormalized to the box.
  double tv = 0;
  for (const auto& [p, ref] : rows) tv += std::abs(p - ref / mass);
  EXPECT_LE(tv / 2, 1e-9);
}

TEST(Cli, StationaryCubicDeathNeedsReflect) {
  EXPECT_EQ(run("stationary " + sample("cubic_death.crn") + " --box 60").code, 2);
  const auto csv = temp_path("cd.csv");
  const auto r = run("stationary " + sample("cubic_death.crn") + " --box 60 --boundary reflect --csv-out " + csv);
  ASSERT_EQ(r.code, 0);
  const auto law = oracle::cubic_death_law(1.0, 1.0, 60);
  std::istringstream in(slurp(csv));
  std::string line;
  std::getline(in, line);
  double tv = 0;
  while (std::getline(in, line)) {
    std::size_t cls;
    long a;
    double p;
    ASSERT_EQ(std::sscanf(line.c_str(), "%zu,%ld,%lf", &cls, &a, &p), 3);
    tv += std::abs(p - law.at(a));
  }
  EXPECT_LE(tv / 2, 1e-9);
}

TEST(Cli, VerifyOutcomes) {
  for (const char* t : {"any", "single", "translations", "cube"}) {
    const auto r = run("verify " + sample("eq_ex.crn") + " --theorem " + t + " --c 1,1 --box 5");
    EXPECT_EQ(r.code, 0) << t;
  }
  // A wrong c: the copy conditions and complex balance still agree (all false).
  const auto r = run("verify " + sample("eq_ex.crn") + " --theorem any --c 1,2 --box 5");
  ASSERT_EQ(r.code, 0);
  const auto rep = json::parse(r.out);
  const auto& chk = *find_check(rep, "three_way_agreement");
  EXPECT_FALSE(chk["complex_balanced"].get<bool>());
  EXPECT_FALSE(chk["every_injective_copy_node_balanced"].get<bool>());
}

TEST(Cli, TranslationHypothesisViolationIsANote) {
  const auto r = run("verify " + sample("cubic_death.crn") + " --theorem translations --measure stationary:40 --offsets '2;0'");
  ASSERT_EQ(r.code, 0);
  const auto rep = json::parse(r.out);
  EXPECT_EQ((*find_check(rep, "translation_family_consistency"))["status"], "hypothesis-violated");
  EXPECT_FALSE(rep["notes"].empty());
}

TEST(Cli, CheckExitCodes) {
  EXPECT_EQ(run("check " + sample("eq_ex.crn") + " --measure product:c=1,1 --box 6").code, 0);
  EXPECT_EQ(run("check " + sample("eq_ex.crn") + " --measure product:c=1,2 --box 6").code, 2);
  EXPECT_EQ(run("check " + sample("reversible_pair.crn") + " --measure product --box 5").code, 0);
}

TEST(Cli, GeneratedSeedIsRecordedAndReplays) {
  const auto r = run("simulate " + sample("eq_ex.crn") + " --x0 0,0 --t-end 50");
  ASSERT_EQ(r.code, 0);
  const auto rep = json::parse(r.out);
  EXPECT_EQ(rep["seeds"][0]["source"], "generated");
  const auto seed = rep["seeds"][0]["value"].get<std::uint64_t>();
  const auto again = json::parse(run("simulate " + sample("eq_ex.crn") + " --x0 0,0 --t-end 50 --seed " +
                                     std::to_string(seed)).out);
  EXPECT_EQ(again["simulation"], rep["simulation"]);
}

TEST(Cli, ReportsAreByteStable) {
  const std::string args = "simulate " + sample("eq_ex.crn") + " --x0 1,1 --t-end 100 --seed 7 --json-out ";
  ASSERT_EQ(run(args + temp_path("a.json")).code, 0);
  ASSERT_EQ(run(args + temp_path("b.json")).code, 0);
  EXPECT_EQ(slurp(temp_path("a.json")), slurp(temp_path("b.json")));
  EXPECT_EQ(run("analyze " + sample("cubic_death.crn")).out, run("analyze " + sample("cubic_death.crn")).out);
}

TEST(Cli, CopiesCountMatchesEnumeration) {
  const auto rep = json::parse(run("copies " + sample("cubic_death.crn") + " --box 5").out);
  // Offsets h in [-2, 2] with 3+h and 2+h in [0, 5] for the {3A, 2A} class, h' in [0, 4] for {0, A}.
  EXPECT_EQ(rep["copies"]["count"], 25);
}
