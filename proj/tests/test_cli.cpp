// End-to-end tests of the khat executable.

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

struct Result {
  int code = -1;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

class Cli : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("khat_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string &name) const { return (dir_ / name).string(); }

  Result run(const std::string &args) const {
    const std::string err_path = path("stderr.txt");
    const std::string cmd = std::string("'") + KHAT_CLI_PATH + "' " + args + " 2>'" + err_path + "'";
    Result r;
    FILE *pipe = popen(cmd.c_str(), "r");
    if (!pipe)
      return r;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0)
      r.out.append(buf, got);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.err = read(err_path);
    return r;
  }

  std::string write(const std::string &name, const std::string &text) const {
    std::ofstream(path(name)) << text;
    return path(name);
  }

  static std::string read(const std::string &p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  /// Runs a build verb and saves the group file.
  std::string build(const std::string &name, const std::string &args) const {
    const Result r = run("build " + args + " --out '" + path(name) + "'");
    EXPECT_EQ(r.code, 0) << r.err;
    return path(name);
  }

  fs::path dir_;
};

const char *line_half = R"({"ambient_dim":1,"generators":[{"vector":["1"],"primes":[2]}]})";

} // namespace

TEST_F(Cli, BuildBase) {
  const Result r = run("build base --n 1");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json(), Json::parse(R"({"ambient_dim":2,"generators":[{"vector":["1","0"],"primes":[2]}]})"));
}

TEST_F(Cli, BuildU) {
  const Result empty = run("build U --n 1");
  ASSERT_EQ(empty.code, 0) << empty.err;
  EXPECT_EQ(empty.json()["generators"].size(), 3u);
  const Result full = run("build U --n 1 --u 0");
  ASSERT_EQ(full.code, 0) << full.err;
  const Json gens = full.json()["generators"];
  EXPECT_EQ(gens.size(), 4u);
  bool found = false;
  for (const auto &g : gens)
    found |= g == Json::parse(R"({"vector":["0","1"],"primes":[7]})");
  EXPECT_TRUE(found) << full.out;
}

TEST_F(Cli, BuildRejectsBadSubset) {
  EXPECT_EQ(run("build U --n 2 --u 5").code, 2);
  EXPECT_EQ(run("build base --n 0").code, 2);
  EXPECT_EQ(run("--primes 2,3,5,5 build base --n 1").code, 2);
}

TEST_F(Cli, Classify) {
  const Result r = run("classify '" + build("gu.json", "U --n 2 --u 1") + "'");
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = r.json();
  EXPECT_EQ(j["command"], "classify");
  EXPECT_EQ(j["result"]["label"], "K2");
  EXPECT_EQ(j["primes"], Json::parse(R"({"p1":2,"p3":3,"p4":5,"p5":7})"));
  EXPECT_EQ(j["seed"], 0);
}

TEST_F(Cli, ClassifyNotInKhat) {
  const std::string g = write(
      "sum.json",
      R"({"ambient_dim":2,"generators":[{"vector":["1","0"],"primes":[2]},{"vector":["0","1"],"primes":[3]}]})");
  const Result r = run("classify '" + g + "'");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json()["result"]["label"], "NotInKhat");
}

TEST_F(Cli, MemberZeroVector) {
  for (const auto &g : {build("base.json", "base --n 1"), build("gu.json", "U --n 1 --u 0")}) {
    const Result r = run("member '" + g + "' 0/1,0/1");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.json()["result"]["member"], true);
  }
}

TEST_F(Cli, MemberDecides) {
  const std::string g = build("gu.json", "U --n 1");
  EXPECT_EQ(run("member '" + g + "' 1/8,0").json()["result"]["member"], true);
  EXPECT_EQ(run("member '" + g + "' 0,1/7").json()["result"]["member"], false);
}

TEST_F(Cli, PomegaZero) {
  const Result r = run("pomega '" + build("gu.json", "U --n 1") + "' 7");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json()["result"]["group"], Json::parse(R"({"ambient_dim":2,"generators":[]})"));
}

TEST_F(Cli, PomegaRejectsComposite) {
  const Result r = run("pomega '" + build("gu.json", "U --n 1") + "' 9");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("not prime"), std::string::npos) << r.err;
}

TEST_F(Cli, Pure) {
  const std::string base = build("base.json", "base --n 2");
  const std::string gu = build("gu.json", "U --n 2 --u 0,1");
  EXPECT_EQ(run("pure '" + base + "' '" + gu + "'").json()["result"]["pure"], true);
  const std::string z = write("z.json", R"({"ambient_dim":1,"generators":[{"vector":["1"],"primes":[]}]})");
  const std::string half = write("half.json", line_half);
  EXPECT_EQ(run("pure '" + z + "' '" + half + "'").json()["result"]["pure"], false);
}

TEST_F(Cli, ClosureCaseOne) {
  const Result r = run("closure '" + build("gu.json", "U --n 1") + "' --elems 1,0");
  ASSERT_EQ(r.code, 0) << r.err;
  const Json res = r.json()["result"];
  EXPECT_EQ(res["case"], 1);
  EXPECT_EQ(res["final"], Json::parse(R"({"ambient_dim":2,"generators":[{"vector":["1","0"],"primes":[2]}]})"));
}

TEST_F(Cli, ClosureCaseTwo) {
  const std::string gu = build("gu.json", "U --n 1 --u 0");
  const std::string base = build("base.json", "base --n 1");
  const Result r = run("closure '" + gu + "' --base '" + base + "' --elems 0,1");
  ASSERT_EQ(r.code, 0) << r.err;
  const Json res = r.json()["result"];
  EXPECT_EQ(res["case"], 2);
  EXPECT_EQ(res["final"], Json::parse(read(gu)));
  EXPECT_FALSE(res["stages"].empty());
}

TEST_F(Cli, ClosureEmpty) {
  const Result r = run("closure '" + build("gu.json", "U --n 1") + "'");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json()["result"]["final"]["generators"], Json::array());
}

TEST_F(Cli, ClosureRejectsNonMember) {
  const Result r = run("closure '" + build("gu.json", "U --n 1") + "' --elems 0,1/7");
  EXPECT_EQ(r.code, 2);
  EXPECT_FALSE(r.err.empty());
}

TEST_F(Cli, GtypeEq) {
  const std::string base = build("base.json", "base --n 1");
  const std::string g0 = build("g0.json", "U --n 1");
  const std::string g1 = build("g1.json", "U --n 1 --u 0");
  const Result same = run("gtype-eq '" + base + "' '" + g0 + "' 0,1 '" + g0 + "' 0,1");
  ASSERT_EQ(same.code, 0) << same.err;
  EXPECT_EQ(same.json()["result"]["equal"], true);
  const Result diff = run("gtype-eq '" + base + "' '" + g0 + "' 0,1 '" + g1 + "' 0,1");
  ASSERT_EQ(diff.code, 0) << diff.err;
  EXPECT_EQ(diff.json()["result"]["equal"], false);
}

TEST_F(Cli, Instability) {
  const Result r = run("experiment instability --n 3");
  ASSERT_EQ(r.code, 0) << r.err;
  const Json res = r.json()["result"];
  EXPECT_EQ(res["distinct_types"], 8);
  EXPECT_EQ(res["equality_matrix"].size(), 8u);
}

TEST_F(Cli, InstabilityCap) {
  const Result r = run("experiment instability --n 5");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("cap"), std::string::npos) << r.err;
  EXPECT_EQ(run("experiment amalgamation --n 5 --u 0 --v 1").code, 2);
}

TEST_F(Cli, Jep) {
  const std::string a = write("a.json", line_half);
  const std::string b = write("b.json", line_half);
  const Result r = run("experiment jep '" + a + "' '" + b + "'");
  ASSERT_EQ(r.code, 0) << r.err;
  const Json res = r.json()["result"];
  EXPECT_EQ(res["rank"], 4);
  EXPECT_EQ(res["classification"]["label"], "K2");
  ASSERT_EQ(res["embeddings"].size(), 2u);
  for (const auto &e : res["embeddings"])
    EXPECT_EQ(e["pure"], true);
}

TEST_F(Cli, AmalgamationAndVerify) {
  const std::string report = path("amalgam.json");
  const Result r = run("--out '" + report + "' experiment amalgamation --n 1 --u 0 --v \"\"");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  const Json j = Json::parse(read(report));
  EXPECT_EQ(j["result"]["status"], "all-verified");

  const Result again = run("experiment verify-certificate '" + report + "'");
  ASSERT_EQ(again.code, 0) << again.err;
  EXPECT_EQ(again.json()["result"]["status"], "all-verified");

  Json cert = j["result"]["certificate"];
  for (auto &f : cert["facts"])
    if (f["id"] == "F4")
      f["expected"] = !f["expected"].get<bool>();
  const std::string tampered = write("tampered.json", cert.dump());
  const Result bad = run("experiment verify-certificate '" + tampered + "'");
  ASSERT_EQ(bad.code, 0) << bad.err;
  EXPECT_EQ(bad.json()["result"]["status"], "failed");
  EXPECT_EQ(bad.json()["result"]["verified"], false);
}

TEST_F(Cli, AmalgamationRejectsEqualSubsets) {
  EXPECT_EQ(run("experiment amalgamation --n 2 --u 0 --v 0").code, 2);
}

TEST_F(Cli, MalformedJson) {
  const Result r = run("classify '" + write("bad.json", "{\"ambient_dim\": 1, ") + "'");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("malformed JSON"), std::string::npos) << r.err;
}

TEST_F(Cli, NonPrimeWithLocation) {
  const std::string g =
      write("np.json", R"({"ambient_dim":1,"generators":[{"vector":["1"],"primes":[2,4]}]})");
  const Result r = run("classify '" + g + "'");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("group.generators[0].primes[1]"), std::string::npos) << r.err;
}

TEST_F(Cli, DimensionMismatch) {
  const std::string g =
      write("dim.json", R"({"ambient_dim":2,"generators":[{"vector":["1"],"primes":[2]}]})");
  const Result r = run("classify '" + g + "'");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("group.generators[0].vector"), std::string::npos) << r.err;
  const Result v = run("member '" + write("half.json", line_half) + "' 1,2");
  EXPECT_EQ(v.code, 2);
  EXPECT_NE(v.err.find("vector"), std::string::npos) << v.err;
}

TEST_F(Cli, BadRationalWithLocation) {
  const std::string g =
      write("rat.json", R"({"ambient_dim":1,"generators":[{"vector":["1/0"],"primes":[2]}]})");
  const Result r = run("classify '" + g + "'");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("group.generators[0].vector[0]"), std::string::npos) << r.err;
}

TEST_F(Cli, MissingFileAndUnknownVerb) {
  EXPECT_EQ(run("classify '" + path("nope.json") + "'").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("experiment").code, 2);
}

TEST_F(Cli, HelpExitsZero) { EXPECT_EQ(run("--help").code, 0); }

TEST_F(Cli, DeterministicOutput) {
  const std::string g = build("gu.json", "U --n 2 --u 1");
  for (const std::string &args :
       {"classify '" + g + "'", std::string("experiment instability --n 2"),
        std::string("experiment amalgamation --n 2 --u 0 --v 1")}) {
    const Result a = run("--seed 17 " + args);
    const Result b = run("--seed 17 " + args);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.json()["seed"], 17);
    EXPECT_FALSE(a.json().contains("timing"));
  }
}

TEST_F(Cli, SortedKeys) {
  const Result r = run("classify '" + build("gu.json", "U --n 1") + "'");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, r.json().dump(2) + "\n");
}

TEST_F(Cli, Timing) {
  const Result r = run("--timing experiment instability --n 1");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.json()["timing"]["seconds"].is_number());
}

TEST_F(Cli, AlternativePrimes) {
  const Result b = run("--primes 11,13,17,19 build base --n 1");
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(b.json()["generators"][0]["primes"], Json::array({11}));
  const std::string g = write("g.json", b.out);
  const Result c = run("--primes 11,13,17,19 classify '" + g + "'");
  EXPECT_EQ(c.json()["result"]["label"], "K1");
  EXPECT_EQ(c.json()["primes"]["p5"], 19);
}
