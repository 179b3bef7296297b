#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "commands.hpp"

namespace fs = std::filesystem;
using strust::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
  std::ifstream file(path, std::ios::binary);
  std::ostringstream buf;
  buf << file.rdbuf();
  return buf.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("strust_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    write("tiny.txt", "# three members\nB A\nB A\nC A\n");
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& body) {
    const auto path = dir_ / name;
    std::ofstream(path, std::ios::binary) << body;
    return path.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string out_dir(const std::string& name) const {
    const auto p = dir_ / name;
    fs::create_directories(p);
    return p.string();
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, IngestSummary) {
  const auto r = invoke({"--input", path("tiny.txt"), "--out-dir", out_dir("o"), "ingest"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["members"], 3);
  EXPECT_EQ(doc["total_interactions"], 3);
  EXPECT_EQ(doc["unique_interactions"], 2);
  EXPECT_TRUE(fs::exists(path("o/store.json")));
}

TEST_F(CliTest, ExitCodes) {
  write("empty.txt", "# nothing\n");
  write("loop.txt", "A B\nA A\n");
  write("broken.json", "{not json");
  write("forum.txt", "u1 t1 1\nu2 t1 2\n");
  const auto o = out_dir("o");
  EXPECT_EQ(invoke({"--input", path("empty.txt"), "--out-dir", o, "ingest"}).code, 2);
  EXPECT_EQ(invoke({"--input", path("loop.txt"), "--out-dir", o, "ingest"}).code, 2);
  EXPECT_EQ(invoke({"--input", path("missing.txt"), "--out-dir", o, "ingest"}).code, 2);
  EXPECT_EQ(invoke({"--input", path("broken.json"), "--out-dir", o, "trust"}).code, 3);
  EXPECT_EQ(invoke({"--input", path("forum.txt"), "--format", "bipartite", "--out-dir", o, "ingest"}).code, 2);
  EXPECT_EQ(invoke({"--input", path("tiny.txt"), "--format", "nonsense", "--out-dir", o, "ingest"}).code, 2);
  EXPECT_EQ(invoke({"--input", path("tiny.txt"), "--alpha", "1.5", "--out-dir", o, "trust"}).code, 4);
  EXPECT_EQ(invoke({"--input", path("tiny.txt"), "--out-dir", o, "roles", "-k", "9"}).code, 4);
  EXPECT_EQ(invoke({"--input", path("tiny.txt"), "--out-dir", o, "ego", "--member", "Z"}).code, 4);
  EXPECT_EQ(invoke({"--input", path("tiny.txt"), "--out-dir", o, "sustain", "--percents", "10"}).code, 4);
  EXPECT_EQ(invoke({"--out-dir", o}).code, 2);
}

TEST_F(CliTest, BipartiteProjection) {
  write("forum.txt", "u1 t1 1 10\nu2 t1 1 20\nu3 t1 1 30\n");
  const auto r = invoke({"--input", path("forum.txt"), "--format", "bipartite", "--projection",
                         "prior-posters", "--out-dir", out_dir("o"), "ingest"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["members"], 3);
  EXPECT_EQ(doc["total_interactions"], 3);
}

TEST_F(CliTest, TrustRankingsAndAlphaOne) {
  const auto o = out_dir("o");
  const auto r = invoke({"--input", path("tiny.txt"), "--alpha", "1", "--out-dir", o, "trust"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto strip = [](const std::string& text) {
    std::string body;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
      if (!line.starts_with("#")) body += line + "\n";
    }
    return body;
  };
  EXPECT_EQ(strip(slurp(path("o/rankings_social.csv"))), strip(slurp(path("o/rankings_popularity.csv"))));
  EXPECT_EQ(strip(slurp(path("o/rankings_engagement.csv"))).substr(0, 24), "member,score,rank\nB,0.62");
  const auto community = nlohmann::json::parse(slurp(path("o/community.json")));
  EXPECT_TRUE(community.contains("meta"));
}

TEST_F(CliTest, HeadersEchoConfigAndInputHash) {
  const auto o = out_dir("o");
  ASSERT_EQ(invoke({"--input", path("tiny.txt"), "--out-dir", o, "trust"}).code, 0);
  ASSERT_EQ(invoke({"--input", path("tiny.txt"), "--out-dir", o, "ego", "--member", "A", "--mode",
                    "popularity"}).code, 0);
  const auto csv = slurp(path("o/rankings_social.csv"));
  EXPECT_TRUE(csv.starts_with("# tool=strust "));
  EXPECT_NE(csv.find("# input_sha256="), std::string::npos);
  EXPECT_NE(csv.find("# config.alpha=0.5\n"), std::string::npos);
  const auto dot = slurp(path("o/ego_A_popularity.dot"));
  EXPECT_TRUE(dot.starts_with("// tool=strust "));
  EXPECT_NE(dot.find("\"B\" -> \"A\" [positive=2, negative=0];"), std::string::npos);
  EXPECT_NE(dot.find("\"C\" -> \"A\" [positive=1, negative=0];"), std::string::npos);
  const auto json = nlohmann::json::parse(slurp(path("o/community.json")));
  EXPECT_EQ(json["meta"]["input_sha256"].get<std::string>().size(), 64u);
}

TEST_F(CliTest, ConfigRoundTripAndOverride) {
  const auto o = out_dir("o");
  const auto cfg = path("run.cfg");
  ASSERT_EQ(invoke({"--input", path("tiny.txt"), "--alpha", "0.25", "--out-dir", o, "--save-config", cfg,
                    "trust"}).code, 0);
  const auto saved = slurp(cfg);
  EXPECT_NE(saved.find("alpha=0.25\n"), std::string::npos);
  const auto first = slurp(path("o/community.json"));

  const auto o2 = out_dir("o2");
  ASSERT_EQ(invoke({"--config", cfg, "--out-dir", o2, "trust"}).code, 0);
  auto a = nlohmann::json::parse(first);
  auto b = nlohmann::json::parse(slurp(path("o2/community.json")));
  EXPECT_EQ(a["value"], b["value"]);

  // Community trust does not move with alpha; the social ranking does.
  const auto social_before = slurp(path("o2/rankings_social.csv"));
  ASSERT_EQ(invoke({"--config", cfg, "--alpha", "1", "--out-dir", o2, "trust"}).code, 0);
  const auto c = nlohmann::json::parse(slurp(path("o2/community.json")));
  EXPECT_EQ(c["meta"]["config"]["alpha"], "1");
  EXPECT_NE(slurp(path("o2/rankings_social.csv")), social_before);
}

TEST_F(CliTest, OutputsAreByteIdenticalAcrossRuns) {
  for (const auto* cmd : {"trust", "roles", "sustain"}) {
    std::vector<std::string> base{"--input", path("tiny.txt"), "--out-dir", out_dir("o"), cmd};
    if (std::string(cmd) == "roles") base.insert(base.end(), {"-k", "1"});
    if (std::string(cmd) == "sustain") {
      base.insert(base.end(), {"--percents", "34"});
    }
    ASSERT_EQ(invoke(base).code, 0) << cmd;
    std::map<std::string, std::string> first;
    for (const auto& e : fs::directory_iterator(path("o"))) first[e.path().filename().string()] = slurp(e.path());
    ASSERT_EQ(invoke(base).code, 0) << cmd;
    for (const auto& e : fs::directory_iterator(path("o"))) {
      EXPECT_EQ(first[e.path().filename().string()], slurp(e.path())) << e.path();
    }
  }
}

TEST_F(CliTest, RolesOverlapCurve) {
  const auto o = out_dir("o");
  const auto r = invoke({"--input", path("tiny.txt"), "--out-dir", o, "roles", "-k", "1", "--overlap-kmax", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto overlap = slurp(path("o/overlap.csv"));
  EXPECT_NE(overlap.find("k,overlap\n1,0\n2,1\n3,3\n"), std::string::npos);
  const auto leaders = slurp(path("o/leaders.csv"));
  EXPECT_NE(leaders.find("\nA,"), std::string::npos);
  const auto mentors = slurp(path("o/mentors.csv"));
  EXPECT_NE(mentors.find("\nB,"), std::string::npos);
}

TEST_F(CliTest, SustainNestedRuns) {
  std::string ring;
  for (int i = 0; i < 40; ++i) {
    ring += std::to_string(i) + " " + std::to_string((i + 1) % 40) + "\n";
    if (i % 3 == 1) ring += std::to_string(i) + " 0\n";
  }
  write("ring.txt", ring);
  const auto o = out_dir("o");
  const auto r = invoke({"--input", path("ring.txt"), "--out-dir", o, "sustain", "--kinds", "social"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(slurp(path("o/sustain_social.json")));
  EXPECT_TRUE(doc["nested"].get<bool>());
  ASSERT_EQ(doc["runs"].size(), 3u);
  EXPECT_EQ(doc["runs"][0]["removed_count"], 2);
  EXPECT_EQ(doc["runs"][1]["removed_count"], 4);
  EXPECT_EQ(doc["runs"][2]["removed_count"], 6);
  EXPECT_TRUE(doc["runs"][0].contains("capital_drop_exceeds_threshold"));
  EXPECT_TRUE(fs::exists(path("o/sustain_social.csv")));
}

TEST_F(CliTest, StoreJsonInputMatchesRawInput) {
  const auto o = out_dir("o");
  ASSERT_EQ(invoke({"--input", path("tiny.txt"), "--out-dir", o, "ingest"}).code, 0);
  const auto raw = invoke({"--input", path("tiny.txt"), "--out-dir", out_dir("a"), "--emit", "none", "trust"});
  const auto stored = invoke({"--input", path("o/store.json"), "--out-dir", out_dir("b"), "--emit", "none", "trust"});
  ASSERT_EQ(raw.code, 0);
  ASSERT_EQ(stored.code, 0);
  const auto first_line = [](const std::string& s) { return s.substr(0, s.find('\n')); };
  EXPECT_EQ(nlohmann::json::parse(first_line(raw.out))["value"],
            nlohmann::json::parse(first_line(stored.out))["value"]);
}
