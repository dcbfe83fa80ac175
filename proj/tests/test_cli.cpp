#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("demonlab_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  // Runs the CLI with `args`; stdout goes to `out`, stderr to a side file.
  int run(const std::string& args, const std::string& out = "stdout.txt", const std::string& env = "") {
    const std::string cmd = env + (env.empty() ? "" : " ") + "\"" DEMONLAB_CLI "\" " + args + " > \"" + path(out) +
                            "\" 2> \"" + path("stderr.txt") + "\"";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string read(const std::string& name) const {
    std::ifstream f(path(name), std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
  }

  void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }

  fs::path dir_;
};

const char* kMcConfig = R"({"version": 1, "mc": {"source": {"kind": "correlated", "s": 0.1}, "r2": 0.5,
  "slots": 200000, "normalization": "pairs"}})";

}  // namespace

TEST_F(Cli, SweepCsvToStdout) {
  ASSERT_EQ(run("--preset fig4b-correlated sweep"), 0);
  const auto out = read("stdout.txt");
  EXPECT_EQ(out.rfind("source,normalization,r2,analytic,mc,mc_stderr,mutual_info_bits\n", 0), 0u);
  EXPECT_NE(out.find("correlated,pairs,0.5,0.5,,,\n"), std::string::npos);
}

TEST_F(Cli, FormatFromExtension) {
  ASSERT_EQ(run("--preset fig4b sweep --out " + path("fig.svg")), 0);
  EXPECT_EQ(read("fig.svg").rfind("<svg", 0), 0u);
  ASSERT_EQ(run("--preset fig4b --out " + path("fig.json") + " sweep"), 0);
  EXPECT_EQ(read("fig.json").front(), '[');
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run("sweep --bogus"), 2);
  EXPECT_EQ(run("--preset fig9 sweep"), 2);
  EXPECT_EQ(run("--config " + path("missing.json") + " sweep"), 2);
  write("bad.json", "{\"version\": 1,\n \"sweep\": }");
  EXPECT_EQ(run("--config " + path("bad.json") + " sweep"), 2);
  EXPECT_NE(read("stderr.txt").find("line 2"), std::string::npos);
  write("dark.json", R"({"version": 1, "mc": {"source": {"kind": "uncorrelated", "nbar": 0}, "slots": 1000}})");
  EXPECT_EQ(run("--config " + path("dark.json") + " mc"), 1);
  EXPECT_EQ(run("--preset fig4b sweep --out /nonexistent-dir/x.csv"), 1);
  EXPECT_EQ(run("--preset fig4b --format pdf sweep"), 2);
  EXPECT_EQ(run("check --quick"), 0);
  EXPECT_NE(read("stdout.txt").find("40/40 checks passed"), std::string::npos);
}

TEST_F(Cli, SweepIsByteIdenticalAcrossRuns) {
  write("mc.json", R"({"version": 1, "seed": 5, "preset": "fig4b",
    "sweep": {"engine": "both", "slots": 50000, "r2_grid": [0.1, 0.3, 0.5]}})");
  for (const std::string ext : {"csv", "json"}) {
    ASSERT_EQ(run("--config " + path("mc.json") + " sweep --out " + path("a." + ext)), 0);
    ASSERT_EQ(run("--config " + path("mc.json") + " sweep --out " + path("b." + ext)), 0);
    EXPECT_FALSE(read("a." + ext).empty());
    EXPECT_EQ(read("a." + ext), read("b." + ext)) << ext;
  }
}

TEST_F(Cli, McIsByteIdenticalAcrossRuns) {
  write("mc.json", kMcConfig);
  for (const std::string fmt : {"csv", "json"}) {
    ASSERT_EQ(run("--config " + path("mc.json") + " --seed 3 --format " + fmt + " mc", "a.txt"), 0);
    ASSERT_EQ(run("--config " + path("mc.json") + " --seed 3 --format " + fmt + " mc", "b.txt"), 0);
    EXPECT_EQ(read("a.txt"), read("b.txt")) << fmt;
  }
  EXPECT_NE(read("b.txt").find("\"r2\": 0.5,"), std::string::npos);
}

TEST_F(Cli, SeedPrecedence) {
  write("mc.json", kMcConfig);
  const std::string base = "--config " + path("mc.json") + " --format json mc";
  ASSERT_EQ(run("--seed 11 " + base, "flag.txt"), 0);
  ASSERT_EQ(run(base, "env.txt", "DEMONLAB_SEED=11"), 0);
  ASSERT_EQ(run(base, "env12.txt", "DEMONLAB_SEED=12"), 0);
  ASSERT_EQ(run("--seed 11 " + base, "both.txt", "DEMONLAB_SEED=12"), 0);
  EXPECT_EQ(read("flag.txt"), read("env.txt"));
  EXPECT_EQ(read("flag.txt"), read("both.txt"));
  EXPECT_NE(read("flag.txt"), read("env12.txt"));
  EXPECT_EQ(run(base, "x.txt", "DEMONLAB_SEED=abc"), 2);
}

TEST_F(Cli, G2AndInfo) {
  write("g2.json", R"({"version": 1, "g2": {"source": {"kind": "uncorrelated", "nbar": 0.2}, "slots": 100000, "tau": [0, 5]}})");
  ASSERT_EQ(run("--config " + path("g2.json") + " g2"), 0);
  EXPECT_EQ(read("stdout.txt").rfind("tau,g2\n0,", 0), 0u);
  ASSERT_EQ(run("--preset fig5b info"), 0);
  EXPECT_NE(read("stdout.txt").find("split,singles,0.5,,,,"), std::string::npos);
}
