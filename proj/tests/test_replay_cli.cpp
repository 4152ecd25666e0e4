#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code = -1;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

class ReplayCli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("replay_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    spit(dir_ / "scene.json", R"({"version": 1, "contours_visible": false, "objects": [
  {"id": 0, "type": "tile", "params": {"vertices": [[0,5],[10,5],[10,15],[0,15]]}}]})");
  }
  void TearDown() override { fs::remove_all(dir_); }

  RunResult run(const std::string& args) {
    const fs::path err = dir_ / "stderr.txt";
    const fs::path out = dir_ / "stdout.txt";
    const std::string cmd = std::string("\"") + REPLAY_EXE + "\" " + args + " >\"" + out.string() + "\" 2>\"" +
                            err.string() + "\"";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.err = slurp(err);
    stdout_ = slurp(out);
    return r;
  }

  fs::path dir_;
  std::string stdout_;
};

}  // namespace

TEST_F(ReplayCli, AppliesScript) {
  spit(dir_ / "events.txt", "down 5 5\nmove 9 8\nup\n");
  const RunResult r = run("--scene " + (dir_ / "scene.json").string() + " --script " + (dir_ / "events.txt").string() +
                    " --out " + (dir_ / "final.json").string());
  EXPECT_EQ(r.code, 0) << r.err;
  const std::string final_scene = slurp(dir_ / "final.json");
  EXPECT_NE(final_scene.find("[4, 8]"), std::string::npos) << final_scene;
  EXPECT_TRUE(stdout_.empty());
}

TEST_F(ReplayCli, MissingSceneIsUsageError) {
  const RunResult r = run("--script x.txt");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("--scene"), std::string::npos);
  EXPECT_TRUE(stdout_.empty());
}

TEST_F(ReplayCli, SnapshotsNeedSvg) { EXPECT_EQ(run("--scene " + (dir_ / "scene.json").string() + " --snapshot-every 2").code, 2); }

TEST_F(ReplayCli, ScriptArityErrorNamesLine) {
  spit(dir_ / "bad.txt", "down 5 5\nmove 6 6\nmove 7 7\n# note\n\nup\nmove 1\n");
  const RunResult r = run("--scene " + (dir_ / "scene.json").string() + " --script " + (dir_ / "bad.txt").string());
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("line 7"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("bad.txt"), std::string::npos) << r.err;
}

TEST_F(ReplayCli, BrokenSceneIsParseError) {
  spit(dir_ / "broken.json", "{\n  \"version\": 1,\n  \"objects\": [,]\n}\n");
  const RunResult r = run("--scene " + (dir_ / "broken.json").string());
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
}

TEST_F(ReplayCli, MissingFileIsIoError) {
  EXPECT_EQ(run("--scene " + (dir_ / "nope.json").string()).code, 4);
  const RunResult r = run("--scene " + (dir_ / "scene.json").string() + " --out " + (dir_ / "no" / "such" / "dir.json").string());
  EXPECT_EQ(r.code, 4);
}

TEST_F(ReplayCli, WritesFrames) {
  spit(dir_ / "events.txt", "down 5 5\nmove 6 6\nmove 7 7\nmove 8 8\nup\n");
  const RunResult r = run("--scene " + (dir_ / "scene.json").string() + " --script " + (dir_ / "events.txt").string() +
                    " --svg " + (dir_ / "final.svg").string() + " --snapshot-every 2");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir_ / "frame_000001.svg"));
  EXPECT_TRUE(fs::exists(dir_ / "frame_000002.svg"));
  EXPECT_FALSE(fs::exists(dir_ / "frame_000003.svg"));
  EXPECT_TRUE(fs::exists(dir_ / "final.svg"));
}
