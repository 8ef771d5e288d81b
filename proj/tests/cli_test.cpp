#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "rwinv_app/commands.hpp"
#include "rwinv_app/io.hpp"

namespace rwinv::app {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("rwinv_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& contents) {
    const fs::path p = dir_ / name;
    write_atomic(p, contents);
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int call(std::vector<std::string> args) {
    args.insert(args.begin(), "rwinv");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    out_.str("");
    err_.str("");
    return run(static_cast<int>(argv.size()), argv.data(), out_, err_);
  }

  json read_json(const std::string& p) { return json::parse(read_file(p)); }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

constexpr const char* kP3 = R"({"n":3,"edges":[[0,1],[1,2]],"v_in":2,"v_out":0,"rho":[1,1,1]})";
constexpr const char* kP4 = R"({"n":4,"edges":[[0,1],[1,2],[2,3]],"v_in":3,"v_out":0})";
constexpr const char* kK3 = R"({"n":3,"edges":[[0,1],[0,2],[1,2]],"v_in":1,"v_out":0,"rho":[1,1,1]})";

TEST_F(Cli, ExpectFixedPoint) {
  const std::string inst = file("p3.json", kP3);
  ASSERT_EQ(call({"expect", "--instance", inst, "--method", "fixedpoint", "--out", path("tau.json")}), 0);
  const json doc = read_json(path("tau.json"));
  EXPECT_EQ(doc["tau"], json::parse("[1.0, 2.0, 2.0]"));
  EXPECT_EQ(doc["manifest"]["command"], "expect");
  EXPECT_EQ(doc["manifest"]["instance_hash"].get<std::string>().size(), 16u);
}

TEST_F(Cli, ExpectGreenOnSingleEdge) {
  const std::string inst = file("e.json", R"({"n":2,"edges":[[0,1]],"v_in":1,"v_out":0,"rho":[1,2]})");
  ASSERT_EQ(call({"expect", "--instance", inst, "--method", "green"}), 0);
  const json doc = json::parse(out_.str());
  EXPECT_NEAR(doc["tau"][0].get<double>(), 1.0, 1e-12);
  EXPECT_NEAR(doc["tau"][1].get<double>(), 1.0, 1e-12);
}

TEST_F(Cli, ExpectCsv) {
  const std::string inst = file("p3.json", kP3);
  ASSERT_EQ(call({"expect", "--instance", inst, "--out", path("tau.csv")}), 0);
  const std::string csv = read_file(path("tau.csv"));
  EXPECT_EQ(csv.rfind("# manifest ", 0), 0u);
  EXPECT_NE(csv.find("\nvertex,tau\n0,1\n1,2\n2,2\n"), std::string::npos);
}

TEST_F(Cli, MonteCarloNeedsSeedAndIsRepeatable) {
  const std::string inst = file("p3.json", kP3);
  EXPECT_EQ(call({"expect", "--instance", inst, "--method", "montecarlo", "--N", "1000"}), 1);
  EXPECT_NE(err_.str().find("--seed"), std::string::npos);
  const std::vector<std::string> args{"expect", "--instance", inst, "--method", "montecarlo",
                                      "--N",    "20000",    "--seed",   "42", "--out", path("mc.json")};
  ASSERT_EQ(call(args), 0);
  const std::string first = read_file(path("mc.json"));
  std::vector<std::string> more = args;
  more.insert(more.end(), {"--workers", "3"});
  ASSERT_EQ(call(more), 0);
  EXPECT_EQ(read_file(path("mc.json")), first);
  const json doc = json::parse(first);
  for (int v = 1; v < 3; ++v) {
    EXPECT_LE(std::abs(doc["tau"][v].get<double>() - 2.0), 4.0 * doc["standard_error"][v].get<double>());
  }
}

TEST_F(Cli, MissingRhoNamesTheField) {
  const std::string inst = file("p4.json", kP4);
  EXPECT_EQ(call({"expect", "--instance", inst}), 1);
  EXPECT_NE(err_.str().find("\"rho\""), std::string::npos);
}

TEST_F(Cli, MissingInstanceFlag) {
  EXPECT_EQ(call({"expect"}), 1);
  EXPECT_NE(err_.str().find("--instance"), std::string::npos);
}

TEST_F(Cli, Simulate) {
  const std::string inst = file("p3.json", kP3);
  ASSERT_EQ(call({"simulate", "--instance", inst, "--seed", "3", "--N", "5", "--paths", "--out", path("s.json")}), 0);
  const json doc = read_json(path("s.json"));
  ASSERT_EQ(doc["walks"].size(), 5u);
  EXPECT_EQ(doc["walks"][0]["vertices"].front(), 2);
  EXPECT_EQ(doc["walks"][0]["vertices"].back(), 0);
}

TEST_F(Cli, ReconstructPathOfFour) {
  const std::string inst = file("p4.json", kP4);
  const std::string tau = file("tau.json", "[1, 2, 3, 2]");
  ASSERT_EQ(call({"reconstruct", "--instance", inst, "--tau", tau, "--out", path("w.json")}), 0);
  const json doc = read_json(path("w.json"));
  EXPECT_EQ(doc["status"], "converged");
  const std::string log = read_file(path("w.json") + ".iters.csv");
  EXPECT_NE(log.find("\niter,cost,step\n0,"), std::string::npos);

  // Transition matrix agrees with the exact path solution.
  Eigen::Vector4d rho;
  for (int v = 0; v < 4; ++v) rho[v] = doc["rho"][v].get<double>();
  const Eigen::Vector4d exact(1, 1, 1, 0.5);
  const Graph g = load_instance(inst).graph;
  const Eigen::MatrixXd diff =
      transition_matrix(g, derived_weights(g, rho)) - transition_matrix(g, derived_weights(g, exact));
  EXPECT_LT(diff.cwiseAbs().maxCoeff(), 1e-3);
}

TEST_F(Cli, ReconstructMaxIters) {
  const std::string inst = file("k3.json", kK3);
  const std::string tau = file("tau.json", "[1, 1.56, 0.96]");
  EXPECT_EQ(call({"reconstruct", "--instance", inst, "--tau", tau, "--max-iters", "1", "--cost-tol", "1e-14",
                  "--out", path("w.json")}),
            2);
  EXPECT_EQ(read_json(path("w.json"))["status"], "max_iters");
}

TEST_F(Cli, ReconstructDisconnectedSupport) {
  const std::string inst = file("p4.json", kP4);
  const std::string tau = file("tau.json", "[1, 2, 0, 2]");
  EXPECT_EQ(call({"reconstruct", "--instance", inst, "--tau", tau}), 1);
  EXPECT_NE(err_.str().find("SupportMismatch"), std::string::npos);
}

TEST_F(Cli, SolveFamilies) {
  const std::string p4 = file("p4.json", kP4);
  ASSERT_EQ(call({"solve", "--instance", p4, "--target", file("r.json", "[1,2,3,2]"), "--family", "path"}), 0);
  const json doc = json::parse(out_.str());
  const std::vector<double> rho = doc["rho"];
  EXPECT_NEAR(rho[3], 0.5, 1e-12);

  const std::string k3 = file("k3.json", kK3);
  ASSERT_EQ(call({"solve", "--instance", k3, "--target", file("r3.json", R"({"r": [1, 1.3333333333333333, 0.6666666666666666]})"),
                  "--family", "complete"}),
            0);
  const std::vector<double> beta = json::parse(out_.str())["beta"];
  for (double b : beta) EXPECT_NEAR(b, 1.0 / 3.0, 1e-9);

  EXPECT_EQ(call({"solve", "--instance", p4, "--target", path("r.json"), "--family", "complete"}), 1);
  EXPECT_EQ(call({"solve", "--instance", p4, "--target", file("bad.json", "[1,0.5,3,2]")}), 3);
}

TEST_F(Cli, SolvePetersenIsIrreducible) {
  const std::string inst = file("pet.json", R"({"n":10,"edges":[[0,1],[1,2],[2,3],[3,4],[4,0],[0,5],[1,6],[2,7],
      [3,8],[4,9],[5,7],[7,9],[9,6],[6,8],[8,5]],"v_in":7,"v_out":0})");
  EXPECT_EQ(call({"solve", "--instance", inst, "--target", file("r.json", "[1,1,1,1,1,1,1,1,1,1]")}), 3);
  EXPECT_NE(err_.str().find("Irreducible"), std::string::npos);
}

TEST_F(Cli, Check) {
  const std::string p3 = file("p3.json", kP3);
  ASSERT_EQ(call({"check", "--instance", p3}), 0);
  json doc = json::parse(out_.str());
  EXPECT_EQ(doc["hull_dim"], 1);
  EXPECT_EQ(doc["bipartite"], true);
  EXPECT_TRUE(doc["relint"].is_null());

  ASSERT_EQ(call({"check", "--instance", file("k3.json", kK3)}), 0);
  EXPECT_EQ(json::parse(out_.str())["hull_dim"], 2);

  ASSERT_EQ(call({"check", "--instance", p3, "--target", file("r.json", "[1,1,1]")}), 0);
  doc = json::parse(out_.str());
  EXPECT_EQ(doc["relint"], false);

  EXPECT_EQ(call({"check", "--instance", p3, "--cap", "1"}), 1);
  EXPECT_NE(err_.str().find("CapTooSmall"), std::string::npos);
}

TEST_F(Cli, Gradcheck) {
  EXPECT_EQ(call({"gradcheck", "--instance", file("p3.json", kP3), "--seed", "1"}), 0);
  EXPECT_EQ(call({"gradcheck", "--instance", file("k3.json", kK3), "--seed", "1", "--out", path("g.json")}), 0);
  EXPECT_LE(read_json(path("g.json"))["max_relative_error"].get<double>(), 1e-5);
}

TEST_F(Cli, AtomicWriteLeavesNoTemporaries) {
  const std::string inst = file("p3.json", kP3);
  ASSERT_EQ(call({"expect", "--instance", inst, "--out", path("a.json")}), 0);
  for (const auto& entry : fs::directory_iterator(dir_)) {
    EXPECT_EQ(entry.path().string().find(".tmp."), std::string::npos);
  }
}

TEST_F(Cli, InstanceValidation) {
  EXPECT_EQ(call({"expect", "--instance", file("a.json", R"({"n":3,"edges":[[0,1]],"v_in":1,"v_out":0,"rho":[1,1,1]})")}), 1);
  EXPECT_NE(err_.str().find("Disconnected"), std::string::npos);
  EXPECT_EQ(call({"expect", "--instance", file("b.json", R"({"edges":[[0,1]],"v_in":1,"v_out":0})")}), 1);
  EXPECT_NE(err_.str().find("\"n\""), std::string::npos);
  EXPECT_EQ(call({"expect", "--instance", file("c.json", "{not json")}), 1);
}

}  // namespace
}  // namespace rwinv::app
