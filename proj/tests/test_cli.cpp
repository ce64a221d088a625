#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "support/test_support.hpp"

using namespace lbmcf;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("lbmcf_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string write(const std::string& name, const std::string& content) const {
    std::ofstream(path(name)) << content;
    return path(name);
  }
  std::string write_instance(const std::string& name, const Instance& inst) const {
    return write(name, serialize_instance(inst));
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, GenerateGrid) {
  const auto out = path("g.txt");
  const auto r = run({"generate", "--a", "6", "--b", "2", "--k", "15", "--lambda", "0.6", "--L", "9", "--seed", "1",
                      "--out", out});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(out);
  std::stringstream buf;
  buf << in.rdbuf();
  const Instance inst = parse_instance(buf.str());
  EXPECT_EQ(inst.network.edge_count(), 276);
  EXPECT_EQ(inst.network.vertex_count(), 72);
  EXPECT_EQ(inst.commodity_count(), 15);
  EXPECT_EQ(inst.hop_bound, 9);
  EXPECT_NE(buf.str().find("seed=1"), std::string::npos);
}

TEST_F(CliTest, GenerateUsageErrors) {
  EXPECT_EQ(run({"generate", "--a", "6"}).code, 2);
  EXPECT_EQ(run({"generate", "--lambda", "0", "--out", path("x.txt")}).code, 2);
  const auto mode2 = run({"generate", "--mode", "II", "--out", path("x.txt")});
  EXPECT_EQ(mode2.code, 2);
  EXPECT_NE(mode2.err.find("mode"), std::string::npos);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
}

TEST_F(CliTest, SolveFptasReportsDualBound) {
  const auto in = write_instance("d.txt", fixtures::diamond_instance());
  const auto sol = path("d.sol");
  const auto r = run({"solve", "--algo", "fptas", "--omega", "0.2", "--in", in, "--solution-out", sol});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["solver"], "fptas");
  EXPECT_EQ(j["ub_source"], "fptas-dual");
  EXPECT_GE(j["upper_bound"].get<double>(), 5.0 * (1 - 1e-9));
  EXPECT_GE(j["total_flow"].get<double>(), 4.0);
  if (j["stats"]["terminated_early"].get<bool>()) {
    EXPECT_LE(j["omega_prime"].get<double>(), 0.2);
  }
  EXPECT_EQ(run({"validate", "--in", in, "--solution", sol}).code, 0);
}

TEST_F(CliTest, SolveGreedyWithExactBound) {
  const auto in = write_instance("d.txt", fixtures::diamond_instance());
  const auto r = run({"solve", "--algo", "greedy", "--in", in, "--ub", "exact", "--report", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  EXPECT_EQ(header, cli::RunReport::csv_header());
  EXPECT_EQ(row.rfind("greedy,4,4,1,2,5,5,exact,0,", 0), 0u) << row;

  const auto no_ub = run({"solve", "--algo", "greedy", "--in", in});
  ASSERT_EQ(no_ub.code, 0);
  const auto j = nlohmann::json::parse(no_ub.out);
  EXPECT_TRUE(j["upper_bound"].is_null());
  EXPECT_TRUE(j["omega_prime"].is_null());
  EXPECT_EQ(j["ub_source"], "edge-flow-LP-export-pending");
}

TEST_F(CliTest, SolveUsageErrors) {
  const auto in = write_instance("d.txt", fixtures::diamond_instance());
  EXPECT_EQ(run({"solve", "--algo", "fptas", "--in", in}).code, 2);
  EXPECT_EQ(run({"solve", "--algo", "simplex", "--in", in}).code, 2);
  EXPECT_EQ(run({"solve", "--algo", "greedy", "--in", in, "--report", "xml"}).code, 2);
  EXPECT_EQ(run({"solve", "--algo", "greedy", "--in", path("missing.txt")}).code, 2);
  EXPECT_EQ(run({"solve", "--algo", "greedy", "--in", in, "--ub", "1"}).code, 2);  // below the flow
}

TEST_F(CliTest, ExactPrintsRationalAndDecimal) {
  const auto single = write_instance("s.txt", fixtures::single_edge_instance(10.0, 2.5));
  const auto r = run({"exact", "--in", single});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("optimum 5/2 (2.5)"), std::string::npos) << r.out;
  const auto d = run({"exact", "--in", write_instance("d.txt", fixtures::diamond_instance())});
  EXPECT_NE(d.out.find("optimum 5 (5)"), std::string::npos);
}

TEST_F(CliTest, ExactRefusesGrid) {
  const auto grid = path("g.txt");
  ASSERT_EQ(run({"generate", "--a", "6", "--b", "2", "--k", "15", "--lambda", "0.6", "--L", "9", "--seed", "1",
                 "--out", grid})
                .code,
            0);
  const auto r = run({"exact", "--in", grid});
  EXPECT_EQ(r.code, 4);
  EXPECT_NE(r.err.find("export-lp"), std::string::npos);
}

TEST_F(CliTest, ExportLp) {
  Instance inst{Network(4, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {0, 2, 1.0}, {1, 3, 1.0}}), {{0, 3, 2.0}}, 3};
  const auto in = write_instance("t.txt", inst);
  const auto texp = run({"export-lp", "--in", in, "--model", "texp", "--out", path("t.lp")});
  ASSERT_EQ(texp.code, 0) << texp.err;
  const auto size = time_expanded_lp_size(inst);
  EXPECT_NE(texp.out.find(std::to_string(size.variables) + " variables, " + std::to_string(size.constraints) +
                          " constraints"),
            std::string::npos)
      << texp.out;
  std::ifstream lp(path("t.lp"));
  std::stringstream buf;
  buf << lp.rdbuf();
  EXPECT_EQ(parse_lp_file(buf.str()), export_time_expanded_lp(inst));

  const auto edge = run({"export-lp", "--in", in, "--model", "edge", "--out", path("e.lp")});
  ASSERT_EQ(edge.code, 0);
  EXPECT_NE(edge.out.find("ignores the hop bound"), std::string::npos);
  EXPECT_EQ(run({"export-lp", "--in", in, "--model", "cplex", "--out", path("x.lp")}).code, 2);
}

TEST_F(CliTest, ValidateExitCodes) {
  const auto in = write_instance("s.txt", fixtures::single_edge_instance(10.0, kUnbounded));
  EXPECT_EQ(run({"validate", "--in", in, "--solution", write("ok.sol", "0 10 0 1\ntotal 10\n")}).code, 0);
  const auto over = run({"validate", "--in", in, "--solution", write("over.sol", "0 12 0 1\ntotal 12\n")});
  EXPECT_EQ(over.code, 1);
  const auto j = nlohmann::json::parse(over.out);
  EXPECT_NEAR(j["max_capacity_violation"].get<double>(), 0.2, 1e-12);
  EXPECT_EQ(run({"validate", "--in", in, "--solution", write("bad.sol", "0 1 1 0\ntotal 1\n")}).code, 5);
}
