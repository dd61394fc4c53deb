#include "ratapprox/io.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>

using namespace ratapprox;
namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
    const std::string cmd = std::string(RATAPPROX_CLI) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("ratapprox_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string out() const { return dir_.string(); }

    fs::path dir_;
};

}  // namespace

TEST_F(Cli, UsageErrorsExitTwo) {
    EXPECT_EQ(run("figure --id 7 --out " + out()), 2);
    EXPECT_EQ(run("figure --out " + out()), 2);
    EXPECT_EQ(run("fit --fn sin --domain disk:0,0,1 --out " + out()), 2);
    EXPECT_EQ(run("fit --fn exp --domain square:1 --out " + out()), 2);
    EXPECT_EQ(run("study --fn abs --domain interval:-1,1 --degrees 9:2 --out " + out()), 2);
    EXPECT_EQ(run("bogus"), 2);
    EXPECT_EQ(run("--help"), 0);
}

TEST_F(Cli, FitEmitsModelAndEchoesFlags) {
    ASSERT_EQ(run("fit --fn exp --domain disk:0,0,1 --tol 1e-12 --out " + out()), 0);
    const auto model = model_from_json(json::parse(read_file(dir_ / "model.json")));
    EXPECT_LE(std::get<BarycentricRational>(model).degree(), 7u);
    const auto rep = json::parse(read_file(dir_ / "fit_report.json"));
    EXPECT_EQ(rep["flags"]["tol"].get<double>(), 1e-12);
    EXPECT_EQ(rep["flags"]["domain"].get<std::string>(), "disk:0,0,1");
}

TEST_F(Cli, StudyHonoursDegreeStep) {
    ASSERT_EQ(run("study --fn abs --domain interval:-1,1 --degrees 4:4:60 --out " + out()), 0);
    const auto csv = read_file(dir_ / "convergence.csv");
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "degree,method,error,flag");
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        EXPECT_EQ(std::stoul(line.substr(0, line.find(','))) % 4, 0u) << line;
    }
    EXPECT_GE(rows, 15u);
}

TEST_F(Cli, PotentialFromSavedModel) {
    ASSERT_EQ(run("fit --fn exp --domain disk:0,0,1 --out " + out()), 0);
    ASSERT_EQ(run("potential --model " + (dir_ / "model.json").string() +
                  " --window -2,2,-2,2 --res 400 --domain disk:0,0,1 --out " + out()),
              0);
    const auto rep = json::parse(read_file(dir_ / "potential_report.json"));
    EXPECT_EQ(rep["flags"]["res"].get<std::size_t>(), 400u);
    EXPECT_EQ(read_file(dir_ / "potential.svg").rfind("<svg", 0), 0u);
    EXPECT_EQ(run("potential --model " + (dir_ / "missing.json").string() + " --window -2,2,-2,2 --out " + out()), 1);
    EXPECT_EQ(run("potential --model " + (dir_ / "model.json").string() + " --window 2,-2,-2,2 --out " + out()), 2);
}

TEST_F(Cli, FigureOneWritesAllArtifacts) {
    ASSERT_EQ(run("figure --id 1 --out " + out()), 0);
    for (const char* f : {"convergence.csv", "model.json", "potential.svg", "report.json"})
        EXPECT_TRUE(fs::exists(dir_ / f)) << f;
    const auto rep = json::parse(read_file(dir_ / "report.json"));
    EXPECT_LE(rep["rational_fit"]["degree"].get<std::size_t>(), 7u);
    EXPECT_TRUE(rep["postconditions_ok"].get<bool>());
}

TEST_F(Cli, FigureFiveRateClasses) {
    ASSERT_EQ(run("figure --id 5 --out " + out()), 0);
    const auto rep = json::parse(read_file(dir_ / "report.json"));
    EXPECT_EQ(rep["rates"]["rational"]["class"].get<std::string>(), "root-exponential");
    EXPECT_EQ(rep["rates"]["polynomial"]["class"].get<std::string>(), "algebraic");
}
