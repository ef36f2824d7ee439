#include <gtest/gtest.h>
#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Result {
    int code = -1;
    std::string output;
};

Result run(const std::string& args) {
    const std::string cmd = std::string(RELAXLAB_EXE) + " " + args + " 2>&1";
    Result r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf;
    while (std::fgets(buf.data(), buf.size(), p)) r.output += buf.data();
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / (std::string("relaxlab_cli_") + info->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string config(const std::string& extra, const std::string& T = "10", const std::string& L = "120",
                       const std::string& N = "1024") {
        const fs::path p = dir_ / "exp.cfg";
        std::ofstream(p) << "format = relaxlab-config/1\nN = " << N << "\nT = " << T << "\nL = " << L << '\n'
                         << extra;
        return p.string();
    }
    std::string out(const std::string& name = "out") { return (dir_ / name).string(); }

    fs::path dir_;
};

std::string slurp(const fs::path& p) {
    std::ifstream is(p);
    return {std::istreambuf_iterator<char>(is), {}};
}

}  // namespace

TEST_F(Cli, RejectsGammaOutsideRange) {
    const auto r = run("run --config " + config("alpha = 2.5\nbeta = 2.5\n") + " --out " + out());
    EXPECT_NE(r.code, 0);
    EXPECT_NE(r.output.find("gamma outside (1,2]"), std::string::npos) << r.output;
}

TEST_F(Cli, MalformedConfigIsAUsageError) {
    const auto r = run("run --config " + config("colour = blue\n") + " --out " + out());
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.output.find("unknown key"), std::string::npos) << r.output;
    EXPECT_EQ(run("frobnicate").code, 2);
}

TEST_F(Cli, MinimalRunWritesArtifacts) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = run("run --config " + config("") + " --out " + out());
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ASSERT_EQ(r.code, 0) << r.output;
    EXPECT_LT(secs, 5.0);
    EXPECT_TRUE(fs::exists(fs::path(out()) / "snapshots.bin"));
    const std::string manifest = slurp(fs::path(out()) / "manifest.json");
    EXPECT_NE(manifest.find("\"kappa\""), std::string::npos);
    EXPECT_NE(manifest.find("\"gamma\""), std::string::npos);
    const std::string norms = slurp(fs::path(out()) / "norms_chi.csv");
    EXPECT_EQ(norms.substr(0, norms.find('\n')), "t,l1,l2,linf");
}

TEST_F(Cli, KernelPropertySuitePasses) {
    const auto r = run("verify --config " + config("") + " --checks LEM21_KERNEL,LEM24_MOMENT --out " + out());
    EXPECT_EQ(r.code, 0) << r.output;
    EXPECT_NE(r.output.find("LEM21_KERNEL: pass"), std::string::npos) << r.output;
    EXPECT_NE(r.output.find("LEM24_MOMENT: pass"), std::string::npos) << r.output;
    EXPECT_EQ(r.output.find("fail"), std::string::npos) << r.output;
    EXPECT_TRUE(fs::exists(fs::path(out()) / "verdicts.json"));
}

TEST_F(Cli, SandwichWithoutTailsIsDegenerate) {
    const auto r = run("verify --config " + config("c_plus = 0\nc_minus = 0\n") +
                       " --checks SANDWICH_123 --out " + out());
    EXPECT_EQ(r.code, 0) << r.output;
    EXPECT_NE(r.output.find("degenerate-constant"), std::string::npos) << r.output;
}

TEST_F(Cli, SweepNeedsTwoGammas) {
    EXPECT_EQ(run("sweep --config " + config("") + " --gamma 1.5 --out " + out()).code, 2);
    EXPECT_EQ(run("sweep --config " + config("") + " --gamma 1.5,x --out " + out()).code, 2);
}

TEST_F(Cli, SweepWritesOneRowPerGamma) {
    // The rate fit needs 1.5 decades of [T/50, T].
    const auto r = run("sweep --config " + config("", "100", "300", "4096") + " --gamma 1.5,2 --out " + out());
    ASSERT_EQ(r.code, 0) << r.output;
    const std::string csv = slurp(fs::path(out()) / "sweep.csv");
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "gamma,exponent_l1,exponent_l2,exponent_linf,log_flag,error");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
}

TEST_F(Cli, ProfilesDump) {
    const auto r = run("profiles --config " + config("") + " --times 0,4 --out " + out());
    ASSERT_EQ(r.code, 0) << r.output;
    const std::string csv = slurp(fs::path(out()) / "profiles_t4.csv");
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "x,chi,eta,V,Z,u_minus_chi");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1025);
    EXPECT_TRUE(fs::exists(fs::path(out()) / "profiles_t0.csv"));
}
