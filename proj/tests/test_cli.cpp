#include <gtest/gtest.h>

#include <hypergiant/cli.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace hypergiant;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result cli(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

std::size_t count_of(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
    return n;
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("hypergiant_test_" + name);
}

}  // namespace

TEST(Cli, GenerateDeterministic) {
    const std::vector<std::string> args{"generate", "--n", "300", "--alpha", "0.8", "--nu", "1", "--seed", "5"};
    const auto a = cli(args);
    const auto b = cli(args);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    const auto c = cli({"generate", "--n", "300", "--alpha", "0.8", "--nu", "1", "--seed", "6"});
    EXPECT_NE(a.out, c.out);
    EXPECT_EQ(a.out.rfind("# {", 0), 0u);
    EXPECT_NE(a.out.find("\nid,r,theta\n"), std::string::npos);
}

TEST(Cli, ProvenanceLine) {
    const auto r = cli({"components", "--n", "400", "--alpha", "1.2", "--nu", "2", "--seed", "11"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto prov = nlohmann::json::parse(first_line(r.out).substr(2));
    EXPECT_EQ(prov["command"], "components");
    EXPECT_EQ(prov["seed"], 11);
    EXPECT_EQ(prov["parameters"]["n"], 400);
    EXPECT_EQ(prov["parameters"]["poissonized"], false);
    EXPECT_NE(r.out.find("\nrank,size,fraction\n"), std::string::npos);
}

TEST(Cli, FigureSvg) {
    const auto r = cli({"generate", "--n", "500", "--alpha", "0.7", "--nu", "2", "--seed", "7", "--format", "svg"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(count_of(r.out, "<circle class=\"v\""), 500u);
    const auto j = cli({"generate", "--n", "500", "--alpha", "0.7", "--nu", "2", "--seed", "7", "--format", "json"});
    const auto doc = nlohmann::json::parse(j.out);
    EXPECT_EQ(doc["vertex_count"], 500);
    EXPECT_EQ(count_of(r.out, "<line "), doc["edge_count"].get<std::size_t>());
    EXPECT_EQ(doc["config"]["format"], "json");
}

TEST(Cli, ContinuumAndStrip) {
    const auto r = cli({"generate", "--model", "continuum", "--alpha", "1", "--lambda", "1", "--halfwidth", "5",
                        "--height", "4"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("\nx,y\n"), std::string::npos);
    const auto s = cli({"generate", "--n", "200", "--alpha", "0.8", "--nu", "1", "--strip"});
    ASSERT_EQ(s.code, 0) << s.err;
    EXPECT_NE(s.out.find("\nx,y\n"), std::string::npos);
    const auto e = cli({"generate", "--n", "200", "--alpha", "0.8", "--nu", "1", "--edges"});
    ASSERT_EQ(e.code, 0) << e.err;
    const std::string body = e.out.substr(e.out.find('\n') + 1);
    EXPECT_EQ(body.find(','), std::string::npos);
    EXPECT_NE(body.find(' '), std::string::npos);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(cli({}).code, 2);
    EXPECT_EQ(cli({"nonsense"}).code, 2);
    EXPECT_EQ(cli({"generate", "--alpha", "0.8", "--nu", "1"}).code, 2);
    EXPECT_EQ(cli({"generate", "--n", "x", "--alpha", "0.8", "--nu", "1"}).code, 2);
    EXPECT_EQ(cli({"generate", "--n", "100", "--alpha", "0.8", "--nu", "1", "--bogus", "1"}).code, 2);
    EXPECT_EQ(cli({"generate", "--n", "100", "--alpha", "0.8", "--nu", "1", "--format", "xml"}).code, 2);
    EXPECT_EQ(cli({"lln", "--alpha", "1", "--nu", "1", "--nlist", "100", "--format", "svg"}).code, 2);
    const auto domain = cli({"generate", "--n", "2", "--alpha", "0.8", "--nu", "2"});
    EXPECT_EQ(domain.code, 1);
    EXPECT_FALSE(domain.err.empty());
    EXPECT_EQ(cli({"theta", "--alpha", "0.8", "--lambda", "1", "--replicas", "10", "--h", "3", "--ubound", "2"}).code, 1);
    EXPECT_EQ(cli({"lln", "--alpha", "1", "--nu", "1", "--nlist", "500,100"}).code, 1);
    EXPECT_EQ(cli({"theta", "--alpha", "0.8", "--lambda", "1", "--nu", "2"}).code, 2);
    const auto help = cli({"--help"});
    EXPECT_EQ(help.code, 0);
    EXPECT_NE(help.out.find("generate"), std::string::npos);
}

TEST(Cli, ConfigFileAndOverride) {
    const auto path = temp_file("config.json");
    {
        std::ofstream f(path);
        f << R"({"n": 300, "alpha": 0.9, "nu": 1.5, "seed": 4})";
    }
    const auto from_file = cli({"components", "--config", path.string()});
    ASSERT_EQ(from_file.code, 0) << from_file.err;
    const auto from_flags = cli({"components", "--n", "300", "--alpha", "0.9", "--nu", "1.5", "--seed", "4"});
    EXPECT_EQ(from_file.out, from_flags.out);
    const auto overridden = cli({"components", "--config", path.string(), "--seed", "5"});
    const auto prov = nlohmann::json::parse(first_line(overridden.out).substr(2));
    EXPECT_EQ(prov["seed"], 5);
    EXPECT_EQ(prov["parameters"]["alpha"], 0.9);
    {
        std::ofstream f(path);
        f << R"({"n": 300, "alpha": 0.9, "nu": 1.5, "colour": "red"})";
    }
    EXPECT_EQ(cli({"components", "--config", path.string()}).code, 2);
    {
        std::ofstream f(path);
        f << R"({"n": 300, "alpha": "high", "nu": 1.5})";
    }
    EXPECT_EQ(cli({"components", "--config", path.string()}).code, 2);
    EXPECT_EQ(cli({"components", "--config", "/nonexistent/cfg.json"}).code, 2);
    std::filesystem::remove(path);
}

TEST(Cli, OutputFile) {
    const auto path = temp_file("out.csv");
    const auto r = cli({"components", "--n", "200", "--alpha", "1.2", "--nu", "2", "--out", path.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    EXPECT_EQ(ss.str(), cli({"components", "--n", "200", "--alpha", "1.2", "--nu", "2"}).out);
    std::filesystem::remove(path);
}

TEST(Cli, Selftest) {
    const auto r = cli({"selftest"});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("status,check,trials,violations"), std::string::npos);
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(Cli, Tables) {
    const auto lln = cli({"lln", "--alpha", "1.5", "--nu", "5", "--nlist", "500,1000", "--replicas", "3"});
    ASSERT_EQ(lln.code, 0) << lln.err;
    EXPECT_NE(lln.out.find("\nn,replicas,g_c1_mean,g_c1_sd,g_c2_mean,g_c2_sd,po_c1_mean,po_c1_sd,po_c2_mean,po_c2_sd\n"),
              std::string::npos);
    EXPECT_EQ(count_of(lln.out, "\n"), 4u);
    const auto theta = cli({"theta", "--alpha", "0.45", "--lambda", "1", "--format", "json"});
    ASSERT_EQ(theta.code, 0) << theta.err;
    EXPECT_EQ(nlohmann::json::parse(theta.out)["estimate"]["exact"], true);
    const auto cv = cli({"cvalue", "--alpha", "1.5", "--nu", "5"});
    ASSERT_EQ(cv.code, 0) << cv.err;
    const auto couple = cli({"couple-check", "--n", "1000", "--alpha", "0.8", "--nu", "1", "--format", "json"});
    ASSERT_EQ(couple.code, 0) << couple.err;
    EXPECT_TRUE(nlohmann::json::parse(couple.out)["report"].contains("g_only_outer"));
    const auto lc = cli({"lambdac", "--h", "3", "--replicas", "31", "--tol", "1"});
    ASSERT_EQ(lc.code, 0) << lc.err;
    EXPECT_NE(lc.out.find("\nlo,hi,nu_mid,lambda,p_cross\n"), std::string::npos);
}

TEST(Cli, BinaryExitCodes) {
    const std::string bin = HYPERGIANT_CLI_PATH;
    EXPECT_EQ(std::system((bin + " selftest > /dev/null").c_str()), 0);
    const int usage = std::system((bin + " generate --alpha 1 > /dev/null 2>&1").c_str());
    EXPECT_EQ(WEXITSTATUS(usage), 2);
    const int domain = std::system((bin + " generate --n 2 --alpha 1 --nu 2 > /dev/null 2>&1").c_str());
    EXPECT_EQ(WEXITSTATUS(domain), 1);
}
