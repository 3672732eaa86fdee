#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <gtest/gtest.h>
#include <json.hpp>

#include "geonet/geonet.hpp"

namespace {

namespace fs = std::filesystem;

struct CliRun {
    int status = -1;
    std::string out;
};

CliRun run(const std::string& args) {
    const std::string cmd = std::string(GEONET_CLI_PATH) + " " + args + " 2>&1";
    CliRun r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf;
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
    const int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

std::string tmp(const std::string& name) { return (fs::path(GEONET_TEST_TMP) / ("cli_" + name)).string(); }

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST(Cli, BuildNet16ThenVerify) {
    const std::string f = tmp("net16.json");
    ASSERT_EQ(run("build paper16 --out " + f).status, 0);
    const CliRun v = run("verify " + f);
    EXPECT_EQ(v.status, 0) << v.out;
    EXPECT_NE(v.out.find("PASSED"), std::string::npos);

    const CliRun j = run("verify --json " + f);
    EXPECT_EQ(j.status, 0);
    const auto doc = nlohmann::json::parse(j.out);
    EXPECT_LT(doc["max_residual"].get<double>(), 1e-9);
    EXPECT_EQ(j.out, run("verify --json " + f).out);
}

TEST(Cli, BuildToStdoutMatchesLibrary) {
    const CliRun r = run("build paper16");
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out, geonet::to_document(geonet::build_paper_net()));
}

TEST(Cli, VerifyFailsOnBrokenNet) {
    const geonet::Net net = geonet::build_paper_net();
    const std::string f = tmp("broken.json");
    geonet::save(net.without_edge(0), f);
    const CliRun v = run("verify " + f);
    EXPECT_EQ(v.status, 1);
    EXPECT_NE(v.out.find("FAILED"), std::string::npos);
}

TEST(Cli, IrreducibleExitCodes) {
    const std::string net16 = tmp("irr_net16.json"), overlay = tmp("irr_overlay.json"), w = tmp("witness.json");
    ASSERT_EQ(run("build paper16 --out " + net16).status, 0);
    ASSERT_EQ(run("build overlay --out " + overlay).status, 0);
    const CliRun a = run("irreducible " + net16);
    EXPECT_EQ(a.status, 0) << a.out;
    EXPECT_NE(a.out.find("IRREDUCIBLE"), std::string::npos);

    fs::remove(w);
    const CliRun b = run("irreducible " + overlay + " --witness-out " + w);
    EXPECT_EQ(b.status, 2) << b.out;
    EXPECT_NE(b.out.find("REDUCIBLE"), std::string::npos);
    const geonet::Net witness = geonet::load(w);
    EXPECT_GT(witness.edge_count(), 0u);
    EXPECT_LT(witness.edge_count(), geonet::load(overlay).edge_count());

    const CliRun j = run("irreducible --json " + overlay);
    EXPECT_EQ(j.status, 2);
    EXPECT_EQ(nlohmann::json::parse(j.out)["result"], "reducible");
}

TEST(Cli, Fermat) {
    const CliRun r = run("fermat 0 0 1 0 0 1");
    EXPECT_EQ(r.status, 0);
    double x = 0, y = 0;
    ASSERT_EQ(std::sscanf(r.out.c_str(), "%lf %lf", &x, &y), 2);
    EXPECT_NEAR(x, 0.211325, 1e-6);
    EXPECT_NEAR(y, 0.211325, 1e-6);

    const CliRun wide = run("fermat 0 0 2 0 1 0.2");
    EXPECT_EQ(wide.status, 1);
    EXPECT_EQ(wide.out.rfind("error: WideAngleTriangle:", 0), 0u) << wide.out;
}

TEST(Cli, RelaxTripodAndTrace) {
    const std::string topo = tmp("tripod.json"), out = tmp("tripod_relaxed.json"), trace = tmp("trace.csv");
    geonet::save(geonet::build_fermat_tripod({{0, 0}, {1, 0}, {0, 1}}).with_vertex_moved("f", {0.3, 0.3}), topo);
    const CliRun r = run("relax " + topo + " --out " + out + " --trace-out " + trace);
    EXPECT_EQ(r.status, 0) << r.out;
    const geonet::Net relaxed = geonet::load(out);
    EXPECT_NEAR(relaxed.vertex("f").pos.x, 0.2113248654, 1e-6);
    const std::string csv = slurp(trace);
    EXPECT_EQ(csv.rfind("iteration,length\n", 0), 0u);
}

TEST(Cli, RenderSvg) {
    const std::string net16 = tmp("render_net16.json"), svg = tmp("net16.svg");
    ASSERT_EQ(run("build paper16 --out " + net16).status, 0);
    ASSERT_EQ(run("render " + net16 + " --out " + svg + " --labels").status, 0);
    const std::string text = slurp(svg);
    EXPECT_NE(text.find("<svg"), std::string::npos);
    EXPECT_NE(text.find(">a1</text>"), std::string::npos);
}

TEST(Cli, RenderHighlightsWitness) {
    const std::string overlay = tmp("hl_overlay.json"), w = tmp("hl_witness.json"), svg = tmp("hl.svg");
    ASSERT_EQ(run("build overlay --out " + overlay).status, 0);
    ASSERT_EQ(run("irreducible " + overlay + " --witness-out " + w).status, 2);
    ASSERT_EQ(run("render " + overlay + " --highlight " + w + " --out " + svg).status, 0);
    const std::string text = slurp(svg);
    EXPECT_NE(text.find("#d62728"), std::string::npos);
}

TEST(Cli, ErrorsAreSingleLine) {
    const CliRun missing = run("verify " + tmp("does_not_exist.json"));
    EXPECT_EQ(missing.status, 1);
    EXPECT_EQ(missing.out.rfind("error: ParseError:", 0), 0u) << missing.out;
    EXPECT_EQ(std::count(missing.out.begin(), missing.out.end(), '\n'), 1);

    const std::string bad = tmp("bad_kind.json");
    std::ofstream(bad) << R"({"format_version": 1, "vertices": [{"id": "a", "x": 0, "y": 0, "kind": "fixed"}],
        "edges": []})";
    const CliRun r = run("verify " + bad);
    EXPECT_EQ(r.status, 1);
    EXPECT_EQ(r.out.rfind("error: ParseError:", 0), 0u) << r.out;
    EXPECT_NE(run("build nonsense").status, 0);
}
