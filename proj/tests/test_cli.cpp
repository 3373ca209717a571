// Drives the installed binary end to end, so exit codes and stdout are the
// real ones a script would see.
#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>

#include "bloxorz/formats.hpp"
#include "helpers.hpp"

namespace {

struct Outcome {
    int code = -1;
    std::string out;
};

Outcome bloxorz(const std::string& args) {
    std::string cmd = std::string(BLOX_BIN) + " " + args + " 2>/dev/null";
    Outcome r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int st = pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string fx(const char* name) { return th::fixture(name); }

std::string tmp(const std::string& name) {
    auto d = std::filesystem::temp_directory_path() / "bloxorz_cli_test";
    std::filesystem::create_directories(d);
    return (d / name).string();
}

}  // namespace

TEST(Cli, SolveStrip) {
    Outcome r = bloxorz("solve " + fx("strip.level"));
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("RIGHT RIGHT\n"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("length 2"), std::string::npos) << r.out;
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(bloxorz("solve " + fx("strip3.level")).code, 1);
    EXPECT_EQ(bloxorz("solve " + fx("corrupt.level")).code, 2);
    EXPECT_EQ(bloxorz("solve /no/such/file.level").code, 2);
    EXPECT_EQ(bloxorz("solve " + fx("strip.level") + " --budget 1").code, 3);
    EXPECT_EQ(bloxorz("frobnicate").code, 2);
    EXPECT_EQ(bloxorz("ncl-solve " + fx("oror3.graph")).code, 0);
    EXPECT_EQ(bloxorz("ncl-solve " + fx("frozen.graph")).code, 1);
    EXPECT_EQ(bloxorz("cube-solve " + fx("strip.level")).code, 2) << "block level";
    EXPECT_EQ(bloxorz("verify reduction " + fx("oror3.graph") + " --budget 10").code, 3);
}

TEST(Cli, VerifyReduction) {
    Outcome r = bloxorz("verify reduction " + fx("oror3.graph") + " --mode all-open");
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(r.out.rfind("PASS", 0), 0u) << r.out;
    EXPECT_EQ(bloxorz("verify reduction " + fx("frozen.graph")).code, 0);
}

TEST(Cli, VerifyGadgets) {
    Outcome r = bloxorz("verify gadgets");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("PASS\n"), std::string::npos);
}

TEST(Cli, CompilersWriteSolvableLevels) {
    std::string sat = tmp("sat.level"), unsat = tmp("unsat.level"), quad = tmp("q.level");
    ASSERT_EQ(bloxorz("reduce-sat " + fx("sat.cnf") + " -o " + sat).code, 0);
    ASSERT_EQ(bloxorz("reduce-sat " + fx("unsat.cnf") + " -o " + unsat).code, 0);
    ASSERT_EQ(bloxorz("gen-quadratic -r 2 -o " + quad).code, 0);
    EXPECT_EQ(bloxorz("solve " + sat).code, 0);
    EXPECT_EQ(bloxorz("solve " + unsat).code, 1);
    // closure finds a walk, BFS the shortest one
    EXPECT_EQ(bloxorz("cube-solve " + quad).code, 0);
    Outcome q = bloxorz("solve " + quad);
    EXPECT_NE(q.out.find("length 9"), std::string::npos) << q.out;
    EXPECT_EQ(bloxorz("gen-quadratic -r 0 -o " + quad).code, 2);
}

TEST(Cli, ReduceNclIsDeterministic) {
    Outcome a = bloxorz("reduce-ncl " + fx("oror3.graph") + " --mode all-closed -o -");
    Outcome b = bloxorz("reduce-ncl " + fx("oror3.graph") + " --mode all-closed -o -");
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_NO_THROW(blox::parse_level(a.out));
    Outcome render = bloxorz("render " + fx("strip.level"));
    EXPECT_EQ(render.code, 0);
    EXPECT_NE(render.out.find("S..G"), std::string::npos) << render.out;
}
