#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "crjet/cli.hpp"

using namespace crjet::cli;
using nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

const std::string kCorpus = CRJET_CORPUS;

std::string at(const std::string& name) { return kCorpus + "/" + name; }

struct Invocation {
    int code = -1;
    std::string out, err;
    ordered_json report() const { return ordered_json::parse(out); }
};

Invocation invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "crjet");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    Invocation r;
    r.code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

ordered_json invariants_of(const std::string& surface) {
    const Invocation r = invoke({"analyze", at(surface)});
    return r.report()["results"][0]["invariants"];
}

}  // namespace

TEST(Cli, AnalyzeGoldens) {
    const auto h = invariants_of("heisenberg.surf");
    EXPECT_EQ(h["summary"], "(m0, alpha0, mu0, l, beta0) = (1, 1, 0, 1, 1)");
    EXPECT_EQ(h["finite_type"], true);
    const auto z4 = invariants_of("z4.surf");
    EXPECT_EQ(z4["summary"], "(m0, alpha0, mu0, l, beta0) = (2, 2, 0, 2, 2)");
    EXPECT_EQ(z4["finite_type"], true);
    const auto inf = invariants_of("inftype.surf");
    EXPECT_EQ(inf["summary"], "(m0, alpha0, mu0, l, beta0) = (2, 1, 1, 1, -)");
    EXPECT_EQ(inf["finite_type"], false);
    for (const char* s : {"heisenberg.surf", "z4.surf", "inftype.surf"}) EXPECT_EQ(invoke({"analyze", at(s)}).code, kPass);
}

TEST(Cli, LeviFlatIsUnknown) {
    const Invocation r = invoke({"analyze", at("leviflat.surf")});
    EXPECT_EQ(r.code, kUnknown);
    EXPECT_EQ(r.report()["results"][0]["invariants"]["levi_flat_unknown"], true);
}

TEST(Cli, ReportKeyOrder) {
    const auto rep = invoke({"analyze", at("heisenberg.surf")}).report();
    std::vector<std::string> keys;
    for (auto it = rep.begin(); it != rep.end(); ++it) keys.push_back(it.key());
    ASSERT_GE(keys.size(), 3u);
    EXPECT_EQ(keys[0], "command");
    EXPECT_EQ(keys[1], "inputs");
    EXPECT_EQ(keys[2], "options");
    EXPECT_EQ(rep["inputs"][0]["sha256"].get<std::string>().size(), 64u);
}

TEST(Cli, VerifyExitCodes) {
    EXPECT_EQ(invoke({"verify", at("heisenberg.surf"), at("heisenberg.surf"), at("heis_a1.map")}).code, kPass);
    EXPECT_EQ(invoke({"verify", at("heisenberg.surf"), at("heisenberg.surf"), at("rot.map")}).code, kPass);
    EXPECT_EQ(invoke({"verify", at("z4.surf"), at("z4.surf"), at("dil_2_16.map")}).code, kPass);
    const Invocation bad = invoke({"verify", at("z4.surf"), at("z4.surf"), at("dil_2_4_bad.map")});
    EXPECT_EQ(bad.code, kFailure);
    EXPECT_EQ(bad.report()["witness"]["mapping_identity"], "-24*i at z^2*x^2");
}

TEST(Cli, CrossSurfaceObstruction) {
    const Invocation r = invoke({"verify", at("heisenberg.surf"), at("z4.surf"), at("identity.map")});
    EXPECT_EQ(r.code, kFailure);
    const auto rep = r.report();
    EXPECT_EQ(rep["verdicts"]["invariants_agree"], false);
    EXPECT_EQ(rep["witness"]["invariants"][0], "m0: 1 != 2");
}

TEST(Cli, SegreExactAndFloat) {
    for (const char* map : {"heis_a1.map", "heis_a_half.map", "heis_a_m2.map", "dil_2_4.map"})
        for (int k = 0; k <= 2; ++k) {
            SCOPED_TRACE(std::string(map) + " k=" + std::to_string(k));
            const auto args = std::vector<std::string>{"segre", at("heisenberg.surf"), at("heisenberg.surf"), at(map),
                                                       std::to_string(k)};
            const Invocation exact = invoke(args);
            EXPECT_EQ(exact.code, kPass);
            EXPECT_EQ(exact.report()["verdicts"]["match"], true);
            auto fargs = args;
            fargs.insert(fargs.begin(), {"--backend", "float"});
            const Invocation fl = invoke(fargs);
            EXPECT_EQ(fl.code, kPass);
            EXPECT_EQ(fl.report()["options"]["backend"], "float");
        }
}

TEST(Cli, DetermineAndDynamics) {
    const Invocation d = invoke({"determine", at("heisenberg.surf"), at("heis_a1.map"), at("heis_a1.map"), "2"});
    EXPECT_EQ(d.code, kPass);
    EXPECT_EQ(d.report()["verdicts"]["jets_equal"], true);
    EXPECT_EQ(d.report()["verdicts"]["maps_equal"], true);
    const Invocation v = invoke({"determine", at("heisenberg.surf"), at("heis_a1.map"), at("heis_a_half.map"), "2"});
    EXPECT_EQ(v.code, kPass);
    EXPECT_EQ(v.report()["verdicts"]["vacuous"], true);
    EXPECT_EQ(invoke({"dynamics", at("heisenberg.surf"), at("heis_a_half.map")}).code, kPass);
    EXPECT_EQ(invoke({"dynamics", at("heisenberg.surf"), at("dil_2_4.map")}).code, kUnknown);
}

TEST(Cli, OdeModes) {
    const Invocation res2 = invoke({"ode", at("res2.ode"), "--mode", "determine"});
    EXPECT_EQ(res2.code, kPass);
    EXPECT_EQ(res2.report()["determination_order"], 2);
    EXPECT_EQ(invoke({"ode", at("irregular.ode"), "--mode", "determine"}).report()["determination_order"], 0);
    EXPECT_EQ(invoke({"ode", at("flat.ode"), "--mode", "determine"}).report()["determination_order"], 0);

    const Invocation solve = invoke({"ode", at("res2.ode")});
    EXPECT_EQ(solve.code, kPass);
    const auto rep = solve.report();
    EXPECT_EQ(rep["verdicts"]["residual_zero"], true);
    EXPECT_EQ(rep["free_orders"], ordered_json::array({2}));
    EXPECT_EQ(rep["resonances"], ordered_json::array({2}));

    const Invocation sys = invoke({"ode", at("system.ode")});
    EXPECT_EQ(sys.code, kPass);
    EXPECT_EQ(sys.report()["resonances"], ordered_json::array({1, 3}));

    const Invocation chain = invoke({"ode", at("irregular.ode"), "--mode", "chain"});
    EXPECT_EQ(chain.code, kPass);
    EXPECT_EQ(chain.report()["verdicts"]["within_bound"], true);
    EXPECT_EQ(invoke({"ode", at("res2.ode"), "--mode", "chain"}).code, kInputError);
}

TEST(Cli, Deterministic) {
    const std::vector<std::vector<std::string>> cases = {
        {"analyze", at("z4.surf")},
        {"segre", at("heisenberg.surf"), at("heisenberg.surf"), at("heis_a_m2.map"), "3"},
        {"ode", at("system.ode")},
    };
    for (const auto& args : cases) EXPECT_EQ(invoke(args).out, invoke(args).out);
}

TEST(Cli, DirectoryWithJobsMatchesSerial) {
    const Invocation serial = invoke({"analyze", kCorpus});
    const Invocation parallel = invoke({"--jobs", "4", "analyze", kCorpus});
    EXPECT_EQ(serial.code, kUnknown);  // the corpus contains the Levi-flat model
    auto a = serial.report(), b = parallel.report();
    a.erase("options");
    b.erase("options");
    EXPECT_EQ(a.dump(), b.dump());
    EXPECT_EQ(a["results"].size(), 4u);
}

TEST(Cli, OutWritesAtomically) {
    const fs::path dir = fs::temp_directory_path() / "crjet_cli_out";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const fs::path target = dir / "report.json";
    const Invocation shown = invoke({"analyze", at("heisenberg.surf")});
    const Invocation written = invoke({"--out", target.string(), "analyze", at("heisenberg.surf")});
    EXPECT_EQ(written.code, kPass);
    EXPECT_TRUE(written.out.empty());
    std::ifstream in(target);
    std::stringstream ss;
    ss << in.rdbuf();
    auto a = shown.report(), b = ordered_json::parse(ss.str());
    EXPECT_EQ(a["results"].dump(), b["results"].dump());
    int files = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++files;
    EXPECT_EQ(files, 1);
    fs::remove_all(dir);
}

TEST(Cli, InputErrors) {
    EXPECT_EQ(invoke({"analyze", at("missing.surf")}).code, kInputError);
    EXPECT_EQ(invoke({"--backend", "float", "verify", at("heisenberg.surf"), at("heisenberg.surf"), at("rot.map")}).code,
              kInputError);
    EXPECT_EQ(invoke({"--backend", "quad", "analyze", at("heisenberg.surf")}).code, kInputError);
    EXPECT_EQ(invoke({"segre", at("heisenberg.surf"), at("heisenberg.surf"), at("heis_a1.map"), "-1"}).code, kInputError);
    EXPECT_EQ(invoke({}).code, kInputError);

    const fs::path bad = fs::temp_directory_path() / "crjet_bad.surf";
    std::ofstream(bad) << "vars: z x t\norder: 8\nQ: t + 2*q\n";
    const Invocation r = invoke({"analyze", bad.string()});
    EXPECT_EQ(r.code, kInputError);
    EXPECT_NE(r.report()["results"][0]["error"].get<std::string>().find(":3:10:"), std::string::npos);
    fs::remove(bad);
}

TEST(Cli, Sha256) {
    EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
