#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "test_util.hpp"
#include "widthproof/atp.hpp"
#include "widthproof/combinator.hpp"

using namespace widthproof;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
};

std::string cli_path() {
    const char* env = std::getenv("WIDTHPROOF_CLI");
    return env ? env : "";
}

CliResult run_cli(const std::string& args) {
    CliResult result;
    std::string command = cli_path() + " " + args + " 2>/dev/null";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buffer;
    std::size_t got;
    while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
        result.out.append(buffer.data(), got);
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string write_file(const std::string& name, const std::string& content) {
    std::filesystem::path path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path);
    out << content;
    return path.string();
}

}  // namespace

TEST_CASE("command line mirrors the library" * doctest::skip(cli_path().empty())) {
    std::string c4 = write_file("wp_cli_c4.term", to_string(testutil::c4_term()));
    std::string k3 = write_file("wp_cli_k3.term", to_string(testutil::k3_term()));
    std::string bad = write_file("wp_cli_bad.term", "(ForgetVertex 1 (Leaf))");

    SUBCASE("validate") {
        CliResult ok = run_cli("validate --width 2 --term " + c4);
        CHECK(ok.exit_code == 0);
        CHECK(ok.out.find("valid at width 2") != std::string::npos);
        CHECK(ok.out.find("width: 2") != std::string::npos);
        CHECK(run_cli("validate --width 1 --term " + c4).exit_code == 1);
        CHECK(run_cli("validate --width 2 --term /no/such/file").exit_code == 2);
    }

    SUBCASE("extract-graph agrees with the library") {
        CliResult text = run_cli("extract-graph --width 2 --term " + c4);
        CHECK(text.exit_code == 0);
        CHECK(text.out.find("vertices: 1 2 3 5") != std::string::npos);
        CHECK(text.out.find("top map: 3->3") != std::string::npos);
        CliResult dot = run_cli("extract-graph --width 2 --term " + c4 + " --format dot");
        CHECK(dot.out.find("--") != std::string::npos);
    }

    SUBCASE("check verdicts and exit codes") {
        CHECK(run_cli("check --width 2 --term " + c4 + " Simple").exit_code == 0);
        CHECK(run_cli("check --width 2 --term " + k3 + " 'Colorable(3)'").exit_code == 0);
        CHECK(run_cli("check --width 2 --term " + k3 + " 'Colorable(2)'").exit_code == 1);
        {
            std::string command = cli_path() + " check --width 2 --term " + bad +
                                  " 'Simple' 2>&1";
            FILE* pipe = popen(command.c_str(), "r");
            REQUIRE(pipe != nullptr);
            std::array<char, 4096> chunk;
            std::string all;
            std::size_t n;
            while ((n = fread(chunk.data(), 1, chunk.size(), pipe)) > 0)
                all.append(chunk.data(), n);
            CHECK(WEXITSTATUS(pclose(pipe)) == 2);
            // the error names the failing instruction
            CHECK(all.find("ForgetVertex 1") != std::string::npos);
        }
        CliResult inv = run_cli("check --width 2 --term " + k3 + " 'inv:MinVertexCover <= 1'");
        CHECK(inv.exit_code == 1);
        CHECK(inv.out.find("inv=2") != std::string::npos);
    }

    SUBCASE("prove matches the library verdicts") {
        CliResult holds = run_cli("prove --width 1 'Colorable(2)'");
        CHECK(holds.exit_code == 0);
        CHECK(holds.out.find("HOLDS at width 1") != std::string::npos);

        CliResult refuted = run_cli("prove --width 1 'Conn'");
        CHECK(refuted.exit_code == 1);
        CHECK(refuted.out.find("(IntroVertex 2 (IntroVertex 1 (Leaf)))") !=
              std::string::npos);
        CHECK(refuted.out.find("graph {") != std::string::npos);  // DOT form too

        CHECK(run_cli("prove --width 1 --max-pairs 2 'inv:MinVertexCover <= 1'").exit_code ==
              3);
        CliResult bounded = run_cli("prove --width 1 --max-size 8 'inv:MinVertexCover <= 1'");
        CHECK(bounded.exit_code == 0);
        CHECK(bounded.out.find("size <= 8") != std::string::npos);
    }

    SUBCASE("prove writes verifiable refutation dumps") {
        std::string dump =
            (std::filesystem::temp_directory_path() / "wp_cli_ref.json").string();
        CliResult refuted =
            run_cli("prove --width 1 'Conn' --refutation-out " + dump + " --format json");
        CHECK(refuted.exit_code == 1);
        std::ifstream in(dump);
        REQUIRE(in.good());
        std::string contents((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
        CHECK(contents.find("\"witness_set\"") != std::string::npos);
        CHECK(contents.find("\"child_indices\"") != std::string::npos);
    }

    SUBCASE("enumerate and measure agree with the library") {
        CliResult count = run_cli("enumerate --width 1 --max-size 6 --count-only");
        CHECK(count.out ==
              std::to_string(enumerate_accepted_terms(ActiveSetAutomaton(1), 6).size()) +
                  "\n");
        ComplexityReport r = measure_complexity(*cores::simple(), 2, 6);
        CliResult measured = run_cli("measure --width 2 --max-size 6 Simple");
        CHECK(measured.out.find("beta=" + std::to_string(r.beta)) != std::string::npos);
        CHECK(measured.out.find("mu=" + std::to_string(r.mu)) != std::string::npos);
        CHECK(measured.out.find("inequalities=ok") != std::string::npos);
    }

    SUBCASE("convert produces the expected instruction sequence") {
        std::string graph = write_file("wp_cli_k2.json", to_json(testutil::path_graph(2)));
        std::string decomposition = write_file(
            "wp_cli_k2_dec.json",
            R"({"root":3,"nodes":[
                 {"id":0,"type":"Leaf","bag":[],"children":[]},
                 {"id":1,"type":"IntroVertex","bag":[1],"children":[0],"vertex":1},
                 {"id":2,"type":"IntroVertex","bag":[1,2],"children":[1],"vertex":2},
                 {"id":3,"type":"IntroEdge","bag":[1,2],"children":[2],"edge":1}]})");
        CliResult converted =
            run_cli("convert --width 1 --graph " + graph + " --decomposition " + decomposition);
        CHECK(converted.exit_code == 0);
        CHECK(converted.out ==
              "(IntroEdge 1 2 (IntroVertex 2 (IntroVertex 1 (Leaf))))\n");
    }

    SUBCASE("byte budget comes from the environment") {
        std::string quoted = "env WIDTHPROOF_BUDGET_BYTES=64 " + cli_path() +
                             " prove --width 1 'inv:MinVertexCover <= 1' 2>/dev/null";
        FILE* pipe = popen(quoted.c_str(), "r");
        REQUIRE(pipe != nullptr);
        std::array<char, 4096> buffer;
        std::string out;
        std::size_t got;
        while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
            out.append(buffer.data(), got);
        int status = pclose(pipe);
        CHECK(WEXITSTATUS(status) == 3);
        CHECK(out.find("BUDGET EXHAUSTED") != std::string::npos);
    }
}
