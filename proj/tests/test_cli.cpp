// End-to-end checks of the command-line interface: schema stability, exit
// codes, and the JSON config round-trip. Spawns the real binary.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

#ifndef EXPCODE_CLI_PATH
#error "EXPCODE_CLI_PATH must point at the CLI binary"
#endif

namespace {

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(EXPCODE_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    std::array<char, 4096> buf;
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) output.append(buf.data(), got);
    const int status = pclose(pipe);
    return RunResult{WIFEXITED(status) ? WEXITSTATUS(status) : -1, output};
}

std::vector<std::string> lines_of(const std::string& s) {
    std::vector<std::string> lines;
    std::istringstream in(s);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

}  // namespace

TEST_CASE("expand table") {
    const RunResult r = run("expand --lambda 1 --lo -10 --hi 10");
    CHECK(r.exit_code == 0);
    const std::vector<std::string> lines = lines_of(r.output);
    REQUIRE(lines.size() == 22);
    CHECK(lines[0] == "level,b_l");
    CHECK(lines[11] == "0,0.26894142137");  // 12 significant digits

    const RunResult single = run("expand --lambda 1 --lo 0 --hi 0");
    CHECK(single.exit_code == 0);
    CHECK(lines_of(single.output).size() == 2);
}

TEST_CASE("expand with sampling appends empirical columns") {
    const RunResult r = run("expand --lambda 1 --lo -5 --hi 5 --n 5000 --seed 3");
    CHECK(r.exit_code == 0);
    const std::vector<std::string> lines = lines_of(r.output);
    CHECK(lines[0] == "level,b_l,empirical,z_score");
    CHECK(lines.size() == 12);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run("expand --lo 3 --hi 1").exit_code == 2);
    CHECK(run("expand --lambda -1").exit_code == 2);
    CHECK(run("expand --no-such-flag").exit_code == 2);
    CHECK(run("").exit_code == 2);
    CHECK(run("aen-sweep").exit_code == 2);  // no grid given
    CHECK(run("rd-sweep --schemes one-sided").exit_code == 2);
}

TEST_CASE("aen-sweep schema") {
    const RunResult r = run("aen-sweep --snr-db 0,10 --schemes decode-carries");
    CHECK(r.exit_code == 0);
    const std::vector<std::string> lines = lines_of(r.output);
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "snr_db,scheme,L1,L2,rate,capacity,gap");
    CHECK(lines[1].find("0,decode-carries,7,7,") == 0);
    CHECK(lines[1].substr(lines[1].size() - 2) != ",,");
    // capacity column is exactly 1 at 0 dB
    std::istringstream row(lines[1]);
    std::string field;
    for (int i = 0; i < 6; ++i) std::getline(row, field, ',');
    CHECK(field == "1");
}

TEST_CASE("aen-sweep explicit input/noise means") {
    const RunResult r = run("aen-sweep --ex 32768 --ez 1 --schemes decode-carries --lo -5 --hi 20");
    CHECK(r.exit_code == 0);
    const std::vector<std::string> lines = lines_of(r.output);
    REQUIRE(lines.size() == 2);
    CHECK(lines[1].find(",decode-carries,5,20,") != std::string::npos);
}

TEST_CASE("rd-sweep schema and edge rows") {
    const RunResult r = run("rd-sweep --lambda 1 --distortions 1 --schemes shannon");
    CHECK(r.exit_code == 0);
    const std::vector<std::string> lines = lines_of(r.output);
    CHECK(lines[0] == "D_target,scheme,rate,distortion,shannon,gap");
    CHECK(lines[1] == "1,shannon,0,1,0,0");

    const RunResult q = run("rd-sweep --schemes quantizer-nonlinear --k 1");
    CHECK(lines_of(q.output)[1] == "1,quantizer-nonlinear,0,1,0,0");
}

TEST_CASE("simulate emits stats and a ks row") {
    const RunResult r = run("simulate --kind expansion --n 5000 --seed 4242");
    CHECK(r.exit_code == 0);
    const std::vector<std::string> lines = lines_of(r.output);
    CHECK(lines[0] == "stat,level,empirical,analytic,z_score");
    CHECK(lines.back().find("ks,,") == 0);

    const RunResult c = run("simulate --kind carries --n 2000 --seed 7");
    CHECK(c.exit_code == 0);
    bool saw_carry = false, saw_eff = false;
    for (const std::string& line : lines_of(c.output)) {
        if (line.find("carry,") == 0) saw_carry = true;
        if (line.find("effective_noise,") == 0) saw_eff = true;
    }
    CHECK(saw_carry);
    CHECK(saw_eff);
}

TEST_CASE("verify passes and the fault hook fails") {
    const RunResult ok = run("verify");
    CHECK(ok.exit_code == 0);
    CHECK(lines_of(ok.output).back() == "PASS");
    CHECK(run("verify --inject-fault").exit_code == 1);
}

TEST_CASE("json output and config round-trip") {
    const RunResult r = run("aen-sweep --snr-db 5,15 --schemes qary --q 2,4 --format json");
    CHECK(r.exit_code == 0);
    const nlohmann::json doc = nlohmann::json::parse(r.output);
    REQUIRE(doc.contains("config"));
    REQUIRE(doc.contains("rows"));
    REQUIRE(doc.contains("version"));
    CHECK(doc["rows"].size() == 4);

    const std::string cfg_path = "/tmp/expcode_cli_roundtrip.json";
    {
        std::ofstream f(cfg_path);
        f << doc["config"].dump();
    }
    const RunResult again = run("aen-sweep --config " + cfg_path + " --format json");
    CHECK(again.exit_code == 0);
    const nlohmann::json doc2 = nlohmann::json::parse(again.output);
    CHECK(doc2["rows"] == doc["rows"]);
    std::remove(cfg_path.c_str());
}

TEST_CASE("output to file") {
    const std::string path = "/tmp/expcode_cli_out.csv";
    const RunResult r = run("expand --lo 0 --hi 2 --out " + path);
    CHECK(r.exit_code == 0);
    CHECK(r.output.empty());
    std::ifstream f(path);
    REQUIRE(f.good());
    std::string header;
    std::getline(f, header);
    CHECK(header == "level,b_l");
    std::remove(path.c_str());
}
