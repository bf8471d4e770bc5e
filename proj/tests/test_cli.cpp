#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

// End-to-end runs of the installed binary: exit codes, certificate output,
// text/JSON agreement.

namespace {

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run(const std::string& args) {
    const std::string command = std::string(COGRAPH_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    char buffer[4096];
    while (std::size_t got = fread(buffer, 1, sizeof buffer, pipe)) output.append(buffer, got);
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), output};
}

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = "/tmp/cograph_cli_test_" + name;
    std::ofstream out(path);
    out << content;
    return path;
}

}  // namespace

TEST_CASE("solve: decision and minimum modes with exit codes") {
    const auto p4 = write_temp("p4.txt", "4 3\n0 1\n1 2\n2 3\n");

    const auto yes = run("solve " + p4 + " --k 1");
    CHECK(yes.exit_code == 0);
    CHECK(yes.output.find("yes") != std::string::npos);

    const auto no = run("solve " + p4 + " --k 0");
    CHECK(no.exit_code == 1);

    const auto min = run("solve " + p4 + " --mode editing");
    CHECK(min.exit_code == 0);
    CHECK(min.output.find("size 1") != std::string::npos);
}

TEST_CASE("solve: malformed file gives exit 2 and a line diagnostic") {
    const auto bad = write_temp("bad.txt", "4 2\n0 1\n");
    const auto r = run("solve " + bad);
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("line") != std::string::npos);
}

TEST_CASE("verify accepts valid certificates and rejects invalid ones") {
    const auto p4 = write_temp("p4v.txt", "4 3\n0 1\n1 2\n2 3\n");
    const auto good = write_temp("cert_good.txt", "1 2\n");
    const auto empty = write_temp("cert_empty.txt", "");

    CHECK(run("verify " + p4 + " " + good).exit_code == 0);
    CHECK(run("verify " + p4 + " " + empty).exit_code == 1);

    // pan plus its single-edge deletion set
    const auto pan = write_temp("pan.txt", "5 5\n0 1\n0 3\n0 4\n1 2\n2 3\n");
    const auto pan_cert = write_temp("cert_pan.txt", "0 4\n");
    CHECK(run("verify " + pan + " " + pan_cert).exit_code == 0);

    // deletion certificate naming a non-edge is an input error
    const auto nonedge = write_temp("cert_nonedge.txt", "0 2\n");
    CHECK(run("verify " + p4 + " " + nonedge).exit_code == 2);
}

TEST_CASE("solve text and JSON report the same optimum") {
    const auto c5 = write_temp("c5.txt", "5 5\n0 1\n0 4\n1 2\n2 3\n3 4\n");
    const auto text = run("solve " + c5 + " --mode editing");
    CHECK(text.exit_code == 0);
    CHECK(text.output.find("size 2") != std::string::npos);

    const auto json = run("solve " + c5 + " --mode editing --json");
    CHECK(json.exit_code == 0);
    CHECK(json.output.find("\"k_used\": 2") != std::string::npos);
    CHECK(json.output.find("\"decision\": \"yes\"") != std::string::npos);
}

TEST_CASE("recognize prints the structural summary") {
    const auto k5 = write_temp("k5.txt", "5 10\n0 1\n0 2\n0 3\n0 4\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n");
    const auto r = run("recognize " + k5);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("cograph: yes") != std::string::npos);

    const auto p5 = write_temp("p5.txt", "5 4\n0 1\n1 2\n2 3\n3 4\n");
    const auto rp = run("recognize " + p5);
    CHECK(rp.output.find("cograph: no") != std::string::npos);
    CHECK(rp.output.find("P4-sparse: no") != std::string::npos);

    // a thin spider with three legs
    const auto spider = write_temp(
        "spider.txt", "6 6\n0 3\n1 4\n2 5\n3 4\n3 5\n4 5\n");
    const auto rs = run("recognize " + spider);
    CHECK(rs.output.find("spider: thin") != std::string::npos);
}

TEST_CASE("analyze gates and rejects unknown rules") {
    const auto usage = run("analyze --rule b9");
    CHECK(usage.exit_code == 2);

    const auto b3 = run("analyze --rule b3 --mode deletion --threads 0");
    CHECK(b3.exit_code == 0);
    CHECK(b3.output.find("B3") != std::string::npos);
}

TEST_CASE("gen writes a parseable graph and respects the seed") {
    const auto out1 = run("gen --n 8 --p 0.5 --seed 9");
    const auto out2 = run("gen --n 8 --p 0.5 --seed 9");
    CHECK(out1.exit_code == 0);
    CHECK(out1.output == out2.output);

    const auto path = write_temp("gen.txt", out1.output);
    CHECK(run("recognize " + path).exit_code == 0);
}

TEST_CASE("exception catalog override is honored") {
    // an override whose b2 list carries an unrelated shape changes nothing
    // about validity but must load cleanly
    const auto exc = write_temp("exc.txt",
                                "b2-exception wing-pair: ab bc cd pa pc qa qc\n"
                                "b2-exception split-pendants: ab bc cd pb qa\n"
                                "b4-exception tail: ab bc cd pb pq\n");
    const auto p6 = write_temp("p6.txt", "6 5\n0 1\n1 2\n2 3\n3 4\n4 5\n");
    CHECK(run("solve " + p6 + " --exceptions " + exc).exit_code == 0);

    const auto broken = write_temp("exc_bad.txt", "b2-exception x: ab\n");
    CHECK(run("solve " + p6 + " --exceptions " + broken).exit_code == 2);
}
