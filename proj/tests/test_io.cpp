#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "framekit/cli.hpp"
#include "framekit/io.hpp"
#include "framekit/sampling.hpp"

using namespace framekit;

namespace {

struct CliRun {
    int code = 0;
    std::string out;
    std::string err;
};

CliRun cli(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    CliRun r;
    r.code = run_command(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("/tmp/framekit_io_test_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
};

// strips the one timing column so reruns compare byte-for-byte
std::string drop_runtime_column(const std::string& text) {
    std::istringstream in(text);
    std::ostringstream out;
    std::string line;
    bool in_cells = false;
    while (std::getline(in, line)) {
        if (line.rfind("## ", 0) == 0) in_cells = line == "## cells";
        if (in_cells && line.find(',') != std::string::npos) {
            const std::size_t cut = line.rfind(',');
            line = line.substr(0, cut);
        }
        out << line << '\n';
    }
    return out.str();
}

} // namespace

TEST_CASE("doubles survive a text round trip unchanged") {
    const double values[] = {0.0,      1.0,        -1.0,       0.1,
                             1.0 / 3.0, 6.34165484296608e-19, 1e308, 5e-324,
                             -2.5e-7,  3.141592653589793};
    for (double v : values) {
        const std::string s = format_double(v);
        CHECK(parse_double(s) == v);
    }
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(-3.0) == "-3");
    CHECK_THROWS_AS(parse_double("not-a-number"), std::runtime_error);
    CHECK_THROWS_AS(parse_double(""), std::runtime_error);
    CHECK_THROWS_AS(parse_double("1.0trailing"), std::runtime_error);
}

TEST_CASE("real frames round trip bit-exactly and stay marked real") {
    Frame f(2, 3);
    f.synthesis.at(0, 0) = 1.0;
    f.synthesis.at(1, 1) = 1.0 / 3.0;
    f.synthesis.at(0, 2) = -0.25;
    f.synthesis.at(1, 2) = 5e-324;

    const std::string text = serialize_frame(f);
    CHECK(text.find("framekit-frame v1 3 2 real") == 0);
    CHECK(text.find("label") == std::string::npos); // default labels stay implicit

    const Frame back = parse_frame(text);
    REQUIRE(back.dim == 2);
    REQUIRE(back.size() == 3);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(back.synthesis.at(i, j).real() == f.synthesis.at(i, j).real());
            CHECK(back.synthesis.at(i, j).imag() == 0.0);
        }
    CHECK(back.labels == std::vector<long long>{0, 1, 2});
}

TEST_CASE("complex frames with custom labels round trip bit-exactly") {
    SplitMix64 rng(5);
    Frame f = random_gaussian_frame(3, 5, rng);
    f.labels = {7, 0, 42, 3, 9};

    const std::string text = serialize_frame(f);
    CHECK(text.find("framekit-frame v1 5 3 complex") == 0);
    CHECK(text.find("label 7") != std::string::npos);

    const Frame back = parse_frame(text);
    REQUIRE(back.size() == 5);
    CHECK(back.labels == f.labels);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 5; ++j) {
            CHECK(back.synthesis.at(i, j).real() == f.synthesis.at(i, j).real());
            CHECK(back.synthesis.at(i, j).imag() == f.synthesis.at(i, j).imag());
        }
}

TEST_CASE("frame parse errors carry the offending line number") {
    try {
        parse_frame("framekit-frame v2 1 1 real\n1\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 1);
    }

    try {
        parse_frame("framekit-frame v1 2 2 real\n1 0\n1 oops\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
    }

    try {
        parse_frame("framekit-frame v1 2 2 real\n1 0\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line >= 2);
    }

    CHECK_THROWS_AS(parse_frame(""), ParseError);
    // complex rows need 2N tokens
    CHECK_THROWS_AS(parse_frame("framekit-frame v1 1 2 complex\n1 0 0\n"), ParseError);
}

TEST_CASE("localization maps round trip through text") {
    LocalizationMap m;
    m.group = IndexGroup(2, 4, 3);
    m.targets = {0, 5, 47, 12, 1};

    const std::string text = serialize_map(m);
    CHECK(text.find("framekit-map v1 5 2 4 3") == 0);

    const LocalizationMap back = parse_map(text);
    CHECK(back.group.d == 2);
    CHECK(back.group.L == 4);
    CHECK(back.group.D == 3);
    CHECK(back.targets == m.targets);

    CHECK_THROWS_AS(parse_map("framekit-map v1 1 1 4 1\n99\n"), ParseError);
}

TEST_CASE("reports print metadata then tables deterministically") {
    Report r;
    r.add("tool", "demo");
    r.add("value", 0.25);
    r.add_count("items", 3);
    ReportTable t;
    t.name = "rows";
    t.columns = {"index", "weight"};
    t.rows = {{"0", "0.5"}, {"1", "1"}};
    r.tables.push_back(t);

    const std::string expected =
        "# tool: demo\n# value: 0.25\n# items: 3\n\n## rows\nindex,weight\n0,0.5\n1,1\n";
    CHECK(r.str() == expected);
    CHECK(r.str() == r.str());
}

TEST_CASE("command line rejects bad invocations with exit code 2") {
    CHECK(cli({}).code == 2);
    CHECK(cli({"gen"}).code == 2);                       // missing --kind
    CHECK(cli({"gen", "--kind", "onb"}).code == 2);      // onb needs --dim
    CHECK(cli({"gen", "--kind", "nosuch", "--dim", "3"}).code == 2);
    CHECK(cli({"thin", "--eps", "0.5"}).code == 2);      // no input source
    CHECK(cli({"verify", "nosuch"}).code == 2);
    CHECK(cli({"analyze", "/nonexistent/path"}).code == 2);

    const CliRun help = cli({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("gen") != std::string::npos);
}

TEST_CASE("generation is reproducible and analysis reads it back") {
    const CliRun a = cli({"gen", "--kind", "random-parseval", "--dim", "3", "--count", "7",
                          "--seed", "9"});
    const CliRun b = cli({"gen", "--kind", "random-parseval", "--dim", "3", "--count", "7",
                          "--seed", "9"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out); // same seed, same bytes

    const CliRun c = cli({"gen", "--kind", "random-parseval", "--dim", "3", "--count", "7",
                          "--seed", "10"});
    CHECK(c.out != a.out);

    TempFile file("frame.txt");
    write_text_file(file.path, a.out);
    const CliRun an = cli({"analyze", file.path});
    CHECK(an.code == 0);
    CHECK(an.out.find("# vectors: 7") != std::string::npos);
    CHECK(an.out.find("# dimension: 3") != std::string::npos);
    CHECK(an.out.find("# parseval: yes") != std::string::npos);
}

TEST_CASE("analysis flags non-spanning families with exit code 1") {
    Frame f(3, 2); // two vectors cannot span dimension three
    f.synthesis.at(0, 0) = 1.0;
    f.synthesis.at(1, 1) = 1.0;
    TempFile file("short.txt");
    write_text_file(file.path, serialize_frame(f));

    const CliRun r = cli({"analyze", file.path});
    CHECK(r.code == 1);
    CHECK(r.out.find("# frame: no") != std::string::npos);
}

TEST_CASE("thinning through files matches the in-process pipeline") {
    // orthonormal basis on a 32-cycle with the identity localization map
    const CliRun gen = cli({"gen", "--kind", "onb", "--dim", "32"});
    REQUIRE(gen.code == 0);
    TempFile frame_file("onb.txt");
    TempFile map_file("map.txt");
    TempFile sub_file("sub.txt");
    write_text_file(frame_file.path, gen.out);

    LocalizationMap m;
    m.group = IndexGroup(1, 32, 1);
    m.targets.resize(32);
    for (std::size_t i = 0; i < 32; ++i) m.targets[i] = i;
    write_text_file(map_file.path, serialize_map(m));

    const CliRun r = cli({"thin", frame_file.path, "--reference", frame_file.path, "--map",
                          map_file.path, "--eps", "0.5", "--mode", "strict",
                          "--subframe-output", sub_file.path});
    CHECK(r.code == 0); // certified
    CHECK(r.out.find("# selected: 32") != std::string::npos);
    CHECK(r.out.find("# certified: ") != std::string::npos);

    const Frame sub = parse_frame(read_text_file(sub_file.path));
    CHECK(sub.size() == 32);

    const CliRun again = cli({"thin", frame_file.path, "--reference", frame_file.path, "--map",
                              map_file.path, "--eps", "0.5", "--mode", "strict"});
    CHECK(again.out == r.out);
}

TEST_CASE("verification suites run from the command line") {
    const CliRun ok = cli({"verify", "densities", "--seed", "3"});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("# suite: densities") != std::string::npos);
    CHECK(ok.out.find("# failed: 0") != std::string::npos);
}

TEST_CASE("sweeps tabulate one row per grid cell and stay stable across reruns") {
    const std::vector<std::string> args = {"sweep", "--eps-grid", "0.5,1.0",
                                           "--length-grid", "8", "--mode", "practical"};
    const CliRun a = cli(args);
    const CliRun b = cli(args);
    REQUIRE(a.code == 0);

    int rows = 0;
    std::istringstream in(a.out);
    std::string line;
    bool in_cells = false;
    while (std::getline(in, line)) {
        if (line.rfind("## ", 0) == 0) {
            in_cells = line == "## cells";
            continue;
        }
        if (in_cells && !line.empty() && line.find("eps,") != 0) ++rows;
    }
    CHECK(rows == 2);
    CHECK(drop_runtime_column(a.out) == drop_runtime_column(b.out));
}
