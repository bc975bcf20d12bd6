#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "pencil/cache.hpp"
#include "pencil/config.hpp"
#include "pencil/report.hpp"
#include "support.hpp"

using namespace pencil;

TEST_CASE("config parser reads a full run description") {
    const std::string text = R"(
# smooth pair with a perturbed companion
[problem]
q.sin = [[3, 1.0]]
p.sin = [[1, 0.2]]
h = 0.0
H = 0.0
case = robin
N = 1

[problem.bar]
q.sin = [[3, 1.0]]
q.cos = [[1, 0.2]]
p.sin = [[1, 0.2]]
case = robin

[run]
n_min = 2
n_max = 32       ; inline comment
grid_size = 256
window = 8
mode = corrected
output_dir = out/smooth
cache_dir = cachedir
)";
    RunConfig cfg = parse_config(text);
    CHECK(cfg.problem.q == RealFunction::sine(3, 1.0));
    CHECK(cfg.problem.p == RealFunction::sine(1, 0.2));
    CHECK(cfg.problem.bc == BoundaryCase::RobinInit);
    CHECK(cfg.problem.max_derivative_order == 1);
    REQUIRE(cfg.problem_bar.has_value());
    RealFunction qbar = RealFunction::sine(3, 1.0);
    qbar.add_cos(1, 0.2);
    CHECK(cfg.problem_bar->q == qbar);
    CHECK(cfg.n_min == 2);
    CHECK(cfg.n_max == 32);
    CHECK(cfg.grid_size == 256);
    CHECK(cfg.window == 8);
    CHECK(cfg.mode == "corrected");
    CHECK(cfg.output_dir == "out/smooth");
    CHECK(cfg.cache_dir == "cachedir");
}

TEST_CASE("config parser rejects malformed input with line context") {
    CHECK_THROWS_AS(parse_config("[run]\nn_max = 8\n"), ConfigError);  // no [problem]
    CHECK_THROWS_AS(parse_config("[problem]\nfrequency = 3\n"), ConfigError);  // unknown key
    CHECK_THROWS_AS(parse_config("[problem]\nh = abc\n"), ConfigError);  // bad number
    CHECK_THROWS_AS(parse_config("[problem]\ncase = mixed\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[problem]\nh = 0\n[run]\nn_min = 9\nn_max = 4\n"),
                    ConfigError);  // empty range
    // bar must share the boundary family
    CHECK_THROWS_AS(
        parse_config("[problem]\ncase = robin\n[problem.bar]\ncase = dirichlet\n"),
        ConfigError);
    try {
        parse_config("[problem]\nh = 0.1\nbogus = 1\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("spectrum cache round trips and truncates") {
    const std::string dir = testsupport::cache_dir() + "/unit_spec";
    std::filesystem::remove_all(dir);
    Spectrum sp;
    for (int n = 1; n <= 6; ++n)
        sp.entries.push_back({n, n + 0.125, 1e-12 * n, n});
    save_spectrum(dir, "cafe0123", sp);

    auto full = load_spectrum(dir, "cafe0123", 6);
    REQUIRE(full.has_value());
    for (int n = 1; n <= 6; ++n) {
        CHECK(full->lambda(n) == sp.lambda(n));  // %.17g round trip is exact
        CHECK(full->at(n).residual == sp.at(n).residual);
    }
    auto part = load_spectrum(dir, "cafe0123", 3);
    REQUIRE(part.has_value());
    CHECK(part->n_max() == 3);
    CHECK(!load_spectrum(dir, "cafe0123", 7).has_value());  // deeper than stored
    CHECK(!load_spectrum(dir, "00000000", 3).has_value());  // unknown digest
}

TEST_CASE("nodal cache round trips through files") {
    const std::string dir = testsupport::cache_dir() + "/unit_nodes";
    std::filesystem::remove_all(dir);
    NodalSet s = NodalSet::trivial_case1(5);
    save_nodes(dir, "beef4567", s, 5);
    auto back = load_nodes(dir, "beef4567", 5);
    REQUIRE(back.has_value());
    CHECK(back->levels() == s.levels());
    for (int n : s.levels()) CHECK(back->nodes(n) == s.nodes(n));
    auto shallow = load_nodes(dir, "beef4567", 3);
    REQUIRE(shallow.has_value());
    CHECK(shallow->levels().back() == 3);
}

TEST_CASE("cached solves hit the disk the second time") {
    const std::string dir = testsupport::cache_dir() + "/unit_roundtrip";
    std::filesystem::remove_all(dir);
    PencilProblem prob = testsupport::constant_case();
    Spectrum first = cached_spectrum(prob, 5, dir);
    Spectrum second = cached_spectrum(prob, 5, dir);  // served from disk
    for (int n = 1; n <= 5; ++n) CHECK(first.lambda(n) == second.lambda(n));

    Spectrum sp_out;
    NodalSet nodes = cached_nodal_set(prob, 5, dir, 1, &sp_out);
    NodalSet again = cached_nodal_set(prob, 5, dir);
    CHECK(nodes.levels() == again.levels());
    for (int n : nodes.levels()) CHECK(nodes.nodes(n) == again.nodes(n));
    CHECK(sp_out.n_max() == 5);
    CHECK(nodes.case_tag == CaseTag::CaseI);
    CHECK(nodes.source == NodalSource::solver);
}

TEST_CASE("csv rendering is deterministic and exact") {
    Table t;
    t.columns = {"n", "value"};
    t.rows = {{1.0, 0.1}, {2.0, 1.0 / 3.0}};
    const std::string body = render_csv(t);
    CHECK(body == render_csv(t));
    CHECK(body.find("n,value\n") == 0);
    CHECK(body.find("0.33333333333333331") != std::string::npos);  // %.17g of 1/3

    Table bad = t;
    bad.rows.push_back({1.0});
    CHECK_THROWS_AS(render_csv(bad), std::invalid_argument);
}

TEST_CASE("text files are written atomically with parents created") {
    const std::string dir = testsupport::cache_dir() + "/unit_report/a/b";
    std::filesystem::remove_all(testsupport::cache_dir() + "/unit_report");
    const std::string path = dir + "/table.csv";
    write_text_file(path, "x\n1\n");
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    CHECK(line == "x");
    // no stray temporaries left behind
    int files = 0;
    for (auto& e : std::filesystem::directory_iterator(dir)) {
        (void)e;
        ++files;
    }
    CHECK(files == 1);
}
