#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "mdhits/dataio.hpp"
#include "mdhits/solver.hpp"

using namespace mdhits;
using namespace mdhits::testing;

namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("mdhits_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int& counter() {
        static int c = 0;
        return c;
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("multiplex line expands to an intra-layer edge") {
    std::istringstream in("5 7 3 2.5\n");
    ParsedEdgeList parsed = parse(in, {.tag = EdgeFormat::multiplex});
    REQUIRE(parsed.records.size() == 1);
    CHECK(parsed.records[0].index == std::vector<Index>{4, 6, 2, 2, 0});
    CHECK(parsed.records[0].weight == 2.5);
    CHECK(parsed.shape == TensorShape({7, 7, 3, 3, 1}));
}

TEST_CASE("coo5 line parses in file order") {
    std::istringstream in("1,2,2,1,1,1.0\n");
    ParsedEdgeList parsed = parse(in, {.tag = EdgeFormat::coo5});
    REQUIRE(parsed.records.size() == 1);
    CHECK(parsed.records[0].index == std::vector<Index>{0, 1, 1, 0, 0});
    CHECK(parsed.records[0].weight == 1.0);
}

TEST_CASE("citation years are remapped contiguously in order") {
    std::istringstream in(
        "1,2,1,2,1998\n"
        "2,3,2,2,2001\n"
        "3,1,1,1,2001\n");
    ParsedEdgeList parsed = parse(in, {.tag = EdgeFormat::citation});
    REQUIRE(parsed.records.size() == 3);
    CHECK(parsed.shape.size(4) == 2);
    CHECK(parsed.records[0].index[4] == 0);  // 1998
    CHECK(parsed.records[1].index[4] == 1);  // 2001
    CHECK(parsed.records[2].index[4] == 1);
    CHECK(parsed.time_labels == std::vector<long long>{1998, 2001});
    for (const auto& r : parsed.records) CHECK(r.weight == 1.0);
}

TEST_CASE("parse failures carry line numbers") {
    SUBCASE("bad column count") {
        std::istringstream in("1,2,1,1,1,1.0\n1,2,3\n");
        CHECK_THROWS_WITH_AS((void)parse(in, {.tag = EdgeFormat::coo5}),
                             doctest::Contains("line 2"), ParseError);
    }
    SUBCASE("non-numeric field") {
        std::istringstream in("1,x,1\n");
        CHECK_THROWS_WITH_AS((void)parse(in, {.tag = EdgeFormat::coo2}),
                             doctest::Contains("line 1"), ParseError);
    }
    SUBCASE("nonpositive weight") {
        std::istringstream in("1,2,0.0\n");
        CHECK_THROWS_WITH_AS((void)parse(in, {.tag = EdgeFormat::coo2}),
                             doctest::Contains("nonpositive weight"), ParseError);
    }
    SUBCASE("index below base") {
        std::istringstream in("0,2,1.0\n");
        CHECK_THROWS_AS((void)parse(in, {.tag = EdgeFormat::coo2}), ParseError);
    }
}

TEST_CASE("header and custom delimiter") {
    std::istringstream in("src;dst;w\n1;2;0.5\n\n2;1;0.5\n");
    EdgeRecordFormat fmt{.tag = EdgeFormat::coo2, .delimiter = ';', .header = true};
    ParsedEdgeList parsed = parse(in, fmt);
    CHECK(parsed.records.size() == 2);  // blank line skipped
    CHECK(parsed.shape == TensorShape({2, 2}));
}

TEST_CASE("zero-based input file") {
    std::istringstream in("0,1,1.0\n");
    ParsedEdgeList parsed = parse(in, {.tag = EdgeFormat::coo2, .one_based = false});
    CHECK(parsed.records[0].index == std::vector<Index>{0, 1});
}

TEST_CASE("shape can be overridden") {
    std::istringstream in("1,2,1.0\n");
    ParsedEdgeList parsed = parse(in, {.tag = EdgeFormat::coo2}, TensorShape({10, 10}));
    CHECK(parsed.shape == TensorShape({10, 10}));
}

TEST_CASE("synthetic recipe shapes") {
    SynthSpec spec25{.n_v = 25, .seed = 1};
    CHECK(spec25.shape() == TensorShape({25, 25, 25, 25, 3}));  // 25^(1/3) ~ 2.92 -> 3
    CHECK(spec25.nnz() == 625);
    SynthSpec spec1000{.n_v = 1000, .seed = 1};
    CHECK(spec1000.shape() == TensorShape({1000, 1000, 1000, 1000, 10}));
    CHECK(spec1000.nnz() == 1000000);

    SparseTensor t = generate_random(spec25);
    CHECK(t.nnz() == 625);
    CHECK(t.shape() == spec25.shape());
    for (Index p = 0; p < t.nnz(); ++p) CHECK(t.entry_weight(p) == 1.0);
}

TEST_CASE("generate_random is deterministic per seed") {
    SynthSpec spec{.n_v = 10, .seed = 42};
    CHECK(generate_random(spec) == generate_random(spec));
    SynthSpec other{.n_v = 10, .seed = 43};
    CHECK_FALSE(generate_random(spec) == generate_random(other));
}

TEST_CASE("generated marginals match the balls-in-bins prediction") {
    // Expected inactive counts per mode under nnz independent uniform draws
    // (the without-replacement correction is negligible at this density).
    SynthSpec base{.n_v = 25, .seed = 0};
    const Index nnz = base.nnz();
    double expected = 0.0;
    double variance = 0.0;
    const int runs = 50;
    for (Index s = 0; s < 5; ++s) {
        const double n = static_cast<double>(base.shape().size(s));
        const double p = std::pow(1.0 - 1.0 / n, static_cast<double>(nnz));
        expected += n * p * runs;
        variance += n * p * (1.0 - p) * runs;
    }
    double observed = 0.0;
    for (int run = 0; run < runs; ++run) {
        SynthSpec spec{.n_v = 25, .seed = static_cast<std::uint64_t>(run)};
        SparseTensor t = generate_random(spec);
        for (Index s = 0; s < 5; ++s) {
            observed += static_cast<double>(t.mode_support(s).inactive.size());
        }
    }
    CHECK(std::abs(observed - expected) <= 3.0 * std::sqrt(variance) + 1e-9);
}

TEST_CASE("edge list round trip is the identity on canonical tensors") {
    SparseTensor t = multilayer_fixture();
    std::stringstream buffer;
    write_edge_list(t, buffer);
    ParsedEdgeList parsed = parse(buffer, {.tag = EdgeFormat::coo5});
    CHECK(SparseTensor::from_edge_list(parsed.records, parsed.shape) == t);

    SparseTensor t2 = random_tensor(TensorShape({6, 6}), 9, 5150);
    std::stringstream buffer2;
    write_edge_list(t2, buffer2);
    ParsedEdgeList parsed2 = parse(buffer2, {.tag = EdgeFormat::coo2});
    CHECK(SparseTensor::from_edge_list(parsed2.records, parsed2.shape) == t2);
}

TEST_CASE("solution json round trip") {
    TempDir dir;
    ExponentConfig cfg = ExponentConfig::from_alpha({1.0 / 3, 1.0 / 3});
    Solution s = solve(curse_graph(), cfg);
    REQUIRE(s.converged);

    const std::string path = dir.file("solution.json");
    write_solution(s, path, OutputFormat::json);
    Solution back = read_solution(path);

    CHECK(back.c.slices == s.c.slices);  // bitwise round trip
    CHECK(back.lambda == s.lambda);
    CHECK(back.sigma == s.sigma);
    CHECK(back.iterations == s.iterations);
    CHECK(back.converged == s.converged);
    CHECK(back.alpha == s.alpha);
    CHECK(back.rho == s.rho);
    CHECK(back.beta == s.beta);
    CHECK(back.trace.size() == s.trace.size());
    CHECK(back.trace.size() == static_cast<std::size_t>(s.iterations));

    // exact zeros serialize as zero, not as a denormal artifact
    CHECK(s.c.slices[0][5] == 0.0);
    const std::string text = slurp(path);
    CHECK(text.find("e-3") == std::string::npos);
}

TEST_CASE("solution csv export writes one file per vector") {
    TempDir dir;
    ExponentConfig cfg = ExponentConfig::from_alpha({0.2, 0.2, 0.2, 0.2, 0.2});
    Solution s = solve(multilayer_fixture(), cfg);
    REQUIRE(s.converged);

    write_solution(s, dir.file("scores.csv"), OutputFormat::csv);
    for (const char* name : {"hub", "authority", "broadcast", "receive", "time"}) {
        const std::string path = dir.file(std::string("scores_") + name + ".csv");
        REQUIRE(fs::exists(path));
        std::string text = slurp(path);
        CHECK(text.rfind("id,score\n", 0) == 0);
    }
    // csv scores round-trip through 17 significant digits
    std::ifstream in(dir.file("scores_hub.csv"));
    std::string line;
    std::getline(in, line);  // header
    std::size_t row = 0;
    while (std::getline(in, line)) {
        const auto comma = line.find(',');
        CHECK(std::stoull(line.substr(0, comma)) == row + 1);
        CHECK(std::stod(line.substr(comma + 1)) == s.c.slices[0][row]);
        ++row;
    }
    CHECK(row == 4);
}

TEST_CASE("io errors carry the path") {
    CHECK_THROWS_AS((void)parse_file("/nonexistent/nope.txt", {.tag = EdgeFormat::coo5}), IoError);
    CHECK_THROWS_AS((void)read_solution("/nonexistent/nope.json"), IoError);
}
