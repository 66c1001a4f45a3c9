#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "fkt/cli/config.hpp"

using namespace fkt;
using namespace fkt::cli;

namespace {

std::size_t error_line(std::string_view text, const std::vector<std::string>& overrides = {}) {
    try {
        parse_config(text, overrides);
    } catch (const ConfigError& e) {
        return e.line();
    }
    FAIL("expected a ConfigError");
    return 0;
}

}  // namespace

TEST_CASE("minimal config gets defaults") {
    const auto cfg = parse_config("[grid]\nn = 256\n[potential]\nharmonics = [[1,1,0]]\n");
    CHECK(cfg.n == 256);
    CHECK(cfg.laplacian == Laplacian::kFourier);
    CHECK(cfg.potential.given);
    REQUIRE(cfg.potential.spec.harmonics.size() == 1);
    CHECK(cfg.potential.spec.harmonics[0].k == 1);
    CHECK(cfg.potential.spec.harmonics[0].a == 1.0);
    CHECK(cfg.potential.spec.harmonics[0].b == 0.0);
    CHECK(cfg.dt == 1e-3);
    CHECK(cfg.seed == 42);
    CHECK(cfg.bins == 64);
    CHECK(!cfg.g.given);
    CHECK(!cfg.f.given);

    const auto empty = parse_config("");
    CHECK(empty.n == 512);
}

TEST_CASE("full grammar") {
    const auto cfg = parse_config(R"(# a comment line
[grid]
n = 128          # trailing comment
laplacian = second-order

[potential]
constant = -0.25
harmonics = [[1, 1.0, 0.0], [2, 0, 0.5]]

[g]
harmonics = [[1,0.3,-0.2]]

[run]
t = 0.25
dt = 0.0005
T = 5
paths = 1000
seed = 7
K = 4
lr = 0.01
iters = 10
bins = 32
method = mc
x = 0.25
init = "point:0.5"
drift = doob
record_paths = 10
out = "some dir/out"
)");
    CHECK(cfg.n == 128);
    CHECK(cfg.laplacian == Laplacian::kSecondOrder);
    CHECK(cfg.potential.spec.constant == -0.25);
    CHECK(cfg.potential.spec.harmonics.size() == 2);
    CHECK(cfg.potential.spec.harmonics[1].b == 0.5);
    CHECK(cfg.g.given);
    CHECK(cfg.t == 0.25);
    CHECK(cfg.dt == 0.0005);
    CHECK(cfg.T == 5.0);
    CHECK(cfg.paths == 1000);
    CHECK(cfg.seed == 7);
    CHECK(cfg.K == 4);
    CHECK(cfg.lr == 0.01);
    CHECK(cfg.iters == 10);
    CHECK(cfg.bins == 32);
    CHECK(cfg.method == "mc");
    CHECK(cfg.x == 0.25);
    CHECK(cfg.init == "point:0.5");
    CHECK(cfg.record_paths == 10);
    CHECK(cfg.out == "some dir/out");
    CHECK(laplacian_name(cfg.laplacian) == "second-order");
}

TEST_CASE("validation errors") {
    CHECK_THROWS_AS(parse_config("[grid]\nn = 255\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[grid]\nn = 2\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[run]\ndt = -1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[run]\npaths = 0\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[run]\nmethod = magic\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[run]\nseed = abc\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[grid]\nlaplacian = spline\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[grid]\nn=16\n[potential]\nharmonics = [[8,1,0]]\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[potential]\nharmonics = [[1,1]]\n"), ConfigError);
}

TEST_CASE("grammar errors carry line numbers") {
    CHECK(error_line("[grid]\nn = 64\n\nn = 128\n") == 4);
    CHECK(error_line("[grid]\nbogus = 1\n") == 2);
    CHECK(error_line("[nowhere]\n") == 1);
    CHECK(error_line("n = 64\n") == 1);
    CHECK(error_line("[grid]\njust text\n") == 2);
    CHECK(error_line("[potential]\nharmonics = [[1,1,0]\n") == 2);

    try {
        parse_config("[run]\nseed = 1\n# gap\nseed = 2\n");
        FAIL("duplicate accepted");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("line 4") != std::string::npos);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("overrides replace file values") {
    const auto cfg = parse_config("[grid]\nn = 64\n[run]\nseed = 3\n", {"run.seed=9", "grid.n=32", "run.out=x"});
    CHECK(cfg.seed == 9);
    CHECK(cfg.n == 32);
    CHECK(cfg.out == "x");
    CHECK_THROWS_AS(parse_config("", {"run.nope=1"}), ConfigError);
    CHECK_THROWS_AS(parse_config("", {"seed=1"}), ConfigError);
}

TEST_CASE("function sources resolve on the grid") {
    const auto grid = make_grid(8);
    const GridFunction fallback(grid, 5.0);
    const auto absent = resolve(FunctionSource{}, grid, fallback);
    CHECK(absent[3] == 5.0);

    const auto cfg = parse_config("[potential]\nconstant = 1\nharmonics = [[1,2,0]]\n");
    const auto v = resolve(cfg.potential, grid, fallback);
    CHECK(v[0] == doctest::Approx(3.0));
    CHECK(v[4] == doctest::Approx(-1.0));

    const auto path = std::filesystem::temp_directory_path() / "fkt_config_v.csv";
    {
        std::ofstream out(path);
        out << "x,V\n";
        for (int i = 0; i < 8; ++i) out << i / 8.0 << "," << i << "\n";
    }
    const auto from_csv = parse_config("[potential]\ncsv = \"" + path.string() + "\"\n");
    CHECK(from_csv.potential.csv.has_value());
    CHECK(resolve(from_csv.potential, grid, fallback)[6] == 6.0);
    CHECK_THROWS_AS(parse_config("[potential]\ncsv = a.csv\nconstant = 1\n"), ConfigError);
}

TEST_CASE("load_config reports missing files") {
    CHECK_THROWS_AS(load_config("/nonexistent/fkt.cfg"), ConfigError);
}
