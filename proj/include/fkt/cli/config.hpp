#pragma once

// Sectioned key=value run configuration:
//
//   [grid]       n, laplacian
//   [potential]  constant, harmonics = [[k,a,b],...] | csv = path
//   [g]          same keys as [potential]; absent means g = log F
//   [f]          same keys; test function for `propagate`, absent means f = 1
//   [run]        t, dt, T, paths, seed, K, lr, iters, bins, method, x,
//                init, drift, record_paths, out
//
// `#` starts a comment. Values are integers, decimals, strings (optionally
// double-quoted) or bracketed numeric lists.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fkt/errors.hpp"
#include "fkt/grid.hpp"
#include "fkt/spectral.hpp"

namespace fkt::cli {

/// Grammar or validation failure; `line` is 0 when not tied to a line.
class ConfigError : public Error {
public:
    ConfigError(const std::string& message, std::size_t line = 0)
        : Error(line ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

struct FunctionSource {
    bool given = false;
    HarmonicSpec spec;
    std::optional<std::string> csv;
};

struct RunConfig {
    std::size_t n = 512;
    Laplacian laplacian = Laplacian::kFourier;
    FunctionSource potential;
    FunctionSource g;
    FunctionSource f;

    double t = 0.5;
    double dt = 1e-3;
    double T = 1.0;
    std::size_t paths = 10000;
    std::uint64_t seed = 42;
    int K = 8;
    double lr = 1e-3;
    int iters = 2000;
    std::size_t bins = 64;
    std::string method = "pde";
    double x = 0.0;
    std::string init = "density:muV";
    std::string drift = "doob";
    std::size_t record_paths = 0;  // record every k-th step into paths.csv; 0 disables
    std::string out = "out";
};

/// Parses and validates. `overrides` are `section.key=value` strings applied
/// on top of the file (they replace, never duplicate).
RunConfig parse_config(std::string_view text, const std::vector<std::string>& overrides = {});

RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides = {});

/// Samples a source on the grid, or returns `fallback` when not given.
GridFunction resolve(const FunctionSource& source, const PeriodicGrid& grid,
                     const GridFunction& fallback);

std::string laplacian_name(Laplacian scheme);

}  // namespace fkt::cli
