#include "fkt/cli/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace fkt::cli {

namespace {

struct RawValue {
    std::string text;
    std::size_t line;
};

using Section = std::map<std::string, RawValue>;
using Table = std::map<std::string, Section>;

const std::map<std::string, std::set<std::string>>& known_keys() {
    static const std::map<std::string, std::set<std::string>> keys{
        {"grid", {"n", "laplacian"}},
        {"potential", {"constant", "harmonics", "csv"}},
        {"g", {"constant", "harmonics", "csv"}},
        {"f", {"constant", "harmonics", "csv"}},
        {"run",
         {"t", "dt", "T", "paths", "seed", "K", "lr", "iters", "bins", "method", "x", "init",
          "drift", "record_paths", "out"}},
    };
    return keys;
}

std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

std::string strip_comment(std::string_view line) {
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') quoted = !quoted;
        if (line[i] == '#' && !quoted) return std::string(line.substr(0, i));
    }
    return std::string(line);
}

void put(Table& table, const std::string& section, const std::string& key, RawValue value,
         bool replace) {
    const auto& keys = known_keys();
    const auto sec = keys.find(section);
    if (sec == keys.end()) throw ConfigError("unknown section [" + section + "]", value.line);
    if (!sec->second.count(key)) {
        throw ConfigError("unknown key '" + key + "' in [" + section + "]", value.line);
    }
    auto& target = table[section];
    if (!replace && target.count(key)) {
        throw ConfigError("duplicate key '" + key + "' in [" + section + "] (first on line " +
                              std::to_string(target.at(key).line) + ")",
                          value.line);
    }
    target[key] = std::move(value);
}

Table parse_table(std::string_view text) {
    Table table;
    std::string section;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;
        if (line.front() == '[' && line.back() == ']' && line.find('=') == std::string::npos) {
            section = trim(std::string_view(line).substr(1, line.size() - 2));
            if (!known_keys().count(section)) {
                throw ConfigError("unknown section [" + section + "]", line_no);
            }
            table[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line_no);
        if (section.empty()) throw ConfigError("key outside of any section", line_no);
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        if (key.empty()) throw ConfigError("empty key", line_no);
        if (value.empty()) throw ConfigError("empty value for '" + key + "'", line_no);
        put(table, section, key, RawValue{value, line_no}, false);
    }
    return table;
}

double to_double(const std::string& key, const RawValue& v) {
    double out = 0.0;
    const char* begin = v.text.data();
    const char* end = begin + v.text.size();
    const auto res = std::from_chars(begin, end, out);
    if (res.ec != std::errc() || res.ptr != end || !std::isfinite(out)) {
        throw ConfigError("'" + key + "' expects a number, got '" + v.text + "'", v.line);
    }
    return out;
}

std::uint64_t to_unsigned(const std::string& key, const RawValue& v) {
    std::uint64_t out = 0;
    const char* begin = v.text.data();
    const char* end = begin + v.text.size();
    const auto res = std::from_chars(begin, end, out);
    if (res.ec != std::errc() || res.ptr != end) {
        throw ConfigError("'" + key + "' expects a nonnegative integer, got '" + v.text + "'",
                          v.line);
    }
    return out;
}

std::string to_string_value(const RawValue& v) {
    if (v.text.size() >= 2 && v.text.front() == '"' && v.text.back() == '"') {
        return v.text.substr(1, v.text.size() - 2);
    }
    return v.text;
}

std::vector<Harmonic> to_harmonics(const std::string& key, const RawValue& v) {
    // [[k,a,b],[k,a,b],...]
    std::string s;
    for (char c : v.text) {
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    }
    auto fail = [&]() -> ConfigError {
        return ConfigError("'" + key + "' expects [[k,a,b],...], got '" + v.text + "'", v.line);
    };
    if (s.size() < 2 || s.front() != '[' || s.back() != ']') throw fail();
    std::vector<Harmonic> out;
    std::size_t pos = 1;
    const std::size_t stop = s.size() - 1;
    while (pos < stop) {
        if (s[pos] != '[') throw fail();
        const auto close = s.find(']', pos);
        if (close == std::string::npos || close >= stop) throw fail();
        std::vector<double> nums;
        std::stringstream inner(s.substr(pos + 1, close - pos - 1));
        std::string item;
        while (std::getline(inner, item, ',')) {
            nums.push_back(to_double(key, RawValue{item, v.line}));
        }
        if (nums.size() != 3 || nums[0] != std::floor(nums[0])) throw fail();
        out.push_back({static_cast<int>(nums[0]), nums[1], nums[2]});
        pos = close + 1;
        if (pos < stop) {
            if (s[pos] != ',') throw fail();
            ++pos;
        }
    }
    return out;
}

FunctionSource to_source(const Table& table, const std::string& section, std::size_t n) {
    FunctionSource src;
    const auto it = table.find(section);
    if (it == table.end()) return src;
    const Section& sec = it->second;
    src.given = !sec.empty();
    if (sec.count("csv")) {
        if (sec.count("harmonics") || sec.count("constant")) {
            throw ConfigError("[" + section + "] takes either csv or constant/harmonics",
                              sec.at("csv").line);
        }
        src.csv = to_string_value(sec.at("csv"));
        return src;
    }
    if (sec.count("constant")) src.spec.constant = to_double("constant", sec.at("constant"));
    if (sec.count("harmonics")) {
        const auto& raw = sec.at("harmonics");
        src.spec.harmonics = to_harmonics("harmonics", raw);
        std::set<int> seen;
        for (const auto& h : src.spec.harmonics) {
            if (h.k <= 0) {
                throw ConfigError("[" + section + "] harmonics: wavenumber must be positive", raw.line);
            }
            if (!seen.insert(h.k).second) {
                throw ConfigError("[" + section + "] harmonics: wavenumber " + std::to_string(h.k) +
                                      " repeated",
                                  raw.line);
            }
            if (2 * static_cast<std::size_t>(h.k) >= n) {
                throw ConfigError("[" + section + "] harmonics: wavenumber " + std::to_string(h.k) +
                                      " must be below n/2 = " + std::to_string(n / 2),
                                  raw.line);
            }
        }
    }
    return src;
}

template <class T>
void read(const Section* sec, const std::string& key, T& field) {
    if (!sec) return;
    const auto it = sec->find(key);
    if (it == sec->end()) return;
    if constexpr (std::is_same_v<T, double>) {
        field = to_double(key, it->second);
    } else if constexpr (std::is_same_v<T, std::string>) {
        field = to_string_value(it->second);
    } else if constexpr (std::is_same_v<T, int>) {
        const auto v = to_unsigned(key, it->second);
        if (v > 1'000'000'000) throw ConfigError("'" + key + "' is too large", it->second.line);
        field = static_cast<int>(v);
    } else {
        field = static_cast<T>(to_unsigned(key, it->second));
    }
}

const Section* find_section(const Table& t, const std::string& name) {
    const auto it = t.find(name);
    return it == t.end() ? nullptr : &it->second;
}

void require(bool ok, const std::string& key, const std::string& constraint) {
    if (!ok) throw ConfigError("invalid '" + key + "': " + constraint);
}

}  // namespace

std::string laplacian_name(Laplacian scheme) {
    return scheme == Laplacian::kFourier ? "fourier" : "second-order";
}

RunConfig parse_config(std::string_view text, const std::vector<std::string>& overrides) {
    Table table = parse_table(text);
    for (const auto& o : overrides) {
        const auto dot = o.find('.');
        const auto eq = o.find('=');
        if (dot == std::string::npos || eq == std::string::npos || dot > eq) {
            throw ConfigError("override '" + o + "' must look like section.key=value");
        }
        put(table, trim(o.substr(0, dot)), trim(o.substr(dot + 1, eq - dot - 1)),
            RawValue{trim(o.substr(eq + 1)), 0}, true);
    }

    RunConfig cfg;
    const Section* grid = find_section(table, "grid");
    const Section* run = find_section(table, "run");
    read(grid, "n", cfg.n);
    require(cfg.n >= 4 && cfg.n % 2 == 0, "n", "must be even and at least 4");
    std::string lap = laplacian_name(cfg.laplacian);
    read(grid, "laplacian", lap);
    if (lap == "fourier") {
        cfg.laplacian = Laplacian::kFourier;
    } else if (lap == "second-order") {
        cfg.laplacian = Laplacian::kSecondOrder;
    } else {
        require(false, "laplacian", "must be 'fourier' or 'second-order'");
    }

    cfg.potential = to_source(table, "potential", cfg.n);
    cfg.g = to_source(table, "g", cfg.n);
    cfg.f = to_source(table, "f", cfg.n);

    read(run, "t", cfg.t);
    read(run, "dt", cfg.dt);
    read(run, "T", cfg.T);
    read(run, "paths", cfg.paths);
    read(run, "seed", cfg.seed);
    read(run, "K", cfg.K);
    read(run, "lr", cfg.lr);
    read(run, "iters", cfg.iters);
    read(run, "bins", cfg.bins);
    read(run, "method", cfg.method);
    read(run, "x", cfg.x);
    read(run, "init", cfg.init);
    read(run, "drift", cfg.drift);
    read(run, "record_paths", cfg.record_paths);
    read(run, "out", cfg.out);

    require(cfg.t > 0, "t", "must be positive");
    require(cfg.dt > 0 && cfg.dt <= cfg.t, "dt", "must satisfy 0 < dt <= t");
    require(cfg.T > 0 && cfg.dt <= cfg.T, "T", "must be positive and at least dt");
    require(cfg.paths >= 1, "paths", "must be at least 1");
    require(cfg.K >= 1 && 4 * static_cast<std::size_t>(cfg.K) <= cfg.n, "K", "must satisfy 1 <= K <= n/4");
    require(cfg.lr > 0, "lr", "must be positive");
    require(cfg.iters >= 1, "iters", "must be at least 1");
    require(cfg.bins >= 1, "bins", "must be at least 1");
    require(cfg.method == "pde" || cfg.method == "mc", "method", "must be 'pde' or 'mc'");
    require(cfg.x >= 0 && cfg.x < 1, "x", "must lie in [0, 1)");
    const bool init_ok = cfg.init == "density:muV" || cfg.init.rfind("density:", 0) == 0 ||
                         cfg.init.rfind("point:", 0) == 0;
    require(init_ok, "init", "must be point:<x>, density:muV or density:<file.csv>");
    if (cfg.init.rfind("point:", 0) == 0) {
        RawValue v{cfg.init.substr(6), 0};
        const double p = to_double("init", v);
        require(p >= 0 && p < 1, "init", "point must lie in [0, 1)");
    }
    require(cfg.drift == "doob" || cfg.drift == "g", "drift", "must be 'doob' or 'g'");
    require(cfg.drift != "g" || cfg.g.given, "drift", "'g' needs a [g] section");
    return cfg;
}

RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), overrides);
}

GridFunction resolve(const FunctionSource& source, const PeriodicGrid& grid,
                     const GridFunction& fallback) {
    if (!source.given) return fallback;
    if (source.csv) return load_csv(*source.csv, grid);
    return sample(source.spec, grid);
}

}  // namespace fkt::cli
