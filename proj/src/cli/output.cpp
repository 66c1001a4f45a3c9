#include "fkt/cli/output.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>

namespace fkt::cli {

std::string format_number(double v) { return fmt::format("{:.15g}", v); }

Json number(double v) {
    if (!std::isfinite(v)) return Json(nullptr);
    return Json(std::stod(format_number(v)));
}

void write_json(const std::filesystem::path& path, const Json& doc) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << doc.dump(2) << '\n';
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : path_(path) {
    row(header);
}

void CsvWriter::row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) buffer_ += ',';
        buffer_ += format_number(values[i]);
    }
    buffer_ += '\n';
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) buffer_ += ',';
        buffer_ += cells[i];
    }
    buffer_ += '\n';
}

void CsvWriter::save() const {
    std::ofstream out(path_, std::ios::binary);
    if (!out) throw Error("cannot write " + path_.string());
    out << buffer_;
}

namespace {

Json echo_source(const FunctionSource& src) {
    Json j;
    j["given"] = src.given;
    if (src.csv) {
        j["csv"] = *src.csv;
        return j;
    }
    j["constant"] = number(src.spec.constant);
    Json h = Json::array();
    for (const auto& e : src.spec.harmonics) h.push_back(Json::array({e.k, number(e.a), number(e.b)}));
    j["harmonics"] = h;
    return j;
}

}  // namespace

Json echo_config(const RunConfig& cfg) {
    Json j;
    j["grid"] = Json{{"n", cfg.n}, {"laplacian", laplacian_name(cfg.laplacian)}};
    j["potential"] = echo_source(cfg.potential);
    j["g"] = echo_source(cfg.g);
    j["f"] = echo_source(cfg.f);
    Json run;
    run["t"] = number(cfg.t);
    run["dt"] = number(cfg.dt);
    run["T"] = number(cfg.T);
    run["paths"] = cfg.paths;
    run["seed"] = cfg.seed;
    run["K"] = cfg.K;
    run["lr"] = number(cfg.lr);
    run["iters"] = cfg.iters;
    run["bins"] = cfg.bins;
    run["method"] = cfg.method;
    run["x"] = number(cfg.x);
    run["init"] = cfg.init;
    run["drift"] = cfg.drift;
    run["record_paths"] = cfg.record_paths;
    run["out"] = cfg.out;
    j["run"] = run;
    return j;
}

void write_meta(const std::filesystem::path& dir, const std::string& command,
                const RunConfig& cfg) {
    Json j;
    j["command"] = command;
    j["config"] = echo_config(cfg);
    write_json(dir / "meta.json", j);
}

}  // namespace fkt::cli
