#pragma once

// Deterministic report files: numbers carry 15 significant digits, CSV uses
// a header row and '\n' line endings, JSON keeps insertion order.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "fkt/cli/config.hpp"

namespace fkt::cli {

using Json = nlohmann::ordered_json;

/// 15 significant digits.
std::string format_number(double v);

/// Value rounded to 15 significant digits (null for non-finite values).
Json number(double v);

void write_json(const std::filesystem::path& path, const Json& doc);

class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);
    void row(const std::vector<double>& values);
    void row(const std::vector<std::string>& cells);
    void save() const;

private:
    std::filesystem::path path_;
    std::string buffer_;
};

Json echo_config(const RunConfig& cfg);

/// meta.json with the command name and the fully resolved configuration.
void write_meta(const std::filesystem::path& dir, const std::string& command,
                const RunConfig& cfg);

}  // namespace fkt::cli
