#pragma once
#include <map>
#include <optional>
#include <string>

#include "mzrecoil/pipeline.hpp"

namespace mzr {

// Parsed "key = value" file. '#' starts a comment; keys are case-sensitive.
class KeyValueFile {
public:
    static KeyValueFile load(const std::string& path);
    static KeyValueFile from_string(const std::string& text);

    bool has(const std::string& key) const;
    double number(const std::string& key) const;
    double number_or(const std::string& key, double fallback) const;
    int integer(const std::string& key) const;
    int integer_or(const std::string& key, int fallback) const;
    std::string text_or(const std::string& key, const std::string& fallback) const;
    // Keys present in the file but never read (typo detection).
    std::vector<std::string> unused() const;

private:
    std::map<std::string, std::string> values_;
    mutable std::map<std::string, bool> touched_;
};

struct SweepSpec {
    double dp_over_lambda_i_min = 0.0;
    double dp_over_lambda_i_max = 2.0;
    int points = 201;
};

struct CarpetSpec {
    double y_min = 0.0;
    double y_max = 0.0;
    int slices = 33;
};

// Full run description shared by the CLI commands.
struct RunConfig {
    PipelineSettings pipeline;
    MomentumTransferDistribution distribution;
    SweepSpec sweep;
    CarpetSpec carpet;
    int threads = 1;
    std::string output_path;

    static RunConfig from_file(const std::string& path);
    static RunConfig from_kv(const KeyValueFile& kv);
};

} // namespace mzr
