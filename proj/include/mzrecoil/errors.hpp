#pragma once
#include <stdexcept>
#include <string>

namespace mzr {

// Bad user input: configuration files, grids, CLI arguments.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
    config_error(const std::string& key, const std::string& msg)
        : std::runtime_error("config key '" + key + "': " + msg), key_(key) {}
    const std::string& key() const { return key_; }
private:
    std::string key_;
};

// A documented operation contract was violated by the caller.
class contract_error : public std::logic_error {
public:
    explicit contract_error(const std::string& msg) : std::logic_error(msg) {}
};

// Numerics failed to converge or left their validated domain.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace mzr
