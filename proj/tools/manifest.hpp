#pragma once

// Run manifests: every command records what it read, what it wrote, and the
// fully resolved parameters (defaults included), so a run can be audited and
// reproduced. Rerunning a command with identical inputs and seeds must yield
// byte-identical outputs; only the wall-clock field may differ.

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace align360::cli {

inline constexpr const char* kToolVersion = "0.1.0";

class RunTimer {
public:
    RunTimer() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

struct RunManifest {
    std::string command;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    nlohmann::json parameters = nlohmann::json::object();
    double wall_clock_s = 0.0;

    void add_input(const std::filesystem::path& p) { inputs.push_back(p.string()); }
    void add_output(const std::filesystem::path& p) { outputs.push_back(p.string()); }

    // Serializes with sorted keys; wall_clock_s sits on its own line so
    // reproducibility checks can strip it.
    void write(const std::filesystem::path& path) const;
};

// Resolves a relative output path against the ALIGN360_OUT_ROOT environment
// variable when it is set; absolute paths and unset roots pass through.
std::filesystem::path resolve_output_path(const std::filesystem::path& out);

}  // namespace align360::cli
