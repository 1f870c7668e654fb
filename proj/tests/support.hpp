#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "ambio/foa.hpp"

namespace ambio::testing {

inline std::vector<double> white_noise(std::size_t n, std::uint64_t seed, double amplitude = 0.5) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> dist(-amplitude, amplitude);
    std::vector<double> v(n);
    for (auto& s : v) s = dist(gen);
    return v;
}

inline MonoSignal noise_signal(double seconds, int rate, std::uint64_t seed) {
    return {white_noise(static_cast<std::size_t>(seconds * rate), seed), rate};
}

inline std::vector<double> sine(std::size_t n, double freq, int rate, double amplitude = 0.5) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = amplitude * std::sin(2.0 * kPi * freq * static_cast<double>(i) / rate);
    return v;
}

/// Fresh scratch directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() /
                ("ambio-" + tag + "-" + std::to_string(rd()) + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

}  // namespace ambio::testing
