#pragma once

#include <cstdint>

namespace memestream {

enum class WindowModel { Sliding, Landmark, Damped };

struct WindowConfig {
    std::int64_t delta_t = 3600;  // seconds per step
    int ell = 6;                  // window length in steps
    double lambda = 1.0;          // decay rate, damped model only
    WindowModel model = WindowModel::Sliding;
};

struct WindowInterval {
    std::int64_t lower_exclusive;
    std::int64_t upper_inclusive;

    bool contains(std::int64_t t) const { return t > lower_exclusive && t <= upper_inclusive; }
};

// Sliding: (T - ell*delta_t, T]. Landmark and damped keep everything since
// the stream start: (0, T].
WindowInterval window_interval(std::int64_t now, const WindowConfig& cfg);

// 2^(-lambda * (now - t)); throws std::invalid_argument when t > now or
// lambda <= 0.
double damped_weight(std::int64_t t, std::int64_t now, double lambda);

std::int64_t advance(std::int64_t now, const WindowConfig& cfg);

}  // namespace memestream
