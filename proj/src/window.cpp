#include "memestream/window.hpp"

#include <cmath>
#include <stdexcept>

namespace memestream {

WindowInterval window_interval(std::int64_t now, const WindowConfig& cfg) {
    if (cfg.model == WindowModel::Sliding)
        return {now - static_cast<std::int64_t>(cfg.ell) * cfg.delta_t, now};
    return {0, now};
}

double damped_weight(std::int64_t t, std::int64_t now, double lambda) {
    if (t > now) throw std::invalid_argument("damped_weight: event time is after the window end");
    if (lambda <= 0.0) throw std::invalid_argument("damped_weight: lambda must be > 0");
    return std::exp2(-lambda * static_cast<double>(now - t));
}

std::int64_t advance(std::int64_t now, const WindowConfig& cfg) { return now + cfg.delta_t; }

}  // namespace memestream
