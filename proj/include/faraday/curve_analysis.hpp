#pragma once

// Peak and FWHM extraction on sampled curves, plus golden-section maximization.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>

namespace faraday {

/// Raised when a sampled curve has no peak above its floor, or the half-maximum
/// region is not closed inside the sampled range.
class NoFeatureError : public std::runtime_error {
public:
    enum class Reason { flat, unresolved };
    NoFeatureError(Reason reason, const std::string& what) : std::runtime_error(what), reason_(reason) {}
    [[nodiscard]] Reason reason() const { return reason_; }

private:
    Reason reason_;
};

class NoInteriorMaximumError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PeakSummary {
    std::size_t index = 0;
    double location = 0.0;
    double value = 0.0;
    double left_half = 0.0;   ///< interpolated half-maximum crossing below the peak
    double right_half = 0.0;  ///< interpolated half-maximum crossing above the peak
    double fwhm = 0.0;
};

/// Index of the largest sample; ties go to the sample with smaller |x|.
[[nodiscard]] inline std::size_t argmax_prefer_center(std::span<const double> x,
                                                      std::span<const double> y) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < y.size(); ++i) {
        if (y[i] > y[best] || (y[i] == y[best] && std::abs(x[i]) < std::abs(x[best]))) best = i;
    }
    return best;
}

inline void require_grid(std::span<const double> x, std::size_t min_points) {
    if (x.size() < min_points) {
        throw std::invalid_argument("grid needs at least " + std::to_string(min_points) + " points");
    }
    for (std::size_t i = 1; i < x.size(); ++i) {
        if (!(x[i] > x[i - 1])) throw std::invalid_argument("grid must be strictly increasing");
    }
}

/// Global maximum and the full width of the contiguous region above half of it,
/// with crossings found by linear interpolation between samples.
[[nodiscard]] inline PeakSummary analyze_peak(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 3) {
        throw std::invalid_argument("analyze_peak: need matching grids of at least 3 points");
    }
    double lo = y[0];
    for (double v : y) {
        if (!std::isfinite(v)) throw std::invalid_argument("analyze_peak: non-finite sample");
        lo = std::min(lo, v);
    }
    PeakSummary s;
    s.index = argmax_prefer_center(x, y);
    s.value = y[s.index];
    s.location = x[s.index];
    if (!(s.value > 0.0) || s.value - lo <= 1e-12 * std::abs(s.value)) {
        throw NoFeatureError(NoFeatureError::Reason::flat, "no feature in range");
    }
    const double half = 0.5 * s.value;
    std::size_t j = s.index;
    while (j > 0 && y[j - 1] > half) --j;
    std::size_t k = s.index;
    while (k + 1 < y.size() && y[k + 1] > half) ++k;
    if (j == 0 || k + 1 == y.size()) {
        throw NoFeatureError(NoFeatureError::Reason::unresolved,
                             "no feature in range: half-maximum region reaches the grid edge");
    }
    auto cross = [&](std::size_t a, std::size_t b) {
        const double t = (half - y[a]) / (y[b] - y[a]);
        return x[a] + t * (x[b] - x[a]);
    };
    s.left_half = cross(j - 1, j);
    s.right_half = cross(k, k + 1);
    s.fwhm = s.right_half - s.left_half;
    return s;
}

/// Golden-section search for a maximum of f on [a, b].
[[nodiscard]] inline double golden_section_max(const std::function<double(double)>& f, double a,
                                               double b, double tol) {
    constexpr double inv_phi = std::numbers::phi - 1.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (std::abs(b - a) > tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace faraday
