// bounds.hpp -- upper bounds on the matrix multiplication exponent

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

#include "susp/error.hpp"

namespace susp {

enum class BoundVariant { SinglePuzzle, Capacity };

constexpr std::string_view to_string(BoundVariant v) noexcept
{
    return v == BoundVariant::SinglePuzzle ? "single_puzzle" : "capacity";
}

struct OmegaBound {
    double omega = 3.0;
    std::uint64_t m = 3;
    BoundVariant variant = BoundVariant::Capacity;
    std::uint64_t s = 0;
    std::uint64_t k = 0;
    /// The scan hit max_m without the objective turning upward; omega is then
    /// the best value seen, approaching the infimum from above.
    bool at_cap = false;
};

/// Largest capacity allowed; reaching it would give omega = 2.
inline const double kMaxCapacity = 3.0 / std::cbrt(4.0);

struct ScanLimits {
    std::uint64_t max_m = 1'000'000;
    /// Stop once this many consecutive m fail to improve on the best value.
    std::uint64_t patience = 64;
};

namespace detail {

/// Minimizes objective(m) over integers m >= 3. Ties go to the smaller m.
inline OmegaBound scan_m(const std::function<double(double)> &objective, ScanLimits limits)
{
    OmegaBound best;
    best.omega = objective(3.0);
    best.m = 3;
    std::uint64_t worse_run = 0;
    std::uint64_t m = 4;
    for (; m <= limits.max_m; ++m) {
        const double value = objective(static_cast<double>(m));
        if (value < best.omega) {
            best.omega = value;
            best.m = m;
            worse_run = 0;
        } else if (++worse_run >= limits.patience) {
            break;
        }
    }
    best.at_cap = m > limits.max_m;
    return best;
}

} // namespace detail

/// omega <= min_m 3 (sk ln m - ln s!) / (sk ln(m-1)), the bound from a single
/// (s,k)-SUSP.
inline OmegaBound omega_single(std::uint64_t s, std::uint64_t k, ScanLimits limits = {})
{
    if (s == 0 || k == 0)
        throw Error(Errc::Empty, "s and k must be positive");
    const double sk = static_cast<double>(s) * static_cast<double>(k);
    const double log_factorial = std::lgamma(static_cast<double>(s) + 1.0);
    auto bound = detail::scan_m(
        [&](double m) { return 3.0 * (sk * std::log(m) - log_factorial) / (sk * std::log(m - 1.0)); },
        limits);
    bound.variant = BoundVariant::SinglePuzzle;
    bound.s = s;
    bound.k = k;
    return bound;
}

/// omega <= min_m 3 (ln m - ln C) / ln(m-1) for a family of capacity C.
inline OmegaBound omega_from_capacity(double capacity, ScanLimits limits = {})
{
    if (!(capacity >= 1.0) || capacity > kMaxCapacity * (1.0 + 1e-12))
        throw Error(Errc::CapacityOutOfRange,
                    "capacity " + std::to_string(capacity) + " outside [1, 3/2^(2/3)]");
    const double log_c = std::log(capacity);
    auto bound = detail::scan_m(
        [&](double m) { return 3.0 * (std::log(m) - log_c) / std::log(m - 1.0); }, limits);
    bound.variant = BoundVariant::Capacity;
    return bound;
}

/// omega <= min_m 3 (k ln m - ln s) / (k ln(m-1)): the capacity bound for a
/// simplifiable (s,k)-SUSP, whose powers form a family of capacity s^(1/k).
inline OmegaBound omega_capacity(std::uint64_t s, std::uint64_t k, ScanLimits limits = {})
{
    if (s == 0 || k == 0)
        throw Error(Errc::Empty, "s and k must be positive");
    const double kd = static_cast<double>(k);
    const double log_s = std::log(static_cast<double>(s));
    if (log_s / kd > std::log(kMaxCapacity) + 1e-12)
        throw Error(Errc::CapacityOutOfRange, "s^(1/k) exceeds 3/2^(2/3)");
    auto bound = detail::scan_m(
        [&](double m) { return 3.0 * (kd * std::log(m) - log_s) / (kd * std::log(m - 1.0)); },
        limits);
    bound.variant = BoundVariant::Capacity;
    bound.s = s;
    bound.k = k;
    return bound;
}

/// Rounds an upper bound up to `decimals` places, the convention for quoting
/// a bound so that the quoted value stays valid. Excess below 1e-6 is
/// ignored: at_cap values sit that close above their unattained infimum.
inline double round_bound_up(double value, int decimals)
{
    const double scale = std::pow(10.0, decimals);
    return std::ceil((value - 1e-6) * scale) / scale;
}

} // namespace susp
