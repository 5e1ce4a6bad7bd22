#pragma once

#include <cmath>
#include <cstddef>
#include <type_traits>
#include <utility>

#include "gstrand/errors.hpp"

namespace gstrand {

namespace detail {

template <class State>
bool finite(const State& s) {
    if constexpr (std::is_arithmetic_v<State>) {
        return std::isfinite(s);
    } else {
        return s.all_finite();
    }
}

}  // namespace detail

/**
 * Classical four-stage Runge–Kutta step for y' = rhs(y). State needs
 * operator+, scalar operator* and (for class types) all_finite().
 *
 * A non-finite stage input or result raises BlowUpError stamped t + dt.
 * RuntimeFailure thrown by rhs is rethrown with time t if it carries none.
 */
template <class State, class Rhs>
State rk4_step(const State& y, const Rhs& rhs, double dt, double t = 0.0) {
    if (!(dt > 0.0)) {
        throw ValidationError("rk4_step: dt must be positive");
    }
    auto checked = [&](State s) {
        if (!detail::finite(s)) {
            throw BlowUpError("non-finite value in solution", t + dt);
        }
        return s;
    };
    try {
        const State k1 = rhs(y);
        const State k2 = rhs(checked(y + (0.5 * dt) * k1));
        const State k3 = rhs(checked(y + (0.5 * dt) * k2));
        const State k4 = rhs(checked(y + dt * k3));
        return checked(y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
    } catch (RuntimeFailure& e) {
        if (!e.time()) e.set_time(t);
        throw;
    }
}

/// Takes `steps` RK4 steps from t = 0; observer(n, t_n, y_n) is called for
/// n = 0..steps with t_n = n·dt.
template <class State, class Rhs, class Observer>
State integrate(State y, const Rhs& rhs, double dt, std::size_t steps, Observer&& observer) {
    observer(std::size_t{0}, 0.0, static_cast<const State&>(y));
    for (std::size_t n = 0; n < steps; ++n) {
        y = rk4_step(y, rhs, dt, static_cast<double>(n) * dt);
        observer(n + 1, static_cast<double>(n + 1) * dt, static_cast<const State&>(y));
    }
    return y;
}

template <class State, class Rhs>
State integrate(State y, const Rhs& rhs, double dt, std::size_t steps) {
    return integrate(std::move(y), rhs, dt, steps, [](std::size_t, double, const State&) {});
}

}  // namespace gstrand
