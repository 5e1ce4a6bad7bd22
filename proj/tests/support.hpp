#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "gstrand/peakon.hpp"
#include "gstrand/so3_dynamics.hpp"

namespace testing {

using gstrand::PeriodicGrid;
using gstrand::So3StrandState;
using gstrand::So3Vector;
using gstrand::VectorField;

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform(double lo = -1.0, double hi = 1.0) {
        return std::uniform_real_distribution<double>(lo, hi)(gen_);
    }

    So3Vector vec3(double scale = 1.0) {
        return So3Vector(uniform(), uniform(), uniform()) * scale;
    }

    VectorField field(std::size_t n, double scale = 1.0) {
        VectorField f(n);
        for (auto& x : f) x = vec3(scale);
        return f;
    }

    So3StrandState state(const PeriodicGrid& g, double scale = 1.0) {
        return So3StrandState(g, field(g.size(), scale), field(g.size(), scale));
    }

    // A-peakon state with per-node positions at least min_gap apart.
    gstrand::PeakonState peakons(const PeriodicGrid& g, std::size_t count, double min_gap = 0.05) {
        gstrand::PeakonState s(g, count);
        for (std::size_t j = 0; j < g.size(); ++j) {
            double q = uniform(-3.0, -2.0);
            for (std::size_t a = 0; a < count; ++a) {
                s.Q[s.index(j, a)] = q;
                s.M[s.index(j, a)] = uniform();
                s.N[s.index(j, a)] = uniform();
                q += min_gap + uniform(0.0, 1.5);
            }
        }
        return s;
    }

private:
    std::mt19937_64 gen_;
};

inline double max_abs_diff(const VectorField& a, const VectorField& b) {
    double worst = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) worst = std::max(worst, (a[j] - b[j]).cwiseAbs().maxCoeff());
    return worst;
}

inline double max_abs_diff(const So3StrandState& a, const So3StrandState& b) {
    return std::max(max_abs_diff(a.u, b.u), max_abs_diff(a.v, b.v));
}

inline double max_abs(const VectorField& a) {
    double worst = 0.0;
    for (const auto& x : a) worst = std::max(worst, x.cwiseAbs().maxCoeff());
    return worst;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

inline VectorField constant_field(std::size_t n, const So3Vector& x) { return VectorField(n, x); }

}  // namespace testing
