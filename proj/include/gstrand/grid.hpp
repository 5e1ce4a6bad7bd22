#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace gstrand {

// Uniform periodic grid s_j = j·Δs over [0, S), Δs = S / N_s.
class PeriodicGrid {
public:
    static constexpr std::size_t kMinNodes = 8;

    PeriodicGrid(double length, std::size_t nodes);

    double length() const noexcept { return length_; }
    std::size_t size() const noexcept { return nodes_; }
    double spacing() const noexcept { return length_ / static_cast<double>(nodes_); }
    double node(std::size_t j) const noexcept { return spacing() * static_cast<double>(j); }

    bool operator==(const PeriodicGrid&) const = default;

private:
    double length_;
    std::size_t nodes_;
};

// Centered periodic finite-difference first derivative, order 2 or 4.
class DerivativeStencil {
public:
    explicit DerivativeStencil(int order = 2);

    int order() const noexcept { return order_; }

    // Works for any T closed under subtraction and scalar multiplication
    // (double, Eigen vectors).
    template <class T>
    void apply(std::span<const T> f, double ds, std::span<T> out) const;

    template <class T>
    std::vector<T> apply(std::span<const T> f, double ds) const {
        std::vector<T> out(f.size());
        apply<T>(f, ds, std::span<T>(out));
        return out;
    }

    template <class T>
    T at(std::span<const T> f, double ds, std::size_t j) const;

private:
    int order_;
};

template <class T>
T DerivativeStencil::at(std::span<const T> f, double ds, std::size_t j) const {
    const std::size_t n = f.size();
    const std::size_t jp = (j + 1) % n;
    const std::size_t jm = (j + n - 1) % n;
    if (order_ == 2) {
        return T((f[jp] - f[jm]) * (0.5 / ds));
    }
    const std::size_t jpp = (j + 2) % n;
    const std::size_t jmm = (j + n - 2) % n;
    return T(((f[jp] - f[jm]) * 8.0 - (f[jpp] - f[jmm])) * (1.0 / (12.0 * ds)));
}

template <class T>
void DerivativeStencil::apply(std::span<const T> f, double ds, std::span<T> out) const {
    for (std::size_t j = 0; j < f.size(); ++j) {
        out[j] = at<T>(f, ds, j);
    }
}

}  // namespace gstrand
