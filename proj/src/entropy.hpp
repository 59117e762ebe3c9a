#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

namespace expcode {

/// Binary entropy in bits, with the limit convention H(0) = H(1) = 0.
inline double binary_entropy(double p) {
    if (p <= 0.0 || p >= 1.0) return 0.0;
    // log1p keeps the (1-p) term accurate when p is tiny.
    return -(p * std::log2(p) + (1.0 - p) * std::log1p(-p) * std::numbers::log2e);
}

/// Parameter of the XOR of two independent Bernoulli variables:
/// a ⊗ b = a(1-b) + b(1-a).
inline double binary_convolve(double a, double b) {
    return a * (1.0 - b) + b * (1.0 - a);
}

/// Entropy of a categorical distribution in bits (0·log 0 = 0).
inline double categorical_entropy(std::span<const double> p) {
    double h = 0.0;
    for (double x : p)
        if (x > 0.0) h -= x * std::log2(x);
    return h;
}

/// Cyclic (mod-q) convolution of two distributions on Z_q; the law of the
/// mod-q sum of independent symbols.
inline std::vector<double> cyclic_convolve(std::span<const double> a, std::span<const double> b) {
    const std::size_t q = a.size();
    std::vector<double> out(q, 0.0);
    for (std::size_t s = 0; s < q; ++s) {
        if (a[s] == 0.0) continue;
        for (std::size_t t = 0; t < q; ++t) {
            std::size_t k = s + t;
            if (k >= q) k -= q;
            out[k] += a[s] * b[t];
        }
    }
    return out;
}

/// Integer ceiling with a small nudge so analytically-integral arguments do
/// not round up from floating-point noise.
inline int ceil_level(double x) {
    return static_cast<int>(std::ceil(x - 1e-9));
}

}  // namespace expcode
