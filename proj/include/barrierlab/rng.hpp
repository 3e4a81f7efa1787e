#pragma once

#include "barrierlab/linalg.hpp"

#include <cmath>
#include <cstdint>
#include <random>

namespace barrierlab {

// Seeded mt19937_64 with hand-rolled variate generation so that a (seed,
// request sequence) pair reproduces bit-identical streams everywhere; the
// std distributions do not guarantee that across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    std::size_t index(std::size_t n) { return static_cast<std::size_t>(eng_() % n); }

    long uniform_int(long lo, long hi) { // inclusive
        return lo + static_cast<long>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        have_spare_ = true;
        return u * m;
    }

    Vec<double> unit_vector(int dim) {
        Vec<double> h(dim);
        double n;
        do {
            for (int i = 0; i < dim; ++i) h[i] = normal();
            n = norm2(h);
        } while (n < 1e-12);
        for (int i = 0; i < dim; ++i) h[i] /= n;
        return h;
    }

private:
    std::mt19937_64 eng_;
    double spare_ = 0;
    bool have_spare_ = false;
};

inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

} // namespace barrierlab
