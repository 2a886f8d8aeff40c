#pragma once

// Deterministic random utilities. The engine is std::mt19937_64 whose output
// sequence is fixed by the standard; the distribution transforms here are
// written out explicitly because the std:: distribution objects are not
// bit-reproducible across library implementations.

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace quantbench {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 bits of precision.
    double next_double() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, bound) by rejection, bias-free.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t r = engine_();
            if (r >= threshold) {
                return r % bound;
            }
        }
    }

    /// Standard normal via Box-Muller (polar form avoided to keep the draw
    /// count per sample fixed).
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = next_double();
        double u2 = next_double();
        if (u1 < 1e-300) {
            u1 = 1e-300;
        }
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    /// Sample a class index from a probability vector.
    std::size_t next_category(const std::vector<double>& probs) {
        double u = next_double();
        double acc = 0.0;
        for (std::size_t i = 0; i < probs.size(); ++i) {
            acc += probs[i];
            if (u < acc) {
                return i;
            }
        }
        return probs.size() - 1;
    }

    /// Fisher-Yates shuffle with explicit draws (std::shuffle is not
    /// reproducible across standard libraries).
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(next_below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// FNV-1a over the id bytes mixed into the master seed; used to derive
/// independent per-cell streams.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view tag) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : tag) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    h ^= master + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
}

} // namespace quantbench
