#pragma once

#include <mcon/scalar.hpp>

#include <cstdint>
#include <random>

namespace mcon {

/// Deterministic sampling helper.  Same seed, same stream, on every platform
/// (we avoid std distributions on purpose).
class rng {
  public:
    explicit rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t raw() { return gen_(); }

    long int_in(long lo, long hi) { // inclusive
        return lo + static_cast<long>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    /// Uniform rational: numerator in [-20,20]\{0}, denominator in [1,20].
    scalar rational(backend tag = backend::exact) {
        long num = 0;
        while (num == 0) num = int_in(-20, 20);
        long den = int_in(1, 20);
        if (tag == backend::exact) return scalar::exact_ratio(num, den);
        return scalar::floating(static_cast<double>(num) / static_cast<double>(den));
    }

    /// Nonzero rational.
    scalar nonzero(backend tag = backend::exact) {
        scalar s = rational(tag);
        while (s.is_zero()) s = rational(tag);
        return s;
    }

    bool coin() { return (gen_() & 1u) != 0; }

  private:
    std::mt19937_64 gen_;
};

} // namespace mcon
