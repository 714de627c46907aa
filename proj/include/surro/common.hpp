#ifndef SURRO_COMMON_HPP
#define SURRO_COMMON_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace surro {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file (CSV, config, model file).
class ParseError : public Error {
public:
    using Error::Error;
};

/// A basis function was evaluated outside its domain (e.g. log of a
/// nonpositive value).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A documented precondition was violated by the caller.
class ContractViolation : public Error {
public:
    using Error::Error;
};

/// An iterative solver exhausted its iteration budget.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// A constrained problem has no feasible point.
class InfeasibleError : public Error {
public:
    using Error::Error;
};

/// SplitMix64 (Steele, Lea & Flood 2014). 64-bit state, shift/multiply
/// update. Used for every stochastic choice in the library so that runs
/// are reproducible from a single integer seed on any platform.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1), 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n), n > 0. Rejection sampling, no modulo bias.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v = next();
        while (v >= limit) v = next();
        return v % n;
    }

    /// In-place Fisher-Yates shuffle.
    template <class T>
    void shuffle(std::vector<T>& values) {
        for (std::size_t i = values.size(); i > 1; --i) {
            std::swap(values[i - 1], values[below(i)]);
        }
    }

private:
    std::uint64_t state_;
};

/// Derives an independent child seed for a parallel stream (e.g. one
/// benchmark problem). Documented so that manifests are reproducible:
/// child = SplitMix64(base XOR golden_gamma * (stream + 1)).next().
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    return SplitMix64(base ^ (0x9e3779b97f4a7c15ULL * (stream + 1))).next();
}

} // namespace surro

#endif
