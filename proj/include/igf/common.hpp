#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <mutex>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace igf {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

enum class Errc {
    invalid_config,
    invalid_token,
    corpus_too_small,
    non_finite_parameters,
    non_finite_gradient,
    non_finite_probe,
    training_diverged,
    incompatible_snapshot,
    empty_dataset,
    degenerate_dataset,
    dataset_not_normalized,
    data_leak,
    missing_artifact,
    io_error,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::invalid_config:        return "invalid-config";
        case Errc::invalid_token:         return "invalid-token";
        case Errc::corpus_too_small:      return "corpus-too-small";
        case Errc::non_finite_parameters: return "non-finite-parameters";
        case Errc::non_finite_gradient:   return "non-finite-gradient";
        case Errc::non_finite_probe:      return "non-finite-probe";
        case Errc::training_diverged:     return "training-diverged";
        case Errc::incompatible_snapshot: return "incompatible-snapshot";
        case Errc::empty_dataset:         return "empty-dataset";
        case Errc::degenerate_dataset:    return "degenerate-dataset";
        case Errc::dataset_not_normalized:return "dataset-not-normalized";
        case Errc::data_leak:             return "data-leak";
        case Errc::missing_artifact:      return "missing-artifact";
        case Errc::io_error:              return "io-error";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

// ---------------------------------------------------------------------------
// Hashing (FNV-1a 64, used for fingerprints and report checksums)
// ---------------------------------------------------------------------------

inline uint64_t fnv1a64(const void* data, size_t n, uint64_t h = 0xcbf29ce484222325ull) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

inline uint64_t fnv1a64_u32s(const std::vector<uint32_t>& v, uint64_t h = 0xcbf29ce484222325ull) {
    for (uint32_t x : v) {
        for (int b = 0; b < 4; ++b) {
            h ^= (x >> (8 * b)) & 0xff;
            h *= 0x100000001b3ull;
        }
    }
    return h;
}

inline std::string hex64(uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[i] = digits[v & 0xf];
        v >>= 4;
    }
    return s;
}

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Derives an independent stream seed from a base seed and a stream index.
inline uint64_t derive_seed(uint64_t base, uint64_t stream) {
    return splitmix64(splitmix64(base) ^ (0x9e3779b97f4a7c15ull * (stream + 1)));
}

// ---------------------------------------------------------------------------
// Rng: mt19937_64 engine with explicit, portable distributions.
// std::*_distribution is implementation-defined, so draws are done by hand.
// ---------------------------------------------------------------------------

class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    uint64_t u64() { return eng_(); }

    // Unbiased integer in [0, n) by rejection.
    uint64_t below(uint64_t n) {
        if (n == 0) throw Error(Errc::invalid_config, "Rng::below(0)");
        uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        uint64_t v;
        do { v = eng_(); } while (v >= limit);
        return v % n;
    }

    size_t index(size_t n) { return static_cast<size_t>(below(n)); }

    // 53-bit uniform in [0, 1).
    double uniform01() { return (eng_() >> 11) * 0x1.0p-53; }

    double normal() {
        // Box-Muller; one value per call keeps the stream layout simple.
        double u1, u2;
        do { u1 = uniform01(); } while (u1 <= 0.0);
        u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = index(i);
            std::swap(v[i - 1], v[j]);
        }
    }

    Rng child(uint64_t stream) { return Rng(derive_seed(eng_(), stream)); }

private:
    std::mt19937_64 eng_;
};

// ---------------------------------------------------------------------------
// parallel_for: runs fn(i) for i in [0, n). Each index is independent; callers
// must write results into per-index slots so output does not depend on
// scheduling. threads == 1 runs inline.
// ---------------------------------------------------------------------------

inline unsigned default_threads() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

inline void parallel_for(size_t n, unsigned threads, const std::function<void(size_t)>& fn) {
    if (threads <= 1 || n <= 1) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    unsigned t = std::min<unsigned>(threads, static_cast<unsigned>(n));
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::atomic<bool> failed{false};
    std::mutex err_mu;
    pool.reserve(t);
    for (unsigned k = 0; k < t; ++k) {
        pool.emplace_back([&] {
            for (;;) {
                size_t i = next.fetch_add(1);
                if (i >= n || failed.load()) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mu);
                    if (!failed.exchange(true)) err = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failed.load()) std::rethrow_exception(err);
}

// ---------------------------------------------------------------------------
// Small numeric helpers
// ---------------------------------------------------------------------------

inline bool all_finite(const std::vector<double>& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

inline double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

}  // namespace igf
