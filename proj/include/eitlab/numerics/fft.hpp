#pragma once

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <map>
#include <mutex>
#include <span>
#include <tuple>
#include <vector>

namespace eitlab::numerics {

enum class FftDirection { Forward = FFTW_FORWARD, Inverse = FFTW_BACKWARD };

namespace detail {

// FFTW's planner is not reentrant; plan creation is serialized here and the
// resulting plans are executed through the new-array interface, which is.
class FftPlanCache {
public:
    static FftPlanCache& instance() {
        static FftPlanCache cache;
        return cache;
    }

    fftw_plan plan(std::size_t nx, std::size_t ny, FftDirection dir) {
        std::lock_guard lock(mutex_);
        const auto key = std::make_tuple(nx, ny, static_cast<int>(dir));
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;
        std::vector<std::complex<double>> scratch(nx * ny);
        auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
        fftw_plan p = fftw_plan_dft_2d(static_cast<int>(ny), static_cast<int>(nx), buf, buf,
                                       static_cast<int>(dir), FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, p);
        return p;
    }

    FftPlanCache(const FftPlanCache&) = delete;
    FftPlanCache& operator=(const FftPlanCache&) = delete;

private:
    FftPlanCache() = default;
    ~FftPlanCache() {
        for (auto& [key, p] : plans_) fftw_destroy_plan(p);
    }

    std::mutex mutex_;
    std::map<std::tuple<std::size_t, std::size_t, int>, fftw_plan> plans_;
};

}  // namespace detail

/// Unnormalized in-place 2-D DFT of row-major (y-major) data.
inline void fft2(std::span<std::complex<double>> data, std::size_t nx, std::size_t ny, FftDirection dir) {
    fftw_plan p = detail::FftPlanCache::instance().plan(nx, ny, dir);
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(p, buf, buf);
}

/// Angular frequency of DFT bin `i` for n samples of spacing d.
inline double fft_frequency(std::size_t i, std::size_t n, double d) {
    const auto signed_i = static_cast<double>(i < n / 2 ? static_cast<long>(i) : static_cast<long>(i) - static_cast<long>(n));
    return 2.0 * 3.14159265358979323846 * signed_i / (static_cast<double>(n) * d);
}

}  // namespace eitlab::numerics
