#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <cstdlib>
#include <map>
#include <mutex>
#include <span>
#include <thread>
#include <utility>
#include <vector>

#include <fftw3.h>

namespace qconv::detail {

using cplx = std::complex<double>;

/// Sign of the exponent in sum_x e^{sign * 2 pi i x u / n} z(x).
enum class fft_sign : int { negative = FFTW_FORWARD, positive = FFTW_BACKWARD };

/// Process-wide cache of unaligned out-of-place 1-D plans. Planning is
/// serialized; execution through fftw_execute_dft is reentrant.
class plan_cache {
public:
    static plan_cache& instance()
    {
        static plan_cache cache;
        return cache;
    }

    fftw_plan get(std::size_t n, fft_sign sign)
    {
        std::lock_guard lock(mutex_);
        const auto key = std::make_pair(n, static_cast<int>(sign));
        if (auto it = plans_.find(key); it != plans_.end())
            return it->second;
        fftw_complex* in = fftw_alloc_complex(n);
        fftw_complex* out = fftw_alloc_complex(n);
        fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), in, out, static_cast<int>(sign),
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(in);
        fftw_free(out);
        plans_.emplace(key, p);
        return p;
    }

    plan_cache(const plan_cache&) = delete;
    plan_cache& operator=(const plan_cache&) = delete;

private:
    plan_cache() = default;
    ~plan_cache()
    {
        for (auto& [key, p] : plans_)
            fftw_destroy_plan(p);
    }

    std::mutex mutex_;
    std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

/// Unnormalized DFT of `in` into `out` (distinct buffers of equal length).
inline void fft(std::span<const cplx> in, std::span<cplx> out, fft_sign sign)
{
    fftw_plan p = plan_cache::instance().get(in.size(), sign);
    // FFTW takes a non-const input pointer but does not write to it for out-of-place plans.
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data())),
                     reinterpret_cast<fftw_complex*>(out.data()));
}

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

/// Thread cap from QCONV_THREADS; falls back to the hardware count.
inline unsigned thread_limit()
{
    if (const char* env = std::getenv("QCONV_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0)
            return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs body(i) for i in [0, count). Work is split into contiguous chunks;
/// each index is computed by exactly one thread, so results do not depend on
/// the thread count when iterations are independent.
template <typename Body>
void parallel_for(std::size_t count, std::size_t work_per_item, Body&& body)
{
    constexpr std::size_t min_work_per_thread = 1 << 14;
    const std::size_t useful = std::max<std::size_t>(1, count * work_per_item / min_work_per_thread);
    const std::size_t threads = std::min<std::size_t>({thread_limit(), useful, count});
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    const std::size_t chunk = (count + threads - 1) / threads;
    for (std::size_t t = 0; t < threads; ++t) {
        const std::size_t lo = t * chunk, hi = std::min(count, lo + chunk);
        if (lo >= hi)
            break;
        pool.emplace_back([lo, hi, &body] {
            for (std::size_t i = lo; i < hi; ++i)
                body(i);
        });
    }
}

} // namespace qconv::detail
