#include "wavecraft/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace wavecraft::fft {

namespace {

// Plan creation is not thread-safe in FFTW; execution on distinct arrays is.
std::mutex g_plan_mutex;

fftw_plan plan_for(int n, bool inverse) {
    static std::map<std::pair<int, bool>, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    auto it = cache.find({n, inverse});
    if (it != cache.end()) return it->second;

    fftw_complex* buf = fftw_alloc_complex(static_cast<size_t>(n));
    fftw_plan plan = fftw_plan_dft_1d(n, buf, buf,
                                      inverse ? FFTW_BACKWARD : FFTW_FORWARD,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    cache.emplace(std::pair<int, bool>{n, inverse}, plan);
    return plan;
}

}  // namespace

void dft(std::vector<cdouble>& data, bool inverse) {
    if (data.empty()) return;
    fftw_plan plan = plan_for(static_cast<int>(data.size()), inverse);
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, ptr, ptr);
}

double frequency(int k, int n, double spacing) {
    const int shifted = (k <= (n - 1) / 2) ? k : k - n;
    return 2.0 * kPi * shifted / (n * spacing);
}

}  // namespace wavecraft::fft
