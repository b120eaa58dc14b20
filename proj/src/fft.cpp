#include "maglev/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace maglev {

namespace {
// FFTW planning is not thread-safe; execution of a plan on its own arrays is.
std::mutex plan_mutex;
}  // namespace

std::vector<std::complex<double>> rfft(std::span<const double> input) {
    const std::size_t n = input.size();
    if (n < 2) throw std::invalid_argument("rfft: input too short");
    std::vector<double> in(input.begin(), input.end());
    std::vector<std::complex<double>> out(n / 2 + 1);

    fftw_plan plan;
    {
        std::lock_guard lock(plan_mutex);
        plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(),
                                    reinterpret_cast<fftw_complex*>(out.data()), FFTW_ESTIMATE);
    }
    if (!plan) throw std::runtime_error("rfft: fftw plan creation failed");
    fftw_execute(plan);
    {
        std::lock_guard lock(plan_mutex);
        fftw_destroy_plan(plan);
    }
    return out;
}

}  // namespace maglev
