#pragma once

#include "maglev/trap_model.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace maglev::analysis {

/// Uniformly sampled detector trace (arbitrary units).
struct TimeSeries {
    double sample_rate = 0.0;  // [Hz]
    std::vector<double> samples;
    std::string source;
    std::uint64_t seed = 0;

    [[nodiscard]] double duration() const {
        return static_cast<double>(samples.size()) / sample_rate;
    }
};

/// One-sided power spectral density.
struct Spectrum {
    std::vector<double> freq;  // [Hz]
    std::vector<double> psd;   // [units^2/Hz]
    double resolution = 0.0;   // bin width [Hz]
    std::string window;
};

/// Welch-averaged one-sided PSD. Defaults: Hann window, 50% overlap.
/// window is "hann" or "rect". segment_length = 0 means a single segment of
/// the full trace.
Spectrum psd_welch(const TimeSeries& ts, std::size_t segment_length = 0,
                   double overlap_fraction = 0.5, const std::string& window = "hann");

/// Sum of psd * df over [f_lo, f_hi].
double integrated_power(const Spectrum& spec, double f_lo, double f_hi);

/// Peak bin in [f_lo, f_hi] refined by log-parabolic interpolation.
double peak_frequency_interpolated(const Spectrum& spec, double f_lo, double f_hi);

/// Indices of local maxima with psd above median + mad_k * MAD.
std::vector<std::size_t> find_peaks(const Spectrum& spec, double mad_k = 6.0);

struct LorentzianFit {
    double f0;         // center [Hz]
    double fwhm;       // full width at half maximum [Hz]
    double amplitude;  // peak height above offset
    double offset;
    std::array<double, 16> covariance;  // (f0, fwhm, amplitude, offset) 4x4
    int iterations = 0;

    [[nodiscard]] double q() const { return f0 / fwhm; }
    [[nodiscard]] double f0_sigma() const;
    [[nodiscard]] double fwhm_sigma() const;
};

/// Least-squares fit of S(f) = A (G/2)^2 / ((f-f0)^2 + (G/2)^2) + C over the
/// band. Initial guess from the peak bin and half-max crossings. Throws on
/// non-convergence or when f0 lands outside the band.
LorentzianFit lorentzian_fit(const Spectrum& spec, double f_lo, double f_hi);

struct RingdownFit {
    double tau;        // [s]
    double amplitude;  // of the decaying component (ratio units)
    double offset;
    bool no_decay = false;  // input had no measurable decay; tau invalid
    std::array<double, 9> covariance;  // (tau, amplitude, offset) 3x3
    std::vector<double> bin_times;     // diagnostics: binned amplitude ratio
    std::vector<double> bin_ratios;

    [[nodiscard]] double q(double omega) const { return omega * tau / 2.0; }
};

/// Ringdown amplitude extraction: per-bin PSD, band-integrated mode power
/// normalized by a calibration tone, exponential fit A exp(-t/tau) + C with
/// the first skip_bins bins after excitation excluded. Bands are full widths
/// centered on the given frequencies. Throws when the calibration tone is
/// absent or the fit returns tau <= 0.
RingdownFit ringdown_analysis(const TimeSeries& ts, double peak_freq, double cal_freq,
                              double peak_band = 3.0, double cal_band = 0.6, int bins = 50,
                              int skip_bins = 2);

struct SpectrogramResult {
    std::vector<double> segment_times;  // centers [s]
    std::vector<double> peak_freqs;     // per-segment PSD-maximum frequency [Hz]
    std::vector<double> freq;           // common frequency grid [Hz]
    std::vector<double> power;          // row-major [n_segments x freq.size()]
    double jitter_std = 0.0;            // std dev of peak_freqs [Hz]
    std::vector<double> hist_edges;
    std::vector<int> hist_counts;
};

/// Frequency-jitter spectrogram: the trace is cut into n_segments pieces of
/// segment_seconds each; per-segment peak from the PSD maximum.
SpectrogramResult spectrogram_jitter(const TimeSeries& ts, int n_segments = 100,
                                     double segment_seconds = 6.0);

struct LineMatch {
    trap::MicromotionLine predicted;
    double observed_hz = 0.0;
    bool matched = false;
};

struct IdentifyResult {
    std::vector<LineMatch> lines;
    std::vector<double> unmatched_peaks_hz;
};

/// Greedy nearest matching of detected PSD peaks (median + mad_k * MAD
/// threshold) to predicted micromotion lines within tolerance_hz.
IdentifyResult identify_lines(const Spectrum& spec,
                              const std::vector<trap::MicromotionLine>& predicted,
                              double tolerance_hz, double mad_k = 6.0);

/// 4th-order Butterworth low-pass (two cascaded biquads, bilinear transform);
/// models the measurement chain's anti-alias filter.
TimeSeries lowpass4(const TimeSeries& ts, double cutoff_hz);

}  // namespace maglev::analysis
