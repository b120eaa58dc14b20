#include "maglev/analysis.hpp"

#include "maglev/fft.hpp"
#include "maglev/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace maglev::analysis {

namespace {

std::vector<double> make_window(const std::string& name, std::size_t n) {
    std::vector<double> w(n, 1.0);
    if (name == "hann") {
        for (std::size_t i = 0; i < n; ++i)
            w[i] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * i / (n - 1)));
    } else if (name != "rect") {
        throw std::invalid_argument("unknown window: " + name);
    }
    return w;
}

}  // namespace

Spectrum psd_welch(const TimeSeries& ts, std::size_t segment_length, double overlap_fraction,
                   const std::string& window) {
    if (!(ts.sample_rate > 0.0)) throw std::invalid_argument("psd_welch: sample_rate must be > 0");
    const std::size_t n = ts.samples.size();
    if (n < 2) throw std::invalid_argument("psd_welch: input too short");
    if (segment_length == 0) segment_length = n;
    if (segment_length > n) throw std::invalid_argument("psd_welch: segment longer than input");
    if (segment_length < 2) throw std::invalid_argument("psd_welch: segment too short");
    if (!(overlap_fraction >= 0.0 && overlap_fraction <= 0.9))
        throw std::invalid_argument("psd_welch: overlap must be in [0, 0.9]");

    const auto w = make_window(window, segment_length);
    double wss = 0.0;  // sum of squared window
    for (const double v : w) wss += v * v;

    const auto hop = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround((1.0 - overlap_fraction) *
                                                 static_cast<double>(segment_length))));
    const std::size_t nbins = segment_length / 2 + 1;
    std::vector<double> acc(nbins, 0.0);
    std::size_t nseg = 0;
    std::vector<double> buf(segment_length);
    for (std::size_t start = 0; start + segment_length <= n; start += hop) {
        for (std::size_t i = 0; i < segment_length; ++i) buf[i] = w[i] * ts.samples[start + i];
        const auto x = rfft(buf);
        for (std::size_t k = 0; k < nbins; ++k) acc[k] += std::norm(x[k]);
        ++nseg;
        if (start + segment_length == n) break;
    }

    Spectrum out;
    out.window = window;
    out.resolution = ts.sample_rate / static_cast<double>(segment_length);
    out.freq.resize(nbins);
    out.psd.resize(nbins);
    const double scale = 1.0 / (static_cast<double>(nseg) * ts.sample_rate * wss);
    const bool even = segment_length % 2 == 0;
    for (std::size_t k = 0; k < nbins; ++k) {
        out.freq[k] = static_cast<double>(k) * out.resolution;
        double s = acc[k] * scale;
        const bool is_edge = k == 0 || (even && k == nbins - 1);
        out.psd[k] = is_edge ? s : 2.0 * s;  // one-sided
    }
    return out;
}

double integrated_power(const Spectrum& spec, double f_lo, double f_hi) {
    double sum = 0.0;
    for (std::size_t k = 0; k < spec.freq.size(); ++k)
        if (spec.freq[k] >= f_lo && spec.freq[k] <= f_hi) sum += spec.psd[k];
    return sum * spec.resolution;
}

double peak_frequency_interpolated(const Spectrum& spec, double f_lo, double f_hi) {
    std::size_t best = 0;
    double best_v = -1.0;
    bool found = false;
    for (std::size_t k = 1; k + 1 < spec.freq.size(); ++k) {
        if (spec.freq[k] < f_lo || spec.freq[k] > f_hi) continue;
        if (spec.psd[k] > best_v) {
            best_v = spec.psd[k];
            best = k;
            found = true;
        }
    }
    if (!found) throw std::invalid_argument("peak_frequency_interpolated: empty band");
    const double yl = std::log(std::max(spec.psd[best - 1], 1e-300));
    const double yc = std::log(std::max(spec.psd[best], 1e-300));
    const double yr = std::log(std::max(spec.psd[best + 1], 1e-300));
    const double denom = yl - 2.0 * yc + yr;
    double delta = 0.0;
    if (denom < 0.0) delta = 0.5 * (yl - yr) / denom;
    delta = std::clamp(delta, -0.5, 0.5);
    return (static_cast<double>(best) + delta) * spec.resolution;
}

namespace {

double median_of(std::vector<double> v) {
    if (v.empty()) return 0.0;
    const auto mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    return v[mid];
}

}  // namespace

std::vector<std::size_t> find_peaks(const Spectrum& spec, double mad_k) {
    const auto& p = spec.psd;
    if (p.size() < 3) return {};
    const double med = median_of(p);
    std::vector<double> dev(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) dev[i] = std::abs(p[i] - med);
    const double mad = median_of(dev);
    const double thresh = med + mad_k * mad;
    std::vector<std::size_t> peaks;
    for (std::size_t k = 1; k + 1 < p.size(); ++k)
        if (p[k] > thresh && p[k] >= p[k - 1] && p[k] > p[k + 1]) peaks.push_back(k);
    return peaks;
}

double LorentzianFit::f0_sigma() const { return std::sqrt(covariance[0]); }
double LorentzianFit::fwhm_sigma() const { return std::sqrt(covariance[5]); }

LorentzianFit lorentzian_fit(const Spectrum& spec, double f_lo, double f_hi) {
    std::vector<double> fs, ps;
    for (std::size_t k = 0; k < spec.freq.size(); ++k) {
        if (spec.freq[k] >= f_lo && spec.freq[k] <= f_hi) {
            fs.push_back(spec.freq[k]);
            ps.push_back(spec.psd[k]);
        }
    }
    if (fs.size() < 10) throw std::invalid_argument("lorentzian_fit: band must contain >= 10 bins");

    // initial guess: peak bin, offset from band edges, width from half-max
    std::size_t imax = 0;
    for (std::size_t i = 1; i < ps.size(); ++i)
        if (ps[i] > ps[imax]) imax = i;
    const double c0 = std::min(ps.front(), ps.back());
    const double a0 = std::max(ps[imax] - c0, 1e-300);
    const double half = c0 + 0.5 * a0;
    double lo_cross = fs.front(), hi_cross = fs.back();
    for (std::size_t i = imax; i-- > 0;)
        if (ps[i] < half) {
            lo_cross = fs[i];
            break;
        }
    for (std::size_t i = imax + 1; i < ps.size(); ++i)
        if (ps[i] < half) {
            hi_cross = fs[i];
            break;
        }
    const double g0 = std::max(hi_cross - lo_cross, 2.0 * spec.resolution);

    const auto model = [](double f, std::span<const double> p) {
        const double hg = 0.5 * p[1];  // half width
        const double d = f - p[0];
        return p[2] * hg * hg / (d * d + hg * hg) + p[3];
    };
    const auto res = levenberg_fit(model, fs, ps, {fs[imax], g0, a0, c0});

    LorentzianFit out{};
    out.f0 = res.params[0];
    out.fwhm = std::abs(res.params[1]);
    out.amplitude = res.params[2];
    out.offset = res.params[3];
    out.iterations = res.iterations;
    std::copy(res.covariance.begin(), res.covariance.end(), out.covariance.begin());
    if (out.f0 < f_lo || out.f0 > f_hi)
        throw std::runtime_error("lorentzian_fit: center outside the fit band");
    if (!(out.fwhm > 0.0)) throw std::runtime_error("lorentzian_fit: non-positive width");
    return out;
}

RingdownFit ringdown_analysis(const TimeSeries& ts, double peak_freq, double cal_freq,
                              double peak_band, double cal_band, int bins, int skip_bins) {
    if (bins < 4) throw std::invalid_argument("ringdown_analysis: need >= 4 bins");
    const std::size_t n = ts.samples.size();
    const std::size_t bin_len = n / static_cast<std::size_t>(bins);
    if (bin_len < 16) throw std::invalid_argument("ringdown_analysis: trace too short for bins");

    RingdownFit out{};
    for (int b = 0; b < bins; ++b) {
        TimeSeries seg;
        seg.sample_rate = ts.sample_rate;
        seg.samples.assign(ts.samples.begin() + static_cast<std::ptrdiff_t>(b * bin_len),
                           ts.samples.begin() + static_cast<std::ptrdiff_t>((b + 1) * bin_len));
        const auto spec = psd_welch(seg, 0, 0.0, "hann");
        const double a_mode =
            std::sqrt(integrated_power(spec, peak_freq - 0.5 * peak_band, peak_freq + 0.5 * peak_band));
        const double cal_power =
            integrated_power(spec, cal_freq - 0.5 * cal_band, cal_freq + 0.5 * cal_band);
        const double floor = median_of(spec.psd) * cal_band;
        if (!(cal_power > 3.0 * floor) || !(cal_power > 0.0))
            throw std::runtime_error("ringdown_analysis: calibration tone absent");
        out.bin_times.push_back((b + 0.5) * static_cast<double>(bin_len) / ts.sample_rate);
        out.bin_ratios.push_back(a_mode / std::sqrt(cal_power));
    }

    std::vector<double> tfit(out.bin_times.begin() + skip_bins, out.bin_times.end());
    std::vector<double> rfit(out.bin_ratios.begin() + skip_bins, out.bin_ratios.end());

    const double rmax = *std::max_element(rfit.begin(), rfit.end());
    const double rmin = *std::min_element(rfit.begin(), rfit.end());
    const double rmean = std::accumulate(rfit.begin(), rfit.end(), 0.0) /
                         static_cast<double>(rfit.size());
    if (rmax - rmin < 0.02 * rmean) {
        out.no_decay = true;
        out.tau = std::numeric_limits<double>::quiet_NaN();
        out.amplitude = 0.0;
        out.offset = rmean;
        return out;
    }

    const auto model = [](double t, std::span<const double> p) {
        return p[1] * std::exp(-t / p[0]) + p[2];
    };
    const double tau0 = (tfit.back() - tfit.front()) / 3.0;
    const auto res = levenberg_fit(model, tfit, rfit, {tau0, rfit.front() - rfit.back(), rfit.back()});
    out.tau = res.params[0];
    out.amplitude = res.params[1];
    out.offset = res.params[2];
    std::copy(res.covariance.begin(), res.covariance.end(), out.covariance.begin());
    if (!(out.tau > 0.0)) throw std::runtime_error("ringdown_analysis: non-positive tau");
    return out;
}

SpectrogramResult spectrogram_jitter(const TimeSeries& ts, int n_segments,
                                     double segment_seconds) {
    const auto seg_len = static_cast<std::size_t>(segment_seconds * ts.sample_rate);
    if (ts.samples.size() < static_cast<std::size_t>(n_segments) * seg_len)
        throw std::invalid_argument("spectrogram_jitter: trace shorter than n_segments * segment");

    SpectrogramResult out;
    for (int s = 0; s < n_segments; ++s) {
        TimeSeries seg;
        seg.sample_rate = ts.sample_rate;
        seg.samples.assign(
            ts.samples.begin() + static_cast<std::ptrdiff_t>(s * seg_len),
            ts.samples.begin() + static_cast<std::ptrdiff_t>((s + 1) * seg_len));
        const auto spec = psd_welch(seg, 0, 0.0, "hann");
        if (out.freq.empty()) out.freq = spec.freq;
        out.power.insert(out.power.end(), spec.psd.begin(), spec.psd.end());
        // peak from the PSD maximum, skipping DC
        std::size_t imax = 1;
        for (std::size_t k = 2; k < spec.psd.size(); ++k)
            if (spec.psd[k] > spec.psd[imax]) imax = k;
        out.peak_freqs.push_back(spec.freq[imax]);
        out.segment_times.push_back((s + 0.5) * segment_seconds);
    }

    const double mean = std::accumulate(out.peak_freqs.begin(), out.peak_freqs.end(), 0.0) /
                        static_cast<double>(out.peak_freqs.size());
    double ss = 0.0;
    for (const double f : out.peak_freqs) ss += (f - mean) * (f - mean);
    out.jitter_std = std::sqrt(ss / std::max<std::size_t>(1, out.peak_freqs.size() - 1));

    // histogram over the observed range
    const double fmin = *std::min_element(out.peak_freqs.begin(), out.peak_freqs.end());
    const double fmax = *std::max_element(out.peak_freqs.begin(), out.peak_freqs.end());
    const int nbins = 20;
    const double width = std::max(fmax - fmin, 1e-12);
    out.hist_counts.assign(nbins, 0);
    for (int b = 0; b <= nbins; ++b) out.hist_edges.push_back(fmin + width * b / nbins);
    for (const double f : out.peak_freqs) {
        auto b = static_cast<int>((f - fmin) / width * nbins);
        out.hist_counts[std::clamp(b, 0, nbins - 1)]++;
    }
    return out;
}

IdentifyResult identify_lines(const Spectrum& spec,
                              const std::vector<trap::MicromotionLine>& predicted,
                              double tolerance_hz, double mad_k) {
    if (!(tolerance_hz > spec.resolution))
        throw std::invalid_argument("identify_lines: tolerance must exceed spectral resolution");
    const auto peak_idx = find_peaks(spec, mad_k);
    std::vector<double> peaks;
    peaks.reserve(peak_idx.size());
    for (const auto k : peak_idx) peaks.push_back(spec.freq[k]);
    std::vector<bool> taken(peaks.size(), false);

    IdentifyResult out;
    for (const auto& line : predicted) {
        LineMatch m;
        m.predicted = line;
        double best = tolerance_hz;
        std::size_t best_i = peaks.size();
        for (std::size_t i = 0; i < peaks.size(); ++i) {
            if (taken[i]) continue;
            const double d = std::abs(peaks[i] - line.freq_hz);
            if (d <= best) {
                best = d;
                best_i = i;
            }
        }
        if (best_i < peaks.size()) {
            taken[best_i] = true;
            m.matched = true;
            m.observed_hz = peaks[best_i];
        }
        out.lines.push_back(m);
    }
    for (std::size_t i = 0; i < peaks.size(); ++i)
        if (!taken[i]) out.unmatched_peaks_hz.push_back(peaks[i]);
    return out;
}

TimeSeries lowpass4(const TimeSeries& ts, double cutoff_hz) {
    if (!(cutoff_hz > 0.0 && cutoff_hz < 0.5 * ts.sample_rate))
        throw std::invalid_argument("lowpass4: cutoff must be in (0, fs/2)");
    TimeSeries out = ts;
    const double kw = std::tan(std::numbers::pi * cutoff_hz / ts.sample_rate);
    for (const double theta : {std::numbers::pi / 8.0, 3.0 * std::numbers::pi / 8.0}) {
        const double q = 1.0 / (2.0 * std::cos(theta));
        const double norm = kw * kw + kw / q + 1.0;
        const double b0 = kw * kw / norm, b1 = 2.0 * b0, b2 = b0;
        const double a1 = 2.0 * (kw * kw - 1.0) / norm;
        const double a2 = (kw * kw - kw / q + 1.0) / norm;
        double x1 = 0.0, x2 = 0.0, y1 = 0.0, y2 = 0.0;
        for (double& s : out.samples) {
            const double x0 = s;
            const double y0 = b0 * x0 + b1 * x1 + b2 * x2 - a1 * y1 - a2 * y2;
            x2 = x1;
            x1 = x0;
            y2 = y1;
            y1 = y0;
            s = y0;
        }
    }
    return out;
}

}  // namespace maglev::analysis
