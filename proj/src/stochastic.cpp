#include "windsim/stochastic.hpp"

#include <algorithm>
#include <cmath>

#include "windsim/geometry.hpp"
#include "windsim/rng.hpp"

namespace windsim::stochastic {

using geometry::kPi;

namespace {
double mod_two(double v) {
    double r = std::fmod(v, 2.0);
    if (r < 0.0) r += 2.0;
    if (r >= 2.0) r = 0.0;
    return r;
}
}  // namespace

std::complex<double> ComplexAmplitude::value() const {
    return std::polar(p, kPi * alpha);
}

ComplexAmplitude ComplexAmplitude::from_complex(std::complex<double> z) {
    ComplexAmplitude a;
    a.p = std::abs(z);
    a.alpha = (a.p == 0.0) ? 0.0 : mod_two(std::arg(z) / kPi);
    return a;
}

CircularDistribution CircularDistribution::make_delta(double alpha) {
    CircularDistribution d;
    d.kind = Kind::delta;
    d.alpha = alpha;
    return d;
}

CircularDistribution CircularDistribution::make_uniform_line() {
    CircularDistribution d;
    d.kind = Kind::uniform_line;
    return d;
}

CircularDistribution CircularDistribution::make_uniform(double center, double half_width) {
    if (!(half_width > 0.0)) throw std::invalid_argument("uniform: half_width must be > 0");
    CircularDistribution d;
    d.kind = Kind::uniform;
    d.center = center;
    d.half_width = half_width;
    return d;
}

CircularDistribution CircularDistribution::make_gaussian(double mean, double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("gaussian: sigma must be > 0");
    CircularDistribution d;
    d.kind = Kind::gaussian;
    d.mean = mean;
    d.sigma = sigma;
    return d;
}

CircularDistribution CircularDistribution::make_table(
    std::vector<std::pair<double, double>> density) {
    if (density.size() < 2) throw std::invalid_argument("table: need at least 2 samples");
    double integral = 0.0;
    for (std::size_t i = 0; i + 1 < density.size(); ++i) {
        if (!(density[i + 1].first > density[i].first))
            throw std::invalid_argument("table: abscissae must be strictly increasing");
        if (density[i].second < 0.0 || density[i + 1].second < 0.0)
            throw std::invalid_argument("table: densities must be nonnegative");
        integral += 0.5 * (density[i].second + density[i + 1].second) *
                    (density[i + 1].first - density[i].first);
    }
    if (std::fabs(integral - 1.0) > 1e-9)
        throw std::invalid_argument("table: density is not normalized to 1");
    CircularDistribution d;
    d.kind = Kind::table;
    d.density = std::move(density);
    return d;
}

ComplexAmplitude circular_expectation(const CircularDistribution& d) {
    using Kind = CircularDistribution::Kind;
    switch (d.kind) {
        case Kind::delta:
            return {1.0, mod_two(d.alpha)};
        case Kind::uniform_line:
            // Characteristic function of the flat line density vanishes.
            return {0.0, 0.0};
        case Kind::uniform: {
            double w = kPi * d.half_width;
            std::complex<double> m = std::polar(1.0, kPi * d.center) * (std::sin(w) / w);
            return ComplexAmplitude::from_complex(m);
        }
        case Kind::gaussian: {
            double p = std::exp(-0.5 * kPi * kPi * d.sigma * d.sigma);
            return {p, mod_two(d.mean)};
        }
        case Kind::table: {
            // Composite Simpson per segment with linearly interpolated density.
            std::complex<double> acc{};
            for (std::size_t i = 0; i + 1 < d.density.size(); ++i) {
                auto [xa, ra] = d.density[i];
                auto [xb, rb] = d.density[i + 1];
                double xm = 0.5 * (xa + xb), rm = 0.5 * (ra + rb);
                auto f = [](double x, double r) { return std::polar(r, kPi * x); };
                acc += (xb - xa) / 6.0 * (f(xa, ra) + 4.0 * f(xm, rm) + f(xb, rb));
            }
            return ComplexAmplitude::from_complex(acc);
        }
    }
    throw std::logic_error("circular_expectation: unknown kind");
}

std::complex<double> pairwise_sum(std::vector<std::complex<double>>& values) {
    if (values.empty()) return {};
    std::size_t n = values.size();
    while (n > 1) {
        std::size_t half = n / 2;
        for (std::size_t i = 0; i < half; ++i) values[i] += values[n - 1 - i];
        n = (n + 1) / 2;
    }
    return values[0];
}

MonteCarloAmplitude circular_expectation_mc(const CircularDistribution& d, std::size_t n,
                                            std::uint64_t seed) {
    using Kind = CircularDistribution::Kind;
    if (n == 0) throw std::invalid_argument("circular_expectation_mc: n must be > 0");
    SplitMix64 rng(derive_stream(seed, "circular-mc"));

    // Piecewise-linear CDF over the table nodes.
    std::vector<double> cdf;
    if (d.kind == Kind::table) {
        cdf.resize(d.density.size(), 0.0);
        for (std::size_t i = 0; i + 1 < d.density.size(); ++i)
            cdf[i + 1] = cdf[i] + 0.5 * (d.density[i].second + d.density[i + 1].second) *
                                      (d.density[i + 1].first - d.density[i].first);
    }

    auto draw = [&]() -> double {
        switch (d.kind) {
            case Kind::delta:
                return d.alpha;
            case Kind::uniform_line:
                // Whole-turn half-width, so the exact expectation is zero.
                return rng.next_uniform(-1048576.0, 1048576.0);
            case Kind::uniform:
                return d.center + d.half_width * rng.next_uniform(-1.0, 1.0);
            case Kind::gaussian:
                return d.mean + d.sigma * rng.next_gaussian();
            case Kind::table: {
                double u = rng.next_double() * cdf.back();
                auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
                std::size_t i = std::min<std::size_t>(
                    cdf.size() - 2, static_cast<std::size_t>(it - cdf.begin()) - 1);
                double span = cdf[i + 1] - cdf[i];
                double t = span > 0.0 ? (u - cdf[i]) / span : 0.5;
                return d.density[i].first + t * (d.density[i + 1].first - d.density[i].first);
            }
        }
        return 0.0;
    };

    std::vector<std::complex<double>> values;
    values.reserve(n);
    double sum_re2 = 0.0, sum_im2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        std::complex<double> z = std::polar(1.0, kPi * draw());
        values.push_back(z);
        sum_re2 += z.real() * z.real();
        sum_im2 += z.imag() * z.imag();
    }
    std::complex<double> total = pairwise_sum(values);
    MonteCarloAmplitude out;
    out.samples = n;
    out.mean = total / static_cast<double>(n);
    double var_re = sum_re2 / n - out.mean.real() * out.mean.real();
    double var_im = sum_im2 / n - out.mean.imag() * out.mean.imag();
    out.stderr_est = std::sqrt(std::max(0.0, var_re + var_im) / static_cast<double>(n));
    return out;
}

double phase_rate(double c_magnitude, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("phase_rate: h must be > 0");
    return kPi * c_magnitude / h;
}

void WalkConfig::validate() const {
    if (!(h > 0.0)) throw std::invalid_argument("WalkConfig: h must be > 0");
    if (!(T > 0.0)) throw std::invalid_argument("WalkConfig: T must be > 0");
    if (!(mean_passage > 0.0)) throw std::invalid_argument("WalkConfig: mean_passage must be > 0");
    if (!(speed > 0.0)) throw std::invalid_argument("WalkConfig: speed must be > 0");
    if (paths < 1) throw std::invalid_argument("WalkConfig: paths must be >= 1");
}

Vec3 WalkPath::endpoint() const {
    Vec3 p = start;
    for (const auto& leg : passages) p += leg.dxi;
    return p;
}

double WalkPath::total_phase() const {
    double s = 0.0;
    for (double v : phase_increments) s += v;
    return s;
}

double WalkPath::action(double h) const {
    return total_phase() * h / kPi;
}

WalkPath sample_walk(const WalkConfig& cfg, const LagrangianFn& lagrangian,
                     std::uint64_t path_index) {
    cfg.validate();
    SplitMix64 rng(derive_stream(cfg.seed, path_index));

    WalkPath path;
    path.start = cfg.start;
    Vec3 pos = cfg.start;
    double consumed = 0.0;
    double rate = kPi / cfg.h;
    while (consumed < cfg.T) {
        double dtau = rng.next_exponential(cfg.mean_passage);
        if (consumed + dtau >= cfg.T) dtau = cfg.T - consumed;  // truncate the last passage
        Vec3 vel = cfg.speed * rng.next_unit_vector3();
        if (dtau > 0.0) {
            Vec3 dxi = dtau * vel;
            Vec3 mid = pos + 0.5 * dxi;
            path.passages.push_back({dtau, dxi});
            path.phase_increments.push_back(rate * lagrangian(mid, vel) * dtau);
            pos += dxi;
        }
        consumed += dtau;
        if (dtau == 0.0) break;
    }
    return path;
}

std::complex<double> path_amplitude(const WalkPath& path) {
    double s = path.total_phase();
    return std::polar(std::exp(-s), s);
}

namespace {

struct EnsembleEntry {
    double action = 0.0;
    std::complex<double> amplitude{};
    bool negative_phase = false;
};

std::vector<EnsembleEntry> collect_paths(const WalkConfig& cfg, const LagrangianFn& lagrangian,
                                         const std::optional<EndpointFilter>& filter,
                                         AmplitudeMode mode) {
    cfg.validate();
    std::vector<EnsembleEntry> kept;
    kept.reserve(cfg.paths);
    for (std::uint64_t i = 0; i < cfg.paths; ++i) {
        WalkPath path = sample_walk(cfg, lagrangian, i);
        if (filter && norm(path.endpoint() - filter->center) > filter->radius) continue;
        EnsembleEntry e;
        e.action = path.action(cfg.h);
        if (mode == AmplitudeMode::walk) {
            e.amplitude = path_amplitude(path);
        } else {
            SplitMix64 ctrl(derive_stream(cfg.seed ^ 0xC0117801u, i));
            e.amplitude = std::polar(1.0, ctrl.next_uniform(0.0, 2.0 * kPi));
        }
        for (double v : path.phase_increments)
            if (v < 0.0) e.negative_phase = true;
        kept.push_back(e);
    }
    return kept;
}

}  // namespace

AmplitudeSummary amplitude_sum(const WalkConfig& cfg, const LagrangianFn& lagrangian,
                               const std::optional<EndpointFilter>& filter) {
    if (cfg.paths < 100)
        throw std::invalid_argument("amplitude_sum: need >= 100 paths for statistical output");
    auto kept = collect_paths(cfg, lagrangian, filter, AmplitudeMode::walk);
    if (kept.empty())
        throw insufficient_sample_error("amplitude_sum: no path survived the endpoint filter");

    AmplitudeSummary out;
    out.paths_total = cfg.paths;
    out.paths_kept = kept.size();
    std::vector<std::complex<double>> values;
    values.reserve(kept.size());
    for (const auto& e : kept) {
        values.push_back(e.amplitude);
        if (e.negative_phase) ++out.negative_phase_paths;
    }
    double sum_re2 = 0.0, sum_im2 = 0.0;
    for (const auto& z : values) {
        sum_re2 += z.real() * z.real();
        sum_im2 += z.imag() * z.imag();
    }
    out.sum = pairwise_sum(values);
    double n = static_cast<double>(out.paths_kept);
    out.mean = out.sum / n;
    out.modulus = std::abs(out.mean);
    out.phase = std::arg(out.mean);
    double var_re = sum_re2 / n - out.mean.real() * out.mean.real();
    double var_im = sum_im2 / n - out.mean.imag() * out.mean.imag();
    out.stderr_est = std::sqrt(std::max(0.0, var_re + var_im) / n);
    return out;
}

std::size_t ActionHistogram::bin_of(double action) const {
    if (bins.empty()) throw std::logic_error("ActionHistogram: empty");
    if (action_max <= action_min) return 0;
    double t = (action - action_min) / (action_max - action_min);
    auto idx = static_cast<std::ptrdiff_t>(t * static_cast<double>(bins.size()));
    idx = std::clamp<std::ptrdiff_t>(idx, 0, static_cast<std::ptrdiff_t>(bins.size()) - 1);
    return static_cast<std::size_t>(idx);
}

std::size_t ActionHistogram::peak_bin() const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < bins.size(); ++i)
        if (bins[i].modulus_sum > bins[best].modulus_sum) best = i;
    return best;
}

ActionHistogram action_histogram(const WalkConfig& cfg, const LagrangianFn& lagrangian,
                                 std::size_t bins, const std::optional<EndpointFilter>& filter,
                                 AmplitudeMode mode) {
    if (bins < 1) throw std::invalid_argument("action_histogram: need >= 1 bin");
    auto kept = collect_paths(cfg, lagrangian, filter, mode);
    if (kept.empty())
        throw insufficient_sample_error("action_histogram: no path survived the endpoint filter");

    double lo = kept.front().action, hi = lo;
    for (const auto& e : kept) {
        lo = std::min(lo, e.action);
        hi = std::max(hi, e.action);
    }
    ActionHistogram out;
    if (hi - lo <= 1e-15 * std::max(1.0, std::fabs(lo))) {
        // Degenerate spread collapses to a single bin.
        bins = 1;
        hi = lo;
    }
    out.action_min = lo;
    out.action_max = hi;
    out.bins.resize(bins);
    double width = (bins > 0 && hi > lo) ? (hi - lo) / static_cast<double>(bins) : 0.0;
    for (std::size_t i = 0; i < bins; ++i) {
        out.bins[i].lo = lo + width * static_cast<double>(i);
        out.bins[i].hi = (i + 1 == bins) ? hi : lo + width * static_cast<double>(i + 1);
    }

    std::vector<std::vector<std::complex<double>>> buckets(bins);
    for (const auto& e : kept) {
        std::size_t b = out.bin_of(e.action);
        buckets[b].push_back(e.amplitude);
        out.bins[b].count += 1;
    }
    for (std::size_t i = 0; i < bins; ++i) {
        out.bins[i].amplitude_sum = pairwise_sum(buckets[i]);
        out.bins[i].modulus_sum = std::abs(out.bins[i].amplitude_sum);
    }
    return out;
}

}  // namespace windsim::stochastic
