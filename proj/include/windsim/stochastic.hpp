#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "windsim/vec.hpp"

namespace windsim::stochastic {

struct insufficient_sample_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Expectation of e^{i*pi*x}: modulus p and phase alpha as the coefficient of
// pi, alpha in [0, 2).
struct ComplexAmplitude {
    double p = 0.0;
    double alpha = 0.0;

    std::complex<double> value() const;
    static ComplexAmplitude from_complex(std::complex<double> z);
};

// Distribution of the line coordinate that gets compactified into the circle.
struct CircularDistribution {
    enum class Kind { delta, uniform_line, uniform, gaussian, table };

    Kind kind = Kind::delta;
    double alpha = 0.0;       // delta: point mass at x = alpha
    double center = 0.0;      // uniform
    double half_width = 0.0;  // uniform
    double mean = 0.0;        // gaussian
    double sigma = 1.0;       // gaussian
    // table: sorted (x, density) samples, trapezoid-normalized to 1 within 1e-9.
    std::vector<std::pair<double, double>> density;

    static CircularDistribution make_delta(double alpha);
    static CircularDistribution make_uniform_line();
    static CircularDistribution make_uniform(double center, double half_width);
    static CircularDistribution make_gaussian(double mean, double sigma);
    static CircularDistribution make_table(std::vector<std::pair<double, double>> density);
};

// Closed form for the named kinds, composite-Simpson quadrature for tables.
ComplexAmplitude circular_expectation(const CircularDistribution& d);

struct MonteCarloAmplitude {
    std::complex<double> mean{};
    double stderr_est = 0.0;
    std::size_t samples = 0;
};

// Sample-mean estimate of the same expectation.
MonteCarloAmplitude circular_expectation_mc(const CircularDistribution& d, std::size_t n,
                                            std::uint64_t seed);

// Angular advance per unit time of a flow with circumference h: pi*|c|/h.
double phase_rate(double c_magnitude, double h);

struct WalkConfig {
    double h = 1.0;             // circumference of one turn
    double T = 1.0;             // total evolution time
    double mean_passage = 0.1;  // mean free-passage duration
    std::uint64_t seed = 0;
    std::size_t paths = 1000;
    double speed = 1.0;         // free-passage speed (fixed; direction isotropic)
    Vec3 start{};

    void validate() const;
};

// L(position, velocity) evaluated at the passage midpoint.
using LagrangianFn = std::function<double(const Vec3&, const Vec3&)>;

struct Passage {
    double dtau = 0.0;
    Vec3 dxi{};
};

struct WalkPath {
    std::vector<Passage> passages;
    std::vector<double> phase_increments;  // (pi/h) * L * dtau per passage
    Vec3 start{};

    Vec3 endpoint() const;
    double total_phase() const;
    // Accumulated action integral of L dtau, i.e. (h/pi) * total phase.
    double action(double h) const;
};

// One Markov free-passage chain; the RNG stream is derived from
// (cfg.seed, path_index) so replay is bitwise exact and paths are independent.
WalkPath sample_walk(const WalkConfig& cfg, const LagrangianFn& lagrangian,
                     std::uint64_t path_index = 0);

// Product over passages of e^{-dphi} e^{i*dphi}.
std::complex<double> path_amplitude(const WalkPath& path);

struct EndpointFilter {
    Vec3 center{};
    double radius = 0.0;
};

struct AmplitudeSummary {
    std::complex<double> sum{};   // unnormalized over kept paths
    std::complex<double> mean{};  // per-kept-path
    double modulus = 0.0;
    double phase = 0.0;  // arg(mean)
    double stderr_est = 0.0;
    std::size_t paths_total = 0;
    std::size_t paths_kept = 0;
    std::size_t negative_phase_paths = 0;  // paths with any dphi < 0, flagged
};

// Monte Carlo mean of path_amplitude over the ensemble; requires >= 100 paths
// and a nonempty post-filter ensemble. Summation is pairwise.
AmplitudeSummary amplitude_sum(const WalkConfig& cfg, const LagrangianFn& lagrangian,
                               const std::optional<EndpointFilter>& filter = std::nullopt);

struct HistogramBin {
    double lo = 0.0;
    double hi = 0.0;
    std::complex<double> amplitude_sum{};
    double modulus_sum = 0.0;  // |sum of amplitudes| in the bin
    std::size_t count = 0;
};

enum class AmplitudeMode {
    walk,                  // physical amplitudes e^{-dphi} e^{i dphi}
    random_phase_control,  // unit-modulus amplitudes with uniform phases
};

struct ActionHistogram {
    std::vector<HistogramBin> bins;
    double action_min = 0.0;
    double action_max = 0.0;

    // Index of the bin containing the given action value.
    std::size_t bin_of(double action) const;
    std::size_t peak_bin() const;  // argmax of modulus_sum
};

// Endpoint-filtered paths binned by the action integral of L dtau, with the
// complex amplitudes summed per bin.
ActionHistogram action_histogram(const WalkConfig& cfg, const LagrangianFn& lagrangian,
                                 std::size_t bins,
                                 const std::optional<EndpointFilter>& filter = std::nullopt,
                                 AmplitudeMode mode = AmplitudeMode::walk);

// Pairwise (cascade) summation; error grows like log n instead of n.
std::complex<double> pairwise_sum(std::vector<std::complex<double>>& values);

}  // namespace windsim::stochastic
