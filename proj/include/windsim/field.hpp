#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "windsim/vec.hpp"

namespace windsim::field {

// Queries inside this radius of a feature are domain errors, not clamped
// values.
inline constexpr double kSingularityRadius = 1e-9;
inline constexpr double kMinFeatureSeparation = 1e-9;

inline constexpr double kGradientStep = 1e-5;   // central differences
inline constexpr double kLaplacianStep = 1e-3;  // 7-point stencil

struct singularity_error : std::domain_error {
    using std::domain_error::domain_error;
};

struct direction_undefined_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Point source of the scalar potential, phi contribution -mu / |x - pos|.
struct PointFeature {
    Vec3 position{};
    double mu = 1.0;
};

class FeatureSet {
  public:
    FeatureSet() = default;
    explicit FeatureSet(std::vector<PointFeature> features);

    static FeatureSet from_json_text(const std::string& text);
    static FeatureSet from_json_file(const std::string& path);

    const std::vector<PointFeature>& features() const { return features_; }
    bool empty() const { return features_.empty(); }
    std::size_t size() const { return features_.size(); }

    // Distance to the nearest feature; +inf when empty.
    double min_distance(const Vec3& x) const;

  private:
    std::vector<PointFeature> features_;
};

struct FieldSample {
    Vec3 position{};
    double phi = 0.0;
    Vec3 grad{};
};

// phi(x) = -sum_i mu_i / |x - x_i|; harmonic away from the sources.
double potential(const FeatureSet& fs, const Vec3& x);

// Analytic gradient sum_i mu_i (x - x_i) / |x - x_i|^3.
Vec3 grad_potential(const FeatureSet& fs, const Vec3& x);

// Central-difference gradient of the potential (oracle companion).
Vec3 grad_potential_fd(const FeatureSet& fs, const Vec3& x, double h = kGradientStep);

// 7-point stencil Laplacian; near zero away from the sources.
double laplacian(const FeatureSet& fs, const Vec3& x, double h = kLaplacianStep);

// Unit vector field g(x): the global field c boosted by the hyperbolic angle
// |phi(x)| in the plane of c and the feature direction. Minkowski norm is 1
// wherever defined; the spatial part points toward the features (along
// -grad phi), so point dynamics driven by g attract.
Vec4 unit_field(const FeatureSet& fs, const Vec3& x, const Vec4& c);

// max_{i<j} |d_i F_j - d_j F_i| by central differences; ~0 for gradient
// fields.
using VectorField3 = std::function<Vec3(const Vec3&)>;
double closedness_residual(const VectorField3& field, const Vec3& x, double h = kGradientStep);
double closedness_residual(const FeatureSet& fs, const Vec3& x, double h = kGradientStep);

}  // namespace windsim::field
