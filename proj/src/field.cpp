#include "windsim/field.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "windsim/frames.hpp"
#include "json.hpp"

namespace windsim::field {

FeatureSet::FeatureSet(std::vector<PointFeature> features) : features_(std::move(features)) {
    for (std::size_t i = 0; i < features_.size(); ++i) {
        const auto& f = features_[i];
        if (!(f.mu > 0.0) || !std::isfinite(f.mu))
            throw std::invalid_argument("FeatureSet: mu must be finite and > 0");
        if (!finite(f.position)) throw std::invalid_argument("FeatureSet: non-finite position");
        for (std::size_t j = 0; j < i; ++j)
            if (norm(f.position - features_[j].position) <= kMinFeatureSeparation)
                throw std::invalid_argument("FeatureSet: feature positions must be pairwise distinct");
    }
}

FeatureSet FeatureSet::from_json_text(const std::string& text) {
    nlohmann::json doc = nlohmann::json::parse(text);
    std::vector<PointFeature> fs;
    for (const auto& item : doc.at("features")) {
        PointFeature f;
        auto pos = item.at("pos");
        f.position = {pos.at(0).get<double>(), pos.at(1).get<double>(), pos.at(2).get<double>()};
        f.mu = item.value("mu", 1.0);
        fs.push_back(f);
    }
    return FeatureSet(std::move(fs));
}

FeatureSet FeatureSet::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("FeatureSet: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

double FeatureSet::min_distance(const Vec3& x) const {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& f : features_) d = std::min(d, norm(x - f.position));
    return d;
}

namespace {
void check_domain(const FeatureSet& fs, const Vec3& x) {
    if (!finite(x)) throw std::invalid_argument("field: non-finite query point");
    if (fs.min_distance(x) <= kSingularityRadius)
        throw singularity_error("field: query inside a feature's singularity radius");
}
}  // namespace

double potential(const FeatureSet& fs, const Vec3& x) {
    check_domain(fs, x);
    double phi = 0.0;
    for (const auto& f : fs.features()) phi -= f.mu / norm(x - f.position);
    return phi;
}

Vec3 grad_potential(const FeatureSet& fs, const Vec3& x) {
    check_domain(fs, x);
    Vec3 g{};
    for (const auto& f : fs.features()) {
        Vec3 d = x - f.position;
        double r = norm(d);
        g += (f.mu / (r * r * r)) * d;
    }
    return g;
}

Vec3 grad_potential_fd(const FeatureSet& fs, const Vec3& x, double h) {
    auto at = [&](double dx, double dy, double dz) {
        return potential(fs, {x.x + dx, x.y + dy, x.z + dz});
    };
    return {(at(h, 0, 0) - at(-h, 0, 0)) / (2.0 * h),
            (at(0, h, 0) - at(0, -h, 0)) / (2.0 * h),
            (at(0, 0, h) - at(0, 0, -h)) / (2.0 * h)};
}

double laplacian(const FeatureSet& fs, const Vec3& x, double h) {
    double center = potential(fs, x);
    double acc = 0.0;
    acc += potential(fs, {x.x + h, x.y, x.z}) + potential(fs, {x.x - h, x.y, x.z});
    acc += potential(fs, {x.x, x.y + h, x.z}) + potential(fs, {x.x, x.y - h, x.z});
    acc += potential(fs, {x.x, x.y, x.z + h}) + potential(fs, {x.x, x.y, x.z - h});
    return (acc - 6.0 * center) / (h * h);
}

Vec4 unit_field(const FeatureSet& fs, const Vec3& x, const Vec4& c) {
    double phi = potential(fs, x);
    Vec3 g = grad_potential(fs, x);
    double gn = norm(g);
    if (gn == 0.0) {
        if (phi == 0.0) return c;
        throw direction_undefined_error("unit_field: grad phi vanishes at a point with phi != 0");
    }
    // Unit spacelike direction toward the features, orthogonalized against c.
    Vec3 d = (-1.0 / gn) * g;
    Vec4 s_raw = make_vec4(0.0, d);
    Vec4 s = s_raw - frames::minkowski_inner(s_raw, c) * c;
    double s2 = -frames::minkowski_inner(s, s);
    if (!(s2 > 0.0)) throw direction_undefined_error("unit_field: degenerate boost direction");
    s *= 1.0 / std::sqrt(s2);
    double eta = std::fabs(phi);
    return std::cosh(eta) * c + std::sinh(eta) * s;
}

double closedness_residual(const VectorField3& fieldfn, const Vec3& x, double h) {
    // Jacobian by central differences.
    double jac[3][3];
    for (int j = 0; j < 3; ++j) {
        Vec3 xp = x, xm = x;
        double* cp = j == 0 ? &xp.x : (j == 1 ? &xp.y : &xp.z);
        double* cm = j == 0 ? &xm.x : (j == 1 ? &xm.y : &xm.z);
        *cp += h;
        *cm -= h;
        Vec3 fp = fieldfn(xp);
        Vec3 fm = fieldfn(xm);
        jac[0][j] = (fp.x - fm.x) / (2.0 * h);
        jac[1][j] = (fp.y - fm.y) / (2.0 * h);
        jac[2][j] = (fp.z - fm.z) / (2.0 * h);
    }
    double worst = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            worst = std::max(worst, std::fabs(jac[i][j] - jac[j][i]));
    return worst;
}

double closedness_residual(const FeatureSet& fs, const Vec3& x, double h) {
    if (fs.empty()) return 0.0;
    return closedness_residual([&fs](const Vec3& p) { return grad_potential(fs, p); }, x, h);
}

}  // namespace windsim::field
