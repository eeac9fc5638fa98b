#include "windsim/evolution.hpp"

#include <algorithm>
#include <cmath>

#include "windsim/rng.hpp"

namespace windsim::evolution {

namespace {
constexpr double kHalfPi = 1.57079632679489661923132169163975144;

bool contains(const std::vector<int>& v, int i) {
    return std::find(v.begin(), v.end(), i) != v.end();
}
}  // namespace

void DirectionLattice::validate() const {
    if (angles.empty()) throw std::invalid_argument("DirectionLattice: empty lattice");
    if (!(dx > 0.0)) throw std::invalid_argument("DirectionLattice: dx must be > 0");
    for (double a : angles)
        if (!(a >= 0.0 && a <= kHalfPi))
            throw std::invalid_argument("DirectionLattice: angles must lie in [0, pi/2]");
    auto check_sites = [&](const std::vector<int>& sites, const char* what) {
        for (std::size_t i = 0; i < sites.size(); ++i) {
            if (sites[i] < 0 || sites[i] >= size())
                throw std::invalid_argument(std::string("DirectionLattice: ") + what + " out of range");
            for (std::size_t j = 0; j < i; ++j)
                if (sites[i] == sites[j])
                    throw std::invalid_argument(std::string("DirectionLattice: duplicate ") + what);
        }
    };
    check_sites(defects, "defect index");
    check_sites(walls, "wall index");
    for (int d : defects)
        if (contains(walls, d))
            throw std::invalid_argument("DirectionLattice: site is both defect and wall");
}

bool DirectionLattice::is_defect(int i) const { return contains(defects, i); }
bool DirectionLattice::is_wall(int i) const { return contains(walls, i); }

void EvolutionConfig::validate() const {
    if (!(dtau > 0.0)) throw std::invalid_argument("EvolutionConfig: dtau must be > 0");
    if (!(rate > 0.0)) throw std::invalid_argument("EvolutionConfig: rate must be > 0");
    if (noise < 0.0) throw std::invalid_argument("EvolutionConfig: noise must be >= 0");
    if (steps < 1) throw std::invalid_argument("EvolutionConfig: steps must be >= 1");
    if (stencil < 1) throw std::invalid_argument("EvolutionConfig: stencil must be >= 1");
}

DirectionLattice make_lattice(int sites, double dx, double angle0, double noise,
                              std::uint64_t seed, std::vector<int> defects,
                              std::vector<int> walls) {
    if (sites < 1) throw std::invalid_argument("make_lattice: need >= 1 site");
    DirectionLattice l;
    l.dx = dx;
    l.defects = std::move(defects);
    l.walls = std::move(walls);
    l.angles.resize(sites, angle0);
    if (noise > 0.0) {
        SplitMix64 rng(derive_stream(seed, "lattice-init"));
        for (double& a : l.angles)
            a = std::clamp(a + noise * rng.next_uniform(-1.0, 1.0), 0.0, kHalfPi);
    }
    for (int d : l.defects) l.angles[d] = 0.0;
    for (int w : l.walls) l.angles[w] = kHalfPi;
    l.validate();
    return l;
}

double flux_functional(const DirectionLattice& l) {
    double acc = 0.0;
    for (int i = 0; i < l.size(); ++i)
        if (!l.is_defect(i)) acc += std::sin(l.angles[i]) * l.dx;
    return acc;
}

DirectionLattice evolve_step(const DirectionLattice& l, const EvolutionConfig& cfg) {
    cfg.validate();
    DirectionLattice out = l;
    for (int i = 0; i < l.size(); ++i) {
        if (l.is_defect(i) || l.is_wall(i)) continue;
        // cos(angle) is the local flux gradient; clamp keeps the ascent inside
        // the physical quadrant.
        double a = l.angles[i] + cfg.rate * std::cos(l.angles[i]) * cfg.dtau;
        out.angles[i] = std::clamp(a, 0.0, kHalfPi);
    }
    return out;
}

namespace {

// Mean sin(angle) over the `stencil` sites on one side of i (direction +-1).
double side_stability(const DirectionLattice& l, const EvolutionConfig& cfg, int i, int dir) {
    int n = l.size();
    double acc = 0.0;
    int counted = 0;
    for (int k = 1; k <= cfg.stencil; ++k) {
        int j = i + dir * k;
        if (cfg.periodic) {
            j = ((j % n) + n) % n;
        } else if (j < 0 || j >= n) {
            break;
        }
        acc += std::sin(l.angles[j]);
        ++counted;
    }
    return counted > 0 ? acc / counted : 0.0;
}

double periodic_distance(int a, int b, int n, bool periodic) {
    int d = std::abs(a - b);
    if (periodic) d = std::min(d, n - d);
    return static_cast<double>(d);
}

}  // namespace

DriftResult defect_drift(const DirectionLattice& l, const EvolutionConfig& cfg) {
    cfg.validate();
    l.validate();
    if (l.defects.size() < 2) throw std::invalid_argument("defect_drift: need >= 2 defects");

    DriftResult res;
    res.lattice = l;
    res.separations.reserve(cfg.steps);

    for (long step = 0; step < cfg.steps; ++step) {
        res.lattice = evolve_step(res.lattice, cfg);

        // Decide all moves against the pre-move state, then apply.
        DirectionLattice& cur = res.lattice;
        std::vector<int> moved = cur.defects;
        std::vector<bool> absorbed(cur.defects.size(), false);
        for (std::size_t di = 0; di < cur.defects.size(); ++di) {
            int i = cur.defects[di];
            double left = side_stability(cur, cfg, i, -1);
            double right = side_stability(cur, cfg, i, +1);
            if (std::fabs(left - right) <= 1e-12) continue;  // tie holds position
            int dir = (left < right) ? -1 : +1;  // toward the less stable side
            int target = i + dir;
            if (cfg.periodic)
                target = ((target % cur.size()) + cur.size()) % cur.size();
            else if (target < 0 || target >= cur.size())
                continue;
            if (cur.is_wall(target)) continue;  // drift stalls at a pinned wall
            if (contains(cur.defects, target)) {
                // Stepping onto another defect: the mover is absorbed.
                absorbed[di] = true;
                res.merges.push_back({step, target});
                continue;
            }
            moved[di] = target;
        }

        // Apply moves; defects converging onto the same site merge.
        std::vector<int> next;
        for (std::size_t di = 0; di < moved.size(); ++di) {
            if (absorbed[di]) continue;
            if (contains(next, moved[di])) {
                res.merges.push_back({step, moved[di]});
                continue;
            }
            next.push_back(moved[di]);
        }
        for (int d : cur.defects)
            if (!contains(next, d)) cur.angles[d] = 0.0;  // freed site starts relaxing from 0
        cur.defects = next;
        for (int d : cur.defects) cur.angles[d] = 0.0;

        double sep = 0.0;
        if (cur.defects.size() >= 2) {
            sep = static_cast<double>(cur.size());
            for (std::size_t a = 0; a < cur.defects.size(); ++a)
                for (std::size_t b = a + 1; b < cur.defects.size(); ++b)
                    sep = std::min(sep, periodic_distance(cur.defects[a], cur.defects[b],
                                                          cur.size(), cfg.periodic));
        }
        res.separations.push_back(sep);
        res.flux.push_back(flux_functional(cur));
        res.defect_positions.push_back(cur.defects);
    }
    return res;
}

}  // namespace windsim::evolution
