#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace windsim::evolution {

// Direction field on a discretized cylinder element: angle with the element
// at each site, clamped to [0, pi/2]. Defect sites are pinned at 0 (the flow
// line there has degenerated into a circle); wall sites are pinned at pi/2.
struct DirectionLattice {
    std::vector<double> angles;
    double dx = 1.0;
    std::vector<int> defects;
    std::vector<int> walls;

    void validate() const;
    int size() const { return static_cast<int>(angles.size()); }
    bool is_defect(int i) const;
    bool is_wall(int i) const;
};

struct EvolutionConfig {
    double dtau = 1e-2;
    long steps = 1000;
    double rate = 1.0;
    double noise = 0.0;  // initial fluctuation amplitude
    std::uint64_t seed = 0;
    int stencil = 3;           // sites per side for the drift stability average
    bool periodic = true;      // segment closed into the circumference

    void validate() const;
};

// Uniform lattice at angle0 with +-noise fluctuations; defect sites pinned 0.
DirectionLattice make_lattice(int sites, double dx, double angle0, double noise,
                              std::uint64_t seed, std::vector<int> defects = {},
                              std::vector<int> walls = {});

// Instantaneous mass flux through the segment: sum of sin(angle) * dx over
// non-defect sites.
double flux_functional(const DirectionLattice& l);

// One explicit gradient-ascent step on the flux: angle += rate*cos(angle)*dtau,
// clamped to [0, pi/2]; pinned sites stay fixed.
DirectionLattice evolve_step(const DirectionLattice& l, const EvolutionConfig& cfg);

struct MergeEvent {
    long step = 0;
    int site = 0;
};

struct DriftResult {
    std::vector<double> separations;  // min pairwise periodic separation per step
    std::vector<double> flux;         // flux_functional after each step
    std::vector<std::vector<int>> defect_positions;  // per step
    std::vector<MergeEvent> merges;
    DirectionLattice lattice;  // final state
};

// Relax the field and drift the defects one site per step toward the side with
// the lower stencil-averaged stability, i.e. toward the depression another
// defect carves out. Colliding defects merge (recorded). Needs >= 2 defects.
DriftResult defect_drift(const DirectionLattice& l, const EvolutionConfig& cfg);

}  // namespace windsim::evolution
