#pragma once

#include "oqsim/oq.hpp"
#include "oqsim/sweep.hpp"

#include <iosfwd>
#include <utility>

namespace oqsim {

struct SurfaceSample {
    double theta1 = 0.0;
    double theta2 = 0.0;
    double strength = 0.0;
};

struct BasisOptimum {
    double theta1 = 0.0;
    double theta2 = 0.0;
    double strength = 0.0;
    /// row-major coarse grid (theta1-major) when requested
    std::vector<SurfaceSample> surface;
};

/// Maximize marginal_negativity(rho, θ₁, θ₂) over [0, π/2]²: a coarse grid
/// scan followed by shrinking-box refinement, halving the box around the
/// incumbent each iteration.  Ties break to the smallest θ₁, then θ₂, so a
/// flat zero surface reports the origin.
BasisOptimum optimize_basis(const DensityMatrix& rho, int coarse_steps = 64,
                            int refine_iters = 20, bool keep_surface = false,
                            int threads = 0);

/// Plain-loop reference for the parallel grid scan above.
BasisOptimum optimize_basis_serial(const DensityMatrix& rho, int coarse_steps = 64,
                                   int refine_iters = 20, bool keep_surface = false);

/// Marginal-OQ strength of each (tau, state) pair at fixed angles, with the
/// partial-transpose baseline; `normalized` is raw over the sweep maximum.
std::vector<SweepRecord> strength_sweep(
    const std::vector<std::pair<double, DensityMatrix>>& states, double theta1,
    double theta2, int threads = 0);
std::vector<SweepRecord> strength_sweep_serial(
    const std::vector<std::pair<double, DensityMatrix>>& states, double theta1,
    double theta2);

// header `theta1_rad,theta2_rad,strength`
void write_surface_csv(std::ostream& out, const std::vector<SurfaceSample>& surface);

}  // namespace oqsim
