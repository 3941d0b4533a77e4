#pragma once

#include "oqsim/qcore.hpp"
#include "oqsim/sweep.hpp"

namespace oqsim {

struct GateU {
    ComplexMatrix matrix;
    int arity = 1;
    std::string label;
};

/// Rx(α) = cos(α/2) 1 - i sin(α/2) σx.
GateU rx(double alpha);

/// CNOT with the first tensor factor as control.
GateU cnot();

/// |ψ(α)⟩ = CNOT (Rx(α) ⊗ 1) |00⟩ = cos(α/2)|00⟩ - i sin(α/2)|11⟩, α ∈ [0, π].
Ket psi_alpha(double alpha);

/// Partial-transpose negativity scaled so Bell states score 1:
/// 2·N(ρ) = ‖ρ^{T_B}‖₁ - 1.
double negativity_baseline(const DensityMatrix& rho);

/// Marginal-OQ strength of |ψ(α)⟩ at the (σx, σy) setting over a uniform
/// α grid on [0, π], normalized to the sweep maximum, with the negativity
/// baseline alongside.
std::vector<SweepRecord> ideal_sweep(int alpha_steps, int threads = 0);

/// Plain-loop reference for the parallel kernel above.
std::vector<SweepRecord> ideal_sweep_serial(int alpha_steps);

}  // namespace oqsim
