#pragma once

#include "oqsim/qcore.hpp"

#include <utility>
#include <vector>

namespace oqsim {

/// Two-outcome ±1 observable decomposed into orthogonal projectors,
/// matrix = proj0 - proj1; outcome bit 0 corresponds to eigenvalue +1.
struct DichotomicObservable {
    ComplexMatrix matrix;
    ComplexMatrix proj0;
    ComplexMatrix proj1;
    std::string label;

    DichotomicObservable(ComplexMatrix m, ComplexMatrix p0, ComplexMatrix p1,
                         std::string name);
};

enum class Pauli { x, y, z };

DichotomicObservable pauli_observable(Pauli kind);

/// The rotated equatorial observables
///   σ₁(θ₁) = cos θ₁ σx - sin θ₁ σy,
///   σ₂(θ₂) = sin θ₂ σx + cos θ₂ σy,
/// with 0 ≤ θ ≤ π/2; rotated_pair(0, 0) = (σx, σy).  Projectors are built
/// from the closed-form equatorial eigenvectors, not a numeric eigensolver.
std::pair<DichotomicObservable, DichotomicObservable> rotated_pair(double theta1,
                                                                   double theta2);

/// Measurement selection per time slot, n_k ∈ {0,1}, length K.
using ConfigTuple = std::vector<int>;

/// A 2x2 observable lifted to the full space of n_subsystems qubits.
struct LiftedObservable {
    ComplexMatrix proj0;
    ComplexMatrix proj1;
};

LiftedObservable lift(const DichotomicObservable& obs, int subsystem,
                      int n_subsystems);

/// One step of a projective chain: the lifted observable and the recorded
/// outcome bit.
struct SequentialStep {
    LiftedObservable observable;
    int outcome = 0;
};

/// Probability of an ordered chain of projective outcomes, each collapsing
/// the state before the next.
double sequential_probability(const DensityMatrix& rho,
                              const std::vector<SequentialStep>& steps);

/// Expectation C(n¹,…,n^N) of the selected measurements: at slot k every
/// subsystem whose configuration selects its k-th observable measures, and
/// outcomes enter with sign (-1)^(n·a).  The void configuration returns 1.
double expectation_config(const DensityMatrix& rho,
                          const std::vector<ConfigTuple>& configs,
                          const std::vector<std::vector<DichotomicObservable>>& observables);

}  // namespace oqsim
