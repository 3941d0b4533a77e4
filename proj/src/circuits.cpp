#include "oqsim/circuits.hpp"

#include "oqsim/oq.hpp"
#include "oqsim/parallel.hpp"

#include <cmath>
#include <stdexcept>

namespace oqsim {

GateU rx(double alpha) {
    ComplexMatrix m = std::cos(alpha / 2.0) * identity(2) -
                      Complex(0, 1) * std::sin(alpha / 2.0) * pauli_x();
    return GateU{std::move(m), 1, "rx"};
}

GateU cnot() {
    ComplexMatrix m = ComplexMatrix::Zero(4, 4);
    m(0, 0) = 1.0;
    m(1, 1) = 1.0;
    m(2, 3) = 1.0;
    m(3, 2) = 1.0;
    return GateU{std::move(m), 2, "cnot"};
}

Ket psi_alpha(double alpha) {
    if (alpha < 0.0 || alpha > kPi) {
        throw std::domain_error("psi_alpha: alpha must lie in [0, pi]");
    }
    ComplexVector in = ComplexVector::Zero(4);
    in(0) = 1.0;
    return Ket(cnot().matrix * kron(rx(alpha).matrix, identity(2)) * in);
}

double negativity_baseline(const DensityMatrix& rho) {
    if (rho.dim() != 4) {
        throw std::invalid_argument("negativity_baseline: two-qubit state required");
    }
    return trace_norm(partial_transpose(rho, Subsystem::second)) - 1.0;
}

namespace {

SweepRecord ideal_point(double alpha) {
    DensityMatrix rho = DensityMatrix::pure(psi_alpha(alpha));
    SweepRecord rec;
    rec.alpha_rad = alpha;
    rec.raw = marginal_negativity(rho, 0.0, 0.0);
    rec.baseline = negativity_baseline(rho);
    return rec;
}

}  // namespace

std::vector<SweepRecord> ideal_sweep(int alpha_steps, int threads) {
    if (alpha_steps < 2) {
        throw std::invalid_argument("ideal_sweep: need at least 2 steps");
    }
    std::vector<SweepRecord> records(alpha_steps);
    const double step = kPi / (alpha_steps - 1);
    parallel_for(alpha_steps, threads,
                 [&](std::ptrdiff_t i) { records[i] = ideal_point(i * step); });
    normalize_raw(records);
    return records;
}

std::vector<SweepRecord> ideal_sweep_serial(int alpha_steps) {
    if (alpha_steps < 2) {
        throw std::invalid_argument("ideal_sweep: need at least 2 steps");
    }
    std::vector<SweepRecord> records(alpha_steps);
    const double step = kPi / (alpha_steps - 1);
    for (int i = 0; i < alpha_steps; ++i) {
        records[i] = ideal_point(i * step);
    }
    normalize_raw(records);
    return records;
}

}  // namespace oqsim
