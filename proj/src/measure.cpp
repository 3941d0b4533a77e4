#include "oqsim/measure.hpp"

#include <cmath>
#include <stdexcept>

namespace oqsim {

DichotomicObservable::DichotomicObservable(ComplexMatrix m, ComplexMatrix p0,
                                           ComplexMatrix p1, std::string name)
    : matrix(std::move(m)), proj0(std::move(p0)), proj1(std::move(p1)),
      label(std::move(name)) {
    if (matrix.rows() != 2 || matrix.cols() != 2) {
        throw std::invalid_argument("DichotomicObservable: matrix must be 2x2");
    }
    if (!is_hermitian(matrix, 1e-10)) {
        throw std::invalid_argument("DichotomicObservable: matrix not Hermitian");
    }
    // eigenvalues exactly ±1  <=>  matrix² = 1 and trace 0
    if ((matrix * matrix - identity(2)).cwiseAbs().maxCoeff() > 1e-10 ||
        std::abs(matrix.trace()) > 1e-10) {
        throw std::invalid_argument(
            "DichotomicObservable: eigenvalues must be {+1, -1}");
    }
    if ((proj0 + proj1 - identity(2)).cwiseAbs().maxCoeff() > 1e-12 ||
        (proj0 * proj1).cwiseAbs().maxCoeff() > 1e-12 ||
        (matrix - (proj0 - proj1)).cwiseAbs().maxCoeff() > 1e-12) {
        throw std::invalid_argument("DichotomicObservable: inconsistent projectors");
    }
}

namespace {

// projector onto the +1 eigenvector of cos(φ)σx + sin(φ)σy
ComplexMatrix equatorial_proj(double phi) {
    ComplexMatrix p(2, 2);
    Complex off(std::cos(phi), -std::sin(phi));  // e^{-iφ}
    p << 0.5, 0.5 * off, 0.5 * std::conj(off), 0.5;
    return p;
}

DichotomicObservable equatorial_observable(double phi, std::string label) {
    ComplexMatrix p0 = equatorial_proj(phi);
    ComplexMatrix p1 = identity(2) - p0;
    return DichotomicObservable(p0 - p1, std::move(p0), std::move(p1),
                                std::move(label));
}

}  // namespace

DichotomicObservable pauli_observable(Pauli kind) {
    switch (kind) {
        case Pauli::x:
            return equatorial_observable(0.0, "sigma_x");
        case Pauli::y:
            return equatorial_observable(kPi / 2.0, "sigma_y");
        case Pauli::z: {
            ComplexMatrix p0 = ComplexMatrix::Zero(2, 2);
            ComplexMatrix p1 = ComplexMatrix::Zero(2, 2);
            p0(0, 0) = 1.0;
            p1(1, 1) = 1.0;
            return DichotomicObservable(pauli_z(), p0, p1, "sigma_z");
        }
    }
    throw std::invalid_argument("pauli_observable: unknown kind");
}

std::pair<DichotomicObservable, DichotomicObservable> rotated_pair(double theta1,
                                                                   double theta2) {
    if (!(theta1 >= 0.0 && theta1 <= kPi / 2.0) ||
        !(theta2 >= 0.0 && theta2 <= kPi / 2.0)) {
        throw std::domain_error("rotated_pair: angles must lie in [0, pi/2]");
    }
    // σ₁(θ₁) has Bloch angle -θ₁, σ₂(θ₂) has Bloch angle π/2 - θ₂
    return {equatorial_observable(-theta1, "sigma_1"),
            equatorial_observable(kPi / 2.0 - theta2, "sigma_2")};
}

LiftedObservable lift(const DichotomicObservable& obs, int subsystem,
                      int n_subsystems) {
    if (n_subsystems < 1 || subsystem < 0 || subsystem >= n_subsystems) {
        throw std::invalid_argument("lift: bad subsystem index");
    }
    LiftedObservable out{obs.proj0, obs.proj1};
    for (int i = subsystem - 1; i >= 0; --i) {
        out.proj0 = kron(identity(2), out.proj0);
        out.proj1 = kron(identity(2), out.proj1);
    }
    for (int i = subsystem + 1; i < n_subsystems; ++i) {
        out.proj0 = kron(out.proj0, identity(2));
        out.proj1 = kron(out.proj1, identity(2));
    }
    return out;
}

double sequential_probability(const DensityMatrix& rho,
                              const std::vector<SequentialStep>& steps) {
    ComplexMatrix state = rho.entries();
    for (const SequentialStep& step : steps) {
        const ComplexMatrix& p =
            step.outcome == 0 ? step.observable.proj0 : step.observable.proj1;
        if (p.rows() != state.rows()) {
            throw std::invalid_argument("sequential_probability: dimension mismatch");
        }
        state = p * state * p.adjoint();
    }
    Complex tr = state.trace();
    if (std::abs(tr.imag()) > 1e-12) {
        throw std::runtime_error("sequential_probability: complex trace residue");
    }
    double prob = tr.real();
    if (prob < 0.0 && prob > -1e-12) prob = 0.0;
    return prob;
}

double expectation_config(const DensityMatrix& rho,
                          const std::vector<ConfigTuple>& configs,
                          const std::vector<std::vector<DichotomicObservable>>& observables) {
    const int n = static_cast<int>(configs.size());
    if (n == 0 || observables.size() != configs.size()) {
        throw std::invalid_argument("expectation_config: shape mismatch");
    }
    const int k = static_cast<int>(configs[0].size());
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(configs[i].size()) != k ||
            static_cast<int>(observables[i].size()) != k) {
            throw std::invalid_argument("expectation_config: shape mismatch");
        }
    }

    // selected (subsystem, slot) pairs, slot-major so collapse order follows time
    std::vector<std::pair<int, int>> selected;
    for (int slot = 0; slot < k; ++slot) {
        for (int sub = 0; sub < n; ++sub) {
            if (configs[sub][slot] != 0) selected.emplace_back(sub, slot);
        }
    }
    if (selected.empty()) return 1.0;

    std::vector<LiftedObservable> lifted;
    lifted.reserve(selected.size());
    for (auto [sub, slot] : selected) {
        lifted.push_back(lift(observables[sub][slot], sub, n));
    }

    double total = 0.0;
    const int m = static_cast<int>(selected.size());
    std::vector<SequentialStep> steps(m);
    for (int bits = 0; bits < (1 << m); ++bits) {
        int parity = 0;
        for (int s = 0; s < m; ++s) {
            int outcome = (bits >> s) & 1;
            parity ^= outcome;
            steps[s] = SequentialStep{lifted[s], outcome};
        }
        double p = sequential_probability(rho, steps);
        total += parity ? -p : p;
    }
    return total;
}

}  // namespace oqsim
