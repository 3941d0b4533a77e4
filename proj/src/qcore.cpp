#include "oqsim/qcore.hpp"

#include <cmath>
#include <stdexcept>

namespace oqsim {

namespace {

void require_finite(const ComplexMatrix& m, const char* what) {
    if (!m.allFinite()) {
        throw std::runtime_error(std::string(what) + ": non-finite entries");
    }
}

double hermiticity_scale(const ComplexMatrix& m) {
    double norm = m.cwiseAbs().maxCoeff();
    return norm > 1.0 ? norm : 1.0;
}

}  // namespace

ComplexMatrix identity(Eigen::Index dim) {
    return ComplexMatrix::Identity(dim, dim);
}

ComplexMatrix pauli_x() {
    ComplexMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

ComplexMatrix pauli_y() {
    ComplexMatrix m(2, 2);
    m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    return m;
}

ComplexMatrix pauli_z() {
    ComplexMatrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol * hermiticity_scale(m);
}

bool is_unitary(const ComplexMatrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    ComplexMatrix gram = m.adjoint() * m;
    return (gram - identity(m.rows())).cwiseAbs().maxCoeff() <= tol;
}

Ket::Ket(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() == 0) {
        throw std::invalid_argument("Ket: empty amplitude vector");
    }
    if (!amplitudes_.allFinite()) {
        throw std::runtime_error("Ket: non-finite amplitudes");
    }
    double norm2 = amplitudes_.squaredNorm();
    if (std::abs(norm2 - 1.0) > 1e-12) {
        throw std::invalid_argument("Ket: squared norm " + std::to_string(norm2) +
                                    " deviates from 1 by more than 1e-12");
    }
}

Ket Ket::basis(Eigen::Index dim, Eigen::Index index) {
    if (index < 0 || index >= dim) {
        throw std::invalid_argument("Ket::basis: index out of range");
    }
    ComplexVector v = ComplexVector::Zero(dim);
    v(index) = 1.0;
    return Ket(std::move(v));
}

DensityMatrix::DensityMatrix(ComplexMatrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
        throw std::invalid_argument("DensityMatrix: must be square");
    }
    require_finite(entries_, "DensityMatrix");
    if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
        throw std::invalid_argument("DensityMatrix: not Hermitian within 1e-12");
    }
    if (std::abs(entries_.trace().real() - 1.0) > 1e-12 ||
        std::abs(entries_.trace().imag()) > 1e-12) {
        throw std::invalid_argument("DensityMatrix: trace deviates from 1");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(entries_, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -1e-10) {
        throw std::invalid_argument("DensityMatrix: negative eigenvalue below -1e-10");
    }
}

DensityMatrix DensityMatrix::pure(const Ket& psi) {
    const ComplexVector& v = psi.amplitudes();
    return DensityMatrix(v * v.adjoint());
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexMatrix propagator(const ComplexMatrix& h, double duration_s) {
    if (!is_hermitian(h, 1e-10)) {
        throw std::invalid_argument("propagator: Hamiltonian is not Hermitian within 1e-10");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    ComplexVector phases(h.rows());
    for (Eigen::Index k = 0; k < h.rows(); ++k) {
        double angle = -2.0 * kPi * solver.eigenvalues()(k) * duration_s;
        phases(k) = Complex(std::cos(angle), std::sin(angle));
    }
    ComplexMatrix u = solver.eigenvectors() * phases.asDiagonal() *
                      solver.eigenvectors().adjoint();
    require_finite(u, "propagator");
    return u;
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, Subsystem which) {
    if (m.rows() != 4 || m.cols() != 4) {
        throw std::invalid_argument("partial_transpose: only dim 4 is supported");
    }
    ComplexMatrix out(4, 4);
    // index = 2*i1 + i2 over the (first, second) tensor factors
    for (int i1 = 0; i1 < 2; ++i1)
        for (int i2 = 0; i2 < 2; ++i2)
            for (int j1 = 0; j1 < 2; ++j1)
                for (int j2 = 0; j2 < 2; ++j2) {
                    int r = 2 * i1 + i2, c = 2 * j1 + j2;
                    int rt = which == Subsystem::first ? 2 * j1 + i2 : 2 * i1 + j2;
                    int ct = which == Subsystem::first ? 2 * i1 + j2 : 2 * j1 + i2;
                    out(rt, ct) = m(r, c);
                }
    return out;
}

ComplexMatrix partial_transpose(const DensityMatrix& rho, Subsystem which) {
    return partial_transpose(rho.entries(), which);
}

double trace_norm(const ComplexMatrix& m) {
    if (!is_hermitian(m, 1e-10)) {
        throw std::invalid_argument("trace_norm: matrix is not Hermitian within 1e-10");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().sum();
}

double state_fidelity(const DensityMatrix& rho, const Ket& target) {
    if (rho.dim() != target.dim()) {
        throw std::invalid_argument("state_fidelity: dimension mismatch");
    }
    Complex f = target.amplitudes().adjoint() * rho.entries() * target.amplitudes();
    double value = f.real();
    if (value < 0.0 && value > -1e-12) value = 0.0;
    if (value > 1.0 && value < 1.0 + 1e-12) value = 1.0;
    if (value < 0.0 || value > 1.0) {
        throw std::runtime_error("state_fidelity: value outside [0, 1]");
    }
    return value;
}

namespace {

double average_fidelity_from_trace(Complex tr, double d) {
    return (std::norm(tr) + d) / (d * (d + 1.0));
}

double raw_gate_fidelity(const ComplexMatrix& u, const ComplexMatrix& v) {
    return average_fidelity_from_trace((v.adjoint() * u).trace(),
                                       static_cast<double>(u.rows()));
}

}  // namespace

ComplexMatrix local_z_phases(double left, double right) {
    ComplexMatrix m = ComplexMatrix::Zero(4, 4);
    const double angles[4] = {left + right, left - right, -left + right, -left - right};
    for (int k = 0; k < 4; ++k) m(k, k) = Complex(std::cos(angles[k]), std::sin(angles[k]));
    return m;
}

PhaseFit fit_local_phases(const ComplexMatrix& u, const ComplexMatrix& v) {
    const Eigen::Index d = u.rows();
    if (d != 2 && d != 4) {
        throw std::invalid_argument("fit_local_phases: dim must be 2 or 4");
    }
    if (v.rows() != d || u.cols() != d || v.cols() != d) {
        throw std::invalid_argument("fit_local_phases: dimension mismatch");
    }

    // |Tr(v† zpost u zpre)| = |Σ_{k,j} post_k pre_j M_{kj}| with
    // M_{kj} = conj(v_{kj}) u_{kj}; only the phase patterns matter.
    ComplexMatrix m = v.conjugate().cwiseProduct(u);

    auto trace_mag2 = [&](const std::array<double, 4>& p) {
        Complex tr = 0.0;
        if (d == 2) {
            // single qubit: post/pre phases (±a), (±c); p[1], p[3] unused
            const double a = p[0], c = p[2];
            for (int k = 0; k < 2; ++k)
                for (int j = 0; j < 2; ++j) {
                    double ang = (k == 0 ? a : -a) + (j == 0 ? c : -c);
                    tr += Complex(std::cos(ang), std::sin(ang)) * m(k, j);
                }
        } else {
            static const int sl[4] = {1, 1, -1, -1};
            static const int sr[4] = {1, -1, 1, -1};
            for (int k = 0; k < 4; ++k)
                for (int j = 0; j < 4; ++j) {
                    double ang = sl[k] * p[0] + sr[k] * p[1] + sl[j] * p[2] + sr[j] * p[3];
                    tr += Complex(std::cos(ang), std::sin(ang)) * m(k, j);
                }
        }
        return std::norm(tr);
    };

    // the objective is 2π-periodic in every angle
    const int coarse = d == 2 ? 24 : 10;
    const double step = 2.0 * kPi / coarse;
    std::array<double, 4> best{};
    double best_val = trace_mag2(best);
    std::array<double, 4> p{};
    const int dims = d == 2 ? 2 : 4;
    auto scan = [&](auto&& self, int axis) -> void {
        if (axis == dims) {
            std::array<double, 4> q{};
            if (d == 2) {
                q[0] = p[0];
                q[2] = p[1];
            } else {
                q = p;
            }
            double val = trace_mag2(q);
            if (val > best_val) {
                best_val = val;
                best = q;
            }
            return;
        }
        for (int i = 0; i < coarse; ++i) {
            p[axis] = i * step;
            self(self, axis + 1);
        }
    };
    scan(scan, 0);

    double box = step;
    for (int iter = 0; iter < 40; ++iter) {
        std::array<double, 4> incumbent = best;
        for (int mask = 0; mask < (d == 2 ? 9 : 81); ++mask) {
            std::array<double, 4> q = incumbent;
            int rest = mask;
            bool moved = false;
            for (int axis = 0; axis < 4; ++axis) {
                if (d == 2 && (axis == 1 || axis == 3)) continue;
                int dir = rest % 3;
                rest /= 3;
                if (dir == 1) {
                    q[axis] += box;
                    moved = true;
                } else if (dir == 2) {
                    q[axis] -= box;
                    moved = true;
                }
            }
            if (!moved) continue;
            double val = trace_mag2(q);
            if (val > best_val) {
                best_val = val;
                best = q;
            }
        }
        box *= 0.5;
    }

    PhaseFit fit;
    fit.phases = best;
    fit.fidelity = average_fidelity_from_trace(std::sqrt(best_val), static_cast<double>(d));
    return fit;
}

double gate_fidelity(const ComplexMatrix& u, const ComplexMatrix& v, bool optimize_phases) {
    if (u.rows() != v.rows() || u.cols() != v.cols() || u.rows() != u.cols()) {
        throw std::invalid_argument("gate_fidelity: dimension mismatch");
    }
    if (!is_unitary(u, 1e-8) || !is_unitary(v, 1e-8)) {
        throw std::invalid_argument("gate_fidelity: inputs must be unitary within 1e-8");
    }
    if (!optimize_phases) {
        return raw_gate_fidelity(u, v);
    }
    return fit_local_phases(u, v).fidelity;
}

}  // namespace oqsim
