#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <string>

namespace oqsim {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;

ComplexMatrix identity(Eigen::Index dim);
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

bool is_hermitian(const ComplexMatrix& m, double tol);
bool is_unitary(const ComplexMatrix& m, double tol);

/// Normalized pure state; construction checks Σ|amplitude|² = 1 to 1e-12.
class Ket {
public:
    explicit Ket(ComplexVector amplitudes);

    /// Computational basis vector |index⟩ of the given dimension.
    static Ket basis(Eigen::Index dim, Eigen::Index index);

    Eigen::Index dim() const { return amplitudes_.size(); }
    const ComplexVector& amplitudes() const { return amplitudes_; }

private:
    ComplexVector amplitudes_;
};

/// Hermitian unit-trace matrix with eigenvalues ≥ -1e-10.  Negative
/// eigenvalues above that floor are rounding residue and accepted;
/// anything below is rejected as an invalid state.
class DensityMatrix {
public:
    explicit DensityMatrix(ComplexMatrix entries);

    static DensityMatrix pure(const Ket& psi);

    Eigen::Index dim() const { return entries_.rows(); }
    const ComplexMatrix& entries() const { return entries_; }

private:
    ComplexMatrix entries_;
};

enum class Subsystem { first, second };

/// Kronecker product, dims multiply.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// U = exp(-i 2π h t) via spectral decomposition; h entries are in Hz
/// (cycles per second), the 2π is inserted here.
ComplexMatrix propagator(const ComplexMatrix& h, double duration_s);

/// Transpose the chosen tensor factor of a 4x4 matrix (2 ⊗ 2 layout).
ComplexMatrix partial_transpose(const ComplexMatrix& m, Subsystem which);
ComplexMatrix partial_transpose(const DensityMatrix& rho, Subsystem which);

/// Sum of absolute eigenvalues of a Hermitian matrix.
double trace_norm(const ComplexMatrix& m);

/// ⟨target|ρ|target⟩, clipped to [0, 1].
double state_fidelity(const DensityMatrix& rho, const Ket& target);

/// Average gate fidelity (|Tr(u†v)|² + d) / (d(d+1)) of two unitaries.
/// With optimize_phases the result is maximized over software Z
/// rotations on each qubit applied before and after u.
double gate_fidelity(const ComplexMatrix& u, const ComplexMatrix& v,
                     bool optimize_phases = false);

/// Diagonal two-qubit phase diag(e^{i(l+r)}, e^{i(l-r)}, e^{i(-l+r)}, e^{i(-l-r)}),
/// i.e. a Z rotation by 2l on the first qubit and 2r on the second.
ComplexMatrix local_z_phases(double left, double right);

struct PhaseFit {
    double fidelity = 0.0;
    /// post (left, right) then pre (left, right) Z half-angles
    std::array<double, 4> phases{};
};

/// Maximize gate_fidelity(zpost·u·zpre, v) over per-qubit Z phases with a
/// coarse grid followed by shrinking-box refinement.  Supports dim 2 and 4.
PhaseFit fit_local_phases(const ComplexMatrix& u, const ComplexMatrix& v);

}  // namespace oqsim
