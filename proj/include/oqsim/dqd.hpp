#pragma once

#include "oqsim/qcore.hpp"
#include "oqsim/sweep.hpp"

#include <array>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <vector>

namespace oqsim {

/// Thrown when a calibration search cannot reach its target.
struct CalibrationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Reference timings of the modelled device: the pulse length rotating the
/// right spin by π/2 and the single-step CNOT time.
inline constexpr double kRxReferenceTau = 4.99e-8;
inline constexpr double kCnotReferenceTime = 1.05e-7;

/// Device constants.  Tensor order is (left, right), |0⟩ ≡ |↓⟩.  The drive
/// amplitudes are Rabi frequencies: a resonant pulse of amplitude Ω turns
/// the addressed spin by 2πΩt.
struct DqdParams {
    double e_zl_hz = 18.31e9;
    double e_zr_hz = 18.45e9;
    double j_weak_hz = 76e3;
    double j_strong_hz = 18.4e6;

    // filled by calibrate_rx / calibrate_cnot
    double drive_freq_rx_hz = 0.0;
    double drive_amp_rx_hz = 0.0;
    double drive_freq_cnot_hz = 0.0;
    double drive_amp_cnot_hz = 0.0;
    double cnot_time_s = 0.0;
    double cnot_fidelity = 0.0;
    /// software Z corrections of the CNOT pulse: post (left, right), pre (left, right)
    std::array<double, 4> cnot_phase_corr{};

    bool rx_calibrated() const { return drive_amp_rx_hz > 0.0; }
    bool cnot_calibrated() const { return drive_amp_cnot_hz > 0.0 && cnot_time_s > 0.0; }
    void validate() const;
};

/// Flat key=value device file; the four base frequencies are required,
/// calibration keys are optional, anything else is rejected.
DqdParams load_device_config(const std::filesystem::path& path);
void save_device_config(const std::filesystem::path& path, const DqdParams& params);

struct DriveTone {
    double freq_hz = 0.0;
    double amp_hz = 0.0;
    double phase_rad = 0.0;
};

/// One piecewise-constant control interval.  The drive clock is local to
/// the segment: the tone is amp·cos(2π·freq·t + phase) with t measured
/// from the segment start.
struct PulseSegment {
    double duration_s = 0.0;
    double j_hz = 0.0;
    std::optional<DriveTone> drive;
};

/// Quasi-static charge noise, J -> J·(1 + delta_j) on every segment.
struct NoiseSetting {
    double delta_j = 0.0;
    NoiseSetting() = default;
    explicit NoiseSetting(double dj);
};

struct EvolveOptions {
    /// integration step; 0 picks the scheme default
    double dt = 0.0;
    /// rotating-wave fast path (constant rotating-frame generator per segment)
    bool rwa = false;
};

double default_dt(bool rwa);

/// H(t)/h in Hz: individual Zeeman terms, isotropic exchange and a global
/// transverse tone shared by both spins.
ComplexMatrix hamiltonian(const DqdParams& params, double j_hz,
                          const std::optional<DriveTone>& drive, double t_s);

struct Evolution {
    /// lab-frame unitary (segment-local drive clocks)
    ComplexMatrix u_lab;
    /// composition of the per-segment Zeeman-rotating-frame gates; fidelity
    /// targets are compared in this frame
    ComplexMatrix u_rotating;
    double t_total = 0.0;
};

Evolution propagate(const DqdParams& params, const std::vector<PulseSegment>& schedule,
                    const EvolveOptions& opts = {});

std::pair<Ket, Evolution> evolve(const DqdParams& params,
                                 const std::vector<PulseSegment>& schedule,
                                 const Ket& initial, const EvolveOptions& opts = {});
std::pair<DensityMatrix, Evolution> evolve(const DqdParams& params,
                                           const std::vector<PulseSegment>& schedule,
                                           const DensityMatrix& initial,
                                           const EvolveOptions& opts = {});

/// Resonant pulse on the right spin: drive at e_zr, amplitude tuned until
/// the π/2 rotation lands exactly at kRxReferenceTau.
DqdParams calibrate_rx(DqdParams params, const EvolveOptions& opts = {});

/// Single-step CNOT with the right spin as control: drives the conditional
/// left-spin transition (e_zl shifted by ±j/2, the better of the two), with
/// the amplitude maximizing the first fidelity peak near kCnotReferenceTime.
/// Stores the achieved peak time, fidelity and software Z corrections.
DqdParams calibrate_cnot(DqdParams params, const EvolveOptions& opts = {});

double alpha_of_tau(const DqdParams& params, double tau_s);

/// CNOT (right control, left target) · (1 ⊗ Rx(alpha)) in (left, right) order.
ComplexMatrix ideal_circuit_unitary(double alpha);

/// cos(α/2)|00⟩ - i sin(α/2)|11⟩ without the sweep-domain restriction.
Ket ideal_output_state(double alpha);

struct CircuitResult {
    double tau_s = 0.0;
    double alpha_rad = 0.0;
    DensityMatrix rho_out;      ///< rotating frame, calibrated Z corrections applied
    double gate_fidelity = 0.0; ///< vs CNOT·(1 ⊗ Rx(α)) over software Z phases
    double state_fidelity = 0.0;
};

/// Rotate the right spin for tau at weak exchange, then run the calibrated
/// CNOT pulse at strong exchange, both with J scaled by (1 + delta_j).
CircuitResult run_circuit(const DqdParams& params, double tau_s,
                          const NoiseSetting& noise, const EvolveOptions& opts = {});

/// Same circuit over a sorted tau grid; the rotation segment is integrated
/// once and snapshotted, the CNOT pulse is shared by every grid point.
std::vector<CircuitResult> circuit_outputs(const DqdParams& params,
                                           const std::vector<double>& taus,
                                           const NoiseSetting& noise,
                                           const EvolveOptions& opts = {},
                                           int threads = 0);

std::vector<SweepRecord> fidelity_sweep(const DqdParams& params, double tau_s,
                                        const std::vector<double>& delta_js,
                                        const EvolveOptions& opts = {},
                                        int threads = 0);
std::vector<SweepRecord> fidelity_sweep_serial(const DqdParams& params, double tau_s,
                                               const std::vector<double>& delta_js,
                                               const EvolveOptions& opts = {});

}  // namespace oqsim
