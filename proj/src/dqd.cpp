#include "oqsim/dqd.hpp"

#include "oqsim/circuits.hpp"
#include "oqsim/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace oqsim {

namespace {

using M4 = Eigen::Matrix4cd;
using V4 = Eigen::Vector4cd;

M4 kron22(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
    M4 out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

Eigen::Matrix2cd sx2() {
    Eigen::Matrix2cd m;
    m << 0, 1, 1, 0;
    return m;
}

Eigen::Matrix2cd sy2() {
    Eigen::Matrix2cd m;
    m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    return m;
}

Eigen::Matrix2cd sz2() {
    Eigen::Matrix2cd m;
    m << 1, 0, 0, -1;
    return m;
}

const M4& exchange_op() {
    static const M4 op = 0.25 * (kron22(sx2(), sx2()) + kron22(sy2(), sy2()) +
                                 kron22(sz2(), sz2()) - M4::Identity());
    return op;
}

const M4& z_left() {
    static const M4 op = 0.5 * kron22(sz2(), Eigen::Matrix2cd::Identity());
    return op;
}

const M4& z_right() {
    static const M4 op = 0.5 * kron22(Eigen::Matrix2cd::Identity(), sz2());
    return op;
}

const M4& drive_x() {
    static const M4 op = kron22(sx2(), Eigen::Matrix2cd::Identity()) +
                         kron22(Eigen::Matrix2cd::Identity(), sx2());
    return op;
}

const M4& drive_y() {
    static const M4 op = kron22(sy2(), Eigen::Matrix2cd::Identity()) +
                         kron22(Eigen::Matrix2cd::Identity(), sy2());
    return op;
}

// exp(-i 2π h t) for Hermitian h
M4 expm_herm(const M4& h, double t) {
    Eigen::SelfAdjointEigenSolver<M4> solver(h);
    V4 phases;
    for (int k = 0; k < 4; ++k) {
        double angle = -2.0 * kPi * solver.eigenvalues()(k) * t;
        phases(k) = Complex(std::cos(angle), std::sin(angle));
    }
    return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

// exp(-i 2π H_zeeman t), diagonal
M4 zeeman_frame(const DqdParams& p, double t) {
    const double e[4] = {0.5 * (p.e_zl_hz + p.e_zr_hz), 0.5 * (p.e_zl_hz - p.e_zr_hz),
                         0.5 * (-p.e_zl_hz + p.e_zr_hz), -0.5 * (p.e_zl_hz + p.e_zr_hz)};
    M4 out = M4::Zero();
    for (int k = 0; k < 4; ++k) {
        double angle = -2.0 * kPi * e[k] * t;
        out(k, k) = Complex(std::cos(angle), std::sin(angle));
    }
    return out;
}

M4 static_part(const DqdParams& p, double j) {
    return p.e_zl_hz * z_left() + p.e_zr_hz * z_right() + j * exchange_op();
}

// worst-case |H| entry over a segment, for the step-size preflight
double hamiltonian_bound(const DqdParams& p, const PulseSegment& seg, bool rwa) {
    if (rwa) {
        double f = seg.drive ? seg.drive->freq_hz : 0.0;
        M4 h = static_part(p, seg.j_hz) - f * (z_left() + z_right());
        double bound = h.cwiseAbs().maxCoeff();
        if (seg.drive) bound += 0.5 * std::abs(seg.drive->amp_hz);
        return bound;
    }
    double bound = static_part(p, seg.j_hz).cwiseAbs().maxCoeff();
    if (seg.drive) bound += std::abs(seg.drive->amp_hz);
    return bound;
}

struct SegmentTrace {
    std::vector<M4> at_times;  // lab-frame unitaries at the requested local times
    M4 final = M4::Identity();
};

// Lab path: midpoint-sampled piecewise-constant propagators.  Driveless
// segments and the rotating-wave path are integrated exactly from the
// spectral decomposition of their constant generator.
SegmentTrace propagate_segment(const DqdParams& p, const PulseSegment& seg, double dt,
                               bool rwa, const std::vector<double>& times) {
    SegmentTrace trace;
    trace.at_times.reserve(times.size());

    if (rwa || !seg.drive) {
        const double f = seg.drive ? seg.drive->freq_hz : 0.0;
        M4 h = static_part(p, seg.j_hz) - f * (z_left() + z_right());
        if (seg.drive) {
            h += 0.5 * seg.drive->amp_hz *
                 (std::cos(seg.drive->phase_rad) * drive_x() +
                  std::sin(seg.drive->phase_rad) * drive_y());
        }
        Eigen::SelfAdjointEigenSolver<M4> solver(h);
        auto lab_at = [&](double t) {
            V4 phases;
            for (int k = 0; k < 4; ++k) {
                double angle = -2.0 * kPi * solver.eigenvalues()(k) * t;
                phases(k) = Complex(std::cos(angle), std::sin(angle));
            }
            M4 u = solver.eigenvectors() * phases.asDiagonal() *
                   solver.eigenvectors().adjoint();
            if (seg.drive) {
                double g = 2.0 * kPi * f * t;
                V4 frame(Complex(std::cos(g), -std::sin(g)), 1.0, 1.0,
                         Complex(std::cos(g), std::sin(g)));
                u = frame.asDiagonal() * u;
            }
            return u;
        };
        for (double t : times) trace.at_times.push_back(lab_at(t));
        trace.final = lab_at(seg.duration_s);
        return trace;
    }

    const M4 h0 = static_part(p, seg.j_hz);
    const DriveTone& tone = *seg.drive;
    M4 u = M4::Identity();
    double t0 = 0.0;
    std::vector<double> boundaries = times;
    boundaries.push_back(seg.duration_s);
    for (std::size_t b = 0; b < boundaries.size(); ++b) {
        const double t1 = boundaries[b];
        if (t1 > t0) {
            const int n = static_cast<int>(std::ceil((t1 - t0) / dt));
            const double h = (t1 - t0) / n;
            for (int s = 0; s < n; ++s) {
                const double t_mid = t0 + (s + 0.5) * h;
                const double envelope =
                    tone.amp_hz *
                    std::cos(2.0 * kPi * tone.freq_hz * t_mid + tone.phase_rad);
                u = expm_herm(h0 + envelope * drive_x(), h) * u;
            }
            t0 = t1;
        }
        if (b + 1 < boundaries.size()) {
            trace.at_times.push_back(u);
        } else {
            trace.final = u;
        }
    }
    return trace;
}

double resolved_dt(const EvolveOptions& opts) {
    if (opts.dt < 0.0) throw std::invalid_argument("evolve: negative dt");
    return opts.dt > 0.0 ? opts.dt : default_dt(opts.rwa);
}

void check_dt(const DqdParams& p, const std::vector<PulseSegment>& schedule, double dt,
              bool rwa) {
    double bound = 0.0;
    for (const PulseSegment& seg : schedule) {
        bound = std::max(bound, hamiltonian_bound(p, seg, rwa));
    }
    if (bound > 0.0 && dt * bound > 0.05) {
        std::ostringstream msg;
        msg << "evolve: dt = " << dt << " s too coarse for |H| = " << bound
            << " Hz; need dt <= " << 0.05 / bound << " s";
        throw std::invalid_argument(msg.str());
    }
}

const M4& cnot_right_control() {
    static const M4 gate = [] {
        M4 m = M4::Zero();
        m(0, 0) = 1.0;  // |00> -> |00>
        m(3, 1) = 1.0;  // |01> -> |11>
        m(2, 2) = 1.0;  // |10> -> |10>
        m(1, 3) = 1.0;  // |11> -> |01>
        return m;
    }();
    return gate;
}

M4 z_corrections(double left, double right) {
    M4 m = M4::Zero();
    const double angles[4] = {left + right, left - right, -left + right, -left - right};
    for (int k = 0; k < 4; ++k) m(k, k) = Complex(std::cos(angles[k]), std::sin(angles[k]));
    return m;
}

}  // namespace

void DqdParams::validate() const {
    if (e_zl_hz <= 0.0 || e_zr_hz <= 0.0 || j_weak_hz <= 0.0 || j_strong_hz <= 0.0) {
        throw std::invalid_argument("DqdParams: frequencies must be positive");
    }
    if (e_zl_hz == e_zr_hz) {
        throw std::invalid_argument("DqdParams: spins must be addressable, e_zl != e_zr");
    }
}

NoiseSetting::NoiseSetting(double dj) : delta_j(dj) {
    if (dj < 0.0 || dj > 1.0) {
        throw std::domain_error("NoiseSetting: delta_j must lie in [0, 1]");
    }
}

double default_dt(bool rwa) { return rwa ? 1e-10 : 1e-12; }

ComplexMatrix hamiltonian(const DqdParams& params, double j_hz,
                          const std::optional<DriveTone>& drive, double t_s) {
    params.validate();
    if (j_hz < 0.0) throw std::invalid_argument("hamiltonian: j must be nonnegative");
    M4 h = static_part(params, j_hz);
    if (drive) {
        h += drive->amp_hz *
             std::cos(2.0 * kPi * drive->freq_hz * t_s + drive->phase_rad) * drive_x();
    }
    return h;
}

Evolution propagate(const DqdParams& params, const std::vector<PulseSegment>& schedule,
                    const EvolveOptions& opts) {
    params.validate();
    for (const PulseSegment& seg : schedule) {
        if (seg.duration_s <= 0.0) {
            throw std::invalid_argument("propagate: segment durations must be positive");
        }
        if (seg.j_hz < 0.0) {
            throw std::invalid_argument("propagate: j must be nonnegative");
        }
    }
    const double dt = resolved_dt(opts);
    check_dt(params, schedule, dt, opts.rwa);

    Evolution evo;
    M4 u_lab = M4::Identity();
    M4 u_rot = M4::Identity();
    for (const PulseSegment& seg : schedule) {
        M4 u_seg = propagate_segment(params, seg, dt, opts.rwa, {}).final;
        u_lab = u_seg * u_lab;
        u_rot = zeeman_frame(params, seg.duration_s).adjoint() * u_seg * u_rot;
        evo.t_total += seg.duration_s;
    }
    evo.u_lab = u_lab;
    evo.u_rotating = u_rot;
    return evo;
}

std::pair<Ket, Evolution> evolve(const DqdParams& params,
                                 const std::vector<PulseSegment>& schedule,
                                 const Ket& initial, const EvolveOptions& opts) {
    if (initial.dim() != 4) throw std::invalid_argument("evolve: two-qubit state required");
    Evolution evo = propagate(params, schedule, opts);
    Ket state(evo.u_lab * initial.amplitudes());
    return {std::move(state), std::move(evo)};
}

std::pair<DensityMatrix, Evolution> evolve(const DqdParams& params,
                                           const std::vector<PulseSegment>& schedule,
                                           const DensityMatrix& initial,
                                           const EvolveOptions& opts) {
    if (initial.dim() != 4) throw std::invalid_argument("evolve: two-qubit state required");
    Evolution evo = propagate(params, schedule, opts);
    DensityMatrix state(evo.u_lab * initial.entries() * evo.u_lab.adjoint());
    return {std::move(state), std::move(evo)};
}

namespace {

double right_up_probability(const DqdParams& p, double amp, const EvolveOptions& opts) {
    PulseSegment seg{kRxReferenceTau, p.j_weak_hz,
                     DriveTone{p.e_zr_hz, amp, 0.0}};
    const double dt = resolved_dt(opts);
    check_dt(p, {seg}, dt, opts.rwa);
    M4 u = propagate_segment(p, seg, dt, opts.rwa, {}).final;
    V4 psi = u.col(0);  // from |00> = |down,down>
    return std::norm(psi(1)) + std::norm(psi(3));
}

struct CnotPeak {
    double time_s = 0.0;
    PhaseFit fit;
};

// best software-Z CNOT fidelity over a time window around the reference
// gate time; one propagation pass supplies every sample
CnotPeak find_cnot_peak(const DqdParams& p, double freq, double amp,
                        const EvolveOptions& opts) {
    constexpr int kSamples = 61;
    const double t_lo = 0.85 * kCnotReferenceTime;
    const double t_hi = 1.15 * kCnotReferenceTime;
    std::vector<double> times(kSamples);
    for (int i = 0; i < kSamples; ++i) {
        times[i] = t_lo + (t_hi - t_lo) * i / (kSamples - 1);
    }

    PulseSegment seg{t_hi, p.j_strong_hz, DriveTone{freq, amp, 0.0}};
    const double dt = resolved_dt(opts);
    check_dt(p, {seg}, dt, opts.rwa);
    SegmentTrace trace = propagate_segment(p, seg, dt, opts.rwa, times);

    const ComplexMatrix target = cnot_right_control();
    std::vector<double> fids(kSamples);
    parallel_for(kSamples, 0, [&](std::ptrdiff_t i) {
        M4 u_rot = zeeman_frame(p, times[i]).adjoint() * trace.at_times[i];
        fids[i] = fit_local_phases(u_rot, target).fidelity;
    });

    int best = 0;
    for (int i = 1; i < kSamples; ++i) {
        if (fids[i] > fids[best]) best = i;
    }
    double t_peak = times[best];
    if (best > 0 && best + 1 < kSamples) {
        const double y0 = fids[best - 1], y1 = fids[best], y2 = fids[best + 1];
        const double denom = y0 - 2.0 * y1 + y2;
        if (denom < 0.0) {
            t_peak += 0.5 * (times[1] - times[0]) * (y0 - y2) / denom;
        }
    }

    PulseSegment refined{t_peak, p.j_strong_hz, DriveTone{freq, amp, 0.0}};
    M4 u_rot = zeeman_frame(p, t_peak).adjoint() *
               propagate_segment(p, refined, dt, opts.rwa, {}).final;
    CnotPeak peak;
    peak.time_s = t_peak;
    peak.fit = fit_local_phases(u_rot, target);
    return peak;
}

}  // namespace

DqdParams calibrate_rx(DqdParams params, const EvolveOptions& opts) {
    params.validate();
    params.drive_freq_rx_hz = params.e_zr_hz;
    double amp = 1.0 / (4.0 * kRxReferenceTau);
    bool converged = false;
    for (int iter = 0; iter < 40; ++iter) {
        const double prob = right_up_probability(params, amp, opts);
        if (std::abs(prob - 0.5) < 1e-11) {
            converged = true;
            break;
        }
        if (prob < 0.01 || prob > 0.99) {
            throw CalibrationError("calibrate_rx: rotation out of bracket");
        }
        const double alpha = 2.0 * std::asin(std::sqrt(prob));
        amp *= (kPi / 2.0) / alpha;
    }
    if (!converged) {
        throw CalibrationError("calibrate_rx: amplitude search did not converge");
    }
    params.drive_amp_rx_hz = amp;
    return params;
}

DqdParams calibrate_cnot(DqdParams params, const EvolveOptions& opts) {
    params.validate();
    const double candidates[2] = {params.e_zl_hz - 0.5 * params.j_strong_hz,
                                  params.e_zl_hz + 0.5 * params.j_strong_hz};

    double best_f = -1.0;
    double best_freq = 0.0, best_amp = 0.0;
    CnotPeak best_peak;
    for (double freq : candidates) {
        // golden-section maximization of the peak fidelity over the amplitude
        const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
        double lo = 0.8 / (2.0 * kCnotReferenceTime);
        double hi = 1.2 / (2.0 * kCnotReferenceTime);
        double x1 = hi - inv_phi * (hi - lo);
        double x2 = lo + inv_phi * (hi - lo);
        CnotPeak p1 = find_cnot_peak(params, freq, x1, opts);
        CnotPeak p2 = find_cnot_peak(params, freq, x2, opts);
        for (int iter = 0; iter < 30; ++iter) {
            if (p1.fit.fidelity > p2.fit.fidelity) {
                hi = x2;
                x2 = x1;
                p2 = p1;
                x1 = hi - inv_phi * (hi - lo);
                p1 = find_cnot_peak(params, freq, x1, opts);
            } else {
                lo = x1;
                x1 = x2;
                p1 = p2;
                x2 = lo + inv_phi * (hi - lo);
                p2 = find_cnot_peak(params, freq, x2, opts);
            }
        }
        const CnotPeak& peak = p1.fit.fidelity > p2.fit.fidelity ? p1 : p2;
        const double amp = p1.fit.fidelity > p2.fit.fidelity ? x1 : x2;
        if (peak.fit.fidelity > best_f) {
            best_f = peak.fit.fidelity;
            best_freq = freq;
            best_amp = amp;
            best_peak = peak;
        }
    }

    if (best_f < 0.9) {
        std::ostringstream msg;
        msg << "calibrate_cnot: no fidelity peak >= 0.9 in the search window "
            << "(best " << best_f << ")";
        throw CalibrationError(msg.str());
    }
    params.drive_freq_cnot_hz = best_freq;
    params.drive_amp_cnot_hz = best_amp;
    params.cnot_time_s = best_peak.time_s;
    params.cnot_fidelity = best_f;
    params.cnot_phase_corr = best_peak.fit.phases;
    return params;
}

double alpha_of_tau(const DqdParams& params, double tau_s) {
    if (!params.rx_calibrated()) {
        throw std::invalid_argument("alpha_of_tau: rotation drive not calibrated");
    }
    return 2.0 * kPi * params.drive_amp_rx_hz * tau_s;
}

ComplexMatrix ideal_circuit_unitary(double alpha) {
    return ComplexMatrix(cnot_right_control()) * kron(identity(2), rx(alpha).matrix);
}

Ket ideal_output_state(double alpha) {
    ComplexVector v = ComplexVector::Zero(4);
    v(0) = std::cos(alpha / 2.0);
    v(3) = Complex(0.0, -std::sin(alpha / 2.0));
    return Ket(std::move(v));
}

std::vector<CircuitResult> circuit_outputs(const DqdParams& params,
                                           const std::vector<double>& taus,
                                           const NoiseSetting& noise,
                                           const EvolveOptions& opts, int threads) {
    params.validate();
    if (!params.rx_calibrated() || !params.cnot_calibrated()) {
        throw std::invalid_argument("circuit_outputs: params are not calibrated");
    }
    if (taus.empty() || !std::is_sorted(taus.begin(), taus.end()) || taus.front() < 0.0) {
        throw std::invalid_argument("circuit_outputs: taus must be sorted and nonnegative");
    }

    const double scale = 1.0 + noise.delta_j;
    const double jw = params.j_weak_hz * scale;
    const double js = params.j_strong_hz * scale;
    const double dt = resolved_dt(opts);

    const double tau_max = taus.back();
    SegmentTrace rx_trace;
    if (tau_max > 0.0) {
        PulseSegment rx_seg{tau_max, jw, DriveTone{params.drive_freq_rx_hz,
                                                   params.drive_amp_rx_hz, 0.0}};
        check_dt(params, {rx_seg}, dt, opts.rwa);
        rx_trace = propagate_segment(params, rx_seg, dt, opts.rwa, taus);
    } else {
        rx_trace.at_times.assign(taus.size(), M4::Identity());
    }

    PulseSegment cnot_seg{params.cnot_time_s, js,
                          DriveTone{params.drive_freq_cnot_hz,
                                    params.drive_amp_cnot_hz, 0.0}};
    check_dt(params, {cnot_seg}, dt, opts.rwa);
    const M4 u_cnot_rot = zeeman_frame(params, params.cnot_time_s).adjoint() *
                          propagate_segment(params, cnot_seg, dt, opts.rwa, {}).final;
    const M4 dressed_cnot = z_corrections(params.cnot_phase_corr[0],
                                          params.cnot_phase_corr[1]) *
                            u_cnot_rot *
                            z_corrections(params.cnot_phase_corr[2],
                                          params.cnot_phase_corr[3]);

    std::vector<CircuitResult> results;
    results.reserve(taus.size());
    for (std::size_t i = 0; i < taus.size(); ++i) {
        results.push_back(CircuitResult{0.0, 0.0,
                                        DensityMatrix::pure(Ket::basis(4, 0)), 0.0, 0.0});
    }
    parallel_for(static_cast<std::ptrdiff_t>(taus.size()), threads,
                 [&](std::ptrdiff_t i) {
        const double tau = taus[i];
        const double alpha = alpha_of_tau(params, tau);
        const M4 u_rx_rot =
            (zeeman_frame(params, tau).adjoint() * rx_trace.at_times[i]).eval();

        CircuitResult& out = results[i];
        out.tau_s = tau;
        out.alpha_rad = alpha;
        out.gate_fidelity =
            fit_local_phases(ComplexMatrix(u_cnot_rot * u_rx_rot),
                             ideal_circuit_unitary(alpha))
                .fidelity;

        V4 psi = dressed_cnot * u_rx_rot.col(0);
        psi /= psi.norm();
        Ket out_state{ComplexVector(psi)};
        out.state_fidelity = state_fidelity(DensityMatrix::pure(out_state),
                                            ideal_output_state(alpha));
        out.rho_out = DensityMatrix::pure(out_state);
    });
    return results;
}

CircuitResult run_circuit(const DqdParams& params, double tau_s,
                          const NoiseSetting& noise, const EvolveOptions& opts) {
    return circuit_outputs(params, {tau_s}, noise, opts, 1).front();
}

std::vector<SweepRecord> fidelity_sweep(const DqdParams& params, double tau_s,
                                        const std::vector<double>& delta_js,
                                        const EvolveOptions& opts, int threads) {
    std::vector<SweepRecord> records(delta_js.size());
    parallel_for(static_cast<std::ptrdiff_t>(delta_js.size()), threads,
                 [&](std::ptrdiff_t i) {
        CircuitResult r = run_circuit(params, tau_s, NoiseSetting(delta_js[i]), opts);
        records[i].delta_j = delta_js[i];
        records[i].alpha_rad = r.alpha_rad;
        records[i].tau_s = tau_s;
        records[i].gate_fidelity = r.gate_fidelity;
        records[i].state_fidelity = r.state_fidelity;
    });
    return records;
}

std::vector<SweepRecord> fidelity_sweep_serial(const DqdParams& params, double tau_s,
                                               const std::vector<double>& delta_js,
                                               const EvolveOptions& opts) {
    std::vector<SweepRecord> records(delta_js.size());
    for (std::size_t i = 0; i < delta_js.size(); ++i) {
        CircuitResult r = run_circuit(params, tau_s, NoiseSetting(delta_js[i]), opts);
        records[i].delta_j = delta_js[i];
        records[i].alpha_rad = r.alpha_rad;
        records[i].tau_s = tau_s;
        records[i].gate_fidelity = r.gate_fidelity;
        records[i].state_fidelity = r.state_fidelity;
    }
    return records;
}

namespace {

struct ConfigKey {
    const char* name;
    double DqdParams::*field;
    bool required;
};

const ConfigKey kScalarKeys[] = {
    {"e_zl_hz", &DqdParams::e_zl_hz, true},
    {"e_zr_hz", &DqdParams::e_zr_hz, true},
    {"j_weak_hz", &DqdParams::j_weak_hz, true},
    {"j_strong_hz", &DqdParams::j_strong_hz, true},
    {"drive_freq_rx_hz", &DqdParams::drive_freq_rx_hz, false},
    {"drive_amp_rx_hz", &DqdParams::drive_amp_rx_hz, false},
    {"drive_freq_cnot_hz", &DqdParams::drive_freq_cnot_hz, false},
    {"drive_amp_cnot_hz", &DqdParams::drive_amp_cnot_hz, false},
    {"cnot_time_s", &DqdParams::cnot_time_s, false},
    {"cnot_fidelity", &DqdParams::cnot_fidelity, false},
};

const char* kPhaseKeys[4] = {"cnot_zpost_l_rad", "cnot_zpost_r_rad",
                             "cnot_zpre_l_rad", "cnot_zpre_r_rad"};

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

}  // namespace

DqdParams load_device_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open device config: " + path.string());
    }
    DqdParams params;
    std::map<std::string, bool> seen;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": expected key = value");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        double parsed = 0.0;
        try {
            std::size_t used = 0;
            parsed = std::stod(value, &used);
            if (used != value.size()) throw std::invalid_argument(value);
        } catch (const std::exception&) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": bad numeric value '" + value + "'");
        }
        bool known = false;
        for (const ConfigKey& ck : kScalarKeys) {
            if (key == ck.name) {
                params.*(ck.field) = parsed;
                known = true;
                break;
            }
        }
        for (int i = 0; i < 4 && !known; ++i) {
            if (key == kPhaseKeys[i]) {
                params.cnot_phase_corr[i] = parsed;
                known = true;
            }
        }
        if (!known) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": unknown key '" + key + "'");
        }
        if (seen[key]) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": duplicate key '" + key + "'");
        }
        seen[key] = true;
    }
    for (const ConfigKey& ck : kScalarKeys) {
        if (ck.required && !seen[ck.name]) {
            throw std::runtime_error(path.string() + ": missing required key '" +
                                     std::string(ck.name) + "'");
        }
    }
    params.validate();
    return params;
}

void save_device_config(const std::filesystem::path& path, const DqdParams& params) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write device config: " + path.string());
    }
    out << "# double-quantum-dot device parameters\n";
    for (int i = 0; i < 4; ++i) {
        out << kScalarKeys[i].name << " = " << csv_number(params.*(kScalarKeys[i].field))
            << "\n";
    }
    if (params.rx_calibrated() || params.cnot_calibrated()) {
        out << "\n# written by calibration\n";
    }
    if (params.rx_calibrated()) {
        out << "drive_freq_rx_hz = " << csv_number(params.drive_freq_rx_hz) << "\n";
        out << "drive_amp_rx_hz = " << csv_number(params.drive_amp_rx_hz) << "\n";
    }
    if (params.cnot_calibrated()) {
        out << "drive_freq_cnot_hz = " << csv_number(params.drive_freq_cnot_hz) << "\n";
        out << "drive_amp_cnot_hz = " << csv_number(params.drive_amp_cnot_hz) << "\n";
        out << "cnot_time_s = " << csv_number(params.cnot_time_s) << "\n";
        out << "cnot_fidelity = " << csv_number(params.cnot_fidelity) << "\n";
        for (int i = 0; i < 4; ++i) {
            out << kPhaseKeys[i] << " = " << csv_number(params.cnot_phase_corr[i]) << "\n";
        }
    }
    if (!out) {
        throw std::runtime_error("failed writing device config: " + path.string());
    }
}

}  // namespace oqsim
