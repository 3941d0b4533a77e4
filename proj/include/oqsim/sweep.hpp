#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace oqsim {

/// One row of a parameter sweep; each writer picks the columns its file
/// format needs, fields not produced by a sweep keep their zero defaults.
struct SweepRecord {
    double alpha_rad = 0.0;
    double tau_s = 0.0;
    double delta_j = 0.0;
    double raw = 0.0;
    double normalized = 0.0;
    double baseline = 0.0;
    double gate_fidelity = 0.0;
    double state_fidelity = 0.0;
};

/// Locale-independent "%.12g" rendering used by every CSV writer.
std::string csv_number(double value);

/// Fill `normalized` with raw / max(raw); a flat-zero sweep stays zero.
void normalize_raw(std::vector<SweepRecord>& records);

// header `alpha_rad,raw,normalized,baseline`
void write_ideal_csv(std::ostream& out, const std::vector<SweepRecord>& records);
// header `tau_s,alpha_rad,raw,normalized,baseline`
void write_strength_csv(std::ostream& out, const std::vector<SweepRecord>& records);
// header `delta_j,gate_fidelity,state_fidelity`
void write_fidelity_csv(std::ostream& out, const std::vector<SweepRecord>& records);

}  // namespace oqsim
