#include "oqsim/sweep.hpp"

#include <cstdio>
#include <ostream>

namespace oqsim {

std::string csv_number(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

void normalize_raw(std::vector<SweepRecord>& records) {
    double max_raw = 0.0;
    for (const SweepRecord& r : records) {
        if (r.raw > max_raw) max_raw = r.raw;
    }
    for (SweepRecord& r : records) {
        r.normalized = max_raw > 0.0 ? r.raw / max_raw : 0.0;
    }
}

void write_ideal_csv(std::ostream& out, const std::vector<SweepRecord>& records) {
    out << "alpha_rad,raw,normalized,baseline\n";
    for (const SweepRecord& r : records) {
        out << csv_number(r.alpha_rad) << ',' << csv_number(r.raw) << ','
            << csv_number(r.normalized) << ',' << csv_number(r.baseline) << '\n';
    }
}

void write_strength_csv(std::ostream& out, const std::vector<SweepRecord>& records) {
    out << "tau_s,alpha_rad,raw,normalized,baseline\n";
    for (const SweepRecord& r : records) {
        out << csv_number(r.tau_s) << ',' << csv_number(r.alpha_rad) << ','
            << csv_number(r.raw) << ',' << csv_number(r.normalized) << ','
            << csv_number(r.baseline) << '\n';
    }
}

void write_fidelity_csv(std::ostream& out, const std::vector<SweepRecord>& records) {
    out << "delta_j,gate_fidelity,state_fidelity\n";
    for (const SweepRecord& r : records) {
        out << csv_number(r.delta_j) << ',' << csv_number(r.gate_fidelity) << ','
            << csv_number(r.state_fidelity) << '\n';
    }
}

}  // namespace oqsim
