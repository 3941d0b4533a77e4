#include "oqsim/oq.hpp"

#include <bit>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace oqsim {

namespace {

// values in (-1e-12, 0) are rounding residue, not genuine negativity
double clip_negative_zero(double v) {
    return (v < 0.0 && v > -1e-12) ? 0.0 : v;
}

double negativity_of(const double* values, std::size_t n) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double v = clip_negative_zero(values[i]);
        total += 0.5 * (std::abs(v) - v);
    }
    return total;
}

}  // namespace

std::string OQTable::index_string(int index) const {
    const int bits = n_subsystems * k_slots;
    std::string s(bits, '0');
    for (int b = 0; b < bits; ++b) {
        if (index & (1 << (bits - 1 - b))) s[b] = '1';
    }
    return s;
}

void OQTable::write_csv(std::ostream& out) const {
    out << "index,value\n";
    for (std::size_t i = 0; i < values.size(); ++i) {
        out << index_string(static_cast<int>(i)) << ',' << values[i] << '\n';
    }
}

void MarginalTable::write_csv(std::ostream& out) const {
    out << "index,value\n";
    for (int c = 0; c < 4; ++c) {
        out << ((c >> 1) & 1) << (c & 1) << ',' << values[c] << '\n';
    }
}

OQTable oq_table(const DensityMatrix& rho,
                 const std::vector<ObservableList>& observables) {
    const int n = static_cast<int>(observables.size());
    if (n < 1 || n > 2) {
        throw std::invalid_argument("oq_table: 1 or 2 subsystems supported");
    }
    const int k = static_cast<int>(observables[0].size());
    for (const ObservableList& list : observables) {
        if (static_cast<int>(list.size()) != k) {
            throw std::invalid_argument("oq_table: ragged observable lists");
        }
    }
    const int bits = n * k;
    const int size = 1 << bits;

    // bit b of an index addresses subsystem b / k, slot b % k (MSB first)
    auto unpack = [&](int index) {
        std::vector<ConfigTuple> tuples(n, ConfigTuple(k, 0));
        for (int b = 0; b < bits; ++b) {
            int bit = (index >> (bits - 1 - b)) & 1;
            tuples[b / k][b % k] = bit;
        }
        return tuples;
    };

    std::vector<double> expectations(size);
    for (int cfg = 0; cfg < size; ++cfg) {
        expectations[cfg] = expectation_config(rho, unpack(cfg), observables);
    }

    OQTable table;
    table.n_subsystems = n;
    table.k_slots = k;
    table.values.resize(size);
    const double scale = 1.0 / size;
    for (int a = 0; a < size; ++a) {
        double sum = 0.0;
        for (int cfg = 0; cfg < size; ++cfg) {
            sum += std::popcount(static_cast<unsigned>(a & cfg)) % 2 ? -expectations[cfg]
                                                                     : expectations[cfg];
        }
        table.values[a] = sum * scale;
    }

    double total = 0.0;
    for (double v : table.values) total += v;
    if (std::abs(total - 1.0) > 1e-10) {
        throw std::runtime_error("oq_table: normalization broken");
    }
    return table;
}

double oq_negativity(const OQTable& table) {
    return negativity_of(table.values.data(), table.values.size());
}

MarginalTable marginal_oq(const OQTable& table) {
    if (table.n_subsystems != 2 || table.k_slots != 2 || table.values.size() != 16) {
        throw std::invalid_argument("marginal_oq: requires the N = K = 2 table");
    }
    MarginalTable marg;
    for (int a = 0; a < 16; ++a) {
        const int a11 = (a >> 3) & 1, a21 = (a >> 2) & 1;
        const int a12 = (a >> 1) & 1, a22 = a & 1;
        const int c1 = a11 ^ a22, c2 = a21 ^ a12;
        marg.values[2 * c1 + c2] += table.values[a];
    }
    return marg;
}

MarginalTable marginal_from_correlators(double c1, double c2, double c12) {
    MarginalTable marg;
    for (int i = 0; i < 4; ++i) {
        const int b1 = (i >> 1) & 1, b2 = i & 1;
        marg.values[i] = 0.25 * (1.0 + (b1 ? -c1 : c1) + (b2 ? -c2 : c2) +
                                 ((b1 ^ b2) ? -c12 : c12));
    }
    return marg;
}

SpatialCorrelators spatial_correlators(const DensityMatrix& rho,
                                       const DichotomicObservable& slot1,
                                       const DichotomicObservable& slot2) {
    if (rho.dim() != 4) {
        throw std::invalid_argument("spatial_correlators: two-qubit state required");
    }
    SpatialCorrelators c;
    Complex t1 = (rho.entries() * kron(slot1.matrix, slot2.matrix)).trace();
    Complex t2 = (rho.entries() * kron(slot2.matrix, slot1.matrix)).trace();
    if (std::abs(t1.imag()) > 1e-10 || std::abs(t2.imag()) > 1e-10) {
        throw std::runtime_error("spatial_correlators: complex expectation residue");
    }
    c.c1 = t1.real();
    c.c2 = t2.real();

    const std::vector<ObservableList> observables{{slot1, slot2}, {slot1, slot2}};
    const std::vector<ConfigTuple> all_selected{{1, 1}, {1, 1}};
    c.c12 = expectation_config(rho, all_selected, observables);
    return c;
}

double marginal_negativity(const DensityMatrix& rho,
                           const DichotomicObservable& slot1,
                           const DichotomicObservable& slot2) {
    SpatialCorrelators c = spatial_correlators(rho, slot1, slot2);
    MarginalTable marg = marginal_from_correlators(c.c1, c.c2, c.c12);
    return negativity_of(marg.values.data(), marg.values.size());
}

double marginal_negativity(const DensityMatrix& rho, double theta1, double theta2) {
    auto [slot1, slot2] = rotated_pair(theta1, theta2);
    return marginal_negativity(rho, slot1, slot2);
}

}  // namespace oqsim
