#pragma once

#include "oqsim/measure.hpp"

#include <array>
#include <iosfwd>

namespace oqsim {

/// Real quasiprobability over outcome tuples of N subsystems and K time
/// slots.  The value index packs the outcome bits subsystem-major and
/// slot-minor, most significant bit first: for N = K = 2 the index is
/// (a₁¹ a₂¹ a₁² a₂²) with a_slot^subsystem.
struct OQTable {
    int n_subsystems = 0;
    int k_slots = 0;
    std::vector<double> values;

    std::string index_string(int index) const;
    /// one `index,value` row per entry, binary index string
    void write_csv(std::ostream& out) const;
};

/// Spatial marginal of a two-qubit OQTable, indexed by c = 2·c₁ + c₂.
struct MarginalTable {
    std::array<double, 4> values{};

    void write_csv(std::ostream& out) const;
};

using ObservableList = std::vector<DichotomicObservable>;

/// Discrete Fourier transform of the expectation values over all 2^(NK)
/// measurement configurations, W(a) = 2^(-NK) Σ_n (-1)^(a·n) C(n).
/// Every subsystem measures the same K-slot observable list layout;
/// N ∈ {1, 2} and K = 2 are exercised here.
OQTable oq_table(const DensityMatrix& rho,
                 const std::vector<ObservableList>& observables);

/// Sum of the negative components, N = ½ Σ (|W| - W).
double oq_negativity(const OQTable& table);

/// Mod-2 parity marginal retaining the inter-subsystem correlations:
/// c₁ = a₁¹ ⊕ a₂², c₂ = a₂¹ ⊕ a₁².
MarginalTable marginal_oq(const OQTable& table);

/// W_m(c) = ¼ [1 + (-1)^{c₁} c1 + (-1)^{c₂} c2 + (-1)^{c₁⊕c₂} c12].
MarginalTable marginal_from_correlators(double c1, double c2, double c12);

/// The three correlators entering the marginal when both subsystems carry
/// the ordered pair (slot1, slot2): c1 = ⟨slot1 ⊗ slot2⟩,
/// c2 = ⟨slot2 ⊗ slot1⟩ and c12 the fully sequential configuration.
struct SpatialCorrelators {
    double c1 = 0.0;
    double c2 = 0.0;
    double c12 = 0.0;
};

SpatialCorrelators spatial_correlators(const DensityMatrix& rho,
                                       const DichotomicObservable& slot1,
                                       const DichotomicObservable& slot2);

/// Marginal negativity of a two-qubit state measured with
/// rotated_pair(theta1, theta2) on both subsystems.
double marginal_negativity(const DensityMatrix& rho, double theta1, double theta2);
double marginal_negativity(const DensityMatrix& rho,
                           const DichotomicObservable& slot1,
                           const DichotomicObservable& slot2);

}  // namespace oqsim
