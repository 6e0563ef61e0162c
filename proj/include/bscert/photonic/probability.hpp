// Copyright 2026 The bscert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "bscert/core/matrix.hpp"
#include "bscert/core/permanent.hpp"
#include "bscert/photonic/pattern.hpp"

namespace bscert {

/// Phases in radians, reduced to [0, 2 pi).
class PhaseVector {
   public:
    PhaseVector() = default;
    explicit PhaseVector(std::vector<double> phases) : phases_(std::move(phases)) {
        constexpr double two_pi = 2.0 * std::numbers::pi;
        for (auto &p : phases_) {
            if (!std::isfinite(p)) throw InputError("PhaseVector: non-finite phase");
            p = std::fmod(p, two_pi);
            if (p < 0.0) p += two_pi;
            if (p >= two_pi) p = 0.0;
        }
    }
    PhaseVector(std::initializer_list<double> phases) : PhaseVector(std::vector<double>(phases)) {}

    std::size_t size() const { return phases_.size(); }
    double operator[](std::size_t i) const { return phases_[i]; }
    std::span<const double> values() const { return phases_; }

   private:
    std::vector<double> phases_;
};

/// Non-negative coherent amplitudes |alpha_j|, one per input mode.
class CoherentInput {
   public:
    CoherentInput() = default;
    explicit CoherentInput(std::vector<double> amplitudes) : amps_(std::move(amplitudes)) {
        if (amps_.empty()) throw DimensionError("CoherentInput: at least one mode required");
        for (auto a : amps_)
            if (!std::isfinite(a) || a < 0.0) throw InputError("CoherentInput: amplitudes must be finite and >= 0");
    }
    CoherentInput(std::initializer_list<double> amplitudes) : CoherentInput(std::vector<double>(amplitudes)) {}

    /// alpha_j = sqrt(s_j): unit amplitude on singly occupied modes, vacuum elsewhere.
    static CoherentInput from_pattern(const OccupationPattern &pattern) {
        std::vector<double> amps;
        for (auto s : pattern.occupations()) amps.push_back(std::sqrt(static_cast<double>(s)));
        return CoherentInput(std::move(amps));
    }

    std::size_t modes() const { return amps_.size(); }
    double operator[](std::size_t j) const { return amps_[j]; }
    std::span<const double> values() const { return amps_; }

    /// Mean total photon number sum_j alpha_j^2.
    double mean_photons() const {
        double s = 0.0;
        for (auto a : amps_) s += a * a;
        return s;
    }

    bool operator==(const CoherentInput &) const = default;

   private:
    std::vector<double> amps_;
};

namespace detail {

inline void require_same_modes(const UnitaryMatrix &u, const OccupationPattern &p, const char *who) {
    if (p.modes() != u.dim()) {
        throw DimensionError(std::string(who) + ": pattern has " + std::to_string(p.modes()) +
                             " modes, matrix dimension is " + std::to_string(u.dim()));
    }
}

inline void require_photon_match(const UnitaryMatrix &u, const OccupationPattern &s, const OccupationPattern &t,
                                 const char *who) {
    require_same_modes(u, s, who);
    require_same_modes(u, t, who);
    if (s.total() != t.total()) throw InputError(std::string(who) + ": input and output photon totals differ");
}

inline void require_single_photons(const OccupationPattern &s, const char *who) {
    if (!s.single_photon_inputs()) {
        throw InputError(std::string(who) + ": mean-field input must have at most one photon per mode");
    }
}

/// prod_q |sum_p e^{i theta_p} U(k_q, j_p)|^2
inline double meanfield_product(const UnitaryMatrix &u, const ModeArrangement &in, const ModeArrangement &out,
                                std::span<const double> theta) {
    double prod = 1.0;
    for (auto k : out) {
        Complex amp = 0.0;
        for (std::size_t p = 0; p < in.size(); ++p) amp += std::polar(1.0, theta[p]) * u(k, in[p]);
        prod *= std::norm(amp);
    }
    return prod;
}

/// n! / (n^n prod_l t_l!)
inline double multinomial_prefactor(unsigned n, const OccupationPattern &t) {
    return factorial(n) / (std::pow(static_cast<double>(n), static_cast<double>(n)) * factorial_product(t));
}

/// Mean of f over a uniform grid of `points` per axis on [0, 2 pi)^dims.
/// Exact for trigonometric polynomials of degree < points in every variable.
template <typename F>
double torus_grid_mean(std::size_t dims, std::size_t points, F &&f) {
    std::vector<double> angles(dims, 0.0);
    std::vector<std::size_t> idx(dims, 0);
    const double step = 2.0 * std::numbers::pi / static_cast<double>(points);
    double sum = 0.0;
    std::size_t evaluations = 0;
    while (true) {
        for (std::size_t d = 0; d < dims; ++d) angles[d] = step * static_cast<double>(idx[d]);
        sum += f(std::span<const double>(angles));
        ++evaluations;
        std::size_t d = 0;
        while (d < dims && ++idx[d] == points) idx[d++] = 0;
        if (d == dims) break;
    }
    return sum / static_cast<double>(evaluations);
}

}  // namespace detail

/// n x n matrix A(q, p) = U(k_q, j_p) built from the output (rows) and input (columns) arrangements.
inline ComplexMatrix scattering_submatrix(const UnitaryMatrix &u, const OccupationPattern &s,
                                          const OccupationPattern &t) {
    detail::require_photon_match(u, s, t, "scattering_submatrix");
    const ModeArrangement in = pattern_to_arrangement(s);
    const ModeArrangement out = pattern_to_arrangement(t);
    ComplexMatrix a(out.size(), in.size());
    for (std::size_t q = 0; q < out.size(); ++q)
        for (std::size_t p = 0; p < in.size(); ++p) a(q, p) = u(out[q], in[p]);
    return a;
}

/// Indistinguishable photons: |Perm A|^2 / prod s_i! t_i!.
inline double boson_probability(const UnitaryMatrix &u, const OccupationPattern &s, const OccupationPattern &t) {
    const ComplexMatrix a = scattering_submatrix(u, s, t);
    return std::norm(permanent(a)) / (factorial_product(s) * factorial_product(t));
}

/// Distinguishable photons routed independently: Perm(|A|^2) / prod t_i!.
/// Input multiplicities are not divided out: photons sharing an input mode are
/// still distinct, and Perm(|A|^2) already counts each routing once per output
/// relabelling.
inline double classical_probability(const UnitaryMatrix &u, const OccupationPattern &s, const OccupationPattern &t) {
    const ComplexMatrix a = scattering_submatrix(u, s, t);
    std::vector<Complex> omega;
    omega.reserve(a.rows() * a.cols());
    for (const auto &z : a.data()) omega.emplace_back(std::norm(z));
    const ComplexMatrix om(a.rows(), a.cols(), std::move(omega));
    return permanent(om).real() / factorial_product(t);
}

/// Mean-field sampler for one fixed phase vector (one phase per input photon).
inline double meanfield_probability_given_phases(const UnitaryMatrix &u, const OccupationPattern &s,
                                                 const OccupationPattern &t, const PhaseVector &theta) {
    detail::require_photon_match(u, s, t, "meanfield_probability_given_phases");
    detail::require_single_photons(s, "meanfield_probability_given_phases");
    const unsigned n = s.total();
    if (theta.size() != n) throw DimensionError("meanfield_probability_given_phases: need one phase per photon");
    if (n == 0) return 1.0;
    return detail::multinomial_prefactor(n, t) *
           detail::meanfield_product(u, pattern_to_arrangement(s), pattern_to_arrangement(t), theta.values());
}

/// Product-of-averages form n!/(n^n prod t_l!) prod_q sum_p |U(k_q, j_p)|^2.
/// Exact phase average when every photon carries its own fresh phase vector.
inline double meanfield_average_probability(const UnitaryMatrix &u, const OccupationPattern &s,
                                            const OccupationPattern &t) {
    detail::require_photon_match(u, s, t, "meanfield_average_probability");
    const unsigned n = s.total();
    if (n == 0) return 1.0;
    const ModeArrangement in = pattern_to_arrangement(s);
    double prod = 1.0;
    for (auto k : pattern_to_arrangement(t)) {
        double col = 0.0;
        for (auto j : in) col += std::norm(u(k, j));
        prod *= col;
    }
    return detail::multinomial_prefactor(n, t) * prod;
}

/// Test-state value n!/(n^n prod t_k!), independent of the unitary.
inline double meanfield_test_state_probability(unsigned n, const OccupationPattern &t) {
    if (t.total() != n) throw InputError("meanfield_test_state_probability: output total differs from n");
    if (t.modes() != n) throw DimensionError("meanfield_test_state_probability: test state needs n modes");
    if (n == 0) return 1.0;
    return detail::multinomial_prefactor(n, t);
}

/// Exact average of the fixed-phase mean-field probability when one phase vector
/// is shared by all photons of a run. Evaluated by trapezoidal quadrature on the
/// torus, exact because the integrand is a trigonometric polynomial.
inline double meanfield_shared_average_probability(const UnitaryMatrix &u, const OccupationPattern &s,
                                                   const OccupationPattern &t) {
    detail::require_photon_match(u, s, t, "meanfield_shared_average_probability");
    detail::require_single_photons(s, "meanfield_shared_average_probability");
    const unsigned n = s.total();
    if (n <= 1) return meanfield_average_probability(u, s, t);
    const ModeArrangement in = pattern_to_arrangement(s);
    const ModeArrangement out = pattern_to_arrangement(t);
    std::vector<double> theta(n, 0.0);
    // the first phase is global and fixed to zero
    const double mean = detail::torus_grid_mean(n - 1, n + 1, [&](std::span<const double> rel) {
        std::copy(rel.begin(), rel.end(), theta.begin() + 1);
        return detail::meanfield_product(u, in, out, theta);
    });
    return detail::multinomial_prefactor(n, t) * mean;
}

namespace detail {

inline std::vector<Complex> coherent_output_fields(const UnitaryMatrix &u, const CoherentInput &alpha,
                                                   std::span<const double> chi) {
    const std::size_t n = u.dim();
    std::vector<Complex> beta(n, 0.0);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j) beta[k] += std::polar(alpha[j], chi[j]) * u(k, j);
    return beta;
}

inline double poisson_product(std::span<const double> means, const OccupationPattern &t) {
    double total_mean = 0.0;
    double prod = 1.0;
    for (std::size_t k = 0; k < means.size(); ++k) {
        total_mean += means[k];
        prod *= std::pow(means[k], static_cast<double>(t[k])) / factorial(t[k]);
    }
    return std::exp(-total_mean) * prod;
}

inline void require_coherent_dims(const UnitaryMatrix &u, const CoherentInput &alpha, const OccupationPattern &t,
                                  const char *who) {
    if (alpha.modes() != u.dim()) throw DimensionError(std::string(who) + ": amplitude count differs from dimension");
    require_same_modes(u, t, who);
}

}  // namespace detail

/// Coherent-state sampler for fixed input phases chi_j.
inline double coherent_probability_given_phases(const UnitaryMatrix &u, const CoherentInput &alpha,
                                                const PhaseVector &chi, const OccupationPattern &t) {
    detail::require_coherent_dims(u, alpha, t, "coherent_probability_given_phases");
    if (chi.size() != u.dim()) throw DimensionError("coherent_probability_given_phases: need one phase per mode");
    const auto beta = detail::coherent_output_fields(u, alpha, chi.values());
    std::vector<double> means;
    for (const auto &b : beta) means.push_back(std::norm(b));
    return detail::poisson_product(means, t);
}

/// Product-of-averages form: independent Poisson modes with means sum_j |alpha_j U(k, j)|^2.
inline double coherent_average_probability(const UnitaryMatrix &u, const CoherentInput &alpha,
                                           const OccupationPattern &t) {
    detail::require_coherent_dims(u, alpha, t, "coherent_average_probability");
    const std::size_t n = u.dim();
    std::vector<double> means(n, 0.0);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j) means[k] += std::norm(alpha[j] * u(k, j));
    return detail::poisson_product(means, t);
}

/// Exact average of the fixed-phase coherent probability over independent uniform
/// phases chi_j, by exact torus quadrature over the occupied input modes.
inline double coherent_shared_average_probability(const UnitaryMatrix &u, const CoherentInput &alpha,
                                                  const OccupationPattern &t) {
    detail::require_coherent_dims(u, alpha, t, "coherent_shared_average_probability");
    std::vector<std::size_t> active;
    for (std::size_t j = 0; j < alpha.modes(); ++j)
        if (alpha[j] > 0.0) active.push_back(j);
    if (active.size() <= 1) return coherent_average_probability(u, alpha, t);
    std::vector<double> chi(u.dim(), 0.0);
    std::vector<double> means(u.dim(), 0.0);
    return detail::torus_grid_mean(active.size() - 1, t.total() + 1, [&](std::span<const double> rel) {
        for (std::size_t i = 1; i < active.size(); ++i) chi[active[i]] = rel[i - 1];
        const auto beta = detail::coherent_output_fields(u, alpha, chi);
        for (std::size_t k = 0; k < beta.size(); ++k) means[k] = std::norm(beta[k]);
        return detail::poisson_product(means, t);
    });
}

}  // namespace bscert
