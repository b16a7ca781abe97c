#pragma once

#include "hpds/decomposition.hpp"
#include "hpds/reduction.hpp"
#include "hpds/system.hpp"

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace hpds {

inline constexpr double kRankTol = 1e-8;

/// Number of singular values above rank_tol * sigma_max.
[[nodiscard]] std::size_t numerical_rank(const Matrix& m, double rank_tol = kRankTol);

/// Orthonormal basis of col(m) (rank decided by numerical_rank's rule).
[[nodiscard]] Matrix orthonormal_basis(const Matrix& m, double rank_tol = kRankTol);

// ---------------------------------------------------------------------------
// Stability of odeco systems x' = A x^{k-1}
// ---------------------------------------------------------------------------

enum class Stability { stable, asymptotically_stable, unstable };

[[nodiscard]] std::string_view to_string(Stability s);

inline constexpr double kAlphaZeroTol = 1e-12;

struct StabilityVerdict {
    std::vector<double> lambdas;  ///< odeco eigenvalues (exact zeros for null directions)
    std::vector<double> alphas;   ///< coordinates of x0 in the odeco basis
    std::vector<double> terms;    ///< lambda_j alpha_j^{k-2}
    std::vector<bool> zero_terms; ///< terms treated as zero (|alpha_j| <= 1e-12 or lambda_j = 0)
    Matrix U;
    Stability classification = Stability::stable;
    bool origin_unique = false;   ///< all lambda_j nonzero
};

/// Sign test on lambda_j alpha_j^{k-2}: all negative -> asymptotically stable,
/// all nonpositive with a zero -> stable, any positive -> unstable.
/// Throws NotOdeco / PreconditionError when A is not symmetric odeco.
[[nodiscard]] StabilityVerdict stability_classify(const DenseTensor& a, const Vector& x0, double odeco_tol = kOdecoTol);

// ---------------------------------------------------------------------------
// Controllability
// ---------------------------------------------------------------------------

struct ControllabilityOptions {
    std::optional<std::size_t> max_level;  ///< default n-1
    std::size_t column_cap = 200000;
    double rank_tol = kRankTol;
    bool stop_on_saturation = true;  ///< stop once the rank stops growing (the span is then invariant)
};

struct ControllabilityResult {
    Matrix R;                         ///< [M_0 M_1 ... ]
    std::vector<Matrix> level_bases;  ///< orthonormal basis that generated level j+1
    std::vector<std::size_t> level_columns;  ///< columns contributed by each level (level 0 = B)
    std::size_t levels_used = 0;
    std::size_t rank = 0;
    double rank_tol = kRankTol;
    bool is_strongly_controllable = false;  ///< rank = n and k even
    bool truncated_by_cap = false;
};

/// Columns of M_{j+1} are A x_1 v_1 ... x_{k-1} v_{k-1} over all multisets of
/// columns of an orthonormal basis of col([M_0 .. M_j]), in lexicographic order.
[[nodiscard]] ControllabilityResult controllability_matrix(const DenseTensor& a, const Matrix& b,
                                                           const ControllabilityOptions& opts = {});

/// Rank test for even k. Odd k only certifies accessibility, so it is rejected
/// with a PreconditionError.
[[nodiscard]] bool is_strongly_controllable(const DenseTensor& a, const Matrix& b, const ControllabilityOptions& opts = {});

/// Multisets of size `size` from {0..count-1}, lexicographic.
[[nodiscard]] std::vector<std::vector<std::size_t>> multisets(std::size_t count, std::size_t size);

// ---------------------------------------------------------------------------
// Observability
// ---------------------------------------------------------------------------

enum class Observability { observable, not_observable, inconclusive };

[[nodiscard]] std::string_view to_string(Observability o);

struct ObservabilityOptions {
    std::optional<std::size_t> max_level;  ///< default n-1
    double size_cap = 1e8;                 ///< max entries of the dense row chain C A_(k) F_2 ... F_j
    double rank_tol = kRankTol;
    bool stop_on_stagnation = false;
};

struct ObservabilityResult {
    Matrix O;                   ///< blocks P_0 .. P_levels stacked
    Vector x;
    std::vector<Matrix> blocks; ///< each l x n
    std::size_t levels_used = 0;
    std::size_t rank = 0;
    double rank_tol = kRankTol;
    bool size_capped = false;
    Observability verdict = Observability::not_observable;

    [[nodiscard]] bool is_locally_weakly_observable() const { return verdict == Observability::observable; }
};

/// State-dependent observability matrix: P_0 = C and
/// P_j = C A_(k) F_2 ... F_j sum_q x^{[q-1]} (x) I_n (x) x^{[j(k-2)+1-q]},
/// F_j = sum_i I^{[i-1]} (x) A_(k) (x) I^{[(j-1)(k-2)+1-i]}, applied without
/// forming F_j. P_j is the Jacobian of the j-th Lie derivative of y = Cx.
[[nodiscard]] ObservabilityResult observability_matrix(const DenseTensor& a, const Matrix& c, const Vector& x,
                                                       const ObservabilityOptions& opts = {});

/// Dense F_j (n^{(j-1)(k-2)+1} x n^{j(k-2)+1}), j >= 2. Only for small cases.
[[nodiscard]] Matrix observability_transition(const DenseTensor& a, std::size_t j);

[[nodiscard]] Observability is_locally_weakly_observable(const DenseTensor& a, const Matrix& c, const Vector& x,
                                                         const ObservabilityOptions& opts = {});

// ---------------------------------------------------------------------------
// Preservation under reduction
// ---------------------------------------------------------------------------

inline constexpr double kPreservationTol = 1e-8;

struct PreservationCheck {
    std::optional<double> residual_controllability;  ///< ||R_red - V'R||_F
    std::optional<double> residual_observability;    ///< ||O_red(z) - O(x)V||_F
    double reference_norm = 0.0;  ///< ||R||_F or ||O(x)||_F
    bool exact_reduction = false;
    std::size_t n = 0, r = 0;
    std::size_t rank_full = 0;     ///< rank of R or O(x)
    std::size_t rank_reduced = 0;  ///< rank of the aligned R_red or O_red(z)
    std::size_t rank_reduced_independent = 0;  ///< reduced matrix computed from scratch
    std::size_t levels_used = 0;
    bool within_tolerance = false;   ///< residual <= 1e-8 (1 + reference_norm)
    bool implication_holds = true;   ///< full rank n => rank r (checked only for exact reductions)
};

/// Builds R for the full model and R_red from A_red, V'B over the aligned bases
/// V'Q_j, then compares R_red with V'R. Requires B on both models.
[[nodiscard]] PreservationCheck check_controllability_preservation(const InputOutputHpds& model, const ReducedModel& reduced,
                                                                   const ControllabilityOptions& opts = {});

/// Compares O_red(V'x) with O(x)V over the same number of levels. Requires a
/// symmetric dynamic tensor and C on both models.
[[nodiscard]] PreservationCheck check_observability_preservation(const InputOutputHpds& model, const ReducedModel& reduced,
                                                                 const Vector& x, const ObservabilityOptions& opts = {});

}  // namespace hpds
