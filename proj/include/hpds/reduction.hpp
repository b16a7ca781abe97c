#pragma once

#include "hpds/decomposition.hpp"
#include "hpds/system.hpp"

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

namespace hpds {

/// Keep exactly r shared directions.
struct FixedRank {
    std::size_t r = 1;
};

using ReductionCriterion = std::variant<RelativeTolerance, FixedRank>;

struct ReducedModel {
    InputOutputHpds model;  ///< z' = A_red z^{k-1} + B_red u, y = C_red z
    Matrix V;               ///< n x r projection basis, V'V = I
    Matrix Vk;              ///< n x r_k last-mode factor of the compact HOSVD
    std::size_t r = 0;
};

struct ReductionReport {
    std::size_t n = 0, k = 0, m = 0, l = 0;
    std::size_t r = 0;
    std::size_t r_k = 0;
    std::vector<double> sigma_retained;
    std::vector<double> sigma_discarded;
    std::vector<double> sigma_k_retained;
    std::vector<double> sigma_k_discarded;
    double residual = 0.0;  ///< relative truncation residual of the compact HOSVD
    bool exact = false;     ///< residual <= kExactResidual
    bool last_factor_shared = false;
    std::uint64_t params_before = 0;
    std::uint64_t params_after = 0;
};

inline constexpr double kExactResidual = 1e-10;

struct Reduction {
    ReducedModel reduced;
    ReductionReport report;
};

/// HOSVD-based reduction: A_red = S_red x_k V'Vk (re-symmetrized over the
/// first k-1 modes), B_red = V'B, C_red = CV. For a fixed rank the last-mode
/// rank follows `last_mode_tol`, capped at r for symmetric tensors.
[[nodiscard]] Reduction reduce(const InputOutputHpds& model, const ReductionCriterion& criterion,
                               double last_mode_tol = 1e-8);

[[nodiscard]] Vector project_state(const Matrix& V, const Vector& x);  ///< z = V'x
[[nodiscard]] Vector lift_state(const Matrix& V, const Vector& z);     ///< x = Vz

/// ||A - A x_{1..k-1} VV' x_k VkVk'||_F / ||A||_F
[[nodiscard]] double reduction_residual(const InputOutputHpds& model, const ReducedModel& reduced);

}  // namespace hpds
