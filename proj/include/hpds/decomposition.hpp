#pragma once

#include "hpds/tensor.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace hpds {

/// Keep singular values sigma > tol * sigma_max in every mode.
struct RelativeTolerance {
    double tol = 1e-8;
};

/// Keep exactly ranks[p] columns in mode p.
struct FixedRanks {
    std::vector<std::size_t> ranks;
};

using TruncationCriterion = std::variant<RelativeTolerance, FixedRanks>;

struct HosvdFactors {
    DenseTensor core;
    std::vector<Matrix> factors;
    std::vector<std::vector<double>> mode_singular_values;  ///< full spectrum per mode, descending
    double residual = 0.0;  ///< ||A - core x_p factors||_F / ||A||_F
};

/// Compact HOSVD sharing one factor V across the first k-1 modes.
struct SharedCompactHosvd {
    DenseTensor core;  ///< r x ... x r x r_k
    Matrix V;          ///< n x r
    Matrix Vk;         ///< n x r_k
    std::vector<double> sigma;    ///< mode-1 singular values (full, descending)
    std::vector<double> sigma_k;  ///< last-mode singular values (full, descending)
    std::size_t r = 0;
    std::size_t r_k = 0;
    bool last_factor_shared = false;  ///< Vk was set to V (symmetric input)
    double residual = 0.0;
};

// Left singular vectors of one unfolding, with the library's sign and tie conventions.
struct ModeBasis {
    Matrix U;                   ///< n_p x n_p orthogonal
    std::vector<double> sigma;  ///< length n_p, descending (padded with zeros)
};

/// Full orthogonal left singular basis of a (possibly wide) matrix.
/// Each column is flipped so its largest-magnitude entry is positive (lowest
/// index wins ties); columns with equal singular values are ordered lexicographically.
[[nodiscard]] ModeBasis left_singular_basis(const Matrix& m);

/// Index count kept by the relative-tolerance rule (at least 1 when sigma_max > 0).
[[nodiscard]] std::size_t rank_from_tolerance(const std::vector<double>& sigma, double tol);

/// Full HOSVD. Throws InputError for the zero tensor.
[[nodiscard]] HosvdFactors hosvd(const DenseTensor& a);

[[nodiscard]] std::vector<double> mode_singular_values(const DenseTensor& a, std::size_t mode);

[[nodiscard]] HosvdFactors compact_hosvd(const DenseTensor& a, const TruncationCriterion& criterion);

/// Rule for the shared factor: tolerance, or a fixed r for modes 1..k-1 with the
/// last-mode rank picked by `last_mode_tol`.
struct SharedTruncation {
    std::variant<RelativeTolerance, std::size_t> rule = RelativeTolerance{};
    double last_mode_tol = 1e-8;
};

/// Compact HOSVD of an almost-symmetric tensor with respect to its first k-1
/// modes. Throws PreconditionError when the input is not almost symmetric.
[[nodiscard]] SharedCompactHosvd shared_factor_compact_hosvd(const DenseTensor& a, const SharedTruncation& rule = {});

/// Reconstruction core x_1 V ... x_{k-1} V x_k Vk.
[[nodiscard]] DenseTensor reconstruct(const SharedCompactHosvd& h);
[[nodiscard]] DenseTensor reconstruct(const HosvdFactors& h);

struct ZEigenpair {
    double lambda = 0.0;
    Vector u;
    double residual = 0.0;  ///< ||A u^{k-1} - lambda u||_2
};

struct ZEigenOptions {
    std::size_t starts = 32;
    std::size_t max_iter = 5000;
    double tol = 1e-10;     ///< acceptance residual
    double shift = 0.0;     ///< 0 selects (k-1) ||A||_F; both signs are always tried
    std::uint64_t seed = 0x5eed;
};

struct ZEigenSearch {
    std::vector<ZEigenpair> pairs;  ///< sorted by lambda descending
    std::string diagnostic;
};

/// Z-eigenpairs of a symmetric tensor (k >= 3) by shifted symmetric
/// higher-order power iteration from seeded starts, polished with Newton
/// steps on the constrained eigen-equations. Best effort, not exhaustive.
[[nodiscard]] ZEigenSearch z_eigenpairs(const DenseTensor& a, const ZEigenOptions& opts = {});

/// Residual ||A u^{k-1} - lambda u|| for a unit u.
[[nodiscard]] double z_residual(const DenseTensor& a, double lambda, const Vector& u);

struct OdecoDecomposition {
    std::vector<double> lambdas;  ///< length n, zeros for the null directions
    Matrix U;                     ///< n x n orthogonal, columns u_j
    double off_diagonal_mass = 0.0;
};

inline constexpr double kOdecoTol = 1e-8;

/// A = sum_j lambda_j u_j^{o k}. Throws PreconditionError for non-symmetric
/// input and NotOdeco when the relative off-diagonal core mass exceeds tol.
[[nodiscard]] OdecoDecomposition odeco_decompose(const DenseTensor& a, double tol = kOdecoTol);

[[nodiscard]] bool is_odeco(const DenseTensor& a, double tol = kOdecoTol);

/// sum_j lambda_j u_j^{o k}
[[nodiscard]] DenseTensor odeco_tensor(const std::vector<double>& lambdas, const Matrix& U, std::size_t k);

}  // namespace hpds
