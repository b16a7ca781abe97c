#pragma once

#include "hpds/io.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace hpds {

struct OdecoSpec {
    std::size_t n = 2, k = 4, r = 2, m = 0, l = 0;
    double lambda_min = 0.5;  ///< |lambda_j| ~ U(lambda_min, lambda_max)
    double lambda_max = 3.0;
    bool negative_only = false;  ///< all nonzero lambda_j < 0 (otherwise random signs)
};

/// A = sum_{j<r} lambda_j u_j^{o k} with U an orthonormalized Gaussian matrix.
/// Draw order: U, then lambda magnitudes and signs, then B, then C.
[[nodiscard]] ModelFile generate_odeco(const OdecoSpec& spec, std::uint64_t seed);

/// Gaussian entries symmetrized over the first k-1 modes, Gaussian B (n x m) and C (l x n).
[[nodiscard]] ModelFile generate_almost_symmetric(std::size_t n, std::size_t k, std::size_t m, std::size_t l, std::uint64_t seed);

/// Six-state quartic-tensor odeco system with a rank-3 diagonal core.
[[nodiscard]] ModelFile generate_example1();
/// n = 12, k = 4, m = 5 almost-symmetric Gaussian system.
[[nodiscard]] ModelFile generate_example2(std::uint64_t seed);

namespace example1 {
/// Printed basis (4 digits); not exactly orthonormal.
[[nodiscard]] Matrix printed_basis();
/// Polar factor of the printed basis, used to build the tensor.
[[nodiscard]] Matrix basis();
[[nodiscard]] std::vector<double> core_diagonal();
[[nodiscard]] Vector initial_state();
}  // namespace example1

}  // namespace hpds
