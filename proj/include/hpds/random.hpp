#pragma once

#include "hpds/tensor.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string_view>

namespace hpds {

/// Seedable generator with a platform-independent output stream.
///
/// std::mt19937_64 is fully specified by the standard, but the standard
/// distributions are not, so normals are produced with an explicit
/// Box-Muller transform and uniforms with the 53-bit mantissa construction.
class Rng {
public:
    static constexpr std::string_view kAlgorithm = "mt19937_64/box-muller";

    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

    bool coin() { return (engine_() >> 63) != 0; }

    Vector normal_vector(Eigen::Index n) {
        Vector v(n);
        for (Eigen::Index i = 0; i < n; ++i) v(i) = normal();
        return v;
    }

    /// Column-major fill, so the stream order matches the flat data order.
    Matrix normal_matrix(Eigen::Index rows, Eigen::Index cols) {
        Matrix m(rows, cols);
        for (Eigen::Index j = 0; j < cols; ++j)
            for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = normal();
        return m;
    }

    DenseTensor normal_tensor(std::vector<std::size_t> dims) {
        DenseTensor t(std::move(dims));
        for (double& v : t.data()) v = normal();
        return t;
    }

    /// Orthonormalized Gaussian n x r matrix (Householder QR, signs fixed so R has a positive diagonal).
    Matrix orthonormal(Eigen::Index n, Eigen::Index r) {
        const Matrix g = normal_matrix(n, r);
        Eigen::HouseholderQR<Matrix> qr(g);
        Matrix q = qr.householderQ() * Matrix::Identity(n, r);
        const Matrix rr = qr.matrixQR().topLeftCorner(r, r);
        for (Eigen::Index j = 0; j < r; ++j)
            if (rr(j, j) < 0) q.col(j) *= -1.0;
        return q;
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace hpds
