#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace hpds {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Order-k real array stored first-index-fastest (column-major / colexicographic).
///
/// Modes are zero-based throughout the library: mode 0 is the conventional
/// "first" mode and mode order()-1 the last one. The mode-0 unfolding of a
/// tensor is a pure reshape of its storage.
class DenseTensor {
public:
    DenseTensor() = default;

    /// Zero tensor with the given shape. Every extent must be positive.
    explicit DenseTensor(std::vector<std::size_t> dims);

    /// Tensor with the given shape and flat first-index-fastest data.
    /// Throws InputError on length mismatch or non-finite entries.
    DenseTensor(std::vector<std::size_t> dims, std::vector<double> data);

    /// Zero cubical tensor of order k and dimension n.
    static DenseTensor cubical(std::size_t n, std::size_t k);

    [[nodiscard]] std::size_t order() const noexcept { return dims_.size(); }
    [[nodiscard]] std::size_t dim(std::size_t mode) const { return dims_.at(mode); }
    [[nodiscard]] const std::vector<std::size_t>& dims() const noexcept { return dims_; }
    [[nodiscard]] std::size_t size() const noexcept { return data_.size(); }
    [[nodiscard]] bool is_cubical() const noexcept;

    [[nodiscard]] std::span<const double> data() const noexcept { return data_; }
    [[nodiscard]] std::span<double> data() noexcept { return data_; }
    [[nodiscard]] const std::vector<double>& values() const noexcept { return data_; }

    [[nodiscard]] std::size_t linear_index(std::span<const std::size_t> index) const;

    double& operator()(std::span<const std::size_t> index) { return data_[linear_index(index)]; }
    double operator()(std::span<const std::size_t> index) const { return data_[linear_index(index)]; }
    double& at(std::initializer_list<std::size_t> index) {
        return (*this)(std::span<const std::size_t>(index.begin(), index.size()));
    }
    [[nodiscard]] double at(std::initializer_list<std::size_t> index) const {
        return (*this)(std::span<const std::size_t>(index.begin(), index.size()));
    }

    double& operator[](std::size_t linear) { return data_[linear]; }
    double operator[](std::size_t linear) const { return data_[linear]; }

    DenseTensor& operator+=(const DenseTensor& other);
    DenseTensor& operator-=(const DenseTensor& other);
    DenseTensor& operator*=(double s);

    friend bool operator==(const DenseTensor&, const DenseTensor&) = default;

private:
    std::vector<std::size_t> dims_;
    std::vector<double> data_;
};

DenseTensor operator+(DenseTensor a, const DenseTensor& b);
DenseTensor operator-(DenseTensor a, const DenseTensor& b);
DenseTensor operator*(double s, DenseTensor a);

/// Iterates over all multi-indices of a shape in storage order (first index fastest).
class IndexCounter {
public:
    explicit IndexCounter(std::vector<std::size_t> dims)
        : dims_(std::move(dims)), index_(dims_.size(), 0) {}

    [[nodiscard]] const std::vector<std::size_t>& index() const noexcept { return index_; }

    /// Advances to the next multi-index; returns false after the last one.
    bool next() noexcept {
        for (std::size_t p = 0; p < dims_.size(); ++p) {
            if (++index_[p] < dims_[p]) return true;
            index_[p] = 0;
        }
        return false;
    }

private:
    std::vector<std::size_t> dims_;
    std::vector<std::size_t> index_;
};

/// Mode-p unfolding: n_p x (prod of the other extents), columns are mode-p
/// fibers ordered colexicographically over the remaining modes.
[[nodiscard]] Matrix unfold(const DenseTensor& a, std::size_t mode);

/// Inverse of unfold for the given target shape.
[[nodiscard]] DenseTensor fold(const Matrix& m, std::size_t mode, const std::vector<std::size_t>& dims);

/// A x_p M: contracts mode p of A against the columns of M (rows(M) replaces n_p).
[[nodiscard]] DenseTensor mode_product(const DenseTensor& a, std::size_t mode, const Matrix& m);

/// A x_p v: contracts mode p against v and removes that mode. Contracting the
/// only mode of an order-1 tensor yields a 1-element tensor of shape {1}.
[[nodiscard]] DenseTensor mode_product(const DenseTensor& a, std::size_t mode, const Vector& v);

/// Contracts modes 0..vs.size()-1 with vs[0], vs[1], ... in order and returns
/// what is left (the remaining modes, flattened) as a vector.
[[nodiscard]] Vector contract_leading(const DenseTensor& a, std::span<const Vector> vs);

/// A x^{k-1}: the tensor contracted with x along its first k-1 modes.
[[nodiscard]] Vector contract_state(const DenseTensor& a, const Vector& x);

/// A x^{k-2}: the n x n matrix left after contracting the first k-2 modes with x.
/// Entry (i, j) corresponds to tensor index (..., i, j).
[[nodiscard]] Matrix contract_state_matrix(const DenseTensor& a, const Vector& x);

/// Outer product v_1 o v_2 o ... o v_k.
[[nodiscard]] DenseTensor outer(std::span<const Vector> vectors);

/// v o v o ... o v (k times).
[[nodiscard]] DenseTensor outer_power(const Vector& v, std::size_t k);

[[nodiscard]] Matrix kron(const Matrix& a, const Matrix& b);

/// m^{[q]} = m (x) m^{[q-1]} with m^{[0]} the 1x1 identity.
[[nodiscard]] Matrix kron_power(const Matrix& m, std::size_t q);
[[nodiscard]] Vector kron_power(const Vector& v, std::size_t q);

inline constexpr double kSymmetryTol = 1e-10;

/// Largest deviation between entries related by a permutation of the first
/// `leading_modes` indices. Requires a cubical tensor.
[[nodiscard]] double symmetry_defect(const DenseTensor& a, std::size_t leading_modes);

[[nodiscard]] bool is_symmetric(const DenseTensor& a, double tol = kSymmetryTol);
[[nodiscard]] bool is_almost_symmetric(const DenseTensor& a, double tol = kSymmetryTol);

/// Averages every entry over the permutations of its first `leading_modes` indices.
[[nodiscard]] DenseTensor symmetrize_modes(const DenseTensor& a, std::size_t leading_modes);

/// Average over permutations of the first k-1 indices (canonical HPDS form).
[[nodiscard]] DenseTensor symmetrize_first_modes(const DenseTensor& a);

/// Average over all index permutations.
[[nodiscard]] DenseTensor symmetrize(const DenseTensor& a);

[[nodiscard]] double frobenius_norm(const DenseTensor& a);

/// a x_0 m x_1 m ... x_{k-1} m (same matrix on every mode).
[[nodiscard]] DenseTensor multilinear_transform(const DenseTensor& a, const Matrix& m);

}  // namespace hpds
