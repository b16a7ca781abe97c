#include "hpds/tensor.hpp"

#include "hpds/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>

namespace hpds {
namespace {

std::size_t product(const std::vector<std::size_t>& dims, std::size_t begin, std::size_t end) {
    std::size_t p = 1;
    for (std::size_t i = begin; i < end; ++i) p *= dims[i];
    return p;
}

std::size_t checked_size(const std::vector<std::size_t>& dims) {
    if (dims.empty()) throw InputError("tensor must have order >= 1");
    for (std::size_t d : dims)
        if (d == 0) throw InputError("tensor extents must be positive");
    return product(dims, 0, dims.size());
}

void require_mode(const DenseTensor& a, std::size_t mode) {
    if (mode >= a.order())
        throw InputError("mode " + std::to_string(mode) + " out of range for order-" +
                         std::to_string(a.order()) + " tensor");
}

void require_cubical(const DenseTensor& a, const char* what) {
    if (!a.is_cubical()) throw InputError(std::string(what) + " requires a cubical tensor");
}

// Layout of a tensor around one mode: data[a + left * (j + n * b)].
struct ModeSplit {
    std::size_t left, n, right;
};

ModeSplit split(const std::vector<std::size_t>& dims, std::size_t mode) {
    return {product(dims, 0, mode), dims[mode], product(dims, mode + 1, dims.size())};
}

// Linear index of the orbit representative: first `leading` indices sorted ascending.
std::size_t canonical_index(std::vector<std::size_t> idx, std::size_t leading, std::size_t n) {
    std::sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(leading));
    std::size_t lin = 0;
    for (std::size_t p = idx.size(); p-- > 0;) lin = lin * n + idx[p];
    return lin;
}

}  // namespace

DenseTensor::DenseTensor(std::vector<std::size_t> dims)
    : dims_(std::move(dims)) {
    data_.assign(checked_size(dims_), 0.0);
}

DenseTensor::DenseTensor(std::vector<std::size_t> dims, std::vector<double> data)
    : dims_(std::move(dims)), data_(std::move(data)) {
    const std::size_t expected = checked_size(dims_);
    if (data_.size() != expected)
        throw InputError("tensor data length " + std::to_string(data_.size()) + " does not match shape size " +
                         std::to_string(expected));
    for (double v : data_)
        if (!std::isfinite(v)) throw InputError("tensor entries must be finite");
}

DenseTensor DenseTensor::cubical(std::size_t n, std::size_t k) {
    return DenseTensor(std::vector<std::size_t>(k, n));
}

bool DenseTensor::is_cubical() const noexcept {
    return !dims_.empty() && std::all_of(dims_.begin(), dims_.end(), [&](std::size_t d) { return d == dims_[0]; });
}

std::size_t DenseTensor::linear_index(std::span<const std::size_t> index) const {
    if (index.size() != dims_.size()) throw InputError("index arity does not match tensor order");
    std::size_t lin = 0;
    for (std::size_t p = dims_.size(); p-- > 0;) {
        if (index[p] >= dims_[p]) throw InputError("tensor index out of range");
        lin = lin * dims_[p] + index[p];
    }
    return lin;
}

DenseTensor& DenseTensor::operator+=(const DenseTensor& other) {
    if (dims_ != other.dims_) throw InputError("tensor shape mismatch in addition");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

DenseTensor& DenseTensor::operator-=(const DenseTensor& other) {
    if (dims_ != other.dims_) throw InputError("tensor shape mismatch in subtraction");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

DenseTensor& DenseTensor::operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
}

DenseTensor operator+(DenseTensor a, const DenseTensor& b) { return a += b; }
DenseTensor operator-(DenseTensor a, const DenseTensor& b) { return a -= b; }
DenseTensor operator*(double s, DenseTensor a) { return a *= s; }

Matrix unfold(const DenseTensor& a, std::size_t mode) {
    require_mode(a, mode);
    const auto [left, n, right] = split(a.dims(), mode);
    Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(left * right));
    const auto data = a.data();
    for (std::size_t b = 0; b < right; ++b)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t l = 0; l < left; ++l)
                m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(l + left * b)) = data[l + left * (j + n * b)];
    return m;
}

DenseTensor fold(const Matrix& m, std::size_t mode, const std::vector<std::size_t>& dims) {
    DenseTensor out(dims);
    require_mode(out, mode);
    const auto [left, n, right] = split(dims, mode);
    if (static_cast<std::size_t>(m.rows()) != n || static_cast<std::size_t>(m.cols()) != left * right)
        throw InputError("fold: matrix shape does not match target tensor shape");
    auto data = out.data();
    for (std::size_t b = 0; b < right; ++b)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t l = 0; l < left; ++l)
                data[l + left * (j + n * b)] = m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(l + left * b));
    return out;
}

DenseTensor mode_product(const DenseTensor& a, std::size_t mode, const Matrix& m) {
    require_mode(a, mode);
    const auto [left, n, right] = split(a.dims(), mode);
    if (static_cast<std::size_t>(m.cols()) != n)
        throw InputError("mode_product: matrix has " + std::to_string(m.cols()) + " columns, mode " +
                         std::to_string(mode) + " has extent " + std::to_string(n));
    if (m.rows() == 0) throw InputError("mode_product: matrix must have at least one row");
    const auto rows = static_cast<std::size_t>(m.rows());
    std::vector<std::size_t> dims = a.dims();
    dims[mode] = rows;
    DenseTensor out(dims);
    const auto src = a.data();
    auto dst = out.data();
    const auto L = static_cast<Eigen::Index>(left);
    for (std::size_t b = 0; b < right; ++b) {
        Eigen::Map<const Matrix> slice(src.data() + b * left * n, L, static_cast<Eigen::Index>(n));
        Eigen::Map<Matrix> target(dst.data() + b * left * rows, L, static_cast<Eigen::Index>(rows));
        target.noalias() = slice * m.transpose();
    }
    return out;
}

DenseTensor mode_product(const DenseTensor& a, std::size_t mode, const Vector& v) {
    require_mode(a, mode);
    const auto [left, n, right] = split(a.dims(), mode);
    if (static_cast<std::size_t>(v.size()) != n)
        throw InputError("mode_product: vector length " + std::to_string(v.size()) + " does not match mode extent " +
                         std::to_string(n));
    std::vector<std::size_t> dims = a.dims();
    dims.erase(dims.begin() + static_cast<std::ptrdiff_t>(mode));
    if (dims.empty()) dims.push_back(1);
    DenseTensor out(dims);
    const auto src = a.data();
    auto dst = out.data();
    const auto L = static_cast<Eigen::Index>(left);
    for (std::size_t b = 0; b < right; ++b) {
        Eigen::Map<const Matrix> slice(src.data() + b * left * n, L, static_cast<Eigen::Index>(n));
        Eigen::Map<Vector> target(dst.data() + b * left, L);
        target.noalias() = slice * v;
    }
    return out;
}

Vector contract_leading(const DenseTensor& a, std::span<const Vector> vs) {
    if (vs.size() > a.order()) throw InputError("contract_leading: more vectors than tensor modes");
    // Contracting mode 0 of a first-index-fastest array is a transposed
    // matrix-vector product on the flat data.
    Vector current = Eigen::Map<const Vector>(a.data().data(), static_cast<Eigen::Index>(a.size()));
    std::size_t remaining = a.size();
    for (std::size_t p = 0; p < vs.size(); ++p) {
        const std::size_t n = a.dim(p);
        if (static_cast<std::size_t>(vs[p].size()) != n)
            throw InputError("contract_leading: vector " + std::to_string(p) + " has wrong length");
        remaining /= n;
        Eigen::Map<const Matrix> m(current.data(), static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(remaining));
        Vector next = m.transpose() * vs[p];
        current = std::move(next);
    }
    return current;
}

Vector contract_state(const DenseTensor& a, const Vector& x) {
    require_cubical(a, "contract_state");
    if (a.order() < 2) throw InputError("contract_state requires order >= 2");
    if (static_cast<std::size_t>(x.size()) != a.dim(0)) throw InputError("contract_state: state length mismatch");
    const std::vector<Vector> vs(a.order() - 1, x);
    return contract_leading(a, vs);
}

Matrix contract_state_matrix(const DenseTensor& a, const Vector& x) {
    require_cubical(a, "contract_state_matrix");
    if (a.order() < 2) throw InputError("contract_state_matrix requires order >= 2");
    const auto n = static_cast<Eigen::Index>(a.dim(0));
    if (x.size() != n) throw InputError("contract_state_matrix: state length mismatch");
    const std::vector<Vector> vs(a.order() - 2, x);
    const Vector flat = contract_leading(a, vs);
    return Eigen::Map<const Matrix>(flat.data(), n, n);
}

DenseTensor outer(std::span<const Vector> vectors) {
    if (vectors.empty()) throw InputError("outer: at least one vector required");
    std::vector<std::size_t> dims;
    std::vector<double> data{1.0};
    for (const Vector& v : vectors) {
        if (v.size() == 0) throw InputError("outer: vectors must be nonempty");
        dims.push_back(static_cast<std::size_t>(v.size()));
        std::vector<double> next(data.size() * static_cast<std::size_t>(v.size()));
        for (Eigen::Index j = 0; j < v.size(); ++j)
            for (std::size_t i = 0; i < data.size(); ++i)
                next[i + data.size() * static_cast<std::size_t>(j)] = data[i] * v(j);
        data = std::move(next);
    }
    return DenseTensor(std::move(dims), std::move(data));
}

DenseTensor outer_power(const Vector& v, std::size_t k) {
    const std::vector<Vector> vs(k, v);
    return outer(vs);
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Matrix kron_power(const Matrix& m, std::size_t q) {
    Matrix out = Matrix::Identity(1, 1);
    for (std::size_t i = 0; i < q; ++i) out = kron(m, out);
    return out;
}

Vector kron_power(const Vector& v, std::size_t q) {
    Vector out = Vector::Ones(1);
    for (std::size_t i = 0; i < q; ++i) {
        Vector next(v.size() * out.size());
        for (Eigen::Index a = 0; a < v.size(); ++a) next.segment(a * out.size(), out.size()) = v(a) * out;
        out = std::move(next);
    }
    return out;
}

double symmetry_defect(const DenseTensor& a, std::size_t leading_modes) {
    require_cubical(a, "symmetry test");
    leading_modes = std::min(leading_modes, a.order());
    if (leading_modes < 2) return 0.0;
    const std::size_t n = a.dim(0);
    std::vector<double> lo(a.size(), std::numeric_limits<double>::infinity());
    std::vector<double> hi(a.size(), -std::numeric_limits<double>::infinity());
    IndexCounter it(a.dims());
    std::size_t lin = 0;
    do {
        const std::size_t c = canonical_index(it.index(), leading_modes, n);
        lo[c] = std::min(lo[c], a[lin]);
        hi[c] = std::max(hi[c], a[lin]);
        ++lin;
    } while (it.next());
    double defect = 0.0;
    for (std::size_t c = 0; c < a.size(); ++c)
        if (hi[c] >= lo[c]) defect = std::max(defect, hi[c] - lo[c]);
    return defect;
}

bool is_symmetric(const DenseTensor& a, double tol) { return symmetry_defect(a, a.order()) <= tol; }

bool is_almost_symmetric(const DenseTensor& a, double tol) {
    return symmetry_defect(a, a.order() - 1) <= tol;
}

DenseTensor symmetrize_modes(const DenseTensor& a, std::size_t leading_modes) {
    require_cubical(a, "symmetrization");
    leading_modes = std::min(leading_modes, a.order());
    if (leading_modes < 2) return a;
    const std::size_t n = a.dim(0);
    std::vector<double> sum(a.size(), 0.0), lo(a.size(), std::numeric_limits<double>::infinity()),
        hi(a.size(), -std::numeric_limits<double>::infinity());
    std::vector<std::size_t> count(a.size(), 0), canon(a.size());
    IndexCounter it(a.dims());
    std::size_t lin = 0;
    do {
        const std::size_t c = canonical_index(it.index(), leading_modes, n);
        canon[lin] = c;
        sum[c] += a[lin];
        lo[c] = std::min(lo[c], a[lin]);
        hi[c] = std::max(hi[c], a[lin]);
        ++count[c];
        ++lin;
    } while (it.next());
    DenseTensor out = a;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const std::size_t c = canon[i];
        // Orbits that already agree keep their value bit-for-bit.
        out[i] = (lo[c] == hi[c]) ? lo[c] : sum[c] / static_cast<double>(count[c]);
    }
    return out;
}

DenseTensor symmetrize_first_modes(const DenseTensor& a) {
    require_cubical(a, "symmetrize_first_modes");
    return symmetrize_modes(a, a.order() - 1);
}

DenseTensor symmetrize(const DenseTensor& a) { return symmetrize_modes(a, a.order()); }

double frobenius_norm(const DenseTensor& a) {
    return Eigen::Map<const Vector>(a.data().data(), static_cast<Eigen::Index>(a.size())).norm();
}

DenseTensor multilinear_transform(const DenseTensor& a, const Matrix& m) {
    DenseTensor out = a;
    for (std::size_t p = 0; p < a.order(); ++p) out = mode_product(out, p, m);
    return out;
}

}  // namespace hpds
