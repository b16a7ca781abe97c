#include "hpds/errors.hpp"
#include "hpds/random.hpp"
#include "hpds/tensor.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>

using namespace hpds;

namespace {

// Naive mode product straight from the index definition.
DenseTensor naive_mode_product(const DenseTensor& a, std::size_t mode, const Matrix& m) {
    std::vector<std::size_t> dims = a.dims();
    dims[mode] = static_cast<std::size_t>(m.rows());
    DenseTensor out(dims);
    IndexCounter it(dims);
    do {
        std::vector<std::size_t> src = it.index();
        double acc = 0.0;
        for (std::size_t j = 0; j < a.dim(mode); ++j) {
            src[mode] = j;
            acc += m(static_cast<Eigen::Index>(it.index()[mode]), static_cast<Eigen::Index>(j)) * a(src);
        }
        out(it.index()) = acc;
    } while (it.next());
    return out;
}

double max_abs_diff(const DenseTensor& a, const DenseTensor& b) {
    REQUIRE(a.dims() == b.dims());
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

DenseTensor iota_tensor(std::vector<std::size_t> dims) {
    DenseTensor t(std::move(dims));
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<double>(i + 1);
    return t;
}

}  // namespace

TEST_CASE("storage is first-index-fastest") {
    const DenseTensor t = iota_tensor({2, 3, 4});
    CHECK(t.at({0, 0, 0}) == 1.0);
    CHECK(t.at({1, 0, 0}) == 2.0);
    CHECK(t.at({0, 1, 0}) == 3.0);
    CHECK(t.at({0, 0, 1}) == 7.0);
    CHECK(t.at({1, 2, 3}) == 24.0);
}

TEST_CASE("construction rejects bad data") {
    CHECK_THROWS_AS(DenseTensor({2, 2}, {1.0, 2.0, 3.0}), InputError);
    CHECK_THROWS_AS(DenseTensor({2}, {1.0, std::numeric_limits<double>::quiet_NaN()}), InputError);
    CHECK_THROWS_AS(DenseTensor({2, 0}), InputError);
}

TEST_CASE("mode-0 unfolding is a reshape and fold inverts unfold") {
    const DenseTensor t = iota_tensor({3, 2, 4});
    const Matrix u0 = unfold(t, 0);
    REQUIRE(u0.rows() == 3);
    REQUIRE(u0.cols() == 8);
    CHECK(std::equal(t.data().begin(), t.data().end(), u0.data()));
    for (std::size_t mode = 0; mode < 3; ++mode) CHECK(fold(unfold(t, mode), mode, t.dims()) == t);
}

TEST_CASE("mode-1 unfolding columns are colexicographic over the other modes") {
    const DenseTensor t = iota_tensor({2, 3, 2});
    const Matrix u1 = unfold(t, 1);
    // column c = i0 + 2 * i2
    for (std::size_t i0 = 0; i0 < 2; ++i0)
        for (std::size_t i1 = 0; i1 < 3; ++i1)
            for (std::size_t i2 = 0; i2 < 2; ++i2)
                CHECK(u1(static_cast<Eigen::Index>(i1), static_cast<Eigen::Index>(i0 + 2 * i2)) == t.at({i0, i1, i2}));
}

TEST_CASE("mode product agrees with the index-sum oracle") {
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t order = 1 + static_cast<std::size_t>(trial % 4);
        std::vector<std::size_t> dims(order);
        for (auto& d : dims) d = 1 + static_cast<std::size_t>(rng.uniform() * 4);
        const DenseTensor a = rng.normal_tensor(dims);
        for (std::size_t mode = 0; mode < order; ++mode) {
            const Matrix m = rng.normal_matrix(1 + static_cast<Eigen::Index>(rng.uniform() * 4), static_cast<Eigen::Index>(dims[mode]));
            CHECK(max_abs_diff(mode_product(a, mode, m), naive_mode_product(a, mode, m)) < 1e-12);
        }
    }
}

TEST_CASE("products on distinct modes commute, same mode composes") {
    Rng rng(5);
    const DenseTensor a = rng.normal_tensor({3, 4, 2});
    const Matrix m0 = rng.normal_matrix(2, 3);
    const Matrix m2 = rng.normal_matrix(5, 2);
    CHECK(max_abs_diff(mode_product(mode_product(a, 0, m0), 2, m2), mode_product(mode_product(a, 2, m2), 0, m0)) < 1e-12);
    const Matrix p = rng.normal_matrix(3, 4);
    const Matrix q = rng.normal_matrix(2, 3);
    CHECK(max_abs_diff(mode_product(mode_product(a, 1, p), 1, q), mode_product(a, 1, Matrix(q * p))) < 1e-12);
}

TEST_CASE("vector mode product removes the contracted mode") {
    const DenseTensor t = iota_tensor({2, 3});
    Vector e(3);
    e << 0, 1, 0;
    const DenseTensor s = mode_product(t, 1, e);
    REQUIRE(s.dims() == std::vector<std::size_t>{2});
    CHECK(s[0] == t.at({0, 1}));
    CHECK(s[1] == t.at({1, 1}));
}

TEST_CASE("contract_state matches the polynomial it encodes") {
    Rng rng(3);
    const DenseTensor a = rng.normal_tensor({3, 3, 3, 3});
    const Vector x = rng.normal_vector(3);
    Vector expected = Vector::Zero(3);
    IndexCounter it(a.dims());
    do {
        const auto& i = it.index();
        expected(static_cast<Eigen::Index>(i[3])) += a(i) * x(static_cast<Eigen::Index>(i[0])) *
                                                     x(static_cast<Eigen::Index>(i[1])) * x(static_cast<Eigen::Index>(i[2]));
    } while (it.next());
    CHECK((contract_state(a, x) - expected).norm() < 1e-12);

    const Matrix j = contract_state_matrix(a, x);
    REQUIRE(j.rows() == 3);
    CHECK((j.transpose() * x - contract_state(a, x)).norm() < 1e-12);
}

TEST_CASE("kron power conventions") {
    Vector x(2);
    x << 2, 3;
    const Vector x2 = kron_power(x, 2);
    REQUIRE(x2.size() == 4);
    CHECK(x2(0) == 4.0);
    CHECK(x2(1) == 6.0);
    CHECK(x2(2) == 6.0);
    CHECK(x2(3) == 9.0);
    CHECK(kron_power(x, 0).size() == 1);
    CHECK(kron_power(Matrix(Matrix::Identity(2, 2)), 3).isIdentity());
    Matrix a(1, 2), b(2, 1);
    a << 1, 2;
    b << 3, 4;
    const Matrix k = kron(a, b);
    REQUIRE(k.rows() == 2);
    CHECK(k(1, 1) == 8.0);
}

TEST_CASE("outer power is symmetric with the expected entries") {
    Vector v(3);
    v << 1, -2, 0.5;
    const DenseTensor t = outer_power(v, 3);
    CHECK(t.at({1, 0, 2}) == doctest::Approx(-1.0));
    CHECK(is_symmetric(t));
}

TEST_CASE("symmetrization") {
    Rng rng(8);
    const DenseTensor g = rng.normal_tensor({3, 3, 3, 3});
    const DenseTensor s = symmetrize(g);
    CHECK(is_symmetric(s));
    CHECK(max_abs_diff(symmetrize(s), s) == 0.0);

    const DenseTensor as = symmetrize_first_modes(g);
    CHECK(is_almost_symmetric(as));
    CHECK_FALSE(is_symmetric(as));
    CHECK(max_abs_diff(symmetrize_first_modes(as), as) == 0.0);
    // same polynomial
    const Vector x = rng.normal_vector(3);
    CHECK((contract_state(as, x) - contract_state(g, x)).norm() < 1e-12);
}

TEST_CASE("almost symmetry distinguishes the last mode") {
    DenseTensor a = DenseTensor::cubical(2, 3);
    a.at({1, 1, 0}) = 1.0;
    CHECK(is_almost_symmetric(a));
    CHECK_FALSE(is_symmetric(a));
    a.at({1, 0, 0}) = 1.0;
    CHECK_FALSE(is_almost_symmetric(a));
    CHECK(symmetry_defect(a, 2) > 0.0);
}

TEST_CASE("multilinear transform by an orthogonal matrix keeps the norm") {
    Rng rng(21);
    const DenseTensor a = rng.normal_tensor({4, 4, 4});
    const Matrix q = rng.orthonormal(4, 4);
    CHECK(frobenius_norm(multilinear_transform(a, q)) == doctest::Approx(frobenius_norm(a)).epsilon(1e-12));
}
