#include "hpds/decomposition.hpp"
#include "hpds/errors.hpp"
#include "hpds/generators.hpp"
#include "hpds/random.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace hpds;

namespace {

DenseTensor diagonal_tensor(const std::vector<double>& d, std::size_t k) {
    DenseTensor t = DenseTensor::cubical(d.size(), k);
    for (std::size_t i = 0; i < d.size(); ++i) t(std::vector<std::size_t>(k, i)) = d[i];
    return t;
}

double orthonormality_defect(const Matrix& u) {
    return (u.transpose() * u - Matrix::Identity(u.cols(), u.cols())).norm();
}

// Frobenius norm of the slice with index alpha in the given mode.
double slice_norm(const DenseTensor& s, std::size_t mode, std::size_t alpha) {
    return unfold(s, mode).row(static_cast<Eigen::Index>(alpha)).norm();
}

DenseTensor random_tensor(Rng& rng) {
    const std::size_t order = 1 + static_cast<std::size_t>(rng.uniform() * 4);
    std::vector<std::size_t> dims(order);
    for (auto& d : dims) d = 1 + static_cast<std::size_t>(rng.uniform() * 5);
    return rng.normal_tensor(dims);
}

DenseTensor low_rank_tensor(Rng& rng, const std::vector<std::size_t>& dims, const std::vector<std::size_t>& ranks) {
    DenseTensor t = rng.normal_tensor(ranks);
    for (std::size_t p = 0; p < dims.size(); ++p)
        t = mode_product(t, p, rng.orthonormal(static_cast<Eigen::Index>(dims[p]), static_cast<Eigen::Index>(ranks[p])));
    return t;
}

// Z-eigenvalues of a 2-dim symmetric tensor from sign changes of the tangential
// component of A u^{k-1} along u(theta) = (cos theta, sin theta).
std::vector<double> grid_eigenvalues(const DenseTensor& a) {
    std::vector<double> out;
    const double step = 1e-4;
    auto tangential = [&](double th) {
        Vector u(2);
        u << std::cos(th), std::sin(th);
        const Vector g = contract_state(a, u);
        return -std::sin(th) * g(0) + std::cos(th) * g(1);
    };
    auto rayleigh = [&](double th) {
        Vector u(2);
        u << std::cos(th), std::sin(th);
        return u.dot(contract_state(a, u));
    };
    double prev = tangential(0.0);
    for (double th = step; th <= 2 * std::numbers::pi + step; th += step) {
        const double cur = tangential(th);
        if ((prev <= 0.0 && cur > 0.0) || (prev >= 0.0 && cur < 0.0)) {
            const double t0 = th - step;
            const double root = t0 + step * prev / (prev - cur);
            out.push_back(rayleigh(root));
        }
        prev = cur;
    }
    return out;
}

}  // namespace

TEST_CASE("hosvd of a diagonal k=3 tensor") {
    const DenseTensor a = diagonal_tensor({2.0, -1.0}, 3);
    const HosvdFactors h = hosvd(a);
    for (std::size_t p = 0; p < 3; ++p) {
        REQUIRE(h.mode_singular_values[p].size() == 2);
        CHECK(h.mode_singular_values[p][0] == doctest::Approx(2.0));
        CHECK(h.mode_singular_values[p][1] == doctest::Approx(1.0));
        CHECK((h.factors[p] - Matrix::Identity(2, 2)).norm() < 1e-14);
    }
    CHECK(h.core.at({0, 0, 0}) == doctest::Approx(2.0));
    CHECK(h.core.at({1, 1, 1}) == doctest::Approx(-1.0));
    CHECK(h.core.at({0, 1, 1}) == doctest::Approx(0.0));
}

TEST_CASE("hosvd properties on random tensors") {
    Rng rng(1234);
    for (int trial = 0; trial < 60; ++trial) {
        const DenseTensor a = random_tensor(rng);
        const HosvdFactors h = hosvd(a);
        CHECK(frobenius_norm(reconstruct(h) - a) <= 1e-10 * frobenius_norm(a));
        CHECK(h.residual <= 1e-10);
        for (std::size_t p = 0; p < a.order(); ++p) {
            CHECK(orthonormality_defect(h.factors[p]) <= 1e-10);
            const auto& s = h.mode_singular_values[p];
            CHECK(std::is_sorted(s.rbegin(), s.rend()));
            for (std::size_t alpha = 0; alpha < s.size(); ++alpha)
                CHECK(std::abs(slice_norm(h.core, p, alpha) - s[alpha]) <= 1e-10);
            // all-orthogonality: distinct slices are orthogonal
            const Matrix g = unfold(h.core, p) * unfold(h.core, p).transpose();
            CHECK((g - Matrix(g.diagonal().asDiagonal())).norm() <= 1e-10 * std::max(1.0, g.norm()));
        }
    }
}

TEST_CASE("hosvd factor signs follow the largest-entry convention") {
    Rng rng(99);
    const HosvdFactors h = hosvd(rng.normal_tensor({4, 3, 5}));
    for (const Matrix& u : h.factors)
        for (Eigen::Index j = 0; j < u.cols(); ++j) {
            Eigen::Index arg = 0;
            u.col(j).cwiseAbs().maxCoeff(&arg);
            CHECK(u(arg, j) > 0.0);
        }
}

TEST_CASE("hosvd is deterministic") {
    Rng r1(5), r2(5);
    const DenseTensor a = r1.normal_tensor({3, 3, 3});
    const DenseTensor b = r2.normal_tensor({3, 3, 3});
    CHECK(hosvd(a).core == hosvd(b).core);
}

TEST_CASE("zero tensor is rejected by hosvd") { CHECK_THROWS_AS(hosvd(DenseTensor::cubical(2, 3)), InputError); }

TEST_CASE("compact hosvd recovers an exact multilinear rank") {
    Rng rng(42);
    const DenseTensor a = low_rank_tensor(rng, {5, 5, 5}, {2, 2, 2});
    const HosvdFactors h = compact_hosvd(a, RelativeTolerance{1e-8});
    CHECK(h.core.dims() == std::vector<std::size_t>{2, 2, 2});
    CHECK(h.residual <= 1e-10);
    CHECK(frobenius_norm(reconstruct(h) - a) <= 1e-10 * frobenius_norm(a));
}

TEST_CASE("compact hosvd with full ranks equals the full hosvd") {
    Rng rng(43);
    const DenseTensor a = rng.normal_tensor({3, 4, 2});
    const HosvdFactors full = hosvd(a);
    const HosvdFactors same = compact_hosvd(a, FixedRanks{{3, 4, 2}});
    CHECK(frobenius_norm(full.core - same.core) == 0.0);
    CHECK(compact_hosvd(a, FixedRanks{{3, 4, 2}}).residual <= 1e-12);
    CHECK_THROWS_AS(compact_hosvd(a, FixedRanks{{3, 5, 2}}), InputError);
    CHECK_THROWS_AS(compact_hosvd(a, FixedRanks{{3, 4}}), InputError);
}

TEST_CASE("truncation residual is bounded by the discarded singular values") {
    Rng rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        const DenseTensor a = rng.normal_tensor({4, 5, 3});
        const std::vector<std::size_t> ranks{2, 3, 2};
        const HosvdFactors h = compact_hosvd(a, FixedRanks{ranks});
        const HosvdFactors full = hosvd(a);
        double discarded = 0.0;
        for (std::size_t p = 0; p < 3; ++p)
            for (std::size_t i = ranks[p]; i < full.mode_singular_values[p].size(); ++i)
                discarded += full.mode_singular_values[p][i] * full.mode_singular_values[p][i];
        const double abs_res = frobenius_norm(reconstruct(h) - a);
        CHECK(abs_res * abs_res <= discarded * (1 + 1e-12));
    }
}

TEST_CASE("rank rule keeps sigma strictly above tol * sigma_max") {
    CHECK(rank_from_tolerance({3.0, 1.0, 3e-9, 0.0}, 1e-8) == 2);
    CHECK(rank_from_tolerance({3.0, 1.0, 3e-8}, 1e-8) == 2);
    CHECK(rank_from_tolerance({3.0, 1.0, 3.1e-8}, 1e-8) == 3);
    CHECK(rank_from_tolerance({0.0, 0.0}, 1e-8) == 0);
}

TEST_CASE("almost-symmetric tensors share their leading unfoldings") {
    Rng rng(3);
    const DenseTensor a = symmetrize_first_modes(rng.normal_tensor({3, 3, 3, 3}));
    const Matrix u0 = unfold(a, 0);
    CHECK(u0 == unfold(a, 1));
    CHECK(u0 == unfold(a, 2));
}

TEST_CASE("shared-factor hosvd") {
    SUBCASE("symmetric input reuses V for the last mode") {
        Rng rng(10);
        const Matrix q = rng.orthonormal(5, 2);
        DenseTensor a = odeco_tensor({1.5, -0.7}, q, 4);
        a += 0.3 * outer_power(Vector(q.col(0) + q.col(1)), 4);
        const SharedCompactHosvd h = shared_factor_compact_hosvd(symmetrize(a));
        CHECK(h.r == 2);
        CHECK(h.last_factor_shared);
        CHECK(h.Vk == h.V);
        CHECK(h.residual <= 1e-10);
        CHECK(frobenius_norm(reconstruct(h) - a) <= 1e-10 * frobenius_norm(a));
    }
    SUBCASE("diagonal tensor gives signed identity columns") {
        const SharedCompactHosvd h = shared_factor_compact_hosvd(diagonal_tensor({0.5, -3.0, 1.0}, 3));
        CHECK(h.r == 3);
        CHECK((h.V.cwiseAbs() * Vector::Ones(3) - Vector::Ones(3)).norm() < 1e-14);
        CHECK((h.V.transpose().cwiseAbs() * Vector::Ones(3) - Vector::Ones(3)).norm() < 1e-14);
        CHECK(std::abs(h.V(1, 0)) == doctest::Approx(1.0));
    }
    SUBCASE("almost-symmetric input keeps a separate last factor") {
        Rng rng(12);
        const DenseTensor a = symmetrize_first_modes(rng.normal_tensor({4, 4, 4}));
        const SharedCompactHosvd h = shared_factor_compact_hosvd(a);
        CHECK_FALSE(h.last_factor_shared);
        CHECK(h.r == 4);
        CHECK(h.residual <= 1e-10);
    }
    SUBCASE("fixed rank") {
        Rng rng(13);
        const DenseTensor a = symmetrize_first_modes(rng.normal_tensor({5, 5, 5, 5}));
        const SharedCompactHosvd h = shared_factor_compact_hosvd(a, {std::size_t{3}, 1e-8});
        CHECK(h.r == 3);
        CHECK(h.r_k == 5);
        CHECK(h.core.dims() == std::vector<std::size_t>{3, 3, 3, 5});
    }
    SUBCASE("non-almost-symmetric input is rejected") {
        Rng rng(14);
        CHECK_THROWS_AS((void)shared_factor_compact_hosvd(rng.normal_tensor({3, 3, 3})), PreconditionError);
    }
}

TEST_CASE("example-1 tensor spectrum and factor") {
    const ModelFile f = generate_example1();
    const DenseTensor& a = f.model.A();
    const std::vector<double> s = mode_singular_values(a, 0);
    const std::vector<double> expected{9.7615, 8.2880, 3.2248, 0, 0, 0};
    for (std::size_t i = 0; i < 6; ++i) CHECK(s[i] == doctest::Approx(expected[i]).epsilon(1e-12).scale(1.0));

    const HosvdFactors h = compact_hosvd(a, RelativeTolerance{1e-8});
    CHECK(h.core.dims() == std::vector<std::size_t>{3, 3, 3, 3});

    // Columns of V match the printed factor up to sign, ordered by |core value|.
    const SharedCompactHosvd sh = shared_factor_compact_hosvd(a);
    REQUIRE(sh.r == 3);
    const Matrix printed = example1::printed_basis();
    const int order[3] = {2, 0, 1};
    for (int j = 0; j < 3; ++j) {
        const Vector v = sh.V.col(j);
        const Vector p = printed.col(order[j]);
        CHECK(std::min((v - p).norm(), (v + p).norm()) < 5e-4);
    }
}

TEST_CASE("z-eigenpairs of a diagonal tensor") {
    const DenseTensor a = diagonal_tensor({-1.0, 2.0}, 4);
    const ZEigenSearch res = z_eigenpairs(a);
    auto has = [&](double lambda, Eigen::Index axis) {
        return std::any_of(res.pairs.begin(), res.pairs.end(), [&](const ZEigenpair& p) {
            return std::abs(p.lambda - lambda) < 1e-8 && std::abs(std::abs(p.u(axis)) - 1.0) < 1e-8;
        });
    };
    CHECK(has(-1.0, 0));
    CHECK(has(2.0, 1));
    for (const ZEigenpair& p : res.pairs) CHECK(p.residual <= 1e-10);
    CHECK(std::is_sorted(res.pairs.begin(), res.pairs.end(),
                         [](const ZEigenpair& x, const ZEigenpair& y) { return x.lambda > y.lambda; }));
}

TEST_CASE("z-eigenpairs agree with the theta-grid oracle") {
    Rng rng(2024);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t k = trial % 2 == 0 ? 3 : 4;
        const DenseTensor a = symmetrize(rng.normal_tensor(std::vector<std::size_t>(k, 2)));
        const std::vector<double> grid = grid_eigenvalues(a);
        const ZEigenSearch res = z_eigenpairs(a);
        REQUIRE_FALSE(res.pairs.empty());
        for (const ZEigenpair& p : res.pairs) {
            CHECK(p.residual <= 1e-8);
            const bool matched =
                std::any_of(grid.begin(), grid.end(), [&](double g) { return std::abs(g - p.lambda) <= 1e-3; });
            CHECK(matched);
        }
    }
}

TEST_CASE("z-eigenvalues are invariant under orthogonal similarity") {
    Rng rng(31);
    for (int trial = 0; trial < 5; ++trial) {
        const DenseTensor a = symmetrize(rng.normal_tensor({2, 2, 2, 2}));
        const Matrix q = rng.orthonormal(2, 2);
        const ZEigenSearch e1 = z_eigenpairs(a);
        const ZEigenSearch e2 = z_eigenpairs(multilinear_transform(a, q));
        REQUIRE(e1.pairs.size() == e2.pairs.size());
        for (std::size_t i = 0; i < e1.pairs.size(); ++i) CHECK(std::abs(e1.pairs[i].lambda - e2.pairs[i].lambda) <= 1e-6);
    }
}

TEST_CASE("z_eigenpairs preconditions") {
    Rng rng(1);
    CHECK_THROWS_AS((void)z_eigenpairs(rng.normal_tensor({2, 2, 2})), PreconditionError);
    CHECK_THROWS_AS((void)z_eigenpairs(DenseTensor::cubical(2, 2)), InputError);
}

TEST_CASE("odeco decomposition") {
    SUBCASE("example-1 tensor") {
        const OdecoDecomposition d = odeco_decompose(generate_example1().model.A());
        std::vector<double> l = d.lambdas;
        std::sort(l.begin(), l.end());
        const std::vector<double> expected{-9.7615, -8.2880, -3.2248, 0.0, 0.0, 0.0};
        for (std::size_t i = 0; i < 6; ++i) CHECK(l[i] == doctest::Approx(expected[i]).epsilon(1e-10));
        CHECK(std::count(d.lambdas.begin(), d.lambdas.end(), 0.0) == 3);
        // first three columns span col(V)
        const Matrix V = example1::basis();
        const Matrix u3 = d.U.leftCols(3);
        CHECK((u3 * u3.transpose() - V * V.transpose()).norm() < 1e-10);
    }
    SUBCASE("diagonal tensor") {
        const OdecoDecomposition d = odeco_decompose(diagonal_tensor({1.0, -4.0, 2.0}, 3));
        CHECK((d.U.cwiseAbs() * Vector::Ones(3) - Vector::Ones(3)).norm() < 1e-14);
        CHECK(d.off_diagonal_mass < 1e-15);
    }
    SUBCASE("rotated diagonal cores are recovered") {
        Rng rng(55);
        for (int trial = 0; trial < 10; ++trial) {
            const std::size_t n = 2 + static_cast<std::size_t>(trial % 3);
            const std::size_t k = 3 + static_cast<std::size_t>(trial % 2);
            std::vector<double> lambdas(n);
            for (auto& l : lambdas) l = rng.uniform(-3, 3);
            const Matrix q = rng.orthonormal(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
            const OdecoDecomposition d = odeco_decompose(symmetrize(odeco_tensor(lambdas, q, k)));
            std::vector<double> got = d.lambdas, want = lambdas;
            if (k % 2 == 1) {
                // lambda u^{o k} = (-lambda)(-u)^{o k}: only |lambda| is intrinsic
                for (auto& g : got) g = std::abs(g);
                for (auto& w : want) w = std::abs(w);
            }
            std::sort(got.begin(), got.end());
            std::sort(want.begin(), want.end());
            for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(got[i] - want[i]) <= 1e-8);
            for (std::size_t j = 0; j < n; ++j)
                CHECK(z_residual(symmetrize(odeco_tensor(lambdas, q, k)), d.lambdas[j], d.U.col(static_cast<Eigen::Index>(j))) <= 1e-8);
        }
    }
    SUBCASE("equal magnitudes inside a degenerate cluster") {
        Rng rng(56);
        const Matrix q = rng.orthonormal(3, 3);
        const DenseTensor a = symmetrize(odeco_tensor({1.0, -1.0, 1.0}, q, 4));
        const OdecoDecomposition d = odeco_decompose(a);
        std::vector<double> got = d.lambdas;
        std::sort(got.begin(), got.end());
        CHECK(got[0] == doctest::Approx(-1.0).epsilon(1e-10));
        CHECK(got[1] == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(got[2] == doctest::Approx(1.0).epsilon(1e-10));
    }
    SUBCASE("generic symmetric tensors are not odeco") {
        Rng rng(57);
        const DenseTensor a = symmetrize(rng.normal_tensor({3, 3, 3}));
        CHECK_FALSE(is_odeco(a));
        CHECK_THROWS_AS((void)odeco_decompose(a), NotOdeco);
        try {
            (void)odeco_decompose(a);
        } catch (const NotOdeco& e) {
            CHECK(e.off_diagonal_mass() > 1e-3);
        }
    }
    SUBCASE("non-symmetric input") {
        Rng rng(58);
        CHECK_THROWS_AS((void)odeco_decompose(rng.normal_tensor({2, 2, 2})), PreconditionError);
        CHECK_FALSE(is_odeco(rng.normal_tensor({2, 2, 2})));
    }
    CHECK(is_odeco(diagonal_tensor({1.0, 2.0}, 4)));
}
