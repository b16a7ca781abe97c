#include "hpds/generators.hpp"

#include "hpds/decomposition.hpp"
#include "hpds/errors.hpp"
#include "hpds/random.hpp"

#include <Eigen/SVD>

#include <string>

namespace hpds {

namespace {

std::optional<Matrix> maybe_normal(Rng& rng, std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) return std::nullopt;
    return rng.normal_matrix(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
}

void check_sizes(std::size_t n, std::size_t k) {
    if (n == 0) throw InputError("generator needs n >= 1");
    if (k < 2) throw InputError("generator needs k >= 2");
}

}  // namespace

ModelFile generate_odeco(const OdecoSpec& spec, std::uint64_t seed) {
    check_sizes(spec.n, spec.k);
    if (spec.r > spec.n) throw InputError("odeco generator needs r <= n");
    if (!(spec.lambda_min >= 0.0 && spec.lambda_max >= spec.lambda_min)) throw InputError("invalid eigenvalue range");
    Rng rng(seed);
    const auto N = static_cast<Eigen::Index>(spec.n);
    const Matrix U = rng.orthonormal(N, N);
    std::vector<double> lambdas(spec.n, 0.0);
    for (std::size_t j = 0; j < spec.r; ++j) {
        const double mag = rng.uniform(spec.lambda_min, spec.lambda_max);
        const bool negative = rng.coin() || spec.negative_only;
        lambdas[j] = negative ? -mag : mag;
    }
    auto b = maybe_normal(rng, spec.n, spec.m);
    auto c = maybe_normal(rng, spec.l, spec.n);
    ModelFile file{InputOutputHpds(odeco_tensor(lambdas, U, spec.k), std::move(b), std::move(c)),
                   {"odeco", seed, "odeco", std::string(Rng::kAlgorithm)},
                   std::nullopt,
                   std::nullopt};
    return file;
}

ModelFile generate_almost_symmetric(std::size_t n, std::size_t k, std::size_t m, std::size_t l, std::uint64_t seed) {
    check_sizes(n, k);
    Rng rng(seed);
    DenseTensor a = symmetrize_first_modes(rng.normal_tensor(std::vector<std::size_t>(k, n)));
    auto b = maybe_normal(rng, n, m);
    auto c = maybe_normal(rng, l, n);
    return {InputOutputHpds(std::move(a), std::move(b), std::move(c)),
            {"almost_symmetric", seed, "almost_symmetric", std::string(Rng::kAlgorithm)},
            std::nullopt,
            std::nullopt};
}

namespace example1 {

Matrix printed_basis() {
    Matrix v(6, 3);
    v << -0.1743, 0.0129, 0.7769,
         -0.0115, -0.4458, 0.2735,
         -0.0802, 0.0156, -0.5407,
         -0.5370, -0.1316, -0.1081,
         -0.4111, 0.8066, 0.0856,
          0.7112, 0.3646, 0.1017;
    return v;
}

Matrix basis() {
    const Matrix v = printed_basis();
    Eigen::JacobiSVD<Matrix> svd(v, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return svd.matrixU() * svd.matrixV().transpose();
}

std::vector<double> core_diagonal() { return {-8.2880, -3.2248, -9.7615}; }

Vector initial_state() {
    Vector x(6);
    x << 0.3341, 2.8115, -1.2861, -1.1378, -1.2017, -1.8510;
    return x;
}

}  // namespace example1

ModelFile generate_example1() {
    DenseTensor a = odeco_tensor(example1::core_diagonal(), example1::basis(), 4);
    // Exact symmetry so downstream symmetric-only checks see no round-off defect.
    a = symmetrize(a);
    return {InputOutputHpds(std::move(a)), {"example1", std::nullopt, "example1", ""}, std::nullopt, std::nullopt};
}

ModelFile generate_example2(std::uint64_t seed) {
    ModelFile file = generate_almost_symmetric(12, 4, 5, 0, seed);
    file.metadata.name = "example2";
    file.metadata.generator = "example2";
    return file;
}

}  // namespace hpds
