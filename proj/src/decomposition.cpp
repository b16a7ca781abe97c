#include "hpds/decomposition.hpp"

#include "hpds/errors.hpp"
#include "hpds/parallel.hpp"
#include "hpds/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>

namespace hpds {
namespace {

void normalize_sign(Eigen::Ref<Vector> v) {
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < v.size(); ++i)
        if (std::abs(v(i)) > std::abs(v(best))) best = i;
    if (v(best) < 0) v *= -1.0;
}

bool lexicographically_greater(const Vector& a, const Vector& b) {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (a(i) > b(i)) return true;
        if (a(i) < b(i)) return false;
    }
    return false;
}

double relative_residual(const DenseTensor& a, const DenseTensor& approx) {
    const double norm = frobenius_norm(a);
    return norm > 0 ? frobenius_norm(a - approx) / norm : 0.0;
}

void require_nonzero(const DenseTensor& a, const char* what) {
    if (frobenius_norm(a) == 0.0)
        throw InputError(std::string(what) + ": zero tensor has no singular directions");
}

Matrix leading_columns(const Matrix& u, std::size_t r) { return u.leftCols(static_cast<Eigen::Index>(r)); }

}  // namespace

ModeBasis left_singular_basis(const Matrix& m) {
    const Eigen::Index n = m.rows();
    Eigen::JacobiSVD<Matrix, Eigen::ColPivHouseholderQRPreconditioner> svd(m, Eigen::ComputeFullU);
    ModeBasis out{svd.matrixU(), std::vector<double>(static_cast<std::size_t>(n), 0.0)};
    const auto& s = svd.singularValues();
    for (Eigen::Index i = 0; i < s.size(); ++i) out.sigma[static_cast<std::size_t>(i)] = s(i);
    for (Eigen::Index j = 0; j < n; ++j) normalize_sign(out.U.col(j));

    // Stabilize the order inside groups of equal singular values.
    const double scale = out.sigma.empty() ? 0.0 : out.sigma.front();
    const double tie = 1e-13 * std::max(scale, 1e-300);
    std::size_t begin = 0;
    while (begin < out.sigma.size()) {
        std::size_t end = begin + 1;
        while (end < out.sigma.size() && out.sigma[begin] - out.sigma[end] <= tie) ++end;
        if (end - begin > 1) {
            std::vector<Vector> cols;
            for (std::size_t j = begin; j < end; ++j) cols.emplace_back(out.U.col(static_cast<Eigen::Index>(j)));
            std::stable_sort(cols.begin(), cols.end(), lexicographically_greater);
            for (std::size_t j = begin; j < end; ++j) out.U.col(static_cast<Eigen::Index>(j)) = cols[j - begin];
        }
        begin = end;
    }
    return out;
}

std::size_t rank_from_tolerance(const std::vector<double>& sigma, double tol) {
    if (sigma.empty() || sigma.front() <= 0.0) return 0;
    const double cut = tol * sigma.front();
    return static_cast<std::size_t>(std::count_if(sigma.begin(), sigma.end(), [&](double s) { return s > cut; }));
}

std::vector<double> mode_singular_values(const DenseTensor& a, std::size_t mode) {
    const Matrix m = unfold(a, mode);
    Eigen::JacobiSVD<Matrix, Eigen::ColPivHouseholderQRPreconditioner> svd(m);
    std::vector<double> out(static_cast<std::size_t>(m.rows()), 0.0);
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
        out[static_cast<std::size_t>(i)] = svd.singularValues()(i);
    return out;
}

DenseTensor reconstruct(const HosvdFactors& h) {
    DenseTensor out = h.core;
    for (std::size_t p = 0; p < h.factors.size(); ++p) out = mode_product(out, p, h.factors[p]);
    return out;
}

HosvdFactors hosvd(const DenseTensor& a) {
    require_nonzero(a, "hosvd");
    HosvdFactors out;
    out.core = a;
    for (std::size_t p = 0; p < a.order(); ++p) {
        ModeBasis basis = left_singular_basis(unfold(a, p));
        out.core = mode_product(out.core, p, Matrix(basis.U.transpose()));
        out.factors.push_back(std::move(basis.U));
        out.mode_singular_values.push_back(std::move(basis.sigma));
    }
    out.residual = relative_residual(a, reconstruct(out));
    return out;
}

HosvdFactors compact_hosvd(const DenseTensor& a, const TruncationCriterion& criterion) {
    require_nonzero(a, "compact_hosvd");
    if (const auto* fixed = std::get_if<FixedRanks>(&criterion)) {
        if (fixed->ranks.size() != a.order()) throw InputError("compact_hosvd: one rank per mode required");
        for (std::size_t p = 0; p < a.order(); ++p)
            if (fixed->ranks[p] < 1 || fixed->ranks[p] > a.dim(p))
                throw InputError("compact_hosvd: rank " + std::to_string(fixed->ranks[p]) + " out of range for mode " +
                                 std::to_string(p) + " of extent " + std::to_string(a.dim(p)));
    } else if (std::get<RelativeTolerance>(criterion).tol < 0.0) {
        throw InputError("compact_hosvd: tolerance must be nonnegative");
    }

    HosvdFactors out;
    out.core = a;
    for (std::size_t p = 0; p < a.order(); ++p) {
        ModeBasis basis = left_singular_basis(unfold(a, p));
        const std::size_t r = std::holds_alternative<FixedRanks>(criterion)
                                  ? std::get<FixedRanks>(criterion).ranks[p]
                                  : rank_from_tolerance(basis.sigma, std::get<RelativeTolerance>(criterion).tol);
        Matrix factor = leading_columns(basis.U, r);
        out.core = mode_product(out.core, p, Matrix(factor.transpose()));
        out.factors.push_back(std::move(factor));
        out.mode_singular_values.push_back(std::move(basis.sigma));
    }
    out.residual = relative_residual(a, reconstruct(out));
    return out;
}

DenseTensor reconstruct(const SharedCompactHosvd& h) {
    DenseTensor out = h.core;
    const std::size_t k = h.core.order();
    for (std::size_t p = 0; p + 1 < k; ++p) out = mode_product(out, p, h.V);
    return mode_product(out, k - 1, h.Vk);
}

SharedCompactHosvd shared_factor_compact_hosvd(const DenseTensor& a, const SharedTruncation& rule) {
    if (!a.is_cubical() || a.order() < 2)
        throw InputError("shared_factor_compact_hosvd requires a cubical tensor of order >= 2");
    if (!is_almost_symmetric(a)) throw PreconditionError("shared-factor HOSVD requires an almost symmetric tensor");
    require_nonzero(a, "shared_factor_compact_hosvd");

    const std::size_t n = a.dim(0);
    const std::size_t k = a.order();
    SharedCompactHosvd out;

    // All unfoldings over the first k-1 modes coincide, so one SVD serves them.
    ModeBasis lead = left_singular_basis(unfold(a, 0));
    if (const auto* fixed = std::get_if<std::size_t>(&rule.rule)) {
        if (*fixed < 1 || *fixed > n)
            throw InputError("reduction rank " + std::to_string(*fixed) + " out of range 1.." + std::to_string(n));
        out.r = *fixed;
    } else {
        const double tol = std::get<RelativeTolerance>(rule.rule).tol;
        if (tol < 0.0) throw InputError("tolerance must be nonnegative");
        out.r = rank_from_tolerance(lead.sigma, tol);
    }
    out.V = leading_columns(lead.U, out.r);
    out.sigma = std::move(lead.sigma);

    ModeBasis last = left_singular_basis(unfold(a, k - 1));
    const double last_tol =
        std::holds_alternative<RelativeTolerance>(rule.rule) ? std::get<RelativeTolerance>(rule.rule).tol : rule.last_mode_tol;
    out.r_k = std::max<std::size_t>(1, rank_from_tolerance(last.sigma, last_tol));
    const bool symmetric = is_symmetric(a);
    if (symmetric) out.r_k = std::min(out.r_k, out.r);
    out.Vk = leading_columns(last.U, out.r_k);
    out.sigma_k = std::move(last.sigma);

    if (symmetric && out.r_k == out.r) {
        const Matrix gap = out.Vk * out.Vk.transpose() - out.V * out.V.transpose();
        if (gap.norm() <= 1e-8) {
            out.Vk = out.V;
            out.last_factor_shared = true;
        }
    }

    DenseTensor core = a;
    const Matrix vt = out.V.transpose();
    for (std::size_t p = 0; p + 1 < k; ++p) core = mode_product(core, p, vt);
    out.core = mode_product(core, k - 1, Matrix(out.Vk.transpose()));
    out.residual = relative_residual(a, reconstruct(out));
    return out;
}

double z_residual(const DenseTensor& a, double lambda, const Vector& u) {
    return (contract_state(a, u) - lambda * u).norm();
}

namespace {

struct Candidate {
    bool ok = false;
    ZEigenpair pair;
};

// Newton iteration on F(u, lambda) = [A u^{k-1} - lambda u; (1 - u'u) / 2].
ZEigenpair newton_polish(const DenseTensor& a, Vector u, std::size_t k) {
    const Eigen::Index n = u.size();
    u.normalize();
    double lambda = u.dot(contract_state(a, u));
    double best_res = z_residual(a, lambda, u);
    ZEigenpair best{lambda, u, best_res};
    for (int iter = 0; iter < 40 && best_res > 0.0; ++iter) {
        const Matrix j_state = static_cast<double>(k - 1) * contract_state_matrix(a, u);
        Matrix jac = Matrix::Zero(n + 1, n + 1);
        jac.topLeftCorner(n, n) = j_state - lambda * Matrix::Identity(n, n);
        jac.topRightCorner(n, 1) = -u;
        jac.bottomLeftCorner(1, n) = -u.transpose();
        Vector rhs(n + 1);
        rhs.head(n) = -(contract_state(a, u) - lambda * u);
        rhs(n) = -(1.0 - u.squaredNorm()) / 2.0;
        Eigen::FullPivLU<Matrix> lu(jac);
        if (!lu.isInvertible()) break;
        const Vector step = lu.solve(rhs);
        if (!step.allFinite()) break;
        u += step.head(n);
        u.normalize();
        lambda = u.dot(contract_state(a, u));
        const double res = z_residual(a, lambda, u);
        if (res < best_res) {
            best = {lambda, u, res};
            best_res = res;
        } else if (res > 10.0 * best_res) {
            break;
        }
        if (step.norm() < 1e-15) break;
    }
    return best;
}

Candidate power_run(const DenseTensor& a, Vector u, double shift, std::size_t k, const ZEigenOptions& opts) {
    u.normalize();
    // shift > 0 climbs to local maxima of A u^k on the sphere, shift < 0 descends to minima.
    const double direction = shift > 0 ? 1.0 : -1.0;
    for (std::size_t it = 0; it < opts.max_iter; ++it) {
        Vector w = direction * (contract_state(a, u) + shift * u);
        const double norm = w.norm();
        if (!(norm > 0.0) || !std::isfinite(norm)) return {};
        w /= norm;
        const double change = (w - u).norm();
        u = std::move(w);
        if (change < 1e-13) break;
    }
    ZEigenpair pair = newton_polish(a, u, k);
    if (!(pair.residual <= opts.tol)) return {};
    if (k % 2 == 0) normalize_sign(pair.u);
    return {true, std::move(pair)};
}

}  // namespace

ZEigenSearch z_eigenpairs(const DenseTensor& a, const ZEigenOptions& opts) {
    if (!a.is_cubical() || a.order() < 3) throw InputError("z_eigenpairs requires a cubical tensor of order >= 3");
    if (!is_symmetric(a)) throw PreconditionError("z_eigenpairs requires a symmetric tensor");
    const std::size_t k = a.order();
    const auto n = static_cast<Eigen::Index>(a.dim(0));
    const double norm = frobenius_norm(a);
    const double alpha = opts.shift > 0 ? opts.shift : std::max(static_cast<double>(k - 1) * norm, 1e-12);

    std::vector<Vector> starts;
    Rng rng(opts.seed);
    for (std::size_t s = 0; s < opts.starts; ++s) {
        Vector v = rng.normal_vector(n);
        if (v.norm() == 0.0) v(0) = 1.0;
        starts.push_back(v.normalized());
    }

    std::vector<Candidate> found(2 * starts.size());
    parallel_for(found.size(), [&](std::size_t i) {
        const double shift = (i % 2 == 0) ? alpha : -alpha;
        found[i] = power_run(a, starts[i / 2], shift, k, opts);
    });

    ZEigenSearch out;
    for (const Candidate& c : found) {
        if (!c.ok) continue;
        const bool duplicate = std::any_of(out.pairs.begin(), out.pairs.end(), [&](const ZEigenpair& p) {
            return std::abs(p.lambda - c.pair.lambda) <= 1e-6 &&
                   std::min((p.u - c.pair.u).norm(), (p.u + c.pair.u).norm()) <= 1e-6;
        });
        if (!duplicate) out.pairs.push_back(c.pair);
    }
    std::stable_sort(out.pairs.begin(), out.pairs.end(),
                     [](const ZEigenpair& x, const ZEigenpair& y) { return x.lambda > y.lambda; });
    if (out.pairs.empty())
        out.diagnostic = "no start converged to residual <= " + std::to_string(opts.tol) + " within " +
                         std::to_string(opts.max_iter) + " iterations";
    return out;
}

DenseTensor odeco_tensor(const std::vector<double>& lambdas, const Matrix& U, std::size_t k) {
    if (lambdas.size() != static_cast<std::size_t>(U.cols()))
        throw InputError("odeco_tensor: one eigenvalue per column required");
    DenseTensor out = DenseTensor::cubical(static_cast<std::size_t>(U.rows()), k);
    for (std::size_t j = 0; j < lambdas.size(); ++j) {
        if (lambdas[j] == 0.0) continue;
        out += lambdas[j] * outer_power(U.col(static_cast<Eigen::Index>(j)), k);
    }
    return out;
}

OdecoDecomposition odeco_decompose(const DenseTensor& a, double tol) {
    if (!a.is_cubical() || a.order() < 2) throw InputError("odeco_decompose requires a cubical tensor of order >= 2");
    if (!is_symmetric(a)) throw PreconditionError("odeco decomposition requires a symmetric tensor");
    const std::size_t n = a.dim(0);
    const auto N = static_cast<Eigen::Index>(n);

    OdecoDecomposition out;
    const double norm = frobenius_norm(a);
    if (norm == 0.0) {
        out.lambdas.assign(n, 0.0);
        out.U = Matrix::Identity(N, N);
        return out;
    }

    ModeBasis basis = left_singular_basis(unfold(a, 0));
    Matrix U = basis.U;
    const std::vector<double>& sigma = basis.sigma;

    // Inside a cluster of (near) equal singular values the SVD basis is
    // arbitrary. The odeco directions are recovered there from the
    // eigenvectors of the cluster-restricted tensor contracted with a fixed
    // generic vector on all but two modes.
    const double smax = sigma.front();
    std::size_t begin = 0;
    while (begin < n && sigma[begin] > 1e-12 * smax) {
        std::size_t end = begin + 1;
        while (end < n && sigma[end] > 1e-12 * smax && sigma[end - 1] - sigma[end] <= 1e-6 * smax) ++end;
        const auto c = static_cast<Eigen::Index>(end - begin);
        if (c > 1) {
            const Matrix W = U.middleCols(static_cast<Eigen::Index>(begin), c);
            const DenseTensor restricted = multilinear_transform(a, Matrix(W.transpose()));
            Rng rng(0x0dec0 + static_cast<std::uint64_t>(begin));
            const Vector w = rng.normal_vector(c).normalized();
            const Matrix m = contract_state_matrix(restricted, w);
            Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (m + m.transpose()));
            Matrix rotated = W * eig.eigenvectors();
            for (Eigen::Index j = 0; j < c; ++j) normalize_sign(rotated.col(j));
            U.middleCols(static_cast<Eigen::Index>(begin), c) = rotated;
        }
        begin = end;
    }

    const DenseTensor core = multilinear_transform(a, Matrix(U.transpose()));
    out.lambdas.resize(n);
    double off_sq = 0.0;
    IndexCounter it(core.dims());
    std::size_t lin = 0;
    do {
        const auto& idx = it.index();
        if (std::all_of(idx.begin(), idx.end(), [&](std::size_t i) { return i == idx[0]; }))
            out.lambdas[idx[0]] = core[lin];
        else
            off_sq += core[lin] * core[lin];
        ++lin;
    } while (it.next());
    out.off_diagonal_mass = std::sqrt(off_sq) / norm;
    if (out.off_diagonal_mass > tol) throw NotOdeco(out.off_diagonal_mass, tol);

    const double lmax = std::abs(*std::max_element(out.lambdas.begin(), out.lambdas.end(),
                                                   [](double x, double y) { return std::abs(x) < std::abs(y); }));
    for (double& l : out.lambdas)
        if (std::abs(l) <= 1e-12 * lmax) l = 0.0;
    out.U = std::move(U);
    return out;
}

bool is_odeco(const DenseTensor& a, double tol) {
    try {
        (void)odeco_decompose(a, tol);
        return true;
    } catch (const PreconditionError&) {
        return false;
    } catch (const InputError&) {
        return false;
    }
}

}  // namespace hpds
