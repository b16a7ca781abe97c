#include "hpds/reduction.hpp"

#include "hpds/errors.hpp"

#include <string>

namespace hpds {

Reduction reduce(const InputOutputHpds& model, const ReductionCriterion& criterion, double last_mode_tol) {
    SharedTruncation rule;
    rule.last_mode_tol = last_mode_tol;
    if (const auto* fixed = std::get_if<FixedRank>(&criterion)) {
        if (fixed->r < 1 || fixed->r > model.n())
            throw InputError("reduction rank " + std::to_string(fixed->r) + " out of range 1.." + std::to_string(model.n()));
        rule.rule = fixed->r;
    } else {
        rule.rule = std::get<RelativeTolerance>(criterion);
    }
    const SharedCompactHosvd h = shared_factor_compact_hosvd(model.A(), rule);
    const std::size_t k = model.k();

    DenseTensor a_red = mode_product(h.core, k - 1, Matrix(h.V.transpose() * h.Vk));
    a_red = symmetrize_first_modes(a_red);

    std::optional<Matrix> b_red, c_red;
    if (model.B()) b_red = Matrix(h.V.transpose() * *model.B());
    if (model.C()) c_red = Matrix(*model.C() * h.V);

    Reduction out{ReducedModel{InputOutputHpds(std::move(a_red), std::move(b_red), std::move(c_red)), h.V, h.Vk, h.r},
                  ReductionReport{}};
    ReductionReport& rep = out.report;
    rep.n = model.n();
    rep.k = k;
    rep.m = model.m();
    rep.l = model.l();
    rep.r = h.r;
    rep.r_k = h.r_k;
    rep.sigma_retained.assign(h.sigma.begin(), h.sigma.begin() + static_cast<std::ptrdiff_t>(h.r));
    rep.sigma_discarded.assign(h.sigma.begin() + static_cast<std::ptrdiff_t>(h.r), h.sigma.end());
    rep.sigma_k_retained.assign(h.sigma_k.begin(), h.sigma_k.begin() + static_cast<std::ptrdiff_t>(h.r_k));
    rep.sigma_k_discarded.assign(h.sigma_k.begin() + static_cast<std::ptrdiff_t>(h.r_k), h.sigma_k.end());
    rep.residual = h.residual;
    rep.exact = h.residual <= kExactResidual;
    rep.last_factor_shared = h.last_factor_shared;
    rep.params_before = param_count(rep.n, k, rep.m, rep.l);
    rep.params_after = param_count(rep.r, k, rep.m, rep.l);
    return out;
}

Vector project_state(const Matrix& V, const Vector& x) {
    if (x.size() != V.rows()) throw InputError("project_state: state has wrong dimension");
    return V.transpose() * x;
}

Vector lift_state(const Matrix& V, const Vector& z) {
    if (z.size() != V.cols()) throw InputError("lift_state: latent state has wrong dimension");
    return V * z;
}

double reduction_residual(const InputOutputHpds& model, const ReducedModel& reduced) {
    const std::size_t k = model.k();
    const auto n = static_cast<Eigen::Index>(model.n());
    if (reduced.V.rows() != n || reduced.Vk.rows() != n)
        throw InputError("reduction_residual: projection bases do not match the model dimension");
    const Matrix p = reduced.V * reduced.V.transpose();
    const Matrix pk = reduced.Vk * reduced.Vk.transpose();
    DenseTensor approx = model.A();
    for (std::size_t q = 0; q + 1 < k; ++q) approx = mode_product(approx, q, p);
    approx = mode_product(approx, k - 1, pk);
    const double norm = frobenius_norm(model.A());
    return norm > 0 ? frobenius_norm(model.A() - approx) / norm : 0.0;
}

}  // namespace hpds
