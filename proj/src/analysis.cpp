#include "hpds/analysis.hpp"

#include "hpds/errors.hpp"
#include "hpds/parallel.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace hpds {

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

std::vector<double> singular_values(const Matrix& m) {
    if (m.size() == 0) return {};
    Eigen::BDCSVD<Matrix> svd(m);
    const Vector s = svd.singularValues();
    return {s.data(), s.data() + s.size()};
}

double ipow(double base, std::size_t e) {
    double out = 1.0;
    for (std::size_t i = 0; i < e; ++i) out *= base;
    return out;
}

std::size_t upow(std::size_t base, std::size_t e) {
    std::size_t out = 1;
    for (std::size_t i = 0; i < e; ++i) out *= base;
    return out;
}

Matrix hcat(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows(), a.cols() + b.cols());
    out << a, b;
    return out;
}

// First `count` multiset products A x_1 q_{i_1} ... x_{k-1} q_{i_{k-1}}.
Matrix level_block(const DenseTensor& a, const Matrix& basis, const std::vector<std::vector<std::size_t>>& sets,
                   std::size_t count) {
    const auto n = static_cast<Eigen::Index>(a.dim(0));
    Matrix out(n, static_cast<Eigen::Index>(count));
    parallel_for(count, [&](std::size_t c) {
        std::vector<Vector> vs;
        vs.reserve(sets[c].size());
        for (std::size_t i : sets[c]) vs.emplace_back(basis.col(static_cast<Eigen::Index>(i)));
        out.col(static_cast<Eigen::Index>(c)) = contract_leading(a, vs);
    });
    return out;
}

void check_cubical(const DenseTensor& a, const char* what) {
    if (!a.is_cubical() || a.order() < 2) throw InputError(std::string(what) + ": dynamic tensor must be cubical with order >= 2");
}

// W (F_{j} applied on the right), W has n^N columns, result n^{N+k-2}.
RowMatrix apply_transition(const RowMatrix& w, std::size_t N, const Matrix& ak, std::size_t n) {
    const std::size_t width = static_cast<std::size_t>(ak.cols());  // n^{k-1}
    const std::size_t out_cols = upow(n, N - 1) * width;
    RowMatrix out = RowMatrix::Zero(w.rows(), static_cast<Eigen::Index>(out_cols));
    const auto ni = static_cast<Eigen::Index>(n);
    for (Eigen::Index row = 0; row < w.rows(); ++row) {
        const double* src = w.data() + row * w.cols();
        double* dst = out.data() + row * out.cols();
        for (std::size_t i = 1; i <= N; ++i) {
            const std::size_t pre = upow(n, i - 1);
            const auto post = static_cast<Eigen::Index>(upow(n, N - i));
            for (std::size_t blk = 0; blk < pre; ++blk) {
                Eigen::Map<const Matrix> wa(src + blk * n * static_cast<std::size_t>(post), post, ni);
                Eigen::Map<Matrix> oa(dst + blk * width * static_cast<std::size_t>(post), post,
                                      static_cast<Eigen::Index>(width));
                oa.noalias() += wa * ak;
            }
        }
    }
    return out;
}

// W sum_q x^{[q-1]} (x) I_n (x) x^{[N-q]}
Matrix jacobian_block(const RowMatrix& w, std::size_t N, const Vector& x) {
    const std::size_t n = static_cast<std::size_t>(x.size());
    const auto ni = static_cast<Eigen::Index>(n);
    std::vector<Vector> powers(N);
    for (std::size_t q = 0; q < N; ++q) powers[q] = kron_power(x, q);
    Matrix p = Matrix::Zero(w.rows(), ni);
    for (Eigen::Index row = 0; row < w.rows(); ++row) {
        const double* src = w.data() + row * w.cols();
        Vector acc = Vector::Zero(ni);
        for (std::size_t q = 1; q <= N; ++q) {
            const Vector& left = powers[q - 1];
            const Vector& right = powers[N - q];
            const auto post = right.size();
            for (Eigen::Index blk = 0; blk < left.size(); ++blk) {
                if (left(blk) == 0.0) continue;
                Eigen::Map<const Matrix> wa(src + blk * ni * post, post, ni);
                acc.noalias() += left(blk) * (wa.transpose() * right);
            }
        }
        p.row(row) = acc.transpose();
    }
    return p;
}

Matrix stack(const std::vector<Matrix>& blocks, Eigen::Index cols) {
    Eigen::Index rows = 0;
    for (const Matrix& b : blocks) rows += b.rows();
    Matrix out(rows, cols);
    Eigen::Index at = 0;
    for (const Matrix& b : blocks) {
        out.middleRows(at, b.rows()) = b;
        at += b.rows();
    }
    return out;
}

struct ObservabilityRun {
    std::vector<Matrix> blocks;
    bool capped = false;
};

// Fixed number of levels when `levels` is set, otherwise the opts stopping rules.
ObservabilityRun observability_levels(const DenseTensor& a, const Matrix& c, const Vector& x, const ObservabilityOptions& opts,
                                      std::optional<std::size_t> levels) {
    const std::size_t n = a.dim(0);
    const std::size_t k = a.order();
    const std::size_t max_level = levels ? *levels : opts.max_level.value_or(n - 1);
    ObservabilityRun run;
    run.blocks.push_back(c);
    std::size_t rank = levels ? 0 : numerical_rank(c, opts.rank_tol);
    if (max_level == 0 || (!levels && rank == n)) return run;

    const Matrix ak = unfold(a, k - 1);
    const double rows = static_cast<double>(c.rows());
    std::size_t N = k - 1;
    if (rows * ipow(static_cast<double>(n), N) > opts.size_cap) {
        run.capped = true;
        return run;
    }
    RowMatrix w = c * ak;
    for (std::size_t j = 1; j <= max_level; ++j) {
        if (j >= 2) {
            const std::size_t next = N + k - 2;
            if (rows * ipow(static_cast<double>(n), next) > opts.size_cap) {
                run.capped = true;
                break;
            }
            w = apply_transition(w, N, ak, n);
            N = next;
        }
        run.blocks.push_back(jacobian_block(w, N, x));
        if (levels) continue;
        const std::size_t new_rank = numerical_rank(stack(run.blocks, static_cast<Eigen::Index>(n)), opts.rank_tol);
        const bool stagnated = new_rank == rank;
        rank = new_rank;
        if (rank == n || (opts.stop_on_stagnation && stagnated)) break;
    }
    return run;
}

bool is_exact(const InputOutputHpds& model, const ReducedModel& reduced) {
    return reduction_residual(model, reduced) <= kExactResidual;
}

void check_projection(const InputOutputHpds& model, const ReducedModel& reduced) {
    const auto n = static_cast<Eigen::Index>(model.n());
    const auto r = static_cast<Eigen::Index>(reduced.model.n());
    if (reduced.V.rows() != n || reduced.V.cols() != r)
        throw InputError("reduced model projection V must be " + std::to_string(n) + " x " + std::to_string(r));
    if (reduced.model.k() != model.k()) throw InputError("reduced model order differs from the original");
}

}  // namespace

std::size_t numerical_rank(const Matrix& m, double rank_tol) {
    const std::vector<double> s = singular_values(m);
    if (s.empty() || !(s.front() > 0.0)) return 0;
    return static_cast<std::size_t>(
        std::count_if(s.begin(), s.end(), [&](double v) { return v > rank_tol * s.front(); }));
}

Matrix orthonormal_basis(const Matrix& m, double rank_tol) {
    if (m.size() == 0) return Matrix(m.rows(), 0);
    Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU);
    const Vector& s = svd.singularValues();
    Eigen::Index rank = 0;
    if (s.size() > 0 && s(0) > 0.0)
        while (rank < s.size() && s(rank) > rank_tol * s(0)) ++rank;
    return svd.matrixU().leftCols(rank);
}

std::string_view to_string(Stability s) {
    switch (s) {
        case Stability::stable: return "stable";
        case Stability::asymptotically_stable: return "asymptotically_stable";
        case Stability::unstable: return "unstable";
    }
    return "unknown";
}

std::string_view to_string(Observability o) {
    switch (o) {
        case Observability::observable: return "observable";
        case Observability::not_observable: return "not_observable";
        case Observability::inconclusive: return "inconclusive";
    }
    return "unknown";
}

StabilityVerdict stability_classify(const DenseTensor& a, const Vector& x0, double odeco_tol) {
    if (!x0.allFinite()) throw InputError("initial state must be finite");
    if (a.is_cubical() && static_cast<std::size_t>(x0.size()) != a.dim(0))
        throw InputError("initial state dimension does not match the tensor");
    const OdecoDecomposition dec = odeco_decompose(a, odeco_tol);
    const std::size_t k = a.order();
    const Vector alpha = dec.U.transpose() * x0;

    StabilityVerdict v;
    v.lambdas = dec.lambdas;
    v.U = dec.U;
    v.origin_unique = std::none_of(dec.lambdas.begin(), dec.lambdas.end(), [](double l) { return l == 0.0; });
    bool any_positive = false;
    bool any_zero = false;
    for (std::size_t j = 0; j < dec.lambdas.size(); ++j) {
        const double aj = alpha(static_cast<Eigen::Index>(j));
        const double term = dec.lambdas[j] * ipow(aj, k - 2);
        const bool zero = std::abs(aj) <= kAlphaZeroTol || dec.lambdas[j] == 0.0 || term == 0.0;
        v.alphas.push_back(aj);
        v.terms.push_back(zero ? 0.0 : term);
        v.zero_terms.push_back(zero);
        any_zero = any_zero || zero;
        any_positive = any_positive || (!zero && term > 0.0);
    }
    v.classification = any_positive ? Stability::unstable : any_zero ? Stability::stable : Stability::asymptotically_stable;
    return v;
}

std::vector<std::vector<std::size_t>> multisets(std::size_t count, std::size_t size) {
    std::vector<std::vector<std::size_t>> out;
    if (count == 0) {
        if (size == 0) out.emplace_back();
        return out;
    }
    std::vector<std::size_t> cur(size, 0);
    while (true) {
        out.push_back(cur);
        // rightmost position that can still grow
        std::size_t p = size;
        while (p > 0 && cur[p - 1] == count - 1) --p;
        if (p == 0) break;
        ++cur[p - 1];
        std::fill(cur.begin() + static_cast<std::ptrdiff_t>(p), cur.end(), cur[p - 1]);
    }
    return out;
}

ControllabilityResult controllability_matrix(const DenseTensor& a, const Matrix& b, const ControllabilityOptions& opts) {
    check_cubical(a, "controllability");
    const std::size_t n = a.dim(0);
    const std::size_t k = a.order();
    if (static_cast<std::size_t>(b.rows()) != n)
        throw InputError("input matrix must have n = " + std::to_string(n) + " rows");
    if (!b.allFinite()) throw InputError("input matrix entries must be finite");

    ControllabilityResult res;
    res.rank_tol = opts.rank_tol;
    res.R = b;
    res.level_columns.push_back(static_cast<std::size_t>(b.cols()));
    if (static_cast<std::size_t>(b.cols()) > opts.column_cap) {
        res.R = b.leftCols(static_cast<Eigen::Index>(opts.column_cap));
        res.level_columns.back() = opts.column_cap;
        res.truncated_by_cap = true;
    }
    res.rank = numerical_rank(res.R, opts.rank_tol);

    const std::size_t max_level = opts.max_level.value_or(n - 1);
    for (std::size_t j = 1; j <= max_level && !res.truncated_by_cap; ++j) {
        if (res.rank == n || res.rank == 0) break;
        Matrix q = orthonormal_basis(res.R, opts.rank_tol);
        const auto sets = multisets(static_cast<std::size_t>(q.cols()), k - 1);
        std::size_t count = sets.size();
        const auto used = static_cast<std::size_t>(res.R.cols());
        if (used + count > opts.column_cap) {
            count = opts.column_cap - used;
            res.truncated_by_cap = true;
        }
        const Matrix block = level_block(a, q, sets, count);
        res.level_bases.push_back(std::move(q));
        res.level_columns.push_back(count);
        res.R = hcat(res.R, block);
        res.levels_used = j;
        const std::size_t new_rank = numerical_rank(res.R, opts.rank_tol);
        const bool saturated = new_rank == res.rank;
        res.rank = new_rank;
        if (opts.stop_on_saturation && saturated) break;
    }
    res.is_strongly_controllable = res.rank == n && k % 2 == 0;
    return res;
}

bool is_strongly_controllable(const DenseTensor& a, const Matrix& b, const ControllabilityOptions& opts) {
    check_cubical(a, "controllability");
    if (a.order() % 2 != 0)
        throw PreconditionError("strong controllability needs an even tensor order k; for odd k = " +
                                std::to_string(a.order()) + " the rank test only certifies accessibility");
    return controllability_matrix(a, b, opts).is_strongly_controllable;
}

Matrix observability_transition(const DenseTensor& a, std::size_t j) {
    check_cubical(a, "observability");
    if (j < 2) throw InputError("transition matrices start at level 2");
    const std::size_t n = a.dim(0);
    const std::size_t k = a.order();
    const std::size_t N = (j - 1) * (k - 2) + 1;
    const Matrix ak = unfold(a, k - 1);
    const Matrix id = Matrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    Matrix f = Matrix::Zero(static_cast<Eigen::Index>(upow(n, N)), static_cast<Eigen::Index>(upow(n, N + k - 2)));
    for (std::size_t i = 1; i <= N; ++i) f += kron(kron(kron_power(id, i - 1), ak), kron_power(id, N - i));
    return f;
}

ObservabilityResult observability_matrix(const DenseTensor& a, const Matrix& c, const Vector& x, const ObservabilityOptions& opts) {
    check_cubical(a, "observability");
    const std::size_t n = a.dim(0);
    if (static_cast<std::size_t>(c.cols()) != n)
        throw InputError("output matrix must have n = " + std::to_string(n) + " columns");
    if (!c.allFinite()) throw InputError("output matrix entries must be finite");
    if (static_cast<std::size_t>(x.size()) != n || !x.allFinite())
        throw InputError("state must be finite with dimension " + std::to_string(n));

    ObservabilityRun run = observability_levels(a, c, x, opts, std::nullopt);
    ObservabilityResult res;
    res.x = x;
    res.rank_tol = opts.rank_tol;
    res.O = stack(run.blocks, static_cast<Eigen::Index>(n));
    res.blocks = std::move(run.blocks);
    res.levels_used = res.blocks.size() - 1;
    res.size_capped = run.capped;
    res.rank = numerical_rank(res.O, opts.rank_tol);
    res.verdict = res.rank == n         ? Observability::observable
                  : res.size_capped ? Observability::inconclusive
                                    : Observability::not_observable;
    return res;
}

Observability is_locally_weakly_observable(const DenseTensor& a, const Matrix& c, const Vector& x, const ObservabilityOptions& opts) {
    return observability_matrix(a, c, x, opts).verdict;
}

PreservationCheck check_controllability_preservation(const InputOutputHpds& model, const ReducedModel& reduced,
                                                     const ControllabilityOptions& opts) {
    check_projection(model, reduced);
    if (!model.B() || !reduced.model.B()) throw InputError("controllability preservation needs an input matrix on both models");
    const Matrix& V = reduced.V;
    const ControllabilityResult full = controllability_matrix(model.A(), *model.B(), opts);

    // Same multisets over V'Q_j so that columns line up with V'R.
    Matrix r_red = *reduced.model.B();
    r_red = r_red.leftCols(static_cast<Eigen::Index>(full.level_columns.front())).eval();
    for (std::size_t j = 0; j < full.level_bases.size(); ++j) {
        const Matrix q = V.transpose() * full.level_bases[j];
        const auto sets = multisets(static_cast<std::size_t>(q.cols()), model.k() - 1);
        r_red = hcat(r_red, level_block(reduced.model.A(), q, sets, full.level_columns[j + 1]));
    }

    PreservationCheck chk;
    chk.n = model.n();
    chk.r = reduced.model.n();
    chk.exact_reduction = is_exact(model, reduced);
    chk.levels_used = full.levels_used;
    chk.reference_norm = full.R.norm();
    chk.residual_controllability = (r_red - V.transpose() * full.R).norm();
    chk.rank_full = full.rank;
    chk.rank_reduced = numerical_rank(r_red, opts.rank_tol);
    chk.rank_reduced_independent = controllability_matrix(reduced.model.A(), *reduced.model.B(), opts).rank;
    chk.within_tolerance = *chk.residual_controllability <= kPreservationTol * (1.0 + chk.reference_norm);
    if (chk.exact_reduction && chk.rank_full == chk.n) chk.implication_holds = chk.rank_reduced == chk.r;
    return chk;
}

PreservationCheck check_observability_preservation(const InputOutputHpds& model, const ReducedModel& reduced, const Vector& x,
                                                   const ObservabilityOptions& opts) {
    check_projection(model, reduced);
    if (!model.C() || !reduced.model.C()) throw InputError("observability preservation needs an output matrix on both models");
    if (!is_symmetric(model.A()))
        throw PreconditionError("observability preservation requires a symmetric dynamic tensor");
    const Matrix& V = reduced.V;
    const ObservabilityResult full = observability_matrix(model.A(), *model.C(), x, opts);
    const Vector z = project_state(V, x);
    const ObservabilityRun red = observability_levels(reduced.model.A(), *reduced.model.C(), z, opts, full.levels_used);
    const Matrix o_red = stack(red.blocks, static_cast<Eigen::Index>(reduced.model.n()));

    PreservationCheck chk;
    chk.n = model.n();
    chk.r = reduced.model.n();
    chk.exact_reduction = is_exact(model, reduced);
    chk.levels_used = full.levels_used;
    chk.reference_norm = full.O.norm();
    chk.residual_observability = red.capped ? std::numeric_limits<double>::infinity() : (o_red - full.O * V).norm();
    chk.rank_full = full.rank;
    chk.rank_reduced = numerical_rank(o_red, opts.rank_tol);
    chk.rank_reduced_independent = observability_matrix(reduced.model.A(), *reduced.model.C(), z, opts).rank;
    chk.within_tolerance = *chk.residual_observability <= kPreservationTol * (1.0 + chk.reference_norm);
    if (chk.exact_reduction && chk.rank_full == chk.n) chk.implication_holds = chk.rank_reduced == chk.r;
    return chk;
}

}  // namespace hpds
