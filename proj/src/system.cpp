#include "hpds/system.hpp"

#include "hpds/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hpds {

InputOutputHpds::InputOutputHpds(DenseTensor a, std::optional<Matrix> b, std::optional<Matrix> c)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
    if (!a_.is_cubical() || a_.order() < 2)
        throw InputError("dynamic tensor must be cubical with order >= 2");
    if (!is_almost_symmetric(a_))
        throw PreconditionError("dynamic tensor must be almost symmetric (invariant under permutations of the first k-1 indices)");
    const auto n = static_cast<Eigen::Index>(a_.dim(0));
    if (b_) {
        if (b_->rows() != n || b_->cols() == 0)
            throw InputError("input matrix must be n x m with n = " + std::to_string(n) + " and m >= 1");
        if (!b_->allFinite()) throw InputError("input matrix entries must be finite");
    }
    if (c_) {
        if (c_->cols() != n || c_->rows() == 0)
            throw InputError("output matrix must be l x n with n = " + std::to_string(n) + " and l >= 1");
        if (!c_->allFinite()) throw InputError("output matrix entries must be finite");
    }
}

ControlSignal ControlSignal::zero(std::size_t m) { return {m, std::monostate{}}; }

ControlSignal ControlSignal::constant(Vector u0) {
    const auto m = static_cast<std::size_t>(u0.size());
    return {m, std::move(u0)};
}

ControlSignal ControlSignal::piecewise_constant(std::vector<Breakpoint> table) {
    if (table.empty()) throw InputError("piecewise-constant control needs at least one breakpoint");
    const auto m = static_cast<std::size_t>(table.front().u.size());
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (static_cast<std::size_t>(table[i].u.size()) != m)
            throw InputError("control table rows must all have dimension " + std::to_string(m));
        if (i > 0 && !(table[i].t > table[i - 1].t))
            throw InputError("control table times must be strictly increasing");
    }
    return {m, std::move(table)};
}

ControlSignal ControlSignal::function(std::size_t m, std::function<Vector(double)> fn) {
    if (!fn) throw InputError("control function must be callable");
    return {m, std::move(fn)};
}

Vector ControlSignal::operator()(double t) const {
    struct Visitor {
        std::size_t m;
        double t;
        Vector operator()(std::monostate) const { return Vector::Zero(static_cast<Eigen::Index>(m)); }
        Vector operator()(const Vector& u) const { return u; }
        Vector operator()(const std::vector<Breakpoint>& table) const {
            auto it = std::upper_bound(table.begin(), table.end(), t,
                                       [](double value, const Breakpoint& b) { return value < b.t; });
            return it == table.begin() ? table.front().u : std::prev(it)->u;
        }
        Vector operator()(const std::function<Vector(double)>& fn) const {
            Vector u = fn(t);
            if (static_cast<std::size_t>(u.size()) != m) throw InputError("control function returned wrong dimension");
            return u;
        }
    };
    return std::visit(Visitor{m_, t}, impl_);
}

Vector vector_field(const InputOutputHpds& model, const Vector& x, const Vector& u) {
    if (static_cast<std::size_t>(x.size()) != model.n())
        throw InputError("state has dimension " + std::to_string(x.size()) + ", model has n = " + std::to_string(model.n()));
    Vector f = contract_state(model.A(), x);
    if (u.size() > 0) {
        if (!model.B()) throw InputError("model has no input matrix but an input was supplied");
        if (static_cast<std::size_t>(u.size()) != model.m())
            throw InputError("input has dimension " + std::to_string(u.size()) + ", model has m = " + std::to_string(model.m()));
        f.noalias() += *model.B() * u;
    }
    return f;
}

Vector output(const InputOutputHpds& model, const Vector& x) {
    if (!model.C()) throw InputError("model has no output matrix");
    if (static_cast<std::size_t>(x.size()) != model.n()) throw InputError("state dimension mismatch in output");
    return *model.C() * x;
}

namespace {

enum class StepStatus { ok, overflow, invalid };

struct Stepper {
    const InputOutputHpds& model;
    const ControlSignal& control;
    double bound;
    bool has_input;

    StepStatus eval(const Vector& x, double t, Vector& out) const {
        if (!x.allFinite() || x.norm() > bound) return StepStatus::overflow;
        out = has_input ? vector_field(model, x, control(t)) : vector_field(model, x);
        return out.allFinite() ? StepStatus::ok : StepStatus::invalid;
    }

    StepStatus step(Integrator method, const Vector& x, double t, double h, Vector& next) const {
        Vector k1, k2, k3, k4;
        StepStatus s = eval(x, t, k1);
        if (s != StepStatus::ok) return s;
        if (method == Integrator::euler) {
            next = x + h * k1;
            return StepStatus::ok;
        }
        if ((s = eval(x + 0.5 * h * k1, t + 0.5 * h, k2)) != StepStatus::ok) return s;
        if ((s = eval(x + 0.5 * h * k2, t + 0.5 * h, k3)) != StepStatus::ok) return s;
        if ((s = eval(x + h * k3, t + h, k4)) != StepStatus::ok) return s;
        next = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        return StepStatus::ok;
    }
};

}  // namespace

Trajectory simulate(const InputOutputHpds& model, const Vector& x0, const ControlSignal& u, const SimulationOptions& opts) {
    if (!(opts.dt > 0.0)) throw InputError("time step must be positive");
    if (!(opts.t1 >= opts.t0)) throw InputError("time span must satisfy t1 >= t0");
    if (static_cast<std::size_t>(x0.size()) != model.n())
        throw InputError("initial state has dimension " + std::to_string(x0.size()) + ", model has n = " +
                         std::to_string(model.n()));
    if (!x0.allFinite()) throw InputError("initial state must be finite");
    const bool has_input = !u.is_zero();
    if (has_input && u.dim() != model.m())
        throw InputError("control dimension " + std::to_string(u.dim()) + " does not match m = " + std::to_string(model.m()));

    const Stepper stepper{model, u, opts.divergence_bound, has_input};
    const double span = opts.t1 - opts.t0;
    const auto steps = static_cast<std::size_t>(std::ceil(span / opts.dt - 1e-9));

    Trajectory traj;
    traj.times.reserve(steps + 1);
    traj.states.reserve(steps + 1);
    auto record = [&](double t, const Vector& x) {
        traj.times.push_back(t);
        traj.states.push_back(x);
        if (model.C()) traj.outputs.push_back(*model.C() * x);
    };

    Vector x = x0;
    record(opts.t0, x);
    if (x.norm() > opts.divergence_bound) {
        traj.diverged_at = opts.t0;
        return traj;
    }
    for (std::size_t i = 0; i < steps; ++i) {
        const double t = opts.t0 + static_cast<double>(i) * opts.dt;
        const double t_next = (i + 1 == steps) ? opts.t1 : opts.t0 + static_cast<double>(i + 1) * opts.dt;
        Vector next;
        const StepStatus status = stepper.step(opts.method, x, t, t_next - t, next);
        if (status == StepStatus::invalid)
            throw NumericalError("non-finite vector field at t = " + std::to_string(t) + " with bounded state");
        if (status == StepStatus::overflow || !next.allFinite()) {
            traj.diverged_at = t_next;
            return traj;
        }
        x = std::move(next);
        record(t_next, x);
        if (x.norm() > opts.divergence_bound) {
            traj.diverged_at = t_next;
            return traj;
        }
    }
    return traj;
}

void PolynomialSystem::validate() const {
    if (n == 0) throw InputError("polynomial system needs n >= 1");
    for (const PolynomialTerm& term : terms) {
        const auto& c = term.coefficients;
        if (c.order() != term.degree + 1)
            throw InputError("degree-" + std::to_string(term.degree) + " term needs an order-" +
                             std::to_string(term.degree + 1) + " coefficient tensor");
        for (std::size_t d : c.dims())
            if (d != n) throw InputError("coefficient tensor extents must all equal n");
    }
}

Vector PolynomialSystem::evaluate(const Vector& x) const {
    if (static_cast<std::size_t>(x.size()) != n) throw InputError("state dimension mismatch in polynomial evaluation");
    Vector f = Vector::Zero(static_cast<Eigen::Index>(n));
    for (const PolynomialTerm& term : terms) {
        const std::vector<Vector> xs(term.degree, x);
        f += contract_leading(term.coefficients, xs);
    }
    return f;
}

InputOutputHpds homogenize(const PolynomialSystem& psys, std::size_t target_degree) {
    psys.validate();
    if (target_degree < 1) throw InputError("homogenization target degree must be >= 1");
    for (const PolynomialTerm& term : psys.terms)
        if (term.degree > target_degree)
            throw InputError("term of degree " + std::to_string(term.degree) + " exceeds target degree " +
                             std::to_string(target_degree));

    const std::size_t n = psys.n;
    const std::size_t k = target_degree + 1;
    DenseTensor lifted = DenseTensor::cubical(n + 1, k);
    std::vector<std::size_t> target(k);
    for (const PolynomialTerm& term : psys.terms) {
        const std::size_t d = term.degree;
        IndexCounter it(term.coefficients.dims());
        std::size_t lin = 0;
        do {
            const auto& idx = it.index();
            // (i_1..i_d, aux, ..., aux, out)
            std::copy(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(d), target.begin());
            std::fill(target.begin() + static_cast<std::ptrdiff_t>(d), target.end() - 1, n);
            target.back() = idx[d];
            lifted(target) += term.coefficients[lin];
            ++lin;
        } while (it.next());
    }
    return InputOutputHpds(symmetrize_first_modes(lifted));
}

std::uint64_t param_count(std::uint64_t n, std::uint64_t k, std::uint64_t m, std::uint64_t l) {
    std::uint64_t nk = 1;
    for (std::uint64_t i = 0; i < k; ++i) nk *= n;
    return nk + n * m + n * l;
}

}  // namespace hpds
