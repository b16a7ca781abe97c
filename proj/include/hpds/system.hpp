#pragma once

#include "hpds/tensor.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace hpds {

/// x' = A x^{k-1} + B u,  y = C x  with A almost symmetric.
///
/// B and C are optional, so autonomous and output-only systems share the type.
class InputOutputHpds {
public:
    /// Validates cubical shape, order >= 2, almost symmetry (1e-10) and
    /// matrix dimensions; throws InputError / PreconditionError.
    explicit InputOutputHpds(DenseTensor a, std::optional<Matrix> b = std::nullopt,
                             std::optional<Matrix> c = std::nullopt);

    [[nodiscard]] const DenseTensor& A() const noexcept { return a_; }
    [[nodiscard]] const std::optional<Matrix>& B() const noexcept { return b_; }
    [[nodiscard]] const std::optional<Matrix>& C() const noexcept { return c_; }

    [[nodiscard]] std::size_t n() const noexcept { return a_.dim(0); }
    [[nodiscard]] std::size_t k() const noexcept { return a_.order(); }
    [[nodiscard]] std::size_t m() const noexcept { return b_ ? static_cast<std::size_t>(b_->cols()) : 0; }
    [[nodiscard]] std::size_t l() const noexcept { return c_ ? static_cast<std::size_t>(c_->rows()) : 0; }

private:
    DenseTensor a_;
    std::optional<Matrix> b_;
    std::optional<Matrix> c_;
};

/// u(t): zero, constant, piecewise constant, or an arbitrary callable.
class ControlSignal {
public:
    struct Breakpoint {
        double t;
        Vector u;
    };

    static ControlSignal zero(std::size_t m);
    static ControlSignal constant(Vector u0);
    /// Holds u_i on [t_i, t_{i+1}); before t_0 the first value applies. Breakpoints must be strictly increasing.
    static ControlSignal piecewise_constant(std::vector<Breakpoint> table);
    static ControlSignal function(std::size_t m, std::function<Vector(double)> fn);

    [[nodiscard]] std::size_t dim() const noexcept { return m_; }
    [[nodiscard]] Vector operator()(double t) const;
    [[nodiscard]] bool is_zero() const noexcept { return std::holds_alternative<std::monostate>(impl_); }

private:
    using Impl = std::variant<std::monostate, Vector, std::vector<Breakpoint>, std::function<Vector(double)>>;
    ControlSignal(std::size_t m, Impl impl) : m_(m), impl_(std::move(impl)) {}

    std::size_t m_ = 0;
    Impl impl_;
};

/// A x^{k-1} + B u. Pass an empty u (or omit) for the autonomous field.
[[nodiscard]] Vector vector_field(const InputOutputHpds& model, const Vector& x, const Vector& u = Vector());

/// C x. Throws InputError when the model has no output matrix.
[[nodiscard]] Vector output(const InputOutputHpds& model, const Vector& x);

enum class Integrator { rk4, euler };

struct SimulationOptions {
    double t0 = 0.0;
    double t1 = 10.0;
    double dt = 1e-3;
    Integrator method = Integrator::rk4;
    double divergence_bound = 1e6;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<Vector> states;
    std::vector<Vector> outputs;  ///< empty when the model has no C
    std::optional<double> diverged_at;
};

/// Fixed-step integration. When ||x|| passes the divergence bound (or the
/// step overflows past it) the run stops and diverged_at records the time.
/// A non-finite state without an exceeded bound is a NumericalError.
[[nodiscard]] Trajectory simulate(const InputOutputHpds& model, const Vector& x0, const ControlSignal& u,
                                  const SimulationOptions& opts = {});

/// One homogeneous-degree term of a general polynomial vector field:
/// coefficients has order degree+1 over n states and contributes
/// coefficients x_1 x ... x_degree x (the last mode indexes the output component).
struct PolynomialTerm {
    std::size_t degree = 0;
    DenseTensor coefficients;
};

struct PolynomialSystem {
    std::size_t n = 0;
    std::vector<PolynomialTerm> terms;

    /// Throws InputError for shape violations.
    void validate() const;
    [[nodiscard]] Vector evaluate(const Vector& x) const;
};

/// Lifts every term to degree `target_degree` with an extra state x_{n+1}
/// (x'_{n+1} = 0) and returns the resulting (n+1)-dimensional HPDS of order
/// target_degree+1, symmetrized over its first k-1 modes. On x_{n+1} = 1 the
/// first n components reproduce the original field.
[[nodiscard]] InputOutputHpds homogenize(const PolynomialSystem& psys, std::size_t target_degree);

/// n^k + n m + n l
[[nodiscard]] std::uint64_t param_count(std::uint64_t n, std::uint64_t k, std::uint64_t m, std::uint64_t l);

}  // namespace hpds
