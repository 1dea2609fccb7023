#pragma once

#include <memory>
#include <span>
#include <utility>

#include "bslimits/series.hpp"

namespace bslimits {

// Type-erased multivariate function, generic over the rings the solvers need.
// Wraps a generic callable `f(std::span<const R>) -> R`; the argument at index
// k is the value substituted for the cycle-index variable s_{k+1} (or for y
// when the function is univariate).
class RingFunction {
public:
    RingFunction() = default;

    template <class F>
    explicit RingFunction(F f) : impl_(std::make_shared<Model<F>>(std::move(f))) {}

    explicit operator bool() const { return static_cast<bool>(impl_); }

    template <class R>
    R operator()(std::span<const R> args) const {
        return impl_->eval(args);
    }

    template <class R>
    R operator()(const std::vector<R> &args) const {
        return impl_->eval(std::span<const R>(args));
    }

private:
    struct Concept {
        virtual ~Concept() = default;
        virtual double eval(std::span<const double>) const = 0;
        virtual Dual<double> eval(std::span<const Dual<double>>) const = 0;
        virtual ExactSeries eval(std::span<const ExactSeries>) const = 0;
        virtual FloatSeries eval(std::span<const FloatSeries>) const = 0;
        virtual Dual<ExactSeries> eval(std::span<const Dual<ExactSeries>>) const = 0;
        virtual Dual<FloatSeries> eval(std::span<const Dual<FloatSeries>>) const = 0;
    };

    template <class F>
    struct Model final : Concept {
        explicit Model(F fn) : f(std::move(fn)) {}
        double eval(std::span<const double> a) const override { return f(a); }
        Dual<double> eval(std::span<const Dual<double>> a) const override { return f(a); }
        ExactSeries eval(std::span<const ExactSeries> a) const override { return f(a); }
        FloatSeries eval(std::span<const FloatSeries> a) const override { return f(a); }
        Dual<ExactSeries> eval(std::span<const Dual<ExactSeries>> a) const override { return f(a); }
        Dual<FloatSeries> eval(std::span<const Dual<FloatSeries>> a) const override { return f(a); }
        F f;
    };

    std::shared_ptr<const Concept> impl_;
};

} // namespace bslimits
