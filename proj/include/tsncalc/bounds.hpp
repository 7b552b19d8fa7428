#pragma once

#include "tsncalc/curve.hpp"
#include "tsncalc/models.hpp"

namespace tsncalc {

class UtilizationError : public ParameterError {
public:
    using ParameterError::ParameterError;
};

// Raised when a g^x model fails x(w) <= g(v + w) - g(v); the bound of the
// integrated approach would be unsound.
class PreconditionError : public ParameterError {
public:
    PreconditionError(const std::string& what, PreconditionWitness witness)
        : ParameterError(what), witness_(std::move(witness)) {}
    const PreconditionWitness& witness() const { return witness_; }

private:
    PreconditionWitness witness_;
};

// H(alpha, beta).
ExtendedValue bound_min_plus(const Curve& alpha, const Curve& beta);
// sup_v {g2(v) - g1(v)}.
ExtendedValue bound_max_plus(const Curve& g1, const Curve& g2);
// V(alpha_down(v + l_min), beta_up(v)).
ExtendedValue bound_mapped(const Curve& alpha, const Curve& beta, const Rational& l_min);

// Checks the g^x precondition on the whole quadrant: the arrangement up to
// one unit past the last breakpoint decides it together with the tail slopes.
PreconditionResult check_gx_precondition_global(const Curve& g, const Curve& x);

// V(alpha_down, g) for the model's g-function. Throws PreconditionError with
// the witness when the precondition fails.
ExtendedValue bound_integrated(const Curve& alpha, const GxServer& model);

struct UtilizationCheck {
    Rational arrival_rate;
    ExtendedValue service_rate;
    bool stable() const { return ExtendedValue(arrival_rate) <= service_rate; }
};

struct BoundReport {
    ExtendedValue min_plus;    // H(alpha, beta)
    ExtendedValue max_plus;    // V(g1, g2) with g1 = alpha_down(v + l_min)
    ExtendedValue mapped;      // V(alpha_down(v + l_min), beta_up)
    ExtendedValue integrated;  // V(alpha_down, g) of the g^x model
    UtilizationCheck assumptions;
};

// The four approaches on a dedicated link of rate c: beta = c(t - l_max/c)^+,
// g-server (v + l_max)/c and the GR model with R = c, E = 0. Throws
// UtilizationError when rho > c.
BoundReport compare_table(const FlowSpec& flow, const Rational& c);

}  // namespace tsncalc
