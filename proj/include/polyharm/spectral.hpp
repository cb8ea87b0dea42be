#pragma once

#include "polyharm/solver.hpp"

namespace polyharm {

struct EigenPair {
    double eigenvalue = 0.0;
    SampledField eigenfunction;  // positive, ∫ φ = 1
    int iterations = 0;
    double residual = 0.0;       // ‖G[φ] - φ/λ‖∞ / ‖φ‖∞
};

struct EigenTolerances {
    double eigenvalue = 1e-8;  // relative change between iterates
    double residual = 1e-6;
    int max_iterations = 500;
};

// Power iteration φ ← G[φ] / ∫G[φ] from φ ≡ 1; λ = ∫φ / ∫G[φ].
// ConvergenceError (carrying the last residual) if both tolerances are not
// met within max_iterations; ParameterError for nonpositive tolerances.
EigenPair principal_eigenpair(const GreenOperator& op, const EigenTolerances& tol = {});

struct SandwichConstants {
    double c1 = 0.0;  // min φ / d^m
    double c2 = 0.0;  // max φ / d^m
};

SandwichConstants verify_sandwich(const EigenPair& pair);

// ∫ u φ by the grid quadrature; DomainError if the grids differ.
double eigen_moment(const SampledField& u, const EigenPair& pair);

}  // namespace polyharm
