#ifndef LATK_BOUNDS_HPP
#define LATK_BOUNDS_HPP

// Numerical re-derivation of every quantitative inequality the energy
// analysis rests on. Each check evaluates the true series on both sides of
// an inequality over a grid of its hypothesis region and reports the worst
// margin plus any violating points; a failure therefore isolates either a
// transcription slip or a genuine gap.

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "latk/lattice.hpp"

namespace latk {

struct BoundCheck {
    std::string name;
    std::string hypothesis;
    double margin = 0.0; // min slack (LHS - RHS) over the grid
    long points = 0;
    std::vector<std::array<double, 4>> violations; // offending parameter tuples (capped)

    bool passed() const { return violations.empty() && margin >= 0.0; }
};

enum class ProofSum : std::uint8_t {
    S1, S2, S3, S4,          // radial/angular curvature sums on the ray x = 1/2
    S3a, S3b, S3c, S3d,      // parity split of S3
    M1, M2, M3, M4,          // leading expansion blocks at x = 1/2, b = 2
    E1, E2, E3, E4,          // their n >= 2 remainders
    P1, P2, P3,              // leading blocks at b = 2 sqrt(2)
};

ProofSum proof_sum_from_name(std::string_view name); // throws DomainError
double eval_proof_sum(ProofSum which, double alpha, double y, const TruncationPolicy& policy = {});

// Major term and remainder of the x-derivative identity
//   -dE/dx = (sqrt2 / 4 pi) a^{-5/2} y^{1/2} e^{-pi a y} (I + R).
double transversal_major_term(double alpha, UpperHalfPoint z, double b,
                              const TruncationPolicy& policy = {});
double transversal_error_term(double alpha, UpperHalfPoint z, double b,
                              const TruncationPolicy& policy = {});

// All check names of one suite: "theta", "transversal", "curvature",
// "comparison", "decay", "constants", or "all".
std::vector<std::string> suite_check_names(std::string_view suite);

// Run one named check; grid_n is the sampling density per parameter
// dimension (unbounded directions are geometric, capped at 20).
BoundCheck run_check(std::string_view name, int grid_n = 25, const TruncationPolicy& policy = {});

std::vector<BoundCheck> run_suite(std::string_view suite, int grid_n = 25,
                                  const TruncationPolicy& policy = {});

// Printed-constant reproduction (digit truncation semantics).
std::vector<BoundCheck> check_constants(const TruncationPolicy& policy = {});

} // namespace latk

#endif
