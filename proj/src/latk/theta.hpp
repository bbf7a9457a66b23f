#ifndef LATK_THETA_HPP
#define LATK_THETA_HPP

// One-dimensional theta function
//
//     theta(X;Y) = sum_{n in Z} exp(-pi n^2 X) exp(2 pi i n Y)
//                = 1 + 2 sum_{n>=1} exp(-pi n^2 X) cos(2 pi n Y),   X > 0,
//
// its partial derivatives in X and Y, and the small tail series built on
// the same kernel (mu, nu, their alternating variants, delta).
//
// Two representations are used. The direct cosine series converges like
// exp(-pi X) per index; its Poisson counterpart
//
//     theta(X;Y) = X^{-1/2} sum_{n in Z} exp(-pi (n-Y)^2 / X)
//
// converges like exp(-pi/X) and takes over below a switch threshold.
// Derivatives are obtained by differentiating whichever representation is
// active, never by finite differences.

#include <cstdint>

#include "latk/errors.hpp"

namespace latk {

struct TruncationPolicy {
    double abs_tol = 1e-14;        // target absolute truncation error
    int max_terms = 64;            // hard cap per series direction
    double switch_threshold = 1.0; // use the Poisson form when X is below this

    void validate() const;
};

struct ThetaArgs {
    double X; // decay parameter, > 0
    double Y; // phase parameter; the value is 1-periodic and even in Y
};

double theta_1d(ThetaArgs args, const TruncationPolicy& policy = {});
double theta_1d_dY(ThetaArgs args, const TruncationPolicy& policy = {});
double theta_1d_dX(ThetaArgs args, const TruncationPolicy& policy = {});
double theta_1d_dXdY(ThetaArgs args, const TruncationPolicy& policy = {});
// Second X-derivative; needed by the energy y-gradient assembly.
double theta_1d_dXX(ThetaArgs args, const TruncationPolicy& policy = {});

// All five values from one pass over the active representation.
struct ThetaDerivatives {
    double v, dX, dY, dXY, dXX;
};
ThetaDerivatives theta_1d_all(ThetaArgs args, const TruncationPolicy& policy = {});

enum class AuxSeriesKind : std::uint8_t {
    Mu,    // sum_{n>=2} n^2 exp(-pi (n^2-1) x)
    Nu,    // sum_{n>=2} n^4 exp(-pi (n^2-1) x)
    MuHat, // alternating Mu, sign (-1)^{n+1}
    NuHat, // alternating Nu
    Delta, // sum_{n>=2} exp(-pi (n^2-1) x)
};

double aux_series(AuxSeriesKind kind, double x, const TruncationPolicy& policy = {});

// Upper bound for sum_{n > N} n^p exp(-a n^2), N >= 0, a > 0.
// Geometric majorant off the first omitted term; used for truncation control
// here and by the lattice sums.
double gaussian_poly_tail(double a, int p, int n_last);

} // namespace latk

#endif
