#ifndef LATK_MODULAR_HPP
#define LATK_MODULAR_HPP

// The symmetry group of the lattice energies, generated by
//
//     z -> -1/z,   z -> z + 1,   z -> -conj(z),
//
// and reduction of any upper-half-plane point into the closed fundamental
// domain  { |z| >= 1, 0 <= Re z <= 1/2 }.  Reduction records the word of
// generators it applied, so callers can certify the move and invert it.

#include <string>
#include <string_view>
#include <vector>

#include "latk/lattice.hpp"

namespace latk {

enum class GenKind : std::uint8_t { Invert, Translate, Reflect };

struct GroupGenerator {
    GenKind kind = GenKind::Invert;
    long shift = 0; // used by Translate: z -> z + shift
};

struct GroupWord {
    std::vector<GroupGenerator> gens; // applied left to right

    bool empty() const { return gens.empty(); }
};

UpperHalfPoint apply(const GroupGenerator& g, UpperHalfPoint z);
UpperHalfPoint apply(const GroupWord& w, UpperHalfPoint z);
GroupWord inverse(const GroupWord& w);

// Compact text form: "I" invert, "R" reflect, "T3"/"T-2" translate.
std::string word_to_string(const GroupWord& w);
GroupWord word_from_string(std::string_view s); // throws DomainError on junk

struct FundamentalDomainPoint {
    UpperHalfPoint point; // in the closed fundamental domain
    GroupWord word;       // maps the original input to `point`
};

// Numerical slack on the |z| = 1 and x = 1/2 boundaries.
constexpr double kBoundarySlack = 1e-12;

FundamentalDomainPoint reduce(UpperHalfPoint z);

bool in_fundamental_domain(UpperHalfPoint z, double tol = kBoundarySlack);

// The ray x = 1/2, y >= sqrt(3)/2 (right boundary of the domain).
bool is_on_gamma_c(UpperHalfPoint z, double tol);

} // namespace latk

#endif
