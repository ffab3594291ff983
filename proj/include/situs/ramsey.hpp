#ifndef SITUS_RAMSEY_HPP
#define SITUS_RAMSEY_HPP

#include <optional>

#include "situs/sset.hpp"

namespace situs {

// Colour map on the non-degenerate simplices of X at one degree.
struct Colouring {
    int degree = 2;                 // arity of the coloured faces
    std::vector<int> colour;        // per simplex of X(degree); -1 on degenerates
    int colours = 1;
};

// Simplices all of whose non-degenerate degree-n faces share one colour,
// closed under the action; colour per simplex where defined (-1 when the
// simplex has no non-degenerate degree-n face).
struct HomogeneousSubsset {
    std::vector<Subset> members;   // per degree
    std::vector<std::vector<int>> colour_of; // per degree and simplex
};

HomogeneousSubsset homogeneous_subsset(const TruncatedSSet& x, const Colouring& c);

// Exhaustive Ramsey verification over symmetric colourings of the
// non-degenerate arity-tuples on a set of the given size.
struct RamseyReport {
    bool holds = false;
    long long colourings_checked = 0;
    std::optional<std::vector<int>> counterexample; // colour per unordered tuple, lexicographic
};

RamseyReport ramsey_check(int set_size, int colours, int arity, int target_degree,
                          long long budget = 1 << 22, int jobs = 1);

} // namespace situs

#endif
