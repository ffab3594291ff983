#ifndef SITUS_FILTER_HPP
#define SITUS_FILTER_HPP

#include <optional>
#include <string>
#include <vector>

#include "situs/base.hpp"

namespace situs {

// Finite carrier: an ordered list of distinct atom labels. May be empty.
struct Carrier {
    std::vector<std::string> labels;

    Carrier() = default;
    explicit Carrier(std::vector<std::string> ls);

    int size() const { return (int)labels.size(); }
    int index_of(const std::string& l) const; // throws DomainError if absent
};

enum class Semantics { Generated, Graded };

// A descending chain of subsets standing in for a filter base with a
// meaningful cofinal index. The empty set is a legal grade.
struct GradedFilter {
    int carrier_size = 0;
    std::vector<Subset> grades; // nonempty; normalized descending

    GradedFilter() = default;
    GradedFilter(int n, std::vector<Subset> gs);

    static GradedFilter antidiscrete(int n);
    static GradedFilter principal(int n, const Subset& s); // chain [full, s]
    static GradedFilter principal_at(int n, int point);

    // Replaces B_i with the intersection of B_1..B_i. Idempotent.
    void normalize();

    const Subset& minimal() const { return grades.back(); }
    int chain_length() const { return (int)grades.size(); }
    // Grade by index, repeating the last grade past the end (padding).
    const Subset& grade(int i) const { return grades[i < chain_length() ? i : chain_length() - 1]; }

    bool operator==(const GradedFilter& o) const {
        return carrier_size == o.carrier_size && grades == o.grades;
    }
};

// Neighbourhood test. On a finite chain the two semantics agree
// extensionally (S contains some grade iff it contains the last one);
// both code paths are kept because the witness differs.
bool is_neighbourhood(const GradedFilter& f, const Subset& s, Semantics sem);

struct ContinuityWitness {
    bool ok = false;
    // For each target grade index, the index of a source grade mapping into it.
    std::vector<int> grade_witness;
    int failing_grade = -1; // target grade with no witness, when !ok
};

// f total on the source carrier, as a table into the target carrier.
ContinuityWitness check_continuous(const std::vector<int>& map, const GradedFilter& src,
                                   const GradedFilter& dst, Semantics sem);

// Grade-wise Cartesian product; chains padded to a common length by
// repeating the last grade. Index of (i,j) is i*|G| + j.
GradedFilter product_filter(const GradedFilter& f, const GradedFilter& g);

// Coarsest graded filter on the common source making every map continuous:
// grade-wise intersections of preimages.
GradedFilter pullback_filter(const std::vector<std::vector<int>>& maps,
                             const std::vector<const GradedFilter*>& targets, int source_size);

// Grade-wise images along the map (codomain size given explicitly).
GradedFilter pushforward_filter(const std::vector<int>& map, const GradedFilter& f, int target_size);

// Coproduct: grade-wise disjoint unions, chains padded. Left carrier indices
// come first.
GradedFilter coproduct_filter(const GradedFilter& f, const GradedFilter& g);

// True iff on the finite carrier every 2-colouring has a monochromatic
// neighbourhood; cross-checked against the minimal grade being a singleton.
// The improper filter (empty minimal grade) is not ultra.
bool is_ultrafilter(const GradedFilter& f);

// "finer": every neighbourhood of g is one of f (Generated reading).
bool finer_than(const GradedFilter& f, const GradedFilter& g);

} // namespace situs

#endif
