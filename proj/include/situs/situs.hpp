#ifndef SITUS_SITUS_HPP
#define SITUS_SITUS_HPP

#include <optional>
#include <string>
#include <vector>

#include "situs/filter.hpp"
#include "situs/sset.hpp"

namespace situs {

// A truncated simplicial set with a graded filter per degree; structural maps
// are graded-continuous (validate_situs checks this).
struct Situs {
    TruncatedSSet sset;
    std::vector<GradedFilter> filters; // filters[n-1] over X(n)
    Semantics sem = Semantics::Graded;
    // Optional vertex-sequence extensions for Archimedean search on ssets
    // whose simplices are vertex-determined.
    std::vector<std::vector<int>> extension_paths;

    int trunc() const { return sset.trunc; }
    const GradedFilter& filter(int degree) const { return filters[degree - 1]; }
};

struct ValidateResult {
    bool ok = true;
    std::string witness; // offending monotone map and grade index
};

ValidateResult validate_situs(const Situs& s);

// Degree-wise maps; a morphism commutes with the Δ-action and is
// degree-wise graded-continuous.
struct SitusMap {
    SSetMap deg;
};

struct MorphismCheck {
    bool ok = false;
    std::string witness;
};

MorphismCheck check_morphism(const SitusMap& f, const Situs& src, const Situs& dst);

Situs product_situs(const Situs& a, const Situs& b);
Situs coproduct_situs(const Situs& a, const Situs& b);
Situs shift_situs(const Situs& s); // S[+1]; truncation drops by one
SitusMap shift_counit_map(const Situs& s);

// Antidiscrete situs on a given sset (the sSets -> sF embedding).
Situs antidiscrete_situs(const TruncatedSSet& x);

// X_diag: neighbourhoods contain the image of the vertices under the unique
// degeneracy map (the finest structure with antidiscrete vertices).
Situs diag_situs(const TruncatedSSet& x);

struct FiniteMetricSpace {
    std::vector<std::string> points;
    std::vector<std::vector<Rational>> dist;
    std::vector<Rational> grid; // strictly decreasing positive reals

    void validate() const; // metric axioms, grid shape
    int size() const { return (int)points.size(); }
};

struct FiniteTopSpace {
    std::vector<std::string> points;
    std::vector<Subset> opens;

    void validate() const;
    int size() const { return (int)points.size(); }
    bool is_open(const Subset& u) const;
    Subset min_open(int x) const; // smallest open set containing x
    static FiniteTopSpace discrete(const std::vector<std::string>& pts);
    static FiniteTopSpace antidiscrete(const std::vector<std::string>& pts);
    static FiniteTopSpace sierpinski(); // points {"0","1"}, open {1}
    bool operator==(const FiniteTopSpace& o) const;
};

// M_mi: representable sset, grade i at degree n = tuples pairwise within ε_i.
Situs embed_metric(const FiniteMetricSpace& m, int trunc);

// X_pa: degree 1 antidiscrete, degree 2 principal at ∪_x {x}×U_x^min,
// degree n >= 3 pulled back along consecutive-pair faces.
Situs embed_top(const FiniteTopSpace& x, int trunc);

// pa^{-1}. Points are the intersection of the degree-1 grades; opens are the
// sets U such that some degree-2 grade ε has: s in ε, both vertex faces
// points, s[1] in U implies s[2] in U.
FiniteTopSpace topologise(const Situs& s);

Situs embed_diag(const GradedFilter& f, const std::vector<std::string>& labels, int trunc);
Situs embed_cart(const GradedFilter& f, const std::vector<std::string>& labels, int trunc);
Situs embed_const(const GradedFilter& f, const std::vector<std::string>& labels, int trunc);

enum class SubdivisionVariant { Plain, Less, Greater };

// Subdivision filters: the degree-n grade with window m is the intersection,
// over all non-degenerate seeds, of the windowed faces of the seeds'
// extensions within the truncation; the chain runs over shrinking windows.
// horizon_limited reports that extensions were cut off at the truncation.
struct SubdivisionResult {
    Situs situs;
    bool horizon_limited = false;
};
SubdivisionResult subdivision_filter(const TruncatedSSet& x, SubdivisionVariant v);

// The interval object at grid scale: sset corepresented by the order, with
// the subdivision structure of the chosen variant.
SubdivisionResult interval_situs(const std::vector<std::string>& order, int trunc,
                                 SubdivisionVariant v = SubdivisionVariant::Plain);

// A ⋉ X: product sset; grades are cumulative intersections of the
// (alpha-grade, fibrewise-grade-choice) generator family.
Situs semidirect_product(const Situs& a, const Situs& x);

// Simplices admitting an ε/n-fine refinement for every grade ε and n <= budget.
// Refinements are drawn from actual simplices, the extension paths, and free
// vertex tuples when the sset is total on tuples.
std::vector<Subset> archimedean_simplices(const Situs& s, int refinement_budget);

bool is_symmetric(const Situs& s); // representable underlying sset only

// Filter-aware connected components of a situs: vertices merged along the
// vertex pairs of the finest degree-2 grade.
std::vector<int> situs_components(const Situs& s);

} // namespace situs

#endif
