#ifndef SITUS_SKOROKHOD_HPP
#define SITUS_SKOROKHOD_HPP

#include <optional>

#include "situs/situs.hpp"

namespace situs {

inline constexpr long long kHomsetGuard = 100000;

// All simplicial maps source -> target, with index lookup.
struct HomSet {
    const TruncatedSSet* source;
    const TruncatedSSet* target;
    std::vector<SSetMap> maps;

    static HomSet enumerate(const TruncatedSSet& src, const TruncatedSSet& dst,
                            long long guard = kHomsetGuard);
    int index_of(const SSetMap& f) const; // -1 if absent
};

// The εδ-Skorokhod neighbourhood of the hom-set: maps f such that some grade
// δ0 ⊆ X(n) has every x in δ0 extending to x' in δ with x = x'[1..n] and
// f(x'[N'-n+1..N']) in ε. Requires N' >= 2n > 0.
Subset skorokhod_neighbourhood(const HomSet& homs, const Situs& x, const Subset& delta, int big_n,
                               const Situs& y, const Subset& eps, int small_n);

// Inner Hom with Skorokhod grades: degree m carrier = Hom(X × Δ_{m-1}, Y),
// graded by the cumulative εδ-neighbourhood intersections aligned to the
// input chains.
// EarlyLate is the alternative filter of the implication form (an early
// window controlling the late window); experimental, excluded from the
// acceptance gate.
enum class MappingVariant { Skorokhod, EarlyLate };

struct MappingSpace {
    Situs situs;
    std::vector<HomSet> homs;            // homs[m-1] over (X × Δ_{m-1}) -> Y
    std::vector<TruncatedSSet> sources;  // the product ssets X × Δ_{m-1}
    TruncatedSSet x_sset, y_sset;
};
MappingSpace mapping_space(const Situs& x, const Situs& y, long long guard = kHomsetGuard,
                           MappingVariant variant = MappingVariant::Skorokhod);

// A monotone path on the k-grid into (N+1)_≤, stored by its jump coordinates
// 0 <= s_1 <= ... <= s_N <= 1 (multiples of 1/k). At a grid time t the path
// takes value v iff s_v <= t <= s_{v+1} (completed graph: a jump point
// carries every value between the adjacent plateaus).
struct GridPath {
    int n_dim = 0; // N
    int grid = 1;  // k
    std::vector<int> jumps; // s_j * k, non-decreasing, in 0..k

    GridPath() = default;
    GridPath(int n, int k, std::vector<int> jumps_times_k);
    static std::vector<GridPath> all(int n, int k);

    bool takes(int t, int v) const; // completed-graph relation, t in 0..k
    Rational jump(int j) const { return Rational(jumps[j], grid); }
};

// The Skorokhod pseudometric: least grid-quantized c such that every n-tuple
// evaluation of f matches one of g within c in every coordinate, for
// n <= N+1. Equals max_j |s_j(f) - s_j(g)|.
Rational skorokhod_distance(const GridPath& f, const GridPath& g);
// The same value by exhausting the displayed condition; the cross-check.
Rational skorokhod_distance_bruteforce(const GridPath& f, const GridPath& g);

// Points are the grid paths into (N+1)_≤, metric the Skorokhod distance, grid
// the descending chain 1, (k-1)/k, ..., 1/k.
FiniteMetricSpace realize_simplex(int n_dim, int grid);

// (f,g) a degree-2 element of the mapping space; Archimedean within budget.
bool skorokhod_homotopic(const MappingSpace& ms, int pair_element, int budget);

// The degree-2 mapping-space element spanned by two degree-1 elements, when
// the target is vertex-determined.
std::optional<int> mapping_space_pair(const MappingSpace& ms, int f_elem, int g_elem);

} // namespace situs

#endif
