#ifndef SITUS_ANALYSIS_HPP
#define SITUS_ANALYSIS_HPP

#include <optional>

#include "situs/situs.hpp"

namespace situs {

enum class IndexMode { Const, Diag, Cart };

// Finite truncation of the cofinite-tail filter on {0..N}. The chain keeps
// the tails with at least two indices; the singleton tail is a horizon
// artifact under which every sequence would converge to its last element.
struct SequenceTower {
    int horizon; // N >= 1
    IndexMode flavor;

    GradedFilter tail_filter() const;
    std::vector<std::string> index_labels() const;
    Situs to_situs(int trunc) const;
};

// a: indices into m.points, length horizon+1.
bool is_cauchy(const std::vector<int>& a, const FiniteMetricSpace& m, int trunc = 3);

struct LimitResult {
    std::vector<int> all;            // every qualifying point, in carrier order
    std::optional<int> representative;
};
// Points a∞ for which (i_1..i_n) -> (a∞, a_{i_1}..a_{i_n}) is a morphism
// into M_mi[+1].
LimitResult find_limit(const std::vector<int>& a, const FiniteMetricSpace& m, int trunc = 3);

struct CompletenessReport {
    bool ok = true;
    int first_failing = -1; // index into the supplied list
};
// Every supplied Cauchy sequence admits a limit factorization.
CompletenessReport check_completeness_lift(const FiniteMetricSpace& m,
                                           const std::vector<std::vector<int>>& seqs, int trunc = 3);

// f_i as tables source(1) -> target(1), indices 0..N.
struct FunctionFamily {
    std::vector<std::vector<int>> maps;
    int horizon() const { return (int)maps.size() - 1; }
};

// Whether (source × indexed tower) -> target, (i⃗,x⃗) -> (f_{i_j}(x_j))_j, is a
// situs morphism. Source pa/mi is chosen by the caller via source_situs.
bool check_family(const FunctionFamily& fam, const Situs& source_situs, const Situs& target_situs,
                  IndexMode mode);

// The lifted square: (source[+1] × tower_diag) -> target[+1] with top row
// (i⃗, x_0..x_n) -> (f∞(x_0), f_{i_1}(x_1)..). source_unshifted must be built
// at trunc+1; target_unshifted likewise.
bool check_uniform_convergence(const FunctionFamily& fam, const std::vector<int>& f_inf,
                               const Situs& source_unshifted, const Situs& target_unshifted);

// Searches the family members as limit candidates.
std::optional<int> find_uniform_limit(const FunctionFamily& fam, const Situs& source_unshifted,
                                      const Situs& target_unshifted);

// Topology generated by the grid balls; the pa-side surrogate of a finite
// metric space.
FiniteTopSpace metric_topology(const FiniteMetricSpace& m);

struct ArzelaAscoliReport {
    bool compact_x = false;            // every principal ultrafilter converges in X_mi
    bool complete_m = false;           // cart towers of principal ultrafilters lift in M_mi
    std::vector<int> pointwise_witness; // per index point u, a family member g or -1
    std::vector<int> uniform_witness;   // per index point u, an f∞ from the menu or -1
    bool equicontinuous = false;            // pa × diag
    bool uniformly_equicontinuous = false;  // mi × diag
    bool uniformly_cauchy = false;          // mi × cart
    bool implication_i = false;   // some ultrafilter square lifts uniformly
    bool implication_ii = false;  // pointwise precompact + equicontinuous
    bool implication_iii = false; // pointwise precompact + uniformly equicontinuous
};

ArzelaAscoliReport arzela_ascoli_report(const FiniteMetricSpace& x, const FiniteMetricSpace& m,
                                        const FunctionFamily& fam, int trunc = 3);

} // namespace situs

#endif
