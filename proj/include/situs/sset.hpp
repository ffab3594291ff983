#ifndef SITUS_SSET_HPP
#define SITUS_SSET_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "situs/base.hpp"

namespace situs {

// Non-decreasing map src_≤ -> dst_≤ on {0..src-1} -> {0..dst-1}.
struct MonotoneMap {
    int src = 1, dst = 1;
    std::vector<int> values;

    MonotoneMap() = default;
    MonotoneMap(int s, int d, std::vector<int> v);

    static MonotoneMap identity(int n);
    // In-Δ composition: this ∘ other, other: l -> src.
    MonotoneMap compose_after(const MonotoneMap& other) const;
    static std::vector<MonotoneMap> all(int src, int dst);
    // 1-based index tuple t (values in 1..dst) as a map |t| -> dst.
    static MonotoneMap from_tuple(const std::vector<int>& t_one_based, int dst);

    bool operator<(const MonotoneMap& o) const {
        if (src != o.src) return src < o.src;
        if (dst != o.dst) return dst < o.dst;
        return values < o.values;
    }
    bool operator==(const MonotoneMap& o) const {
        return src == o.src && dst == o.dst && values == o.values;
    }
    std::string key() const; // "src->dst:v0,v1,..."
    static MonotoneMap from_key(const std::string& k);
};

// Extensionally stored simplicial set on degrees 1..trunc (degree n = carrier
// of the linear order n_≤; dimension n-1). Action tables cover every monotone
// map between degrees within the truncation.
struct TruncatedSSet {
    int trunc = 0;
    std::vector<std::vector<std::string>> labels;      // labels[n-1]
    std::map<MonotoneMap, std::vector<int>> action;    // X(dst) -> X(src)

    int size(int degree) const { return (int)labels[degree - 1].size(); }
    const std::string& label(int degree, int x) const { return labels[degree - 1][x]; }
    int index_of(int degree, const std::string& l) const;

    const std::vector<int>& table(const MonotoneMap& u) const;
    int act(const MonotoneMap& u, int x) const { return table(u)[x]; }
    // Face by 1-based index tuple: x[t_1 <= ... <= t_m], x in X(degree).
    int face(int degree, int x, const std::vector<int>& tuple_one_based) const;
    std::vector<int> vertex_tuple(int degree, int x) const;

    // Functoriality on every composable pair within the truncation;
    // returns the offending pair's key on failure.
    std::optional<std::string> functoriality_failure() const;

    bool is_degenerate(int degree, int x) const;

    // True when simplices are determined by their vertex tuples and every
    // vertex tuple of a simplex resolves; lookup is built on demand.
    bool vertex_determined() const;
    // Simplex with the given vertex tuple, if any.
    std::optional<int> simplex_with_vertices(int degree, const std::vector<int>& verts) const;
    // True when in addition every vertex tuple at every degree is a simplex.
    bool total_on_tuples() const;

private:
    mutable std::vector<std::map<std::vector<int>, int>> lookup_; // built lazily
    mutable int lookup_state_ = 0;                                // 0 unknown, 1 yes, -1 no
    void build_lookup() const;
};

TruncatedSSet representable_sset(const std::vector<std::string>& points, int trunc);
// X(n) = monotone maps n_≤ -> (N+1)_≤.
TruncatedSSet standard_simplex(int n_dim, int trunc);
// Corepresented by a linear order with the given point labels.
TruncatedSSet corepresented_order(const std::vector<std::string>& order, int trunc);
TruncatedSSet product_sset(const TruncatedSSet& a, const TruncatedSSet& b);
TruncatedSSet coproduct_sset(const TruncatedSSet& a, const TruncatedSSet& b);

// X[+1](n) = X(n+1), action precomposed with the shift adding a new minimal
// element. Output truncation drops by one.
TruncatedSSet shift_plus1(const TruncatedSSet& x);
// Degree-wise tables of the counit X[+1] -> X (forget the added coordinate).
std::vector<std::vector<int>> shift_counit(const TruncatedSSet& x);

// Finest partition of X(1) merging the two vertex faces of every element of
// X(2). Returns block index per vertex, blocks numbered by first occurrence.
std::vector<int> connected_components(const TruncatedSSet& x);
int component_count(const TruncatedSSet& x);

// (X∘e)(n) = X(2n) with the edgewise-doubled action; output truncation
// floor(trunc/2), which must stay >= 1.
TruncatedSSet grayson_subdivide(const TruncatedSSet& x);

// Degree-wise maps of a simplicial map, source degree n -> target degree n.
using SSetMap = std::vector<std::vector<int>>;

bool sset_map_valid(const TruncatedSSet& a, const TruncatedSSet& b, const SSetMap& f);
// All simplicial maps a -> b in lexicographic order; guarded.
std::vector<SSetMap> enumerate_sset_maps(const TruncatedSSet& a, const TruncatedSSet& b,
                                         long long guard);

} // namespace situs

#endif
