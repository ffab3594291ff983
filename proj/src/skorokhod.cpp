#include "situs/skorokhod.hpp"

#include <algorithm>
#include <map>

namespace situs {

HomSet HomSet::enumerate(const TruncatedSSet& src, const TruncatedSSet& dst, long long guard) {
    HomSet h;
    h.source = &src;
    h.target = &dst;
    h.maps = enumerate_sset_maps(src, dst, guard);
    return h;
}

int HomSet::index_of(const SSetMap& f) const {
    for (size_t i = 0; i < maps.size(); ++i)
        if (maps[i] == f) return (int)i;
    return -1;
}

Subset skorokhod_neighbourhood(const HomSet& homs, const Situs& x, const Subset& delta, int big_n,
                               const Situs& y, const Subset& eps, int small_n) {
    if (!(big_n >= 2 * small_n && small_n > 0))
        throw DomainError("skorokhod neighbourhood needs N' >= 2n > 0");
    if (big_n > x.trunc() || small_n > y.trunc())
        throw DegreeBudgetError("skorokhod window beyond truncation");
    std::vector<int> front_t(small_n), tail_t(small_n);
    for (int i = 0; i < small_n; ++i) {
        front_t[i] = i + 1;
        tail_t[i] = big_n - small_n + i + 1;
    }
    const auto& front = x.sset.table(MonotoneMap::from_tuple(front_t, big_n));
    const auto& tail = x.sset.table(MonotoneMap::from_tuple(tail_t, big_n));
    auto delta_elems = delta.elements();

    Subset out((int)homs.maps.size());
    for (size_t fi = 0; fi < homs.maps.size(); ++fi) {
        const auto& f = homs.maps[fi];
        bool member = false;
        for (const auto& delta0 : x.filter(small_n).grades) {
            bool all = true;
            for (int x0 : delta0.elements()) {
                bool has = false;
                for (int xe : delta_elems)
                    if (front[xe] == x0 && eps.contains(f[small_n - 1][tail[xe]])) {
                        has = true;
                        break;
                    }
                if (!has) { all = false; break; }
            }
            if (all) { member = true; break; }
        }
        if (member) out.add((int)fi);
    }
    return out;
}

namespace {

// Early-window-controls-late-window grades: f is small when smallness over
// the leading window forces smallness over the trailing one.
Subset early_late_neighbourhood(const HomSet& homs, const Situs& src, int space_degree, int m,
                                const Subset& delta, const Subset& eps) {
    int n1 = space_degree; // windows are m-faces of degree-n1 source elements
    if (m > n1) return Subset((int)homs.maps.size(), true);
    std::vector<int> t(m), s(m);
    for (int i = 0; i < m; ++i) {
        t[i] = i + 1;
        s[i] = n1 - m + i + 1;
    }
    const auto& early = src.sset.table(MonotoneMap::from_tuple(t, n1));
    const auto& late = src.sset.table(MonotoneMap::from_tuple(s, n1));
    Subset out((int)homs.maps.size());
    for (size_t fi = 0; fi < homs.maps.size(); ++fi) {
        const auto& f = homs.maps[fi];
        auto window_small = [&](const std::vector<int>& face) {
            for (int e = 0; e < src.sset.size(n1); ++e) {
                int w = face[e];
                if (delta.contains(w) && !eps.contains(f[m - 1][w])) return false;
            }
            return true;
        };
        if (!window_small(early) || window_small(late)) out.add((int)fi);
    }
    return out;
}

} // namespace

MappingSpace mapping_space(const Situs& x, const Situs& y, long long guard, MappingVariant variant) {
    if (x.trunc() != y.trunc()) throw DomainError("mapping space needs matching truncations");
    int d = x.trunc();
    MappingSpace ms;
    ms.x_sset = x.sset;
    ms.y_sset = y.sset;

    std::vector<Situs> srcs; // X × Δ_{m-1} with the product filter
    std::vector<std::vector<MonotoneMap>> simplex_simps; // Δ_{m-1}(k) as monotone maps k -> m
    for (int m = 1; m <= d; ++m) {
        Situs delta = antidiscrete_situs(standard_simplex(m - 1, d));
        Situs src = product_situs(x, delta);
        ms.sources.push_back(src.sset);
        ms.homs.push_back(HomSet::enumerate(src.sset, y.sset, guard));
        srcs.push_back(std::move(src));
    }

    Situs& s = ms.situs;
    s.sem = x.sem;
    s.sset.trunc = d;
    for (int m = 1; m <= d; ++m) {
        std::vector<std::string> ls;
        for (size_t i = 0; i < ms.homs[m - 1].maps.size(); ++i) ls.push_back("h" + std::to_string(i));
        s.sset.labels.push_back(ls);
    }

    // Action: precompose the Δ factor.
    for (int m2 = 1; m2 <= d; ++m2)
        for (int m = 1; m <= d; ++m)
            for (const auto& u : MonotoneMap::all(m2, m)) {
                std::vector<int> t(ms.homs[m - 1].maps.size());
                // index map on the Δ factors per degree k: θ' -> u ∘ θ'
                std::vector<std::vector<int>> delta_reindex(d);
                for (int k = 1; k <= d; ++k) {
                    auto small_list = MonotoneMap::all(k, m2);
                    auto big_list = MonotoneMap::all(k, m);
                    delta_reindex[k - 1].resize(small_list.size());
                    for (size_t ti = 0; ti < small_list.size(); ++ti) {
                        MonotoneMap composed = u.compose_after(small_list[ti]);
                        auto it = std::lower_bound(big_list.begin(), big_list.end(), composed);
                        delta_reindex[k - 1][ti] = (int)(it - big_list.begin());
                    }
                }
                for (size_t fi = 0; fi < ms.homs[m - 1].maps.size(); ++fi) {
                    const auto& f = ms.homs[m - 1].maps[fi];
                    SSetMap fprime(d);
                    for (int k = 1; k <= d; ++k) {
                        int nd_small = (int)delta_reindex[k - 1].size();
                        fprime[k - 1].resize(x.sset.size(k) * nd_small);
                        for (int xi = 0; xi < x.sset.size(k); ++xi)
                            for (int ti = 0; ti < nd_small; ++ti) {
                                int big = xi * (int)MonotoneMap::all(k, m).size() +
                                          delta_reindex[k - 1][ti];
                                fprime[k - 1][xi * nd_small + ti] = f[k - 1][big];
                            }
                    }
                    int idx = ms.homs[m2 - 1].index_of(fprime);
                    if (idx < 0) throw DomainError("internal: mapping space action left the hom-set");
                    t[fi] = idx;
                }
                s.sset.action[u] = t;
            }

    // Grades aligned to the input chains.
    for (int m = 1; m <= d; ++m) {
        int sz = (int)ms.homs[m - 1].maps.size();
        int levels = 1;
        for (int n = 1; n <= d; ++n) {
            levels = std::max(levels, srcs[m - 1].filter(n).chain_length());
            levels = std::max(levels, y.filter(n).chain_length());
        }
        std::vector<Subset> grades;
        Subset acc(sz, true);
        for (int l = 0; l < levels; ++l) {
            if (variant == MappingVariant::Skorokhod) {
                for (int n = 1; 2 * n <= d; ++n)
                    for (int big = 2 * n; big <= d; ++big) {
                        const Subset& delta = srcs[m - 1].filter(big).grade(l);
                        const Subset& eps = y.filter(n).grade(l);
                        acc = acc.intersect(skorokhod_neighbourhood(ms.homs[m - 1], srcs[m - 1],
                                                                    delta, big, y, eps, n));
                    }
            } else {
                for (int win = 1; win <= d; ++win)
                    for (int n1 = win; n1 <= d; ++n1) {
                        const Subset& delta = srcs[m - 1].filter(win).grade(l);
                        const Subset& eps = y.filter(win).grade(l);
                        acc = acc.intersect(early_late_neighbourhood(ms.homs[m - 1], srcs[m - 1],
                                                                     n1, win, delta, eps));
                    }
            }
            grades.push_back(acc);
        }
        s.filters.emplace_back(sz, grades);
    }
    return ms;
}

GridPath::GridPath(int n, int k, std::vector<int> j) : n_dim(n), grid(k), jumps(std::move(j)) {
    if (k < 1) throw DomainError("grid size must be >= 1");
    if ((int)jumps.size() != n) throw DomainError("grid path needs one jump per dimension");
    for (int i = 0; i < n; ++i) {
        if (jumps[i] < 0 || jumps[i] > k) throw DomainError("jump outside the grid");
        if (i && jumps[i] < jumps[i - 1]) throw DomainError("jumps not non-decreasing");
    }
}

std::vector<GridPath> GridPath::all(int n, int k) {
    std::vector<GridPath> out;
    std::vector<int> cur(n, 0);
    while (true) {
        out.emplace_back(n, k, cur);
        int i = n - 1;
        while (i >= 0 && cur[i] == k) --i;
        if (i < 0) break;
        int nv = cur[i] + 1;
        for (int j = i; j < n; ++j) cur[j] = nv;
    }
    return out;
}

bool GridPath::takes(int t, int v) const {
    int lo = v == 0 ? 0 : jumps[v - 1];
    int hi = v == n_dim ? grid : jumps[v];
    return lo <= t && t <= hi;
}

Rational skorokhod_distance(const GridPath& f, const GridPath& g) {
    if (f.n_dim != g.n_dim || f.grid != g.grid) throw DomainError("grid path shape mismatch");
    int worst = 0;
    for (int j = 0; j < f.n_dim; ++j) worst = std::max(worst, std::abs(f.jumps[j] - g.jumps[j]));
    return Rational(worst, f.grid);
}

namespace {

// Monotone selection t' with g taking v_i at t'_i and |t_i - t'_i| <= c.
bool matchable(const GridPath& g, const std::vector<int>& t, const std::vector<int>& v, int c) {
    int cur = 0;
    for (size_t i = 0; i < t.size(); ++i) {
        int lo = v[i] == 0 ? 0 : g.jumps[v[i] - 1];
        int hi = v[i] == g.n_dim ? g.grid : g.jumps[v[i]];
        lo = std::max(lo, t[i] - c);
        hi = std::min(hi, t[i] + c);
        cur = std::max(cur, lo);
        if (cur > hi) return false;
    }
    return true;
}

bool condition_holds(const GridPath& f, const GridPath& g, int c) {
    int k = f.grid, nmax = f.n_dim + 1;
    std::vector<int> t, v;
    // iterate monotone t-vectors and admissible monotone value vectors
    std::function<bool(int)> values = [&](int depth) -> bool {
        if (depth == (int)t.size()) return matchable(g, t, v, c);
        int lo = depth == 0 ? 0 : v[depth - 1];
        for (int val = lo; val <= f.n_dim; ++val) {
            if (!f.takes(t[depth], val)) continue;
            v.push_back(val);
            bool ok = values(depth + 1);
            v.pop_back();
            if (!ok) return false;
        }
        return true;
    };
    std::function<bool(int, int)> times = [&](int n, int depth) -> bool {
        if (depth == n) return values(0);
        int lo = depth == 0 ? 0 : t[depth - 1];
        for (int tv = lo; tv <= k; ++tv) {
            t.push_back(tv);
            bool ok = times(n, depth + 1);
            t.pop_back();
            if (!ok) return false;
        }
        return true;
    };
    for (int n = 1; n <= nmax; ++n)
        if (!times(n, 0)) return false;
    return true;
}

} // namespace

Rational skorokhod_distance_bruteforce(const GridPath& f, const GridPath& g) {
    if (f.n_dim != g.n_dim || f.grid != g.grid) throw DomainError("grid path shape mismatch");
    for (int c = 0; c <= f.grid; ++c)
        if (condition_holds(f, g, c)) return Rational(c, f.grid);
    throw DomainError("internal: skorokhod condition unsatisfiable at full width");
}

FiniteMetricSpace realize_simplex(int n_dim, int grid) {
    if (n_dim < 0) throw DomainError("simplex dimension must be >= 0");
    auto paths = GridPath::all(n_dim, grid);
    FiniteMetricSpace m;
    for (const auto& p : paths) {
        std::string l;
        for (int j = 0; j < n_dim; ++j) l += (j ? "," : "") + Rational(p.jumps[j], grid).str();
        if (n_dim == 0) l = "const";
        m.points.push_back(l);
    }
    int np = (int)paths.size();
    m.dist.assign(np, std::vector<Rational>(np));
    for (int i = 0; i < np; ++i)
        for (int j = 0; j < np; ++j) m.dist[i][j] = skorokhod_distance(paths[i], paths[j]);
    for (int c = grid; c >= 1; --c) m.grid.push_back(Rational(c, grid));
    return m;
}

std::optional<int> mapping_space_pair(const MappingSpace& ms, int f_elem, int g_elem) {
    if (ms.situs.trunc() < 2) throw DegreeBudgetError("pair needs truncation >= 2");
    const SSetMap &f = ms.homs[0].maps[f_elem], &g = ms.homs[0].maps[g_elem];
    const TruncatedSSet& x = ms.x_sset;
    const TruncatedSSet& y = ms.y_sset;
    int d = x.trunc;
    // Degree-1 hom-set maps are over X × Δ_0 ≅ X; build the pairing on X × Δ_1.
    SSetMap pair(d);
    for (int k = 1; k <= d; ++k) {
        auto thetas = MonotoneMap::all(k, 2);
        int nt = (int)thetas.size();
        pair[k - 1].assign(x.size(k) * nt, -1);
        for (int xi = 0; xi < x.size(k); ++xi)
            for (int ti = 0; ti < nt; ++ti) {
                std::vector<int> verts(k);
                for (int i = 0; i < k; ++i) {
                    const SSetMap& h = thetas[ti].values[i] == 0 ? f : g;
                    // h at degree k on (x, *): Δ_0(k) is a single element
                    int himg = h[k - 1][xi];
                    verts[i] = y.vertex_tuple(k, himg)[i];
                }
                auto simplex = y.simplex_with_vertices(k, verts);
                if (!simplex) return std::nullopt;
                pair[k - 1][xi * nt + ti] = *simplex;
            }
    }
    if (!sset_map_valid(ms.sources[1], ms.y_sset, pair)) return std::nullopt;
    int idx = ms.homs[1].index_of(pair);
    return idx < 0 ? std::nullopt : std::optional<int>(idx);
}

bool skorokhod_homotopic(const MappingSpace& ms, int pair_element, int budget) {
    auto arch = archimedean_simplices(ms.situs, budget);
    return arch[1].contains(pair_element);
}

} // namespace situs
