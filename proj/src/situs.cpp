#include "situs/situs.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace situs {

ValidateResult validate_situs(const Situs& s) {
    ValidateResult r;
    if ((int)s.filters.size() != s.trunc()) {
        r.ok = false;
        r.witness = "filter count does not match truncation";
        return r;
    }
    for (int n = 1; n <= s.trunc(); ++n)
        if (s.filter(n).carrier_size != s.sset.size(n)) {
            r.ok = false;
            r.witness = "filter carrier mismatch at degree " + std::to_string(n);
            return r;
        }
    if (auto fail = s.sset.functoriality_failure()) {
        r.ok = false;
        r.witness = *fail;
        return r;
    }
    for (int n = 1; n <= s.trunc(); ++n)
        for (int m = 1; m <= s.trunc(); ++m)
            for (const auto& u : MonotoneMap::all(m, n)) {
                auto w = check_continuous(s.sset.table(u), s.filter(n), s.filter(m), s.sem);
                if (!w.ok) {
                    r.ok = false;
                    r.witness = "structural map " + u.key() + " not continuous at grade " +
                                std::to_string(w.failing_grade);
                    return r;
                }
            }
    return r;
}

MorphismCheck check_morphism(const SitusMap& f, const Situs& src, const Situs& dst) {
    MorphismCheck r;
    if (src.trunc() != dst.trunc()) throw DomainError("morphism check needs matching truncations");
    if (!sset_map_valid(src.sset, dst.sset, f.deg)) {
        r.witness = "does not commute with the simplicial action";
        return r;
    }
    for (int n = 1; n <= src.trunc(); ++n) {
        auto w = check_continuous(f.deg[n - 1], src.filter(n), dst.filter(n), src.sem);
        if (!w.ok) {
            r.witness = "not continuous at degree " + std::to_string(n) + ", grade " +
                        std::to_string(w.failing_grade);
            return r;
        }
    }
    r.ok = true;
    return r;
}

Situs product_situs(const Situs& a, const Situs& b) {
    Situs p;
    p.sset = product_sset(a.sset, b.sset);
    p.sem = a.sem;
    for (int n = 1; n <= p.trunc(); ++n)
        p.filters.push_back(product_filter(a.filter(n), b.filter(n)));
    return p;
}

Situs coproduct_situs(const Situs& a, const Situs& b) {
    Situs p;
    p.sset = coproduct_sset(a.sset, b.sset);
    p.sem = a.sem;
    for (int n = 1; n <= p.trunc(); ++n)
        p.filters.push_back(coproduct_filter(a.filter(n), b.filter(n)));
    return p;
}

Situs shift_situs(const Situs& s) {
    Situs r;
    r.sset = shift_plus1(s.sset);
    r.sem = s.sem;
    for (int n = 1; n <= r.trunc(); ++n) r.filters.push_back(s.filter(n + 1));
    return r;
}

SitusMap shift_counit_map(const Situs& s) {
    return SitusMap{shift_counit(s.sset)};
}

Situs antidiscrete_situs(const TruncatedSSet& x) {
    Situs s;
    s.sset = x;
    for (int n = 1; n <= x.trunc; ++n) s.filters.push_back(GradedFilter::antidiscrete(x.size(n)));
    return s;
}

Situs diag_situs(const TruncatedSSet& x) {
    Situs s;
    s.sset = x;
    for (int n = 1; n <= x.trunc; ++n) {
        Subset diag(x.size(n));
        std::vector<int> collapse(n, 0); // n_≤ -> 1_≤
        const auto& degeneracy = x.table(MonotoneMap(n, 1, collapse)); // X(1) -> X(n)
        for (int v = 0; v < x.size(1); ++v) diag.add(degeneracy[v]);
        s.filters.push_back(GradedFilter::principal(x.size(n), diag));
    }
    return s;
}

void FiniteMetricSpace::validate() const {
    int n = size();
    if ((int)dist.size() != n) throw DomainError("distance table shape");
    for (int i = 0; i < n; ++i) {
        if ((int)dist[i].size() != n) throw DomainError("distance table shape");
        if (dist[i][i] != Rational(0)) throw DomainError("nonzero diagonal in metric");
        for (int j = 0; j < n; ++j) {
            if (dist[i][j] != dist[j][i]) throw DomainError("metric not symmetric");
            if (i != j && !(Rational(0) < dist[i][j])) throw DomainError("distinct points at distance 0");
            for (int k = 0; k < n; ++k)
                if (dist[i][k] > dist[i][j] + dist[j][k]) throw DomainError("triangle inequality fails");
        }
    }
    if (grid.empty()) throw DomainError("empty grid");
    for (size_t i = 0; i < grid.size(); ++i) {
        if (!(Rational(0) < grid[i])) throw DomainError("grid values must be positive");
        if (i && !(grid[i] < grid[i - 1])) throw DomainError("grid not strictly decreasing");
    }
}

void FiniteTopSpace::validate() const {
    int n = size();
    Subset empty(n), full(n, true);
    if (std::find(opens.begin(), opens.end(), empty) == opens.end())
        throw DomainError("topology misses the empty set");
    if (std::find(opens.begin(), opens.end(), full) == opens.end())
        throw DomainError("topology misses the whole set");
    for (const auto& u : opens)
        for (const auto& v : opens) {
            if (!is_open(u.unite(v))) throw DomainError("opens not closed under union");
            if (!is_open(u.intersect(v))) throw DomainError("opens not closed under intersection");
        }
}

bool FiniteTopSpace::is_open(const Subset& u) const {
    return std::find(opens.begin(), opens.end(), u) != opens.end();
}

Subset FiniteTopSpace::min_open(int x) const {
    Subset m(size(), true);
    for (const auto& u : opens)
        if (u.contains(x)) m = m.intersect(u);
    return m;
}

FiniteTopSpace FiniteTopSpace::discrete(const std::vector<std::string>& pts) {
    FiniteTopSpace t;
    t.points = pts;
    int n = (int)pts.size();
    for (uint32_t mask = 0; mask < (1u << n); ++mask) {
        Subset s(n);
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1) s.add(i);
        t.opens.push_back(s);
    }
    return t;
}

FiniteTopSpace FiniteTopSpace::antidiscrete(const std::vector<std::string>& pts) {
    FiniteTopSpace t;
    t.points = pts;
    t.opens.push_back(Subset((int)pts.size()));
    t.opens.push_back(Subset((int)pts.size(), true));
    return t;
}

FiniteTopSpace FiniteTopSpace::sierpinski() {
    FiniteTopSpace t;
    t.points = {"0", "1"};
    Subset e(2), one(2), full(2, true);
    one.add(1);
    t.opens = {e, one, full};
    return t;
}

bool FiniteTopSpace::operator==(const FiniteTopSpace& o) const {
    if (points != o.points) return false;
    auto key = [](const FiniteTopSpace& t) {
        std::set<std::vector<int>> k;
        for (const auto& u : t.opens) k.insert(u.elements());
        return k;
    };
    return key(*this) == key(o);
}

namespace {

std::vector<int> decode_tuple(int idx, int k, int n) {
    std::vector<int> t(n);
    for (int i = n - 1; i >= 0; --i) {
        t[i] = idx % k;
        idx /= k;
    }
    return t;
}

} // namespace

Situs embed_metric(const FiniteMetricSpace& m, int trunc) {
    m.validate();
    Situs s;
    s.sset = representable_sset(m.points, trunc);
    int k = m.size();
    for (int n = 1; n <= trunc; ++n) {
        int sz = s.sset.size(n);
        std::vector<Subset> grades;
        for (const auto& eps : m.grid) {
            Subset g(sz);
            for (int idx = 0; idx < sz; ++idx) {
                auto t = decode_tuple(idx, k, n);
                bool small = true;
                for (int i = 0; i < n && small; ++i)
                    for (int j = i + 1; j < n && small; ++j)
                        if (!(m.dist[t[i]][t[j]] < eps)) small = false;
                if (small) g.add(idx);
            }
            grades.push_back(g);
        }
        s.filters.emplace_back(sz, grades);
    }
    return s;
}

Situs embed_top(const FiniteTopSpace& x, int trunc) {
    x.validate();
    Situs s;
    s.sset = representable_sset(x.points, trunc);
    int k = x.size();
    std::vector<Subset> mins;
    for (int i = 0; i < k; ++i) mins.push_back(x.min_open(i));
    for (int n = 1; n <= trunc; ++n) {
        int sz = s.sset.size(n);
        if (n == 1) {
            s.filters.push_back(GradedFilter::antidiscrete(sz));
            continue;
        }
        Subset e(sz);
        for (int idx = 0; idx < sz; ++idx) {
            auto t = decode_tuple(idx, k, n);
            bool chain = true;
            for (int i = 0; i + 1 < n && chain; ++i)
                if (!mins[t[i]].contains(t[i + 1])) chain = false;
            if (chain) e.add(idx);
        }
        s.filters.push_back(GradedFilter::principal(sz, e));
    }
    return s;
}

FiniteTopSpace topologise(const Situs& s) {
    const Subset& pts = s.filter(1).minimal();
    auto pt_list = pts.elements();
    int np = (int)pt_list.size();
    if (np > 20) throw SizeError("topologise: too many points for subset enumeration", np);
    std::vector<int> back(s.sset.size(1), -1);
    for (int i = 0; i < np; ++i) back[pt_list[i]] = i;

    FiniteTopSpace t;
    for (int p : pt_list) t.points.push_back(s.sset.label(1, p));

    std::set<std::vector<int>> open_keys;
    std::vector<Subset> found;
    for (uint32_t mask = 0; mask < (1u << np); ++mask) {
        Subset u_pts(s.sset.size(1));
        for (int i = 0; i < np; ++i)
            if (mask >> i & 1) u_pts.add(pt_list[i]);
        bool ok = false;
        if (s.trunc() >= 2) {
            for (const auto& grade : s.filter(2).grades) {
                bool grade_ok = true;
                for (int e : grade.elements()) {
                    int a = s.sset.face(2, e, {1}), b = s.sset.face(2, e, {2});
                    if (!pts.contains(a) || !pts.contains(b)) continue;
                    if (u_pts.contains(a) && !u_pts.contains(b)) { grade_ok = false; break; }
                }
                if (grade_ok) { ok = true; break; }
            }
        } else {
            ok = true;
        }
        if (ok) {
            Subset u(np);
            for (int i = 0; i < np; ++i)
                if (mask >> i & 1) u.add(i);
            found.push_back(u);
        }
    }
    // Close the generating family under union and intersection.
    for (auto& u : found) open_keys.insert(u.elements());
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<Subset> cur(found);
        for (const auto& a : cur)
            for (const auto& b : cur)
                for (const Subset& c : {a.unite(b), a.intersect(b)})
                    if (open_keys.insert(c.elements()).second) {
                        found.push_back(c);
                        grew = true;
                    }
    }
    for (const auto& key : open_keys) {
        Subset u(np);
        for (int i : key) u.add(i);
        t.opens.push_back(u);
    }
    return t;
}

namespace {

Situs diag_like_situs(const GradedFilter& f, const std::vector<std::string>& labels, int trunc,
                      bool cart) {
    if ((int)labels.size() != f.carrier_size) throw DomainError("labels do not match carrier");
    Situs s;
    s.sset = representable_sset(labels, trunc);
    int k = f.carrier_size;
    for (int n = 1; n <= trunc; ++n) {
        int sz = s.sset.size(n);
        std::vector<Subset> grades;
        for (const auto& b : f.grades) {
            Subset g(sz);
            if (cart) {
                for (int idx = 0; idx < sz; ++idx) {
                    auto t = decode_tuple(idx, k, n);
                    bool in = true;
                    for (int v : t)
                        if (!b.contains(v)) { in = false; break; }
                    if (in) g.add(idx);
                }
            } else {
                for (int v = 0; v < k; ++v)
                    if (b.contains(v)) {
                        int idx = 0;
                        for (int i = 0; i < n; ++i) idx = idx * k + v;
                        g.add(idx);
                    }
            }
            grades.push_back(g);
        }
        s.filters.emplace_back(sz, grades);
    }
    return s;
}

} // namespace

Situs embed_diag(const GradedFilter& f, const std::vector<std::string>& labels, int trunc) {
    return diag_like_situs(f, labels, trunc, false);
}

Situs embed_cart(const GradedFilter& f, const std::vector<std::string>& labels, int trunc) {
    return diag_like_situs(f, labels, trunc, true);
}

Situs embed_const(const GradedFilter& f, const std::vector<std::string>& labels, int trunc) {
    if ((int)labels.size() != f.carrier_size) throw DomainError("labels do not match carrier");
    Situs s;
    s.sset.trunc = trunc;
    for (int n = 1; n <= trunc; ++n) s.sset.labels.push_back(labels);
    for (int m = 1; m <= trunc; ++m)
        for (int n = 1; n <= trunc; ++n)
            for (const auto& u : MonotoneMap::all(m, n)) {
                std::vector<int> id(f.carrier_size);
                std::iota(id.begin(), id.end(), 0);
                s.sset.action[u] = id;
            }
    for (int n = 1; n <= trunc; ++n) s.filters.push_back(f);
    return s;
}

namespace {

bool window_ok(SubdivisionVariant v, const std::vector<int>& t, int m, int n_ext) {
    switch (v) {
        case SubdivisionVariant::Plain: return t.back() <= t.front() + m;
        case SubdivisionVariant::Less: return t.back() <= m;
        case SubdivisionVariant::Greater: return t.front() > n_ext - m;
    }
    return false;
}

} // namespace

SubdivisionResult subdivision_filter(const TruncatedSSet& x, SubdivisionVariant v) {
    int d = x.trunc;
    // Non-degenerate seeds with one degree of extension headroom; degenerate
    // or top-degree seeds lose their extensions to the truncation and would
    // empty the grades.
    std::vector<std::pair<int, int>> seeds;
    for (int k = 1; k <= std::max(1, d - 1); ++k)
        for (int s = 0; s < x.size(k); ++s)
            if (!x.is_degenerate(k, s)) seeds.emplace_back(k, s);

    // extends[seed][N] = extensions of the seed at degree N.
    std::vector<std::vector<std::vector<int>>> extends(seeds.size());
    for (size_t si = 0; si < seeds.size(); ++si) {
        auto [k, sx] = seeds[si];
        extends[si].assign(d + 1, {});
        for (int n_ext = k; n_ext <= d; ++n_ext)
            for (int e = 0; e < x.size(n_ext); ++e) {
                bool is_ext = false;
                for (const auto& u : MonotoneMap::all(k, n_ext))
                    if (x.act(u, e) == sx) { is_ext = true; break; }
                if (is_ext) extends[si][n_ext].push_back(e);
            }
    }

    Situs s;
    s.sset = x;
    for (int n = 1; n <= d; ++n) {
        int sz = x.size(n);
        int m_lo = v == SubdivisionVariant::Plain ? std::max(1, n - 1) : n;
        std::vector<Subset> grades;
        for (int m = d; m >= m_lo; --m) {
            Subset g(sz, true);
            for (size_t si = 0; si < seeds.size(); ++si) {
                Subset w(sz);
                for (int n_ext = 1; n_ext <= d; ++n_ext)
                    for (int e : extends[si][n_ext])
                        for (const auto& u : MonotoneMap::all(n, n_ext)) {
                            std::vector<int> t(u.values);
                            for (int& ti : t) ++ti; // 1-based window arithmetic
                            if (window_ok(v, t, m, n_ext)) w.add(x.act(u, e));
                        }
                g = g.intersect(w);
            }
            grades.push_back(g);
        }
        if (grades.empty()) grades.push_back(Subset(sz, true));
        s.filters.emplace_back(sz, grades);
    }

    SubdivisionResult r;
    r.situs = std::move(s);
    for (int sI = 0; sI < x.size(d); ++sI)
        if (!x.is_degenerate(d, sI)) { r.horizon_limited = true; break; }
    return r;
}

SubdivisionResult interval_situs(const std::vector<std::string>& order, int trunc,
                                 SubdivisionVariant v) {
    if (order.size() < 2) throw DomainError("interval needs a linear order with >= 2 points");
    return subdivision_filter(corepresented_order(order, trunc), v);
}

Situs semidirect_product(const Situs& a, const Situs& x) {
    if (a.trunc() != x.trunc()) throw DomainError("semidirect product needs matching truncations");
    Situs p;
    p.sset = product_sset(a.sset, x.sset);
    p.sem = a.sem;
    for (int n = 1; n <= p.trunc(); ++n) {
        const GradedFilter &fa = a.filter(n), &fx = x.filter(n);
        int xs = fx.carrier_size;
        int sz = fa.carrier_size * xs;
        long long visited = 0;
        std::vector<Subset> grades;
        Subset acc(sz, true);
        for (int ai = 0; ai < fa.chain_length(); ++ai) {
            auto alpha = fa.grades[ai].elements();
            // enumerate choice functions alpha -> grade indices, lexicographic
            std::vector<int> choice(alpha.size(), 0);
            while (true) {
                if (++visited > 10000) throw SizeError("semidirect grade menu too large", visited);
                Subset u(sz);
                for (size_t t = 0; t < alpha.size(); ++t) {
                    const Subset& gx = fx.grades[choice[t]];
                    for (int j = 0; j < xs; ++j)
                        if (gx.contains(j)) u.add(alpha[t] * xs + j);
                }
                acc = acc.intersect(u);
                if (grades.empty() || grades.back() != acc) grades.push_back(acc);
                int t = (int)alpha.size() - 1;
                while (t >= 0 && choice[t] == fx.chain_length() - 1) --t;
                if (t < 0) break;
                choice[t]++;
                for (size_t j = t + 1; j < choice.size(); ++j) choice[j] = 0;
            }
        }
        if (grades.empty()) grades.push_back(Subset(sz, true));
        p.filters.emplace_back(sz, grades);
    }
    return p;
}

namespace {

struct Refinement {
    int length;
    bool actual;                // actual simplex vs vertex sequence
    int degree = 0, index = 0;  // when actual
    std::vector<int> verts;     // when virtual
};

// Resolve the face of a refinement along a 1-based index tuple; nullopt when
// a virtual face does not exist in the sset.
std::optional<int> refinement_face(const TruncatedSSet& x, const Refinement& r,
                                   const std::vector<int>& tuple) {
    if (r.actual) return x.face(r.degree, r.index, tuple);
    std::vector<int> vs;
    vs.reserve(tuple.size());
    for (int t : tuple) vs.push_back(r.verts[t - 1]);
    return x.simplex_with_vertices((int)tuple.size(), vs);
}

void all_index_tuples(int len, int hi, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if ((int)cur.size() == len) {
        out.push_back(cur);
        return;
    }
    int lo = cur.empty() ? 1 : cur.back();
    for (int v = lo; v <= hi; ++v) {
        cur.push_back(v);
        all_index_tuples(len, hi, cur, out);
        cur.pop_back();
    }
}

} // namespace

std::vector<Subset> archimedean_simplices(const Situs& s, int refinement_budget) {
    const TruncatedSSet& x = s.sset;
    int d = x.trunc;
    bool total = x.total_on_tuples();
    if (refinement_budget > d && !total && s.extension_paths.empty())
        throw DegreeBudgetError("refinement budget exceeds stored degrees and no extension data");

    std::vector<Refinement> cands;
    for (int n = 1; n <= d; ++n)
        for (int i = 0; i < x.size(n); ++i) cands.push_back({n, true, n, i, {}});
    for (const auto& path : s.extension_paths) {
        if ((int)path.size() > refinement_budget) continue;
        cands.push_back({(int)path.size(), false, 0, 0, path});
    }
    if (total) {
        long long count = 0, k = x.size(1);
        std::vector<std::vector<int>> seqs;
        std::vector<int> cur;
        // free vertex sequences, lengths d+1 .. budget (shorter ones are actual)
        for (int len = d + 1; len <= refinement_budget; ++len) {
            long long c = 1;
            for (int i = 0; i < len; ++i) c *= k;
            count += c;
            if (count > 100000) throw SizeError("archimedean tuple search too large", count);
        }
        std::function<void(int, int)> gen = [&](int len, int pos) {
            if (pos == len) {
                cands.push_back({len, false, 0, 0, cur});
                return;
            }
            for (int v = 0; v < (int)k; ++v) {
                cur.push_back(v);
                gen(len, pos + 1);
                cur.pop_back();
            }
        };
        for (int len = d + 1; len <= refinement_budget; ++len) gen(len, 0);
    }

    // face index tuples, cached by (len, hi)
    std::map<std::pair<int, int>, std::vector<std::vector<int>>> tuple_cache;
    auto tuples_into = [&tuple_cache](int len, int hi) -> const std::vector<std::vector<int>>& {
        auto key = std::make_pair(len, hi);
        auto it = tuple_cache.find(key);
        if (it == tuple_cache.end()) {
            std::vector<std::vector<int>> out;
            std::vector<int> cur;
            all_index_tuples(len, hi, cur, out);
            it = tuple_cache.emplace(key, std::move(out)).first;
        }
        return it->second;
    };

    std::vector<Subset> result;
    for (int n = 1; n <= d; ++n) {
        Subset arch(x.size(n));
        for (int sx = 0; sx < x.size(n); ++sx) {
            bool ok = true;
            for (int k_deg = 1; k_deg <= d && ok; ++k_deg)
                for (const auto& eps : s.filter(k_deg).grades) {
                    if (!ok) break;
                    for (int fine_n = 1; fine_n <= refinement_budget && ok; ++fine_n) {
                        bool found = false;
                        for (const auto& r : cands) {
                            // s must be a face of r
                            bool is_face = false;
                            for (const auto& t : tuples_into(n, r.length)) {
                                auto f = refinement_face(x, r, t);
                                if (f && *f == sx) { is_face = true; break; }
                            }
                            if (!is_face) continue;
                            // r must be eps/fine_n-fine
                            bool fine = true;
                            for (const auto& t : tuples_into(k_deg, r.length)) {
                                if (t.back() > t.front() + fine_n) continue;
                                auto f = refinement_face(x, r, t);
                                if (!f || !eps.contains(*f)) { fine = false; break; }
                            }
                            if (fine) { found = true; break; }
                        }
                        if (!found) ok = false;
                    }
                }
            if (ok) arch.add(sx);
        }
        result.push_back(arch);
    }
    return result;
}

bool is_symmetric(const Situs& s) {
    const TruncatedSSet& x = s.sset;
    if (!x.total_on_tuples())
        throw DomainError("symmetry is only defined for representable underlying ssets");
    int k = x.size(1);
    for (int n = 2; n <= x.trunc; ++n) {
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            std::vector<int> table(x.size(n));
            for (int idx = 0; idx < x.size(n); ++idx) {
                auto t = decode_tuple(idx, k, n);
                int out = 0;
                for (int i = 0; i < n; ++i) out = out * k + t[perm[i]];
                table[idx] = out;
            }
            if (!check_continuous(table, s.filter(n), s.filter(n), Semantics::Graded).ok) return false;
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return true;
}

std::vector<int> situs_components(const Situs& s) {
    int n1 = s.sset.size(1);
    std::vector<int> parent(n1);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int i) {
        while (parent[i] != i) { parent[i] = parent[parent[i]]; i = parent[i]; }
        return i;
    };
    if (s.trunc() >= 2) {
        for (int e : s.filter(2).minimal().elements()) {
            int a = find(s.sset.face(2, e, {1})), b = find(s.sset.face(2, e, {2}));
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    }
    std::vector<int> block(n1, -1);
    int next = 0;
    for (int i = 0; i < n1; ++i) {
        int r = find(i);
        if (block[r] < 0) block[r] = next++;
        block[i] = block[r];
    }
    return block;
}

} // namespace situs
