#include "situs/sset.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>

namespace situs {

MonotoneMap::MonotoneMap(int s, int d, std::vector<int> v) : src(s), dst(d), values(std::move(v)) {
    if (s < 1 || d < 1 || (int)values.size() != s) throw DomainError("bad monotone map shape");
    for (int i = 0; i < s; ++i) {
        if (values[i] < 0 || values[i] >= d) throw DomainError("monotone map value out of range");
        if (i && values[i] < values[i - 1]) throw DomainError("map values not non-decreasing");
    }
}

MonotoneMap MonotoneMap::identity(int n) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 0);
    return MonotoneMap(n, n, v);
}

MonotoneMap MonotoneMap::compose_after(const MonotoneMap& other) const {
    if (other.dst != src) throw DomainError("monotone maps not composable");
    std::vector<int> v(other.src);
    for (int i = 0; i < other.src; ++i) v[i] = values[other.values[i]];
    return MonotoneMap(other.src, dst, v);
}

std::vector<MonotoneMap> MonotoneMap::all(int src, int dst) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::vector<MonotoneMap>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(src, dst);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<MonotoneMap> out;
    std::vector<int> v(src, 0);
    while (true) {
        out.emplace_back(src, dst, v);
        int i = src - 1;
        while (i >= 0 && v[i] == dst - 1) --i;
        if (i < 0) break;
        int nv = v[i] + 1;
        for (int j = i; j < src; ++j) v[j] = nv;
    }
    cache.emplace(key, out);
    return out;
}

MonotoneMap MonotoneMap::from_tuple(const std::vector<int>& t, int dst) {
    std::vector<int> v;
    v.reserve(t.size());
    for (int x : t) v.push_back(x - 1);
    return MonotoneMap((int)t.size(), dst, v);
}

std::string MonotoneMap::key() const {
    std::ostringstream os;
    os << src << "->" << dst << ":";
    for (int i = 0; i < src; ++i) os << (i ? "," : "") << values[i];
    return os.str();
}

MonotoneMap MonotoneMap::from_key(const std::string& k) {
    auto arrow = k.find("->");
    auto colon = k.find(':', arrow == std::string::npos ? 0 : arrow);
    if (arrow == std::string::npos || colon == std::string::npos)
        throw DomainError("bad monotone map key: " + k);
    int s = std::stoi(k.substr(0, arrow));
    int d = std::stoi(k.substr(arrow + 2, colon - arrow - 2));
    std::vector<int> v;
    std::string rest = k.substr(colon + 1);
    std::istringstream is(rest);
    std::string tok;
    while (std::getline(is, tok, ',')) v.push_back(std::stoi(tok));
    return MonotoneMap(s, d, v);
}

int TruncatedSSet::index_of(int degree, const std::string& l) const {
    const auto& ls = labels[degree - 1];
    for (size_t i = 0; i < ls.size(); ++i)
        if (ls[i] == l) return (int)i;
    throw DomainError("no simplex labelled '" + l + "' at degree " + std::to_string(degree));
}

const std::vector<int>& TruncatedSSet::table(const MonotoneMap& u) const {
    auto it = action.find(u);
    if (it == action.end()) throw DegreeBudgetError("no action table for " + u.key());
    return it->second;
}

int TruncatedSSet::face(int degree, int x, const std::vector<int>& tuple) const {
    return act(MonotoneMap::from_tuple(tuple, degree), x);
}

std::vector<int> TruncatedSSet::vertex_tuple(int degree, int x) const {
    std::vector<int> out(degree);
    for (int i = 1; i <= degree; ++i) out[i - 1] = face(degree, x, {i});
    return out;
}

std::optional<std::string> TruncatedSSet::functoriality_failure() const {
    for (int n = 1; n <= trunc; ++n) {
        const auto& id = table(MonotoneMap::identity(n));
        for (int x = 0; x < size(n); ++x)
            if (id[x] != x) return "identity action not identity at degree " + std::to_string(n);
    }
    for (int n = 1; n <= trunc; ++n)
        for (int m = 1; m <= trunc; ++m)
            for (int l = 1; l <= trunc; ++l)
                for (const auto& u : MonotoneMap::all(m, n))
                    for (const auto& w : MonotoneMap::all(l, m)) {
                        MonotoneMap uw = u.compose_after(w);
                        for (int x = 0; x < size(n); ++x)
                            if (act(uw, x) != act(w, act(u, x)))
                                return "action not functorial on " + u.key() + " after " + w.key();
                    }
    return std::nullopt;
}

bool TruncatedSSet::is_degenerate(int degree, int x) const {
    if (degree == 1) return false;
    // Degenerate iff it is the image of some non-injective monotone self-tuple
    // applied to a lower-degree simplex; equivalently some surjection
    // degree -> m (m < degree) has x in the image of its section action.
    for (int m = 1; m < degree; ++m)
        for (const auto& u : MonotoneMap::all(degree, m)) {
            bool onto = true;
            std::vector<bool> hit(m, false);
            for (int v : u.values) hit[v] = true;
            for (bool h : hit) onto &= h;
            if (!onto) continue;
            const auto& t = table(u); // X(m) -> X(degree)
            for (int y = 0; y < size(m); ++y)
                if (t[y] == x) return true;
        }
    return false;
}

void TruncatedSSet::build_lookup() const {
    if (lookup_state_ != 0) return;
    lookup_.assign(trunc, {});
    lookup_state_ = 1;
    for (int n = 1; n <= trunc; ++n) {
        for (int x = 0; x < size(n); ++x) {
            auto vt = vertex_tuple(n, x);
            auto [it, fresh] = lookup_[n - 1].emplace(vt, x);
            (void)it;
            if (!fresh) { lookup_state_ = -1; return; }
        }
    }
}

bool TruncatedSSet::vertex_determined() const {
    build_lookup();
    return lookup_state_ == 1;
}

std::optional<int> TruncatedSSet::simplex_with_vertices(int degree, const std::vector<int>& verts) const {
    build_lookup();
    if (lookup_state_ != 1) return std::nullopt;
    auto it = lookup_[degree - 1].find(verts);
    if (it == lookup_[degree - 1].end()) return std::nullopt;
    return it->second;
}

bool TruncatedSSet::total_on_tuples() const {
    if (!vertex_determined()) return false;
    long long k = size(1), expect = 1;
    for (int n = 1; n <= trunc; ++n) {
        expect *= k;
        if (size(n) != expect) return false;
    }
    return true;
}

namespace {

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += ",";
        out += parts[i];
    }
    return out;
}

// Populates the full action table from a face rule on index tuples.
template <typename FaceFn>
void fill_action(TruncatedSSet& x, FaceFn&& fn) {
    for (int m = 1; m <= x.trunc; ++m)
        for (int n = 1; n <= x.trunc; ++n)
            for (const auto& u : MonotoneMap::all(m, n)) {
                std::vector<int> t(x.size(n));
                for (int s = 0; s < x.size(n); ++s) t[s] = fn(u, s);
                x.action[u] = std::move(t);
            }
}

std::vector<std::vector<int>> all_tuples(int k, int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(n, 0);
    if (k == 0 && n > 0) return out;
    while (true) {
        out.push_back(cur);
        int i = n - 1;
        while (i >= 0 && cur[i] == k - 1) --i;
        if (i < 0) break;
        cur[i]++;
        for (int j = i + 1; j < n; ++j) cur[j] = 0;
    }
    return out;
}

} // namespace

TruncatedSSet representable_sset(const std::vector<std::string>& points, int trunc) {
    if (trunc < 1) throw DomainError("truncation must be >= 1");
    TruncatedSSet x;
    x.trunc = trunc;
    int k = (int)points.size();
    std::vector<std::vector<std::vector<int>>> tuples;
    for (int n = 1; n <= trunc; ++n) {
        tuples.push_back(all_tuples(k, n));
        std::vector<std::string> ls;
        for (const auto& t : tuples.back()) {
            std::vector<std::string> parts;
            for (int i : t) parts.push_back(points[i]);
            ls.push_back(join(parts));
        }
        x.labels.push_back(ls);
    }
    // index arithmetic: tuple (a_1..a_n) <-> sum a_i * k^(n-i)
    fill_action(x, [&](const MonotoneMap& u, int s) {
        const auto& t = tuples[u.dst - 1][s];
        int idx = 0;
        for (int i = 0; i < u.src; ++i) idx = idx * k + t[u.values[i]];
        return idx;
    });
    return x;
}

TruncatedSSet standard_simplex(int n_dim, int trunc) {
    if (n_dim < 0) throw DomainError("standard simplex dimension must be >= 0");
    if (trunc < 1) throw DomainError("truncation must be >= 1");
    std::vector<std::string> order;
    for (int i = 0; i <= n_dim; ++i) order.push_back(std::to_string(i));
    return corepresented_order(order, trunc);
}

TruncatedSSet corepresented_order(const std::vector<std::string>& order, int trunc) {
    if (trunc < 1) throw DomainError("truncation must be >= 1");
    int k = (int)order.size();
    TruncatedSSet x;
    x.trunc = trunc;
    std::vector<std::vector<MonotoneMap>> simps;
    for (int n = 1; n <= trunc; ++n) {
        simps.push_back(MonotoneMap::all(n, k));
        std::vector<std::string> ls;
        for (const auto& s : simps.back()) {
            std::vector<std::string> parts;
            for (int v : s.values) parts.push_back(order[v]);
            ls.push_back(join(parts));
        }
        x.labels.push_back(ls);
    }
    fill_action(x, [&](const MonotoneMap& u, int s) {
        MonotoneMap composed = simps[u.dst - 1][s].compose_after(u);
        const auto& pool = simps[u.src - 1];
        auto it = std::lower_bound(pool.begin(), pool.end(), composed);
        return (int)(it - pool.begin());
    });
    return x;
}

TruncatedSSet product_sset(const TruncatedSSet& a, const TruncatedSSet& b) {
    if (a.trunc != b.trunc) throw DomainError("product of ssets needs equal truncations");
    TruncatedSSet x;
    x.trunc = a.trunc;
    for (int n = 1; n <= x.trunc; ++n) {
        std::vector<std::string> ls;
        for (int i = 0; i < a.size(n); ++i)
            for (int j = 0; j < b.size(n); ++j)
                ls.push_back("(" + a.label(n, i) + ";" + b.label(n, j) + ")");
        x.labels.push_back(ls);
    }
    fill_action(x, [&](const MonotoneMap& u, int s) {
        int bn = b.size(u.dst);
        int i = s / bn, j = s % bn;
        return a.act(u, i) * b.size(u.src) + b.act(u, j);
    });
    return x;
}

TruncatedSSet coproduct_sset(const TruncatedSSet& a, const TruncatedSSet& b) {
    if (a.trunc != b.trunc) throw DomainError("coproduct of ssets needs equal truncations");
    TruncatedSSet x;
    x.trunc = a.trunc;
    for (int n = 1; n <= x.trunc; ++n) {
        std::vector<std::string> ls;
        for (int i = 0; i < a.size(n); ++i) ls.push_back("L." + a.label(n, i));
        for (int j = 0; j < b.size(n); ++j) ls.push_back("R." + b.label(n, j));
        x.labels.push_back(ls);
    }
    fill_action(x, [&](const MonotoneMap& u, int s) {
        int an = a.size(u.dst);
        if (s < an) return a.act(u, s);
        return a.size(u.src) + b.act(u, s - an);
    });
    return x;
}

TruncatedSSet shift_plus1(const TruncatedSSet& x) {
    if (x.trunc < 2) throw DegreeBudgetError("shift needs truncation >= 2");
    TruncatedSSet y;
    y.trunc = x.trunc - 1;
    for (int n = 1; n <= y.trunc; ++n) y.labels.push_back(x.labels[n]); // X(n+1)
    fill_action(y, [&](const MonotoneMap& u, int s) {
        std::vector<int> v(u.src + 1, 0);
        for (int i = 0; i < u.src; ++i) v[i + 1] = u.values[i] + 1;
        return x.act(MonotoneMap(u.src + 1, u.dst + 1, v), s);
    });
    return y;
}

std::vector<std::vector<int>> shift_counit(const TruncatedSSet& x) {
    if (x.trunc < 2) throw DegreeBudgetError("shift needs truncation >= 2");
    std::vector<std::vector<int>> maps;
    for (int n = 1; n <= x.trunc - 1; ++n) {
        std::vector<int> v(n);
        for (int i = 0; i < n; ++i) v[i] = i + 1;
        maps.push_back(x.table(MonotoneMap(n, n + 1, v))); // X(n+1) -> X(n)
    }
    return maps;
}

namespace {
int uf_find(std::vector<int>& p, int i) {
    while (p[i] != i) { p[i] = p[p[i]]; i = p[i]; }
    return i;
}
} // namespace

std::vector<int> connected_components(const TruncatedSSet& x) {
    int n1 = x.size(1);
    std::vector<int> parent(n1);
    std::iota(parent.begin(), parent.end(), 0);
    if (x.trunc >= 2) {
        const auto& v1 = x.table(MonotoneMap(1, 2, {0}));
        const auto& v2 = x.table(MonotoneMap(1, 2, {1}));
        for (int e = 0; e < x.size(2); ++e) {
            int a = uf_find(parent, v1[e]), b = uf_find(parent, v2[e]);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    }
    std::vector<int> block(n1, -1);
    int next = 0;
    for (int i = 0; i < n1; ++i) {
        int r = uf_find(parent, i);
        if (block[r] < 0) block[r] = next++;
        block[i] = block[r];
    }
    return block;
}

int component_count(const TruncatedSSet& x) {
    auto b = connected_components(x);
    int m = 0;
    for (int v : b) m = std::max(m, v + 1);
    return m;
}

namespace {
// Edgewise doubling on Δ: e(n) = 2n; e(f) runs f reversed on the first block
// and f itself on the second.
MonotoneMap edgewise(const MonotoneMap& f) {
    int m = f.src, n = f.dst;
    std::vector<int> v(2 * m);
    for (int j = 0; j < m; ++j) v[j] = n - 1 - f.values[m - 1 - j];
    for (int i = 0; i < m; ++i) v[m + i] = n + f.values[i];
    return MonotoneMap(2 * m, 2 * n, v);
}
} // namespace

TruncatedSSet grayson_subdivide(const TruncatedSSet& x) {
    int t = x.trunc / 2;
    if (t < 1) throw DegreeBudgetError("grayson subdivision needs truncation >= 2");
    TruncatedSSet y;
    y.trunc = t;
    for (int n = 1; n <= t; ++n) y.labels.push_back(x.labels[2 * n - 1]); // X(2n)
    fill_action(y, [&](const MonotoneMap& u, int s) { return x.act(edgewise(u), s); });
    return y;
}

bool sset_map_valid(const TruncatedSSet& a, const TruncatedSSet& b, const SSetMap& f) {
    if ((int)f.size() != a.trunc || a.trunc != b.trunc) return false;
    for (int n = 1; n <= a.trunc; ++n)
        if ((int)f[n - 1].size() != a.size(n)) return false;
    for (int m = 1; m <= a.trunc; ++m)
        for (int n = 1; n <= a.trunc; ++n)
            for (const auto& u : MonotoneMap::all(m, n))
                for (int s = 0; s < a.size(n); ++s)
                    if (f[m - 1][a.act(u, s)] != b.act(u, f[n - 1][s])) return false;
    return true;
}

namespace {

struct MapEnum {
    const TruncatedSSet &a, &b;
    long long guard, visited = 0;
    SSetMap cur;
    std::vector<SSetMap> out;

    MapEnum(const TruncatedSSet& a_, const TruncatedSSet& b_, long long g) : a(a_), b(b_), guard(g) {
        cur.resize(a.trunc);
        for (int n = 1; n <= a.trunc; ++n) cur[n - 1].assign(a.size(n), -1);
    }

    bool consistent(int degree, int s, int img) {
        // All action constraints against already-assigned entries.
        for (int m = 1; m <= a.trunc; ++m)
            for (const auto& u : MonotoneMap::all(m, degree)) {
                int fs = a.act(u, s);
                int want = b.act(u, img);
                int have = cur[m - 1][fs];
                if (have >= 0 && have != want) return false;
            }
        // Constraints where s appears as the face of an assigned simplex.
        for (int n = 1; n <= a.trunc; ++n)
            for (const auto& u : MonotoneMap::all(degree, n))
                for (int t = 0; t < a.size(n); ++t) {
                    if (a.act(u, t) != s) continue;
                    int ft = cur[n - 1][t];
                    if (ft >= 0 && b.act(u, ft) != img) return false;
                }
        return true;
    }

    void dfs(int degree, int s) {
        if (degree > a.trunc) {
            out.push_back(cur);
            return;
        }
        if (s == a.size(degree)) {
            dfs(degree + 1, 0);
            return;
        }
        if (++visited > guard) throw SizeError("sset map enumeration guard exceeded", visited);
        for (int img = 0; img < b.size(degree); ++img) {
            if (!consistent(degree, s, img)) continue;
            cur[degree - 1][s] = img;
            dfs(degree, s + 1);
            cur[degree - 1][s] = -1;
        }
    }
};

} // namespace

std::vector<SSetMap> enumerate_sset_maps(const TruncatedSSet& a, const TruncatedSSet& b,
                                         long long guard) {
    if (a.trunc != b.trunc) throw DomainError("sset map enumeration needs equal truncations");
    MapEnum e(a, b, guard);
    e.dfs(1, 0);
    return e.out;
}

} // namespace situs
