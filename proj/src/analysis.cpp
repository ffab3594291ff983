#include "situs/analysis.hpp"

#include <algorithm>
#include <set>

#include "situs/lifting.hpp"

namespace situs {

GradedFilter SequenceTower::tail_filter() const {
    if (horizon < 1) throw DomainError("sequence tower needs horizon >= 1");
    int n = horizon + 1;
    std::vector<Subset> grades;
    for (int i = 0; i <= horizon - 1; ++i) {
        Subset t(n);
        for (int j = i; j <= horizon; ++j) t.add(j);
        grades.push_back(t);
    }
    return GradedFilter(n, grades);
}

std::vector<std::string> SequenceTower::index_labels() const {
    std::vector<std::string> ls;
    for (int i = 0; i <= horizon; ++i) ls.push_back(std::to_string(i));
    return ls;
}

Situs SequenceTower::to_situs(int trunc) const {
    GradedFilter f = tail_filter();
    auto ls = index_labels();
    switch (flavor) {
        case IndexMode::Const: return embed_const(f, ls, trunc);
        case IndexMode::Diag: return embed_diag(f, ls, trunc);
        case IndexMode::Cart: return embed_cart(f, ls, trunc);
    }
    throw DomainError("unknown tower flavor");
}

namespace {

std::vector<int> decode(int idx, int k, int n) {
    std::vector<int> t(n);
    for (int i = n - 1; i >= 0; --i) {
        t[i] = idx % k;
        idx /= k;
    }
    return t;
}

int encode(const std::vector<int>& t, int k) {
    int idx = 0;
    for (int v : t) idx = idx * k + v;
    return idx;
}

} // namespace

bool is_cauchy(const std::vector<int>& a, const FiniteMetricSpace& m, int trunc) {
    if (a.size() < 2) throw DomainError("sequence needs at least two entries");
    int horizon = (int)a.size() - 1;
    SequenceTower tower{horizon, IndexMode::Cart};
    Situs t = tower.to_situs(trunc);
    Situs target = embed_metric(m, trunc);
    SitusMap f;
    f.deg.resize(trunc);
    int ki = horizon + 1, km = m.size();
    for (int n = 1; n <= trunc; ++n) {
        f.deg[n - 1].resize(t.sset.size(n));
        for (int idx = 0; idx < t.sset.size(n); ++idx) {
            auto iv = decode(idx, ki, n);
            std::vector<int> mv(n);
            for (int j = 0; j < n; ++j) mv[j] = a[iv[j]];
            f.deg[n - 1][idx] = encode(mv, km);
        }
    }
    return check_morphism(f, t, target).ok;
}

LimitResult find_limit(const std::vector<int>& a, const FiniteMetricSpace& m, int trunc) {
    if (a.size() < 2) throw DomainError("sequence needs at least two entries");
    int horizon = (int)a.size() - 1;
    SequenceTower tower{horizon, IndexMode::Cart};
    Situs t = tower.to_situs(trunc);
    Situs target = shift_situs(embed_metric(m, trunc + 1));
    int ki = horizon + 1, km = m.size();
    LimitResult r;
    for (int cand = 0; cand < km; ++cand) {
        SitusMap f;
        f.deg.resize(trunc);
        for (int n = 1; n <= trunc; ++n) {
            f.deg[n - 1].resize(t.sset.size(n));
            for (int idx = 0; idx < t.sset.size(n); ++idx) {
                auto iv = decode(idx, ki, n);
                std::vector<int> mv(n + 1);
                mv[0] = cand;
                for (int j = 0; j < n; ++j) mv[j + 1] = a[iv[j]];
                f.deg[n - 1][idx] = encode(mv, km); // target degree n carrier = M^{n+1}
            }
        }
        if (check_morphism(f, t, target).ok) r.all.push_back(cand);
    }
    if (!r.all.empty()) r.representative = r.all.front();
    return r;
}

CompletenessReport check_completeness_lift(const FiniteMetricSpace& m,
                                           const std::vector<std::vector<int>>& seqs, int trunc) {
    CompletenessReport rep;
    for (size_t i = 0; i < seqs.size(); ++i) {
        if (!is_cauchy(seqs[i], m, trunc)) continue;
        if (!find_limit(seqs[i], m, trunc).representative) {
            rep.ok = false;
            rep.first_failing = (int)i;
            return rep;
        }
    }
    return rep;
}

namespace {

// Tables of (source × tower) -> target, (x⃗, i⃗) -> (f_{i_j}(x_j))_j.
SitusMap family_map(const FunctionFamily& fam, const Situs& source, const Situs& tower,
                    const Situs& target, IndexMode mode) {
    int trunc = source.trunc();
    SitusMap f;
    f.deg.resize(trunc);
    for (int n = 1; n <= trunc; ++n) {
        int ts = tower.sset.size(n);
        f.deg[n - 1].resize(source.sset.size(n) * ts);
        for (int sx = 0; sx < source.sset.size(n); ++sx) {
            auto xv = source.sset.vertex_tuple(n, sx);
            for (int ix = 0; ix < ts; ++ix) {
                std::vector<int> iv;
                if (mode == IndexMode::Const)
                    iv.assign(n, ix);
                else
                    iv = tower.sset.vertex_tuple(n, ix);
                std::vector<int> mv(n);
                for (int j = 0; j < n; ++j) mv[j] = fam.maps[iv[j]][xv[j]];
                auto out = target.sset.simplex_with_vertices(n, mv);
                if (!out) throw DomainError("family target is not vertex-determined");
                f.deg[n - 1][sx * ts + ix] = *out;
            }
        }
    }
    return f;
}

} // namespace

bool check_family(const FunctionFamily& fam, const Situs& source_situs, const Situs& target_situs,
                  IndexMode mode) {
    if (fam.maps.empty()) throw DomainError("empty function family");
    SequenceTower tower{fam.horizon(), mode};
    Situs t = tower.to_situs(source_situs.trunc());
    Situs prod = product_situs(source_situs, t);
    SitusMap f = family_map(fam, source_situs, t, target_situs, mode);
    return check_morphism(f, prod, target_situs).ok;
}

namespace {

// The lifted square with an arbitrary index situs: top row
// ((x_0..x_n), i⃗) -> (f∞(x_0), f_{i_1}(x_1)..) into target[+1].
bool lifted_square(const FunctionFamily& fam, const Situs& index_situs,
                   const std::vector<int>& f_inf, const Situs& source_unshifted,
                   const Situs& target_unshifted) {
    int trunc = source_unshifted.trunc() - 1;
    if (trunc < 1) throw DegreeBudgetError("lifted square needs truncation >= 2");
    Situs src = product_situs(shift_situs(source_unshifted), index_situs);
    Situs dst = shift_situs(target_unshifted);

    SitusMap f;
    f.deg.resize(trunc);
    for (int n = 1; n <= trunc; ++n) {
        int ts = index_situs.sset.size(n);
        int xs = source_unshifted.sset.size(n + 1);
        f.deg[n - 1].resize(xs * ts);
        for (int sx = 0; sx < xs; ++sx) {
            auto xv = source_unshifted.sset.vertex_tuple(n + 1, sx); // (x_0..x_n)
            for (int ix = 0; ix < ts; ++ix) {
                auto iv = index_situs.sset.vertex_tuple(n, ix);
                std::vector<int> mv(n + 1);
                mv[0] = f_inf[xv[0]];
                for (int j = 0; j < n; ++j) mv[j + 1] = fam.maps[iv[j]][xv[j + 1]];
                auto out = target_unshifted.sset.simplex_with_vertices(n + 1, mv);
                if (!out) throw DomainError("family target is not vertex-determined");
                f.deg[n - 1][sx * ts + ix] = *out;
            }
        }
    }
    return check_morphism(f, src, dst).ok;
}

} // namespace

bool check_uniform_convergence(const FunctionFamily& fam, const std::vector<int>& f_inf,
                               const Situs& source_unshifted, const Situs& target_unshifted) {
    int trunc = source_unshifted.trunc() - 1;
    if (trunc < 1) throw DegreeBudgetError("uniform convergence needs truncation >= 2");
    SequenceTower tower{fam.horizon(), IndexMode::Diag};
    return lifted_square(fam, tower.to_situs(trunc), f_inf, source_unshifted, target_unshifted);
}

std::optional<int> find_uniform_limit(const FunctionFamily& fam, const Situs& source_unshifted,
                                      const Situs& target_unshifted) {
    std::set<std::vector<int>> seen;
    for (int i = 0; i < (int)fam.maps.size(); ++i) {
        if (!seen.insert(fam.maps[i]).second) continue;
        if (check_uniform_convergence(fam, fam.maps[i], source_unshifted, target_unshifted))
            return i;
    }
    return std::nullopt;
}

FiniteTopSpace metric_topology(const FiniteMetricSpace& m) {
    int n = m.size();
    std::vector<Subset> gen;
    for (int x = 0; x < n; ++x)
        for (const auto& eps : m.grid) {
            Subset b(n);
            for (int y = 0; y < n; ++y)
                if (m.dist[x][y] < eps) b.add(y);
            gen.push_back(b);
        }
    gen.push_back(Subset(n));
    gen.push_back(Subset(n, true));
    std::set<std::vector<int>> keys;
    for (auto& g : gen) keys.insert(g.elements());
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<Subset> cur;
        for (const auto& k : keys) {
            Subset s(n);
            for (int i : k) s.add(i);
            cur.push_back(s);
        }
        for (const auto& a : cur)
            for (const auto& b : cur)
                for (const Subset& c : {a.unite(b), a.intersect(b)})
                    if (keys.insert(c.elements()).second) grew = true;
    }
    FiniteTopSpace t;
    t.points = m.points;
    for (const auto& k : keys) {
        Subset s(n);
        for (int i : k) s.add(i);
        t.opens.push_back(s);
    }
    return t;
}

ArzelaAscoliReport arzela_ascoli_report(const FiniteMetricSpace& x, const FiniteMetricSpace& m,
                                        const FunctionFamily& fam, int trunc) {
    ArzelaAscoliReport rep;
    Situs x_mi = embed_metric(x, trunc);
    Situs x_pa = embed_top(metric_topology(x), trunc);
    Situs m_mi = embed_metric(m, trunc);
    Situs x_mi_tall = embed_metric(x, trunc + 1);
    Situs m_mi_tall = embed_metric(m, trunc + 1);

    rep.compact_x = is_quasi_compact_concise(x_mi).ok;
    rep.complete_m = is_quasi_compact_concise(m_mi).ok;

    // Principal index ultrafilters as diag situses over {0..N}.
    int horizon = fam.horizon();
    auto principal_tower = [&](int u) {
        SequenceTower t{horizon, IndexMode::Diag};
        return embed_diag(GradedFilter::principal_at(horizon + 1, u), t.index_labels(), trunc);
    };

    // pointwise precompactness: X carries the diagonal filter.
    int npts = x.size();
    Situs x_diag_tall = embed_diag(GradedFilter::antidiscrete(npts), x.points, trunc + 1);
    for (int u = 0; u <= horizon; ++u) {
        int witness = -1;
        for (int g = 0; g <= horizon && witness < 0; ++g)
            if (lifted_square(fam, principal_tower(u), fam.maps[g], x_diag_tall, m_mi_tall))
                witness = g;
        rep.pointwise_witness.push_back(witness);
    }

    // uniformly-equicontinuous-implies-uniform-convergence square per u.
    for (int u = 0; u <= horizon; ++u) {
        int witness = -1;
        for (int g = 0; g <= horizon && witness < 0; ++g)
            if (lifted_square(fam, principal_tower(u), fam.maps[g], x_mi_tall, m_mi_tall))
                witness = g;
        rep.uniform_witness.push_back(witness);
    }

    rep.equicontinuous = check_family(fam, x_pa, m_mi, IndexMode::Diag);
    rep.uniformly_equicontinuous = check_family(fam, x_mi, m_mi, IndexMode::Diag);
    rep.uniformly_cauchy = check_family(fam, x_mi, m_mi, IndexMode::Cart);

    bool pointwise_all = true;
    for (int w : rep.pointwise_witness)
        if (w < 0) pointwise_all = false;
    bool uniform_some = false;
    for (int w : rep.uniform_witness)
        if (w >= 0) uniform_some = true;
    rep.implication_i = uniform_some;
    rep.implication_ii = pointwise_all && rep.equicontinuous;
    rep.implication_iii = pointwise_all && rep.uniformly_equicontinuous;
    return rep;
}

} // namespace situs
