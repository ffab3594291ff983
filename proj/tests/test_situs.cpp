#include <doctest.h>

#include <set>

#include "helpers.hpp"
#include "situs/situs.hpp"

using namespace situs;
using namespace situs::test;

namespace {

FiniteMetricSpace two_points(const Rational& d, std::vector<Rational> grid) {
    FiniteMetricSpace m;
    m.points = {"a", "b"};
    m.dist = {{Rational(0), d}, {d, Rational(0)}};
    m.grid = std::move(grid);
    return m;
}

FiniteMetricSpace line3() {
    // 0, 1, 2 on a line
    FiniteMetricSpace m;
    m.points = {"x", "y", "z"};
    m.dist = {{0, 1, 2}, {1, 0, 1}, {2, 1, 0}};
    for (auto& row : m.dist)
        for (auto& d : row) d = Rational(d.num());
    m.grid = {Rational(3), Rational(3, 2)};
    return m;
}

} // namespace

TEST_CASE("metric embedding grades") {
    auto m = two_points(Rational(1), {Rational(2), Rational(1, 2)});
    Situs s = embed_metric(m, 3);
    CHECK(validate_situs(s).ok);
    CHECK(s.filter(2).grades[0].count() == 4);
    // pairs within 1/2: only (a,a),(b,b)
    auto g = s.filter(2).grades[1].elements();
    CHECK(g == std::vector<int>{s.sset.index_of(2, "a,a"), s.sset.index_of(2, "b,b")});
    // degree-1 grades are full
    for (const auto& gr : s.filter(1).grades) CHECK(gr.is_full());

    // one-point space: everything full
    FiniteMetricSpace pt;
    pt.points = {"p"};
    pt.dist = {{Rational(0)}};
    pt.grid = {Rational(1)};
    Situs sp = embed_metric(pt, 3);
    for (int n = 1; n <= 3; ++n)
        for (const auto& gr : sp.filter(n).grades) CHECK(gr.is_full());
}

TEST_CASE("metric morphisms are exactly the maps with a modulus") {
    auto m = line3();
    Situs s = embed_metric(m, 3);
    for (const auto& f : all_maps(3, 3)) {
        // modulus oracle: for every eps of the target grid there is a delta of
        // the source grid with dist(x,y) < delta => dist(fx,fy) < eps
        bool modulus = true;
        for (const auto& eps : m.grid) {
            bool some_delta = false;
            for (const auto& delta : m.grid) {
                bool works = true;
                for (int x = 0; x < 3 && works; ++x)
                    for (int y = 0; y < 3 && works; ++y)
                        if (m.dist[x][y] < delta && !(m.dist[f[x]][f[y]] < eps)) works = false;
                if (works) { some_delta = true; break; }
            }
            if (!some_delta) { modulus = false; break; }
        }
        SitusMap fm;
        fm.deg.resize(3);
        for (int n = 1; n <= 3; ++n) {
            fm.deg[n - 1].resize(s.sset.size(n));
            for (int idx = 0; idx < s.sset.size(n); ++idx) {
                auto vt = s.sset.vertex_tuple(n, idx);
                std::vector<int> img(n);
                for (int i = 0; i < n; ++i) img[i] = f[vt[i]];
                fm.deg[n - 1][idx] = *s.sset.simplex_with_vertices(n, img);
            }
        }
        CHECK(check_morphism(fm, s, s).ok == modulus);
    }
}

TEST_CASE("topological embedding") {
    Situs s = embed_top(FiniteTopSpace::sierpinski(), 3);
    CHECK(validate_situs(s).ok);
    auto e = s.filter(2).minimal().elements();
    std::vector<int> expect{s.sset.index_of(2, "0,0"), s.sset.index_of(2, "0,1"),
                            s.sset.index_of(2, "1,1")};
    std::sort(expect.begin(), expect.end());
    CHECK(e == expect);

    Situs d = embed_top(FiniteTopSpace::discrete({"0", "1"}), 3);
    auto ed = d.filter(2).minimal().elements();
    std::vector<int> diag{d.sset.index_of(2, "0,0"), d.sset.index_of(2, "1,1")};
    std::sort(diag.begin(), diag.end());
    CHECK(ed == diag);
}

TEST_CASE("morphisms of topological situses are the continuous maps") {
    auto spaces = all_topologies({"0", "1"});
    CHECK(spaces.size() == 4);
    for (const auto& x : spaces)
        for (const auto& y : spaces) {
            Situs sx = embed_top(x, 3), sy = embed_top(y, 3);
            for (const auto& f : all_maps(2, 2)) {
                SitusMap fm;
                fm.deg.resize(3);
                for (int n = 1; n <= 3; ++n) {
                    fm.deg[n - 1].resize(sx.sset.size(n));
                    for (int idx = 0; idx < sx.sset.size(n); ++idx) {
                        auto vt = sx.sset.vertex_tuple(n, idx);
                        std::vector<int> img(n);
                        for (int i = 0; i < n; ++i) img[i] = f[vt[i]];
                        fm.deg[n - 1][idx] = *sy.sset.simplex_with_vertices(n, img);
                    }
                }
                CHECK(check_morphism(fm, sx, sy).ok == top_map_continuous(x, y, f));
            }
        }
}

TEST_CASE("topologise inverts the embedding") {
    auto sier = FiniteTopSpace::sierpinski();
    CHECK(topologise(embed_top(sier, 3)) == sier);

    // antidiscrete situs -> antidiscrete topology
    Situs anti = antidiscrete_situs(representable_sset({"0", "1"}, 3));
    auto t = topologise(anti);
    CHECK(t.opens.size() == 2);

    // fine metric grid -> discrete topology
    auto m = two_points(Rational(1), {Rational(2), Rational(1, 2)});
    auto tm = topologise(embed_metric(m, 3));
    CHECK(tm.opens.size() == 4);

    for (const auto& x : all_topologies({"0", "1", "2"}))
        CHECK(topologise(embed_top(x, 3)) == x);
    for (const auto& x : all_topologies({"0", "1", "2", "3"}))
        CHECK(topologise(embed_top(x, 3)) == x);
}

TEST_CASE("random embeddings validate") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 25; ++trial) {
        int npts = 2 + (int)(rng() % 3);
        std::set<int> pos_set;
        while ((int)pos_set.size() < npts) pos_set.insert((int)(rng() % 30));
        std::vector<int> pos(pos_set.begin(), pos_set.end());
        FiniteMetricSpace m;
        for (int v : pos) m.points.push_back("r" + std::to_string(v));
        m.dist.assign(npts, std::vector<Rational>(npts));
        long long maxd = 1;
        for (int i = 0; i < npts; ++i)
            for (int j = 0; j < npts; ++j) {
                m.dist[i][j] = Rational(std::abs(pos[i] - pos[j]));
                maxd = std::max(maxd, (long long)std::abs(pos[i] - pos[j]));
            }
        m.grid = {Rational(maxd + 1), Rational(2, 3), Rational(1, 2)};
        CHECK(validate_situs(embed_metric(m, 3)).ok);
    }
}

TEST_CASE("diag, cart, const embeddings") {
    GradedFilter f(2, {Subset(2, true), [] {
                           Subset s(2);
                           s.add(0);
                           return s;
                       }()});
    Situs diag = embed_diag(f, {"0", "1"}, 3);
    Situs cart = embed_cart(f, {"0", "1"}, 3);
    Situs cons = embed_const(f, {"0", "1"}, 3);
    CHECK(validate_situs(diag).ok);
    CHECK(validate_situs(cart).ok);
    CHECK(validate_situs(cons).ok);

    // diag of [{0,1},{0}] at degree 2: grades [{00,11}, {00}]
    std::vector<int> ddiag{diag.sset.index_of(2, "0,0"), diag.sset.index_of(2, "1,1")};
    std::sort(ddiag.begin(), ddiag.end());
    CHECK(diag.filter(2).grades[0].elements() == ddiag);
    CHECK(diag.filter(2).grades[1].elements() == std::vector<int>{diag.sset.index_of(2, "0,0")});
    // cart at degree 2: [{0,1}^2, {0}^2]
    CHECK(cart.filter(2).grades[0].is_full());
    CHECK(cart.filter(2).grades[1].elements() == std::vector<int>{cart.sset.index_of(2, "0,0")});
    // const carries the same filter at every degree
    for (int n = 1; n <= 3; ++n) CHECK(cons.filter(n) == f);
}

TEST_CASE("diag finer than cart, gradewise") {
    for (const auto& f : all_graded_filters(2, 2)) {
        std::vector<std::string> labels{"0", "1"};
        Situs diag = embed_diag(f, labels, 3);
        Situs cart = embed_cart(f, labels, 3);
        for (int n = 1; n <= 3; ++n)
            for (int i = 0; i < f.chain_length(); ++i)
                CHECK(cart.filter(n).grades[i].contains_all(diag.filter(n).grades[i]));
    }
}

TEST_CASE("diag embedding is fully faithful") {
    for (int n = 1; n <= 2; ++n)
        for (const auto& f : all_graded_filters(n, 2))
            for (const auto& g : all_graded_filters(n, 2)) {
                std::vector<std::string> labels;
                for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
                Situs df = embed_diag(f, labels, 2), dg = embed_diag(g, labels, 2);
                int filter_homs = 0;
                for (const auto& m : all_maps(n, n))
                    if (check_continuous(m, f, g, Semantics::Graded).ok) ++filter_homs;
                int situs_homs = 0;
                for (const auto& m : all_maps(n, n)) {
                    SitusMap fm;
                    fm.deg.resize(2);
                    bool total = true;
                    for (int d = 1; d <= 2; ++d) {
                        fm.deg[d - 1].resize(df.sset.size(d));
                        for (int idx = 0; idx < df.sset.size(d); ++idx) {
                            auto vt = df.sset.vertex_tuple(d, idx);
                            std::vector<int> img(d);
                            for (int i = 0; i < d; ++i) img[i] = m[vt[i]];
                            auto s = dg.sset.simplex_with_vertices(d, img);
                            if (!s) { total = false; break; }
                            fm.deg[d - 1][idx] = *s;
                        }
                    }
                    if (total && check_morphism(fm, df, dg).ok) ++situs_homs;
                }
                CHECK(filter_homs == situs_homs);
            }
}

TEST_CASE("subdivision of a representable sset is trivial") {
    auto r = subdivision_filter(representable_sset({"a", "b"}, 3), SubdivisionVariant::Plain);
    CHECK(validate_situs(r.situs).ok);
    for (int n = 1; n <= 3; ++n)
        for (const auto& g : r.situs.filter(n).grades) CHECK(g.is_full());
    CHECK(r.horizon_limited); // representables keep extending past any truncation
}

TEST_CASE("interval subdivision is the consecutive-step structure") {
    auto r = interval_situs({"0", "h", "1"}, 3);
    const Situs& s = r.situs;
    CHECK(s.sset.size(2) == 6);

    // grades are downward-closed under faces within the window condition:
    // the grade with window m at degree n lands in the same window's grade
    // at every degree that carries it
    for (int n = 1; n <= 3; ++n)
        for (int gi = 0; gi < s.filter(n).chain_length(); ++gi) {
            int m = 3 - gi; // chain runs from window D down
            for (int n2 = 1; n2 <= 3; ++n2) {
                int lo2 = std::max(1, n2 - 1);
                if (m < lo2) continue;
                int gi2 = 3 - m;
                for (const auto& u : MonotoneMap::all(n2, n))
                    for (int e : s.filter(n).grades[gi].elements())
                        CHECK(s.filter(n2).grades[gi2].contains(s.sset.act(u, e)));
            }
        }

    // finest degree-2 grade = pairs at most one grid step apart
    Subset expect(s.sset.size(2));
    const char* small_pairs[] = {"0,0", "0,h", "h,h", "h,1", "1,1"};
    for (const char* l : small_pairs) expect.add(s.sset.index_of(2, l));
    CHECK(s.filter(2).minimal() == expect);

    // |L| = 2: degree-2 carrier has 3 elements
    auto r2 = interval_situs({"0", "1"}, 3);
    CHECK(r2.situs.sset.size(2) == 3);

    // Δ_0: all grades full
    auto rd0 = subdivision_filter(standard_simplex(0, 3), SubdivisionVariant::Plain);
    for (int n = 1; n <= 3; ++n)
        for (const auto& g : rd0.situs.filter(n).grades) CHECK(g.is_full());
    CHECK_FALSE(rd0.horizon_limited);

    // with headroom the frontier closes and the degree-2 grade is unchanged
    auto r4 = interval_situs({"0", "h", "1"}, 4);
    CHECK_FALSE(r4.horizon_limited);
    Subset expect4(r4.situs.sset.size(2));
    for (const char* l : small_pairs) expect4.add(r4.situs.sset.index_of(2, l));
    CHECK(r4.situs.filter(2).minimal() == expect4);
}

TEST_CASE("interval endomorphisms are the step-Lipschitz monotone maps") {
    auto r = interval_situs({"0", "h", "1"}, 3);
    const Situs& s = r.situs;
    // monotone maps L -> L as vertex maps; check against the grid-modulus oracle
    for (const auto& u : MonotoneMap::all(3, 3)) {
        const auto& f = u.values;
        bool modulus = true; // forall eps-step exists delta-step
        for (int eps = 1; eps <= 2 && modulus; ++eps) {
            bool some = false;
            for (int delta = 1; delta <= 2 && !some; ++delta) {
                bool works = true;
                for (int x = 0; x < 3 && works; ++x)
                    for (int y = 0; y < 3 && works; ++y)
                        if (std::abs(x - y) <= delta && std::abs(f[x] - f[y]) > eps) works = false;
                if (works) some = true;
            }
            if (!some) modulus = false;
        }
        SitusMap fm;
        fm.deg.resize(3);
        bool total = true;
        for (int n = 1; n <= 3 && total; ++n) {
            fm.deg[n - 1].resize(s.sset.size(n));
            for (int idx = 0; idx < s.sset.size(n); ++idx) {
                auto vt = s.sset.vertex_tuple(n, idx);
                std::vector<int> img(n);
                for (int i = 0; i < n; ++i) img[i] = f[vt[i]];
                auto out = s.sset.simplex_with_vertices(n, img);
                if (!out) { total = false; break; }
                fm.deg[n - 1][idx] = *out;
            }
        }
        REQUIRE(total);
        CHECK(check_morphism(fm, s, s).ok == modulus);
    }
}

TEST_CASE("interval paths into a metric situs have a grid modulus at pair level") {
    // degree-2 continuity is exactly the grid modulus; higher degrees add the
    // horizon constraints of the truncated subdivision chains
    auto interval = interval_situs({"0", "h", "1"}, 3);
    const Situs& iv = interval.situs;
    auto m = line3();
    Situs mm = embed_metric(m, 3);
    int found = 0;
    for (const auto& f : all_maps(3, 3)) {
        bool modulus = true;
        for (const auto& eps : m.grid) {
            bool some = false;
            for (int d = 1; d <= 2 && !some; ++d) {
                bool works = true;
                for (int t = 0; t < 3 && works; ++t)
                    for (int t2 = 0; t2 < 3 && works; ++t2)
                        if (std::abs(t - t2) <= d && !(m.dist[f[t]][f[t2]] < eps)) works = false;
                if (works) some = true;
            }
            if (!some) { modulus = false; break; }
        }
        std::vector<int> pair_table(iv.sset.size(2));
        for (int idx = 0; idx < iv.sset.size(2); ++idx) {
            auto vt = iv.sset.vertex_tuple(2, idx);
            pair_table[idx] = *mm.sset.simplex_with_vertices(2, {f[vt[0]], f[vt[1]]});
        }
        bool pair_continuous =
            check_continuous(pair_table, iv.filter(2), mm.filter(2), Semantics::Graded).ok;
        CHECK(pair_continuous == modulus);
        if (pair_continuous) ++found;

        // a full morphism is in particular pair-continuous
        SitusMap fm;
        fm.deg.resize(3);
        for (int n = 1; n <= 3; ++n) {
            fm.deg[n - 1].resize(iv.sset.size(n));
            for (int idx = 0; idx < iv.sset.size(n); ++idx) {
                auto vt = iv.sset.vertex_tuple(n, idx);
                std::vector<int> img(n);
                for (int i = 0; i < n; ++i) img[i] = f[vt[i]];
                fm.deg[n - 1][idx] = *mm.sset.simplex_with_vertices(n, img);
            }
        }
        if (check_morphism(fm, iv, mm).ok) CHECK(pair_continuous);
    }
    CHECK(found > 3);   // more than the constants
    CHECK(found < 27);  // and the control is not vacuous
}

TEST_CASE("semidirect product") {
    GradedFilter f(2, {Subset(2, true)});
    Situs anti2 = embed_cart(f, {"0", "1"}, 3);
    auto m = two_points(Rational(1), {Rational(2), Rational(1, 2)});
    Situs mm = embed_metric(m, 3);

    // A antidiscrete: semidirect = product
    Situs sd = semidirect_product(anti2, mm);
    Situs pr = product_situs(anti2, mm);
    for (int n = 1; n <= 3; ++n)
        CHECK(sd.filter(n).minimal() == pr.filter(n).minimal());

    // X antidiscrete: semidirect = product
    Situs sd2 = semidirect_product(mm, anti2);
    Situs pr2 = product_situs(mm, anti2);
    for (int n = 1; n <= 3; ++n)
        CHECK(sd2.filter(n).minimal() == pr2.filter(n).minimal());

    // identity is always a morphism A ⋉ X -> A × X
    Situs sd3 = semidirect_product(mm, mm);
    Situs pr3 = product_situs(mm, mm);
    SitusMap id;
    id.deg.resize(3);
    for (int n = 1; n <= 3; ++n) {
        id.deg[n - 1].resize(sd3.sset.size(n));
        for (int i = 0; i < sd3.sset.size(n); ++i) id.deg[n - 1][i] = i;
    }
    CHECK(check_morphism(id, sd3, pr3).ok);
}

TEST_CASE("archimedean simplices in a metric situs") {
    auto m = line3(); // grid {3, 3/2}
    Situs s = embed_metric(m, 3);
    auto arch = archimedean_simplices(s, 1);
    // (x,z) is a face of the actual chain (x,y,z) with consecutive steps 1 < 3/2
    CHECK(arch[1].contains(s.sset.index_of(2, "x,z")));
    // degenerate pairs are archimedean via constant refinements
    CHECK(arch[1].contains(s.sset.index_of(2, "x,x")));

    // two far points with no chain between them
    auto m2 = two_points(Rational(1), {Rational(2), Rational(1, 2)});
    Situs s2 = embed_metric(m2, 3);
    auto arch2 = archimedean_simplices(s2, 1);
    CHECK_FALSE(arch2[1].contains(s2.sset.index_of(2, "a,b")));
    CHECK(arch2[1].contains(s2.sset.index_of(2, "a,a")));

    // archimedean simplices are closed under the action
    for (int n = 1; n <= 3; ++n)
        for (int sx = 0; sx < s.sset.size(n); ++sx)
            if (arch[n - 1].contains(sx))
                for (int d = 1; d <= 3; ++d)
                    for (const auto& u : MonotoneMap::all(d, n))
                        CHECK(arch[d - 1].contains(s.sset.act(u, sx)));
}

TEST_CASE("symmetry") {
    auto m = two_points(Rational(1), {Rational(2), Rational(1, 2)});
    CHECK(is_symmetric(embed_metric(m, 3)));
    CHECK_FALSE(is_symmetric(embed_top(FiniteTopSpace::sierpinski(), 3)));
    CHECK(is_symmetric(antidiscrete_situs(representable_sset({"a", "b"}, 3))));
}

TEST_CASE("maps between different metric situses follow the two grids") {
    auto l = line3(); // grid {3, 3/2}
    FiniteMetricSpace m;
    m.points = {"p", "q"};
    m.dist = {{Rational(0), Rational(2)}, {Rational(2), Rational(0)}};
    m.grid = {Rational(3), Rational(1)};
    Situs sl = embed_metric(l, 3), sm = embed_metric(m, 3);
    for (const auto& f : all_maps(3, 2)) {
        bool modulus = true;
        for (const auto& eps : m.grid) {
            bool some = false;
            for (const auto& delta : l.grid) {
                bool works = true;
                for (int x = 0; x < 3 && works; ++x)
                    for (int y = 0; y < 3 && works; ++y)
                        if (l.dist[x][y] < delta && !(m.dist[f[x]][f[y]] < eps)) works = false;
                if (works) { some = true; break; }
            }
            if (!some) { modulus = false; break; }
        }
        SitusMap fm;
        fm.deg.resize(3);
        for (int n = 1; n <= 3; ++n) {
            fm.deg[n - 1].resize(sl.sset.size(n));
            for (int idx = 0; idx < sl.sset.size(n); ++idx) {
                auto vt = sl.sset.vertex_tuple(n, idx);
                std::vector<int> img(n);
                for (int i = 0; i < n; ++i) img[i] = f[vt[i]];
                fm.deg[n - 1][idx] = *sm.sset.simplex_with_vertices(n, img);
            }
        }
        CHECK(check_morphism(fm, sl, sm).ok == modulus);
    }
}

TEST_CASE("products, coproducts and shifts of valid situses stay valid") {
    auto m = two_points(Rational(1), {Rational(2), Rational(1, 2)});
    Situs a = embed_metric(m, 3);
    Situs b = embed_top(FiniteTopSpace::sierpinski(), 3);
    CHECK(validate_situs(product_situs(a, b)).ok);
    CHECK(validate_situs(coproduct_situs(a, b)).ok);
    CHECK(validate_situs(shift_situs(a)).ok);
    CHECK(validate_situs(shift_situs(b)).ok);
    CHECK(validate_situs(semidirect_product(b, a)).ok);

    // the counit is a morphism S[+1] -> S (at the lower truncation)
    Situs a4 = embed_metric(m, 4);
    Situs shifted = shift_situs(a4); // truncation 3
    SitusMap counit = shift_counit_map(a4);
    CHECK(check_morphism(counit, shifted, a).ok);
}

TEST_CASE("validate rejects a filter broken by a degeneracy") {
    Situs s = antidiscrete_situs(representable_sset({"a", "b"}, 2));
    // make the degree-2 filter principal at a single off-diagonal pair
    Subset only(4);
    only.add(s.sset.index_of(2, "a,b"));
    s.filters[1] = GradedFilter::principal(4, only);
    auto v = validate_situs(s);
    CHECK_FALSE(v.ok);
    CHECK(v.witness.find("not continuous") != std::string::npos);
}
