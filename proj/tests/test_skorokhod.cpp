#include <doctest.h>

#include <algorithm>
#include <set>

#include "helpers.hpp"
#include "situs/skorokhod.hpp"

using namespace situs;
using namespace situs::test;

TEST_CASE("grid paths and the skorokhod distance") {
    // N=1 on the 8-grid: jumps at 1/4 and 3/4 are at distance 1/2
    GridPath f(1, 8, {2}), g(1, 8, {6});
    CHECK(skorokhod_distance(f, g) == Rational(1, 2));
    CHECK(skorokhod_distance_bruteforce(f, g) == Rational(1, 2));
    CHECK(skorokhod_distance(f, f) == Rational(0));
    CHECK(skorokhod_distance_bruteforce(f, f) == Rational(0));

    // brute force agrees with the jump-coordinate formula; symmetry and the
    // triangle inequality hold on the full 4-grid path set, N <= 2
    for (int n = 1; n <= 2; ++n) {
        auto paths = GridPath::all(n, 4);
        for (size_t i = 0; i < paths.size(); ++i)
            for (size_t j = 0; j < paths.size(); ++j) {
                Rational direct = skorokhod_distance(paths[i], paths[j]);
                CHECK(skorokhod_distance_bruteforce(paths[i], paths[j]) == direct);
                CHECK(skorokhod_distance(paths[j], paths[i]) == direct);
                for (size_t k = 0; k < paths.size(); ++k)
                    CHECK(skorokhod_distance(paths[i], paths[k]) <=
                          direct + skorokhod_distance(paths[j], paths[k]));
            }
    }
}

TEST_CASE("realized simplices") {
    auto m1 = realize_simplex(1, 4);
    m1.validate();
    CHECK(m1.size() == 5);
    for (int i = 0; i + 1 < 5; ++i) CHECK(m1.dist[i][i + 1] == Rational(1, 4));

    auto m0 = realize_simplex(0, 4);
    CHECK(m0.size() == 1);

    // embedding into |Δ_N| by jump coordinates is exact in the max metric
    auto m2 = realize_simplex(2, 4);
    auto paths = GridPath::all(2, 4);
    for (size_t i = 0; i < paths.size(); ++i)
        for (size_t j = 0; j < paths.size(); ++j) {
            Rational maxc(0);
            for (int t = 0; t < 2; ++t) {
                Rational d = (paths[i].jump(t) - paths[j].jump(t)).abs();
                if (maxc < d) maxc = d;
            }
            CHECK(m2.dist[i][j] == maxc);
        }
}

TEST_CASE("skorokhod neighbourhoods") {
    // X = interval on a 3-point grid, Y = Δ_1 with the diagonal filter
    auto interval = interval_situs({"0", "h", "1"}, 4);
    Situs& x = interval.situs;
    GradedFilter anti = GradedFilter::antidiscrete(2);
    Situs y = embed_diag(anti, {"0", "1"}, 4);

    HomSet homs = HomSet::enumerate(x.sset, y.sset);
    // sset maps interval -> Δ_1-representable = vertex maps {0,h,1} -> {0,1};
    // Yoneda would give monotone maps only for the corepresented target
    CHECK(homs.maps.size() == 8);

    // ε the full set: every map qualifies
    Subset eps_full(y.sset.size(1), true);
    Subset delta(x.sset.size(2), true);
    auto nb = skorokhod_neighbourhood(homs, x, delta, 2, y, eps_full, 1);
    CHECK(nb.is_full());

    // n=1 with every 0-simplex small: every map is εδ-small
    Subset eps_all(y.sset.size(1), true);
    auto nb1 = skorokhod_neighbourhood(homs, x, Subset(x.sset.size(2), true), 2, y, eps_all, 1);
    CHECK(nb1.is_full());

    CHECK_THROWS_AS(skorokhod_neighbourhood(homs, x, delta, 1, y, eps_full, 1), DomainError);
}

TEST_CASE("skorokhod neighbourhood matches the jump-window analysis") {
    // Pairs (f,g): interval × Δ_1 -> Δ_1-diag; membership in an
    // εδ-neighbourhood with diagonal ε matches the direct window condition of
    // the dimension-1 analysis, brute-forced over fronts and continuations.
    auto interval = interval_situs({"0", "h", "1"}, 4);
    Situs& x = interval.situs;
    Situs y = diag_situs(standard_simplex(1, 4));
    auto ms = mapping_space(x, y);
    const auto& pair_homs = ms.homs[1];
    Situs prod = product_situs(x, antidiscrete_situs(standard_simplex(1, 4)));

    // Yoneda: degree-1 carrier = monotone maps 3_≤ -> 2_≤
    CHECK(ms.situs.sset.size(1) == 4);

    // εδ data: ε = diagonal grade of Y at degree 2; δ = a product grade at
    // degree 4 whose interval part has window d.
    Subset eps = y.filter(2).minimal();
    for (int d_idx = 0; d_idx < prod.filter(4).chain_length(); ++d_idx) {
        Subset delta = prod.filter(4).grades[d_idx];
        Subset nb = skorokhod_neighbourhood(pair_homs, prod, delta, 4, y, eps, 2);

        // direct oracle at value level: decode products into (t-tuple, θ) and
        // evaluate the tail equality from the two vertex maps, independent of
        // the hom-set plumbing.
        int theta2 = (int)MonotoneMap::all(2, 2).size();
        int theta4 = (int)MonotoneMap::all(4, 2).size();
        auto thetas2 = MonotoneMap::all(2, 2);
        auto thetas4 = MonotoneMap::all(4, 2);
        for (size_t pi = 0; pi < pair_homs.maps.size(); ++pi) {
            // the two legs of the pair: vertex maps L -> {0,1} of its faces
            int f_elem = ms.situs.sset.face(2, (int)pi, {1});
            int g_elem = ms.situs.sset.face(2, (int)pi, {2});
            auto leg = [&](int elem, int t) {
                // degree-1 hom element applied to the vertex t of the interval
                return y.sset.vertex_tuple(1, ms.homs[0].maps[elem][0][t])[0];
            };
            auto value = [&](int which, int t) { return leg(which ? g_elem : f_elem, t); };

            bool member = false;
            for (int d0_idx = 0; d0_idx < prod.filter(2).chain_length() && !member; ++d0_idx) {
                const Subset& delta0 = prod.filter(2).grades[d0_idx];
                bool all = true;
                for (int front : delta0.elements()) {
                    int xt = front / theta2, th = front % theta2;
                    auto tf = x.sset.vertex_tuple(2, xt);
                    const auto& theta_front = thetas2[th].values;
                    bool has = false;
                    for (int cont : delta.elements()) {
                        int xt4 = cont / theta4, th4 = cont % theta4;
                        auto tc = x.sset.vertex_tuple(4, xt4);
                        const auto& theta_cont = thetas4[th4].values;
                        if (tc[0] != tf[0] || tc[1] != tf[1]) continue;
                        if (theta_cont[0] != theta_front[0] || theta_cont[1] != theta_front[1])
                            continue;
                        if (value(theta_cont[2], tc[2]) == value(theta_cont[3], tc[3])) {
                            has = true;
                            break;
                        }
                    }
                    if (!has) { all = false; break; }
                }
                if (all) member = true;
            }
            CHECK(nb.contains((int)pi) == member);
        }

        // enlarging δ enlarges the neighbourhood
        if (d_idx > 0) {
            Subset prev = skorokhod_neighbourhood(pair_homs, prod, prod.filter(4).grades[d_idx - 1],
                                                  4, y, eps, 2);
            CHECK(prev.contains_all(nb));
        }
    }
}

TEST_CASE("mapping space basics") {
    // mapping space from Δ_0 has the carrier of Y degree-wise
    Situs d0 = antidiscrete_situs(standard_simplex(0, 3));
    auto m = FiniteMetricSpace{};
    m.points = {"a", "b"};
    m.dist = {{Rational(0), Rational(1)}, {Rational(1), Rational(0)}};
    m.grid = {Rational(2), Rational(1, 2)};
    Situs y = embed_metric(m, 3);
    auto ms = mapping_space(d0, y);
    for (int n = 1; n <= 3; ++n) CHECK(ms.situs.sset.size(n) == y.sset.size(n));
    CHECK_FALSE(ms.situs.sset.functoriality_failure());

    // grades are genuine descending chains
    for (int n = 1; n <= 3; ++n) {
        const auto& f = ms.situs.filter(n);
        for (int i = 1; i < f.chain_length(); ++i)
            CHECK(f.grades[i - 1].contains_all(f.grades[i]));
    }

    // degree-1 carrier of the mapping space from the interval into Δ_N-diag
    // is the set of monotone maps grid -> (N+1), by Yoneda
    auto interval = interval_situs({"0", "1"}, 3);
    Situs delta1 = diag_situs(standard_simplex(1, 3));
    auto ms2 = mapping_space(interval.situs, delta1);
    CHECK(ms2.situs.sset.size(1) == 3); // monotone maps 2_≤ -> 2_≤

    // the situs invariant on the mapping space
    auto v = validate_situs(ms.situs);
    CHECK(v.ok);
    auto v2 = validate_situs(ms2.situs);
    CHECK(v2.ok);
}

TEST_CASE("evaluation is a bijection on small instances") {
    Situs a = antidiscrete_situs(standard_simplex(0, 2));
    Situs x = antidiscrete_situs(standard_simplex(0, 2));
    GradedFilter anti2 = GradedFilter::antidiscrete(2);
    Situs y = embed_cart(anti2, {"0", "1"}, 2);

    auto inner = mapping_space(x, y);
    auto lhs = HomSet::enumerate(a.sset, inner.situs.sset); // Hom(A, Hom(X,Y))
    Situs ax = product_situs(a, x);
    auto rhs = HomSet::enumerate(ax.sset, y.sset); // Hom(A×X, Y)
    CHECK(lhs.maps.size() == rhs.maps.size());

    // the evaluation map itself: ev(F)_n(a, x) = F_n(a) applied at (x, id_n)
    std::set<int> images;
    for (const auto& bigf : lhs.maps) {
        SSetMap ev(2);
        bool total = true;
        for (int n = 1; n <= 2 && total; ++n) {
            auto ids = MonotoneMap::all(n, n);
            int id_idx =
                (int)(std::find(ids.begin(), ids.end(), MonotoneMap::identity(n)) - ids.begin());
            int xs = x.sset.size(n), ds = (int)ids.size();
            ev[n - 1].resize(ax.sset.size(n));
            for (int ai = 0; ai < a.sset.size(n); ++ai) {
                const auto& inner_map = inner.homs[n - 1].maps[bigf[n - 1][ai]];
                for (int xi = 0; xi < xs; ++xi)
                    ev[n - 1][ai * xs + xi] = inner_map[n - 1][xi * ds + id_idx];
            }
        }
        REQUIRE(total);
        int idx = rhs.index_of(ev);
        CHECK(idx >= 0);
        CHECK(images.insert(idx).second); // injective; counts match, so bijective
        // continuity is checked and reported, not asserted
        SitusMap em{ev};
        Situs ms_as_situs = inner.situs;
        auto continuity = check_morphism(em, ax, y);
        MESSAGE("evaluation image continuity: ", continuity.ok);
    }
}

TEST_CASE("alternative mapping-space variant stays behind its flag") {
    Situs x = antidiscrete_situs(standard_simplex(0, 2));
    auto m = FiniteMetricSpace{};
    m.points = {"a", "b"};
    m.dist = {{Rational(0), Rational(1)}, {Rational(1), Rational(0)}};
    m.grid = {Rational(2), Rational(1, 2)};
    Situs y = embed_metric(m, 2);

    auto standard = mapping_space(x, y, kHomsetGuard, MappingVariant::Skorokhod);
    auto alt = mapping_space(x, y, kHomsetGuard, MappingVariant::EarlyLate);
    CHECK(standard.situs.sset.labels == alt.situs.sset.labels);
    for (int n = 1; n <= 2; ++n) {
        const auto& f = alt.situs.filter(n);
        for (int i = 1; i < f.chain_length(); ++i)
            CHECK(f.grades[i - 1].contains_all(f.grades[i])); // a genuine chain
    }
}

TEST_CASE("skorokhod homotopy") {
    // disconnected antidiscrete target: constants into distinct components are
    // not homotopic; equal maps are
    Situs x = antidiscrete_situs(standard_simplex(0, 2));
    Situs y = antidiscrete_situs(coproduct_sset(standard_simplex(0, 2), standard_simplex(0, 2)));
    auto ms = mapping_space(x, y);
    CHECK(ms.situs.sset.size(1) == 2); // two constants

    auto pair_ff = mapping_space_pair(ms, 0, 0);
    REQUIRE(pair_ff);
    CHECK(skorokhod_homotopic(ms, *pair_ff, 2));

    auto pair_fg = mapping_space_pair(ms, 0, 1);
    // the mixed pair is not even a simplex of the mapping space: Hom(X×Δ_1, Y)
    // cannot straddle components
    if (pair_fg) CHECK_FALSE(skorokhod_homotopic(ms, *pair_fg, 2));

    // connected antidiscrete target: any two maps are homotopic, matching the
    // direct reachability oracle (some 2-simplex has both as faces)
    Situs y2 = antidiscrete_situs(representable_sset({"0", "1"}, 2));
    auto ms2 = mapping_space(x, y2);
    for (int f = 0; f < ms2.situs.sset.size(1); ++f)
        for (int g = 0; g < ms2.situs.sset.size(1); ++g) {
            auto pr = mapping_space_pair(ms2, f, g);
            REQUIRE(pr);
            bool reachable = false;
            const auto& v1 = ms2.situs.sset.table(MonotoneMap(1, 2, {0}));
            const auto& v2 = ms2.situs.sset.table(MonotoneMap(1, 2, {1}));
            for (int e = 0; e < ms2.situs.sset.size(2); ++e)
                if (v1[e] == f && v2[e] == g) reachable = true;
            CHECK(skorokhod_homotopic(ms2, *pr, 2) == reachable);
        }
}
