#ifndef SITUS_TEST_HELPERS_HPP
#define SITUS_TEST_HELPERS_HPP

#include <functional>
#include <random>
#include <vector>

#include "situs/filter.hpp"
#include "situs/situs.hpp"

namespace situs::test {

inline std::vector<Subset> all_subsets(int n) {
    std::vector<Subset> out;
    for (uint32_t mask = 0; mask < (1u << n); ++mask) {
        Subset s(n);
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1) s.add(i);
        out.push_back(s);
    }
    return out;
}

// Every graded filter on an n-point carrier with a strictly descending chain
// of at most max_len grades (normalization makes longer chains redundant).
inline std::vector<GradedFilter> all_graded_filters(int n, int max_len = 3) {
    std::vector<GradedFilter> out;
    auto subs = all_subsets(n);
    std::vector<Subset> chain;
    std::function<void()> rec = [&]() {
        if (!chain.empty()) out.emplace_back(n, chain);
        if ((int)chain.size() == max_len) return;
        for (const auto& s : subs) {
            if (!chain.empty()) {
                if (!chain.back().contains_all(s) || s == chain.back()) continue;
            }
            chain.push_back(s);
            rec();
            chain.pop_back();
        }
    };
    rec();
    return out;
}

inline std::vector<std::vector<int>> all_maps(int from, int to) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(from, 0);
    if (to == 0 && from > 0) return out;
    while (true) {
        out.push_back(cur);
        int i = from - 1;
        while (i >= 0 && cur[i] == to - 1) --i;
        if (i < 0) break;
        cur[i]++;
        for (int j = i + 1; j < from; ++j) cur[j] = 0;
    }
    if (from == 0) out.assign(1, {});
    return out;
}

// Neighbourhood-enumeration oracle for continuity: the preimage of every
// neighbourhood is a neighbourhood (Generated reading).
inline bool continuity_oracle(const std::vector<int>& map, const GradedFilter& src,
                              const GradedFilter& dst) {
    for (const auto& s : all_subsets(dst.carrier_size)) {
        if (!is_neighbourhood(dst, s, Semantics::Generated)) continue;
        if (!is_neighbourhood(src, s.preimage(map), Semantics::Generated)) return false;
    }
    return true;
}

// All labeled topologies on the given points.
inline std::vector<FiniteTopSpace> all_topologies(const std::vector<std::string>& pts) {
    int n = (int)pts.size();
    auto subs = all_subsets(n);
    std::vector<FiniteTopSpace> out;
    for (uint64_t mask = 0; mask < (1ull << subs.size()); ++mask) {
        std::vector<Subset> opens;
        for (size_t i = 0; i < subs.size(); ++i)
            if (mask >> i & 1) opens.push_back(subs[i]);
        FiniteTopSpace t;
        t.points = pts;
        t.opens = opens;
        try {
            t.validate();
        } catch (const DomainError&) {
            continue;
        }
        out.push_back(t);
    }
    return out;
}

inline bool top_map_continuous(const FiniteTopSpace& src, const FiniteTopSpace& dst,
                               const std::vector<int>& f) {
    for (const auto& u : dst.opens) {
        Subset pre(src.size());
        for (int x = 0; x < src.size(); ++x)
            if (u.contains(f[x])) pre.add(x);
        if (!src.is_open(pre)) return false;
    }
    return true;
}

} // namespace situs::test

#endif
