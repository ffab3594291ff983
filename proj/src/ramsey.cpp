#include "situs/ramsey.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <thread>

namespace situs {

HomogeneousSubsset homogeneous_subsset(const TruncatedSSet& x, const Colouring& c) {
    int n = c.degree;
    if (n < 1 || n > x.trunc) throw DomainError("colouring degree outside truncation");
    if ((int)c.colour.size() != x.size(n)) throw DomainError("colouring not total");
    HomogeneousSubsset h;
    for (int d = 1; d <= x.trunc; ++d) {
        Subset members(x.size(d));
        std::vector<int> col(x.size(d), -1);
        auto tuples = MonotoneMap::all(n, d);
        for (int s = 0; s < x.size(d); ++s) {
            bool homogeneous = true;
            int seen = -1;
            for (const auto& u : tuples) {
                int face = x.act(u, s);
                if (x.is_degenerate(n, face)) continue;
                int cc = c.colour[face];
                if (seen < 0) seen = cc;
                else if (cc != seen) { homogeneous = false; break; }
            }
            if (homogeneous) {
                members.add(s);
                col[s] = seen;
            }
        }
        h.members.push_back(members);
        h.colour_of.push_back(col);
    }
    return h;
}

namespace {

// Unordered arity-subsets of {0..size-1}, lexicographic.
std::vector<std::vector<int>> subsets_of_size(int size, int arity) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int lo) {
        if ((int)cur.size() == arity) {
            out.push_back(cur);
            return;
        }
        for (int v = lo; v < size; ++v) {
            cur.push_back(v);
            rec(v + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

// Does the symmetric colouring admit a homogeneous target-subset?
bool has_homogeneous(const std::vector<std::vector<int>>& pairs_of_target,
                     const std::vector<int>& colour) {
    for (const auto& faces : pairs_of_target) {
        int c0 = colour[faces[0]];
        bool mono = true;
        for (size_t i = 1; i < faces.size(); ++i)
            if (colour[faces[i]] != c0) { mono = false; break; }
        if (mono) return true;
    }
    return false;
}

} // namespace

RamseyReport ramsey_check(int set_size, int colours, int arity, int target_degree,
                          long long budget, int jobs) {
    if (arity < 1 || target_degree < arity) throw DomainError("ramsey: need target >= arity >= 1");
    auto faces = subsets_of_size(set_size, arity);
    auto targets = subsets_of_size(set_size, target_degree);
    long long total = 1;
    for (size_t i = 0; i < faces.size(); ++i) {
        total *= colours;
        if (total > budget)
            throw SizeError("ramsey exhaustion over budget", total);
    }
    // arity-faces of each target subset, as indices into `faces`
    std::vector<std::vector<int>> face_lists;
    for (const auto& t : targets) {
        std::vector<int> fl;
        auto subs = subsets_of_size((int)t.size(), arity);
        for (const auto& s : subs) {
            std::vector<int> face;
            for (int i : s) face.push_back(t[i]);
            auto it = std::lower_bound(faces.begin(), faces.end(), face);
            fl.push_back((int)(it - faces.begin()));
        }
        face_lists.push_back(fl);
    }

    RamseyReport rep;
    rep.colourings_checked = total;
    std::atomic<long long> witness{-1};
    int workers = std::max(1, jobs);
    auto run = [&](long long lo, long long hi) {
        std::vector<int> colour(faces.size());
        for (long long code = lo; code < hi; ++code) {
            long long c = code;
            for (size_t i = 0; i < faces.size(); ++i) {
                colour[i] = (int)(c % colours);
                c /= colours;
            }
            if (!has_homogeneous(face_lists, colour)) {
                long long expect = -1;
                witness.compare_exchange_strong(expect, code);
                return;
            }
            if (witness.load() >= 0) return;
        }
    };
    if (workers == 1) {
        run(0, total);
    } else {
        std::vector<std::thread> threads;
        long long chunk = (total + workers - 1) / workers;
        for (int w = 0; w < workers; ++w)
            threads.emplace_back(run, w * chunk, std::min(total, (w + 1) * chunk));
        for (auto& t : threads) t.join();
    }
    // deterministic witness: the lexicographically least failing code
    if (witness.load() >= 0) {
        long long first = witness.load();
        std::vector<int> colour(faces.size());
        for (long long code = 0; code <= first; ++code) {
            long long c = code;
            for (size_t i = 0; i < faces.size(); ++i) {
                colour[i] = (int)(c % colours);
                c /= colours;
            }
            if (!has_homogeneous(face_lists, colour)) {
                rep.counterexample = colour;
                break;
            }
        }
        rep.holds = false;
    } else {
        rep.holds = true;
    }
    return rep;
}

} // namespace situs
