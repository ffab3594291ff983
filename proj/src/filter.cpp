#include "situs/filter.hpp"

#include <algorithm>
#include <set>

namespace situs {

Rational Rational::parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        long long p = std::stoll(s.substr(0, slash));
        long long q = std::stoll(s.substr(slash + 1));
        return Rational(p, q);
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
        long long q = 1;
        for (size_t i = 0; i < fp.size(); ++i) q *= 10;
        long long whole = ip.empty() || ip == "-" ? 0 : std::stoll(ip);
        bool neg = !ip.empty() && ip[0] == '-';
        long long frac = fp.empty() ? 0 : std::stoll(fp);
        long long p = whole * q + (neg ? -frac : frac);
        return Rational(p, q);
    }
    return Rational(std::stoll(s));
}

Carrier::Carrier(std::vector<std::string> ls) : labels(std::move(ls)) {
    std::set<std::string> seen;
    for (const auto& l : labels)
        if (!seen.insert(l).second) throw DomainError("carrier labels not pairwise distinct: " + l);
}

int Carrier::index_of(const std::string& l) const {
    for (size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == l) return (int)i;
    throw DomainError("label not in carrier: " + l);
}

GradedFilter::GradedFilter(int n, std::vector<Subset> gs) : carrier_size(n), grades(std::move(gs)) {
    if (grades.empty()) throw DomainError("graded filter needs a nonempty chain");
    for (const auto& g : grades)
        if (g.universe() != n) throw DomainError("grade universe does not match carrier");
    normalize();
}

GradedFilter GradedFilter::antidiscrete(int n) {
    return GradedFilter(n, {Subset(n, true)});
}

GradedFilter GradedFilter::principal(int n, const Subset& s) {
    return GradedFilter(n, {Subset(n, true), s});
}

GradedFilter GradedFilter::principal_at(int n, int point) {
    Subset s(n);
    s.add(point);
    return principal(n, s);
}

void GradedFilter::normalize() {
    for (size_t i = 1; i < grades.size(); ++i) grades[i] = grades[i].intersect(grades[i - 1]);
}

bool is_neighbourhood(const GradedFilter& f, const Subset& s, Semantics sem) {
    if (s.universe() != f.carrier_size) throw DomainError("subset not over the filter's carrier");
    if (sem == Semantics::Generated) return s.contains_all(f.minimal());
    for (const auto& g : f.grades)
        if (s.contains_all(g)) return true;
    return false;
}

ContinuityWitness check_continuous(const std::vector<int>& map, const GradedFilter& src,
                                   const GradedFilter& dst, Semantics sem) {
    if ((int)map.size() != src.carrier_size) throw DomainError("map not total on source carrier");
    ContinuityWitness w;
    if (sem == Semantics::Generated) {
        Subset img = src.minimal().image(map, dst.carrier_size);
        w.ok = dst.minimal().contains_all(img);
        w.grade_witness.assign(dst.chain_length(), src.chain_length() - 1);
        if (!w.ok) w.failing_grade = dst.chain_length() - 1;
        return w;
    }
    w.ok = true;
    for (int i = 0; i < dst.chain_length(); ++i) {
        int found = -1;
        for (int j = 0; j < src.chain_length(); ++j) {
            Subset img = src.grades[j].image(map, dst.carrier_size);
            if (dst.grades[i].contains_all(img)) { found = j; break; }
        }
        w.grade_witness.push_back(found);
        if (found < 0) { w.ok = false; w.failing_grade = i; return w; }
    }
    return w;
}

GradedFilter product_filter(const GradedFilter& f, const GradedFilter& g) {
    int n = f.carrier_size, m = g.carrier_size;
    int len = std::max(f.chain_length(), g.chain_length());
    std::vector<Subset> grades;
    for (int t = 0; t < len; ++t) {
        Subset s(n * m);
        const Subset &a = f.grade(t), &b = g.grade(t);
        for (int i = 0; i < n; ++i)
            if (a.contains(i))
                for (int j = 0; j < m; ++j)
                    if (b.contains(j)) s.add(i * m + j);
        grades.push_back(s);
    }
    return GradedFilter(n * m, grades);
}

GradedFilter pullback_filter(const std::vector<std::vector<int>>& maps,
                             const std::vector<const GradedFilter*>& targets, int source_size) {
    if (maps.size() != targets.size()) throw DomainError("pullback arity mismatch");
    int len = 1;
    for (auto* t : targets) len = std::max(len, t->chain_length());
    std::vector<Subset> grades;
    for (int t = 0; t < len; ++t) {
        Subset s(source_size, true);
        for (size_t k = 0; k < maps.size(); ++k) {
            if ((int)maps[k].size() != source_size) throw DomainError("pullback map not total");
            s = s.intersect(targets[k]->grade(t).preimage(maps[k]));
        }
        grades.push_back(s);
    }
    return GradedFilter(source_size, grades);
}

GradedFilter pushforward_filter(const std::vector<int>& map, const GradedFilter& f, int target_size) {
    if ((int)map.size() != f.carrier_size) throw DomainError("pushforward map not total");
    std::vector<Subset> grades;
    for (const auto& g : f.grades) grades.push_back(g.image(map, target_size));
    return GradedFilter(target_size, grades);
}

GradedFilter coproduct_filter(const GradedFilter& f, const GradedFilter& g) {
    int n = f.carrier_size, m = g.carrier_size;
    int len = std::max(f.chain_length(), g.chain_length());
    std::vector<Subset> grades;
    for (int t = 0; t < len; ++t) {
        Subset s(n + m);
        for (int i = 0; i < n; ++i)
            if (f.grade(t).contains(i)) s.add(i);
        for (int j = 0; j < m; ++j)
            if (g.grade(t).contains(j)) s.add(n + j);
        grades.push_back(s);
    }
    return GradedFilter(n + m, grades);
}

bool is_ultrafilter(const GradedFilter& f) {
    const Subset& min = f.minimal();
    if (min.empty()) return false; // improper
    bool by_grade = min.count() == 1;
    // Chromatic route: every 2-colouring has a monochromatic neighbourhood.
    bool by_colouring = true;
    int n = f.carrier_size;
    if (n <= 20) {
        for (uint32_t mask = 0; mask < (1u << n) && by_colouring; ++mask) {
            Subset a(n), b(n);
            for (int i = 0; i < n; ++i) (mask >> i & 1 ? a : b).add(i);
            if (!a.contains_all(min) && !b.contains_all(min)) by_colouring = false;
        }
        if (by_grade != by_colouring)
            throw DomainError("ultrafilter cross-check disagreement"); // unreachable
    }
    return by_grade;
}

bool finer_than(const GradedFilter& f, const GradedFilter& g) {
    if (f.carrier_size != g.carrier_size) throw DomainError("finer_than carrier mismatch");
    return g.minimal().contains_all(f.minimal());
}

} // namespace situs
