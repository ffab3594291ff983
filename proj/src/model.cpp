#include "situs/model.hpp"

#include <algorithm>
#include <sstream>

namespace situs {

int FiniteStructure::index_of(const std::string& l) const {
    for (size_t i = 0; i < universe.size(); ++i)
        if (universe[i] == l) return (int)i;
    throw DomainError("no element '" + l + "' in the universe");
}

void FiniteStructure::validate() const {
    std::set<std::string> seen;
    for (const auto& l : universe)
        if (!seen.insert(l).second) throw DomainError("duplicate universe element: " + l);
    for (const auto& [sym, tuples] : relations) {
        auto it = arities.find(sym);
        if (it == arities.end()) throw DomainError("relation without arity: " + sym);
        for (const auto& t : tuples) {
            if ((int)t.size() != it->second) throw DomainError("tuple arity mismatch in " + sym);
            for (int v : t)
                if (v < 0 || v >= (int)universe.size())
                    throw DomainError("tuple element out of range in " + sym);
        }
    }
}

FiniteStructure FiniteStructure::linear_order(int n) {
    FiniteStructure m;
    for (int i = 1; i <= n; ++i) m.universe.push_back(std::to_string(i));
    m.arities["<"] = 2;
    auto& lt = m.relations["<"];
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) lt.insert({i, j});
    return m;
}

int QFFormula::arity() const {
    int a = 0;
    if (kind == Kind::Atom) {
        for (const auto& [v, lbl] : terms)
            if (lbl.empty()) a = std::max(a, v);
    } else {
        for (const auto& s : sub) a = std::max(a, s->arity());
    }
    return a;
}

bool QFFormula::eval(const FiniteStructure& m, const std::vector<int>& assignment) const {
    switch (kind) {
        case Kind::And: return sub[0]->eval(m, assignment) && sub[1]->eval(m, assignment);
        case Kind::Or: return sub[0]->eval(m, assignment) || sub[1]->eval(m, assignment);
        case Kind::Not: return !sub[0]->eval(m, assignment);
        case Kind::Atom: {
            std::vector<int> args;
            for (const auto& [v, lbl] : terms) {
                if (lbl.empty()) {
                    if (v < 1 || v > (int)assignment.size())
                        throw DomainError("variable x" + std::to_string(v) + " unbound");
                    args.push_back(assignment[v - 1]);
                } else {
                    args.push_back(m.index_of(lbl));
                }
            }
            if (rel == "=") {
                if (args.size() != 2) throw DomainError("equality needs two terms");
                return args[0] == args[1];
            }
            auto it = m.relations.find(rel);
            if (it == m.relations.end()) throw DomainError("unknown relation: " + rel);
            return it->second.count(args) > 0;
        }
    }
    throw DomainError("bad formula node");
}

namespace {

std::vector<std::string> tokenize(const std::string& text) {
    std::vector<std::string> toks;
    std::string cur;
    for (char ch : text) {
        if (ch == '(' || ch == ')') {
            if (!cur.empty()) { toks.push_back(cur); cur.clear(); }
            toks.push_back(std::string(1, ch));
        } else if (isspace((unsigned char)ch)) {
            if (!cur.empty()) { toks.push_back(cur); cur.clear(); }
        } else {
            cur.push_back(ch);
        }
    }
    if (!cur.empty()) toks.push_back(cur);
    return toks;
}

std::pair<int, std::string> parse_term(const std::string& tok) {
    if (tok.size() >= 2 && tok[0] == 'x' && std::all_of(tok.begin() + 1, tok.end(), ::isdigit))
        return {std::stoi(tok.substr(1)), ""};
    return {0, tok};
}

QFFormula parse_expr(const std::vector<std::string>& toks, size_t& pos) {
    if (pos >= toks.size()) throw DomainError("formula ends unexpectedly");
    if (toks[pos] != "(") throw DomainError("formula: expected '(' near " + toks[pos]);
    ++pos;
    if (pos >= toks.size()) throw DomainError("formula ends unexpectedly");
    std::string head = toks[pos++];
    QFFormula f;
    if (head == "and" || head == "or" || head == "not") {
        f.kind = head == "and" ? QFFormula::Kind::And
                               : head == "or" ? QFFormula::Kind::Or : QFFormula::Kind::Not;
        int want = head == "not" ? 1 : 2;
        for (int i = 0; i < want; ++i)
            f.sub.push_back(std::make_shared<QFFormula>(parse_expr(toks, pos)));
    } else {
        f.kind = QFFormula::Kind::Atom;
        f.rel = head;
        while (pos < toks.size() && toks[pos] != ")") f.terms.push_back(parse_term(toks[pos++]));
        if (f.terms.empty()) throw DomainError("atom without terms: " + head);
    }
    if (pos >= toks.size() || toks[pos] != ")") throw DomainError("formula: missing ')'");
    ++pos;
    return f;
}

} // namespace

QFFormula QFFormula::parse(const std::string& text) {
    auto toks = tokenize(text);
    size_t pos = 0;
    QFFormula f = parse_expr(toks, pos);
    if (pos != toks.size()) throw DomainError("trailing tokens in formula");
    return f;
}

std::string QFFormula::str() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::And: os << "(and " << sub[0]->str() << " " << sub[1]->str() << ")"; break;
        case Kind::Or: os << "(or " << sub[0]->str() << " " << sub[1]->str() << ")"; break;
        case Kind::Not: os << "(not " << sub[0]->str() << ")"; break;
        case Kind::Atom: {
            os << "(" << rel;
            for (const auto& [v, lbl] : terms) os << " " << (lbl.empty() ? "x" + std::to_string(v) : lbl);
            os << ")";
            break;
        }
    }
    return os.str();
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

// strictly increasing r-subsets of {0..len-1}
void increasing_tuples(int len, int r, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if ((int)cur.size() == r) {
        out.push_back(cur);
        return;
    }
    int lo = cur.empty() ? 0 : cur.back() + 1;
    for (int v = lo; v < len; ++v) {
        cur.push_back(v);
        increasing_tuples(len, r, cur, out);
        cur.pop_back();
    }
}

} // namespace

Subset indiscernibility_grade(const FiniteStructure& m, const QFFormula& phi, int seq_len) {
    int k = (int)m.universe.size();
    int r = phi.arity();
    long long total = 1;
    for (int i = 0; i < seq_len; ++i) total *= k;
    Subset out((int)total);
    std::vector<std::vector<int>> idx_tuples;
    std::vector<int> cur;
    if (r <= seq_len) increasing_tuples(seq_len, r, cur, idx_tuples);
    for (int idx = 0; idx < (int)total; ++idx) {
        auto seq = decode(idx, k, seq_len);
        int seen = -1;
        bool homogeneous = true;
        for (const auto& it : idx_tuples) {
            std::vector<int> args;
            bool distinct = true;
            for (int pos : it) {
                for (int prev : args)
                    if (prev == seq[pos]) distinct = false;
                args.push_back(seq[pos]);
            }
            if (!distinct) continue;
            int val = phi.eval(m, args) ? 1 : 0;
            if (seen < 0) seen = val;
            else if (val != seen) { homogeneous = false; break; }
        }
        if (homogeneous) out.add(idx);
    }
    return out;
}

Situs stone_situs(const FiniteStructure& m, const std::vector<std::string>& params,
                  const std::vector<QFFormula>& phis, int trunc) {
    m.validate();
    for (const auto& p : params) m.index_of(p); // parameters must name elements
    Situs s;
    s.sset = representable_sset(m.universe, trunc);
    for (int n = 1; n <= trunc; ++n) {
        int sz = s.sset.size(n);
        std::vector<Subset> grades{Subset(sz, true)};
        Subset acc(sz, true);
        for (const auto& phi : phis) {
            acc = acc.intersect(indiscernibility_grade(m, phi, n));
            grades.push_back(acc);
        }
        s.filters.emplace_back(sz, grades);
    }
    return s;
}

StoneQuotient stone_hausdorff_quotient(const Situs& stone, const FiniteStructure& m,
                                       const std::vector<QFFormula>& phis) {
    StoneQuotient q;
    q.topologised = topologise(stone);
    const auto& t = q.topologised;
    int n = t.size();

    // topological indistinguishability blocks
    std::vector<int> block(n, -1);
    int next = 0;
    for (int i = 0; i < n; ++i) {
        if (block[i] >= 0) continue;
        block[i] = next;
        for (int j = i + 1; j < n; ++j) {
            if (block[j] >= 0) continue;
            bool same = true;
            for (const auto& u : t.opens)
                if (u.contains(i) != u.contains(j)) { same = false; break; }
            if (same) block[j] = next;
        }
        ++next;
    }
    q.classes.assign(next, {});
    for (int i = 0; i < n; ++i) q.classes[block[i]].push_back(t.points[i]);

    // direct qf 1-types over the unary formulas of Φ
    std::map<std::vector<int>, std::vector<std::string>> types;
    for (int a = 0; a < (int)m.universe.size(); ++a) {
        std::vector<int> sig;
        for (const auto& phi : phis) {
            if (phi.arity() > 1) continue;
            sig.push_back(phi.eval(m, {a}) ? 1 : 0);
        }
        types[sig].push_back(m.universe[a]);
    }
    for (auto& [sig, members] : types) q.type_classes.push_back(members);

    auto key = [](std::vector<std::vector<std::string>> blocks) {
        for (auto& b : blocks) std::sort(b.begin(), b.end());
        std::sort(blocks.begin(), blocks.end());
        return blocks;
    };
    q.match = key(q.classes) == key(q.type_classes);
    return q;
}

} // namespace situs
