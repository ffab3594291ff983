#include "situs/json_io.hpp"

namespace situs {

namespace {

int label_index(const std::vector<std::string>& labels, const std::string& l) {
    for (size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == l) return (int)i;
    throw DomainError("unknown label: " + l);
}

Subset subset_from_json(const json& j, const std::vector<std::string>& labels) {
    Subset s((int)labels.size());
    for (const auto& l : j) s.add(label_index(labels, l.get<std::string>()));
    return s;
}

json subset_to_json(const Subset& s, const std::vector<std::string>& labels) {
    json out = json::array();
    for (int i : s.elements()) out.push_back(labels[i]);
    return out;
}

} // namespace

json filter_to_json(const GradedFilter& f, const std::vector<std::string>& labels) {
    json j;
    j["carrier"] = labels;
    j["grades"] = json::array();
    for (const auto& g : f.grades) j["grades"].push_back(subset_to_json(g, labels));
    return j;
}

GradedFilter filter_from_json(const json& j, const std::vector<std::string>& labels) {
    std::vector<Subset> grades;
    for (const auto& g : j.at("grades")) grades.push_back(subset_from_json(g, labels));
    return GradedFilter((int)labels.size(), grades);
}

std::pair<std::vector<std::string>, GradedFilter> filter_with_carrier_from_json(const json& j) {
    std::vector<std::string> labels = j.at("carrier").get<std::vector<std::string>>();
    Carrier check(labels); // enforces distinctness
    return {labels, filter_from_json(j, labels)};
}

json sset_to_json(const TruncatedSSet& x) {
    json j;
    j["truncation"] = x.trunc;
    json carriers = json::object();
    for (int n = 1; n <= x.trunc; ++n) carriers[std::to_string(n)] = x.labels[n - 1];
    j["carriers"] = carriers;
    json action = json::object();
    for (const auto& [u, table] : x.action) {
        json entry = json::object();
        for (int s = 0; s < (int)table.size(); ++s) entry[x.label(u.dst, s)] = x.label(u.src, table[s]);
        action[u.key()] = entry;
    }
    j["action"] = action;
    return j;
}

TruncatedSSet sset_from_json(const json& j) {
    TruncatedSSet x;
    x.trunc = j.at("truncation").get<int>();
    if (x.trunc < 1) throw DomainError("truncation must be >= 1");
    for (int n = 1; n <= x.trunc; ++n) {
        auto key = std::to_string(n);
        x.labels.push_back(j.at("carriers").at(key).get<std::vector<std::string>>());
    }
    for (auto it = j.at("action").begin(); it != j.at("action").end(); ++it) {
        MonotoneMap u = MonotoneMap::from_key(it.key());
        if (u.src > x.trunc || u.dst > x.trunc) throw DomainError("action key beyond truncation");
        std::vector<int> table(x.size(u.dst), -1);
        for (auto e = it.value().begin(); e != it.value().end(); ++e)
            table[x.index_of(u.dst, e.key())] = x.index_of(u.src, e.value().get<std::string>());
        for (int v : table)
            if (v < 0) throw DomainError("action table " + it.key() + " not total");
        x.action[u] = table;
    }
    // every monotone map within the truncation must be present
    for (int m = 1; m <= x.trunc; ++m)
        for (int n = 1; n <= x.trunc; ++n)
            for (const auto& u : MonotoneMap::all(m, n))
                if (!x.action.count(u)) throw DomainError("missing action table " + u.key());
    if (auto fail = x.functoriality_failure()) throw DomainError("action not functorial: " + *fail);
    return x;
}

json situs_to_json(const Situs& s) {
    json j = sset_to_json(s.sset);
    json filters = json::object();
    for (int n = 1; n <= s.trunc(); ++n)
        filters[std::to_string(n)] = filter_to_json(s.filter(n), s.sset.labels[n - 1]);
    j["filters"] = filters;
    j["semantics"] = s.sem == Semantics::Graded ? "graded" : "generated";
    return j;
}

Situs situs_from_json(const json& j, bool validate) {
    Situs s;
    s.sset = sset_from_json(j);
    for (int n = 1; n <= s.sset.trunc; ++n) {
        const auto& labels = s.sset.labels[n - 1];
        s.filters.push_back(filter_from_json(j.at("filters").at(std::to_string(n)), labels));
    }
    if (j.contains("semantics"))
        s.sem = j.at("semantics").get<std::string>() == "generated" ? Semantics::Generated
                                                                    : Semantics::Graded;
    if (validate) {
        auto v = validate_situs(s);
        if (!v.ok) throw DomainError("invalid situs: " + v.witness);
    }
    return s;
}

json top_to_json(const FiniteTopSpace& t) {
    json j;
    j["points"] = t.points;
    j["opens"] = json::array();
    for (const auto& u : t.opens) j["opens"].push_back(subset_to_json(u, t.points));
    return j;
}

FiniteTopSpace top_from_json(const json& j) {
    FiniteTopSpace t;
    t.points = j.at("points").get<std::vector<std::string>>();
    for (const auto& u : j.at("opens")) t.opens.push_back(subset_from_json(u, t.points));
    t.validate();
    return t;
}

json metric_to_json(const FiniteMetricSpace& m) {
    json j;
    j["points"] = m.points;
    j["dist"] = json::array();
    for (const auto& row : m.dist) {
        json r = json::array();
        for (const auto& d : row) r.push_back(d.str());
        j["dist"].push_back(r);
    }
    j["grid"] = json::array();
    for (const auto& e : m.grid) j["grid"].push_back(e.str());
    return j;
}

namespace {
Rational rational_from_json(const json& v) {
    if (v.is_number_integer()) return Rational(v.get<long long>());
    return Rational::parse(v.get<std::string>());
}
} // namespace

FiniteMetricSpace metric_from_json(const json& j) {
    FiniteMetricSpace m;
    m.points = j.at("points").get<std::vector<std::string>>();
    for (const auto& row : j.at("dist")) {
        std::vector<Rational> r;
        for (const auto& d : row) r.push_back(rational_from_json(d));
        m.dist.push_back(r);
    }
    for (const auto& e : j.at("grid")) m.grid.push_back(rational_from_json(e));
    m.validate();
    return m;
}

json structure_to_json(const FiniteStructure& m) {
    json j;
    j["universe"] = m.universe;
    json rels = json::object();
    for (const auto& [sym, tuples] : m.relations) {
        json list = json::array();
        for (const auto& t : tuples) {
            json tup = json::array();
            for (int v : t) tup.push_back(m.universe[v]);
            list.push_back(tup);
        }
        rels[sym] = list;
    }
    j["relations"] = rels;
    return j;
}

FiniteStructure structure_from_json(const json& j) {
    FiniteStructure m;
    m.universe = j.at("universe").get<std::vector<std::string>>();
    if (j.contains("relations"))
        for (auto it = j.at("relations").begin(); it != j.at("relations").end(); ++it) {
            auto& tuples = m.relations[it.key()];
            int arity = -1;
            for (const auto& t : it.value()) {
                std::vector<int> tup;
                for (const auto& l : t) tup.push_back(m.index_of(l.get<std::string>()));
                if (arity < 0) arity = (int)tup.size();
                if ((int)tup.size() != arity) throw DomainError("mixed arity in " + it.key());
                tuples.insert(tup);
            }
            m.arities[it.key()] = std::max(arity, 0);
        }
    m.validate();
    return m;
}

json morphism_to_json(const SitusMap& f, const Situs& src, const Situs& dst) {
    json maps = json::object();
    for (int n = 1; n <= src.trunc(); ++n) {
        json entry = json::object();
        for (int s = 0; s < src.sset.size(n); ++s)
            entry[src.sset.label(n, s)] = dst.sset.label(n, f.deg[n - 1][s]);
        maps[std::to_string(n)] = entry;
    }
    return json{{"maps", maps}};
}

SitusMap morphism_from_json(const json& j, const Situs& src, const Situs& dst) {
    SitusMap f;
    f.deg.resize(src.trunc());
    for (int n = 1; n <= src.trunc(); ++n) {
        f.deg[n - 1].assign(src.sset.size(n), -1);
        const auto& entry = j.at("maps").at(std::to_string(n));
        for (auto it = entry.begin(); it != entry.end(); ++it)
            f.deg[n - 1][src.sset.index_of(n, it.key())] =
                dst.sset.index_of(n, it.value().get<std::string>());
        for (int v : f.deg[n - 1])
            if (v < 0) throw DomainError("morphism not total at degree " + std::to_string(n));
    }
    return f;
}

json morphism_file_to_json(const MorphismFile& m) {
    json j;
    j["source"] = situs_to_json(m.source);
    j["target"] = situs_to_json(m.target);
    j["maps"] = morphism_to_json(m.map, m.source, m.target)["maps"];
    return j;
}

MorphismFile morphism_file_from_json(const json& j) {
    MorphismFile m;
    m.source = situs_from_json(j.at("source"));
    m.target = situs_from_json(j.at("target"));
    m.map = morphism_from_json(j, m.source, m.target);
    return m;
}

} // namespace situs
