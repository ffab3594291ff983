#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "situs/json_io.hpp"
#include "situs/lifting.hpp"
#include "situs/ramsey.hpp"
#include "situs/skorokhod.hpp"

namespace py = pybind11;
using namespace situs;

namespace {

json parse(const std::string& text) {
    return json::parse(text);
}

py::dict validate_py(const std::string& situs_json) {
    Situs s = situs_from_json(parse(situs_json), false);
    auto v = validate_situs(s);
    py::dict out;
    out["ok"] = v.ok;
    out["witness"] = v.witness;
    return out;
}

bool check_morphism_py(const std::string& map_json, const std::string& src_json,
                       const std::string& dst_json) {
    Situs src = situs_from_json(parse(src_json));
    Situs dst = situs_from_json(parse(dst_json));
    SitusMap f = morphism_from_json(parse(map_json), src, dst);
    return check_morphism(f, src, dst).ok;
}

py::dict ramsey_py(int size, int colours, int arity, int target, int jobs) {
    auto r = ramsey_check(size, colours, arity, target, 1 << 22, jobs);
    py::dict out;
    out["holds"] = r.holds;
    out["colourings_checked"] = r.colourings_checked;
    if (r.counterexample) out["counterexample"] = *r.counterexample;
    return out;
}

std::string skorokhod_distance_py(int n, int grid, const std::vector<std::string>& f_jumps,
                                  const std::vector<std::string>& g_jumps) {
    auto to_path = [&](const std::vector<std::string>& js) {
        std::vector<int> jumps;
        for (const auto& tok : js) {
            Rational r = Rational::parse(tok) * Rational(grid);
            if (r.den() != 1) throw DomainError("jump " + tok + " is not a multiple of 1/grid");
            jumps.push_back((int)r.num());
        }
        return GridPath(n, grid, jumps);
    };
    return skorokhod_distance(to_path(f_jumps), to_path(g_jumps)).str();
}

std::string realize_py(int n, int grid) {
    return metric_to_json(realize_simplex(n, grid)).dump();
}

py::dict limit_py(const std::string& space_json, const std::vector<std::string>& seq) {
    FiniteMetricSpace m = metric_from_json(parse(space_json));
    std::vector<int> a;
    for (const auto& tok : seq) {
        int idx = -1;
        for (size_t i = 0; i < m.points.size(); ++i)
            if (m.points[i] == tok) idx = (int)i;
        if (idx < 0) throw DomainError("sequence entry not a point: " + tok);
        a.push_back(idx);
    }
    py::dict out;
    out["cauchy"] = is_cauchy(a, m, 3);
    auto r = find_limit(a, m, 3);
    py::list all;
    for (int v : r.all) all.append(m.points[v]);
    out["limits"] = all;
    out["representative"] = r.representative ? py::object(py::str(m.points[*r.representative]))
                                             : py::object(py::none());
    return out;
}

py::dict pi0_py(const std::string& situs_json) {
    Situs s = situs_from_json(parse(situs_json));
    auto r = pi0(s);
    py::dict out;
    out["components"] = r.pi0.sset.size(1);
    out["pi0"] = situs_to_json(r.pi0).dump();
    return out;
}

py::dict compact_py(const std::string& top_json) {
    FiniteTopSpace t = top_from_json(parse(top_json));
    auto r = is_quasi_compact_concise(t, 3);
    py::dict out;
    out["ok"] = r.ok;
    py::dict limits;
    for (size_t u = 0; u < r.limits.size(); ++u) {
        py::list l;
        for (int v : r.limits[u]) l.append(t.points[v]);
        limits[py::str(t.points[u])] = l;
    }
    out["limits"] = limits;
    return out;
}

py::dict bundle_py(const std::string& total_json, const std::string& base_json,
                   const std::string& fibre_json, const std::map<std::string, std::string>& pmap) {
    FiniteTopSpace total = top_from_json(parse(total_json));
    FiniteTopSpace base = top_from_json(parse(base_json));
    FiniteTopSpace fibre = top_from_json(parse(fibre_json));
    std::vector<int> p(total.size(), -1);
    for (const auto& [k, v] : pmap) {
        int s = -1, d = -1;
        for (size_t i = 0; i < total.points.size(); ++i)
            if (total.points[i] == k) s = (int)i;
        for (size_t i = 0; i < base.points.size(); ++i)
            if (base.points[i] == v) d = (int)i;
        if (s < 0 || d < 0) throw DomainError("point map mentions unknown labels");
        p[s] = d;
    }
    for (int v : p)
        if (v < 0) throw DomainError("point map not total");
    auto r = is_locally_trivial(total, base, p, fibre);
    py::dict out;
    out["locally_trivial"] = r.locally_trivial;
    out["classical_oracle"] = r.classical;
    out["global_trivialization"] = has_global_trivialization(total, base, p, fibre);
    return out;
}

py::dict stone_py(const std::string& structure_json, const std::vector<std::string>& formulas,
                  const std::vector<std::string>& params, int truncation) {
    FiniteStructure m = structure_from_json(parse(structure_json));
    std::vector<QFFormula> phis;
    for (const auto& f : formulas) phis.push_back(QFFormula::parse(f));
    Situs s = stone_situs(m, params, phis, truncation);
    s.sem = Semantics::Generated;
    auto q = stone_hausdorff_quotient(s, m, phis);
    py::dict out;
    out["situs"] = situs_to_json(s).dump();
    out["classes"] = q.classes;
    out["type_classes"] = q.type_classes;
    out["match"] = q.match;
    return out;
}

std::string embed_metric_py(const std::string& space_json, int trunc) {
    return situs_to_json(embed_metric(metric_from_json(parse(space_json)), trunc)).dump();
}

std::string embed_top_py(const std::string& space_json, int trunc) {
    return situs_to_json(embed_top(top_from_json(parse(space_json)), trunc)).dump();
}

py::dict interval_py(const std::vector<std::string>& order, int trunc) {
    auto r = interval_situs(order, trunc);
    py::dict out;
    out["situs"] = situs_to_json(r.situs).dump();
    out["horizon_limited"] = r.horizon_limited;
    return out;
}

std::string mapping_space_py(const std::string& x_json, const std::string& y_json) {
    Situs x = situs_from_json(parse(x_json));
    Situs y = situs_from_json(parse(y_json));
    return situs_to_json(mapping_space(x, y).situs).dump();
}

py::dict aa_report_py(const std::string& x_json, const std::string& m_json,
                      const std::vector<std::map<std::string, std::string>>& family) {
    FiniteMetricSpace x = metric_from_json(parse(x_json));
    FiniteMetricSpace m = metric_from_json(parse(m_json));
    FunctionFamily fam;
    for (const auto& one : family) {
        std::vector<int> table(x.points.size(), -1);
        for (const auto& [k, v] : one) {
            int s = -1, d = -1;
            for (size_t i = 0; i < x.points.size(); ++i)
                if (x.points[i] == k) s = (int)i;
            for (size_t i = 0; i < m.points.size(); ++i)
                if (m.points[i] == v) d = (int)i;
            if (s < 0 || d < 0) throw DomainError("family map mentions unknown labels");
            table[s] = d;
        }
        for (int v : table)
            if (v < 0) throw DomainError("family map not total");
        fam.maps.push_back(table);
    }
    auto r = arzela_ascoli_report(x, m, fam, 3);
    py::dict out;
    out["compact_x"] = r.compact_x;
    out["complete_m"] = r.complete_m;
    out["pointwise_witness"] = r.pointwise_witness;
    out["uniform_witness"] = r.uniform_witness;
    out["equicontinuous"] = r.equicontinuous;
    out["uniformly_equicontinuous"] = r.uniformly_equicontinuous;
    out["uniformly_cauchy"] = r.uniformly_cauchy;
    out["implication_i"] = r.implication_i;
    out["implication_ii"] = r.implication_ii;
    out["implication_iii"] = r.implication_iii;
    return out;
}

} // namespace

PYBIND11_MODULE(situs_native, mod) {
    mod.doc() = "Simplicial filters at desk scale: graded filters on truncated "
                "simplicial sets, morphism and lifting checks, and the derived "
                "limit, bundle, Skorokhod, Ramsey and Stone operations.";

    py::register_exception<DomainError>(mod, "DomainError");
    py::register_exception<SizeError>(mod, "SizeError");
    py::register_exception<DegreeBudgetError>(mod, "DegreeBudgetError");

    mod.def("validate", &validate_py, py::arg("situs_json"));
    mod.def("check_morphism", &check_morphism_py, py::arg("map_json"), py::arg("source_json"),
            py::arg("target_json"));
    mod.def("ramsey", &ramsey_py, py::arg("size"), py::arg("colours"), py::arg("arity"),
            py::arg("target"), py::arg("jobs") = 1);
    mod.def("skorokhod_distance", &skorokhod_distance_py, py::arg("n"), py::arg("grid"),
            py::arg("f_jumps"), py::arg("g_jumps"));
    mod.def("realize", &realize_py, py::arg("n"), py::arg("grid"));
    mod.def("limit", &limit_py, py::arg("space_json"), py::arg("seq"));
    mod.def("pi0", &pi0_py, py::arg("situs_json"));
    mod.def("compact", &compact_py, py::arg("top_json"));
    mod.def("bundle", &bundle_py, py::arg("total_json"), py::arg("base_json"),
            py::arg("fibre_json"), py::arg("point_map"));
    mod.def("stone", &stone_py, py::arg("structure_json"), py::arg("formulas"),
            py::arg("params") = std::vector<std::string>{}, py::arg("truncation") = 3);
    mod.def("embed_metric", &embed_metric_py, py::arg("space_json"), py::arg("truncation") = 3);
    mod.def("embed_top", &embed_top_py, py::arg("space_json"), py::arg("truncation") = 3);
    mod.def("interval", &interval_py, py::arg("order"), py::arg("truncation") = 3);
    mod.def("mapping_space", &mapping_space_py, py::arg("x_json"), py::arg("y_json"));
    mod.def("aa_report", &aa_report_py, py::arg("x_json"), py::arg("m_json"), py::arg("family"));
}
