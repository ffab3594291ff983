#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "situs/analysis.hpp"
#include "situs/json_io.hpp"
#include "situs/lifting.hpp"
#include "situs/model.hpp"
#include "situs/ramsey.hpp"
#include "situs/skorokhod.hpp"

using namespace situs;

namespace {

// exit codes: 0 verdict true / witness found, 1 false / none,
// 2 input error, 3 size or budget error
constexpr int kExitTrue = 0, kExitFalse = 1, kExitInput = 2, kExitSize = 3;

struct Report {
    json payload = json::object();
    bool verdict = true;
    std::string command;
    uint64_t digest = 1469598103934665603ull; // FNV-1a

    void absorb(const std::string& bytes) {
        for (unsigned char c : bytes) {
            digest ^= c;
            digest *= 1099511628211ull;
        }
    }
};

std::string read_file(Report& rep, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    rep.absorb(ss.str());
    return ss.str();
}

json load_json(Report& rep, const std::string& path) {
    auto text = read_file(rep, path);
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw DomainError("malformed JSON in " + path + ": " + e.what());
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

int emit(Report& rep, const std::string& format, long long elapsed_ms) {
    std::ostringstream digest;
    digest << std::hex << rep.digest;
    if (format == "text") {
        std::cout << rep.command << ": " << (rep.verdict ? "true" : "false") << "\n";
        for (auto it = rep.payload.begin(); it != rep.payload.end(); ++it)
            std::cout << it.key() << ": " << it.value().dump() << "\n";
    } else {
        json out;
        out["command"] = rep.command;
        out["inputs_digest"] = digest.str();
        out["verdict"] = rep.verdict;
        out["report"] = rep.payload;
        out["elapsed_ms"] = elapsed_ms;
        std::cout << out.dump(2) << "\n";
    }
    return rep.verdict ? kExitTrue : kExitFalse;
}

SitusMap maps_only_from_json(const json& j, const Situs& src, const Situs& dst) {
    return morphism_from_json(j, src, dst);
}

std::vector<int> point_map_from_json(const json& j, const std::vector<std::string>& src,
                                     const std::vector<std::string>& dst) {
    std::vector<int> out(src.size(), -1);
    for (auto it = j.begin(); it != j.end(); ++it) {
        int s = -1, d = -1;
        for (size_t i = 0; i < src.size(); ++i)
            if (src[i] == it.key()) s = (int)i;
        for (size_t i = 0; i < dst.size(); ++i)
            if (dst[i] == it.value().get<std::string>()) d = (int)i;
        if (s < 0 || d < 0) throw DomainError("point map mentions unknown labels");
        out[s] = d;
    }
    for (int v : out)
        if (v < 0) throw DomainError("point map not total");
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"situs: simplicial filters at desk scale"};
    app.require_subcommand(1);

    std::string format = "json";
    long long max_candidates = kDefaultGuard;
    int truncation = 3;
    int jobs = 1;
    if (const char* env = std::getenv("SITUS_MAX_CANDIDATES")) max_candidates = std::atoll(env);
    app.add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--max-candidates", max_candidates, "search guard (default 10^7)");
    app.add_option("--truncation", truncation, "degree budget for generated objects (default 3)");
    app.add_option("--jobs", jobs, "worker count for exhaustive searches");

    std::string a_path, b_path, c_path, d_path, seq, order, formulas, params, variant = "plain";
    std::vector<std::string> seqs;
    int n_dim = 1, grid = 4, size = 6, colours = 2, arity = 2, target = 3;
    bool global_check = false;

    auto* validate_cmd = app.add_subcommand("validate", "check the situs invariant");
    validate_cmd->add_option("situs", a_path)->required();

    auto* morph = app.add_subcommand("check-morphism", "situs morphism check");
    morph->add_option("--map", a_path)->required();
    morph->add_option("--source", b_path)->required();
    morph->add_option("--target", c_path)->required();

    auto* lift = app.add_subcommand("lift", "solve a lifting problem");
    lift->add_option("--i", a_path)->required();
    lift->add_option("--p", b_path)->required();
    lift->add_option("--f", c_path)->required();
    lift->add_option("--g", d_path)->required();

    auto* pi0_cmd = app.add_subcommand("pi0", "connected components replacement");
    pi0_cmd->add_option("situs", a_path)->required();

    auto* limit_cmd = app.add_subcommand("limit", "cauchy and limit detection");
    limit_cmd->add_option("--space", a_path)->required();
    limit_cmd->add_option("--seq", seq)->required();

    auto* complete_cmd = app.add_subcommand("complete", "completeness lifting over sequences");
    complete_cmd->add_option("--space", a_path)->required();
    complete_cmd->add_option("--seq", seqs)->required();

    auto* compact_cmd = app.add_subcommand("compact", "ultrafilter convergence");
    compact_cmd->add_option("--space", a_path);
    compact_cmd->add_option("--situs", b_path);

    auto* bundle_cmd = app.add_subcommand("bundle", "local triviality detection");
    bundle_cmd->add_option("--total", a_path)->required();
    bundle_cmd->add_option("--base", b_path)->required();
    bundle_cmd->add_option("--fiber", c_path)->required();
    bundle_cmd->add_option("--map", d_path)->required();
    bundle_cmd->add_flag("--global-check", global_check, "also search for a global trivialization");

    auto* sk_cmd = app.add_subcommand("skorokhod-dist", "exact skorokhod distance of grid paths");
    sk_cmd->add_option("--n", n_dim)->required();
    sk_cmd->add_option("--grid", grid)->required();
    sk_cmd->add_option("--f", a_path)->required();
    sk_cmd->add_option("--g", b_path)->required();

    auto* realize_cmd = app.add_subcommand("realize", "metric space of grid paths");
    realize_cmd->add_option("--n", n_dim)->required();
    realize_cmd->add_option("--grid", grid)->required();

    auto* ms_cmd = app.add_subcommand("mapping-space", "skorokhod mapping space");
    ms_cmd->add_option("--x", a_path)->required();
    ms_cmd->add_option("--y", b_path)->required();

    auto* ramsey_cmd = app.add_subcommand("ramsey", "exhaustive homogeneity check");
    ramsey_cmd->add_option("--size", size)->required();
    ramsey_cmd->add_option("--colours", colours)->required();
    ramsey_cmd->add_option("--arity", arity)->required();
    ramsey_cmd->add_option("--target", target)->required();

    auto* stone_cmd = app.add_subcommand("stone", "stone situs and its hausdorff quotient");
    stone_cmd->add_option("--structure", a_path)->required();
    stone_cmd->add_option("--formulas", formulas)->required();
    stone_cmd->add_option("--params", params);

    auto* aa_cmd = app.add_subcommand("aa-report", "arzela-ascoli diagram report");
    aa_cmd->add_option("--x", a_path)->required();
    aa_cmd->add_option("--m", b_path)->required();
    aa_cmd->add_option("--family", c_path)->required();

    auto* gen_rep = app.add_subcommand("gen-representable", "representable sset");
    gen_rep->add_option("--points", order)->required();

    auto* gen_std = app.add_subcommand("gen-standard", "standard simplex sset");
    gen_std->add_option("--n", n_dim)->required();

    auto* gen_metric = app.add_subcommand("gen-metric", "metric situs from a space");
    gen_metric->add_option("--space", a_path)->required();

    auto* gen_top = app.add_subcommand("gen-top", "topological situs from a space");
    gen_top->add_option("--space", a_path)->required();

    auto* gen_interval = app.add_subcommand("gen-interval", "interval situs on a grid order");
    gen_interval->add_option("--order", order)->required();
    gen_interval->add_option("--variant", variant)->check(CLI::IsMember({"plain", "less", "greater"}));

    for (auto* sc : app.get_subcommands([](CLI::App*) { return true; })) sc->fallthrough();
    CLI11_PARSE(app, argc, argv);

    Report rep;
    for (int i = 1; i < argc; ++i) rep.absorb(argv[i]);
    auto started = std::chrono::steady_clock::now();

    try {
        if (app.got_subcommand(validate_cmd)) {
            rep.command = "validate";
            Situs s = situs_from_json(load_json(rep, a_path), false);
            auto v = validate_situs(s);
            rep.verdict = v.ok;
            if (!v.ok) rep.payload["witness"] = v.witness;
        } else if (app.got_subcommand(morph)) {
            rep.command = "check-morphism";
            Situs src = situs_from_json(load_json(rep, b_path));
            Situs dst = situs_from_json(load_json(rep, c_path));
            SitusMap f = maps_only_from_json(load_json(rep, a_path), src, dst);
            auto r = check_morphism(f, src, dst);
            rep.verdict = r.ok;
            if (!r.ok) rep.payload["witness"] = r.witness;
        } else if (app.got_subcommand(lift)) {
            rep.command = "lift";
            MorphismFile mi = morphism_file_from_json(load_json(rep, a_path));
            MorphismFile mp = morphism_file_from_json(load_json(rep, b_path));
            SitusMap f = maps_only_from_json(load_json(rep, c_path), mi.source, mp.source);
            SitusMap g = maps_only_from_json(load_json(rep, d_path), mi.target, mp.target);
            LiftingProblem prob{&mi.source, &mi.target, &mp.source, &mp.target, mi.map, mp.map, f, g};
            auto h = find_lift(prob, max_candidates);
            rep.verdict = h.has_value();
            rep.payload["witness"] =
                h ? morphism_to_json(*h, mi.target, mp.source) : json("none");
        } else if (app.got_subcommand(pi0_cmd)) {
            rep.command = "pi0";
            Situs s = situs_from_json(load_json(rep, a_path));
            auto r = pi0(s);
            rep.payload["components"] = r.pi0.sset.size(1);
            rep.payload["pi0"] = situs_to_json(r.pi0);
            rep.payload["to_pi0"] = morphism_to_json(r.to_pi0, s, r.pi0);
        } else if (app.got_subcommand(limit_cmd)) {
            rep.command = "limit";
            FiniteMetricSpace m = metric_from_json(load_json(rep, a_path));
            rep.absorb(seq);
            std::vector<int> a;
            for (const auto& tok : split(seq, ',')) {
                int idx = -1;
                for (size_t i = 0; i < m.points.size(); ++i)
                    if (m.points[i] == tok) idx = (int)i;
                if (idx < 0) throw DomainError("sequence entry not a point: " + tok);
                a.push_back(idx);
            }
            rep.payload["cauchy"] = is_cauchy(a, m, truncation);
            auto r = find_limit(a, m, truncation);
            rep.verdict = r.representative.has_value();
            json all = json::array();
            for (int v : r.all) all.push_back(m.points[v]);
            rep.payload["limits"] = all;
            rep.payload["representative"] =
                r.representative ? json(m.points[*r.representative]) : json("none");
        } else if (app.got_subcommand(complete_cmd)) {
            rep.command = "complete";
            FiniteMetricSpace m = metric_from_json(load_json(rep, a_path));
            std::vector<std::vector<int>> all;
            for (const auto& one : seqs) {
                rep.absorb(one);
                std::vector<int> a;
                for (const auto& tok : split(one, ',')) {
                    int idx = -1;
                    for (size_t i = 0; i < m.points.size(); ++i)
                        if (m.points[i] == tok) idx = (int)i;
                    if (idx < 0) throw DomainError("sequence entry not a point: " + tok);
                    a.push_back(idx);
                }
                all.push_back(a);
            }
            auto r = check_completeness_lift(m, all, truncation);
            rep.verdict = r.ok;
            if (!r.ok) rep.payload["first_failing"] = r.first_failing;
        } else if (app.got_subcommand(compact_cmd)) {
            rep.command = "compact";
            CompactnessResult r;
            std::vector<std::string> point_labels;
            if (!a_path.empty()) {
                FiniteTopSpace t = top_from_json(load_json(rep, a_path));
                point_labels = t.points;
                r = is_quasi_compact_concise(t, truncation);
            } else if (!b_path.empty()) {
                Situs s = situs_from_json(load_json(rep, b_path));
                point_labels = s.sset.labels[0];
                r = is_quasi_compact_concise(s);
            } else {
                throw DomainError("compact needs --space or --situs");
            }
            rep.verdict = r.ok;
            json limits = json::object();
            for (size_t u = 0; u < r.limits.size(); ++u) {
                json l = json::array();
                for (int v : r.limits[u]) l.push_back(point_labels[v]);
                limits[point_labels[u]] = l;
            }
            rep.payload["limits"] = limits;
        } else if (app.got_subcommand(bundle_cmd)) {
            rep.command = "bundle";
            FiniteTopSpace total = top_from_json(load_json(rep, a_path));
            FiniteTopSpace base = top_from_json(load_json(rep, b_path));
            FiniteTopSpace fibre = top_from_json(load_json(rep, c_path));
            auto p = point_map_from_json(load_json(rep, d_path), total.points, base.points);
            auto r = is_locally_trivial(total, base, p, fibre, truncation, max_candidates);
            rep.verdict = r.locally_trivial;
            rep.payload["classical_oracle"] = r.classical;
            if (global_check)
                rep.payload["global_trivialization"] =
                    has_global_trivialization(total, base, p, fibre);
            if (r.locally_trivial) {
                json fam = json::object();
                for (size_t b = 0; b < r.family.size(); ++b) {
                    json one = json::object();
                    for (size_t x = 0; x < r.family[b].size(); ++x)
                        one[total.points[x]] = fibre.points[r.family[b][x]];
                    fam[base.points[b]] = one;
                }
                rep.payload["family"] = fam;
            }
        } else if (app.got_subcommand(sk_cmd)) {
            rep.command = "skorokhod-dist";
            rep.absorb(a_path);
            rep.absorb(b_path);
            auto parse_path = [&](const std::string& text) {
                std::vector<int> jumps;
                if (n_dim > 0)
                    for (const auto& tok : split(text, ',')) {
                        Rational r = Rational::parse(tok) * Rational(grid);
                        if (r.den() != 1)
                            throw DomainError("jump " + tok + " is not a multiple of 1/grid");
                        jumps.push_back((int)r.num());
                    }
                return GridPath(n_dim, grid, jumps);
            };
            GridPath f = parse_path(a_path), g = parse_path(b_path);
            Rational direct = skorokhod_distance(f, g);
            Rational brute = skorokhod_distance_bruteforce(f, g);
            rep.payload["distance"] = direct.str();
            rep.payload["bruteforce"] = brute.str();
            rep.verdict = true;
            if (format == "text") {
                std::cout << direct.str() << "\n";
                return kExitTrue;
            }
        } else if (app.got_subcommand(realize_cmd)) {
            rep.command = "realize";
            rep.payload["space"] = metric_to_json(realize_simplex(n_dim, grid));
        } else if (app.got_subcommand(ms_cmd)) {
            rep.command = "mapping-space";
            Situs x = situs_from_json(load_json(rep, a_path));
            Situs y = situs_from_json(load_json(rep, b_path));
            auto ms = mapping_space(x, y, max_candidates);
            rep.payload["space"] = situs_to_json(ms.situs);
        } else if (app.got_subcommand(ramsey_cmd)) {
            rep.command = "ramsey";
            auto r = ramsey_check(size, colours, arity, target, max_candidates, jobs);
            rep.verdict = r.holds;
            rep.payload["colourings_checked"] = r.colourings_checked;
            if (r.counterexample) rep.payload["counterexample"] = *r.counterexample;
        } else if (app.got_subcommand(stone_cmd)) {
            rep.command = "stone";
            FiniteStructure m = structure_from_json(load_json(rep, a_path));
            rep.absorb(formulas);
            std::vector<QFFormula> phis;
            for (const auto& tok : split(formulas, ';'))
                if (!tok.empty()) phis.push_back(QFFormula::parse(tok));
            std::vector<std::string> ps;
            if (!params.empty()) ps = split(params, ',');
            Situs s = stone_situs(m, ps, phis, truncation);
            s.sem = Semantics::Generated;
            auto q = stone_hausdorff_quotient(s, m, phis);
            rep.payload["situs"] = situs_to_json(s);
            rep.payload["classes"] = q.classes;
            rep.payload["type_classes"] = q.type_classes;
            rep.payload["match"] = q.match;
            rep.verdict = q.match;
        } else if (app.got_subcommand(aa_cmd)) {
            rep.command = "aa-report";
            FiniteMetricSpace x = metric_from_json(load_json(rep, a_path));
            FiniteMetricSpace m = metric_from_json(load_json(rep, b_path));
            json fam_json = load_json(rep, c_path);
            FunctionFamily fam;
            for (const auto& one : fam_json.at("maps")) {
                std::vector<int> table(x.points.size(), -1);
                for (auto it = one.begin(); it != one.end(); ++it) {
                    int s = -1, d = -1;
                    for (size_t i = 0; i < x.points.size(); ++i)
                        if (x.points[i] == it.key()) s = (int)i;
                    for (size_t i = 0; i < m.points.size(); ++i)
                        if (m.points[i] == it.value().get<std::string>()) d = (int)i;
                    if (s < 0 || d < 0) throw DomainError("family map mentions unknown labels");
                    table[s] = d;
                }
                for (int v : table)
                    if (v < 0) throw DomainError("family map not total");
                fam.maps.push_back(table);
            }
            auto r = arzela_ascoli_report(x, m, fam, truncation);
            rep.payload["compact_x"] = r.compact_x;
            rep.payload["complete_m"] = r.complete_m;
            rep.payload["pointwise_witness"] = r.pointwise_witness;
            rep.payload["uniform_witness"] = r.uniform_witness;
            rep.payload["equicontinuous"] = r.equicontinuous;
            rep.payload["uniformly_equicontinuous"] = r.uniformly_equicontinuous;
            rep.payload["uniformly_cauchy"] = r.uniformly_cauchy;
            rep.payload["implication_i"] = r.implication_i;
            rep.payload["implication_ii"] = r.implication_ii;
            rep.payload["implication_iii"] = r.implication_iii;
        } else if (app.got_subcommand(gen_rep)) {
            rep.command = "gen-representable";
            rep.absorb(order);
            rep.payload["sset"] = sset_to_json(representable_sset(split(order, ','), truncation));
        } else if (app.got_subcommand(gen_std)) {
            rep.command = "gen-standard";
            rep.payload["sset"] = sset_to_json(standard_simplex(n_dim, truncation));
        } else if (app.got_subcommand(gen_metric)) {
            rep.command = "gen-metric";
            FiniteMetricSpace m = metric_from_json(load_json(rep, a_path));
            rep.payload["situs"] = situs_to_json(embed_metric(m, truncation));
        } else if (app.got_subcommand(gen_top)) {
            rep.command = "gen-top";
            FiniteTopSpace t = top_from_json(load_json(rep, a_path));
            rep.payload["situs"] = situs_to_json(embed_top(t, truncation));
        } else if (app.got_subcommand(gen_interval)) {
            rep.command = "gen-interval";
            rep.absorb(order);
            SubdivisionVariant v = variant == "less" ? SubdivisionVariant::Less
                                 : variant == "greater" ? SubdivisionVariant::Greater
                                                        : SubdivisionVariant::Plain;
            auto r = interval_situs(split(order, ','), truncation, v);
            rep.payload["situs"] = situs_to_json(r.situs);
            rep.payload["horizon_limited"] = r.horizon_limited;
        }
    } catch (const SizeError& e) {
        std::cerr << "size error: " << e.what() << " (bound " << e.bound << ")\n";
        return kExitSize;
    } catch (const DegreeBudgetError& e) {
        std::cerr << "degree budget error: " << e.what() << "\n";
        return kExitSize;
    } catch (const DomainError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    }

    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - started)
                       .count();
    return emit(rep, format, elapsed);
}
