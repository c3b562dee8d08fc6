#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "arbortile/absorb.hpp"
#include "arbortile/embed.hpp"
#include "arbortile/extremal.hpp"
#include "arbortile/factor.hpp"
#include "arbortile/graph.hpp"
#include "arbortile/partition.hpp"
#include "arbortile/qbuild.hpp"
#include "arbortile/reduced.hpp"

using json = nlohmann::ordered_json;
using namespace arbortile;

namespace {

constexpr const char* kVersion = "0.1.0";

// ---- input plumbing --------------------------------------------------------

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw BadInput("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

GraphFormat format_for(const std::string& path, const std::string& forced) {
    if (!forced.empty()) return parse_format_name(forced);
    auto dot = path.rfind('.');
    std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
    return (ext == "g6" || ext == "graph6") ? GraphFormat::Graph6 : GraphFormat::EdgeList;
}

Graph load_graph(const std::string& path, const std::string& forced) {
    return parse_graph(slurp(path), format_for(path, forced));
}

std::vector<long> parse_longs(const std::string& csv) {
    std::vector<long> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        size_t pos = 0;
        long v;
        try {
            v = std::stol(tok, &pos);
        } catch (...) {
            throw BadInput("bad integer '" + tok + "'");
        }
        if (pos != tok.size()) throw BadInput("bad integer '" + tok + "'");
        out.push_back(v);
    }
    return out;
}

VertexSet parse_vertices(const std::string& csv) {
    VertexSet out;
    for (long v : parse_longs(csv)) out.push_back(static_cast<int>(v));
    return out;
}

// "0,1,2;3,4,5" -> two vertex sets
std::vector<VertexSet> parse_groups(const std::string& spec) {
    std::vector<VertexSet> out;
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ';'))
        if (!part.empty()) out.push_back(parse_vertices(part));
    return out;
}

std::vector<VertexSet> equal_groups(int n, int k, const char* what) {
    if (k <= 0) throw BadInput(std::string(what) + " count must be positive");
    if (n % k != 0)
        throw BadInput(std::to_string(n) + " vertices do not split into " + std::to_string(k) +
                       " equal " + what + "s");
    std::vector<VertexSet> out(k);
    for (int i = 0; i < n; ++i) out[i / (n / k)].push_back(i);
    return out;
}

std::vector<VertexSet> groups_from_flags(const Graph& host, const std::string& spec, int equal,
                                         const char* what) {
    if (!spec.empty() && equal > 0)
        throw BadInput(std::string("give either an explicit ") + what + " list or an equal split, not both");
    if (!spec.empty()) return parse_groups(spec);
    if (equal > 0) return equal_groups(host.n, equal, what);
    throw BadInput(std::string("missing ") + what + " list");
}

// ---- output plumbing -------------------------------------------------------

json caps_json(const Caps& c) {
    json j;
    j["independence_cap"] = c.independence_cap;
    j["arboricity_cap"] = c.arboricity_cap;
    j["factor_vertex_cap"] = c.factor_vertex_cap;
    j["copy_cap"] = c.copy_cap;
    j["node_budget"] = c.node_budget;
    j["embed_node_budget"] = c.embed_node_budget;
    j["connector_cap"] = c.connector_cap;
    return j;
}

json vec_json(const std::vector<int>& v) { return json(v); }

json copies_json(const std::vector<HCopy>& copies) {
    json arr = json::array();
    for (const auto& c : copies) arr.push_back(vec_json(c.map));
    return arr;
}

void render_text(const json& j, std::ostream& os, int indent) {
    std::string pad(indent, ' ');
    auto scalar = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) {
            bool nested = v.is_object() ||
                          (v.is_array() && !v.empty() && (v[0].is_object() || v[0].is_array()));
            if (nested) {
                os << pad << k << ":\n";
                render_text(v, os, indent + 2);
            } else if (v.is_array()) {
                os << pad << k << ": " << v.dump() << "\n";
            } else {
                os << pad << k << ": " << scalar(v) << "\n";
            }
        }
    } else if (j.is_array()) {
        for (const auto& v : j) {
            if (v.is_object() || v.is_array()) {
                os << pad << "-\n";
                render_text(v, os, indent + 2);
            } else {
                os << pad << "- " << scalar(v) << "\n";
            }
        }
    } else {
        os << pad << scalar(j) << "\n";
    }
}

struct Emitter {
    std::uint64_t seed = 1;
    std::string format = "json";
    std::string output = "-";

    void emit(const std::string& command, const Caps& caps, const json& result) const {
        json root;
        root["version"] = kVersion;
        root["command"] = command;
        root["config"]["seed"] = seed;
        root["config"]["caps"] = caps_json(caps);
        root["config"]["output"] = output;
        root["config"]["format"] = format;
        root["result"] = result;

        std::ostringstream body;
        if (format == "json")
            body << root.dump(2) << "\n";
        else
            render_text(root, body, 0);

        if (output == "-") {
            std::cout << body.str();
        } else {
            std::ofstream out(output, std::ios::binary);
            if (!out) throw BadInput("cannot write '" + output + "'");
            out << body.str();
        }
    }
};

// ---- subcommand bodies -----------------------------------------------------

int run_invariants(const Graph& h, const Caps& caps, json& result) {
    InvariantReport rep = invariant_report(h, caps.arboricity_cap);
    result["n"] = rep.n;
    result["m"] = rep.m;
    result["ar"] = rep.ar;
    result["sigma"] = rep.sigma;
    result["f"] = rep.f;
    result["ar_cr"] = rat_str(rep.ar_cr);
    result["forest_convention"] = rep.forest_convention;
    result["in_htilde"] = rep.in_htilde;
    if (rep.hcf1)
        result["hcf1"] = *rep.hcf1;
    else
        result["hcf1"] = nullptr; // empty difference set: every difference divisible
    result["hcf2"] = rep.hcf2;
    result["hcf_is_one"] = rep.hcf_is_one;
    return 0;
}

int run_factor(const Graph& g, const Graph& h, bool want_max, const Caps& caps, json& result) {
    result["host_n"] = g.n;
    result["pattern_n"] = h.n;
    if (want_max) {
        MaxTilingResult mt = max_tiling(g, h, caps);
        std::string why;
        if (!verify_tiling(g, h, mt.copies, false, &why))
            throw ConstructionBug("max tiling failed re-verification: " + why);
        result["count"] = mt.copies.size();
        result["copies"] = copies_json(mt.copies);
        result["uncovered"] = json(mt.uncovered);
        return mt.uncovered.empty() ? 0 : 1;
    }
    FactorResult fr = has_factor(g, h, caps);
    result["exists"] = fr.exists;
    if (fr.exists) {
        std::string why;
        if (!verify_tiling(g, h, fr.tiling.copies, true, &why))
            throw ConstructionBug("factor failed re-verification: " + why);
        result["copies"] = copies_json(fr.tiling.copies);
    }
    return fr.exists ? 0 : 1;
}

int run_qbuild(const Graph& h, int a, int b, const Caps& caps, json& result) {
    QSpec spec = plan_q(h, a, b);
    QGraph q = build_q(spec);
    TilingCertificate cert = h_factor_in_q(h, spec);
    std::string why;
    bool ok = verify_q(h, spec, caps, &why);
    result["a"] = spec.a;
    result["b"] = spec.b;
    result["s"] = spec.s;
    result["f"] = spec.f;
    json part = json::array();
    for (const auto& blk : spec.partition) part.push_back(json(blk));
    result["partition"] = part;
    result["gadget_n"] = q.graph.n;
    result["gadget_m"] = q.graph.edge_count();
    json sizes = json::array();
    for (const auto& c : q.clusters) sizes.push_back(c.size());
    result["cluster_sizes"] = sizes;
    result["factor_copies"] = cert.copies.size();
    result["verified"] = ok;
    if (!ok) result["why"] = why;
    return ok ? 0 : 1;
}

int run_embed_q(const Graph& g, const std::vector<VertexSet>& clusters, const Graph& h, int a,
                int b, const Rat& beta, const Caps& caps, json& result) {
    ClusterSystem cs = make_cluster_system(g, clusters);
    QSpec spec = plan_q(h, a, b);
    EmbedQResult er = embed_q(cs, spec, beta, caps);
    json images = json::array();
    for (const auto& u : er.images) images.push_back(json(u));
    result["images"] = images;
    result["map"] = vec_json(er.map.map);
    result["path"] = er.path;
    result["density_violations"] = json(er.density_violations);
    return 0;
}

json multigraph_json(const Multigraph2& r) {
    json j;
    j["k"] = r.k;
    json edges = json::array();
    for (const auto& [key, m] : r.mult) edges.push_back(json::array({key.first, key.second, m}));
    j["edges"] = edges;
    j["min_degree"] = r.min_degree();
    j["text"] = r.to_text();
    return j;
}

int run_reduce(const Graph& g, const std::vector<VertexSet>& clusters, const Thresholds& th,
               json& result) {
    ClusterSystem cs = make_cluster_system(g, clusters);
    Multigraph2 r = build_reduced(cs, th);
    result = multigraph_json(r);
    return 0;
}

json tiling_json(const Multigraph2& r, const FractionalTiling& ft) {
    json arr = json::array();
    for (size_t i = 0; i < ft.structures.size(); ++i) {
        json s;
        s["support"] = json(ft.structures[i].support);
        s["mult"] = json(ft.structures[i].mult_assign);
        s["weight"] = rat_str(ft.weights[i]);
        arr.push_back(s);
    }
    json loads = json::array();
    for (int c = 0; c < r.k; ++c) loads.push_back(rat_str(ft.load(c)));
    json j;
    j["structures"] = arr;
    j["loads"] = loads;
    j["total_load"] = rat_str(ft.total_load());
    return j;
}

int run_fractile(const Multigraph2& r, int rr, bool to3, bool to2, json& result) {
    FracTileResult ft = fractional_tiling(r, rr);
    std::string why;
    if (!tiling_ok(r, ft.tiling, &why)) throw ConstructionBug("optimum fails feasibility: " + why);
    result["k"] = r.k;
    result["rr"] = rr;
    result["value"] = rat_str(ft.value);
    result["tiling"] = tiling_json(r, ft.tiling);
    json dual = json::array();
    for (const auto& d : ft.dual) dual.push_back(rat_str(d));
    result["dual"] = dual;
    if (to3) {
        FractionalTiling conv = convert_4_to_3(ft.tiling);
        if (!tiling_ok(r, conv, &why)) throw ConstructionBug("3-clique rewrite infeasible: " + why);
        result["to3"] = tiling_json(r, conv);
    }
    if (to2) {
        FractionalTiling conv = convert_4_to_2(ft.tiling);
        if (!tiling_ok(r, conv, &why)) throw ConstructionBug("2-clique rewrite infeasible: " + why);
        result["to2"] = tiling_json(r, conv);
    }
    return 0;
}

int run_pipeline(const Graph& g, const std::vector<VertexSet>& clusters, const Graph& h,
                 const Thresholds& th, const Caps& caps, json& result) {
    ClusterSystem cs = make_cluster_system(g, clusters);
    PipelineResult pr = almost_tiling_pipeline(g, cs, h, th, caps);
    std::string why;
    if (!verify_tiling(g, h, pr.certificate.copies, false, &why))
        throw ConstructionBug("pipeline certificate failed re-verification: " + why);
    result["reduced"] = multigraph_json(pr.reduced);
    result["lp_value"] = rat_str(pr.lp_value);
    result["covered"] = pr.covered;
    result["host_n"] = g.n;
    result["coverage"] = rat_str(pr.coverage);
    result["copies"] = copies_json(pr.certificate.copies);
    json accounts = json::array();
    for (const auto& acc : pr.accounts) {
        json a;
        a["support"] = json(acc.structure.support);
        a["mult"] = json(acc.structure.mult_assign);
        a["weight"] = rat_str(acc.weight);
        a["quota"] = rat_str(acc.quota);
        a["a"] = acc.a;
        a["b"] = acc.b;
        a["planned"] = acc.planned;
        a["extracted"] = acc.extracted;
        a["vertices"] = acc.vertices;
        accounts.push_back(a);
    }
    result["accounts"] = accounts;
    result["diagnostics"] = json(pr.diagnostics);
    return 0;
}

int run_extremal(const std::string& family, const Graph& h, int n, const std::string& alpha,
                 std::uint64_t seed, const Caps& caps, json& result) {
    std::optional<Rat> af;
    if (!alpha.empty()) af = parse_rat(alpha);
    ExtremalInstance inst;
    if (family == "g0") {
        inst = construct_g0(n, h);
    } else if (family == "two-part") {
        inst = af ? construct_two_part(n, h, seed, *af) : construct_two_part(n, h, seed);
    } else if (family == "multi-part") {
        inst = af ? construct_multi_part(n, h, seed, *af) : construct_multi_part(n, h, seed);
    } else if (family == "space-barrier") {
        inst = af ? construct_space_barrier(n, h, seed, *af) : construct_space_barrier(n, h, seed);
    } else {
        throw BadInput("unknown family '" + family + "'");
    }

    NoFactorCertificate cert = certify_no_factor(inst, h, caps);
    // two disjoint cliques pin alpha at 2, so that is the natural target there
    Rat claim_alpha = af                                   ? *af
                      : inst.family == ExtremalFamily::G0 ? rat(2, inst.graph.n)
                                                           : inst.alpha_frac;
    ClaimsReport claims = verify_claims(inst, h, claim_alpha);

    result["family"] = family_name(inst.family);
    result["n"] = inst.graph.n;
    result["m"] = inst.graph.edge_count();
    result["pattern_n"] = inst.h;
    json sizes = json::array();
    for (const auto& blk : inst.blocks) sizes.push_back(blk.size());
    result["block_sizes"] = sizes;
    if (inst.family == ExtremalFamily::G0) result["p"] = inst.p;
    result["alpha"] = rat_str(claim_alpha);
    json cj;
    cj["kind"] = certificate_kind_name(cert.kind);
    cj["modulus"] = cert.modulus;
    cj["bound"] = cert.bound;
    cj["premises"] = json(cert.premises);
    cj["solver_checked"] = cert.solver_checked;
    result["certificate"] = cj;
    json checks = json::array();
    for (const auto& c : claims.checks) {
        json cc;
        cc["claim"] = c.claim;
        cc["pass"] = c.pass;
        cc["detail"] = c.detail;
        checks.push_back(cc);
    }
    result["claims"] = checks;
    result["all_pass"] = claims.all_pass;
    result["graph"] = emit_graph(inst.graph, GraphFormat::Graph6);
    return claims.all_pass ? 0 : 1;
}

int run_connector(const Graph& g, const Graph& h, int u, int v, int t, const VertexSet& avoid,
                  const Caps& caps, json& result) {
    ConnectorSearch cs = find_connector(g, h, u, v, t, avoid, caps);
    result["u"] = u;
    result["v"] = v;
    result["t"] = t;
    result["found"] = cs.found.has_value();
    result["exhausted"] = cs.exhausted;
    if (cs.found) {
        result["s_set"] = json(cs.found->s_set);
        return 0;
    }
    return 1;
}

int run_absorber(const Graph& g, const Graph& h, const VertexSet& s, const VertexSet& a, int t,
                 const Caps& caps, json& result) {
    bool ok = verify_absorber(g, h, s, a, t, caps);
    result["s"] = json(s);
    result["a"] = json(a);
    result["t"] = t;
    result["ok"] = ok;
    return ok ? 0 : 1;
}

int run_robust(const Graph& g, const Graph& h, const std::vector<VertexSet>& blocks, const Rat& mu,
               const Caps& caps, json& result) {
    auto rv = robust_vectors(g, h, blocks, mu, caps);
    result["mu"] = rat_str(mu);
    result["count"] = rv.size();
    json arr = json::array();
    for (const auto& r : rv) {
        json item;
        item["vec"] = json(r.vec.coords);
        json fam = json::array();
        for (const auto& c : r.family) fam.push_back(vec_json(c.map));
        item["family"] = fam;
        arr.push_back(item);
    }
    result["vectors"] = arr;
    return rv.empty() ? 1 : 0;
}

std::vector<IndexVector> parse_index_vectors(const std::string& spec) {
    std::vector<IndexVector> out;
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ';'))
        if (!part.empty()) out.push_back(IndexVector{parse_longs(part)});
    return out;
}

int run_transferral(const std::string& vectors, json& result) {
    auto iset = parse_index_vectors(vectors);
    auto tr = transferral(iset);
    result["found"] = tr.has_value();
    if (tr) {
        result["i"] = tr->i;
        result["j"] = tr->j;
        result["s"] = json(tr->s.coords);
        result["t"] = json(tr->t.coords);
        return 0;
    }
    return 1;
}

int run_lattice(const std::string& generators, const std::string& target, json& result) {
    std::vector<IndexVector> gens = parse_index_vectors(generators);
    IndexVector tg{parse_longs(target)};
    bool member = lattice_member(gens, tg);
    result["member"] = member;
    return member ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact toolkit for pattern tilings, gadget embeddings, and barrier constructions"};
    app.require_subcommand(1);
    app.fallthrough();

    Emitter em;
    std::string graph_format;
    app.add_option("--seed", em.seed, "seed for randomized constructions")->capture_default_str();
    app.add_option("--format", em.format, "output format: json | text")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();
    app.add_option("--output", em.output, "output path, - for stdout")->capture_default_str();
    app.add_option("--graph-format", graph_format,
                   "force input graph format (edge-list | graph6); default by extension");

    std::string pattern_path, host_path, multigraph_path;
    std::string clusters_spec, blocks_spec, avoid_spec, vectors_spec, target_spec, s_spec, a_spec;
    std::string alpha, family, robust_mu;
    std::string beta = "1/100", epsilon = "1/100", mu = "1/100", eta = "1/100";
    int qa = 0, q_forests = 0, rr = 0, equal_k = 0, conn_u = 0, conn_v = 0, conn_t = 1;
    int extremal_n = 0;
    bool want_max = false, to3 = false, to2 = false;

    Caps caps;
    int rc = 0;
    json result;
    std::string command;

    auto load_host = [&] { return load_graph(host_path, graph_format); };
    auto load_pattern = [&] { return load_graph(pattern_path, graph_format); };
    auto thresholds = [&] {
        Thresholds th{parse_rat(beta), parse_rat(epsilon), parse_rat(mu), parse_rat(eta)};
        th.validate();
        return th;
    };

    auto* inv = app.add_subcommand("invariants", "pattern invariants: ar, sigma, f, ar_cr, hcf");
    inv->add_option("pattern", pattern_path, "pattern graph file")->required();
    inv->callback([&] {
        command = "invariants";
        rc = run_invariants(load_pattern(), caps, result);
    });

    auto* fac = app.add_subcommand("factor", "decide a perfect tiling of the host");
    fac->add_option("--host", host_path, "host graph file")->required();
    fac->add_option("--pattern", pattern_path, "pattern graph file")->required();
    fac->add_flag("--max", want_max, "report a maximum partial tiling instead");
    fac->callback([&] {
        command = "factor";
        rc = run_factor(load_host(), load_pattern(), want_max, caps, result);
    });

    auto* qb = app.add_subcommand("qbuild", "build and verify the tiling gadget");
    qb->add_option("--pattern", pattern_path, "pattern graph file")->required();
    qb->add_option("-a,--independent", qa, "independent clusters")->required();
    qb->add_option("-b,--forest", q_forests, "forest clusters")->required();
    qb->callback([&] {
        command = "qbuild";
        rc = run_qbuild(load_pattern(), qa, q_forests, caps, result);
    });

    auto* eq = app.add_subcommand("embed-q", "embed the gadget into host clusters");
    eq->add_option("--host", host_path, "host graph file")->required();
    eq->add_option("--pattern", pattern_path, "pattern graph file")->required();
    eq->add_option("--clusters", clusters_spec, "clusters as '0,1,2;3,4,5'");
    eq->add_option("--equal-clusters", equal_k, "split host vertices into this many equal runs");
    eq->add_option("-a,--independent", qa, "independent clusters")->required();
    eq->add_option("-b,--forest", q_forests, "forest clusters")->required();
    eq->add_option("--beta", beta, "density margin (rational)")->capture_default_str();
    eq->callback([&] {
        command = "embed-q";
        Graph g = load_host();
        rc = run_embed_q(g, groups_from_flags(g, clusters_spec, equal_k, "cluster"),
                         load_pattern(), qa, q_forests, parse_rat(beta), caps, result);
    });

    auto* red = app.add_subcommand("reduce", "cluster-level multigraph from densities");
    red->add_option("--host", host_path, "host graph file")->required();
    red->add_option("--clusters", clusters_spec, "clusters as '0,1,2;3,4,5'");
    red->add_option("--equal-clusters", equal_k, "split host vertices into this many equal runs");
    red->add_option("--beta", beta, "single-edge density threshold")->capture_default_str();
    red->add_option("--epsilon", epsilon, "regularity margin, reporting only")->capture_default_str();
    red->add_option("--mu", mu, "degree slack")->capture_default_str();
    red->add_option("--eta", eta, "quota rescale")->capture_default_str();
    red->callback([&] {
        command = "reduce";
        Graph g = load_host();
        rc = run_reduce(g, groups_from_flags(g, clusters_spec, equal_k, "cluster"), thresholds(),
                        result);
    });

    auto* fr = app.add_subcommand("fractile", "optimal fractional clique tiling of a multigraph");
    fr->add_option("multigraph", multigraph_path, "multigraph file: 'k' line, then 'i j mult'")
        ->required();
    fr->add_option("--rr", rr, "clique order to tile with")->required();
    fr->add_flag("--to3", to3, "also rewrite the optimum by 3-cliques");
    fr->add_flag("--to2", to2, "also rewrite the optimum by 2-cliques");
    fr->callback([&] {
        command = "fractile";
        rc = run_fractile(Multigraph2::from_text(slurp(multigraph_path)), rr, to3, to2, result);
    });

    auto* pipe = app.add_subcommand("pipeline", "reduced graph, LP, gadget extraction, tiling");
    pipe->add_option("--host", host_path, "host graph file")->required();
    pipe->add_option("--pattern", pattern_path, "pattern graph file")->required();
    pipe->add_option("--clusters", clusters_spec, "clusters as '0,1,2;3,4,5'");
    pipe->add_option("--equal-clusters", equal_k, "split host vertices into this many equal runs");
    pipe->add_option("--beta", beta, "single-edge density threshold")->capture_default_str();
    pipe->add_option("--epsilon", epsilon, "regularity margin, reporting only")->capture_default_str();
    pipe->add_option("--mu", mu, "degree slack")->capture_default_str();
    pipe->add_option("--eta", eta, "quota rescale")->capture_default_str();
    pipe->callback([&] {
        command = "pipeline";
        Graph g = load_host();
        rc = run_pipeline(g, groups_from_flags(g, clusters_spec, equal_k, "cluster"),
                          load_pattern(), thresholds(), caps, result);
    });

    auto* ext = app.add_subcommand("extremal", "no-factor barrier constructions and certificates");
    ext->add_option("--family", family, "g0 | two-part | multi-part | space-barrier")
        ->check(CLI::IsMember({"g0", "two-part", "multi-part", "space-barrier"}))
        ->required();
    ext->add_option("--pattern", pattern_path, "pattern graph file")->required();
    ext->add_option("--n", extremal_n, "host order")->required();
    ext->add_option("--alpha", alpha, "independence fraction (rational); family default if unset");
    ext->callback([&] {
        command = "extremal";
        rc = run_extremal(family, load_pattern(), extremal_n, alpha, em.seed, caps, result);
    });

    auto* ab = app.add_subcommand("absorb", "connectors, absorbers, robust vectors, lattices");
    ab->require_subcommand(1);

    auto* conn = ab->add_subcommand("connector", "disjoint-copy bridge between two vertices");
    conn->add_option("--host", host_path, "host graph file")->required();
    conn->add_option("--pattern", pattern_path, "pattern graph file")->required();
    conn->add_option("--u", conn_u, "first endpoint")->required();
    conn->add_option("--v", conn_v, "second endpoint")->required();
    conn->add_option("--t", conn_t, "copies per side")->capture_default_str();
    conn->add_option("--avoid", avoid_spec, "vertices to exclude, comma separated");
    conn->callback([&] {
        command = "absorb connector";
        rc = run_connector(load_host(), load_pattern(), conn_u, conn_v, conn_t,
                           parse_vertices(avoid_spec), caps, result);
    });

    auto* absb = ab->add_subcommand("absorber", "check an absorbing set against a target set");
    absb->add_option("--host", host_path, "host graph file")->required();
    absb->add_option("--pattern", pattern_path, "pattern graph file")->required();
    absb->add_option("--s", s_spec, "absorbing candidate, comma separated")->required();
    absb->add_option("--a-set", a_spec, "target set, comma separated");
    absb->add_option("--t", conn_t, "copies the target side must tile into")->required();
    absb->callback([&] {
        command = "absorb absorber";
        rc = run_absorber(load_host(), load_pattern(), parse_vertices(s_spec),
                          parse_vertices(a_spec), conn_t, caps, result);
    });

    auto* rob = ab->add_subcommand("robust", "index vectors realized by many disjoint copies");
    rob->add_option("--host", host_path, "host graph file")->required();
    rob->add_option("--pattern", pattern_path, "pattern graph file")->required();
    rob->add_option("--blocks", blocks_spec, "blocks as '0,1,2;3,4,5'");
    rob->add_option("--equal-blocks", equal_k, "split host vertices into this many equal runs");
    rob->add_option("--mu", robust_mu, "robustness fraction (rational)")->required();
    rob->callback([&] {
        command = "absorb robust";
        Graph g = load_host();
        rc = run_robust(g, load_pattern(), groups_from_flags(g, blocks_spec, equal_k, "block"),
                        parse_rat(robust_mu), caps, result);
    });

    auto* tra = ab->add_subcommand("transferral", "unit-difference pair among index vectors");
    tra->add_option("--vectors", vectors_spec, "index vectors as '0,3;1,2;2,1'")->required();
    tra->callback([&] {
        command = "absorb transferral";
        rc = run_transferral(vectors_spec, result);
    });

    auto* lat = ab->add_subcommand("lattice", "integer-span membership for index vectors");
    lat->add_option("--generators", vectors_spec, "generators as '1,-1;2,0'")->required();
    lat->add_option("--target", target_spec, "target vector, comma separated")->required();
    lat->callback([&] {
        command = "absorb lattice";
        rc = run_lattice(vectors_spec, target_spec, result);
    });

    try {
        caps = Caps::from_env();
        app.parse(argc, argv);
        em.emit(command, caps, result);
        return rc;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
