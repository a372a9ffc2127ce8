// Batch harness: one JSON line per invocation on stdout (or appended to
// --report), CSV for scan.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hyperham/concentration.hpp"
#include "hyperham/extremal.hpp"
#include "hyperham/parallel.hpp"
#include "hyperham/pipeline.hpp"

using namespace hyperham;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kFailure = 2;

struct Usage : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

std::vector<Vertex> parse_list(const std::string& s) {
    std::vector<Vertex> out;
    if (s.empty()) return out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::size_t pos = 0;
        long v = 0;
        try {
            v = std::stol(tok, &pos);
        } catch (const std::exception&) {
            throw Usage("malformed vertex list '" + s + "'");
        }
        if (pos != tok.size() || v < 0) throw Usage("malformed vertex list '" + s + "'");
        out.push_back(static_cast<Vertex>(v));
    }
    return out;
}

Triple parse_triple(const std::string& s) {
    auto v = parse_list(s);
    if (v.size() != 3) throw Usage("expected three vertices in '" + s + "'");
    return {v[0], v[1], v[2]};
}

/// lo:hi[:step], inclusive
template <class T>
std::vector<T> parse_range(const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(tok);
    if (parts.empty() || parts.size() > 3) throw Usage("malformed range '" + s + "'");
    auto num = [&](const std::string& x) -> double {
        try {
            std::size_t pos = 0;
            double v = std::stod(x, &pos);
            if (pos != x.size()) throw Usage("malformed range '" + s + "'");
            return v;
        } catch (const std::invalid_argument&) {
            throw Usage("malformed range '" + s + "'");
        }
    };
    const double lo = num(parts[0]);
    const double hi = parts.size() > 1 ? num(parts[1]) : lo;
    const double step = parts.size() > 2 ? num(parts[2]) : 1.0;
    if (step <= 0 || hi < lo) throw Usage("malformed range '" + s + "'");
    std::vector<T> out;
    const long count = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
    for (long i = 0; i < count; ++i) out.push_back(static_cast<T>(lo + i * step));
    return out;
}

Json seq_json(std::span<const Vertex> s) { return Json(std::vector<Vertex>(s.begin(), s.end())); }

Json report_json(const LemmaReport& r) {
    Json j;
    j["lemma"] = r.lemma;
    j["hypotheses_hold"] = r.hypotheses_hold;
    if (!r.hypotheses_hold) j["unmet"] = r.unmet;
    j["lhs"] = r.lhs;
    j["relation"] = r.relation;
    j["rhs"] = r.rhs;
    j["margin"] = r.margin;
    j["pass"] = r.pass;
    j["mu_assumed"] = r.mu_assumed;
    if (r.lhs2) j["lhs2"] = *r.lhs2;
    if (r.rhs2) j["rhs2"] = *r.rhs2;
    return j;
}

struct Emitter {
    std::string path;
    void write(const Json& j) const {
        const std::string line = j.dump();
        if (path.empty()) {
            std::cout << line << "\n";
        } else {
            std::ofstream out(path, std::ios::app);
            if (!out) throw std::runtime_error("cannot open report file " + path);
            out << line << "\n";
        }
    }
};

Json base_report(const std::string& cmd, const Json& args, std::uint64_t seed) {
    Json j;
    j["command"] = cmd;
    j["args"] = args;
    j["seed"] = seed;
    j["version"] = HYPERHAM_VERSION;
    return j;
}

double since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tight Hamiltonian cycles in dense 4-uniform hypergraphs: experiments and verifiers"};
    app.set_version_flag("--version", std::string("hyperham ") + HYPERHAM_VERSION);
    app.require_subcommand(1);
    std::string report_path;
    app.add_option("--report", report_path, "append the JSON report to this file instead of stdout");
    std::uint64_t seed = 0;

    // gen
    auto* gen = app.add_subcommand("gen", "generate a hypergraph file");
    std::string gen_family, gen_out;
    int gen_n = 0, gen_k = 4;
    double gen_p = 0.5;
    gen->add_option("family", gen_family, "construction_a | construction_b | random")
        ->required()
        ->check(CLI::IsMember({"construction_a", "construction_b", "random"}));
    gen->add_option("n", gen_n, "number of vertices")->required()->check(CLI::PositiveNumber);
    gen->add_option("--p", gen_p, "edge probability (random)");
    gen->add_option("--k", gen_k, "uniformity (random)");
    gen->add_option("--seed", seed);
    gen->add_option("--out", gen_out, "output file (default <family>_<n>.hg)");

    // degree
    auto* deg = app.add_subcommand("degree", "minimum j-degree with a witness");
    std::string deg_file;
    int deg_j = 2;
    deg->add_option("file", deg_file)->required();
    deg->add_option("j", deg_j)->required();

    // find-cycle
    auto* fc = app.add_subcommand("find-cycle", "search for a tight Hamiltonian cycle");
    std::string fc_file, fc_method = "pipeline", fc_config, fc_out;
    std::uint64_t fc_budget = 50'000'000;
    fc->add_option("file", fc_file)->required();
    fc->add_option("--method", fc_method)->check(CLI::IsMember({"brute", "pipeline"}));
    fc->add_option("--config", fc_config, "flat JSON config for the pipeline");
    fc->add_option("--seed", seed);
    fc->add_option("--budget", fc_budget, "expansion budget (brute)");
    fc->add_option("--out", fc_out, "write the cycle here");

    // verify
    auto* ver = app.add_subcommand("verify", "run a counting-lemma verifier");
    std::string ver_lemma, ver_file, ver_file2, ver_vprime, ver_u;
    LemmaParams lp;
    ver->add_option("--lemma", ver_lemma)
        ->required()
        ->check(CLI::IsMember({"F41", "NB3", "L35", "F41analog", "NCT", "NB4", "L36", "blakley-roy"}));
    ver->add_option("--file", ver_file, "host (3-uniform, 4-uniform or graph, per lemma)")->required();
    ver->add_option("--file2", ver_file2, "H' (L35) or the second graph (L36)");
    ver->add_option("--v-prime", ver_vprime, "V' as a comma list (L35)");
    ver->add_option("--u", ver_u, "U as a comma list (L36)");
    ver->add_option("--alpha", lp.alpha);
    ver->add_option("--beta", lp.beta);
    ver->add_option("--ell", lp.ell);
    ver->add_option("--zeta", lp.zeta);
    ver->add_option("--seed", seed);

    // connect
    auto* con = app.add_subcommand("connect", "connect two triples by a tight path");
    std::string con_file, con_from, con_to, con_allowed;
    int con_residue = 0;
    long con_inner = -1;
    double con_zeta = 0.01, con_alpha = 0.1, con_beta = 0.01;
    int con_ell = 3;
    std::uint64_t con_budget = 200'000;
    con->add_option("file", con_file)->required();
    con->add_option("from", con_from, "a,b,c")->required();
    con->add_option("to", con_to, "x,y,z")->required();
    con->add_option("--residue", con_residue, "menu residue 1..4")->check(CLI::Range(1, 4));
    con->add_option("--inner", con_inner, "exact inner vertex count");
    con->add_option("--allowed", con_allowed, "comma list; default all other vertices");
    con->add_option("--zeta", con_zeta);
    con->add_option("--alpha", con_alpha);
    con->add_option("--beta", con_beta);
    con->add_option("--ell", con_ell);
    con->add_option("--budget", con_budget);
    con->add_option("--seed", seed);

    // absorbers
    auto* abs = app.add_subcommand("absorbers", "collect disjoint absorbers");
    std::string abs_file;
    int abs_count = 1;
    double abs_zeta = 0.01, abs_alpha = 0.1, abs_beta = 0.01;
    abs->add_option("file", abs_file)->required();
    abs->add_option("--count", abs_count)->check(CLI::PositiveNumber);
    abs->add_option("--zeta", abs_zeta);
    abs->add_option("--alpha", abs_alpha);
    abs->add_option("--beta", abs_beta);
    abs->add_option("--seed", seed);

    // janson
    auto* jan = app.add_subcommand("janson", "weighted Janson bound against exact and sampled tails");
    std::string jan_spec, jan_preset, jan_grid;
    int jan_points = 11;
    std::uint64_t jan_trials = 0;
    auto* spec_opt = jan->add_option("--spec", jan_spec, "JSON {n, p, weights: [[set, w], ...]}");
    jan->add_option("--preset", jan_preset, "singletons4 | random")
        ->check(CLI::IsMember({"singletons4", "random"}))
        ->excludes(spec_opt);
    jan->add_option("--t-grid", jan_grid, "comma list of t values; default evenly spaced over [0, EX]");
    jan->add_option("--points", jan_points, "grid size when --t-grid is absent")->check(CLI::PositiveNumber);
    jan->add_option("--trials", jan_trials, "Monte-Carlo trials per t (0: none)");
    jan->add_option("--seed", seed);

    // scan
    auto* scan = app.add_subcommand("scan", "CSV of Hamiltonicity outcomes and pair-degree ratios");
    std::string scan_family = "random", scan_n = "8:10", scan_p = "0.5:0.9:0.2", scan_out;
    int scan_seeds = 1;
    std::uint64_t scan_budget = 5'000'000;
    scan->add_option("--family", scan_family)->check(CLI::IsMember({"construction_a", "random"}));
    scan->add_option("--n-range", scan_n, "lo:hi[:step]");
    scan->add_option("--p-range", scan_p, "lo:hi[:step]");
    scan->add_option("--seeds", scan_seeds)->check(CLI::PositiveNumber);
    scan->add_option("--budget", scan_budget, "brute-force expansions per cell");
    scan->add_option("--out", scan_out, "CSV file (default stdout)");
    scan->add_option("--seed", seed, "base seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    }

    Emitter emit{report_path};
    Json timings = Json::object();
    auto t0 = std::chrono::steady_clock::now();
    std::string cmd = app.get_subcommands().front()->get_name();
    Json args;
    for (const auto* opt : app.get_subcommands().front()->get_options()) {
        if (opt->get_name() == "--help" || opt->count() == 0) continue;
        const auto res = opt->results();
        args[opt->get_name()] = res.size() == 1 ? Json(res[0]) : Json(res);
    }
    Json rep = base_report(cmd, args, seed);

    try {
        if (*gen) {
            Hypergraph h;
            if (gen_family == "random") {
                h = random_hypergraph(gen_n, gen_k, gen_p, seed);
            } else {
                Construction c = gen_family == "construction_a" ? construction_a(gen_n) : construction_b(gen_n);
                h = c.graph;
                rep["result"]["x"] = c.partition.x.members();
                rep["result"]["forbidden"] = c.partition.forbidden;
            }
            if (gen_out.empty()) gen_out = gen_family + "_" + std::to_string(gen_n) + ".hg";
            write_hypergraph_file(h, gen_out);
            rep["result"]["file"] = gen_out;
            rep["result"]["k"] = h.k();
            rep["result"]["n"] = h.n();
            rep["result"]["edges"] = h.num_edges();
            rep["result"]["digest"] = sequence_digest([&] {
                std::vector<Vertex> flat;
                for (const auto& e : h.edges()) flat.insert(flat.end(), e.begin(), e.end());
                return flat;
            }());
        } else if (*deg) {
            Hypergraph h = read_hypergraph_file(deg_file);
            if (deg_j < 0 || deg_j >= h.k()) throw Usage("j must lie in 0..k-1");
            MinDegree md = min_j_degree(h, deg_j);
            rep["result"] = {{"j", deg_j}, {"value", md.value}, {"witness", md.witness.members()}};
        } else if (*fc) {
            Hypergraph h = read_hypergraph_file(fc_file);
            std::optional<Sequence> cyc;
            if (fc_method == "brute") {
                BruteResult br = find_tight_hamiltonian_brute(h, fc_budget);
                rep["result"]["status"] = to_string(br.status);
                rep["result"]["expansions"] = br.expansions;
                if (br.status == BruteResult::Status::none) rep["result"]["outcome"] = "none, exhaustive";
                if (br.status == BruteResult::Status::timeout) rep["result"]["outcome"] = "timeout";
                if (br.status == BruteResult::Status::cycle) cyc = br.cycle;
            } else {
                PipelineConfig cfg;
                if (!fc_config.empty()) {
                    std::ifstream in(fc_config);
                    if (!in) throw Usage("cannot read config " + fc_config);
                    Json j;
                    try {
                        j = Json::parse(in);
                    } catch (const Json::parse_error& e) {
                        throw Usage(std::string("config is not valid JSON: ") + e.what());
                    }
                    cfg = PipelineConfig::from_json(j);
                }
                if (fc->get_option("--seed")->count()) cfg.seed = seed;
                PipelineResult pr = find_hamiltonian_absorption(h, cfg);
                rep["result"] = pr.report;
                timings["stages"] = pr.timings;
                cyc = pr.cycle;
            }
            if (cyc) {
                rep["result"]["cycle"] = seq_json(*cyc);
                rep["result"]["valid"] = validate_result(h, *cyc);
                rep["result"]["digest"] = sequence_digest(*cyc);
                if (!fc_out.empty()) {
                    std::ofstream out(fc_out);
                    for (std::size_t i = 0; i < cyc->size(); ++i) out << (i ? " " : "") << (*cyc)[i];
                    out << "\n";
                }
            }
            timings["total"] = since(t0);
            rep["timings"] = timings;
            emit.write(rep);
            return cyc ? kOk : kFailure;
        } else if (*ver) {
            Json res;
            if (ver_lemma == "blakley-roy") {
                Hypergraph h = read_hypergraph_file(ver_file);
                if (h.k() != 2) throw Usage("blakley-roy needs a graph file (k = 2)");
                BlakleyRoy br = blakley_roy_gap(Graph::from_hypergraph(h));
                res = {{"walks", br.walks}, {"bound", br.bound}, {"gap", br.gap}, {"pass", br.gap >= -1e-9 * br.bound}};
            } else if (ver_lemma == "L36") {
                Hypergraph h = read_hypergraph_file(ver_file);
                if (ver_file2.empty()) throw Usage("L36 needs --file2");
                Hypergraph h2 = read_hypergraph_file(ver_file2);
                if (h.k() != 2 || h2.k() != 2) throw Usage("L36 needs graph files (k = 2)");
                Graph g = Graph::from_hypergraph(h), g2 = Graph::from_hypergraph(h2);
                VertexSet u = VertexSet::from_vector(g.universe(), parse_list(ver_u));
                L36Report r = check_lemma_L36(g, g2, u, lp.alpha);
                res = {{"lemma", "L36"}, {"hypotheses_hold", r.hypotheses_hold}, {"lhs", r.lhs}, {"rhs", r.rhs},
                       {"pass", r.pass}};
                if (!r.hypotheses_hold) res["unmet"] = r.unmet;
            } else if (ver_lemma == "F41" || ver_lemma == "NB3" || ver_lemma == "L35") {
                Hypergraph h = read_hypergraph_file(ver_file);
                if (h.k() != 3) throw Usage(ver_lemma + " needs a 3-uniform host");
                RobustParams rp;
                rp.alpha = lp.alpha;
                rp.mu = lp.alpha / 4.0;
                rp.beta = lp.beta;
                rp.ell = lp.ell;
                auto fam = build_family3(h, rp);
                if (auto* ff = std::get_if<FamilyFailure>(&fam)) {
                    res = {{"lemma", ver_lemma}, {"hypotheses_hold", false},
                           {"unmet", "robust family: " + ff->location + ": " + ff->clause}, {"pass", true}};
                } else {
                    const auto& f = std::get<RobustFamily3>(fam);
                    PairIndex pidx(f, lp.zeta);
                    LemmaInstance inst;
                    inst.setup3 = &f;
                    inst.pairs = &pidx;
                    inst.params = lp;
                    Hypergraph hp;
                    VertexSet vp;
                    if (ver_lemma == "L35") {
                        if (ver_file2.empty()) throw Usage("L35 needs --file2 (H') and --v-prime");
                        hp = read_hypergraph_file(ver_file2);
                        vp = VertexSet::from_vector(h.n(), parse_list(ver_vprime));
                        inst.h_prime = &hp;
                        inst.v_prime = &vp;
                    }
                    res = report_json(verify_counting_lemma(ver_lemma, inst));
                }
            } else {
                Hypergraph h = read_hypergraph_file(ver_file);
                if (h.k() != 4) throw Usage(ver_lemma + " needs a 4-uniform host");
                RobustParams rp;
                rp.alpha = lp.alpha;
                rp.mu = lp.alpha * lp.alpha * lp.alpha / 18.0;
                rp.beta = lp.beta;
                rp.ell = lp.ell;
                auto fam = build_family4(h, rp);
                if (auto* ff = std::get_if<FamilyFailure>(&fam)) {
                    res = {{"lemma", ver_lemma}, {"hypotheses_hold", false},
                           {"unmet", "robust family: " + ff->location + ": " + ff->clause}, {"pass", true}};
                } else {
                    const auto& f = std::get<RobustFamily4>(fam);
                    TripleIndex tidx(f, lp.zeta);
                    LemmaInstance inst;
                    inst.triples = &tidx;
                    inst.params = lp;
                    res = report_json(verify_counting_lemma(ver_lemma, inst));
                }
            }
            rep["result"] = res;
            timings["total"] = since(t0);
            rep["timings"] = timings;
            emit.write(rep);
            return res.value("pass", true) ? kOk : kFailure;
        } else if (*con) {
            Hypergraph h = read_hypergraph_file(con_file);
            if (h.k() != 4) throw Usage("connect needs a 4-uniform host");
            if ((con_residue == 0) == (con_inner < 0)) throw Usage("give exactly one of --residue and --inner");
            RobustParams rp;
            rp.alpha = con_alpha;
            rp.mu = con_alpha / 4.0;
            rp.beta = con_beta;
            rp.ell = con_ell;
            auto fam = build_family4(h, rp);
            if (auto* ff = std::get_if<FamilyFailure>(&fam)) {
                rep["result"] = {{"found", false}, {"stage", "family"}, {"diagnostics", ff->location + ": " + ff->clause}};
                rep["timings"] = {{"total", since(t0)}};
                emit.write(rep);
                return kFailure;
            }
            const auto& f = std::get<RobustFamily4>(fam);
            TripleIndex idx(f, con_zeta);
            const Triple a = parse_triple(con_from), b = parse_triple(con_to);
            VertexSet allowed = con_allowed.empty() ? VertexSet::full(h.n())
                                                    : VertexSet::from_vector(h.n(), parse_list(con_allowed));
            for (Vertex v : a) allowed.erase(v);
            for (Vertex v : b) allowed.erase(v);
            ConnectOptions co;
            co.budget = con_budget;
            co.seed = seed;
            ConnectResult cr;
            try {
                cr = con_residue ? connect4_residue(idx, a, b, con_residue, con_ell, allowed, co)
                                 : connect4(idx, a, b, con_inner, allowed, co);
            } catch (const PreconditionError& e) {
                rep["result"] = {{"found", false}, {"stage", "precondition"}, {"diagnostics", e.what()}};
                rep["timings"] = {{"total", since(t0)}};
                emit.write(rep);
                return kFailure;
            }
            rep["result"] = {{"found", cr.path.has_value()},
                             {"strategy", cr.strategy},
                             {"inner", cr.inner_count},
                             {"residue", cr.residue},
                             {"expansions", cr.expansions}};
            if (cr.path) {
                rep["result"]["path"] = seq_json(*cr.path);
                rep["result"]["valid"] = is_valid(*cr.path, h, SeqKind::path);
            } else {
                rep["result"]["diagnostics"] = cr.diagnostics;
            }
            rep["timings"] = {{"total", since(t0)}};
            emit.write(rep);
            return cr.path ? kOk : kFailure;
        } else if (*abs) {
            Hypergraph h = read_hypergraph_file(abs_file);
            if (h.k() != 4) throw Usage("absorbers needs a 4-uniform host");
            RobustParams rp;
            rp.alpha = abs_alpha;
            rp.mu = abs_alpha / 4.0;
            rp.beta = abs_beta;
            auto fam = build_family4(h, rp);
            if (auto* ff = std::get_if<FamilyFailure>(&fam)) {
                rep["result"] = {{"found", 0}, {"stage", "family"}, {"diagnostics", ff->location + ": " + ff->clause}};
                rep["timings"] = {{"total", since(t0)}};
                emit.write(rep);
                return kFailure;
            }
            const auto& f = std::get<RobustFamily4>(fam);
            TripleIndex idx(f, abs_zeta);
            VertexSet used(h.n());
            Json inv = Json::array();
            for (int i = 0; i < abs_count; ++i) {
                SearchOptions so;
                so.seed = Rng::derive(seed, i).next_u64();
                AbsorberSearch s = find_absorber(idx, std::nullopt, used, so);
                if (!s.absorber) {
                    rep["result"]["stopped"] = s.stage;
                    break;
                }
                for (Vertex v : s.absorber->vertices()) used.insert(v);
                Json a;
                Json paths = Json::array();
                for (const auto& p : s.absorber->paths()) paths.push_back(seq_json(p));
                a["paths"] = paths;
                a["verified"] = verify_absorber(idx, *s.absorber).ok;
                inv.push_back(a);
            }
            rep["result"]["requested"] = abs_count;
            rep["result"]["found"] = inv.size();
            rep["result"]["absorbers"] = inv;
            rep["timings"] = {{"total", since(t0)}};
            emit.write(rep);
            return static_cast<int>(inv.size()) == abs_count ? kOk : kFailure;
        } else if (*jan) {
            std::optional<WeightSystem> ws;
            if (!jan_spec.empty()) {
                std::ifstream in(jan_spec);
                if (!in) throw Usage("cannot read spec " + jan_spec);
                Json j;
                try {
                    j = Json::parse(in);
                } catch (const Json::parse_error& e) {
                    throw Usage(std::string("spec is not valid JSON: ") + e.what());
                }
                ws.emplace(j.at("n").get<int>(), j.at("p").get<double>());
                for (const auto& e : j.at("weights")) ws->add(e.at(0).get<std::vector<Vertex>>(), e.at(1).get<double>());
            } else if (jan_preset == "random") {
                Rng r(seed);
                const int n = 4 + static_cast<int>(r.below(9));
                ws = random_weight_system(n, 0.2 + 0.6 * r.uniform(), 3 + static_cast<int>(r.below(10)), 3,
                                          r.next_u64());
            } else {
                ws.emplace(4, 0.5);
                for (int v = 0; v < 4; ++v) ws->add({v}, 1.0);
            }
            const double ex = janson_bound(*ws, 0.0).ex;
            std::vector<double> grid;
            if (!jan_grid.empty()) {
                std::stringstream ss(jan_grid);
                std::string tok;
                while (std::getline(ss, tok, ',')) grid.push_back(std::stod(tok));
            } else {
                for (int i = 0; i < jan_points; ++i) grid.push_back(jan_points == 1 ? 0.0 : ex * i / (jan_points - 1));
            }
            std::optional<std::vector<std::pair<double, double>>> dist;
            if (ws->ground_size() <= 20) dist = exact_distribution(*ws);
            Json rows = Json::array();
            bool ok = true;
            for (std::size_t i = 0; i < grid.size(); ++i) {
                const double t = grid[i];
                JansonBound jb = janson_bound(*ws, t);
                Json row = {{"t", t}, {"ex", jb.ex}, {"delta", jb.delta}, {"bound", jb.bound}, {"degenerate", jb.degenerate}};
                if (dist) {
                    double tail = 0.0;
                    for (const auto& [x, pr] : *dist)
                        if (x <= jb.ex - t + 1e-9 * std::max(1.0, jb.ex)) tail += pr;
                    row["exact"] = tail;
                    row["dominated"] = tail <= jb.bound + 1e-12;
                    ok = ok && tail <= jb.bound + 1e-12;
                }
                if (jan_trials > 0) {
                    McEstimate mc = janson_mc_tail(*ws, t, jan_trials, Rng::derive(seed, i).next_u64());
                    row["empirical"] = mc.estimate;
                    row["ci"] = {mc.lo, mc.hi};
                }
                rows.push_back(row);
            }
            rep["result"] = {{"n", ws->ground_size()}, {"p", ws->p()}, {"support", ws->weights().size()}, {"rows", rows}};
            rep["timings"] = {{"total", since(t0)}};
            emit.write(rep);
            return ok ? kOk : kFailure;
        } else if (*scan) {
            const auto ns = parse_range<int>(scan_n);
            const auto ps = parse_range<double>(scan_p);
            struct Cell {
                int n;
                double p;
                int s;
                std::string row;
            };
            std::vector<Cell> cells;
            for (int n : ns)
                for (double p : ps)
                    for (int s = 0; s < scan_seeds; ++s) cells.push_back({n, p, s, ""});
            parallel_for(cells.size(), [&](std::size_t i) {
                Cell& c = cells[i];
                const std::uint64_t cell_seed = Rng::derive(seed, static_cast<std::uint64_t>(c.s)).next_u64();
                std::ostringstream row;
                try {
                    Hypergraph h = scan_family == "random" ? random_hypergraph(c.n, 4, c.p, cell_seed)
                                                           : construction_a(c.n).graph;
                    const MinDegree md = min_j_degree(h, 2);
                    const double ratio = c.n >= 4 ? static_cast<double>(md.value) / binomial(c.n - 2, 2) : 0.0;
                    std::string status = "skipped";
                    std::uint64_t exp = 0;
                    if (c.n <= 16) {
                        BruteResult br = find_tight_hamiltonian_brute(h, scan_budget);
                        status = to_string(br.status);
                        exp = br.expansions;
                    }
                    row << scan_family << "," << c.n << "," << c.p << "," << c.s << "," << h.num_edges() << ","
                        << md.value << "," << ratio << "," << status << "," << exp;
                } catch (const std::exception& e) {
                    row << scan_family << "," << c.n << "," << c.p << "," << c.s << ",,,,error,";
                }
                c.row = row.str();
            });
            std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
                return std::tie(a.n, a.p, a.s) < std::tie(b.n, b.p, b.s);
            });
            std::ostringstream csv;
            csv << "family,n,p,seed,edges,delta2,delta2_ratio,status,expansions\n";
            for (const auto& c : cells) csv << c.row << "\n";
            if (scan_out.empty())
                std::cout << csv.str();
            else {
                std::ofstream out(scan_out);
                if (!out) throw std::runtime_error("cannot write " + scan_out);
                out << csv.str();
                rep["result"] = {{"rows", cells.size()}, {"file", scan_out}};
                rep["timings"] = {{"total", since(t0)}};
                emit.write(rep);
            }
            return kOk;
        }
        rep["timings"] = {{"total", since(t0)}};
        emit.write(rep);
        return kOk;
    } catch (const Usage& e) {
        rep["error"] = {{"kind", "usage"}, {"message", e.what()}};
        rep["timings"] = {{"total", since(t0)}};
        emit.write(rep);
        return kUsage;
    } catch (const ConfigError& e) {
        rep["error"] = {{"kind", "config"}, {"message", e.what()}};
        rep["timings"] = {{"total", since(t0)}};
        emit.write(rep);
        return kUsage;
    } catch (const std::exception& e) {
        rep["error"] = {{"kind", "failure"}, {"message", e.what()}};
        rep["timings"] = {{"total", since(t0)}};
        emit.write(rep);
        return kFailure;
    }
}
