#include "hyperham/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace hyperham {

namespace {

constexpr double kEps = 1e-9;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool in_open_unit(double x) { return x > 0.0 && x < 1.0; }

Triple head(const Sequence& p) { return {p[0], p[1], p[2]}; }
Triple tail(const Sequence& p) { return {p[p.size() - 3], p[p.size() - 2], p[p.size() - 1]}; }

}  // namespace

std::string to_string(ExtractionMode m) { return m == ExtractionMode::desk ? "desk" : "asymptotic"; }

void PipelineConfig::validate() const {
    auto fail = [](const std::string& what) { throw ConfigError(what); };
    if (!in_open_unit(alpha)) fail("alpha must lie in (0,1)");
    if (!in_open_unit(mu)) fail("mu must lie in (0,1)");
    if (!in_open_unit(beta)) fail("beta must lie in (0,1)");
    if (ell < 3 || ell % 2 == 0) fail("ell must be odd and at least 3");
    if (!in_open_unit(zeta_star)) fail("zeta_star must lie in (0,1)");
    if (!in_open_unit(zeta_star2)) fail("zeta_star2 must lie in (0,1)");
    if (zeta_star2 > zeta_star) fail("zeta_star2 must not exceed zeta_star");
    if (!in_open_unit(theta_star)) fail("theta_star must lie in (0,1)");
    if (!in_open_unit(theta_star2)) fail("theta_star2 must lie in (0,1)");
    if (M < 7 || M % 4 != 3) fail("M must be at least 7 and congruent to 3 mod 4");
    if (n_abs < -1) fail("n_abs must be -1 (auto) or nonnegative");
    if (absorbing_inner < 0) fail("absorbing_inner must be nonnegative");
    if (intermediate_inner < 0) fail("intermediate_inner must be nonnegative");
    if (min_n < 8) fail("min_n must be at least 8");
    if (closing_attempts < 1) fail("closing_attempts must be positive");
    if (restarts < 1) fail("restarts must be positive");
}

Json PipelineConfig::to_json() const {
    Json j;
    j["mode"] = to_string(mode);
    j["alpha"] = alpha;
    j["mu"] = mu;
    j["beta"] = beta;
    j["ell"] = ell;
    j["zeta_star"] = zeta_star;
    j["zeta_star2"] = zeta_star2;
    j["theta_star"] = theta_star;
    j["theta_star2"] = theta_star2;
    j["M"] = M;
    j["n_abs"] = n_abs;
    j["absorbing_inner"] = absorbing_inner;
    j["intermediate_inner"] = intermediate_inner;
    j["use_menu"] = use_menu;
    j["search_budget"] = search_budget;
    j["connect_budget"] = connect_budget;
    j["seed"] = seed;
    j["min_n"] = min_n;
    j["exhaustive_max_order"] = exhaustive_max_order;
    j["reservoir_validation_samples"] = reservoir_validation_samples;
    j["closing_attempts"] = closing_attempts;
    j["restarts"] = restarts;
    return j;
}

PipelineConfig PipelineConfig::from_json(const Json& j) {
    if (!j.is_object()) throw ConfigError("config must be a flat object");
    PipelineConfig c;
    for (const auto& [key, v] : j.items()) {
        auto num = [&]() {
            if (!v.is_number()) throw ConfigError("config key '" + key + "' must be a number");
            return v.get<double>();
        };
        auto integer = [&]() -> long long {
            if (!v.is_number_integer()) throw ConfigError("config key '" + key + "' must be an integer");
            return v.get<long long>();
        };
        auto unsigned_int = [&]() -> std::uint64_t {
            if (!v.is_number_unsigned()) throw ConfigError("config key '" + key + "' must be a nonnegative integer");
            return v.get<std::uint64_t>();
        };
        if (key == "mode") {
            if (!v.is_string()) throw ConfigError("config key 'mode' must be a string");
            const auto s = v.get<std::string>();
            if (s == "desk")
                c.mode = ExtractionMode::desk;
            else if (s == "asymptotic")
                c.mode = ExtractionMode::asymptotic;
            else
                throw ConfigError("mode must be 'desk' or 'asymptotic'");
        } else if (key == "alpha") c.alpha = num();
        else if (key == "mu") c.mu = num();
        else if (key == "beta") c.beta = num();
        else if (key == "ell") c.ell = static_cast<int>(integer());
        else if (key == "zeta_star") c.zeta_star = num();
        else if (key == "zeta_star2") c.zeta_star2 = num();
        else if (key == "theta_star") c.theta_star = num();
        else if (key == "theta_star2") c.theta_star2 = num();
        else if (key == "M") c.M = static_cast<int>(integer());
        else if (key == "n_abs") c.n_abs = static_cast<int>(integer());
        else if (key == "absorbing_inner") c.absorbing_inner = static_cast<long>(integer());
        else if (key == "intermediate_inner") c.intermediate_inner = static_cast<long>(integer());
        else if (key == "use_menu") {
            if (!v.is_boolean()) throw ConfigError("config key 'use_menu' must be a boolean");
            c.use_menu = v.get<bool>();
        } else if (key == "search_budget") c.search_budget = unsigned_int();
        else if (key == "connect_budget") c.connect_budget = unsigned_int();
        else if (key == "seed") c.seed = unsigned_int();
        else if (key == "min_n") c.min_n = static_cast<int>(integer());
        else if (key == "exhaustive_max_order") c.exhaustive_max_order = static_cast<int>(integer());
        else if (key == "reservoir_validation_samples") c.reservoir_validation_samples = static_cast<int>(integer());
        else if (key == "closing_attempts") c.closing_attempts = static_cast<int>(integer());
        else if (key == "restarts") c.restarts = static_cast<int>(integer());
        else
            throw ConfigError("unknown config key '" + key + "'");
    }
    c.validate();
    return c;
}

// ---------------------------------------------------------------- path cover

std::optional<Sequence> augment_path(const TripleIndex& idx, Vertex u, const VertexSet& avail, int m, Rng& rng,
                                     std::uint64_t budget) {
    const RobustFamily4& f = idx.family();
    const Hypergraph& h = f.host();
    const CompletionIndex& ci = f.index();
    const int n = h.n();
    if (m < 7 || m % 4 != 3 || !avail.contains(u)) return std::nullopt;
    CompletionFn comp = [&](std::span<const Vertex> t) { return ci.completions(t); };
    // start triples in the link of u: q1 q2 q3 with q1 q2 q3 u an edge
    VertexSet pool = avail;
    pool.erase(u);
    std::vector<Vertex> cand = pool.members();
    if (static_cast<int>(cand.size()) < m - 1) return std::nullopt;
    std::uint64_t spent = 0;
    for (int tries = 0; tries < 64 && spent < budget; ++tries) {
        Vertex a = cand[rng.below(cand.size())];
        Vertex b = cand[rng.below(cand.size())];
        if (a == b) continue;
        const Vertex ab[] = {a, b, u};
        VertexSet cs = ci.completions(ab) & pool;
        cs.erase(a);
        cs.erase(b);
        if (cs.empty()) continue;
        auto cm = cs.members();
        Vertex c = cm[rng.below(cm.size())];
        if (!idx.connectable(a, b, c)) continue;
        Sequence seq(m, -1);
        seq[0] = a;
        seq[1] = b;
        seq[2] = c;
        seq[3] = u;
        // slots 3, 7, ... are the inserted ones; with u fixed at slot 3 the
        // rest of the skeleton and insertions are filled together
        TemplateFill tf = fill_template(4, comp, seq, pool, rng, std::max<std::uint64_t>(1, (budget - spent) / 8));
        spent += tf.expansions + 1;
        if (!tf.found) continue;
        if (!idx.connectable(seq[m - 3], seq[m - 2], seq[m - 1])) continue;
        if (!is_valid(seq, h, SeqKind::path)) continue;
        (void)n;
        return seq;
    }
    return std::nullopt;
}

CoverResult path_cover(const TripleIndex& idx, const VertexSet& x, const PipelineConfig& cfg) {
    const RobustFamily4& f = idx.family();
    const Hypergraph& h = f.host();
    const int n = h.n();
    if (cfg.M < 7 || cfg.M % 4 != 3) throw std::invalid_argument("M must be at least 7 and congruent to 3 mod 4");
    CoverResult res;
    VertexSet avail = x.complement();
    TuplePredicate ends = [&](std::span<const Vertex> t) { return idx.connectable(t); };
    Rng rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
    while (avail.size() >= cfg.M) {
        PathSearch ps = find_path_with_ends(h, f.index(), avail, cfg.M, ends, rng, cfg.search_budget);
        res.expansions += ps.expansions;
        if (ps.path) {
            for (Vertex v : *ps.path) avail.erase(v);
            res.paths.push_back(std::move(*ps.path));
            continue;
        }
        if (ps.exhaustive) {
            res.maximal_certified = true;
            break;
        }
        // greedy stalled within budget: grow a path through a leftover vertex
        std::optional<Sequence> aug;
        auto left = avail.members();
        rng.shuffle(left);
        for (std::size_t i = 0; i < left.size() && i < 16 && !aug; ++i)
            aug = augment_path(idx, left[i], avail, cfg.M, rng, cfg.search_budget / 16 + 1);
        if (!aug) break;
        ++res.augmented;
        for (Vertex v : *aug) avail.erase(v);
        res.paths.push_back(std::move(*aug));
    }
    if (avail.size() < cfg.M) res.maximal_certified = true;
    res.uncovered = avail;
    (void)n;
    return res;
}

BlockPartition make_block_partition(const CoverResult& cover, const VertexSet& exceptional, int m) {
    BlockPartition bp;
    bp.block_size = m;
    bp.exceptional = exceptional;
    for (const auto& p : cover.paths) {
        if (static_cast<int>(p.size()) != m) throw std::invalid_argument("cover path size differs from block size");
        VertexSet b(exceptional.universe());
        for (Vertex v : p) b.insert(v);
        bp.blocks.push_back(b);
    }
    bp.leftover = cover.uncovered - exceptional;
    if (bp.leftover.size() >= m) {
        // keep |B'| < M by splitting off further blocks in vertex order
        auto rest = bp.leftover.members();
        std::size_t i = 0;
        while (rest.size() - i >= static_cast<std::size_t>(m)) {
            VertexSet b(exceptional.universe());
            for (int j = 0; j < m; ++j) b.insert(rest[i++]);
            bp.blocks.push_back(b);
        }
        VertexSet lo(exceptional.universe());
        for (; i < rest.size(); ++i) lo.insert(rest[i]);
        bp.leftover = lo;
    }
    return bp;
}

// ------------------------------------------------------------ societies

namespace {

/// H_u[S] with the family {R_ux[S] : x in S}.
class SocietyView : public Setup3 {
public:
    SocietyView(const RobustFamily4& f, Vertex u, const VertexSet& s) : f_(&f), u_(u), s_(s) {
        robust_.resize(f.n());
        s.for_each([&](Vertex x) { robust_[x] = f.robust_graph(u, x).induced(s); });
    }
    int universe() const override { return f_->n(); }
    const VertexSet& vertices() const override { return s_; }
    const Graph* robust_graph(Vertex x) const override { return s_.contains(x) ? &robust_[x] : nullptr; }
    bool has_edge(Vertex a, Vertex b, Vertex c) const override {
        if (!s_.contains(a) || !s_.contains(b) || !s_.contains(c) || a == b || b == c || a == c) return false;
        return f_->host().has_edge({a, b, c, u_});
    }
    VertexSet completions(Vertex a, Vertex b) const override {
        const Vertex t[] = {a, b, u_};
        return f_->index().completions(t) & s_;
    }

private:
    const RobustFamily4* f_;
    Vertex u_;
    VertexSet s_;
    std::vector<Graph> robust_;
};

}  // namespace

SocietyStats society_stats(const TripleIndex& idx, Vertex u, const BlockPartition& part, int m, int samples,
                           std::uint64_t seed, const PipelineConfig& cfg) {
    std::vector<int> eligible;
    for (std::size_t i = 0; i < part.blocks.size(); ++i)
        if (!part.blocks[i].contains(u)) eligible.push_back(static_cast<int>(i));
    if (m < 1 || m > static_cast<int>(part.blocks.size()))
        throw std::invalid_argument("society size m must lie in 1..nu");
    if (m > static_cast<int>(eligible.size()))
        throw std::invalid_argument("fewer than m blocks avoid the vertex");
    SocietyStats st;
    st.first_failure = {{"i", 0}, {"ii", 0}, {"iii", 0}};
    const RobustFamily4& f = idx.family();
    const double mm = static_cast<double>(m) * part.block_size;
    const double zeta2 = idx.zeta();
    Rng rng(seed);
    for (int s = 0; s < samples; ++s) {
        std::vector<int> pick = eligible;
        rng.shuffle(pick);
        pick.resize(m);
        VertexSet soc(f.n());
        for (int b : pick) soc |= part.blocks[b];
        SocietyView view(f, u, soc);
        ++st.samples;
        // (i) minimum vertex degree of H_u[S]
        const auto members = soc.members();
        double min_deg = 1e300;
        for (Vertex a : members) {
            std::size_t twice = 0;
            for (Vertex b : members)
                if (b != a) twice += view.completions(a, b).size();
            min_deg = std::min(min_deg, twice / 2.0);
        }
        if (min_deg < (5.0 / 9.0 + cfg.alpha / 4.0) * mm * mm / 2.0 - kEps) {
            ++st.first_failure["i"];
            continue;
        }
        // (ii) the induced family exemplifies the 3-uniform setup with
        // (alpha/4, beta/2, alpha/16)
        SetupCheck sc = check_setup3(view, cfg.alpha / 4.0, cfg.alpha / 16.0, cfg.beta / 2.0, cfg.ell);
        if (!sc.holds) {
            ++st.first_failure["ii"];
            continue;
        }
        // (iii) triples connectable in H and bridges in H_u[S]
        PairIndex pidx(view, zeta2);
        std::size_t good = 0;
        for (Vertex a : members)
            for (Vertex b : members) {
                if (b == a) continue;
                for (Vertex c : members) {
                    if (c == a || c == b) continue;
                    if (idx.connectable(a, b, c) && is_bridge3(view, pidx, a, b, c)) ++good;
                }
            }
        if (static_cast<double>(good) < zeta2 * mm * mm * mm - kEps) {
            ++st.first_failure["iii"];
            continue;
        }
        ++st.useful;
    }
    return st;
}

// ------------------------------------------------------------- validation

bool validate_result(const Hypergraph& h, std::span<const Vertex> cycle) {
    if (static_cast<int>(cycle.size()) != h.n() || h.n() < h.k()) return false;
    return is_valid(cycle, h, SeqKind::cycle);
}

std::string sequence_digest(std::span<const Vertex> seq) {
    std::uint64_t x = 0xcbf29ce484222325ULL;
    for (Vertex v : seq) {
        auto u = static_cast<std::uint32_t>(v);
        for (int i = 0; i < 4; ++i) {
            x ^= (u >> (8 * i)) & 0xffu;
            x *= 0x100000001b3ULL;
        }
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
    return buf;
}

// --------------------------------------------------------------- pipeline

namespace {

struct Attempt {
    std::optional<Sequence> cycle;
    std::string failed_stage;
    std::string diagnostics;
    Json stages = Json::array();
};

int auto_n_abs(int room, long c_abs) {
    for (int k = 3; k >= 1; --k)
        if (35L * k + (5L * k - 1) * c_abs <= room) return k;
    return 0;
}

void insert_all(VertexSet& s, std::span<const Vertex> vs) {
    for (Vertex v : vs) s.insert(v);
}

Attempt run_attempt(const TripleIndex& idx1, const TripleIndex& idx2, const PipelineConfig& cfg, int attempt,
                    Json& timings) {
    const Hypergraph& h = idx1.family().host();
    const int n = h.n();
    const std::uint64_t base = Rng::derive(cfg.seed, static_cast<std::uint64_t>(attempt)).next_u64();
    Attempt out;
    auto fail = [&](const std::string& stage, const std::string& diag, Json extra = Json::object()) {
        out.failed_stage = stage;
        out.diagnostics = diag;
        Json e = {{"stage", stage}, {"ok", false}, {"diagnostics", diag}};
        e.update(extra);
        out.stages.push_back(e);
        return out;
    };
    const LengthMenu menu = residue_lengths(4, cfg.ell);
    ConnectOptions co;
    co.budget = cfg.connect_budget;

    // reservoir
    auto t0 = std::chrono::steady_clock::now();
    ReservoirParams rp;
    rp.theta_star = cfg.theta_star;
    rp.theta_star2 = cfg.theta_star2;
    rp.ell = cfg.ell;
    rp.seed = Rng::derive(base, 1).next_u64();
    rp.validation_samples = cfg.reservoir_validation_samples;
    if (cfg.mode == ExtractionMode::desk) rp.budget_override = static_cast<std::size_t>(n);
    rp.connect = co;
    auto rv = sample_reservoir(idx1, rp);
    timings["reservoir"] = timings.value("reservoir", 0.0) + seconds_since(t0);
    if (auto* rf = std::get_if<ReservoirFailure>(&rv))
        return fail("reservoir", rf->reason, {{"attempts", rf->attempts}, {"last_size", rf->last_size}});
    ReservoirState res = std::get<ReservoirState>(std::move(rv));
    if (cfg.mode == ExtractionMode::desk) res.budget = static_cast<std::size_t>(res.reservoir.size());
    out.stages.push_back({{"stage", "reservoir"},
                          {"ok", true},
                          {"size", res.reservoir.size()},
                          {"budget", res.budget},
                          {"formula_budget", res.formula_budget},
                          {"resamples", res.resamples}});

    // absorbing path
    t0 = std::chrono::steady_clock::now();
    const long c_abs = cfg.use_menu ? menu.for_residue(2) : cfg.absorbing_inner;
    const int room = n - res.reservoir.size() - cfg.M;
    int n_abs = cfg.n_abs >= 0 ? cfg.n_abs : auto_n_abs(room, c_abs);
    std::optional<AbsorbingPath> ap;
    std::string abs_diag;
    for (int k = n_abs; k >= (cfg.n_abs >= 0 ? n_abs : 0) && !ap; --k) {
        AbsorbingConfig ac;
        ac.n_abs = k;
        ac.connection_inner = c_abs;
        ac.theta_star = cfg.theta_star;
        ac.search.budget = cfg.search_budget;
        ac.search.seed = Rng::derive(base, 2).next_u64();
        ac.connect = co;
        ac.connect.seed = Rng::derive(base, 3).next_u64();
        auto r = build_absorbing_path(idx1, res.reservoir, ac);
        if (auto* p = std::get_if<AbsorbingPath>(&r))
            ap = std::move(*p);
        else {
            const auto& af = std::get<AbsorbingFailure>(r);
            abs_diag += (abs_diag.empty() ? "" : "; ") + std::to_string(k) + " absorbers: " + af.stage + ": " +
                        af.diagnostics;
        }
    }
    timings["absorbing_path"] = timings.value("absorbing_path", 0.0) + seconds_since(t0);
    if (!ap) return fail("absorbing_path", abs_diag, {{"n_abs", n_abs}});
    const int abs_count = static_cast<int>(ap->absorbers.size());
    out.stages.push_back({{"stage", "absorbing_path"},
                          {"ok", true},
                          {"absorbers", abs_count},
                          {"n_abs_requested", n_abs},
                          {"vertices", ap->path.size()},
                          {"size_clause", ap->size_clause}});

    // cover of H - X
    t0 = std::chrono::steady_clock::now();
    VertexSet x = res.reservoir;
    insert_all(x, ap->path);
    PipelineConfig ccfg = cfg;
    ccfg.seed = Rng::derive(base, 4).next_u64();
    CoverResult cover = path_cover(idx2, x, ccfg);
    timings["cover"] = timings.value("cover", 0.0) + seconds_since(t0);
    out.stages.push_back({{"stage", "cover"},
                          {"ok", true},
                          {"paths", cover.paths.size()},
                          {"uncovered", cover.uncovered.size()},
                          {"augmented", cover.augmented},
                          {"maximal_certified", cover.maximal_certified},
                          {"uncovered_fraction", static_cast<double>(cover.uncovered.size()) / (n - x.size())}});

    // chain P_A and the cover paths into T
    t0 = std::chrono::steady_clock::now();
    const long c_int = cfg.use_menu ? menu.for_residue(1) : cfg.intermediate_inner;
    Sequence t = ap->path;
    VertexSet free_j = cover.uncovered;   // J
    VertexSet allowed = res.available();  // (R \ R') u J
    allowed |= free_j;
    std::vector<Sequence> order = cover.paths;
    Rng crng = Rng::derive(base, 5);
    crng.shuffle(order);
    int joined = 0, dissolved = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
        const Sequence& p = order[i];
        std::optional<Sequence> piece;
        std::optional<Sequence> conn;
        for (int dir = 0; dir < 2 && !conn; ++dir) {
            Sequence q = p;
            if (dir) std::reverse(q.begin(), q.end());
            if (!idx2.connectable(head(q)[0], head(q)[1], head(q)[2])) continue;
            ConnectOptions o = co;
            o.seed = crng.next_u64();
            ConnectResult cr = connect4(idx2, tail(t), head(q), c_int, allowed, o);
            if (cr.path) {
                conn = cr.path;
                piece = q;
            }
        }
        if (!conn) {
            // leave this path's vertices to later connections or to Z
            ++dissolved;
            insert_all(free_j, p);
            insert_all(allowed, p);
            continue;
        }
        for (std::size_t j = 3; j + 3 < conn->size(); ++j) {
            const Vertex v = (*conn)[j];
            t.push_back(v);
            allowed.erase(v);
            if (res.reservoir.contains(v))
                res.used.insert(v);
            else
                free_j.erase(v);
        }
        t.insert(t.end(), piece->begin(), piece->end());
        ++joined;
    }
    timings["chain"] = timings.value("chain", 0.0) + seconds_since(t0);
    out.stages.push_back({{"stage", "chain"},
                          {"ok", true},
                          {"joined", joined},
                          {"dissolved", dissolved},
                          {"length", t.size()},
                          {"reservoir_used", res.used.size()},
                          {"reservoir_size", res.reservoir.size()},
                          {"free_outside_reservoir", free_j.size()}});
    if (!is_valid(t, h, SeqKind::path)) throw std::logic_error("chained path failed validation");

    // close the cycle: choose the inner count c with |Z| = n - |T| - c
    t0 = std::chrono::steady_clock::now();
    const int rem = n - static_cast<int>(t.size());
    std::vector<long> choices;
    if (cfg.use_menu) {
        int i = ((rem % 4) + 4) % 4;
        choices.push_back(menu.for_residue(i == 0 ? 4 : i));
    } else {
        for (long c = 0; c <= allowed.size(); ++c)
            if ((rem - c) % 4 == 0 && rem - c <= 4L * abs_count) choices.push_back(c);
    }
    std::string close_diag;
    for (long c : choices) {
        if (c > allowed.size()) {
            close_diag += "inner " + std::to_string(c) + " exceeds the " + std::to_string(allowed.size()) +
                          " free vertices; ";
            continue;
        }
        if ((rem - c) % 4 != 0) throw std::logic_error("closing residue bookkeeping");
        for (int a = 0; a < cfg.closing_attempts; ++a) {
            ConnectOptions o = co;
            o.seed = Rng::derive(base, 100 + static_cast<std::uint64_t>(c) * 16 + a).next_u64();
            ConnectResult cr = connect4(idx2, tail(t), head(t), c, allowed, o);
            if (!cr.path) {
                close_diag += "inner " + std::to_string(c) + ": " + cr.diagnostics + "; ";
                continue;
            }
            Sequence cyc = t;
            for (std::size_t j = 3; j + 3 < cr.path->size(); ++j) cyc.push_back((*cr.path)[j]);
            VertexSet on(n);
            insert_all(on, cyc);
            const VertexSet z = on.complement();
            if (z.size() % 4 != 0) throw std::logic_error("|Z| is not divisible by 4");
            if (z.size() > 2.0 * cfg.theta_star * cfg.theta_star * n + kEps) {
                close_diag += "|Z| = " + std::to_string(z.size()) + " exceeds 2 theta*^2 n; ";
                break;
            }
            AbsorbOutcome ao;
            try {
                ao = absorb(h, *ap, z, Rng::derive(base, 200 + a).next_u64());
            } catch (const AbsorbError& e) {
                close_diag += "absorb |Z| = " + std::to_string(z.size()) + ": " + e.what() + "; ";
                break;
            }
            Sequence final_cycle = ao.path;
            final_cycle.insert(final_cycle.end(), cyc.begin() + static_cast<long>(ap->path.size()), cyc.end());
            if (!validate_result(h, final_cycle)) throw std::logic_error("final cycle failed validation");
            timings["close_absorb"] = timings.value("close_absorb", 0.0) + seconds_since(t0);
            out.stages.push_back({{"stage", "close"},
                                  {"ok", true},
                                  {"inner", c},
                                  {"residue", ((rem % 4) + 4) % 4},
                                  {"cycle_length", cyc.size()}});
            out.stages.push_back({{"stage", "absorb"},
                                  {"ok", true},
                                  {"absorbed", z.size()},
                                  {"capacity", 4 * abs_count},
                                  {"quadruples", ao.assignment.size()}});
            out.cycle = std::move(final_cycle);
            return out;
        }
    }
    timings["close_absorb"] = timings.value("close_absorb", 0.0) + seconds_since(t0);
    if (choices.empty())
        close_diag = std::to_string(rem) + " vertices outside T exceed the absorbing capacity " +
                     std::to_string(4 * abs_count) + " plus " + std::to_string(allowed.size()) + " free vertices";
    return fail("close", close_diag,
                {{"outside_T", rem}, {"free", allowed.size()}, {"capacity", 4 * abs_count}});
}

}  // namespace

PipelineResult find_hamiltonian_absorption(const Hypergraph& h, const PipelineConfig& cfg_in) {
    PipelineResult pr;
    PipelineConfig cfg = cfg_in;
    cfg.validate();
    pr.report["config"] = cfg.to_json();
    pr.report["n"] = h.n();
    pr.report["k"] = h.k();
    pr.report["edges"] = h.num_edges();
    pr.timings = Json::object();
    Json stages = Json::array();
    auto finish = [&](const std::string& stage, const std::string& diag) {
        pr.failed_stage = stage;
        pr.diagnostics = diag;
        pr.report["stages"] = stages;
        pr.report["outcome"] = "failure";
        pr.report["failed_stage"] = stage;
        pr.report["diagnostics"] = diag;
        return pr;
    };
    if (h.k() != 4) return finish("precondition", "host must be 4-uniform");
    if (h.n() < cfg.min_n)
        return finish("precondition", "n = " + std::to_string(h.n()) + " is below min_n = " + std::to_string(cfg.min_n));

    RobustParams rp;
    rp.alpha = cfg.alpha;
    rp.mu = cfg.mu;
    rp.beta = cfg.beta;
    rp.ell = cfg.ell;
    rp.mode = cfg.mode;
    rp.budget = cfg.search_budget;
    rp.exhaustive_max_order = cfg.exhaustive_max_order;
    if (cfg.mode == ExtractionMode::asymptotic) {
        const RobustConstants rc = robust_constants(cfg.alpha, cfg.mu);
        pr.report["asymptotic"] = {{"mu_prime", rc.mu_prime},
                                   {"ell", rc.ell},
                                   {"log_beta", rc.beta.log_value},
                                   {"beta", rc.beta.value}};
        rp.beta = rc.beta.value;
        rp.ell = rc.ell > std::numeric_limits<int>::max() ? std::numeric_limits<int>::max() : static_cast<int>(rc.ell);
        cfg.use_menu = true;
        cfg.ell = rp.ell;
    }

    auto t0 = std::chrono::steady_clock::now();
    std::optional<RobustFamily4> fam;
    try {
        auto r = build_family4(h, rp);
        if (auto* ff = std::get_if<FamilyFailure>(&r)) {
            pr.timings["family"] = seconds_since(t0);
            stages.push_back({{"stage", "family"}, {"ok", false}, {"location", ff->location}, {"clause", ff->clause}});
            return finish("family", ff->location + ": " + ff->clause);
        }
        fam = std::move(std::get<RobustFamily4>(r));
    } catch (const std::exception& e) {
        pr.timings["family"] = seconds_since(t0);
        stages.push_back({{"stage", "family"}, {"ok", false}, {"error", e.what()}});
        return finish("family", e.what());
    }
    pr.timings["family"] = seconds_since(t0);
    stages.push_back({{"stage", "family"}, {"ok", true}});

    t0 = std::chrono::steady_clock::now();
    TripleIndex idx1(*fam, cfg.zeta_star);
    TripleIndex idx2(*fam, cfg.zeta_star2);
    pr.timings["index"] = seconds_since(t0);
    stages.push_back({{"stage", "index"},
                      {"ok", true},
                      {"connectable_zeta_star", idx1.num_connectable()},
                      {"connectable_zeta_star2", idx2.num_connectable()}});

    Attempt last;
    for (int a = 0; a < cfg.restarts; ++a) {
        try {
            last = run_attempt(idx1, idx2, cfg, a, pr.timings);
        } catch (const BudgetExceeded& e) {
            last = Attempt{};
            last.failed_stage = "budget";
            last.diagnostics = e.what();
        } catch (const PreconditionError& e) {
            last = Attempt{};
            last.failed_stage = "connection-precondition";
            last.diagnostics = e.what();
        }
        for (auto& s : last.stages) {
            s["attempt"] = a;
            stages.push_back(s);
        }
        if (last.cycle) {
            if (!validate_result(h, *last.cycle)) throw std::logic_error("uncertified cycle");
            pr.cycle = std::move(last.cycle);
            pr.report["stages"] = stages;
            pr.report["outcome"] = "cycle";
            pr.report["attempts"] = a + 1;
            pr.report["cycle_digest"] = sequence_digest(*pr.cycle);
            return pr;
        }
    }
    pr.report["attempts"] = cfg.restarts;
    return finish(last.failed_stage, last.diagnostics);
}

}  // namespace hyperham
