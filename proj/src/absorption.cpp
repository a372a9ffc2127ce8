#include "hyperham/absorption.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace hyperham {

Sequence Elf::long_path() const {
    Sequence s(u.begin(), u.end());
    s.insert(s.end(), x.begin(), x.end());
    s.insert(s.end(), w.begin(), w.end());
    return s;
}

Sequence Elf::short_path() const {
    Sequence s(u.begin(), u.end());
    s.insert(s.end(), w.begin(), w.end());
    return s;
}

std::array<Sequence, 5> Absorber::paths() const {
    std::array<Sequence, 5> out;
    for (int i = 0; i < 4; ++i) out[i] = {b[i][0], b[i][1], b[i][2], elf.x[i], b[i][3], b[i][4], b[i][5]};
    out[4] = elf.short_path();
    return out;
}

std::array<Sequence, 5> Absorber::paths_after(const Quadruple& z) const {
    std::array<Sequence, 5> out;
    for (int i = 0; i < 4; ++i) out[i] = {b[i][0], b[i][1], b[i][2], z[i], b[i][3], b[i][4], b[i][5]};
    out[4] = elf.long_path();
    return out;
}

std::vector<Vertex> Absorber::vertices() const {
    std::vector<Vertex> v;
    for (const auto& p : paths()) v.insert(v.end(), p.begin(), p.end());
    return v;
}

bool is_link_path(const Hypergraph& h, Vertex v, const Sextuple& b) {
    for (int i = 0; i + 2 < 6; ++i)
        if (!h.has_edge({v, b[i], b[i + 1], b[i + 2]})) return false;
    return true;
}

namespace {

struct Ticker {
    std::uint64_t limit;
    std::uint64_t used = 0;
    bool tick() { return ++used <= limit; }
    bool left() const { return used < limit; }
};

std::vector<Vertex> shuffled_members(const VertexSet& s, std::uint64_t seed) {
    auto v = s.members();
    Rng rng(seed);
    rng.shuffle(v);
    return v;
}

bool distinct(std::span<const Vertex> vs) {
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            if (vs[i] == vs[j]) return false;
    return true;
}

}  // namespace

std::vector<Sextuple> joint_link_paths(const TripleIndex& idx, Vertex a, Vertex x, std::size_t limit,
                                       const VertexSet& forbidden, const SearchOptions& opt) {
    const RobustFamily4& f = idx.family();
    if (a == x) throw std::invalid_argument("joint_link_paths needs a != x");
    std::vector<Sextuple> out;
    if (limit == 0) return out;
    VertexSet avail = forbidden.complement();
    if (a >= 0) avail.erase(a);
    avail.erase(x);
    if (avail.size() < 6) return out;
    // 3-uniform completions in H_a ∩ H_x restricted to avail
    auto joint = [&](Vertex p, Vertex q) {
        VertexSet s = f.completions(p, q, x) & avail;
        if (a >= 0) s &= f.completions(p, q, a);
        return s;
    };
    const auto order = shuffled_members(avail, opt.seed);
    Ticker t{opt.budget};
    auto accept = [&](const Sextuple& b) {
        if (!distinct(b) || !is_link_path(f.host(), x, b)) return;
        if (a >= 0 && !is_link_path(f.host(), a, b)) return;
        if (!idx.connectable(b[0], b[1], b[2]) || !idx.connectable(b[3], b[4], b[5])) return;
        if (std::find(out.begin(), out.end(), b) == out.end()) out.push_back(b);
    };

    // K(3)_{2,2,2} with classes {b1,b4}, {b2,b5}, {b3,b6}
    for (Vertex b1 : order) {
        for (Vertex b2 : order) {
            if (b2 == b1 || out.size() >= limit || !t.tick()) break;
            VertexSet c3 = joint(b1, b2);
            for (Vertex b3 : order) {
                if (out.size() >= limit || !t.left()) break;
                if (!c3.contains(b3) || b3 == b1 || b3 == b2 || !idx.connectable(b1, b2, b3)) continue;
                VertexSet c4 = joint(b2, b3);
                for (Vertex b4 : order) {
                    if (out.size() >= limit || !t.tick()) break;
                    if (!c4.contains(b4) || b4 == b1 || !idx.connectable(b4, b2, b3)) continue;
                    VertexSet c5 = joint(b1, b3) & joint(b4, b3);
                    for (Vertex b5 : order) {
                        if (out.size() >= limit || !t.left()) break;
                        if (!c5.contains(b5) || b5 == b1 || b5 == b2 || b5 == b4) continue;
                        if (!idx.connectable(b1, b5, b3) || !idx.connectable(b4, b5, b3)) continue;
                        VertexSet c6 = joint(b1, b2) & joint(b4, b2) & joint(b1, b5) & joint(b4, b5);
                        for (Vertex b6 : order) {
                            if (!c6.contains(b6) || b6 == b1 || b6 == b2 || b6 == b3 || b6 == b4 || b6 == b5) continue;
                            if (!t.tick()) break;
                            if (idx.connectable(b1, b2, b6) && idx.connectable(b4, b2, b6) &&
                                idx.connectable(b1, b5, b6) && idx.connectable(b4, b5, b6)) {
                                accept({b1, b2, b3, b4, b5, b6});
                                break;
                            }
                        }
                    }
                }
            }
        }
        if (out.size() >= limit || !t.left()) break;
    }
    if (out.size() >= limit) return out;

    // direct DFS along the path
    Ticker t2{opt.budget};
    for (Vertex b1 : order) {
        for (Vertex b2 : order) {
            if (b2 == b1 || out.size() >= limit || !t2.tick()) break;
            VertexSet c3 = joint(b1, b2);
            for (Vertex b3 : order) {
                if (out.size() >= limit || !t2.left()) break;
                if (!c3.contains(b3) || !idx.connectable(b1, b2, b3)) continue;
                VertexSet c4 = joint(b2, b3);
                c4.erase(b1);
                for (Vertex b4 : order) {
                    if (out.size() >= limit || !t2.tick()) break;
                    if (!c4.contains(b4)) continue;
                    VertexSet c5 = joint(b3, b4);
                    c5.erase(b1);
                    c5.erase(b2);
                    for (Vertex b5 : order) {
                        if (out.size() >= limit || !t2.left()) break;
                        if (!c5.contains(b5)) continue;
                        VertexSet c6 = joint(b4, b5);
                        for (Vertex v : {b1, b2, b3}) c6.erase(v);
                        for (Vertex b6 : order) {
                            if (!c6.contains(b6)) continue;
                            if (!t2.tick()) break;
                            if (idx.connectable(b4, b5, b6)) {
                                accept({b1, b2, b3, b4, b5, b6});
                                break;
                            }
                        }
                    }
                }
            }
        }
        if (out.size() >= limit || !t2.left()) break;
    }
    return out;
}

namespace {

bool elf_ok(const TripleIndex& idx, const Elf& e) {
    const Hypergraph& h = idx.family().host();
    Sequence l = e.long_path();
    if (!distinct(l)) return false;
    return idx.connectable(e.u[0], e.u[1], e.u[2]) && idx.connectable(e.w[0], e.w[1], e.w[2]) &&
           is_valid(l, h, SeqKind::path) && is_valid(e.short_path(), h, SeqKind::path);
}

// Vertices in path order u1 u2 u3 u4 x1 x2 x3 x4 w1 w2 w3 cycle through the
// four classes; every cross quadruple of assigned vertices must be a bridge.
struct K3332 {
    const TripleIndex& idx;
    const VertexSet& avail;
    const std::vector<Vertex>& order;
    Ticker& t;
    std::array<Vertex, 11> v{};
    std::array<std::vector<int>, 4> cls;  // positions assigned per class

    bool bridge(Vertex a, Vertex b, Vertex c, Vertex d) const {
        return idx.connectable(a, b, c) && idx.connectable(b, c, d) && idx.family().host().has_edge({a, b, c, d});
    }

    bool consistent(int pos) const {
        const int c = pos % 4;
        std::array<int, 4> pick{};
        std::function<bool(int)> rec = [&](int k) -> bool {
            if (k == 4) return bridge(v[pick[0]], v[pick[1]], v[pick[2]], v[pick[3]]);
            if (k == c) {
                pick[k] = pos;
                return rec(k + 1);
            }
            for (int p : cls[k]) {
                pick[k] = p;
                if (!rec(k + 1)) return false;
            }
            return true;
        };
        for (int k = 0; k < 4; ++k)
            if (k != c && cls[k].empty()) return true;
        return rec(0);
    }

    bool rec(int pos) {
        if (pos == 11) return true;
        if (!t.tick()) return false;
        VertexSet cand = avail;
        for (int p = 0; p < pos; ++p) cand.erase(v[p]);
        if (pos >= 3) cand &= idx.family().completions(v[pos - 3], v[pos - 2], v[pos - 1]);
        for (Vertex x : order) {
            if (!cand.contains(x)) continue;
            v[pos] = x;
            if (pos == 2 && !idx.connectable(v[0], v[1], v[2])) continue;
            cls[pos % 4].push_back(pos);
            const bool ok = consistent(pos);
            if (ok && rec(pos + 1)) return true;
            cls[pos % 4].pop_back();
            if (!t.left()) return false;
        }
        return false;
    }
};

std::optional<Elf> elf_k3332(const TripleIndex& idx, const VertexSet& avail, const std::vector<Vertex>& order,
                             Ticker& t) {
    K3332 k{idx, avail, order, t, {}, {}};
    if (!k.rec(0)) return std::nullopt;
    Elf e;
    for (int i = 0; i < 4; ++i) e.u[i] = k.v[i];
    for (int i = 0; i < 4; ++i) e.x[i] = k.v[4 + i];
    for (int i = 0; i < 3; ++i) e.w[i] = k.v[8 + i];
    return e;
}

std::optional<Elf> elf_direct(const TripleIndex& idx, const VertexSet& avail, const std::vector<Vertex>& order,
                              Ticker& t, std::uint64_t seed) {
    const RobustFamily4& f = idx.family();
    const CompletionFn comp = [&f](std::span<const Vertex> s) { return f.completions(s[0], s[1], s[2]); };
    Rng rng(seed);
    for (Vertex u1 : order)
        for (Vertex u2 : order) {
            if (u2 == u1) continue;
            if (!t.tick()) return std::nullopt;
            for (Vertex u3 : order) {
                if (u3 == u1 || u3 == u2 || !idx.connectable(u1, u2, u3)) continue;
                std::array<Vertex, 3> base{u1, u2, u3};
                VertexSet c4 = f.completions(u1, u2, u3) & avail;
                for (Vertex u4 : order) {
                    if (!c4.contains(u4)) continue;
                    VertexSet c5 = f.completions(u2, u3, u4) & avail;
                    c5.erase(u1);
                    for (Vertex w1 : order) {
                        if (!c5.contains(w1)) continue;
                        VertexSet c6 = f.completions(u3, u4, w1) & avail;
                        c6.erase(u1);
                        c6.erase(u2);
                        for (Vertex w2 : order) {
                            if (!c6.contains(w2)) continue;
                            if (!t.tick()) return std::nullopt;
                            VertexSet c7 = f.completions(u4, w1, w2) & avail;
                            for (Vertex v : base) c7.erase(v);
                            for (Vertex w3 : order) {
                                if (!c7.contains(w3) || !idx.connectable(w1, w2, w3)) continue;
                                Sequence seq = {u1, u2, u3, u4, -1, -1, -1, -1, w1, w2, w3};
                                TemplateFill fill = fill_template(4, comp, seq, avail, rng, 2000);
                                t.used += fill.expansions;
                                if (fill.found) {
                                    Elf e;
                                    for (int i = 0; i < 4; ++i) e.u[i] = seq[i];
                                    for (int i = 0; i < 4; ++i) e.x[i] = seq[4 + i];
                                    for (int i = 0; i < 3; ++i) e.w[i] = seq[8 + i];
                                    return e;
                                }
                                if (!t.left()) return std::nullopt;
                                break;
                            }
                        }
                    }
                }
            }
        }
    return std::nullopt;
}

}  // namespace

std::vector<Elf> find_elves(const TripleIndex& idx, std::size_t limit, const VertexSet& forbidden,
                            const SearchOptions& opt) {
    std::vector<Elf> out;
    VertexSet avail = forbidden.complement();
    for (std::size_t round = 0; out.size() < limit && avail.size() >= 11; ++round) {
        const auto order = shuffled_members(avail, opt.seed + round);
        Ticker t{opt.budget};
        auto e = elf_k3332(idx, avail, order, t);
        if (!e || !elf_ok(idx, *e)) {
            Ticker t2{opt.budget};
            e = elf_direct(idx, avail, order, t2, opt.seed + round);
        }
        if (!e || !elf_ok(idx, *e)) break;
        out.push_back(*e);
        for (Vertex v : e->long_path()) avail.erase(v);
    }
    return out;
}

AbsorberCheck verify_absorber(const TripleIndex& idx, const Absorber& ab) {
    const Hypergraph& h = idx.family().host();
    AbsorberCheck c;
    auto verts = ab.vertices();
    if (verts.size() != 35 || !distinct(verts)) {
        c.message = "absorber vertices are not 35 distinct vertices";
        return c;
    }
    for (Vertex v : verts)
        if (v < 0 || v >= h.n()) {
            c.message = "vertex out of range";
            return c;
        }
    if (ab.target) {
        for (Vertex a : *ab.target)
            if (std::find(verts.begin(), verts.end(), a) != verts.end()) {
                c.message = "absorber meets its target";
                return c;
            }
    }
    for (int i = 0; i < 4; ++i) {
        if (!is_link_path(h, ab.elf.x[i], ab.b[i])) {
            c.message = "b" + std::to_string(i + 1) + " is not a path in the link of x" + std::to_string(i + 1);
            return c;
        }
        if (ab.target && !is_link_path(h, (*ab.target)[i], ab.b[i])) {
            c.message = "b" + std::to_string(i + 1) + " is not a path in the link of a" + std::to_string(i + 1);
            return c;
        }
        if (!idx.connectable(ab.b[i][0], ab.b[i][1], ab.b[i][2]) ||
            !idx.connectable(ab.b[i][3], ab.b[i][4], ab.b[i][5])) {
            c.message = "b" + std::to_string(i + 1) + " has a non-connectable end triple";
            return c;
        }
    }
    if (!elf_ok(idx, ab.elf)) {
        c.message = "elf paths or end triples fail";
        return c;
    }
    for (const auto& p : ab.paths())
        if (!is_valid(p, h, SeqKind::path)) {
            c.message = "derived path invalid";
            return c;
        }
    c.ok = true;
    return c;
}

bool swap_feasible(const Hypergraph& h, const Absorber& ab, const Quadruple& z) {
    for (int i = 0; i < 4; ++i)
        if (!is_link_path(h, z[i], ab.b[i])) return false;
    return true;
}

AbsorberSearch find_absorber(const TripleIndex& idx, const std::optional<Quadruple>& target, const VertexSet& forbidden,
                             const SearchOptions& opt) {
    AbsorberSearch res;
    VertexSet banned = forbidden;
    if (target)
        for (Vertex a : *target) banned.insert(a);
    // a few elves, each tried against the four link-path searches
    for (int attempt = 0; attempt < 4; ++attempt) {
        SearchOptions eo = opt;
        eo.seed = Rng::derive(opt.seed, attempt).next_u64();
        auto elves = find_elves(idx, 1, banned, eo);
        if (elves.empty()) {
            res.stage = "elf";
            return res;
        }
        Absorber ab;
        ab.target = target;
        ab.elf = elves[0];
        VertexSet used = banned;
        for (Vertex v : ab.elf.long_path()) used.insert(v);
        bool ok = true;
        for (int i = 0; i < 4 && ok; ++i) {
            SearchOptions so = opt;
            so.seed = Rng::derive(eo.seed, 10 + i).next_u64();
            const Vertex a = target ? (*target)[i] : -1;
            auto bs = joint_link_paths(idx, a, ab.elf.x[i], 1, used, so);
            if (bs.empty()) {
                ok = false;
                res.stage = "link path " + std::to_string(i + 1);
                break;
            }
            ab.b[i] = bs[0];
            for (Vertex v : bs[0]) used.insert(v);
        }
        if (!ok) continue;
        AbsorberCheck chk = verify_absorber(idx, ab);
        if (!chk.ok) throw std::logic_error("absorber failed re-verification: " + chk.message);
        res.absorber = ab;
        res.stage.clear();
        return res;
    }
    return res;
}

std::variant<AbsorbingPath, AbsorbingFailure> build_absorbing_path(const TripleIndex& idx, const VertexSet& reservoir,
                                                                   const AbsorbingConfig& cfg) {
    const Hypergraph& h = idx.family().host();
    const int n = h.n();
    if (cfg.n_abs < 0) throw std::invalid_argument("n_abs must be nonnegative");
    AbsorbingPath ap;
    VertexSet forbidden = reservoir;
    std::vector<Sequence> pieces;
    std::vector<std::pair<int, int>> owners;
    for (int k = 0; k < cfg.n_abs; ++k) {
        SearchOptions so = cfg.search;
        so.seed = Rng::derive(cfg.search.seed, k).next_u64();
        AbsorberSearch s = find_absorber(idx, std::nullopt, forbidden, so);
        if (!s.absorber)
            return AbsorbingFailure{"absorber-collection",
                                    "absorber " + std::to_string(k + 1) + " of " + std::to_string(cfg.n_abs) +
                                        " not found (stage " + s.stage + ")"};
        for (Vertex v : s.absorber->vertices()) forbidden.insert(v);
        const auto ps = s.absorber->paths();
        for (int i = 0; i < 5; ++i) {
            pieces.push_back(ps[i]);
            owners.push_back({k, i});
        }
        ap.absorbers.push_back(*s.absorber);
    }
    if (pieces.empty()) {
        // no absorbers: one short path with connectable end triples
        TuplePredicate ends = [&](std::span<const Vertex> t) { return idx.connectable(t); };
        Rng rng(cfg.search.seed);
        PathSearch ps = find_path_with_ends(h, idx.family().index(), forbidden.complement(), 7, ends, rng, cfg.search.budget);
        if (!ps.path) return AbsorbingFailure{"absorber-collection", "no short path with connectable ends"};
        ap.path = *ps.path;
        ap.segments.push_back({-1, 0, 0, ap.path.size()});
    } else {
        ap.path = pieces[0];
        ap.segments.push_back({owners[0].first, owners[0].second, 0, pieces[0].size()});
        for (std::size_t s = 1; s < pieces.size(); ++s) {
            const Triple from{ap.path[ap.path.size() - 3], ap.path[ap.path.size() - 2], ap.path.back()};
            const Triple to{pieces[s][0], pieces[s][1], pieces[s][2]};
            VertexSet allowed = forbidden.complement();
            ConnectResult cr;
            for (int attempt = 0; attempt < 3 && !cr.path; ++attempt) {
                ConnectOptions co = cfg.connect;
                co.seed = Rng::derive(cfg.connect.seed, s * 16 + attempt).next_u64();
                cr = connect4(idx, from, to, cfg.connection_inner, allowed, co);
            }
            if (!cr.path)
                return AbsorbingFailure{"connection", "segment " + std::to_string(s) + ": " + cr.diagnostics};
            const Sequence& c = *cr.path;
            for (std::size_t i = 3; i + 3 < c.size(); ++i) {
                ap.path.push_back(c[i]);
                forbidden.insert(c[i]);
            }
            ap.connections.push_back(c);
            ap.segments.push_back({owners[s].first, owners[s].second, ap.path.size(), pieces[s].size()});
            ap.path.insert(ap.path.end(), pieces[s].begin(), pieces[s].end());
        }
    }
    Validation v = validate(ap.path, h, SeqKind::path);
    if (!v.ok) throw std::logic_error("absorbing path failed validation: " + v.message);
    for (Vertex x : ap.path)
        if (reservoir.contains(x)) throw std::logic_error("absorbing path meets the reservoir");
    ap.size_clause = ap.path.size() <= cfg.theta_star * n + 1e-9;
    if (cfg.enforce_size && !ap.size_clause)
        return AbsorbingFailure{"size", "|V(P_A)| = " + std::to_string(ap.path.size()) + " exceeds theta* n"};
    return ap;
}

AbsorbOutcome absorb(const Hypergraph& h, const AbsorbingPath& ap, const VertexSet& z, std::uint64_t seed) {
    const int n = h.n();
    if (z.size() % 4 != 0) throw AbsorbError("|Z| = " + std::to_string(z.size()) + " is not divisible by 4");
    VertexSet on_path(n);
    for (Vertex v : ap.path) on_path.insert(v);
    if (z.intersects(on_path)) throw AbsorbError("Z meets the absorbing path");
    AbsorbOutcome out;
    if (z.empty()) {
        out.path = ap.path;
        return out;
    }
    std::vector<Vertex> rest = z.members();
    Rng rng(seed);
    rng.shuffle(rest);
    std::vector<char> taken(ap.absorbers.size(), 0);
    while (!rest.empty()) {
        bool placed = false;
        std::uint64_t work = 0;
        for (std::size_t j = 0; j < ap.absorbers.size() && !placed; ++j) {
            if (taken[j]) continue;
            const Absorber& ab = ap.absorbers[j];
            const std::size_t m = rest.size();
            // 4-subsets of the remaining vertices in order, each in all orders
            for (std::size_t i0 = 0; i0 < m && !placed && work < 400'000; ++i0)
                for (std::size_t i1 = i0 + 1; i1 < m && !placed; ++i1)
                    for (std::size_t i2 = i1 + 1; i2 < m && !placed; ++i2)
                        for (std::size_t i3 = i2 + 1; i3 < m && !placed; ++i3) {
                            Quadruple q{rest[i0], rest[i1], rest[i2], rest[i3]};
                            std::sort(q.begin(), q.end());
                            do {
                                ++work;
                                if (swap_feasible(h, ab, q)) {
                                    placed = true;
                                    taken[j] = 1;
                                    out.assignment.push_back({static_cast<int>(j), q});
                                    for (Vertex v : q) rest.erase(std::find(rest.begin(), rest.end(), v));
                                    break;
                                }
                            } while (std::next_permutation(q.begin(), q.end()));
                        }
        }
        if (!placed) {
            std::string q;
            for (std::size_t i = 0; i < std::min<std::size_t>(4, rest.size()); ++i)
                q += (i ? "," : "") + std::to_string(rest[i]);
            throw AbsorbError("no feasible absorber for quadruple {" + q + "}");
        }
    }
    // positions: x_i slots get z_i; the fifth path receives x1..x4 after u4
    std::vector<Vertex> replace(ap.path.size(), -1);
    std::vector<std::vector<Vertex>> insert_before(ap.path.size());
    for (const auto& [j, q] : out.assignment) {
        for (const auto& seg : ap.segments) {
            if (seg.absorber != j) continue;
            if (seg.path < 4) {
                replace[seg.offset + 3] = q[seg.path];
            } else {
                const auto& x = ap.absorbers[j].elf.x;
                insert_before[seg.offset + 4].assign(x.begin(), x.end());
            }
        }
    }
    for (std::size_t i = 0; i < ap.path.size(); ++i) {
        out.path.insert(out.path.end(), insert_before[i].begin(), insert_before[i].end());
        out.path.push_back(replace[i] >= 0 ? replace[i] : ap.path[i]);
    }
    Validation v = validate(out.path, h, SeqKind::path);
    if (!v.ok) throw std::logic_error("absorbed path failed validation: " + v.message);
    return out;
}

}  // namespace hyperham
