#pragma once
#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gg/bitset.hpp"
#include "gg/generation.hpp"
#include "gg/gengraph.hpp"
#include "gg/lattice.hpp"

namespace gg {

// An anonymized connected component, stored twin-compressed: vertices with
// the same neighborhood are merged into classes carrying exact multiplicities.
// No tuple or subgroup labels are retained — everything here is computable
// from the unlabeled graph alone (validated against explicit graphs in the
// tests).  Loops and within-class adjacency (a class whose vertices are
// pairwise adjacent) are tracked separately from the cross-class rows.
struct AnonComponent {
    std::vector<cpp_int> mult;
    std::vector<char> loop;
    std::vector<char> selfadj;      // meaningful only when mult >= 2
    std::vector<DynBitset> adj;     // symmetric, diagonal excluded

    std::size_t classes() const { return mult.size(); }

    cpp_int total_vertices() const {
        cpp_int s = 0;
        for (const auto& m : mult) s += m;
        return s;
    }
    cpp_int edge_count() const {
        cpp_int e = 0;
        for (std::size_t i = 0; i < classes(); ++i) {
            adj[i].for_each_set([&](std::size_t j) {
                if (j > i) e += mult[i] * mult[j];
            });
            if (selfadj[i]) e += mult[i] * (mult[i] - 1) / 2;
        }
        return e;
    }
    cpp_int loop_count() const {
        cpp_int l = 0;
        for (std::size_t i = 0; i < classes(); ++i)
            if (loop[i]) l += mult[i];
        return l;
    }
    cpp_int degree(std::size_t c) const { // loops not counted
        cpp_int d = 0;
        adj[c].for_each_set([&](std::size_t j) { d += mult[j]; });
        if (selfadj[c]) d += mult[c] - 1;
        return d;
    }
    bool has_3cycle() const {
        for (std::size_t i = 0; i < classes(); ++i)
            if (selfadj[i]) {
                if (mult[i] >= 3) return true;
                if (mult[i] >= 2 && adj[i].any()) return true;
            }
        for (std::size_t i = 0; i < classes(); ++i) {
            bool found = false;
            adj[i].for_each_set([&](std::size_t j) {
                if (found || j <= i) return;
                DynBitset common = adj[i];
                common &= adj[j];
                common.for_each_set([&](std::size_t k) {
                    if (k > j) found = true;
                });
            });
            if (found) return true;
        }
        return false;
    }
    bool has_degree1() const {
        for (std::size_t i = 0; i < classes(); ++i)
            if (degree(i) == 1) return true;
        return false;
    }
    cpp_int nu() const {
        return has_3cycle() ? cpp_int(2 * edge_count() + loop_count()) : edge_count();
    }
    bool has_universal_vertex() const {
        cpp_int total = total_vertices();
        for (std::size_t i = 0; i < classes(); ++i)
            if (degree(i) == total - 1) return true;
        return false;
    }

    // 2-coloring over classes; loops and within-class edges break it.
    bool two_color(std::vector<int>& color) const {
        color.assign(classes(), -1);
        for (std::size_t i = 0; i < classes(); ++i) {
            if (loop[i]) return false;
            if (selfadj[i] && mult[i] >= 2) return false;
        }
        for (std::size_t s = 0; s < classes(); ++s) {
            if (color[s] != -1) continue;
            color[s] = 0;
            std::vector<std::size_t> q{s};
            while (!q.empty()) {
                std::size_t v = q.back();
                q.pop_back();
                bool bad = false;
                adj[v].for_each_set([&](std::size_t w) {
                    if (color[w] == -1) {
                        color[w] = 1 - color[v];
                        q.push_back(w);
                    } else if (color[w] == color[v]) {
                        bad = true;
                    }
                });
                if (bad) return false;
            }
        }
        return true;
    }
    // twin merging collapses K_2 into one self-adjacent class of weight 2; it
    // is still a (degenerate) bipartite star with parts 1, 1
    bool is_k2() const {
        return classes() == 1 && mult[0] == 2 && selfadj[0] && !loop[0];
    }
    bool is_bipartite() const {
        if (is_k2()) return true;
        std::vector<int> c;
        return two_color(c);
    }
    // (smaller, larger) part sizes; requires bipartite and connected
    std::pair<cpp_int, cpp_int> parts() const {
        if (is_k2()) return {cpp_int(1), cpp_int(1)};
        std::vector<int> c;
        if (!two_color(c)) fail("NotBipartite", "parts() on a non-bipartite component");
        cpp_int p0 = 0, p1 = 0;
        for (std::size_t i = 0; i < classes(); ++i) (c[i] == 0 ? p0 : p1) += mult[i];
        return p0 <= p1 ? std::make_pair(p0, p1) : std::make_pair(p1, p0);
    }
    bool is_star() const {
        if (!is_bipartite()) return false;
        auto [small, big] = parts();
        return small == 1 && big >= 1;
    }

    // Merge twin classes to a fixpoint: false twins (equal loop flag and equal
    // rows, necessarily non-adjacent) and true twins (mutually adjacent, equal
    // rows outside the pair, both selfadj or singletons).
    void twin_merge() {
        normalize_selfadj();
        bool changed = true;
        while (changed) {
            changed = merge_false_twins();
            changed = merge_true_twins() || changed;
        }
    }

    // Deterministic canonical certificate for multiset comparison, via
    // color refinement plus backtracking individualization.  Exponential on
    // highly symmetric graphs; prefer invariant_string + anon_isomorphic.
    std::string canonical_string() const;

    // Polynomial isomorphism invariant: stable color refinement digest.
    // Equal for isomorphic components; not complete (use anon_isomorphic).
    std::string invariant_string() const;

    nlohmann::json to_json() const {
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t i = 0; i < classes(); ++i) {
            std::vector<std::size_t> r;
            adj[i].for_each_set([&](std::size_t j) { r.push_back(j); });
            rows.push_back(r);
        }
        nlohmann::json j;
        j["mult"] = nlohmann::json::array();
        for (const auto& m : mult) j["mult"].push_back(m.str());
        j["loop"] = std::vector<int>(loop.begin(), loop.end());
        j["selfadj"] = std::vector<int>(selfadj.begin(), selfadj.end());
        j["adj"] = rows;
        j["vertices"] = total_vertices().str();
        j["e"] = edge_count().str();
        j["l"] = loop_count().str();
        j["nu"] = nu().str();
        return j;
    }

    static AnonComponent from_json(const nlohmann::json& j) {
        AnonComponent c;
        for (const auto& s : j.at("mult")) c.mult.emplace_back(cpp_int(s.get<std::string>()));
        for (int v : j.at("loop")) c.loop.push_back(static_cast<char>(v));
        for (int v : j.at("selfadj")) c.selfadj.push_back(static_cast<char>(v));
        std::size_t n = c.mult.size();
        c.adj.assign(n, DynBitset(n));
        const auto& rows = j.at("adj");
        for (std::size_t i = 0; i < n; ++i)
            for (auto w : rows.at(i)) c.adj[i].set(w.get<std::size_t>());
        return c;
    }

private:
    void normalize_selfadj() {
        for (std::size_t i = 0; i < classes(); ++i)
            if (mult[i] <= 1) selfadj[i] = 0;
    }

    void apply_merge(const std::vector<std::vector<std::size_t>>& groups, bool make_selfadj) {
        // groups: partition of class indices; singleton groups stay as-is
        std::size_t n = classes(), k = groups.size();
        std::vector<std::size_t> gid(n);
        for (std::size_t g = 0; g < k; ++g)
            for (auto i : groups[g]) gid[i] = g;
        std::vector<cpp_int> nm(k, 0);
        std::vector<char> nl(k, 0), ns(k, 0);
        std::vector<DynBitset> na(k, DynBitset(k));
        for (std::size_t g = 0; g < k; ++g) {
            for (auto i : groups[g]) {
                nm[g] += mult[i];
                nl[g] = loop[i];
                if (selfadj[i]) ns[g] = 1;
                adj[i].for_each_set([&](std::size_t j) {
                    if (gid[j] != g) na[g].set(gid[j]);
                });
            }
            if (groups[g].size() > 1 && make_selfadj) ns[g] = 1;
        }
        mult = std::move(nm);
        loop = std::move(nl);
        selfadj = std::move(ns);
        adj = std::move(na);
        normalize_selfadj();
    }

    bool merge_false_twins() {
        std::map<std::pair<int, std::vector<std::uint64_t>>, std::vector<std::size_t>> buckets;
        for (std::size_t i = 0; i < classes(); ++i) {
            if (selfadj[i]) continue; // selfadj classes cannot false-merge
            buckets[{loop[i], adj[i].words()}].push_back(i);
        }
        bool any = false;
        std::vector<std::vector<std::size_t>> groups;
        std::vector<char> used(classes(), 0);
        for (auto& [key, mem] : buckets)
            if (mem.size() > 1) {
                any = true;
                groups.push_back(mem);
                for (auto i : mem) used[i] = 1;
            }
        if (!any) return false;
        for (std::size_t i = 0; i < classes(); ++i)
            if (!used[i]) groups.push_back({i});
        apply_merge(groups, false);
        return true;
    }

    bool merge_true_twins() {
        // candidates: selfadj classes and singletons; key = closed row
        std::map<std::pair<int, std::vector<std::uint64_t>>, std::vector<std::size_t>> buckets;
        for (std::size_t i = 0; i < classes(); ++i) {
            if (!selfadj[i] && mult[i] != 1) continue;
            DynBitset closed = adj[i];
            closed.set(i);
            buckets[{loop[i], closed.words()}].push_back(i);
        }
        bool any = false;
        std::vector<std::vector<std::size_t>> groups;
        std::vector<char> used(classes(), 0);
        for (auto& [key, mem] : buckets) {
            if (mem.size() < 2) continue;
            // equal closed rows force pairwise adjacency
            any = true;
            groups.push_back(mem);
            for (auto i : mem) used[i] = 1;
        }
        if (!any) return false;
        for (std::size_t i = 0; i < classes(); ++i)
            if (!used[i]) groups.push_back({i});
        apply_merge(groups, true);
        return true;
    }
};

// ---------------------------------------------------------------------------
// Canonical form.

namespace detail {

inline std::string cert_for_order(const AnonComponent& c, const std::vector<std::size_t>& order) {
    std::size_t n = c.classes();
    std::vector<std::size_t> pos(n);
    for (std::size_t k = 0; k < n; ++k) pos[order[k]] = k;
    std::string s;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t i = order[k];
        s += c.mult[i].str();
        s += c.loop[i] ? "L" : "l";
        s += c.selfadj[i] ? "S" : "s";
        s += ";";
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t k2 = k + 1; k2 < n; ++k2)
            s += c.adj[order[k]].test(order[k2]) ? '1' : '0';
    return s;
}

inline std::vector<std::string> init_colors(const AnonComponent& c) {
    std::vector<std::string> init(c.classes());
    for (std::size_t i = 0; i < c.classes(); ++i)
        init[i] = c.mult[i].str() + (c.loop[i] ? "L" : "l") + (c.selfadj[i] ? "S" : "s") + "/" +
                  c.degree(i).str();
    return init;
}

// Rank-compress signature strings jointly across one or two graphs, so the
// resulting integer colors are comparable between them.
inline std::size_t joint_compress(const std::vector<std::vector<std::string>>& raw,
                                  std::vector<std::vector<int>>& out) {
    std::vector<std::string> uniq;
    for (const auto& v : raw) uniq.insert(uniq.end(), v.begin(), v.end());
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    out.assign(raw.size(), {});
    for (std::size_t g = 0; g < raw.size(); ++g) {
        out[g].resize(raw[g].size());
        for (std::size_t i = 0; i < raw[g].size(); ++i)
            out[g][i] = static_cast<int>(
                std::lower_bound(uniq.begin(), uniq.end(), raw[g][i]) - uniq.begin());
    }
    return uniq.size();
}

// Refine integer colors to a joint stable partition: each round the signature
// is (own color, sorted neighbor colors), recompressed to shared ranks.
inline std::size_t joint_stable_colors(const std::vector<const AnonComponent*>& gs,
                                       std::vector<std::vector<int>>& colors,
                                       std::size_t cells) {
    std::size_t total = 0;
    for (const auto* g : gs) total += g->classes();
    for (std::size_t round = 0; round < total; ++round) {
        std::vector<std::vector<std::string>> sigs(gs.size());
        for (std::size_t g = 0; g < gs.size(); ++g) {
            sigs[g].resize(gs[g]->classes());
            for (std::size_t i = 0; i < gs[g]->classes(); ++i) {
                std::vector<int> nb;
                gs[g]->adj[i].for_each_set([&](std::size_t j) { nb.push_back(colors[g][j]); });
                std::sort(nb.begin(), nb.end());
                std::string s = std::to_string(colors[g][i]) + "|";
                for (int x : nb) {
                    s += std::to_string(x);
                    s += ',';
                }
                sigs[g][i] = std::move(s);
            }
        }
        std::vector<std::vector<int>> nc;
        std::size_t ncells = joint_compress(sigs, nc);
        if (ncells == cells) break;
        colors = std::move(nc);
        cells = ncells;
    }
    return cells;
}

} // namespace detail

inline std::string AnonComponent::invariant_string() const {
    std::vector<std::vector<int>> colors;
    std::size_t cells = detail::joint_compress({detail::init_colors(*this)}, colors);
    detail::joint_stable_colors({this}, colors, cells);
    const auto& col = colors[0];
    std::vector<std::string> lines(classes());
    for (std::size_t i = 0; i < classes(); ++i)
        lines[i] = std::to_string(col[i]) + "#" + mult[i].str() + (loop[i] ? "L" : "l") +
                   (selfadj[i] ? "S" : "s");
    std::sort(lines.begin(), lines.end());
    std::string s;
    for (const auto& l : lines) {
        s += l;
        s += ';';
    }
    std::map<std::pair<int, int>, long long> cnt;
    for (std::size_t i = 0; i < classes(); ++i)
        adj[i].for_each_set([&](std::size_t j) {
            if (j > i) ++cnt[{std::min(col[i], col[j]), std::max(col[i], col[j])}];
        });
    for (const auto& [k, v] : cnt)
        s += "|" + std::to_string(k.first) + "-" + std::to_string(k.second) + ":" +
             std::to_string(v);
    return s;
}

// Exact isomorphism test between twin-compressed class graphs: joint color
// refinement plus backtracking individualization, searching for one witness
// rather than a canonical minimum (fast even on symmetric cells).
inline bool anon_isomorphic(const AnonComponent& A, const AnonComponent& B) {
    std::size_t n = A.classes();
    if (n != B.classes()) return false;
    std::vector<const AnonComponent*> gs{&A, &B};
    std::function<bool(std::vector<std::vector<int>>, std::size_t)> rec =
        [&](std::vector<std::vector<int>> cols, std::size_t cells) -> bool {
        cells = detail::joint_stable_colors(gs, cols, cells);
        std::map<int, std::vector<std::size_t>> ca, cb;
        for (std::size_t i = 0; i < n; ++i) {
            ca[cols[0][i]].push_back(i);
            cb[cols[1][i]].push_back(i);
        }
        if (ca.size() != cb.size()) return false;
        for (auto ia = ca.begin(), ib = cb.begin(); ia != ca.end(); ++ia, ++ib)
            if (ia->first != ib->first || ia->second.size() != ib->second.size()) return false;
        int target = -1;
        std::size_t best = n + 1;
        for (const auto& [c, mem] : ca)
            if (mem.size() > 1 && mem.size() < best) {
                best = mem.size();
                target = c;
            }
        if (target < 0) {
            std::vector<std::size_t> map(n);
            for (const auto& [c, mem] : ca) map[mem[0]] = cb[c][0];
            for (std::size_t i = 0; i < n; ++i) {
                std::size_t j = map[i];
                if (A.mult[i] != B.mult[j] || A.loop[i] != B.loop[j] ||
                    A.selfadj[i] != B.selfadj[j])
                    return false;
                if (A.adj[i].count() != B.adj[j].count()) return false;
                bool ok = true;
                A.adj[i].for_each_set([&](std::size_t k) {
                    if (!B.adj[j].test(map[k])) ok = false;
                });
                if (!ok) return false;
            }
            return true;
        }
        std::size_t a = ca[target][0];
        int fresh = static_cast<int>(cells);
        for (std::size_t b : cb[target]) {
            auto c2 = cols;
            c2[0][a] = fresh;
            c2[1][b] = fresh;
            if (rec(std::move(c2), cells + 1)) return true;
        }
        return false;
    };
    std::vector<std::vector<int>> cols;
    std::size_t cells =
        detail::joint_compress({detail::init_colors(A), detail::init_colors(B)}, cols);
    return rec(std::move(cols), cells);
}

inline std::string AnonComponent::canonical_string() const {
    std::size_t n = classes();
    // individualization-refinement: refine colors to a stable partition; if a
    // cell is non-singleton, individualize each member in turn and recurse,
    // keeping the smallest certificate.  Exact canonical form.
    // colors are recompressed to rank tokens each round (sorted-order ranks
    // are isomorphism-invariant, and raw history strings grow multiplicatively)
    auto compress = [&](const std::vector<std::string>& raw) {
        std::vector<std::string> uniq = raw;
        std::sort(uniq.begin(), uniq.end());
        uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
        std::vector<std::string> out(n);
        for (std::size_t i = 0; i < n; ++i) {
            auto it = std::lower_bound(uniq.begin(), uniq.end(), raw[i]);
            out[i] = std::to_string(it - uniq.begin());
        }
        return std::make_pair(out, uniq.size());
    };
    auto refine = [&](const std::vector<std::string>& init) {
        auto [color, cells] = compress(init);
        for (std::size_t round = 0; round < n; ++round) {
            std::vector<std::string> next(n);
            for (std::size_t i = 0; i < n; ++i) {
                std::vector<std::string> nb;
                adj[i].for_each_set([&](std::size_t j) { nb.push_back(color[j]); });
                std::sort(nb.begin(), nb.end());
                next[i] = color[i] + "|";
                for (auto& x : nb) next[i] += x + ",";
            }
            auto [nc, ncells] = compress(next);
            if (ncells == cells) break;
            color = std::move(nc);
            cells = ncells;
        }
        return color;
    };
    std::string best;
    std::function<void(std::vector<std::string>)> rec = [&](std::vector<std::string> color) {
        color = refine(std::move(color));
        // first non-singleton cell by color value
        std::map<std::string, std::vector<std::size_t>> cells;
        for (std::size_t i = 0; i < n; ++i) cells[color[i]].push_back(i);
        for (auto& [cv, mem] : cells)
            if (mem.size() > 1) {
                for (std::size_t v : mem) {
                    auto c2 = color;
                    c2[v] += "!";
                    rec(std::move(c2));
                }
                return;
            }
        std::vector<std::size_t> order;
        for (auto& [cv, mem] : cells) order.push_back(mem[0]);
        std::string cert = detail::cert_for_order(*this, order);
        if (best.empty() || cert < best) best = cert;
    };
    std::vector<std::string> init(n);
    for (std::size_t i = 0; i < n; ++i)
        init[i] = mult[i].str() + (loop[i] ? "L" : "l") + (selfadj[i] ? "S" : "s") + "/" +
                  degree(i).str();
    rec(std::move(init));
    return best;
}

// ---------------------------------------------------------------------------
// Builders.

// Class-graph components of Gamma*_{a,b}(G) from the lattice: classes are
// (side, subgroup H) with phi_H(side length) > 0, weight phi_H(side length),
// adjacency H-K iff <H,K> = G.  Exact at any scale.
inline std::vector<AnonComponent> anon_components_from_lattice(const SubgroupLattice& L,
                                                               const GenerationTable& T, int a,
                                                               int b) {
    if (a < 0 || b < a) fail("ParameterOutOfRange", "need 0 <= a <= b");
    struct Cls {
        int side; // 0 = a-side, 1 = b-side (0 only when a != b ... see below)
        int sub;
        cpp_int m;
    };
    std::vector<Cls> cls;
    if (a == b) {
        for (int h = 0; h < L.size(); ++h) {
            const cpp_int& m = T.phi_exact(h, a);
            if (m > 0) cls.push_back({1, h, m});
        }
    } else {
        for (int h = 0; h < L.size(); ++h) {
            const cpp_int& m = T.phi_exact(h, a);
            if (m > 0) cls.push_back({0, h, m});
        }
        for (int h = 0; h < L.size(); ++h) {
            const cpp_int& m = T.phi_exact(h, b);
            if (m > 0) cls.push_back({1, h, m});
        }
    }
    std::size_t n = cls.size();
    std::vector<DynBitset> rows(n, DynBitset(n));
    std::vector<char> lp(n, 0), sa(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (a != b && cls[i].side == cls[j].side) continue;
            if (a == b && cls[i].side != cls[j].side) continue;
            if (L.join_is_full(cls[i].sub, cls[j].sub)) {
                rows[i].set(j);
                rows[j].set(i);
            }
        }
    if (a == b)
        for (std::size_t i = 0; i < n; ++i)
            if (cls[i].sub == L.full()) {
                lp[i] = 1;
                if (cls[i].m >= 2) sa[i] = 1;
            }
    // keep non-isolated classes, split into connected components
    std::vector<long long> comp(n, -1);
    std::vector<AnonComponent> out;
    for (std::size_t s = 0; s < n; ++s) {
        if (comp[s] != -1) continue;
        if (!rows[s].any() && !lp[s] && !(sa[s] && cls[s].m >= 2)) {
            comp[s] = -2;
            continue;
        }
        std::vector<std::size_t> members{s};
        comp[s] = 1;
        for (std::size_t qi = 0; qi < members.size(); ++qi)
            rows[members[qi]].for_each_set([&](std::size_t w) {
                if (comp[w] == -1) {
                    comp[w] = 1;
                    members.push_back(w);
                }
            });
        std::sort(members.begin(), members.end());
        AnonComponent c;
        std::size_t k = members.size();
        std::vector<long long> local(n, -1);
        for (std::size_t t = 0; t < k; ++t) local[members[t]] = static_cast<long long>(t);
        c.mult.resize(k);
        c.loop.assign(k, 0);
        c.selfadj.assign(k, 0);
        c.adj.assign(k, DynBitset(k));
        for (std::size_t t = 0; t < k; ++t) {
            std::size_t i = members[t];
            c.mult[t] = cls[i].m;
            c.loop[t] = lp[i];
            c.selfadj[t] = sa[i];
            rows[i].for_each_set(
                [&](std::size_t j) { c.adj[t].set(static_cast<std::size_t>(local[j])); });
        }
        c.twin_merge();
        out.push_back(std::move(c));
    }
    return out;
}

// Same components computed from an explicit (pruned) graph — the independent
// cross-validation route.  Initial classes: vertices grouped by loop flag and
// neighborhood (closed neighborhood for loop vertices), then the same twin
// fixpoint as the lattice route.
inline std::vector<AnonComponent> anon_components_from_graph(const GenGraph& g) {
    auto comps = components(g);
    std::vector<AnonComponent> out;
    for (const auto& cs : comps) {
        const auto& mem = cs.members;
        std::size_t k = mem.size();
        std::vector<long long> pos_of; // unified vertex id -> position in mem
        {
            std::size_t maxid = mem.empty() ? 0 : mem.back() + 1;
            pos_of.assign(maxid, -1);
            for (std::size_t t = 0; t < k; ++t) pos_of[mem[t]] = static_cast<long long>(t);
        }
        auto nbrs = [&](std::size_t t) {
            std::vector<std::size_t> r;
            for (std::size_t w : detail::graph_neighbors(g, mem[t]))
                r.push_back(static_cast<std::size_t>(pos_of[w]));
            std::sort(r.begin(), r.end());
            return r;
        };
        auto has_loop = [&](std::size_t t) {
            return g.same_side() && g.loops.test(mem[t]);
        };
        // group by (loop, neighborhood); loop vertices by closed neighborhood
        std::map<std::pair<int, std::vector<std::size_t>>, std::vector<std::size_t>> buckets;
        for (std::size_t t = 0; t < k; ++t) {
            auto key = nbrs(t);
            if (has_loop(t)) {
                key.push_back(t);
                std::sort(key.begin(), key.end());
            }
            buckets[{has_loop(t) ? 1 : 0, key}].push_back(t);
        }
        std::vector<std::vector<std::size_t>> groups;
        std::vector<std::size_t> gid(k);
        for (auto& [key, members] : buckets) {
            for (auto t : members) gid[t] = groups.size();
            groups.push_back(members);
        }
        AnonComponent c;
        std::size_t m = groups.size();
        c.mult.resize(m);
        c.loop.assign(m, 0);
        c.selfadj.assign(m, 0);
        c.adj.assign(m, DynBitset(m));
        for (std::size_t gi = 0; gi < m; ++gi) {
            c.mult[gi] = groups[gi].size();
            c.loop[gi] = has_loop(groups[gi][0]);
            for (std::size_t w : nbrs(groups[gi][0]))
                if (gid[w] != gi)
                    c.adj[gi].set(gid[w]);
                else
                    c.selfadj[gi] = 1;
        }
        c.twin_merge();
        out.push_back(std::move(c));
    }
    return out;
}

} // namespace gg
