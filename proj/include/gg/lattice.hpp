#pragma once
#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "gg/bitset.hpp"
#include "gg/config.hpp"
#include "gg/errors.hpp"
#include "gg/group.hpp"

namespace gg {

// Full subgroup lattice.  Enumeration: all cyclic subgroups, then closure
// under join-with-cyclic to a fixpoint (every subgroup is a join of cyclic
// ones, so this reaches everything).  Nodes sorted by (order, member list).
class SubgroupLattice {
public:
    struct Node {
        DynBitset members;
        std::size_t order;
        std::vector<Elem> gens;
        long long mobius = 0;
        bool maximal = false;
        bool normal = false;
    };

    static SubgroupLattice compute(const FiniteGroup& G, const RunConfig& cfg = {}) {
        if (G.order() > cfg.max_lattice)
            throw CapExceeded("lattice for order " + std::to_string(G.order()) +
                              " exceeds max_lattice=" + std::to_string(cfg.max_lattice));
        SubgroupLattice L;
        L.G_ = &G;
        std::unordered_map<DynBitset, int, DynBitsetHash> ids;
        std::vector<Node> nodes;
        auto add = [&](const DynBitset& bs, std::vector<Elem> gens) -> int {
            auto it = ids.find(bs);
            if (it != ids.end()) return it->second;
            int id = static_cast<int>(nodes.size());
            ids.emplace(bs, id);
            nodes.push_back(Node{bs, bs.count(), std::move(gens)});
            return id;
        };
        // cyclic seeds
        std::vector<int> cyclics;
        {
            DynBitset triv(G.order());
            triv.set(G.identity());
            add(triv, {});
            for (std::size_t g = 0; g < G.order(); ++g) {
                Elem e = static_cast<Elem>(g);
                int id = add(subgroup_closure(G, {e}), {e});
                if (std::find(cyclics.begin(), cyclics.end(), id) == cyclics.end())
                    cyclics.push_back(id);
            }
        }
        // close under join with cyclic subgroups
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            for (int c : cyclics) {
                if (nodes[c].members.is_subset_of(nodes[i].members)) continue;
                std::vector<Elem> gens = nodes[i].gens;
                gens.insert(gens.end(), nodes[c].gens.begin(), nodes[c].gens.end());
                DynBitset bs = subgroup_closure(G, gens);
                add(bs, std::move(gens));
            }
        }
        // canonical order
        std::vector<int> perm(nodes.size());
        for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
        std::sort(perm.begin(), perm.end(), [&](int a, int b) {
            if (nodes[a].order != nodes[b].order) return nodes[a].order < nodes[b].order;
            return nodes[a].members.lex_less(nodes[b].members);
        });
        L.nodes_.reserve(nodes.size());
        for (int p : perm) L.nodes_.push_back(std::move(nodes[p]));
        L.trivial_ = 0;
        L.full_ = static_cast<int>(L.nodes_.size()) - 1;
        L.index_.clear();
        for (std::size_t i = 0; i < L.nodes_.size(); ++i)
            L.index_.emplace(L.nodes_[i].members, static_cast<int>(i));
        L.finish();
        return L;
    }

    const FiniteGroup& group() const { return *G_; }
    int size() const { return static_cast<int>(nodes_.size()); }
    const Node& node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
    int full() const { return full_; }
    int trivial() const { return trivial_; }
    std::size_t index_in_group(int i) const { return G_->order() / nodes_[i].order; }

    bool leq(int i, int j) const { return up_[i].test(static_cast<std::size_t>(j)); }
    // ids of all supergroups of i (including i), ascending
    const std::vector<int>& supersets(int i) const { return up_list_[i]; }

    int id_of(const DynBitset& bs) const {
        auto it = index_.find(bs);
        return it == index_.end() ? -1 : it->second;
    }

    int join(int a, int b) const {
        if (a == b) return a;
        if (leq(a, b)) return b;
        if (leq(b, a)) return a;
        std::vector<Elem> gens = nodes_[a].gens;
        gens.insert(gens.end(), nodes_[b].gens.begin(), nodes_[b].gens.end());
        int r = id_of(subgroup_closure(*G_, gens));
        return r;
    }

    // Precomputed "join is the whole group" matrix (bit rows), built on first
    // use; recognition needs it for all pairs.
    bool join_is_full(int a, int b) const {
        if (join_full_.empty()) build_join_full();
        return join_full_[a].test(static_cast<std::size_t>(b));
    }

    std::vector<int> maximal_ids() const {
        std::vector<int> r;
        for (int i = 0; i < size(); ++i)
            if (nodes_[i].maximal) r.push_back(i);
        return r;
    }
    std::vector<int> normal_ids() const {
        std::vector<int> r;
        for (int i = 0; i < size(); ++i)
            if (nodes_[i].normal) r.push_back(i);
        return r;
    }
    std::vector<int> minimal_normal_ids() const {
        std::vector<int> r;
        for (int i = 0; i < size(); ++i) {
            if (!nodes_[i].normal || i == trivial_) continue;
            bool minimal = true;
            for (int j = 0; j < size() && minimal; ++j)
                if (j != trivial_ && j != i && nodes_[j].normal && leq(j, i)) minimal = false;
            if (minimal) r.push_back(i);
        }
        return r;
    }
    int socle_id() const {
        int s = trivial_;
        for (int m : minimal_normal_ids()) s = join(s, m);
        return s;
    }

    int frattini_id() const {
        DynBitset f(G_->order());
        for (std::size_t i = 0; i < G_->order(); ++i) f.set(i);
        bool any = false;
        for (int i = 0; i < size(); ++i)
            if (nodes_[i].maximal) {
                f &= nodes_[i].members;
                any = true;
            }
        if (!any) return trivial_; // trivial group: no maximals, Frat = 1
        return id_of(f);
    }

private:
    void finish() {
        int n = size();
        up_.assign(n, DynBitset(static_cast<std::size_t>(n)));
        up_list_.assign(n, {});
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (nodes_[i].order <= nodes_[j].order &&
                    nodes_[i].members.is_subset_of(nodes_[j].members)) {
                    up_[i].set(static_cast<std::size_t>(j));
                    up_list_[i].push_back(j);
                }
        // maximal flags
        for (int i = 0; i < n; ++i) {
            if (i == full_) continue;
            nodes_[i].maximal = up_list_[i].size() == 2; // itself and the full group
        }
        // normal flags (conjugation of generators by all of G)
        for (int i = 0; i < n; ++i) {
            bool ok = true;
            for (Elem h : nodes_[i].gens) {
                for (std::size_t g = 0; g < G_->order() && ok; ++g)
                    if (!nodes_[i].members.test(G_->conj(h, static_cast<Elem>(g)))) ok = false;
                if (!ok) break;
            }
            nodes_[i].normal = ok;
        }
        // Möbius by descending order: sum over K >= H of mu(K) = [H = full]
        for (int i = n - 1; i >= 0; --i) {
            long long s = (i == full_) ? 1 : 0;
            for (int j : up_list_[i])
                if (j != i) s -= nodes_[j].mobius;
            nodes_[i].mobius = s;
        }
    }

    void build_join_full() const {
        int n = size();
        join_full_.assign(n, DynBitset(static_cast<std::size_t>(n)));
        // join(a,b) = G iff no maximal subgroup contains both
        std::vector<int> maxs;
        for (int i = 0; i < n; ++i)
            if (nodes_[i].maximal) maxs.push_back(i);
        for (int a = 0; a < n; ++a)
            for (int b = a; b < n; ++b) {
                bool full = true;
                if (a != full_ && b != full_) {
                    for (int m : maxs)
                        if (leq(a, m) && leq(b, m)) {
                            full = false;
                            break;
                        }
                    if (full_ == trivial_) full = true; // trivial group
                }
                if (full) {
                    join_full_[a].set(static_cast<std::size_t>(b));
                    join_full_[b].set(static_cast<std::size_t>(a));
                }
            }
    }

    const FiniteGroup* G_ = nullptr;
    std::vector<Node> nodes_;
    std::vector<DynBitset> up_;
    std::vector<std::vector<int>> up_list_;
    std::unordered_map<DynBitset, int, DynBitsetHash> index_;
    mutable std::vector<DynBitset> join_full_;
    int full_ = 0, trivial_ = 0;
};

// ---------------------------------------------------------------------------
// Structural oracles.

inline DynBitset derived_subgroup(const FiniteGroup& G, const DynBitset& S) {
    std::vector<Elem> comms;
    DynBitset seen(G.order());
    S.for_each_set([&](std::size_t a) {
        S.for_each_set([&](std::size_t b) {
            Elem x = static_cast<Elem>(a), y = static_cast<Elem>(b);
            Elem c = G.mul(G.mul(G.inv(x), G.inv(y)), G.mul(x, y));
            if (!seen.test(c)) {
                seen.set(c);
                comms.push_back(c);
            }
        });
    });
    return subgroup_closure(G, comms);
}

inline DynBitset whole_group_set(const FiniteGroup& G) {
    DynBitset s(G.order());
    for (std::size_t i = 0; i < G.order(); ++i) s.set(i);
    return s;
}

inline bool oracle_soluble(const FiniteGroup& G) {
    DynBitset cur = whole_group_set(G);
    while (true) {
        DynBitset next = derived_subgroup(G, cur);
        if (next.count() == 1) return true;
        if (next == cur) return false;
        cur = next;
    }
}

inline bool oracle_nilpotent(const FiniteGroup& G) {
    // lower central series
    DynBitset whole = whole_group_set(G);
    DynBitset cur = whole;
    while (true) {
        // [G, cur]
        std::vector<Elem> comms;
        DynBitset seen(G.order());
        cur.for_each_set([&](std::size_t a) {
            for (std::size_t g = 0; g < G.order(); ++g) {
                Elem x = static_cast<Elem>(a), y = static_cast<Elem>(g);
                Elem c = G.mul(G.mul(G.inv(x), G.inv(y)), G.mul(x, y));
                if (!seen.test(c)) {
                    seen.set(c);
                    comms.push_back(c);
                }
            }
        });
        DynBitset next = subgroup_closure(G, comms);
        if (next.count() == 1) return true;
        if (next == cur) return false;
        cur = next;
    }
}

inline bool oracle_cyclic(const FiniteGroup& G) {
    for (std::size_t g = 0; g < G.order(); ++g)
        if (static_cast<std::size_t>(G.elem_order(static_cast<Elem>(g))) == G.order()) return true;
    return false;
}

inline bool oracle_simple(const FiniteGroup& G) {
    if (G.order() == 1) return false;
    for (std::size_t g = 1; g < G.order(); ++g) {
        // normal closure of g
        std::vector<Elem> cls;
        DynBitset seen(G.order());
        for (std::size_t h = 0; h < G.order(); ++h) {
            Elem c = G.conj(static_cast<Elem>(g), static_cast<Elem>(h));
            if (!seen.test(c)) {
                seen.set(c);
                cls.push_back(c);
            }
        }
        if (subgroup_closure(G, cls).count() != G.order()) return false;
    }
    return true;
}

inline bool oracle_supersoluble(const FiniteGroup& G, const SubgroupLattice& L) {
    // Huppert: every maximal subgroup has prime index
    auto is_prime = [](std::size_t q) {
        if (q < 2) return false;
        for (std::size_t d = 2; d * d <= q; ++d)
            if (q % d == 0) return false;
        return true;
    };
    if (G.order() == 1) return true;
    for (int i = 0; i < L.size(); ++i)
        if (L.node(i).maximal && !is_prime(L.index_in_group(i))) return false;
    return true;
}

struct StructureOracles {
    bool is_abelian, is_cyclic, is_soluble, is_nilpotent, is_supersoluble, is_simple;
};

inline StructureOracles structure_oracles(const FiniteGroup& G, const SubgroupLattice& L) {
    return StructureOracles{G.is_abelian(),      oracle_cyclic(G),
                            oracle_soluble(G),   oracle_nilpotent(G),
                            oracle_supersoluble(G, L), oracle_simple(G)};
}

} // namespace gg
