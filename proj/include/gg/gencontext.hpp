#pragma once
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "gg/bitset.hpp"
#include "gg/group.hpp"

namespace gg {

// Registry of subgroups encountered while testing generation.  Subgroups are
// interned (bitset -> id) with a small generating set kept per id so joins
// and extensions are orbit computations O(|result| * #gens).  All generation
// tests funnel through here so repeated closures across tuples are cached.
class SubgroupRegistry {
public:
    struct Sub {
        DynBitset members;
        std::size_t size;
        std::vector<Elem> gens;
    };

    explicit SubgroupRegistry(const FiniteGroup& G) : G_(&G), stamp_(G.order(), 0) {
        trivial_ = register_closure({});
        // register the full group with a greedily extracted generating set
        std::vector<Elem> gens;
        DynBitset cur = subs_[trivial_].members;
        for (std::size_t g = 0; g < G.order(); ++g) {
            if (cur.test(g)) continue;
            gens.push_back(static_cast<Elem>(g));
            cur = subgroup_closure(G, gens);
            if (cur.count() == G.order()) break;
        }
        full_ = register_closure(gens);
        cyclic_of_.assign(G.order(), -1);
    }

    const FiniteGroup& group() const { return *G_; }
    int full_id() const { return full_; }
    int trivial_id() const { return trivial_; }
    std::size_t size() const { return subs_.size(); }
    const Sub& sub(int id) const { return subs_[static_cast<std::size_t>(id)]; }

    int cyclic_id(Elem g) {
        int& c = cyclic_of_[g];
        if (c < 0) c = register_closure({g});
        return c;
    }

    // Closure of sub(id) together with one more element.
    int extend(int id, Elem g) {
        if (subs_[id].members.test(g)) return id;
        std::uint64_t key = (static_cast<std::uint64_t>(id) << 16) | g;
        auto it = extend_cache_.find(key);
        if (it != extend_cache_.end()) return it->second;
        std::vector<Elem> gens = subs_[id].gens;
        gens.push_back(g);
        int r = register_closure(std::move(gens));
        extend_cache_.emplace(key, r);
        return r;
    }

    int tuple_closure(const Elem* t, std::size_t len) {
        int id = trivial_;
        for (std::size_t i = 0; i < len && id != full_; ++i) id = extend(id, t[i]);
        return id;
    }
    int tuple_closure(const std::vector<Elem>& t) { return tuple_closure(t.data(), t.size()); }
    bool tuple_generates(const std::vector<Elem>& t) {
        return tuple_closure(t.data(), t.size()) == full_;
    }

    // Join of two registered subgroups.
    int join(int a, int b) {
        if (a == b) return a;
        if (a > b) std::swap(a, b);
        if (a == trivial_ || b == full_) return b;
        if (subs_[a].members.is_subset_of(subs_[b].members)) return b;
        std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
        auto it = join_cache_.find(key);
        if (it != join_cache_.end()) return it->second;
        std::vector<Elem> gens = subs_[a].gens;
        gens.insert(gens.end(), subs_[b].gens.begin(), subs_[b].gens.end());
        int r = register_closure(std::move(gens));
        join_cache_.emplace(key, r);
        return r;
    }

    // Whether <sub(a), sub(b)> = G, with an early exit once the orbit passes
    // |G|/2 (a subgroup bigger than half the group is the whole group).
    bool join_is_full(int a, int b) {
        if (a > b) std::swap(a, b);
        if (b == full_) return true;
        if (a == trivial_) return b == full_;
        std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
        auto it = gen_cache_.find(key);
        if (it != gen_cache_.end()) return it->second;
        bool r = orbit_exceeds_half(subs_[a].gens, subs_[b].gens);
        gen_cache_.emplace(key, r);
        return r;
    }

private:
    int register_closure(std::vector<Elem> gens) {
        DynBitset bs = subgroup_closure(*G_, gens);
        auto it = ids_.find(bs);
        if (it != ids_.end()) return it->second;
        int id = static_cast<int>(subs_.size());
        if (gens.size() > 8) gens = reextract_gens(bs);
        subs_.push_back(Sub{bs, bs.count(), std::move(gens)});
        ids_.emplace(std::move(bs), id);
        return id;
    }

    std::vector<Elem> reextract_gens(const DynBitset& target) const {
        std::vector<Elem> gens;
        DynBitset cur(G_->order());
        cur.set(G_->identity());
        for (std::size_t g = target.find_first(); g < target.size(); g = target.find_next(g + 1)) {
            if (cur.test(g)) continue;
            gens.push_back(static_cast<Elem>(g));
            cur = subgroup_closure(*G_, gens);
            if (cur == target) break;
        }
        return gens;
    }

    bool orbit_exceeds_half(const std::vector<Elem>& g1, const std::vector<Elem>& g2) {
        ++epoch_;
        std::size_t n = G_->order(), half = n / 2;
        scratch_.clear();
        auto visit = [&](Elem x) {
            if (stamp_[x] != epoch_) {
                stamp_[x] = epoch_;
                scratch_.push_back(x);
            }
        };
        visit(G_->identity());
        for (std::size_t i = 0; i < scratch_.size(); ++i) {
            if (scratch_.size() > half) return true;
            Elem cur = scratch_[i];
            for (Elem g : g1) visit(G_->mul(cur, g));
            for (Elem g : g2) visit(G_->mul(cur, g));
        }
        return scratch_.size() == n;
    }

    const FiniteGroup* G_;
    std::vector<Sub> subs_;
    std::unordered_map<DynBitset, int, DynBitsetHash> ids_;
    std::vector<int> cyclic_of_;
    std::unordered_map<std::uint64_t, int> extend_cache_;
    std::unordered_map<std::uint64_t, int> join_cache_;
    std::unordered_map<std::uint64_t, bool> gen_cache_;
    std::vector<std::uint32_t> stamp_;
    std::vector<Elem> scratch_;
    std::uint32_t epoch_ = 0;
    int full_ = 0, trivial_ = 0;
};

} // namespace gg
