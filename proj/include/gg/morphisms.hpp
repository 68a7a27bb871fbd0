#pragma once
#include <optional>
#include <vector>

#include "gg/errors.hpp"
#include "gg/gencontext.hpp"
#include "gg/generation.hpp"
#include "gg/group.hpp"

namespace gg {

namespace detail {

// BFS word labelling of A from a generating tuple: every element gets a
// (parent, generator index) so a candidate image tuple extends to a full map
// in O(|A| * k).
struct WordTree {
    std::vector<Elem> order;   // BFS order, identity first
    std::vector<int> parent;   // index into `order` of the parent, -1 for root
    std::vector<int> genidx;
    explicit WordTree(const FiniteGroup& A, const std::vector<Elem>& gens) {
        std::vector<int> pos(A.order(), -1);
        order.push_back(A.identity());
        parent.push_back(-1);
        genidx.push_back(-1);
        pos[A.identity()] = 0;
        for (std::size_t i = 0; i < order.size(); ++i)
            for (std::size_t k = 0; k < gens.size(); ++k) {
                Elem x = A.mul(order[i], gens[k]);
                if (pos[x] == -1) {
                    pos[x] = static_cast<int>(order.size());
                    order.push_back(x);
                    parent.push_back(static_cast<int>(i));
                    genidx.push_back(static_cast<int>(k));
                }
            }
    }
};

// Build the homomorphism determined by the generator images, or fail.
inline bool try_extend(const FiniteGroup& A, const FiniteGroup& B, const WordTree& wt,
                       const std::vector<Elem>& gens, const std::vector<Elem>& img,
                       std::vector<Elem>& f) {
    f.assign(A.order(), 0);
    std::vector<Elem> fo(wt.order.size());
    fo[0] = B.identity();
    f[wt.order[0]] = B.identity();
    for (std::size_t i = 1; i < wt.order.size(); ++i) {
        fo[i] = B.mul(fo[static_cast<std::size_t>(wt.parent[i])],
                      img[static_cast<std::size_t>(wt.genidx[i])]);
        f[wt.order[i]] = fo[i];
    }
    // homomorphism check on generators suffices (induction on word length)
    for (std::size_t x = 0; x < A.order(); ++x)
        for (std::size_t k = 0; k < gens.size(); ++k)
            if (f[A.mul(static_cast<Elem>(x), gens[k])] != B.mul(f[x], img[k])) return false;
    // bijectivity
    std::vector<char> seen(B.order(), 0);
    for (std::size_t x = 0; x < A.order(); ++x) {
        if (seen[f[x]]) return false;
        seen[f[x]] = 1;
    }
    return true;
}

template <typename Sink>
inline void generator_image_search(const FiniteGroup& A, const FiniteGroup& B, Sink&& sink) {
    SubgroupRegistry reg(A);
    std::vector<Elem> gens = first_generating_tuple(A, reg);
    if (gens.empty()) { // trivial group
        if (B.order() == 1) sink(std::vector<Elem>{B.identity()});
        return;
    }
    WordTree wt(A, gens);
    std::vector<std::vector<Elem>> cand(gens.size());
    for (std::size_t k = 0; k < gens.size(); ++k) {
        int o = A.elem_order(gens[k]);
        for (std::size_t y = 0; y < B.order(); ++y)
            if (B.elem_order(static_cast<Elem>(y)) == o) cand[k].push_back(static_cast<Elem>(y));
    }
    std::vector<Elem> img(gens.size()), f;
    std::function<bool(std::size_t)> rec = [&](std::size_t k) -> bool {
        if (k == gens.size()) {
            if (try_extend(A, B, wt, gens, img, f)) return sink(f);
            return false;
        }
        for (Elem y : cand[k]) {
            img[k] = y;
            if (rec(k + 1)) return true;
        }
        return false;
    };
    rec(0);
}

} // namespace detail

// Exhaustive generator-image search for an isomorphism A -> B.
inline std::optional<std::vector<Elem>> find_isomorphism(const FiniteGroup& A,
                                                         const FiniteGroup& B) {
    if (A.order() != B.order()) return std::nullopt;
    std::optional<std::vector<Elem>> result;
    detail::generator_image_search(A, B, [&](const std::vector<Elem>& f) {
        result = f;
        return true; // stop at the first
    });
    return result;
}

inline bool isomorphic(const FiniteGroup& A, const FiniteGroup& B) {
    return find_isomorphism(A, B).has_value();
}

// All automorphisms of A as element permutations.
inline std::vector<std::vector<Elem>> automorphism_group(const FiniteGroup& A) {
    std::vector<std::vector<Elem>> auts;
    detail::generator_image_search(A, A, [&](const std::vector<Elem>& f) {
        auts.push_back(f);
        return false; // collect all
    });
    if (A.order() == 1) auts.assign(1, std::vector<Elem>{A.identity()});
    return auts;
}

} // namespace gg
