#pragma once
#include <cstddef>
#include <string>

#include "gg/errors.hpp"

namespace gg {

// Runtime limits and knobs.  Library code takes these explicitly; the CLI
// resolves flags > environment (GG_*) > config file > these defaults.
struct RunConfig {
    std::size_t max_lattice = 2000;        // largest |G| for full subgroup lattice
    std::size_t max_vertices = 10'000'000; // largest explicit graph side / tuple space
    std::size_t max_group_order = 20000;   // largest Cayley table we will materialize
    std::size_t assoc_check_limit = 256;   // exhaustive associativity check bound
    std::size_t diameter_exact_limit = 100'000; // all-source BFS bound
    int threads = 1;

    void validate() const {
        if (max_lattice == 0 || max_vertices == 0 || max_group_order == 0)
            fail("BadConfig", "caps must be positive");
        if (threads < 1)
            fail("BadConfig", "parallelism must be >= 1");
    }
};

} // namespace gg
