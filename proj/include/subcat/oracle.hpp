#pragma once

#include <vector>

#include "subcat/modules.hpp"

namespace subcat {

/// All torsion modules over Z with the given support and per-prime length
/// bounds, one value per isomorphism class, in a fixed order with the zero
/// module first.
struct Universe {
    std::vector<PrimeElem> primes;
    std::vector<int> max_len;
    std::vector<FgModule> modules;

    int index_of(const FgModule& m) const;  // -1 when absent
};

Universe enumerate_universe(const std::vector<PrimeElem>& primes,
                            const std::vector<int>& max_p_length, long long cap = 512);

/// For each module B of the universe, the distinct pairs (A, C) of universe
/// indices such that some exact 0 -> A -> B -> C -> 0 exists, computed by
/// exhaustive subgroup enumeration of the underlying finite abelian groups.
struct SesTable {
    std::vector<std::vector<std::pair<int, int>>> pairs;
};

SesTable ses_table(const Universe& u);

/// Least two-of-three fixpoint containing the generators and zero; returns
/// the sorted universe indices of the closure.
std::vector<int> brute_closure(const std::vector<FgModule>& gens, const Universe& u,
                               const SesTable& table);
std::vector<int> brute_closure(const std::vector<FgModule>& gens, const Universe& u);

}  // namespace subcat
