#pragma once

#include <map>
#include <optional>
#include <vector>

#include "subcat/modules.hpp"

namespace subcat {

/// Euler data of a module: chi0 is the rank (dimension over a field), the
/// components map each prime with nonzero p-length to that length.
struct ChiVector {
    long long chi0 = 0;
    std::map<PrimeElem, long long> components;

    bool is_zero() const { return chi0 == 0 && components.empty(); }
    bool operator==(const ChiVector&) const = default;
};

ChiVector chi_add(const ChiVector& a, const ChiVector& b);

ChiVector chi(const FgModule& m);

/// Restricted to `support`; with strict=true, torsion outside the support is
/// an error rather than silently dropped.
ChiVector chi(const FgModule& m, const std::vector<PrimeElem>& support, bool strict = true);

/// Component values aligned with `support` (absent primes contribute zero).
std::vector<long long> chi_on_support(const ChiVector& c, const std::vector<PrimeElem>& support);

}  // namespace subcat
