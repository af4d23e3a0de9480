#include "subcat/euler.hpp"

#include <algorithm>

namespace subcat {

ChiVector chi_add(const ChiVector& a, const ChiVector& b) {
    ChiVector out = a;
    out.chi0 += b.chi0;
    for (const auto& [p, v] : b.components) {
        long long n = (out.components[p] += v);
        if (n == 0) out.components.erase(p);
    }
    return out;
}

ChiVector chi(const FgModule& m) {
    ChiVector c;
    c.chi0 = m.rank;
    for (const auto& [p, part] : m.torsion) {
        long long len = p_length(m, p);
        if (len) c.components[p] = len;
    }
    return c;
}

ChiVector chi(const FgModule& m, const std::vector<PrimeElem>& support, bool strict) {
    ChiVector full = chi(m);
    ChiVector out;
    out.chi0 = full.chi0;
    for (const auto& [p, v] : full.components) {
        if (std::find(support.begin(), support.end(), p) != support.end())
            out.components[p] = v;
        else if (strict)
            throw Error(ErrorKind::Domain,
                        "chi: module has torsion at " + p.to_string() + " outside the support");
    }
    return out;
}

std::vector<long long> chi_on_support(const ChiVector& c, const std::vector<PrimeElem>& support) {
    std::vector<long long> out(support.size(), 0);
    for (size_t i = 0; i < support.size(); ++i) {
        auto it = c.components.find(support[i]);
        if (it != c.components.end()) out[i] = it->second;
    }
    return out;
}

}  // namespace subcat
