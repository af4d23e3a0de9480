#include "subcat/descriptor.hpp"

#include <algorithm>
#include <numeric>

namespace subcat {

namespace {

bool is_sorted_unique(const std::vector<PrimeElem>& v) {
    for (size_t i = 1; i < v.size(); ++i)
        if (!(v[i - 1] < v[i])) return false;
    return true;
}

}  // namespace

SupportSet SupportSet::finite(std::vector<PrimeElem> primes) {
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    return {false, std::move(primes)};
}

std::vector<std::vector<mpz_class>> hermite_basis(const std::vector<std::vector<mpz_class>>& rows) {
    std::vector<std::vector<mpz_class>> m = rows;
    if (m.empty()) return m;
    size_t cols = m[0].size();
    for (const auto& r : m)
        if (r.size() != cols) throw Error(ErrorKind::Domain, "hermite_basis: ragged rows");

    size_t r = 0;
    for (size_t c = 0; c < cols && r < m.size(); ++c) {
        // gcd out the column below r
        while (true) {
            size_t best = m.size();
            for (size_t i = r; i < m.size(); ++i)
                if (m[i][c] != 0 && (best == m.size() || abs(m[i][c]) < abs(m[best][c]))) best = i;
            if (best == m.size()) break;
            std::swap(m[r], m[best]);
            bool clear = true;
            for (size_t i = r + 1; i < m.size(); ++i) {
                if (m[i][c] == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), m[i][c].get_mpz_t(), m[r][c].get_mpz_t());
                for (size_t j = 0; j < cols; ++j) m[i][j] -= q * m[r][j];
                if (m[i][c] != 0) clear = false;
            }
            if (clear) break;
        }
        if (m[r][c] == 0) continue;
        if (m[r][c] < 0)
            for (size_t j = 0; j < cols; ++j) m[r][j] = -m[r][j];
        for (size_t i = 0; i < r; ++i) {
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), m[i][c].get_mpz_t(), m[r][c].get_mpz_t());
            if (q == 0) continue;
            for (size_t j = 0; j < cols; ++j) m[i][j] -= q * m[r][j];
        }
        ++r;
    }
    m.resize(r);
    return m;
}

std::optional<std::vector<mpz_class>> lattice_member(
    const std::vector<mpz_class>& v, const std::vector<std::vector<mpz_class>>& basis) {
    size_t dim = v.size();
    for (const auto& b : basis)
        if (b.size() != dim) throw Error(ErrorKind::Domain, "lattice_member: vector length mismatch");

    RingDescriptor zz = RingDescriptor::integers();
    int n = static_cast<int>(basis.size());
    PresentationMatrix b = PresentationMatrix::zeros(zz, static_cast<int>(dim), n);
    for (int j = 0; j < n; ++j)
        for (size_t i = 0; i < dim; ++i)
            b.at(static_cast<int>(i), j) = RingElem::from_integer(zz, basis[j][i]);

    SnfResult s = smith_normal_form(b);

    // solve D y = U v, then c = V y
    PresentationMatrix vcol = PresentationMatrix::zeros(zz, static_cast<int>(dim), 1);
    for (size_t i = 0; i < dim; ++i) vcol.at(static_cast<int>(i), 0) = RingElem::from_integer(zz, v[i]);
    PresentationMatrix uv = matmul(s.u, vcol);

    PresentationMatrix y = PresentationMatrix::zeros(zz, n, 1);
    int nmin = std::min(static_cast<int>(dim), n);
    for (int i = 0; i < static_cast<int>(dim); ++i) {
        const RingElem& rhs = uv.at(i, 0);
        if (i < nmin && !s.d.at(i, i).is_zero()) {
            if (!divides(s.d.at(i, i), rhs)) return std::nullopt;
            y.at(i, 0) = exact_div(rhs, s.d.at(i, i));
        } else if (!rhs.is_zero()) {
            return std::nullopt;
        }
    }
    PresentationMatrix c = matmul(s.v, y);
    std::vector<mpz_class> out(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) out[static_cast<size_t>(i)] = c.at(i, 0).iv;
    return out;
}

SubcatDescriptor SubcatDescriptor::zero_only(const RingDescriptor& r) {
    SubcatDescriptor d;
    d.ring = r;
    d.kind = DescriptorKind::ZeroOnly;
    return d;
}

SubcatDescriptor SubcatDescriptor::rank_mod(const RingDescriptor& r, long long k) {
    if (k < 1) throw Error(ErrorKind::Domain, "rank_mod: k must be positive");
    SubcatDescriptor d;
    d.ring = r;
    d.kind = DescriptorKind::RankMod;
    d.k = k;
    return d;
}

SubcatDescriptor SubcatDescriptor::torsion_lattice(const RingDescriptor& r,
                                                   std::vector<PrimeElem> support,
                                                   std::vector<std::vector<mpz_class>> gens) {
    if (!r.has_primes())
        throw Error(ErrorKind::Domain, "torsion descriptors require a ring with primes");
    if (!is_sorted_unique(support))
        throw Error(ErrorKind::Domain, "torsion_lattice: support must be sorted and duplicate-free");
    for (const auto& p : support)
        if (!(p.ring == r)) ring_mismatch("torsion_lattice");
    for (const auto& g : gens) {
        if (g.size() != support.size())
            throw Error(ErrorKind::Domain, "torsion_lattice: generator length mismatch");
        for (const auto& x : g)
            if (x < 0)
                throw Error(ErrorKind::Domain, "torsion_lattice: generators must be non-negative");
    }

    // shrink to the primes some generator actually uses
    std::vector<size_t> used;
    for (size_t c = 0; c < support.size(); ++c)
        for (const auto& g : gens)
            if (g[c] != 0) {
                used.push_back(c);
                break;
            }
    std::vector<PrimeElem> sup2;
    for (size_t c : used) sup2.push_back(support[c]);
    std::vector<std::vector<mpz_class>> gens2;
    for (const auto& g : gens) {
        std::vector<mpz_class> row;
        bool nonzero = false;
        for (size_t c : used) {
            row.push_back(g[c]);
            if (g[c] != 0) nonzero = true;
        }
        if (nonzero) gens2.push_back(std::move(row));
    }
    if (gens2.empty()) return zero_only(r);

    auto basis = hermite_basis(gens2);
    bool full = basis.size() == sup2.size();
    for (size_t i = 0; full && i < basis.size(); ++i)
        for (size_t j = 0; j < basis[i].size(); ++j)
            if (basis[i][j] != (i == j ? 1 : 0)) {
                full = false;
                break;
            }
    if (full) return torsion_on_support(r, SupportSet::finite(sup2));

    SubcatDescriptor d;
    d.ring = r;
    d.kind = DescriptorKind::TorsionLattice;
    d.support = std::move(sup2);
    d.gens = std::move(gens2);
    d.basis = std::move(basis);
    return d;
}

SubcatDescriptor SubcatDescriptor::torsion_on_support(const RingDescriptor& r, SupportSet s) {
    if (!r.has_primes()) {
        // a field has no maximal primes: the only torsion module is zero
        if (!s.all && !s.primes.empty()) ring_mismatch("torsion_on_support");
        return zero_only(r);
    }
    if (!s.all && s.primes.empty()) return zero_only(r);
    for (const auto& p : s.primes)
        if (!(p.ring == r)) ring_mismatch("torsion_on_support");
    if (!is_sorted_unique(s.primes))
        throw Error(ErrorKind::Domain, "torsion_on_support: primes must be sorted and unique");
    SubcatDescriptor d;
    d.ring = r;
    d.kind = DescriptorKind::TorsionOnSupport;
    d.torsion_support = std::move(s);
    return d;
}

bool SubcatDescriptor::operator==(const SubcatDescriptor& other) const {
    if (!(ring == other.ring) || kind != other.kind) return false;
    switch (kind) {
        case DescriptorKind::ZeroOnly: return true;
        case DescriptorKind::RankMod: return k == other.k;
        case DescriptorKind::TorsionLattice:
            return support == other.support && basis == other.basis;
        case DescriptorKind::TorsionOnSupport:
            return torsion_support == other.torsion_support;
    }
    return false;
}

SubcatDescriptor generate(const std::vector<FgModule>& mods, const RingDescriptor* ring_hint) {
    RingDescriptor ring;
    if (!mods.empty())
        ring = mods.front().ring;
    else if (ring_hint)
        ring = *ring_hint;
    else
        throw Error(ErrorKind::Domain, "generate: empty input needs an explicit ring");

    std::vector<FgModule> nonzero;
    for (const auto& m : mods) {
        if (!(m.ring == ring)) ring_mismatch("generate");
        m.validate();
        if (!m.is_zero()) nonzero.push_back(m);
    }
    if (nonzero.empty()) return SubcatDescriptor::zero_only(ring);

    long long k = 0;
    for (const auto& m : nonzero) k = std::gcd(k, m.rank);
    if (k > 0) return SubcatDescriptor::rank_mod(ring, k);

    // all generators are torsion: the chi vectors over the union support
    std::vector<PrimeElem> support;
    for (const auto& m : nonzero)
        for (const auto& [p, part] : m.torsion) support.push_back(p);
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());

    std::vector<std::vector<mpz_class>> gens;
    for (const auto& m : nonzero) {
        std::vector<long long> row = chi_on_support(chi(m), support);
        gens.emplace_back(row.begin(), row.end());
    }
    return SubcatDescriptor::torsion_lattice(ring, std::move(support), std::move(gens));
}

MemberResult member(const SubcatDescriptor& d, const FgModule& m) {
    if (!(d.ring == m.ring)) ring_mismatch("member");
    m.validate();
    switch (d.kind) {
        case DescriptorKind::ZeroOnly:
            return {m.is_zero(), std::nullopt};
        case DescriptorKind::RankMod:
            return {m.rank % d.k == 0, std::nullopt};
        case DescriptorKind::TorsionLattice: {
            if (m.rank != 0) return {false, std::nullopt};
            ChiVector c = chi(m);
            for (const auto& [p, v] : c.components)
                if (std::find(d.support.begin(), d.support.end(), p) == d.support.end())
                    return {false, std::nullopt};
            std::vector<long long> aligned = chi_on_support(c, d.support);
            std::vector<mpz_class> v(aligned.begin(), aligned.end());
            auto coeffs = lattice_member(v, d.gens);
            if (!coeffs) return {false, std::nullopt};
            return {true, std::move(coeffs)};
        }
        case DescriptorKind::TorsionOnSupport: {
            if (m.rank != 0) return {false, std::nullopt};
            if (d.torsion_support.all) return {true, std::nullopt};
            for (const auto& [p, part] : m.torsion)
                if (std::find(d.torsion_support.primes.begin(), d.torsion_support.primes.end(), p) ==
                    d.torsion_support.primes.end())
                    return {false, std::nullopt};
            return {true, std::nullopt};
        }
    }
    return {false, std::nullopt};
}

namespace {

// membership of a pure chi vector (indexed by `from_support`) in d1
bool vector_member(const SubcatDescriptor& d1, const std::vector<PrimeElem>& from_support,
                   const std::vector<mpz_class>& vec) {
    switch (d1.kind) {
        case DescriptorKind::ZeroOnly:
            for (const auto& x : vec)
                if (x != 0) return false;
            return true;
        case DescriptorKind::RankMod:
            return true;  // torsion lies in every I_k
        case DescriptorKind::TorsionOnSupport:
            if (d1.torsion_support.all) return true;
            for (size_t i = 0; i < vec.size(); ++i)
                if (vec[i] != 0 &&
                    std::find(d1.torsion_support.primes.begin(), d1.torsion_support.primes.end(),
                              from_support[i]) == d1.torsion_support.primes.end())
                    return false;
            return true;
        case DescriptorKind::TorsionLattice: {
            std::vector<mpz_class> aligned(d1.support.size(), 0);
            for (size_t i = 0; i < vec.size(); ++i) {
                if (vec[i] == 0) continue;
                auto it = std::find(d1.support.begin(), d1.support.end(), from_support[i]);
                if (it == d1.support.end()) return false;
                aligned[static_cast<size_t>(it - d1.support.begin())] = vec[i];
            }
            return lattice_member(aligned, d1.basis).has_value();
        }
    }
    return false;
}

}  // namespace

bool includes(const SubcatDescriptor& d1, const SubcatDescriptor& d2) {
    if (!(d1.ring == d2.ring)) ring_mismatch("includes");
    if (d2.kind == DescriptorKind::ZeroOnly) return true;
    if (d1.kind == DescriptorKind::ZeroOnly) return false;
    if (d1.kind == DescriptorKind::RankMod) {
        if (d2.kind == DescriptorKind::RankMod) return d2.k % d1.k == 0;
        return true;  // torsion descriptors lie in every I_k
    }
    if (d2.kind == DescriptorKind::RankMod) return false;  // I_k has positive-rank members

    // both are torsion descriptors
    if (d2.kind == DescriptorKind::TorsionLattice) {
        for (const auto& g : d2.gens)
            if (!vector_member(d1, d2.support, g)) return false;
        return true;
    }
    // d2 = TorsionOnSupport
    if (d2.torsion_support.all)
        return d1.kind == DescriptorKind::TorsionOnSupport && d1.torsion_support.all;
    for (const auto& p : d2.torsion_support.primes) {
        std::vector<mpz_class> unit{1};
        if (!vector_member(d1, {p}, unit)) return false;
    }
    return true;
}

ClosureClass closure_class(const SubcatDescriptor& d) {
    ClosureClass c;
    switch (d.kind) {
        case DescriptorKind::ZeroOnly: c.thick = true; break;
        case DescriptorKind::RankMod: c.thick = d.k == 1; break;
        case DescriptorKind::TorsionOnSupport: c.thick = true; break;
        case DescriptorKind::TorsionLattice: c.thick = false; break;  // unit lattices canonicalize away
    }
    c.wide = c.serre = c.thick;
    return c;
}

SubcatDescriptor from_spec_subset(const SpecSubset& s, const RingDescriptor& ring) {
    if (s.full) return SubcatDescriptor::rank_mod(ring, 1);
    return SubcatDescriptor::torsion_on_support(ring, s.subset);
}

SpecSubset to_spec_subset(const SubcatDescriptor& d) {
    if (!closure_class(d).thick)
        throw Error(ErrorKind::Domain, "to_spec_subset: descriptor is not thick");
    switch (d.kind) {
        case DescriptorKind::ZeroOnly: return SpecSubset::of(SupportSet::finite({}));
        case DescriptorKind::RankMod: return SpecSubset::full_spec();
        case DescriptorKind::TorsionOnSupport: return SpecSubset::of(d.torsion_support);
        case DescriptorKind::TorsionLattice: break;
    }
    throw Error(ErrorKind::Domain, "to_spec_subset: descriptor is not thick");
}

}  // namespace subcat
