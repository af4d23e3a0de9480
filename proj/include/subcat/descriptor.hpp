#pragma once

#include <optional>
#include <vector>

#include "subcat/euler.hpp"
#include "subcat/modules.hpp"

namespace subcat {

/// A set of maximal primes: either an explicit finite list or all of them.
struct SupportSet {
    bool all = false;
    std::vector<PrimeElem> primes;  // sorted, duplicate-free; ignored when all

    static SupportSet all_max_primes() { return {true, {}}; }
    static SupportSet finite(std::vector<PrimeElem> primes);

    bool operator==(const SupportSet&) const = default;
};

enum class DescriptorKind { ZeroOnly, RankMod, TorsionLattice, TorsionOnSupport };

/// A triangulated subcategory in classified form. TorsionLattice keeps the
/// generating vectors as given (projected to the primes they actually use)
/// plus a canonical echelonized basis; descriptor equality compares support
/// and basis, never the generator list.
struct SubcatDescriptor {
    RingDescriptor ring;
    DescriptorKind kind = DescriptorKind::ZeroOnly;
    long long k = 0;                              // RankMod
    std::vector<PrimeElem> support;               // TorsionLattice
    std::vector<std::vector<mpz_class>> gens;     // TorsionLattice, componentwise >= 0
    std::vector<std::vector<mpz_class>> basis;    // canonical Hermite form rows
    SupportSet torsion_support;                   // TorsionOnSupport

    static SubcatDescriptor zero_only(const RingDescriptor& r);
    static SubcatDescriptor rank_mod(const RingDescriptor& r, long long k);
    /// Canonicalizes: zero generators dropped, support shrunk to used primes,
    /// a full unit lattice becomes TorsionOnSupport, no generators ZeroOnly.
    static SubcatDescriptor torsion_lattice(const RingDescriptor& r,
                                            std::vector<PrimeElem> support,
                                            std::vector<std::vector<mpz_class>> gens);
    static SubcatDescriptor torsion_on_support(const RingDescriptor& r, SupportSet s);

    bool operator==(const SubcatDescriptor& other) const;
};

/// Integer row-Hermite form of the given vectors: positive pivots, entries
/// above a pivot reduced into [0, pivot), zero rows dropped. Canonical for
/// the lattice they span.
std::vector<std::vector<mpz_class>> hermite_basis(const std::vector<std::vector<mpz_class>>& rows);

/// Integer coefficients c with sum c_i * basis_i == v, if any.
std::optional<std::vector<mpz_class>> lattice_member(
    const std::vector<mpz_class>& v, const std::vector<std::vector<mpz_class>>& basis);

/// Smallest triangulated subcategory containing the given modules. The ring
/// may be passed explicitly for the empty list.
SubcatDescriptor generate(const std::vector<FgModule>& mods,
                          const RingDescriptor* ring_hint = nullptr);

struct MemberResult {
    bool member = false;
    std::optional<std::vector<mpz_class>> witness;  // lattice coefficients over gens
};
MemberResult member(const SubcatDescriptor& d, const FgModule& m);

/// Whether every member of d2 is a member of d1.
bool includes(const SubcatDescriptor& d1, const SubcatDescriptor& d2);

struct ClosureClass {
    bool triangulated = true;
    bool thick = false, wide = false, serre = false;
};
ClosureClass closure_class(const SubcatDescriptor& d);

/// A specialization-closed subset of Spec(R): everything, or a set of
/// maximal primes (the empty set included).
struct SpecSubset {
    bool full = false;
    SupportSet subset;

    static SpecSubset full_spec() { return {true, {}}; }
    static SpecSubset of(SupportSet s) { return {false, std::move(s)}; }

    bool operator==(const SpecSubset&) const = default;
};

SubcatDescriptor from_spec_subset(const SpecSubset& s, const RingDescriptor& ring);
SpecSubset to_spec_subset(const SubcatDescriptor& d);  // thick descriptors only

}  // namespace subcat
