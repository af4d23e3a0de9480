#pragma once

#include "subcat/euler.hpp"
#include "subcat/modules.hpp"

namespace subcat {

/// Homomorphism between canonical modules, given by a matrix with one column
/// per domain generator and one row per codomain generator (free generators
/// first, then torsion generators in canonical order). Entries into torsion
/// summands are kept reduced modulo the target order.
struct ModuleHom {
    FgModule domain, codomain;
    std::vector<RingElem> entries;  // row-major, rows = codomain generators

    RingElem& at(long long i, long long j) {
        return entries[static_cast<size_t>(i) * static_cast<size_t>(generator_count(domain)) +
                       static_cast<size_t>(j)];
    }
    const RingElem& at(long long i, long long j) const {
        return entries[static_cast<size_t>(i) * static_cast<size_t>(generator_count(domain)) +
                       static_cast<size_t>(j)];
    }

    static ModuleHom zero(const FgModule& dom, const FgModule& cod);
    static ModuleHom identity(const FgModule& m);

    bool operator==(const ModuleHom&) const = default;
};

/// Well-definedness: an entry f from a generator of order d to a generator of
/// order e must satisfy e | f*d (with e == 0 read as f*d == 0).
bool check_hom(const ModuleHom& h);

/// Entries reduced mod the codomain generator orders (no-op on free rows).
ModuleHom reduce_hom(ModuleHom h);

ModuleHom compose(const ModuleHom& g, const ModuleHom& f);  // g after f
bool is_zero_hom(const ModuleHom& h);

struct KernelImageCokernel {
    FgModule kernel, image, cokernel;
};

/// Isomorphism types of ker/im/coker, computed by lifting to free
/// presentations and reading Smith normal forms; no element enumeration.
KernelImageCokernel kernel_image_cokernel(const ModuleHom& h);

struct ShortExactSeq {
    FgModule left, mid, right;
    ModuleHom f, g;  // f: left -> mid, g: mid -> right

    void validate() const;  // ring consistency + matrix dimensions
    bool operator==(const ShortExactSeq&) const = default;
};

/// Exactness of 0 -> left -> mid -> right -> 0: ker f = 0, coker g = 0,
/// g∘f = 0, and im f = ker g compared as submodule lattices of the middle
/// term's generator space. p-length additivity cannot stand in for the last
/// condition: multiplication by p^t on a free summand is exact yet creates
/// torsion, so the comparison is done on the lattices themselves.
bool is_exact(const ShortExactSeq& s);

/// Whether every column of `targets` lies in the column span of `b`.
bool span_contains(const PresentationMatrix& b, const PresentationMatrix& targets);

}  // namespace subcat
