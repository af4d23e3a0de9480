#pragma once

#include <map>
#include <optional>
#include <vector>

#include "subcat/ring.hpp"

namespace subcat {

/// Matrix over a coefficient ring, row-major. A module is presented as the
/// cokernel of the matrix acting R^cols -> R^rows (columns are relations).
struct PresentationMatrix {
    RingDescriptor ring;
    int rows = 0, cols = 0;
    std::vector<RingElem> entries;

    static PresentationMatrix zeros(const RingDescriptor& r, int m, int n);
    static PresentationMatrix identity(const RingDescriptor& r, int n);
    static PresentationMatrix diagonal(const RingDescriptor& r, const std::vector<RingElem>& d);

    RingElem& at(int i, int j) { return entries[static_cast<size_t>(i) * cols + j]; }
    const RingElem& at(int i, int j) const { return entries[static_cast<size_t>(i) * cols + j]; }

    bool operator==(const PresentationMatrix&) const = default;
};

PresentationMatrix matmul(const PresentationMatrix& a, const PresentationMatrix& b);
PresentationMatrix hconcat(const PresentationMatrix& a, const PresentationMatrix& b);

struct SnfResult {
    PresentationMatrix u, d, v;  // u*a*v == d, d diagonal with d1 | d2 | ...
};

/// Smith normal form over Z or F_p[x] (Euclidean reduction, smallest-size
/// pivot); over a bare field this degenerates to Gaussian elimination with
/// unit pivots. Diagonal entries are canonical; u, v have unit determinant.
SnfResult smith_normal_form(const PresentationMatrix& a);

/// Columns spanning {x : a*x == 0}, read off the SNF transform.
PresentationMatrix kernel_columns(const PresentationMatrix& a);

/// Canonical invariant-factor form of a finitely generated module: rank of
/// the free part plus, per prime, the weakly increasing exponent partition
/// of its primary decomposition. Equality of values is isomorphism.
struct FgModule {
    RingDescriptor ring;
    long long rank = 0;
    std::map<PrimeElem, std::vector<int>> torsion;

    static FgModule zero(const RingDescriptor& r) { return {r, 0, {}}; }
    static FgModule free_module(const RingDescriptor& r, long long rank);
    static FgModule cyclic(const PrimeElem& p, int exponent);

    bool is_zero() const { return rank == 0 && torsion.empty(); }
    bool is_torsion() const { return rank == 0; }

    bool operator==(const FgModule&) const = default;
    bool operator<(const FgModule& other) const;

    void validate() const;  // throws on malformed partitions / field torsion
};

FgModule from_presentation(const PresentationMatrix& a);
FgModule direct_sum(const FgModule& m, const FgModule& n);

long long p_length(const FgModule& m, const PrimeElem& p);

struct LengthStats {
    long long rank = 0;
    std::map<PrimeElem, long long> p_lengths;
    std::optional<long long> total;  // nullopt = infinite
};
LengthStats length_stats(const FgModule& m);

/// Generator orders in the global convention: free generators first (order
/// zero), then torsion generators by prime and ascending exponent.
std::vector<RingElem> generator_orders(const FgModule& m);
long long generator_count(const FgModule& m);

/// Direct sum together with the position each summand's generators take in
/// the canonical generator order of the sum.
struct DirectSumLayout {
    FgModule total;
    std::vector<std::vector<long long>> slots;  // slots[part][local index] -> total index
};
DirectSumLayout direct_sum_layout(const std::vector<FgModule>& parts);

}  // namespace subcat
