#pragma once

#include <optional>
#include <string>

#include "subcat/descriptor.hpp"
#include "subcat/hom.hpp"

namespace subcat {

enum class Slot { Left, Mid, Right };

/// One derivation step: a short exact sequence together with which of its
/// three terms is being added to the derived set. The other two must already
/// be derived when the step is replayed.
struct CertStep {
    ShortExactSeq seq;
    Slot derived = Slot::Mid;
    std::string note;

    bool operator==(const CertStep&) const = default;
};

/// An explicit derivation of `target` from `generators` by the two-of-three
/// rule, checkable step by step.
struct Certificate {
    RingDescriptor ring;
    std::vector<FgModule> generators;
    std::vector<CertStep> steps;
    FgModule target;

    bool operator==(const Certificate&) const = default;
};

// Template sequences (the building blocks certificates are assembled from).
// All take an arbitrary passenger module g carried along unchanged.
ShortExactSeq seq_descend_a(const PrimeElem& p, int r, const FgModule& g);  // splits p^r
ShortExactSeq seq_descend_b(const PrimeElem& p, int r, const FgModule& g);
ShortExactSeq seq_ascend_a(const PrimeElem& p, int r, const FgModule& g);   // merges p * p^r
ShortExactSeq seq_ascend_b(const PrimeElem& p, int r, const FgModule& g);
ShortExactSeq seq_split_sum(const FgModule& a, const FgModule& b);          // 0 -> a -> a+b -> b -> 0
ShortExactSeq seq_torsion_split(const FgModule& m);                         // 0 -> Tor m -> m -> free -> 0
ShortExactSeq seq_mul_free(const FgModule& m, const PrimeElem& p, int t);   // 0 -> m -> m -> R/p^t -> 0
ShortExactSeq seq_free_quotient(const RingDescriptor& ring, long long a, long long b);
/// Coordinate inclusion of one reduced module (all torsion exponents 1) into
/// another dominating it, with reduced cokernel.
ShortExactSeq seq_reduced_inclusion(const FgModule& b_side, const FgModule& a_side);

/// Replace the p-torsion of m by (R/p)^(p-length), everything else unchanged.
Certificate descend(const FgModule& m, const PrimeElem& p);

/// Regroup p-torsion (R/p)^r of m into the given exponent partition of r.
Certificate ascend(const FgModule& m, const PrimeElem& p, const std::vector<int>& partition);

/// One-step derivation of R/p^t out of a module of positive rank.
Certificate torsion_from_rank(const FgModule& m, const PrimeElem& p, int t);

/// Certificate that `target` lies in the subcategory generated by `gens`.
/// Throws NotInSubcategory when membership fails.
Certificate member_certificate(const std::vector<FgModule>& gens, const FgModule& target);

struct VerifyReport {
    bool ok = false;
    std::optional<size_t> failing_step;
    std::string reason;
};

/// Independent replay: every step exact, premises derived in order, target
/// reached. Failures are reported, never thrown.
VerifyReport verify_certificate(const Certificate& c);

}  // namespace subcat
