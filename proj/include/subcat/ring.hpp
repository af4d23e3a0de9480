#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>
#include <utility>
#include <vector>

#include "subcat/error.hpp"

namespace subcat {

enum class RingKind { Integers, PolyOverFp, Field };

/// One of the supported coefficient PIDs: Z, F_p[x] for a small prime p,
/// or a bare field (no nonzero primes; every nonzero element is a unit).
struct RingDescriptor {
    RingKind kind = RingKind::Integers;
    int p = 0;          // PolyOverFp modulus, 2 <= p <= 97
    std::string label;  // Field label, e.g. "Q"

    static RingDescriptor integers() { return {RingKind::Integers, 0, {}}; }
    static RingDescriptor poly_over_fp(int p);
    static RingDescriptor field(std::string label) { return {RingKind::Field, 0, std::move(label)}; }

    bool has_primes() const { return kind != RingKind::Field; }
    bool operator==(const RingDescriptor&) const = default;

    std::string to_string() const;                       // "Z", "Fp[x]:3", "field:Q"
    static RingDescriptor parse(const std::string& s);
};

/// Element of a coefficient ring, stored canonically:
///  - Integers: arbitrary-precision integer
///  - PolyOverFp: coefficients low-to-high in [0,p), no trailing zeros
///  - Field: marker 0 or 1 (every nonzero element is identified with the unit;
///    the induced arithmetic on the markers is that of the two-element field)
struct RingElem {
    RingDescriptor ring;
    mpz_class iv;            // Integers value / Field marker
    std::vector<int> coeffs; // PolyOverFp only

    static RingElem zero(const RingDescriptor& r);
    static RingElem one(const RingDescriptor& r);
    static RingElem from_integer(const RingDescriptor& r, const mpz_class& n);
    static RingElem poly(const RingDescriptor& r, const std::vector<long>& coeffs);

    bool is_zero() const;
    bool is_unit() const;
    int degree() const;  // poly degree, -1 for zero

    bool operator==(const RingElem& other) const;
    std::string to_string() const;  // decimal / "[c0,c1,...]@p" / "0","1"
    static RingElem parse(const RingDescriptor& r, const std::string& s);
};

RingElem add(const RingElem& a, const RingElem& b);
RingElem sub(const RingElem& a, const RingElem& b);
RingElem neg(const RingElem& a);
RingElem mul(const RingElem& a, const RingElem& b);

/// Euclidean division: a = q*b + r with size(r) < size(b). b must be nonzero.
struct DivMod {
    RingElem quot, rem;
};
DivMod divmod(const RingElem& a, const RingElem& b);

/// Whether d divides a, with divides(0, a) iff a == 0.
bool divides(const RingElem& d, const RingElem& a);
RingElem exact_div(const RingElem& a, const RingElem& d);

/// Size used for pivot selection: |a| for integers, degree for polynomials,
/// 0/1 for field markers. Strictly decreases along Euclidean remainders.
mpz_class euclid_size(const RingElem& a);

/// The unit u with u*a canonical (positive / monic / the marker itself).
RingElem canonical_unit(const RingElem& a);
RingElem canonicalize(const RingElem& a);
bool is_canonical_associate(const RingElem& a);

struct GcdResult {
    RingElem g, u, v;  // u*a + v*b == g, g canonical
};
GcdResult gcd_bezout(const RingElem& a, const RingElem& b);
RingElem gcd(const RingElem& a, const RingElem& b);

RingElem pow_elem(const RingElem& a, int e);

/// Canonical prime element: positive prime integer or monic irreducible
/// polynomial. Field rings have none.
struct PrimeElem {
    RingDescriptor ring;
    RingElem rep;

    static PrimeElem make(const RingElem& candidate);  // validates primality
    static PrimeElem from_integer(long p);             // over Z

    std::strong_ordering operator<=>(const PrimeElem& other) const;
    bool operator==(const PrimeElem& other) const { return (*this <=> other) == 0; }

    std::string to_string() const { return rep.to_string(); }
    static PrimeElem parse(const RingDescriptor& r, const std::string& s);
};

bool is_prime_elem(const RingElem& a);

/// Prime factorization: unit * prod p_i^e_i == a, primes canonical and sorted.
/// Errors on zero, units, and field rings.
std::vector<std::pair<PrimeElem, int>> factor(const RingElem& a);

}  // namespace subcat
