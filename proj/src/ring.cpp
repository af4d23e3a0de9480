#include "subcat/ring.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <sstream>

namespace subcat {

namespace {

void check_same_ring(const RingElem& a, const RingElem& b, const char* where) {
    if (!(a.ring == b.ring)) ring_mismatch(where);
}

bool small_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

int norm_mod(long v, int p) {
    long r = v % p;
    return static_cast<int>(r < 0 ? r + p : r);
}

int inv_mod(int a, int p) {
    // extended Euclid on ints; a nonzero mod p
    int t = 0, newt = 1, r = p, newr = norm_mod(a, p);
    while (newr != 0) {
        int q = r / newr;
        t = std::exchange(newt, t - q * newt);
        r = std::exchange(newr, r - q * newr);
    }
    assert(r == 1);
    return norm_mod(t, p);
}

void strip_trailing_zeros(std::vector<int>& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

std::vector<int> poly_add(const std::vector<int>& a, const std::vector<int>& b, int p, int bsign) {
    std::vector<int> out(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < out.size(); ++i) {
        long v = (i < a.size() ? a[i] : 0) + static_cast<long>(bsign) * (i < b.size() ? b[i] : 0);
        out[i] = norm_mod(v, p);
    }
    strip_trailing_zeros(out);
    return out;
}

std::vector<int> poly_mul(const std::vector<int>& a, const std::vector<int>& b, int p) {
    if (a.empty() || b.empty()) return {};
    std::vector<long> acc(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) acc[i + j] += static_cast<long>(a[i]) * b[j];
    std::vector<int> out(acc.size());
    for (size_t i = 0; i < acc.size(); ++i) out[i] = norm_mod(acc[i], p);
    strip_trailing_zeros(out);
    return out;
}

// a = q*b + r with deg r < deg b
void poly_divmod(const std::vector<int>& a, const std::vector<int>& b, int p,
                 std::vector<int>& q, std::vector<int>& r) {
    assert(!b.empty());
    r = a;
    q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
    int lead_inv = inv_mod(b.back(), p);
    while (r.size() >= b.size()) {
        size_t shift = r.size() - b.size();
        int c = norm_mod(static_cast<long>(r.back()) * lead_inv, p);
        q[shift] = c;
        for (size_t i = 0; i < b.size(); ++i)
            r[shift + i] = norm_mod(r[shift + i] - static_cast<long>(c) * b[i], p);
        strip_trailing_zeros(r);
        if (r.empty()) break;
    }
    strip_trailing_zeros(q);
}

}  // namespace

RingDescriptor RingDescriptor::poly_over_fp(int p) {
    if (!small_prime(p) || p > 97)
        throw Error(ErrorKind::Domain, "PolyOverFp modulus must be a prime in [2,97], got " + std::to_string(p));
    return {RingKind::PolyOverFp, p, {}};
}

std::string RingDescriptor::to_string() const {
    switch (kind) {
        case RingKind::Integers: return "Z";
        case RingKind::PolyOverFp: return "Fp[x]:" + std::to_string(p);
        case RingKind::Field: return "field:" + label;
    }
    return {};
}

RingDescriptor RingDescriptor::parse(const std::string& s) {
    if (s == "Z") return integers();
    if (s.rfind("Fp[x]:", 0) == 0) {
        try {
            return poly_over_fp(std::stoi(s.substr(6)));
        } catch (const Error&) {
            throw;
        } catch (...) {
            throw Error(ErrorKind::Parse, "bad ring descriptor: " + s);
        }
    }
    if (s.rfind("field:", 0) == 0) {
        std::string label = s.substr(6);
        if (label.empty()) throw Error(ErrorKind::Parse, "field ring needs a label");
        return field(label);
    }
    throw Error(ErrorKind::Parse, "bad ring descriptor: " + s);
}

RingElem RingElem::zero(const RingDescriptor& r) { return {r, 0, {}}; }

RingElem RingElem::one(const RingDescriptor& r) {
    if (r.kind == RingKind::PolyOverFp) return {r, 0, {1}};
    return {r, 1, {}};
}

RingElem RingElem::from_integer(const RingDescriptor& r, const mpz_class& n) {
    switch (r.kind) {
        case RingKind::Integers: return {r, n, {}};
        case RingKind::PolyOverFp: {
            int c = static_cast<int>(mpz_fdiv_ui(n.get_mpz_t(), r.p));
            return c == 0 ? zero(r) : RingElem{r, 0, {c}};
        }
        case RingKind::Field:
            // markers form the two-element field
            return {r, mpz_fdiv_ui(n.get_mpz_t(), 2) == 0 ? 0 : 1, {}};
    }
    return zero(r);
}

RingElem RingElem::poly(const RingDescriptor& r, const std::vector<long>& coeffs) {
    if (r.kind != RingKind::PolyOverFp)
        throw Error(ErrorKind::Domain, "poly() requires a PolyOverFp ring");
    std::vector<int> c(coeffs.size());
    for (size_t i = 0; i < coeffs.size(); ++i) c[i] = norm_mod(coeffs[i], r.p);
    strip_trailing_zeros(c);
    return {r, 0, std::move(c)};
}

bool RingElem::is_zero() const {
    return ring.kind == RingKind::PolyOverFp ? coeffs.empty() : iv == 0;
}

bool RingElem::is_unit() const {
    switch (ring.kind) {
        case RingKind::Integers: return iv == 1 || iv == -1;
        case RingKind::PolyOverFp: return coeffs.size() == 1;
        case RingKind::Field: return iv == 1;
    }
    return false;
}

int RingElem::degree() const { return static_cast<int>(coeffs.size()) - 1; }

bool RingElem::operator==(const RingElem& other) const {
    return ring == other.ring && iv == other.iv && coeffs == other.coeffs;
}

std::string RingElem::to_string() const {
    if (ring.kind != RingKind::PolyOverFp) return iv.get_str();
    std::ostringstream os;
    os << '[';
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (i) os << ',';
        os << coeffs[i];
    }
    os << "]@" << ring.p;
    return os.str();
}

RingElem RingElem::parse(const RingDescriptor& r, const std::string& s) {
    try {
        switch (r.kind) {
            case RingKind::Integers: {
                mpz_class v(s);  // throws std::invalid_argument on junk
                return {r, v, {}};
            }
            case RingKind::Field: {
                if (s == "0") return zero(r);
                if (s == "1") return one(r);
                throw Error(ErrorKind::Parse, "field elements serialize as \"0\" or \"1\", got " + s);
            }
            case RingKind::PolyOverFp: {
                auto at = s.find('@');
                if (s.empty() || s.front() != '[' || at == std::string::npos || s[at - 1] != ']')
                    throw Error(ErrorKind::Parse, "bad polynomial literal: " + s);
                if (std::stoi(s.substr(at + 1)) != r.p)
                    throw Error(ErrorKind::Parse, "polynomial modulus mismatch in " + s);
                std::vector<long> cs;
                std::string body = s.substr(1, at - 2);
                std::istringstream is(body);
                std::string tok;
                while (std::getline(is, tok, ',')) cs.push_back(std::stol(tok));
                return poly(r, cs);
            }
        }
    } catch (const Error&) {
        throw;
    } catch (...) {
        throw Error(ErrorKind::Parse, "bad ring element literal: " + s);
    }
    throw Error(ErrorKind::Parse, "bad ring element literal: " + s);
}

RingElem add(const RingElem& a, const RingElem& b) {
    check_same_ring(a, b, "add");
    switch (a.ring.kind) {
        case RingKind::Integers: return {a.ring, a.iv + b.iv, {}};
        case RingKind::PolyOverFp: return {a.ring, 0, poly_add(a.coeffs, b.coeffs, a.ring.p, 1)};
        case RingKind::Field: return {a.ring, (a.iv + b.iv) % 2, {}};
    }
    return a;
}

RingElem sub(const RingElem& a, const RingElem& b) {
    check_same_ring(a, b, "sub");
    switch (a.ring.kind) {
        case RingKind::Integers: return {a.ring, a.iv - b.iv, {}};
        case RingKind::PolyOverFp: return {a.ring, 0, poly_add(a.coeffs, b.coeffs, a.ring.p, -1)};
        case RingKind::Field: return {a.ring, (a.iv + b.iv) % 2, {}};
    }
    return a;
}

RingElem neg(const RingElem& a) { return sub(RingElem::zero(a.ring), a); }

RingElem mul(const RingElem& a, const RingElem& b) {
    check_same_ring(a, b, "mul");
    switch (a.ring.kind) {
        case RingKind::Integers: return {a.ring, a.iv * b.iv, {}};
        case RingKind::PolyOverFp: return {a.ring, 0, poly_mul(a.coeffs, b.coeffs, a.ring.p)};
        case RingKind::Field: return {a.ring, a.iv * b.iv, {}};
    }
    return a;
}

DivMod divmod(const RingElem& a, const RingElem& b) {
    check_same_ring(a, b, "divmod");
    if (b.is_zero()) throw Error(ErrorKind::Domain, "divmod by zero");
    switch (a.ring.kind) {
        case RingKind::Integers: {
            mpz_class q, r;
            mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.iv.get_mpz_t(), b.iv.get_mpz_t());
            // symmetric remainder keeps Euclidean reductions small
            mpz_class ab = abs(b.iv);
            if (2 * abs(r) > ab) {
                if (r > 0) {
                    r -= ab;
                    q += (b.iv > 0 ? 1 : -1);
                } else {
                    r += ab;
                    q -= (b.iv > 0 ? 1 : -1);
                }
            }
            return {{a.ring, q, {}}, {a.ring, r, {}}};
        }
        case RingKind::PolyOverFp: {
            std::vector<int> q, r;
            poly_divmod(a.coeffs, b.coeffs, a.ring.p, q, r);
            return {{a.ring, 0, std::move(q)}, {a.ring, 0, std::move(r)}};
        }
        case RingKind::Field:
            return {a, RingElem::zero(a.ring)};  // b == 1
    }
    return {a, b};
}

bool divides(const RingElem& d, const RingElem& a) {
    check_same_ring(d, a, "divides");
    if (d.is_zero()) return a.is_zero();
    return divmod(a, d).rem.is_zero();
}

RingElem exact_div(const RingElem& a, const RingElem& d) {
    auto [q, r] = divmod(a, d);
    if (!r.is_zero()) throw Error(ErrorKind::Domain, "exact_div: not divisible");
    return q;
}

mpz_class euclid_size(const RingElem& a) {
    switch (a.ring.kind) {
        case RingKind::Integers: return abs(a.iv);
        case RingKind::PolyOverFp: return a.degree();
        case RingKind::Field: return a.is_zero() ? 0 : 1;
    }
    return 0;
}

RingElem canonical_unit(const RingElem& a) {
    switch (a.ring.kind) {
        case RingKind::Integers:
            return RingElem::from_integer(a.ring, a.iv < 0 ? -1 : 1);
        case RingKind::PolyOverFp: {
            if (a.coeffs.empty()) return RingElem::one(a.ring);
            return RingElem{a.ring, 0, {inv_mod(a.coeffs.back(), a.ring.p)}};
        }
        case RingKind::Field:
            return RingElem::one(a.ring);
    }
    return RingElem::one(a.ring);
}

RingElem canonicalize(const RingElem& a) { return mul(canonical_unit(a), a); }

bool is_canonical_associate(const RingElem& a) { return canonicalize(a) == a; }

GcdResult gcd_bezout(const RingElem& a, const RingElem& b) {
    check_same_ring(a, b, "gcd");
    RingElem r0 = a, r1 = b;
    RingElem s0 = RingElem::one(a.ring), s1 = RingElem::zero(a.ring);
    RingElem t0 = RingElem::zero(a.ring), t1 = RingElem::one(a.ring);
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::exchange(r1, r);
        s0 = std::exchange(s1, sub(s0, mul(q, s1)));
        t0 = std::exchange(t1, sub(t0, mul(q, t1)));
    }
    if (r0.is_zero()) return {r0, RingElem::zero(a.ring), RingElem::zero(a.ring)};
    RingElem u = canonical_unit(r0);
    return {mul(u, r0), mul(u, s0), mul(u, t0)};
}

RingElem gcd(const RingElem& a, const RingElem& b) { return gcd_bezout(a, b).g; }

RingElem pow_elem(const RingElem& a, int e) {
    if (e < 0) throw Error(ErrorKind::Domain, "pow_elem: negative exponent");
    RingElem acc = RingElem::one(a.ring);
    for (int i = 0; i < e; ++i) acc = mul(acc, a);
    return acc;
}

namespace {

std::strong_ordering cmp_elems(const RingElem& a, const RingElem& b) {
    if (a.ring.kind == RingKind::PolyOverFp) {
        if (a.coeffs.size() != b.coeffs.size())
            return a.coeffs.size() <=> b.coeffs.size();
        for (size_t i = a.coeffs.size(); i-- > 0;)
            if (a.coeffs[i] != b.coeffs[i]) return a.coeffs[i] <=> b.coeffs[i];
        return std::strong_ordering::equal;
    }
    int c = cmp(a.iv, b.iv);
    return c <=> 0;
}

bool poly_irreducible(const RingElem& a) {
    int n = a.degree();
    if (n < 1) return false;
    int p = a.ring.p;
    // trial division over monic polynomials of degree <= n/2
    for (int d = 1; 2 * d <= n; ++d) {
        std::vector<long> c(d + 1, 0);
        c[d] = 1;
        while (true) {
            if (divides(RingElem::poly(a.ring, c), a)) return false;
            int i = 0;
            while (i < d && c[i] == p - 1) c[i++] = 0;
            if (i == d) break;
            ++c[i];
        }
    }
    return true;
}

void factor_integer(const mpz_class& n0, std::vector<std::pair<mpz_class, int>>& out);

// Pollard rho (Brent) on an odd composite with no small factors.
mpz_class pollard_rho(const mpz_class& n) {
    if (n % 2 == 0) return 2;
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(0xB5297A4DUL);
    while (true) {
        mpz_class y = rng.get_z_range(n - 3) + 2;
        mpz_class c = rng.get_z_range(n - 1) + 1;
        mpz_class x = y, d = 1;
        while (d == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            mpz_class diff = abs(x - y);
            if (diff == 0) break;
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        }
        if (d != 1 && d != n) return d;
    }
}

void factor_integer(const mpz_class& n0, std::vector<std::pair<mpz_class, int>>& out) {
    mpz_class n = n0;
    for (mpz_class d = 2; d <= 1000000 && d * d <= n; d == 2 ? d = 3 : d += 2) {
        int e = 0;
        while (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) {
            n /= d;
            ++e;
        }
        if (e) out.emplace_back(d, e);
    }
    if (n == 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 40)) {
        out.emplace_back(n, 1);
        return;
    }
    mpz_class d = pollard_rho(n);
    std::vector<std::pair<mpz_class, int>> sub;
    factor_integer(d, sub);
    factor_integer(n / d, sub);
    for (auto& [p, e] : sub) {
        bool merged = false;
        for (auto& [q, f] : out)
            if (q == p) {
                f += e;
                merged = true;
            }
        if (!merged) out.emplace_back(p, e);
    }
}

}  // namespace

PrimeElem PrimeElem::make(const RingElem& candidate) {
    if (!candidate.ring.has_primes())
        throw Error(ErrorKind::Domain, "field rings have no prime elements");
    RingElem c = canonicalize(candidate);
    if (!is_prime_elem(c))
        throw Error(ErrorKind::Domain, "not a prime element: " + candidate.to_string());
    return {c.ring, c};
}

PrimeElem PrimeElem::from_integer(long p) {
    return make(RingElem::from_integer(RingDescriptor::integers(), p));
}

std::strong_ordering PrimeElem::operator<=>(const PrimeElem& other) const {
    return cmp_elems(rep, other.rep);
}

PrimeElem PrimeElem::parse(const RingDescriptor& r, const std::string& s) {
    return make(RingElem::parse(r, s));
}

bool is_prime_elem(const RingElem& a) {
    switch (a.ring.kind) {
        case RingKind::Integers:
            return a.iv > 0 && mpz_probab_prime_p(a.iv.get_mpz_t(), 40) != 0;
        case RingKind::PolyOverFp:
            return poly_irreducible(a);
        case RingKind::Field:
            return false;
    }
    return false;
}

std::vector<std::pair<PrimeElem, int>> factor(const RingElem& a) {
    if (!a.ring.has_primes())
        throw Error(ErrorKind::Domain, "factor: field ring has no primes");
    if (a.is_zero()) throw Error(ErrorKind::Domain, "factor: zero input");
    if (a.is_unit()) throw Error(ErrorKind::Domain, "factor: unit input");

    std::vector<std::pair<PrimeElem, int>> result;
    if (a.ring.kind == RingKind::Integers) {
        std::vector<std::pair<mpz_class, int>> fs;
        factor_integer(abs(a.iv), fs);
        for (auto& [p, e] : fs)
            result.emplace_back(PrimeElem{a.ring, RingElem{a.ring, p, {}}}, e);
    } else {
        // trial division by monic candidates of increasing degree; at degree d
        // the remaining cofactor has no factor of degree < d, so only
        // irreducible candidates can divide
        RingElem rest = canonicalize(a);
        int p = a.ring.p;
        for (int d = 1; 2 * d <= rest.degree(); ++d) {
            std::vector<long> c(d + 1, 0);
            c[d] = 1;
            bool wrapped = false;
            while (!wrapped && 2 * d <= rest.degree()) {
                RingElem cand = RingElem::poly(a.ring, c);
                int e = 0;
                while (divides(cand, rest)) {
                    rest = exact_div(rest, cand);
                    ++e;
                }
                if (e) result.emplace_back(PrimeElem{a.ring, cand}, e);
                int i = 0;
                while (i < d && c[i] == p - 1) c[i++] = 0;
                if (i == d)
                    wrapped = true;
                else
                    ++c[i];
            }
        }
        if (rest.degree() >= 1) result.emplace_back(PrimeElem{a.ring, rest}, 1);
    }
    std::sort(result.begin(), result.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    return result;
}

}  // namespace subcat
