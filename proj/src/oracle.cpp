#include "subcat/oracle.hpp"

#include <algorithm>
#include <bitset>
#include <cassert>
#include <map>
#include <queue>
#include <set>
#include <unordered_set>

namespace subcat {

namespace {

constexpr int kMaxOrder = 512;

std::vector<std::vector<int>> partitions_up_to(int max_sum) {
    // all weakly increasing partitions of 0..max_sum, the empty one first
    std::vector<std::vector<int>> out{{}};
    for (int n = 1; n <= max_sum; ++n) {
        std::vector<int> cur;
        // ascending partitions of n by recursion
        auto rec = [&](auto&& self, int rest, int min_part) -> void {
            if (rest == 0) {
                out.push_back(cur);
                return;
            }
            for (int part = min_part; part <= rest; ++part) {
                cur.push_back(part);
                self(self, rest - part, part);
                cur.pop_back();
            }
        };
        rec(rec, n, 1);
    }
    return out;
}

long long ipow(long long b, int e) {
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

// finite abelian p-group as tuples; order bounded by kMaxOrder
struct PGroup {
    int p = 2;
    std::vector<int> exps;    // ascending partition
    std::vector<int> moduli;  // p^exps[i]
    int order = 1;

    PGroup(int p_, std::vector<int> exps_) : p(p_), exps(std::move(exps_)) {
        for (int e : exps) {
            moduli.push_back(static_cast<int>(ipow(p, e)));
            order *= moduli.back();
        }
        assert(order <= kMaxOrder);
    }

    std::vector<int> tuple_of(int idx) const {
        std::vector<int> t(moduli.size());
        for (size_t i = 0; i < moduli.size(); ++i) {
            t[i] = idx % moduli[i];
            idx /= moduli[i];
        }
        return t;
    }
    int index_of(const std::vector<int>& t) const {
        int idx = 0;
        for (size_t i = moduli.size(); i-- > 0;) idx = idx * moduli[i] + t[i];
        return idx;
    }
    int add(int a, int b) const {
        std::vector<int> x = tuple_of(a), y = tuple_of(b);
        for (size_t i = 0; i < moduli.size(); ++i) x[i] = (x[i] + y[i]) % moduli[i];
        return index_of(x);
    }
    int scale(int a, long long k) const {
        std::vector<int> x = tuple_of(a);
        for (size_t i = 0; i < moduli.size(); ++i)
            x[i] = static_cast<int>((static_cast<long long>(x[i]) * (k % moduli[i])) % moduli[i]);
        return index_of(x);
    }
};

using Bits = std::bitset<kMaxOrder>;

Bits subgroup_closure(const PGroup& g, Bits seed) {
    std::vector<int> members;
    for (int i = 0; i < g.order; ++i)
        if (seed.test(static_cast<size_t>(i))) members.push_back(i);
    for (size_t i = 0; i < members.size(); ++i)
        for (size_t j = 0; j <= i; ++j) {
            int s = g.add(members[i], members[j]);
            if (!seed.test(static_cast<size_t>(s))) {
                seed.set(static_cast<size_t>(s));
                members.push_back(s);
            }
        }
    return seed;
}

// partition of a p-group from the counting function k -> #{x : p^k x = 0}
std::vector<int> partition_from_counts(int p, const std::vector<long long>& counts) {
    std::vector<int> logs;  // logs[k] = log_p counts[k]
    for (long long c : counts) {
        int e = 0;
        long long v = c;
        while (v > 1) {
            assert(v % p == 0);
            v /= p;
            ++e;
        }
        logs.push_back(e);
    }
    std::vector<int> conj;  // conj[k-1] = #parts >= k
    for (size_t k = 1; k < logs.size(); ++k) conj.push_back(logs[k] - logs[k - 1]);
    std::vector<int> part;
    int nparts = conj.empty() ? 0 : conj.front();
    for (int i = 1; i <= nparts; ++i) {
        int len = 0;
        for (size_t k = 0; k < conj.size(); ++k)
            if (conj[k] >= i) ++len;
        part.push_back(len);
    }
    std::sort(part.begin(), part.end());
    return part;
}

// distinct (subgroup type, quotient type) pairs of a p-group
std::vector<std::pair<std::vector<int>, std::vector<int>>> p_pairs(const PGroup& g) {
    // enumerate all subgroups by closing over one added generator at a time
    std::unordered_set<Bits> seen;
    std::vector<Bits> todo;
    Bits trivial;
    trivial.set(0);
    seen.insert(trivial);
    todo.push_back(trivial);
    for (size_t head = 0; head < todo.size(); ++head) {
        Bits h = todo[head];
        for (int x = 1; x < g.order; ++x) {
            if (h.test(static_cast<size_t>(x))) continue;
            Bits h2 = h;
            h2.set(static_cast<size_t>(x));
            h2 = subgroup_closure(g, h2);
            if (seen.insert(h2).second) todo.push_back(h2);
        }
    }

    int max_e = g.exps.empty() ? 0 : g.exps.back();
    std::set<std::pair<std::vector<int>, std::vector<int>>> pairs;
    for (const Bits& h : todo) {
        long long hsize = static_cast<long long>(h.count());
        std::vector<long long> sub_counts, quot_counts;
        for (int k = 0; k <= max_e; ++k) {
            long long pk = ipow(g.p, k);
            long long nsub = 0, nquot = 0;
            for (int x = 0; x < g.order; ++x) {
                int px = g.scale(x, pk);
                if (h.test(static_cast<size_t>(x)) && px == 0) ++nsub;
                if (h.test(static_cast<size_t>(px))) ++nquot;
            }
            sub_counts.push_back(nsub);
            quot_counts.push_back(nquot / hsize);
        }
        pairs.insert({partition_from_counts(g.p, sub_counts),
                      partition_from_counts(g.p, quot_counts)});
    }
    return {pairs.begin(), pairs.end()};
}

}  // namespace

int Universe::index_of(const FgModule& m) const {
    auto it = std::lower_bound(modules.begin(), modules.end(), m);
    if (it != modules.end() && *it == m) return static_cast<int>(it - modules.begin());
    return -1;
}

Universe enumerate_universe(const std::vector<PrimeElem>& primes,
                            const std::vector<int>& max_p_length, long long cap) {
    RingDescriptor zz = RingDescriptor::integers();
    if (primes.size() != max_p_length.size())
        throw Error(ErrorKind::Domain, "enumerate_universe: one bound per prime");
    for (size_t i = 1; i < primes.size(); ++i)
        if (!(primes[i - 1] < primes[i]))
            throw Error(ErrorKind::Domain, "enumerate_universe: primes must be sorted and unique");
    for (size_t i = 0; i < primes.size(); ++i) {
        if (!(primes[i].ring == zz))
            throw Error(ErrorKind::Domain, "enumerate_universe: integer primes only");
        if (max_p_length[i] < 0) throw Error(ErrorKind::Domain, "enumerate_universe: negative bound");
        mpz_class limit;
        mpz_pow_ui(limit.get_mpz_t(), primes[i].rep.iv.get_mpz_t(),
                   static_cast<unsigned long>(max_p_length[i]));
        if (limit > cap || cap > kMaxOrder)
            throw Error(ErrorKind::Domain,
                        "enumerate_universe: p^max exceeds the universe cap of " +
                            std::to_string(std::min<long long>(cap, kMaxOrder)));
    }

    Universe u{primes, max_p_length, {}};
    std::vector<FgModule> acc{FgModule::zero(zz)};
    for (size_t i = 0; i < primes.size(); ++i) {
        std::vector<FgModule> next;
        for (const FgModule& base : acc)
            for (const auto& part : partitions_up_to(max_p_length[i])) {
                FgModule m = base;
                if (!part.empty()) m.torsion[primes[i]] = part;
                next.push_back(std::move(m));
            }
        acc = std::move(next);
    }
    std::sort(acc.begin(), acc.end());
    u.modules = std::move(acc);
    return u;
}

SesTable ses_table(const Universe& u) {
    SesTable table;
    table.pairs.resize(u.modules.size());

    for (size_t bi = 0; bi < u.modules.size(); ++bi) {
        const FgModule& b = u.modules[bi];
        // per-prime pair lists, then the CRT product across primes
        std::vector<std::vector<std::pair<std::vector<int>, std::vector<int>>>> per_prime;
        std::vector<PrimeElem> ps;
        for (const auto& [p, part] : b.torsion) {
            PGroup g(static_cast<int>(p.rep.iv.get_si()), part);
            per_prime.push_back(p_pairs(g));
            ps.push_back(p);
        }

        std::set<std::pair<int, int>> found;
        std::vector<size_t> pick(per_prime.size(), 0);
        while (true) {
            FgModule a = FgModule::zero(b.ring), c = FgModule::zero(b.ring);
            for (size_t i = 0; i < per_prime.size(); ++i) {
                const auto& [sub, quot] = per_prime[i][pick[i]];
                if (!sub.empty()) a.torsion[ps[i]] = sub;
                if (!quot.empty()) c.torsion[ps[i]] = quot;
            }
            int ai = u.index_of(a), ci = u.index_of(c);
            assert(ai >= 0 && ci >= 0);
            found.insert({ai, ci});
            size_t i = 0;
            while (i < pick.size() && ++pick[i] == per_prime[i].size()) pick[i++] = 0;
            if (i == pick.size()) break;
        }
        table.pairs[bi].assign(found.begin(), found.end());
    }
    return table;
}

std::vector<int> brute_closure(const std::vector<FgModule>& gens, const Universe& u,
                               const SesTable& table) {
    std::vector<char> in(u.modules.size(), 0);
    FgModule zero = FgModule::zero(RingDescriptor::integers());
    int zi = u.index_of(zero);
    assert(zi >= 0);
    in[static_cast<size_t>(zi)] = 1;
    for (const FgModule& g : gens) {
        int gi = u.index_of(g);
        if (gi < 0) throw Error(ErrorKind::Domain, "brute_closure: generator outside the universe");
        in[static_cast<size_t>(gi)] = 1;
    }

    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t bi = 0; bi < u.modules.size(); ++bi)
            for (const auto& [ai, ci] : table.pairs[bi]) {
                bool a = in[static_cast<size_t>(ai)], bb = in[bi], c = in[static_cast<size_t>(ci)];
                if (a && c && !bb) {
                    in[bi] = 1;
                    changed = true;
                } else if (a && bb && !c) {
                    in[static_cast<size_t>(ci)] = 1;
                    changed = true;
                } else if (bb && c && !a) {
                    in[static_cast<size_t>(ai)] = 1;
                    changed = true;
                }
            }
    }
    std::vector<int> out;
    for (size_t i = 0; i < in.size(); ++i)
        if (in[i]) out.push_back(static_cast<int>(i));
    return out;
}

std::vector<int> brute_closure(const std::vector<FgModule>& gens, const Universe& u) {
    return brute_closure(gens, u, ses_table(u));
}

}  // namespace subcat
