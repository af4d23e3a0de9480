#include "subcat/certificate.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <set>

namespace subcat {

namespace {

RingElem one_of(const RingDescriptor& r) { return RingElem::one(r); }

FgModule torsion_part(const FgModule& m) { return {m.ring, 0, m.torsion}; }

// start index of the torsion generators of prime p in m's generator order
std::map<PrimeElem, long long> torsion_block_starts(const FgModule& m) {
    std::map<PrimeElem, long long> starts;
    long long idx = m.rank;
    for (const auto& [p, part] : m.torsion) {
        starts[p] = idx;
        idx += static_cast<long long>(part.size());
    }
    return starts;
}

bool is_reduced(const FgModule& m) {
    if (m.rank != 0) return false;
    for (const auto& [p, part] : m.torsion)
        for (int l : part)
            if (l != 1) return false;
    return true;
}

}  // namespace

ShortExactSeq seq_descend_a(const PrimeElem& p, int r, const FgModule& g) {
    if (r < 2) throw Error(ErrorKind::Domain, "seq_descend_a: exponent must be at least 2");
    if (!(p.ring == g.ring)) ring_mismatch("seq_descend_a");
    FgModule x = FgModule::cyclic(p, r);
    DirectSumLayout dl = direct_sum_layout({x, g});
    DirectSumLayout ml =
        direct_sum_layout({FgModule::cyclic(p, r - 1), FgModule::cyclic(p, r + 1), g, g});

    ModuleHom f = ModuleHom::zero(dl.total, ml.total);
    f.at(ml.slots[0][0], dl.slots[0][0]) = one_of(g.ring);
    f.at(ml.slots[1][0], dl.slots[0][0]) = p.rep;
    for (size_t i = 0; i < dl.slots[1].size(); ++i)
        f.at(ml.slots[2][i], dl.slots[1][i]) = one_of(g.ring);

    ModuleHom q = ModuleHom::zero(ml.total, dl.total);
    q.at(dl.slots[0][0], ml.slots[0][0]) = p.rep;
    q.at(dl.slots[0][0], ml.slots[1][0]) = neg(one_of(g.ring));
    for (size_t i = 0; i < dl.slots[1].size(); ++i)
        q.at(dl.slots[1][i], ml.slots[3][i]) = one_of(g.ring);

    return {dl.total, ml.total, dl.total, reduce_hom(f), reduce_hom(q)};
}

ShortExactSeq seq_descend_b(const PrimeElem& p, int r, const FgModule& g) {
    if (r < 2) throw Error(ErrorKind::Domain, "seq_descend_b: exponent must be at least 2");
    if (!(p.ring == g.ring)) ring_mismatch("seq_descend_b");
    FgModule x = FgModule::cyclic(p, r);
    DirectSumLayout dl = direct_sum_layout({x, g});
    DirectSumLayout ml =
        direct_sum_layout({FgModule::cyclic(p, r - 1), FgModule::cyclic(p, r + 1), g, g});
    DirectSumLayout rl = direct_sum_layout({FgModule::cyclic(p, r - 1), FgModule::cyclic(p, 1), g});

    ModuleHom f = ModuleHom::zero(dl.total, ml.total);
    f.at(ml.slots[1][0], dl.slots[0][0]) = p.rep;
    for (size_t i = 0; i < dl.slots[1].size(); ++i)
        f.at(ml.slots[2][i], dl.slots[1][i]) = one_of(g.ring);

    ModuleHom q = ModuleHom::zero(ml.total, rl.total);
    q.at(rl.slots[0][0], ml.slots[0][0]) = one_of(g.ring);
    q.at(rl.slots[1][0], ml.slots[1][0]) = one_of(g.ring);
    for (size_t i = 0; i < rl.slots[2].size(); ++i)
        q.at(rl.slots[2][i], ml.slots[3][i]) = one_of(g.ring);

    return {dl.total, ml.total, rl.total, reduce_hom(f), reduce_hom(q)};
}

ShortExactSeq seq_ascend_a(const PrimeElem& p, int r, const FgModule& g) {
    if (r < 1) throw Error(ErrorKind::Domain, "seq_ascend_a: exponent must be positive");
    if (!(p.ring == g.ring)) ring_mismatch("seq_ascend_a");
    DirectSumLayout dl = direct_sum_layout({FgModule::cyclic(p, 1), FgModule::cyclic(p, r), g});
    DirectSumLayout ml = direct_sum_layout(
        {FgModule::cyclic(p, 1), FgModule::cyclic(p, r + 1), FgModule::cyclic(p, r), g, g});

    // h sends (x, y) to (x, p*y, 0)
    ModuleHom f = ModuleHom::zero(dl.total, ml.total);
    f.at(ml.slots[0][0], dl.slots[0][0]) = one_of(g.ring);
    f.at(ml.slots[1][0], dl.slots[1][0]) = p.rep;
    for (size_t i = 0; i < dl.slots[2].size(); ++i)
        f.at(ml.slots[3][i], dl.slots[2][i]) = one_of(g.ring);

    ModuleHom q = ModuleHom::zero(ml.total, dl.total);
    q.at(dl.slots[0][0], ml.slots[1][0]) = one_of(g.ring);
    q.at(dl.slots[1][0], ml.slots[2][0]) = one_of(g.ring);
    for (size_t i = 0; i < dl.slots[2].size(); ++i)
        q.at(dl.slots[2][i], ml.slots[4][i]) = one_of(g.ring);

    return {dl.total, ml.total, dl.total, reduce_hom(f), reduce_hom(q)};
}

ShortExactSeq seq_ascend_b(const PrimeElem& p, int r, const FgModule& g) {
    if (r < 1) throw Error(ErrorKind::Domain, "seq_ascend_b: exponent must be positive");
    if (!(p.ring == g.ring)) ring_mismatch("seq_ascend_b");
    DirectSumLayout dl = direct_sum_layout({FgModule::cyclic(p, 1), FgModule::cyclic(p, r), g});
    DirectSumLayout ml = direct_sum_layout(
        {FgModule::cyclic(p, 1), FgModule::cyclic(p, r + 1), FgModule::cyclic(p, r), g, g});
    DirectSumLayout rl = direct_sum_layout({FgModule::cyclic(p, r + 1), g});

    ModuleHom f = ModuleHom::zero(dl.total, ml.total);
    f.at(ml.slots[0][0], dl.slots[0][0]) = one_of(g.ring);
    f.at(ml.slots[2][0], dl.slots[1][0]) = one_of(g.ring);
    for (size_t i = 0; i < dl.slots[2].size(); ++i)
        f.at(ml.slots[3][i], dl.slots[2][i]) = one_of(g.ring);

    ModuleHom q = ModuleHom::zero(ml.total, rl.total);
    q.at(rl.slots[0][0], ml.slots[1][0]) = one_of(g.ring);
    for (size_t i = 0; i < rl.slots[1].size(); ++i)
        q.at(rl.slots[1][i], ml.slots[4][i]) = one_of(g.ring);

    return {dl.total, ml.total, rl.total, reduce_hom(f), reduce_hom(q)};
}

ShortExactSeq seq_split_sum(const FgModule& a, const FgModule& b) {
    if (!(a.ring == b.ring)) ring_mismatch("seq_split_sum");
    DirectSumLayout ml = direct_sum_layout({a, b});
    ModuleHom f = ModuleHom::zero(a, ml.total);
    for (size_t i = 0; i < ml.slots[0].size(); ++i)
        f.at(ml.slots[0][i], static_cast<long long>(i)) = one_of(a.ring);
    ModuleHom g = ModuleHom::zero(ml.total, b);
    for (size_t i = 0; i < ml.slots[1].size(); ++i)
        g.at(static_cast<long long>(i), ml.slots[1][i]) = one_of(a.ring);
    return {a, ml.total, b, f, g};
}

ShortExactSeq seq_torsion_split(const FgModule& m) {
    FgModule tor = torsion_part(m);
    FgModule fr = FgModule::free_module(m.ring, m.rank);
    long long tcount = generator_count(tor);
    ModuleHom f = ModuleHom::zero(tor, m);
    for (long long i = 0; i < tcount; ++i) f.at(m.rank + i, i) = one_of(m.ring);
    ModuleHom g = ModuleHom::zero(m, fr);
    for (long long j = 0; j < m.rank; ++j) g.at(j, j) = one_of(m.ring);
    return {tor, m, fr, f, g};
}

ShortExactSeq seq_mul_free(const FgModule& m, const PrimeElem& p, int t) {
    if (m.rank < 1) throw Error(ErrorKind::Domain, "seq_mul_free: module must have positive rank");
    if (t < 1) throw Error(ErrorKind::Domain, "seq_mul_free: exponent must be positive");
    if (!(p.ring == m.ring)) ring_mismatch("seq_mul_free");
    ModuleHom f = ModuleHom::identity(m);
    f.at(0, 0) = pow_elem(p.rep, t);
    FgModule right = FgModule::cyclic(p, t);
    ModuleHom g = ModuleHom::zero(m, right);
    g.at(0, 0) = one_of(m.ring);
    return {m, m, right, f, reduce_hom(g)};
}

ShortExactSeq seq_free_quotient(const RingDescriptor& ring, long long a, long long b) {
    if (a < 0 || a > b) throw Error(ErrorKind::Domain, "seq_free_quotient: need 0 <= a <= b");
    FgModule fa = FgModule::free_module(ring, a);
    FgModule fb = FgModule::free_module(ring, b);
    FgModule fc = FgModule::free_module(ring, b - a);
    ModuleHom f = ModuleHom::zero(fa, fb);
    for (long long j = 0; j < a; ++j) f.at(j, j) = one_of(ring);
    ModuleHom g = ModuleHom::zero(fb, fc);
    for (long long i = 0; i < b - a; ++i) g.at(i, a + i) = one_of(ring);
    return {fa, fb, fc, f, g};
}

ShortExactSeq seq_reduced_inclusion(const FgModule& b_side, const FgModule& a_side) {
    if (!(b_side.ring == a_side.ring)) ring_mismatch("seq_reduced_inclusion");
    if (!is_reduced(b_side) || !is_reduced(a_side))
        throw Error(ErrorKind::Domain, "seq_reduced_inclusion: sides must have all exponents 1");

    FgModule n{a_side.ring, 0, {}};
    for (const auto& [p, part] : a_side.torsion) {
        long long alpha = static_cast<long long>(part.size());
        long long beta = p_length(b_side, p);
        if (beta > alpha)
            throw Error(ErrorKind::Domain, "seq_reduced_inclusion: second side must dominate");
        if (alpha - beta > 0)
            n.torsion[p] = std::vector<int>(static_cast<size_t>(alpha - beta), 1);
    }
    for (const auto& [p, part] : b_side.torsion)
        if (!a_side.torsion.count(p))
            throw Error(ErrorKind::Domain, "seq_reduced_inclusion: second side must dominate");

    auto a_start = torsion_block_starts(a_side);
    auto b_start = torsion_block_starts(b_side);
    auto n_start = torsion_block_starts(n);

    ModuleHom f = ModuleHom::zero(b_side, a_side);
    ModuleHom g = ModuleHom::zero(a_side, n);
    for (const auto& [p, part] : a_side.torsion) {
        long long alpha = static_cast<long long>(part.size());
        long long beta = p_length(b_side, p);
        for (long long i = 0; i < beta; ++i)
            f.at(a_start[p] + i, b_start[p] + i) = one_of(a_side.ring);
        for (long long i = 0; i < alpha - beta; ++i)
            g.at(n_start[p] + i, a_start[p] + beta + i) = one_of(a_side.ring);
    }
    return {b_side, a_side, n, f, g};
}

namespace {

class CertBuilder {
public:
    CertBuilder(const RingDescriptor& ring, std::vector<FgModule> gens) {
        cert_.ring = ring;
        cert_.generators = std::move(gens);
        cert_.target = FgModule::zero(ring);
        derived_.insert(FgModule::zero(ring));
        for (const auto& g : cert_.generators) derived_.insert(g);
    }

    bool has(const FgModule& m) const { return derived_.count(m) > 0; }

    const FgModule& slot_module(const ShortExactSeq& s, Slot slot) const {
        return slot == Slot::Left ? s.left : slot == Slot::Mid ? s.mid : s.right;
    }

    // emits unless the derived module is already known; premises must be known
    void step(ShortExactSeq seq, Slot slot, std::string note, bool force = false) {
        const FgModule& out = slot_module(seq, slot);
        for (Slot other : {Slot::Left, Slot::Mid, Slot::Right}) {
            if (other == slot) continue;
            if (!has(slot_module(seq, other)))
                throw Error(ErrorKind::Domain, "certificate step premise not derived (internal)");
        }
        if (!force && has(out)) return;
        derived_.insert(out);
        cert_.steps.push_back({std::move(seq), slot, std::move(note)});
    }

    // derive a + b from its two (already derived) halves
    FgModule sum(const FgModule& a, const FgModule& b) {
        ShortExactSeq s = seq_split_sum(a, b);
        FgModule out = s.mid;
        step(std::move(s), Slot::Mid, "split-sum");
        return out;
    }

    Certificate take(FgModule target) {
        cert_.target = std::move(target);
        return std::move(cert_);
    }

private:
    Certificate cert_;
    std::set<FgModule> derived_;
};

// one split round per pair, largest exponent first, until all exponents are 1
FgModule descend_steps(CertBuilder& b, const FgModule& m, const PrimeElem& p) {
    FgModule cur = m;
    while (true) {
        auto it = cur.torsion.find(p);
        if (it == cur.torsion.end()) break;
        int r = it->second.back();
        if (r <= 1) break;
        FgModule g = cur;
        auto& part = g.torsion[p];
        part.pop_back();
        if (part.empty()) g.torsion.erase(p);
        b.step(seq_descend_a(p, r, g), Slot::Mid, "descend-a");
        ShortExactSeq sb = seq_descend_b(p, r, g);
        FgModule next = sb.right;
        b.step(std::move(sb), Slot::Right, "descend-b");
        cur = std::move(next);
    }
    return cur;
}

// merge ones into the requested exponents, largest part first
FgModule ascend_steps(CertBuilder& b, const FgModule& m, const PrimeElem& p,
                      std::vector<int> partition) {
    std::sort(partition.begin(), partition.end());
    long long r = std::accumulate(partition.begin(), partition.end(), 0LL);
    for (int t : partition)
        if (t < 1) throw Error(ErrorKind::Domain, "ascend: partition entries must be positive");

    long long have = p_length(m, p);
    auto it = m.torsion.find(p);
    if (it != m.torsion.end())
        for (int l : it->second)
            if (l != 1) throw Error(ErrorKind::Domain, "ascend: p-torsion must be (R/p)^r");
    if (have != r) throw Error(ErrorKind::Domain, "ascend: partition does not sum to the p-length");

    FgModule cur = m;
    for (auto t_it = partition.rbegin(); t_it != partition.rend(); ++t_it) {
        for (int j = 1; j < *t_it; ++j) {
            // cur contains exponents {1, j} at p; strip one of each for the carrier
            FgModule g = cur;
            auto& part = g.torsion[p];
            part.erase(std::find(part.begin(), part.end(), j));
            part.erase(std::find(part.begin(), part.end(), 1));
            if (part.empty()) g.torsion.erase(p);
            b.step(seq_ascend_a(p, j, g), Slot::Mid, "ascend-a");
            ShortExactSeq sb = seq_ascend_b(p, j, g);
            FgModule next = sb.right;
            b.step(std::move(sb), Slot::Right, "ascend-b");
            cur = std::move(next);
        }
    }
    return cur;
}

// derive m by summing its cyclic pieces (each piece already derived)
FgModule assemble_from_cyclics(CertBuilder& b, const FgModule& m) {
    std::vector<FgModule> pieces;
    for (const auto& [p, part] : m.torsion)
        for (int l : part) pieces.push_back(FgModule::cyclic(p, l));
    if (pieces.empty()) return FgModule::zero(m.ring);
    FgModule acc = pieces.front();
    for (size_t i = 1; i < pieces.size(); ++i) acc = b.sum(acc, pieces[i]);
    assert(acc == m);
    return acc;
}

long long euclid_ranks(CertBuilder& b, const RingDescriptor& ring, long long x, long long y) {
    while (x != y) {
        if (x > y) std::swap(x, y);
        b.step(seq_free_quotient(ring, x, y), Slot::Right, "free-euclid");
        y -= x;
    }
    return x;
}

void case_i(CertBuilder& b, const std::vector<FgModule>& gens, const FgModule& target) {
    std::vector<FgModule> positive;
    for (const auto& g : gens)
        if (g.rank > 0) positive.push_back(g);
    assert(!positive.empty());
    const FgModule& g0 = positive.front();

    // cyclic torsion needed for the target, and for the generators whose free
    // parts feed the rank computation
    std::set<std::pair<PrimeElem, int>> needed;
    for (const auto& [p, part] : target.torsion)
        for (int l : part) needed.insert({p, l});
    if (target.rank > 0)
        for (const auto& g : positive)
            for (const auto& [p, part] : g.torsion)
                for (int l : part) needed.insert({p, l});
    for (const auto& [p, l] : needed)
        b.step(seq_mul_free(g0, p, l), Slot::Right, "case-i-torsion");

    if (target.rank > 0) {
        for (const auto& g : positive) {
            FgModule tor = torsion_part(g);
            if (tor.is_zero()) continue;  // g is free, already derived as a generator
            assemble_from_cyclics(b, tor);
            b.step(seq_torsion_split(g), Slot::Right, "torsion-split");
        }
        long long acc = positive.front().rank;
        for (size_t i = 1; i < positive.size(); ++i)
            acc = euclid_ranks(b, target.ring, acc, positive[i].rank);
        assert(target.rank % acc == 0);

        FgModule unit = FgModule::free_module(target.ring, acc);
        FgModule fr = unit;
        while (fr.rank < target.rank) fr = b.sum(fr, unit);
        assert(fr.rank == target.rank);
    }

    FgModule tor = torsion_part(target);
    if (!tor.is_zero()) assemble_from_cyclics(b, tor);
    if (target.rank > 0 && !tor.is_zero())
        b.sum(FgModule::free_module(target.ring, target.rank), tor);
    assert(b.has(target));
}

void case_ii(CertBuilder& b, const std::vector<FgModule>& gens, const FgModule& target) {
    std::vector<FgModule> tgens;
    for (const auto& g : gens)
        if (!g.is_zero()) tgens.push_back(g);

    std::vector<PrimeElem> support;
    for (const auto& g : tgens)
        for (const auto& [p, part] : g.torsion) support.push_back(p);
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());

    std::vector<long long> tv = chi_on_support(chi(target), support);
    std::vector<mpz_class> v(tv.begin(), tv.end());
    std::vector<std::vector<mpz_class>> gmat;
    for (const auto& g : tgens) {
        std::vector<long long> row = chi_on_support(chi(g), support);
        gmat.emplace_back(row.begin(), row.end());
    }
    auto coeffs = lattice_member(v, gmat);
    assert(coeffs.has_value());

    // fully reduce every generator that carries a nonzero coefficient
    std::vector<FgModule> reduced(tgens.size(), FgModule::zero(target.ring));
    for (size_t i = 0; i < tgens.size(); ++i) {
        if ((*coeffs)[i] == 0) continue;
        FgModule cur = tgens[i];
        std::vector<PrimeElem> primes;
        for (const auto& [p, part] : cur.torsion) primes.push_back(p);
        for (const auto& p : primes) cur = descend_steps(b, cur, p);
        reduced[i] = cur;
    }

    auto assemble_copies = [&](bool positive_side) -> FgModule {
        FgModule acc = FgModule::zero(target.ring);
        bool first = true;
        for (size_t i = 0; i < tgens.size(); ++i) {
            mpz_class c = (*coeffs)[i];
            if (positive_side ? c <= 0 : c >= 0) continue;
            mpz_class copies = abs(c);
            for (mpz_class k = 0; k < copies; ++k) {
                if (first) {
                    acc = reduced[i];
                    first = false;
                } else {
                    acc = b.sum(acc, reduced[i]);
                }
            }
        }
        return acc;
    };

    FgModule a_side = assemble_copies(true);
    FgModule b_side = assemble_copies(false);

    FgModule n;
    if (b_side.is_zero()) {
        n = a_side;
    } else {
        ShortExactSeq s = seq_reduced_inclusion(b_side, a_side);
        n = s.right;
        b.step(std::move(s), Slot::Right, "case-ii-cokernel");
    }

    FgModule cur = n;
    for (const auto& [p, part] : target.torsion) cur = ascend_steps(b, cur, p, part);
    assert(cur == target);
}

}  // namespace

Certificate descend(const FgModule& m, const PrimeElem& p) {
    m.validate();
    if (!(p.ring == m.ring)) ring_mismatch("descend");
    if (!m.torsion.count(p)) throw Error(ErrorKind::Domain, "descend: module has no p-torsion");
    CertBuilder b(m.ring, {m});
    FgModule t = descend_steps(b, m, p);
    return b.take(std::move(t));
}

Certificate ascend(const FgModule& m, const PrimeElem& p, const std::vector<int>& partition) {
    m.validate();
    if (!(p.ring == m.ring)) ring_mismatch("ascend");
    CertBuilder b(m.ring, {m});
    FgModule t = ascend_steps(b, m, p, partition);
    return b.take(std::move(t));
}

Certificate torsion_from_rank(const FgModule& m, const PrimeElem& p, int t) {
    m.validate();
    if (!(p.ring == m.ring)) ring_mismatch("torsion_from_rank");
    if (m.rank < 1) throw Error(ErrorKind::Domain, "torsion_from_rank: module must have positive rank");
    CertBuilder b(m.ring, {m});
    ShortExactSeq s = seq_mul_free(m, p, t);
    FgModule out = s.right;
    b.step(std::move(s), Slot::Right, "case-i-torsion", /*force=*/true);
    return b.take(std::move(out));
}

Certificate member_certificate(const std::vector<FgModule>& gens, const FgModule& target) {
    target.validate();
    SubcatDescriptor d = generate(gens, &target.ring);
    if (!member(d, target).member)
        throw Error(ErrorKind::NotInSubcategory,
                    "target is not in the subcategory generated by the given modules");

    CertBuilder b(target.ring, gens);
    if (!b.has(target)) {
        if (d.kind == DescriptorKind::RankMod)
            case_i(b, gens, target);
        else
            case_ii(b, gens, target);
    }
    return b.take(target);
}

VerifyReport verify_certificate(const Certificate& c) {
    std::set<FgModule> derived;
    try {
        FgModule zero = FgModule::zero(c.ring);
        derived.insert(zero);
        for (const auto& g : c.generators) {
            if (!(g.ring == c.ring)) return {false, std::nullopt, "generator ring mismatch"};
            g.validate();
            derived.insert(g);
        }
        c.target.validate();
    } catch (const Error& e) {
        return {false, std::nullopt, e.what()};
    }

    for (size_t i = 0; i < c.steps.size(); ++i) {
        const CertStep& st = c.steps[i];
        try {
            if (!(st.seq.left.ring == c.ring))
                return {false, i, "step ring mismatch"};
            if (!is_exact(st.seq)) return {false, i, "sequence is not exact"};
        } catch (const Error& e) {
            return {false, i, e.what()};
        }
        const FgModule* mods[3] = {&st.seq.left, &st.seq.mid, &st.seq.right};
        Slot slots[3] = {Slot::Left, Slot::Mid, Slot::Right};
        for (int s = 0; s < 3; ++s) {
            if (slots[s] == st.derived) continue;
            if (!derived.count(*mods[s]))
                return {false, i, "step uses a module that has not been derived"};
        }
        derived.insert(*mods[st.derived == Slot::Left ? 0 : st.derived == Slot::Mid ? 1 : 2]);
    }
    if (!derived.count(c.target)) return {false, std::nullopt, "target was never derived"};
    return {true, std::nullopt, ""};
}

}  // namespace subcat
