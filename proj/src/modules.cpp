#include "subcat/modules.hpp"

#include <algorithm>
#include <cassert>

namespace subcat {

PresentationMatrix PresentationMatrix::zeros(const RingDescriptor& r, int m, int n) {
    if (m < 0 || n < 0) throw Error(ErrorKind::Domain, "matrix dimensions must be non-negative");
    return {r, m, n, std::vector<RingElem>(static_cast<size_t>(m) * n, RingElem::zero(r))};
}

PresentationMatrix PresentationMatrix::identity(const RingDescriptor& r, int n) {
    PresentationMatrix m = zeros(r, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = RingElem::one(r);
    return m;
}

PresentationMatrix PresentationMatrix::diagonal(const RingDescriptor& r, const std::vector<RingElem>& d) {
    int n = static_cast<int>(d.size());
    PresentationMatrix m = zeros(r, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = d[i];
    return m;
}

PresentationMatrix matmul(const PresentationMatrix& a, const PresentationMatrix& b) {
    if (!(a.ring == b.ring)) ring_mismatch("matmul");
    if (a.cols != b.rows) throw Error(ErrorKind::Domain, "matmul: dimension mismatch");
    PresentationMatrix out = PresentationMatrix::zeros(a.ring, a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k) {
            if (a.at(i, k).is_zero()) continue;
            for (int j = 0; j < b.cols; ++j)
                out.at(i, j) = add(out.at(i, j), mul(a.at(i, k), b.at(k, j)));
        }
    return out;
}

PresentationMatrix hconcat(const PresentationMatrix& a, const PresentationMatrix& b) {
    if (!(a.ring == b.ring)) ring_mismatch("hconcat");
    if (a.rows != b.rows) throw Error(ErrorKind::Domain, "hconcat: row mismatch");
    PresentationMatrix out = PresentationMatrix::zeros(a.ring, a.rows, a.cols + b.cols);
    for (int i = 0; i < a.rows; ++i) {
        for (int j = 0; j < a.cols; ++j) out.at(i, j) = a.at(i, j);
        for (int j = 0; j < b.cols; ++j) out.at(i, a.cols + j) = b.at(i, j);
    }
    return out;
}

namespace {

void swap_rows(PresentationMatrix& m, int i, int j) {
    if (i == j) return;
    for (int c = 0; c < m.cols; ++c) std::swap(m.at(i, c), m.at(j, c));
}

void swap_cols(PresentationMatrix& m, int i, int j) {
    if (i == j) return;
    for (int r = 0; r < m.rows; ++r) std::swap(m.at(r, i), m.at(r, j));
}

// row dst += c * row src
void add_row(PresentationMatrix& m, int dst, int src, const RingElem& c) {
    for (int j = 0; j < m.cols; ++j) m.at(dst, j) = add(m.at(dst, j), mul(c, m.at(src, j)));
}

void add_col(PresentationMatrix& m, int dst, int src, const RingElem& c) {
    for (int i = 0; i < m.rows; ++i) m.at(i, dst) = add(m.at(i, dst), mul(c, m.at(i, src)));
}

void scale_row(PresentationMatrix& m, int i, const RingElem& u) {
    for (int j = 0; j < m.cols; ++j) m.at(i, j) = mul(u, m.at(i, j));
}

// smallest euclid_size nonzero entry of d[t.., t..], or nullopt if all zero
std::optional<std::pair<int, int>> min_pivot(const PresentationMatrix& d, int t) {
    std::optional<std::pair<int, int>> best;
    mpz_class best_size;
    for (int i = t; i < d.rows; ++i)
        for (int j = t; j < d.cols; ++j) {
            if (d.at(i, j).is_zero()) continue;
            mpz_class s = euclid_size(d.at(i, j));
            if (!best || s < best_size) {
                best = {{i, j}};
                best_size = s;
            }
        }
    return best;
}

bool row_col_clear(const PresentationMatrix& d, int t) {
    for (int i = t + 1; i < d.rows; ++i)
        if (!d.at(i, t).is_zero()) return false;
    for (int j = t + 1; j < d.cols; ++j)
        if (!d.at(t, j).is_zero()) return false;
    return true;
}

}  // namespace

SnfResult smith_normal_form(const PresentationMatrix& a) {
    SnfResult res{PresentationMatrix::identity(a.ring, a.rows), a,
                  PresentationMatrix::identity(a.ring, a.cols)};
    PresentationMatrix& d = res.d;
    PresentationMatrix& u = res.u;
    PresentationMatrix& v = res.v;

    int nmin = std::min(a.rows, a.cols);
    for (int t = 0; t < nmin; ++t) {
        while (true) {
            auto piv = min_pivot(d, t);
            if (!piv) break;  // rest of the matrix is zero
            swap_rows(d, t, piv->first);
            swap_rows(u, t, piv->first);
            swap_cols(d, t, piv->second);
            swap_cols(v, t, piv->second);

            for (int i = t + 1; i < d.rows; ++i) {
                if (d.at(i, t).is_zero()) continue;
                RingElem q = neg(divmod(d.at(i, t), d.at(t, t)).quot);
                add_row(d, i, t, q);
                add_row(u, i, t, q);
            }
            for (int j = t + 1; j < d.cols; ++j) {
                if (d.at(t, j).is_zero()) continue;
                RingElem q = neg(divmod(d.at(t, j), d.at(t, t)).quot);
                add_col(d, j, t, q);
                add_col(v, j, t, q);
            }
            if (!row_col_clear(d, t)) continue;  // remainders left, reduce again

            // divisibility sweep: pivot must divide the remaining block
            bool chained = true;
            for (int i = t + 1; chained && i < d.rows; ++i)
                for (int j = t + 1; j < d.cols; ++j)
                    if (!divides(d.at(t, t), d.at(i, j))) {
                        add_row(d, t, i, RingElem::one(a.ring));
                        add_row(u, t, i, RingElem::one(a.ring));
                        chained = false;
                        break;
                    }
            if (chained) break;
        }
        RingElem unit = canonical_unit(d.at(t, t));
        if (!(unit == RingElem::one(a.ring))) {
            scale_row(d, t, unit);
            scale_row(u, t, unit);
        }
    }
    return res;
}

PresentationMatrix kernel_columns(const PresentationMatrix& a) {
    SnfResult s = smith_normal_form(a);
    int nmin = std::min(a.rows, a.cols);
    int r = 0;
    while (r < nmin && !s.d.at(r, r).is_zero()) ++r;
    PresentationMatrix out = PresentationMatrix::zeros(a.ring, a.cols, a.cols - r);
    for (int j = r; j < a.cols; ++j)
        for (int i = 0; i < a.cols; ++i) out.at(i, j - r) = s.v.at(i, j);
    return out;
}

FgModule FgModule::free_module(const RingDescriptor& r, long long rank) {
    if (rank < 0) throw Error(ErrorKind::Domain, "rank must be non-negative");
    return {r, rank, {}};
}

FgModule FgModule::cyclic(const PrimeElem& p, int exponent) {
    if (exponent < 1) throw Error(ErrorKind::Domain, "cyclic: exponent must be positive");
    return {p.ring, 0, {{p, {exponent}}}};
}

bool FgModule::operator<(const FgModule& other) const {
    if (rank != other.rank) return rank < other.rank;
    return std::lexicographical_compare(
        torsion.begin(), torsion.end(), other.torsion.begin(), other.torsion.end(),
        [](const auto& x, const auto& y) {
            if (x.first != y.first) return x.first < y.first;
            return x.second < y.second;
        });
}

void FgModule::validate() const {
    if (rank < 0) throw Error(ErrorKind::Domain, "module rank must be non-negative");
    if (ring.kind == RingKind::Field && !torsion.empty())
        throw Error(ErrorKind::Domain, "field modules have no torsion");
    for (const auto& [p, part] : torsion) {
        if (!(p.ring == ring)) ring_mismatch("FgModule");
        if (part.empty()) throw Error(ErrorKind::Domain, "empty torsion partition");
        for (size_t i = 0; i < part.size(); ++i) {
            if (part[i] < 1) throw Error(ErrorKind::Domain, "partition entries must be positive");
            if (i && part[i - 1] > part[i])
                throw Error(ErrorKind::Domain, "partition must be weakly increasing");
        }
    }
}

FgModule from_presentation(const PresentationMatrix& a) {
    SnfResult s = smith_normal_form(a);
    FgModule m{a.ring, a.rows, {}};
    int nmin = std::min(a.rows, a.cols);
    for (int i = 0; i < nmin; ++i) {
        const RingElem& d = s.d.at(i, i);
        if (d.is_zero()) continue;
        m.rank -= 1;
        if (d.is_unit()) continue;
        for (const auto& [p, e] : factor(d)) m.torsion[p].push_back(e);
    }
    for (auto& [p, part] : m.torsion) std::sort(part.begin(), part.end());
    return m;
}

FgModule direct_sum(const FgModule& m, const FgModule& n) {
    if (!(m.ring == n.ring)) ring_mismatch("direct_sum");
    FgModule out = m;
    out.rank += n.rank;
    for (const auto& [p, part] : n.torsion) {
        auto& dst = out.torsion[p];
        dst.insert(dst.end(), part.begin(), part.end());
        std::sort(dst.begin(), dst.end());
    }
    return out;
}

long long p_length(const FgModule& m, const PrimeElem& p) {
    auto it = m.torsion.find(p);
    if (it == m.torsion.end()) return 0;
    long long sum = 0;
    for (int l : it->second) sum += l;
    return sum;
}

LengthStats length_stats(const FgModule& m) {
    LengthStats st;
    st.rank = m.rank;
    long long torsion_total = 0;
    for (const auto& [p, part] : m.torsion) {
        long long s = 0;
        for (int l : part) s += l;
        st.p_lengths[p] = s;
        torsion_total += s;
    }
    if (m.ring.kind == RingKind::Field)
        st.total = m.rank;  // vector spaces: length == dimension
    else if (m.rank == 0)
        st.total = torsion_total;
    return st;
}

std::vector<RingElem> generator_orders(const FgModule& m) {
    std::vector<RingElem> orders(static_cast<size_t>(m.rank), RingElem::zero(m.ring));
    for (const auto& [p, part] : m.torsion)
        for (int l : part) orders.push_back(pow_elem(p.rep, l));
    return orders;
}

long long generator_count(const FgModule& m) {
    long long n = m.rank;
    for (const auto& [p, part] : m.torsion) n += static_cast<long long>(part.size());
    return n;
}

DirectSumLayout direct_sum_layout(const std::vector<FgModule>& parts) {
    if (parts.empty()) throw Error(ErrorKind::Domain, "direct_sum_layout: no parts");
    const RingDescriptor& ring = parts.front().ring;

    DirectSumLayout out;
    out.total = FgModule::zero(ring);
    out.slots.resize(parts.size());

    long long total_rank = 0;
    for (const auto& p : parts) {
        if (!(p.ring == ring)) ring_mismatch("direct_sum_layout");
        total_rank += p.rank;
    }

    // free generators keep block order
    long long free_offset = 0;
    struct TorsionGen {
        PrimeElem p;
        int l;
        size_t part;
        long long local;
    };
    std::vector<TorsionGen> tgens;
    for (size_t k = 0; k < parts.size(); ++k) {
        const FgModule& m = parts[k];
        out.slots[k].resize(static_cast<size_t>(generator_count(m)));
        for (long long j = 0; j < m.rank; ++j) out.slots[k][static_cast<size_t>(j)] = free_offset + j;
        free_offset += m.rank;
        long long local = m.rank;
        for (const auto& [p, part] : m.torsion)
            for (int l : part) tgens.push_back({p, l, k, local++});
        out.total = direct_sum(out.total, m);
    }
    // stable sort by (prime, exponent) mirrors the canonical generator order
    std::stable_sort(tgens.begin(), tgens.end(), [](const TorsionGen& a, const TorsionGen& b) {
        if (a.p != b.p) return a.p < b.p;
        return a.l < b.l;
    });
    for (size_t i = 0; i < tgens.size(); ++i)
        out.slots[tgens[i].part][static_cast<size_t>(tgens[i].local)] =
            total_rank + static_cast<long long>(i);
    return out;
}

}  // namespace subcat
