#include "subcat/hom.hpp"

#include <cassert>

namespace subcat {

namespace {

void check_shape(const ModuleHom& h, const char* where) {
    if (!(h.domain.ring == h.codomain.ring)) ring_mismatch(where);
    size_t want = static_cast<size_t>(generator_count(h.domain)) *
                  static_cast<size_t>(generator_count(h.codomain));
    if (h.entries.size() != want)
        throw Error(ErrorKind::Domain, std::string(where) + ": matrix does not match generators");
    for (const RingElem& e : h.entries)
        if (!(e.ring == h.domain.ring)) ring_mismatch(where);
}

PresentationMatrix order_diagonal(const FgModule& m) {
    return PresentationMatrix::diagonal(m.ring, generator_orders(m));
}

PresentationMatrix hom_matrix(const ModuleHom& h) {
    PresentationMatrix a = PresentationMatrix::zeros(
        h.domain.ring, static_cast<int>(generator_count(h.codomain)),
        static_cast<int>(generator_count(h.domain)));
    a.entries = h.entries;
    return a;
}

}  // namespace

ModuleHom ModuleHom::zero(const FgModule& dom, const FgModule& cod) {
    if (!(dom.ring == cod.ring)) ring_mismatch("ModuleHom::zero");
    size_t n = static_cast<size_t>(generator_count(dom)) * static_cast<size_t>(generator_count(cod));
    return {dom, cod, std::vector<RingElem>(n, RingElem::zero(dom.ring))};
}

ModuleHom ModuleHom::identity(const FgModule& m) {
    ModuleHom h = zero(m, m);
    for (long long i = 0; i < generator_count(m); ++i) h.at(i, i) = RingElem::one(m.ring);
    return h;
}

bool check_hom(const ModuleHom& h) {
    check_shape(h, "check_hom");
    std::vector<RingElem> dom_orders = generator_orders(h.domain);
    std::vector<RingElem> cod_orders = generator_orders(h.codomain);
    for (size_t i = 0; i < cod_orders.size(); ++i)
        for (size_t j = 0; j < dom_orders.size(); ++j) {
            RingElem fd = mul(h.at(static_cast<long long>(i), static_cast<long long>(j)),
                              dom_orders[j]);
            if (!divides(cod_orders[i], fd)) return false;
        }
    return true;
}

ModuleHom reduce_hom(ModuleHom h) {
    check_shape(h, "reduce_hom");
    std::vector<RingElem> cod_orders = generator_orders(h.codomain);
    long long n = generator_count(h.domain);
    for (size_t i = 0; i < cod_orders.size(); ++i) {
        if (cod_orders[i].is_zero()) continue;
        for (long long j = 0; j < n; ++j) {
            RingElem& e = h.at(static_cast<long long>(i), j);
            e = divmod(e, cod_orders[i]).rem;
        }
    }
    return h;
}

ModuleHom compose(const ModuleHom& g, const ModuleHom& f) {
    check_shape(f, "compose");
    check_shape(g, "compose");
    if (!(f.codomain == g.domain))
        throw Error(ErrorKind::Domain, "compose: codomain of f is not the domain of g");
    PresentationMatrix prod = matmul(hom_matrix(g), hom_matrix(f));
    return reduce_hom(ModuleHom{f.domain, g.codomain, std::move(prod.entries)});
}

bool is_zero_hom(const ModuleHom& h) {
    ModuleHom r = reduce_hom(h);
    for (const RingElem& e : r.entries)
        if (!e.is_zero()) return false;
    return true;
}

KernelImageCokernel kernel_image_cokernel(const ModuleHom& h) {
    if (!check_hom(h)) throw Error(ErrorKind::Domain, "kernel_image_cokernel: ill-defined hom");

    PresentationMatrix mat = hom_matrix(h);
    PresentationMatrix dom_rel = order_diagonal(h.domain);
    PresentationMatrix cod_rel = order_diagonal(h.codomain);

    // cokernel: codomain generators modulo the image columns and the
    // codomain relations
    FgModule coker = from_presentation(hconcat(mat, cod_rel));

    // preimage lattice V = {x free : h(x) lands in the codomain relations},
    // via syzygies of [mat | cod_rel] projected to the domain block
    PresentationMatrix syz = kernel_columns(hconcat(mat, cod_rel));
    int n = mat.cols;
    PresentationMatrix pre = PresentationMatrix::zeros(mat.ring, n, syz.cols);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < syz.cols; ++j) pre.at(i, j) = syz.at(i, j);

    // image = R^n / V; kernel = V / (domain relations), presented by the
    // syzygies of V's generators against the domain relations
    FgModule image = from_presentation(pre);
    PresentationMatrix ker_syz = kernel_columns(hconcat(pre, dom_rel));
    PresentationMatrix ker_rel = PresentationMatrix::zeros(mat.ring, pre.cols, ker_syz.cols);
    for (int i = 0; i < pre.cols; ++i)
        for (int j = 0; j < ker_syz.cols; ++j) ker_rel.at(i, j) = ker_syz.at(i, j);
    FgModule kernel = from_presentation(ker_rel);

    return {kernel, image, coker};
}

void ShortExactSeq::validate() const {
    if (!(left.ring == mid.ring) || !(mid.ring == right.ring)) ring_mismatch("ShortExactSeq");
    left.validate();
    mid.validate();
    right.validate();
    if (!(f.domain == left) || !(f.codomain == mid) || !(g.domain == mid) || !(g.codomain == right))
        throw Error(ErrorKind::Domain, "ShortExactSeq: maps do not match the three terms");
    check_shape(f, "ShortExactSeq");
    check_shape(g, "ShortExactSeq");
}

bool span_contains(const PresentationMatrix& b, const PresentationMatrix& targets) {
    if (!(b.ring == targets.ring)) ring_mismatch("span_contains");
    if (b.rows != targets.rows) throw Error(ErrorKind::Domain, "span_contains: row mismatch");
    SnfResult s = smith_normal_form(b);
    PresentationMatrix ut = matmul(s.u, targets);
    int nmin = std::min(b.rows, b.cols);
    int r = 0;
    while (r < nmin && !s.d.at(r, r).is_zero()) ++r;
    for (int j = 0; j < ut.cols; ++j)
        for (int i = 0; i < ut.rows; ++i) {
            if (i < r) {
                if (!divides(s.d.at(i, i), ut.at(i, j))) return false;
            } else if (!ut.at(i, j).is_zero()) {
                return false;
            }
        }
    return true;
}

bool is_exact(const ShortExactSeq& s) {
    s.validate();
    if (!check_hom(s.f) || !check_hom(s.g))
        throw Error(ErrorKind::Domain, "is_exact: ill-defined hom");
    if (!is_zero_hom(compose(s.g, s.f))) return false;
    if (s.mid.rank != s.left.rank + s.right.rank) return false;
    if (!kernel_image_cokernel(s.f).kernel.is_zero()) return false;
    if (!kernel_image_cokernel(s.g).cokernel.is_zero()) return false;

    // im f = ker g inside R^(mid generators): compare the lattice spanned by
    // f's columns plus the mid relations against the preimage of g's
    // relations
    PresentationMatrix mid_rel = order_diagonal(s.mid);
    PresentationMatrix im_lat = hconcat(hom_matrix(s.f), mid_rel);
    PresentationMatrix syz = kernel_columns(hconcat(hom_matrix(s.g), order_diagonal(s.right)));
    int n = static_cast<int>(generator_count(s.mid));
    PresentationMatrix ker_lat = PresentationMatrix::zeros(s.mid.ring, n, syz.cols);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < syz.cols; ++j) ker_lat.at(i, j) = syz.at(i, j);
    return span_contains(im_lat, ker_lat) && span_contains(ker_lat, im_lat);
}

}  // namespace subcat
