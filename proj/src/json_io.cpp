#include "subcat/json_io.hpp"

namespace subcat {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::Parse, what); }

const json& need(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) bad(std::string("missing key \"") + key + "\"");
    return j.at(key);
}

std::string need_string(const json& j, const char* key) {
    const json& v = need(j, key);
    if (!v.is_string()) bad(std::string("key \"") + key + "\" must be a string");
    return v.get<std::string>();
}

json mpz_to_json(const mpz_class& v) {
    if (v.fits_slong_p()) return json(v.get_si());
    return json(v.get_str());
}

mpz_class mpz_from_json(const json& j) {
    if (j.is_number_integer()) return mpz_class(j.get<long long>());
    if (j.is_string()) {
        try {
            return mpz_class(j.get<std::string>());
        } catch (...) {
            bad("bad integer literal: " + j.get<std::string>());
        }
    }
    bad("expected an integer");
}

RingDescriptor ring_from_json(const json& j) {
    if (!j.is_string()) bad("ring descriptor must be a string");
    return RingDescriptor::parse(j.get<std::string>());
}

long long small_int(const json& j, const char* what) {
    if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
    return j.get<long long>();
}

}  // namespace

json module_to_json(const FgModule& m) {
    json torsion = json::object();
    for (const auto& [p, part] : m.torsion) torsion[p.to_string()] = part;
    return {{"ring", m.ring.to_string()}, {"rank", m.rank}, {"torsion", torsion}};
}

FgModule module_from_json(const json& j) {
    RingDescriptor ring = ring_from_json(need(j, "ring"));
    FgModule m{ring, small_int(need(j, "rank"), "rank"), {}};
    if (j.contains("torsion")) {
        const json& t = j.at("torsion");
        if (!t.is_object()) bad("torsion must be an object");
        for (auto it = t.begin(); it != t.end(); ++it) {
            PrimeElem p = PrimeElem::parse(ring, it.key());
            if (!it.value().is_array()) bad("torsion partitions must be arrays");
            std::vector<int> part;
            for (const json& e : it.value())
                part.push_back(static_cast<int>(small_int(e, "partition entry")));
            m.torsion[p] = std::move(part);
        }
    }
    m.validate();
    return m;
}

json matrix_to_json(const PresentationMatrix& a) {
    json entries = json::array();
    for (const RingElem& e : a.entries) entries.push_back(e.to_string());
    return {{"ring", a.ring.to_string()}, {"rows", a.rows}, {"cols", a.cols}, {"entries", entries}};
}

PresentationMatrix matrix_from_json(const json& j) {
    RingDescriptor ring = ring_from_json(need(j, "ring"));
    int rows = static_cast<int>(small_int(need(j, "rows"), "rows"));
    int cols = static_cast<int>(small_int(need(j, "cols"), "cols"));
    const json& entries = need(j, "entries");
    if (!entries.is_array() || entries.size() != static_cast<size_t>(rows) * cols)
        bad("entries must be an array of rows*cols strings");
    PresentationMatrix a = PresentationMatrix::zeros(ring, rows, cols);
    for (size_t i = 0; i < entries.size(); ++i) {
        if (!entries[i].is_string()) bad("matrix entries are ring-element strings");
        a.entries[i] = RingElem::parse(ring, entries[i].get<std::string>());
    }
    return a;
}

json chi_to_json(const ChiVector& c) {
    json comps = json::object();
    for (const auto& [p, v] : c.components) comps[p.to_string()] = v;
    return {{"chi0", c.chi0}, {"components", comps}};
}

json descriptor_to_json(const SubcatDescriptor& d) {
    json out;
    out["ring"] = d.ring.to_string();
    switch (d.kind) {
        case DescriptorKind::ZeroOnly:
            out["kind"] = "zero";
            break;
        case DescriptorKind::RankMod:
            out["kind"] = "rank_mod";
            out["k"] = d.k;
            break;
        case DescriptorKind::TorsionLattice: {
            out["kind"] = "torsion_lattice";
            json sup = json::array();
            for (const auto& p : d.support) sup.push_back(p.to_string());
            out["support"] = sup;
            json gens = json::array();
            for (const auto& g : d.gens) {
                json row = json::array();
                for (const auto& x : g) row.push_back(mpz_to_json(x));
                gens.push_back(row);
            }
            out["gens"] = gens;
            break;
        }
        case DescriptorKind::TorsionOnSupport:
            out["kind"] = "torsion_on_support";
            if (d.torsion_support.all) {
                out["support"] = "all";
            } else {
                json sup = json::array();
                for (const auto& p : d.torsion_support.primes) sup.push_back(p.to_string());
                out["support"] = sup;
            }
            break;
    }
    return out;
}

SubcatDescriptor descriptor_from_json(const json& j, const RingDescriptor* ring_hint) {
    RingDescriptor ring = RingDescriptor::integers();
    if (j.contains("ring"))
        ring = ring_from_json(j.at("ring"));
    else if (ring_hint)
        ring = *ring_hint;

    std::string kind = need_string(j, "kind");
    if (kind == "zero") return SubcatDescriptor::zero_only(ring);
    if (kind == "rank_mod")
        return SubcatDescriptor::rank_mod(ring, small_int(need(j, "k"), "k"));
    if (kind == "torsion_lattice") {
        const json& sup = need(j, "support");
        if (!sup.is_array()) bad("torsion_lattice support must be an array");
        std::vector<PrimeElem> support;
        for (const json& s : sup) {
            if (!s.is_string()) bad("support primes are strings");
            support.push_back(PrimeElem::parse(ring, s.get<std::string>()));
        }
        const json& gens = need(j, "gens");
        if (!gens.is_array()) bad("gens must be an array of integer vectors");
        std::vector<std::vector<mpz_class>> rows;
        for (const json& g : gens) {
            if (!g.is_array()) bad("gens must be an array of integer vectors");
            std::vector<mpz_class> row;
            for (const json& x : g) row.push_back(mpz_from_json(x));
            rows.push_back(std::move(row));
        }
        return SubcatDescriptor::torsion_lattice(ring, std::move(support), std::move(rows));
    }
    if (kind == "torsion_on_support") {
        const json& sup = need(j, "support");
        if (sup.is_string() && sup.get<std::string>() == "all")
            return SubcatDescriptor::torsion_on_support(ring, SupportSet::all_max_primes());
        if (!sup.is_array()) bad("torsion_on_support support must be \"all\" or an array");
        std::vector<PrimeElem> primes;
        for (const json& s : sup) {
            if (!s.is_string()) bad("support primes are strings");
            primes.push_back(PrimeElem::parse(ring, s.get<std::string>()));
        }
        return SubcatDescriptor::torsion_on_support(ring, SupportSet::finite(std::move(primes)));
    }
    bad("unknown descriptor kind: " + kind);
}

json hom_to_json(const ModuleHom& h) {
    json rows = json::array();
    long long nc = generator_count(h.codomain), nd = generator_count(h.domain);
    for (long long i = 0; i < nc; ++i) {
        json row = json::array();
        for (long long jx = 0; jx < nd; ++jx) row.push_back(h.at(i, jx).to_string());
        rows.push_back(row);
    }
    return {{"domain", module_to_json(h.domain)},
            {"codomain", module_to_json(h.codomain)},
            {"matrix", rows}};
}

ModuleHom hom_from_json(const json& j) {
    FgModule dom = module_from_json(need(j, "domain"));
    FgModule cod = module_from_json(need(j, "codomain"));
    ModuleHom h = ModuleHom::zero(dom, cod);
    const json& rows = need(j, "matrix");
    long long nc = generator_count(cod), nd = generator_count(dom);
    if (!rows.is_array() || rows.size() != static_cast<size_t>(nc))
        bad("hom matrix must have one row per codomain generator");
    for (long long i = 0; i < nc; ++i) {
        const json& row = rows[static_cast<size_t>(i)];
        if (!row.is_array() || row.size() != static_cast<size_t>(nd))
            bad("hom matrix must have one column per domain generator");
        for (long long jx = 0; jx < nd; ++jx) {
            const json& e = row[static_cast<size_t>(jx)];
            if (!e.is_string()) bad("hom entries are ring-element strings");
            h.at(i, jx) = RingElem::parse(dom.ring, e.get<std::string>());
        }
    }
    return h;
}

json seq_to_json(const ShortExactSeq& s) {
    return {{"left", module_to_json(s.left)},   {"mid", module_to_json(s.mid)},
            {"right", module_to_json(s.right)}, {"f", hom_to_json(s.f)},
            {"g", hom_to_json(s.g)}};
}

ShortExactSeq seq_from_json(const json& j) {
    ShortExactSeq s{module_from_json(need(j, "left")), module_from_json(need(j, "mid")),
                    module_from_json(need(j, "right")), hom_from_json(need(j, "f")),
                    hom_from_json(need(j, "g"))};
    s.validate();
    return s;
}

namespace {

std::string slot_name(Slot s) {
    switch (s) {
        case Slot::Left: return "Left";
        case Slot::Mid: return "Mid";
        case Slot::Right: return "Right";
    }
    return "Mid";
}

Slot slot_from(const std::string& s) {
    if (s == "Left") return Slot::Left;
    if (s == "Mid") return Slot::Mid;
    if (s == "Right") return Slot::Right;
    bad("derived slot must be Left, Mid or Right");
}

}  // namespace

json certificate_to_json(const Certificate& c) {
    json gens = json::array();
    for (const auto& g : c.generators) gens.push_back(module_to_json(g));
    json steps = json::array();
    for (const auto& st : c.steps)
        steps.push_back(json{{"seq", seq_to_json(st.seq)},
                             {"derived", slot_name(st.derived)},
                             {"note", st.note}});
    return {{"ring", c.ring.to_string()},
            {"generators", gens},
            {"steps", steps},
            {"target", module_to_json(c.target)}};
}

Certificate certificate_from_json(const json& j) {
    Certificate c;
    c.ring = RingDescriptor::parse(need_string(j, "ring"));
    const json& gens = need(j, "generators");
    if (!gens.is_array()) bad("generators must be an array");
    for (const json& g : gens) c.generators.push_back(module_from_json(g));
    const json& steps = need(j, "steps");
    if (!steps.is_array()) bad("steps must be an array");
    for (const json& st : steps) {
        CertStep step{seq_from_json(need(st, "seq")), slot_from(need_string(st, "derived")),
                      st.contains("note") ? need_string(st, "note") : ""};
        c.steps.push_back(std::move(step));
    }
    c.target = module_from_json(need(j, "target"));
    return c;
}

json report_to_json(const VerifyReport& r) {
    json out{{"ok", r.ok}};
    if (r.failing_step) out["failing_step"] = *r.failing_step;
    if (!r.reason.empty()) out["reason"] = r.reason;
    return out;
}

json member_result_to_json(const MemberResult& r) {
    json out{{"member", r.member}};
    if (r.witness) {
        json w = json::array();
        for (const auto& c : *r.witness) w.push_back(mpz_to_json(c));
        out["witness"] = w;
    }
    return out;
}

json closure_class_to_json(const SubcatDescriptor& d) {
    ClosureClass c = closure_class(d);
    json out{{"triangulated", c.triangulated},
             {"thick", c.thick},
             {"wide", c.wide},
             {"serre", c.serre}};
    if (c.thick) out["spec_subset"] = spec_subset_to_json(to_spec_subset(d));
    return out;
}

json spec_subset_to_json(const SpecSubset& s) {
    if (s.full) return json("full");
    if (s.subset.all) return json("all-max-primes");
    json out = json::array();
    for (const auto& p : s.subset.primes) out.push_back(p.to_string());
    return out;
}

SpecSubset spec_subset_from_json(const json& j, const RingDescriptor& ring) {
    if (j.is_string()) {
        if (j.get<std::string>() == "full") return SpecSubset::full_spec();
        if (j.get<std::string>() == "all-max-primes")
            return SpecSubset::of(SupportSet::all_max_primes());
        bad("spec subset must be \"full\", \"all-max-primes\" or a prime array");
    }
    if (!j.is_array()) bad("spec subset must be \"full\", \"all-max-primes\" or a prime array");
    std::vector<PrimeElem> primes;
    for (const json& s : j) {
        if (!s.is_string()) bad("spec subset primes are strings");
        primes.push_back(PrimeElem::parse(ring, s.get<std::string>()));
    }
    return SpecSubset::of(SupportSet::finite(std::move(primes)));
}

json modules_to_json(const std::vector<FgModule>& mods) {
    json out = json::array();
    for (const auto& m : mods) out.push_back(module_to_json(m));
    return out;
}

std::vector<FgModule> modules_from_json(const json& j) {
    if (!j.is_array()) bad("expected an array of modules");
    std::vector<FgModule> out;
    for (const json& m : j) out.push_back(module_from_json(m));
    return out;
}

}  // namespace subcat
