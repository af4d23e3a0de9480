#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "subcat/json_io.hpp"

namespace {

using subcat::json;

// values may be inline JSON, @path, or "-" for standard input
std::string read_value(const std::string& v) {
    if (v == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    if (!v.empty() && v.front() == '@') {
        std::ifstream in(v.substr(1));
        if (!in) throw subcat::Error(subcat::ErrorKind::Parse, "cannot read file " + v.substr(1));
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    return v;
}

json parse_json(const std::string& v) {
    try {
        return json::parse(read_value(v));
    } catch (const json::parse_error& e) {
        throw subcat::Error(subcat::ErrorKind::Parse, e.what());
    }
}

void emit(const json& j, bool pretty) {
    if (pretty)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << j.dump() << "\n";
}

const char* kind_name(subcat::ErrorKind k) {
    switch (k) {
        case subcat::ErrorKind::RingMismatch: return "ring_mismatch";
        case subcat::ErrorKind::Domain: return "domain_error";
        case subcat::ErrorKind::NotInSubcategory: return "not_in_subcategory";
        case subcat::ErrorKind::Parse: return "malformed_input";
    }
    return "error";
}

long long universe_cap() {
    if (const char* env = std::getenv("SUBCAT_MAX_UNIVERSE")) {
        try {
            return std::stoll(env);
        } catch (...) {
            throw subcat::Error(subcat::ErrorKind::Parse, "SUBCAT_MAX_UNIVERSE must be an integer");
        }
    }
    return 512;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Membership, generation and classification of triangulated subcategories "
                 "of finitely generated modules over a PID"};
    app.require_subcommand(1);
    bool pretty = false;
    app.add_flag("--pretty", pretty, "indent JSON output");

    std::string presentation, module_arg, modules_arg, descriptor_arg, target_arg, cert_arg;
    std::string support_arg, subset_arg, ring_arg = "Z", primes_arg;
    int max_length = 4;
    bool lenient = false;

    CLI::App* canon = app.add_subcommand("canon", "canonical module from a presentation matrix");
    canon->add_option("-p,--presentation", presentation, "presentation matrix JSON")->required();

    CLI::App* chi_cmd = app.add_subcommand("chi", "Euler data of a module");
    chi_cmd->add_option("-m,--module", module_arg, "module JSON")->required();
    chi_cmd->add_option("--support", support_arg, "restrict to this prime list (JSON array)");
    chi_cmd->add_flag("--lenient", lenient, "drop torsion outside the support instead of failing");

    CLI::App* gen = app.add_subcommand("generate", "subcategory generated by modules");
    gen->add_option("-m,--modules", modules_arg, "JSON array of modules")->required();
    gen->add_option("--ring", ring_arg, "ring for an empty module list (default Z)");

    CLI::App* mem = app.add_subcommand("member", "membership of a module in a subcategory");
    mem->add_option("-d,--descriptor", descriptor_arg, "subcategory descriptor JSON")->required();
    mem->add_option("-m,--module", module_arg, "module JSON")->required();

    CLI::App* cert = app.add_subcommand("certify", "derivation certificate for a member");
    cert->add_option("-g,--generators", modules_arg, "JSON array of generator modules")->required();
    cert->add_option("-t,--target", target_arg, "target module JSON")->required();

    CLI::App* ver = app.add_subcommand("verify", "replay and check a certificate");
    ver->add_option("-c,--certificate", cert_arg, "certificate JSON")->required();

    CLI::App* cls = app.add_subcommand("classify", "closure classes of a descriptor");
    cls->add_option("-d,--descriptor", descriptor_arg, "subcategory descriptor JSON")->required();

    CLI::App* spec = app.add_subcommand("spec-subset", "descriptor for a specialization-closed subset");
    spec->add_option("-s,--subset", subset_arg, "\"full\" or JSON array of primes")->required();
    spec->add_option("--ring", ring_arg, "coefficient ring (default Z)");

    CLI::App* orc = app.add_subcommand("oracle-closure", "brute-force closure on a bounded universe");
    orc->add_option("-g,--generators", modules_arg, "JSON array of generator modules")->required();
    orc->add_option("--primes", primes_arg, "JSON array of primes (default: union of generators)");
    orc->add_option("--max-length", max_length, "per-prime length bound (default 4)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*canon) {
            subcat::FgModule m = subcat::from_presentation(subcat::matrix_from_json(parse_json(presentation)));
            emit(subcat::module_to_json(m), pretty);
        } else if (*chi_cmd) {
            subcat::FgModule m = subcat::module_from_json(parse_json(module_arg));
            if (support_arg.empty()) {
                emit(subcat::chi_to_json(subcat::chi(m)), pretty);
            } else {
                json sup = parse_json(support_arg);
                if (!sup.is_array())
                    throw subcat::Error(subcat::ErrorKind::Parse, "--support takes a JSON array");
                std::vector<subcat::PrimeElem> primes;
                for (const json& s : sup)
                    primes.push_back(subcat::PrimeElem::parse(m.ring, s.get<std::string>()));
                emit(subcat::chi_to_json(subcat::chi(m, primes, !lenient)), pretty);
            }
        } else if (*gen) {
            std::vector<subcat::FgModule> mods = subcat::modules_from_json(parse_json(modules_arg));
            subcat::RingDescriptor ring = subcat::RingDescriptor::parse(ring_arg);
            emit(subcat::descriptor_to_json(subcat::generate(mods, &ring)), pretty);
        } else if (*mem) {
            subcat::FgModule m = subcat::module_from_json(parse_json(module_arg));
            subcat::SubcatDescriptor d =
                subcat::descriptor_from_json(parse_json(descriptor_arg), &m.ring);
            emit(subcat::member_result_to_json(subcat::member(d, m)), pretty);
        } else if (*cert) {
            std::vector<subcat::FgModule> gens = subcat::modules_from_json(parse_json(modules_arg));
            subcat::FgModule target = subcat::module_from_json(parse_json(target_arg));
            emit(subcat::certificate_to_json(subcat::member_certificate(gens, target)), pretty);
        } else if (*ver) {
            subcat::Certificate c = subcat::certificate_from_json(parse_json(cert_arg));
            emit(subcat::report_to_json(subcat::verify_certificate(c)), pretty);
        } else if (*cls) {
            subcat::SubcatDescriptor d = subcat::descriptor_from_json(parse_json(descriptor_arg));
            emit(subcat::closure_class_to_json(d), pretty);
        } else if (*spec) {
            subcat::RingDescriptor ring = subcat::RingDescriptor::parse(ring_arg);
            subcat::SpecSubset s = subcat::spec_subset_from_json(parse_json(subset_arg), ring);
            emit(subcat::descriptor_to_json(subcat::from_spec_subset(s, ring)), pretty);
        } else if (*orc) {
            std::vector<subcat::FgModule> gens = subcat::modules_from_json(parse_json(modules_arg));
            subcat::RingDescriptor zz = subcat::RingDescriptor::integers();
            std::vector<subcat::PrimeElem> primes;
            if (!primes_arg.empty()) {
                for (const json& s : parse_json(primes_arg))
                    primes.push_back(subcat::PrimeElem::parse(zz, s.get<std::string>()));
                std::sort(primes.begin(), primes.end());
                primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
            } else {
                for (const auto& g : gens)
                    for (const auto& [p, part] : g.torsion) primes.push_back(p);
                std::sort(primes.begin(), primes.end());
                primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
            }
            std::vector<int> bounds(primes.size(), max_length);
            subcat::Universe u = subcat::enumerate_universe(primes, bounds, universe_cap());
            std::vector<int> closure = subcat::brute_closure(gens, u);
            std::vector<subcat::FgModule> mods;
            for (int i : closure) mods.push_back(u.modules[static_cast<size_t>(i)]);
            emit(subcat::modules_to_json(mods), pretty);
        }
    } catch (const subcat::Error& e) {
        json err{{"error", kind_name(e.kind())}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return e.kind() == subcat::ErrorKind::Parse ? 2 : 1;
    } catch (const std::exception& e) {
        json err{{"error", "error"}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 1;
    }
    return 0;
}
