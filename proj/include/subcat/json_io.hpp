#pragma once

#include <json.hpp>

#include "subcat/certificate.hpp"
#include "subcat/descriptor.hpp"
#include "subcat/oracle.hpp"

namespace subcat {

using json = nlohmann::json;

// All parsers throw Error(ErrorKind::Parse) on structural problems; values
// are validated on construction. Descriptor JSON may omit "ring" (defaults
// to the context ring, or Z).

json module_to_json(const FgModule& m);
FgModule module_from_json(const json& j);

json matrix_to_json(const PresentationMatrix& a);
PresentationMatrix matrix_from_json(const json& j);

json chi_to_json(const ChiVector& c);

json descriptor_to_json(const SubcatDescriptor& d);
SubcatDescriptor descriptor_from_json(const json& j, const RingDescriptor* ring_hint = nullptr);

json hom_to_json(const ModuleHom& h);
ModuleHom hom_from_json(const json& j);

json seq_to_json(const ShortExactSeq& s);
ShortExactSeq seq_from_json(const json& j);

json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const json& j);

json report_to_json(const VerifyReport& r);

json member_result_to_json(const MemberResult& r);

json closure_class_to_json(const SubcatDescriptor& d);  // flags + spec subset when thick

json spec_subset_to_json(const SpecSubset& s);
SpecSubset spec_subset_from_json(const json& j, const RingDescriptor& ring);

json modules_to_json(const std::vector<FgModule>& mods);
std::vector<FgModule> modules_from_json(const json& j);

}  // namespace subcat
