#pragma once

// JSON forms of the library's values and reports.

#include <memory>

#include "json.hpp"

#include "thetacat/anodyne.hpp"
#include "thetacat/checkers.hpp"
#include "thetacat/groups.hpp"
#include "thetacat/h2.hpp"
#include "thetacat/presheaf.hpp"

namespace thetacat {

using Json = nlohmann::ordered_json;

Json to_json(const Shape& s);
Shape shape_from_json(const Json& j);

Json to_json(const WindowSpec& w);
WindowSpec window_from_json(const Json& j);

/// {"src":[..],"dst":[..],"components":[[values],..]}
Json to_json(const MorphismClass& f);
MorphismClass class_from_json(const Json& j);

Json to_json(const FaceDescriptor& fd);

/// {"base":[..],"window":{..},"generators":[classes]}, generators being the
/// maximal nondegenerate cells.
Json to_json(const SubOfRepresentable& u);
SubOfRepresentable sub_from_json(const Json& j);

/// {"base":[..],"start":"spine|gamma:[..]","end":"full|outer|gamma:[..]","steps":[..]}
Json to_json(const AnodyneCertificate& c);
AnodyneCertificate certificate_from_json(const Json& j, const WindowSpec& w);
Json to_json(const CertificateReport& r);
Json to_json(const ProbeStats& s);

Json to_json(const HornRecord& r);
Json to_json(const CheckReport& r);
Json to_json(const FibrationReport& r);

Json to_json(const Cocycle2& f);
Json to_json(const CohomologyCount& c);
Json to_json(const HomotopyReport& r);

/// {"name":..,"elements":[..],"table":[[..],..]}; name is optional.
Json to_json(const FiniteGroup& g);
FiniteGroup group_from_json(const Json& j);

/// {"name":..,"window":{..},"sizes":[{"shape":[..],"size":n},..],
///  "actions":[{"class":{..},"table":[..]},..]}
Json to_json(const TablePresheaf& x);
std::shared_ptr<TablePresheaf> table_presheaf_from_json(const Json& j);

} // namespace thetacat
