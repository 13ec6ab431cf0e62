#pragma once

#include "windtree/cylinders.hpp"
#include "windtree/dynamics.hpp"
#include "windtree/identities.hpp"
#include "windtree/sv_constants.hpp"

#include "json.hpp"

#include <ostream>
#include <string>

namespace windtree {

using json = nlohmann::json;

json to_json(const BigRat& r);
BigRat rat_from_json(const json& j);

json to_json(const PiRational& x);
PiRational pirational_from_json(const json& j);

json to_json(const IdentityReport& r);
IdentityReport identity_report_from_json(const json& j);

json to_json(const ConstantsBundle& b);
ConstantsBundle constants_bundle_from_json(const json& j);

json to_json(const CylinderRecord& r);
CylinderRecord cylinder_record_from_json(const json& j);

json to_json(const CountReport& r);
CountReport count_report_from_json(const json& j);

json to_json(const DiffusionReport& r);
DiffusionReport diffusion_report_from_json(const json& j);

json to_json(const RecurrenceReport& r);
RecurrenceReport recurrence_report_from_json(const json& j);

json to_json(const ConsistencyReport& r);
ConsistencyReport consistency_report_from_json(const json& j);

void write_records_csv(std::ostream& out, const std::vector<CylinderRecord>& records);
void write_count_csv(std::ostream& out, const CountReport& r);
void write_diffusion_csv(std::ostream& out, const DiffusionReport& r);

/// Fixed-format float rendering used by every text/CSV output.
std::string fmt_double(double v, int digits = 12);

}  // namespace windtree
