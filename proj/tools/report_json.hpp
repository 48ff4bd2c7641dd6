#pragma once

#include "json.hpp"
#include "levy/asymptotics.hpp"
#include "levy/diagnostics.hpp"
#include "levy/inversion.hpp"
#include "levy/ratio_limit.hpp"
#include "levy/rearrangement.hpp"

namespace levy::report {

nlohmann::json to_json(const LimitReport& r);
nlohmann::json to_json(const Classification& c);
nlohmann::json to_json(const DensityField& f);
nlohmann::json to_json(const RearrangementTable& t);
nlohmann::json to_json(const AsymptoticReport& a);
nlohmann::json to_json(const RatioReport& r);

}  // namespace levy::report
