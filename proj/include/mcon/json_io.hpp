#pragma once

#include <mcon/garnier.hpp>
#include <mcon/painleve.hpp>

#include <nlohmann/json_fwd.hpp>

namespace mcon {

using nlohmann::json;

json to_json(const scalar &s);
scalar scalar_from_json(const json &j, backend tag);

json to_json(const fuchsian_system &sys);
fuchsian_system fuchsian_from_json(const json &j, backend tag);

json to_json(const cubic_point &p);
cubic_point cubic_point_from_json(const json &j, backend tag);

json to_json(const log_connection &conn);
log_connection connection_from_json(const json &j, backend tag);

json to_json(const pq_point &pt);
pq_point pq_point_from_json(const json &j, backend tag);

json to_json(const garnier_point &pt);
garnier_point garnier_point_from_json(const json &j, backend tag);

json to_json(const gauge_record &rec);
gauge_record gauge_record_from_json(const json &j, backend tag);
json to_json(const std::vector<gauge_record> &log);
std::vector<gauge_record> move_log_from_json(const json &j, backend tag);

} // namespace mcon
