#pragma once

#include <nlohmann/json.hpp>

#include "conecert/catalog.hpp"
#include "conecert/certify.hpp"
#include "conecert/checkers.hpp"
#include "conecert/cone.hpp"
#include "conecert/point.hpp"

namespace conecert {

// Vectors serialize as arrays, matrices as arrays of rows.
nlohmann::json to_json(const Point& p);
Point point_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ConeSpec& cone);
ConeSpec cone_from_json(const nlohmann::json& j);

nlohmann::json to_json(const CheckConfig& cfg);
nlohmann::json to_json(const Witness& w);
nlohmann::json to_json(const CheckReport& report);
nlohmann::json to_json(const Certificate& cert);

// {cone, atoms} with atoms as [[w, u], ...].
nlohmann::json to_json(const LaplaceCertificate& cert);
LaplaceCertificate laplace_from_json(const ConeSpec& cone, const nlohmann::json& atoms);

// {id, domain, labels, status, paper_ref} at default parameters.
nlohmann::json catalog_listing(const CatalogEntry& entry);

}  // namespace conecert
