#pragma once

#include <string>

#include <json.hpp>

#include "gshv/star.hpp"
#include "gshv/valuation.hpp"

namespace gshv {

/// A parsed instance: the ambient context plus one sheaf on it.
struct Instance {
  StarContext ctx;
  GSheaf sheaf;
};

/// Rewrites the sugar blocks ("chain", "dvr") into the generic group / site /
/// inertia / sheaf form; acts as the identity on already-generic documents.
nlohmann::json lower(const nlohmann::json& doc);

Instance parse_instance(const nlohmann::json& doc);
Instance parse_instance_file(const std::string& path);
nlohmann::json parse_json_text(const std::string& text);

/// Canonical emission: object keys sorted, sets sorted, element arrays in
/// stalk index order. emit followed by parse is the identity on canonical
/// documents.
nlohmann::json emit_instance(const Instance& inst);

/// FNV-1a 64-bit hash of the canonical serialization, as 16 hex digits.
std::string digest(const nlohmann::json& doc);

nlohmann::json report_json(const Instance& inst,
                           const ClassificationReport& report);
nlohmann::json espace_json(const Instance& inst, const EtaleSpace& x);

}  // namespace gshv
