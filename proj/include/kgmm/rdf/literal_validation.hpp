#pragma once

#include <optional>
#include <string_view>

#include "kgmm/rdf/term.hpp"

namespace kgmm::rdf {

enum class LiteralVerdict { WellFormed, IllFormed, Unknown };

// Checks the lexical form against the datatype's lexical space. Datatypes
// without a grammar here yield Unknown.
LiteralVerdict validate_literal(const Literal& literal);

// Unknown counts as well-formed.
inline bool is_well_formed(LiteralVerdict v) { return v != LiteralVerdict::IllFormed; }

namespace xsd {

bool is_integer(std::string_view s);
bool is_decimal(std::string_view s);
bool is_double(std::string_view s);
bool is_boolean(std::string_view s);
bool is_date(std::string_view s);
bool is_date_time(std::string_view s);
bool is_g_year(std::string_view s);
bool is_any_uri(std::string_view s);

// Seconds since the Unix epoch for an xsd:date or xsd:dateTime lexical form.
// Missing timezones are read as UTC. Returns nullopt for anything else.
std::optional<double> to_epoch_seconds(std::string_view s);

}  // namespace xsd

}  // namespace kgmm::rdf
