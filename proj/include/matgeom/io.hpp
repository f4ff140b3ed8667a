#pragma once

// File formats.
//
// Table file: first line "q m n", then q^(mn) lines; line i (0-based) holds
// the decimal matrix index of phi(decode(i)).
//
// Decomposition document: JSON object with keys, in order,
//   q, m, n, modulus (coefficients, lowest degree first), T, S, R
//   (row-major element-index arrays), sigma (Frobenius power), transposed.

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "matgeom/preserver.hpp"

namespace matgeom {

using Json = nlohmann::ordered_json;

void write_table(std::ostream& os, const MapTable& table);
/// Throws ParseError on malformed input or a non-permutation.
MapTable read_table(std::istream& is);

void write_table_file(const std::string& path, const MapTable& table);
MapTable read_table_file(const std::string& path);

Json to_json(const Matrix& a);
Json to_json(const StandardPreserver& f);
/// Throws ParseError on schema violations or an invalid preserver.
StandardPreserver preserver_from_json(const Json& doc);

}  // namespace matgeom
