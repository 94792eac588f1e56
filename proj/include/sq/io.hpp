#pragma once

#include <string>

#include "sq/field.hpp"

namespace sq {

// Field serialisation.  CSV: first line "dim,n", then one site value per
// line printed with 17 significant digits so a write/read cycle is
// bit-exact.  Binary: little-endian header (magic, dim, n) then raw doubles.
void write_field_csv(const Field& f, const std::string& path);
Field read_field_csv(const std::string& path);

void write_field_binary(const Field& f, const std::string& path);
Field read_field_binary(const std::string& path);

std::string format_double(double v);  // shortest 17-significant-digit form

}  // namespace sq
