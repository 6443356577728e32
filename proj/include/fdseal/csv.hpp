#pragma once

#include <iosfwd>
#include <string>

#include "fdseal/relation.hpp"

namespace fdseal {

// RFC-style CSV: comma separated, double-quote quoting, UTF-8. Record ids
// are assigned in file order starting at 0, provenance `original`.
Relation load_csv(const std::string& path, bool has_header = true);
Relation load_csv_stream(std::istream& in, bool has_header, const std::string& name);

void write_csv(const Relation& rel, const std::string& path);
void write_csv_stream(const Relation& rel, std::ostream& out);

} // namespace fdseal
