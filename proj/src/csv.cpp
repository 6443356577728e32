#include "fdseal/csv.hpp"

#include <fstream>
#include <sstream>

namespace fdseal {

namespace {

// Parses one CSV record, which may span physical lines when quoted fields
// contain newlines. Returns false on clean EOF.
bool read_record(std::istream& in, std::vector<std::string>& fields, size_t& line_no) {
    fields.clear();
    int c = in.peek();
    if (c == EOF) return false;

    std::string field;
    bool in_quotes = false;
    bool any = false;
    while (true) {
        c = in.get();
        if (c == EOF) {
            if (in_quotes) throw_input("unterminated quoted field at end of file");
            if (any || !field.empty()) fields.push_back(field);
            return any || !fields.empty();
        }
        any = true;
        if (in_quotes) {
            if (c == '"') {
                if (in.peek() == '"') {
                    in.get();
                    field.push_back('"');
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line_no;
                field.push_back(static_cast<char>(c));
            }
        } else if (c == '"') {
            in_quotes = true;
        } else if (c == ',') {
            fields.push_back(field);
            field.clear();
        } else if (c == '\r') {
            if (in.peek() == '\n') in.get();
            ++line_no;
            fields.push_back(field);
            return true;
        } else if (c == '\n') {
            ++line_no;
            fields.push_back(field);
            return true;
        } else {
            field.push_back(static_cast<char>(c));
        }
    }
}

bool needs_quoting(const std::string& s) {
    return s.find_first_of(",\"\r\n") != std::string::npos;
}

void write_field(std::ostream& out, const std::string& s) {
    if (!needs_quoting(s)) {
        out << s;
        return;
    }
    out << '"';
    for (char c : s) {
        if (c == '"') out << "\"\"";
        else out << c;
    }
    out << '"';
}

} // namespace

Relation load_csv_stream(std::istream& in, bool has_header, const std::string& name) {
    Relation rel;
    std::vector<std::string> fields;
    size_t line_no = 1;
    size_t row_no = 0;

    if (!read_record(in, fields, line_no))
        throw_input(name + ": empty file");

    if (has_header) {
        rel.attributes = fields;
    } else {
        rel.attributes.reserve(fields.size());
        for (size_t i = 0; i < fields.size(); ++i)
            rel.attributes.push_back("col" + std::to_string(i));
        Record r;
        r.id = row_no++;
        r.cells = fields;
        r.provenance = Provenance::original(r.id);
        rel.rows.push_back(std::move(r));
    }

    const size_t arity = rel.attributes.size();
    while (read_record(in, fields, line_no)) {
        if (fields.size() != arity) {
            std::ostringstream msg;
            msg << name << ": row " << (row_no + (has_header ? 2 : 1))
                << " has " << fields.size() << " cells, expected " << arity;
            throw_input(msg.str());
        }
        Record r;
        r.id = row_no++;
        r.cells = std::move(fields);
        r.provenance = Provenance::original(r.id);
        rel.rows.push_back(std::move(r));
        fields = {};
    }
    return rel;
}

Relation load_csv(const std::string& path, bool has_header) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw_input("cannot open file: " + path);
    return load_csv_stream(in, has_header, path);
}

void write_csv_stream(const Relation& rel, std::ostream& out) {
    for (size_t i = 0; i < rel.attributes.size(); ++i) {
        if (i) out << ',';
        write_field(out, rel.attributes[i]);
    }
    out << '\n';
    for (const auto& r : rel.rows) {
        for (size_t i = 0; i < r.cells.size(); ++i) {
            if (i) out << ',';
            write_field(out, r.cells[i]);
        }
        out << '\n';
    }
}

void write_csv(const Relation& rel, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw_input("cannot open file for writing: " + path);
    write_csv_stream(rel, out);
    out.flush();
    if (!out) throw_input("write failed: " + path);
}

} // namespace fdseal
