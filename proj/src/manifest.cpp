#include "fdseal/manifest.hpp"

#include <fstream>
#include <sstream>

namespace fdseal {

namespace {

const char* kind_name(Provenance::Kind k) {
    switch (k) {
        case Provenance::Kind::original: return "orig";
        case Provenance::Kind::scale_copy: return "scale";
        case Provenance::Kind::conflict_split: return "conflict";
        case Provenance::Kind::fake_ec: return "fake";
        case Provenance::Kind::fp_artificial: return "fp";
    }
    return "?";
}

Provenance::Kind kind_from(const std::string& s) {
    if (s == "orig") return Provenance::Kind::original;
    if (s == "scale") return Provenance::Kind::scale_copy;
    if (s == "conflict") return Provenance::Kind::conflict_split;
    if (s == "fake") return Provenance::Kind::fake_ec;
    if (s == "fp") return Provenance::Kind::fp_artificial;
    throw_input("manifest: unknown provenance kind '" + s + "'");
}

} // namespace

void Manifest::validate(size_t encrypted_rows) const {
    if (output_rows != encrypted_rows)
        throw_input("manifest does not match ciphertext: row count differs");
    if (row_provenance.size() != output_rows)
        throw_input("manifest truncated: provenance entries missing");
    if (base_row.size() != original_rows)
        throw_input("manifest truncated: record base rows missing");
    for (size_t r : base_row)
        if (r >= output_rows) throw_input("manifest base row out of range");
    for (const auto& o : overrides)
        if (o.row >= output_rows || o.record >= original_rows ||
            o.attr >= attributes.size())
            throw_input("manifest override out of range");
}

void write_manifest(const Manifest& m, const std::string& path) {
    for (const auto& a : m.attributes)
        if (a.find('\n') != std::string::npos || a.find('\r') != std::string::npos)
            throw_input("attribute names with line breaks cannot be recorded in a manifest");

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw_input("cannot open manifest for writing: " + path);

    out << "fdseal-manifest v1\n";
    out << "attrs " << m.attributes.size();
    for (const auto& a : m.attributes) out << ' ' << a.size() << ':' << a;
    out << '\n';
    out << "orig " << m.original_rows << '\n';
    out << "rows " << m.output_rows << '\n';
    out << "alpha " << m.alpha << '\n';
    out << "split " << m.split_factor << '\n';
    out << "lambda " << m.lambda_bits << '\n';
    out << "seed " << m.seed << '\n';
    out << "keyfp " << m.key_fp << '\n';
    for (size_t i = 0; i < m.row_provenance.size(); ++i) {
        const auto& p = m.row_provenance[i];
        out << "prov " << i << ' ' << kind_name(p.kind) << ' ' << p.of << ' ' << p.side
            << ' ' << p.pair_index << '\n';
    }
    for (size_t r = 0; r < m.base_row.size(); ++r)
        out << "base " << r << ' ' << m.base_row[r] << '\n';
    for (const auto& o : m.overrides)
        out << "cell " << o.record << ' ' << o.attr << ' ' << o.row << '\n';
    out << "end\n";
    out.flush();
    if (!out) throw_input("manifest write failed: " + path);
}

Manifest read_manifest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw_input("cannot open manifest: " + path);

    std::string header;
    std::getline(in, header);
    if (header != "fdseal-manifest v1")
        throw_input("not a manifest file (bad header): " + path);

    Manifest m;
    bool complete = false;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "end") {
            complete = true;
            break;
        }
        if (tag == "attrs") {
            size_t count = 0;
            ls >> count;
            ls.get(); // space
            for (size_t i = 0; i < count; ++i) {
                size_t len = 0;
                char sep = 0;
                ls >> len;
                ls.get(sep);
                if (sep != ':') throw_input("manifest: malformed attrs line");
                std::string name(len, '\0');
                ls.read(name.data(), static_cast<std::streamsize>(len));
                m.attributes.push_back(std::move(name));
                if (i + 1 < count) ls.get(); // separating space
            }
        } else if (tag == "orig") {
            ls >> m.original_rows;
        } else if (tag == "rows") {
            ls >> m.output_rows;
        } else if (tag == "alpha") {
            ls >> m.alpha;
        } else if (tag == "split") {
            ls >> m.split_factor;
        } else if (tag == "lambda") {
            ls >> m.lambda_bits;
        } else if (tag == "seed") {
            ls >> m.seed;
        } else if (tag == "keyfp") {
            ls >> m.key_fp;
        } else if (tag == "prov") {
            size_t row = 0;
            std::string kind;
            Provenance p;
            ls >> row >> kind >> p.of >> p.side >> p.pair_index;
            p.kind = kind_from(kind);
            if (row != m.row_provenance.size())
                throw_input("manifest: provenance rows out of order");
            m.row_provenance.push_back(p);
        } else if (tag == "base") {
            size_t rec = 0, row = 0;
            ls >> rec >> row;
            if (rec != m.base_row.size())
                throw_input("manifest: base rows out of order");
            m.base_row.push_back(row);
        } else if (tag == "cell") {
            Manifest::CellOverride o;
            ls >> o.record >> o.attr >> o.row;
            m.overrides.push_back(o);
        } else {
            throw_input("manifest: unknown line tag '" + tag + "'");
        }
        if (ls.fail()) throw_input("manifest: malformed line: " + line);
    }

    if (!complete) throw_input("manifest truncated: missing end marker");
    if (m.row_provenance.size() != m.output_rows || m.base_row.size() != m.original_rows)
        throw_input("manifest truncated: expected more entries");
    return m;
}

} // namespace fdseal
