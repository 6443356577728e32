#include "fdseal/report.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "fdseal/error.hpp"

namespace fdseal {

size_t binomial(size_t n, size_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    size_t result = 1;
    for (size_t i = 1; i <= k; ++i) {
        // result *= (n - k + i) / i, with overflow saturation
        size_t num = n - k + i;
        if (result > SIZE_MAX / num) return SIZE_MAX;
        result = result * num / i;
    }
    return result;
}

static size_t sat_mul(size_t a, size_t b) {
    if (a == 0 || b == 0) return 0;
    if (a > SIZE_MAX / b) return SIZE_MAX;
    return a * b;
}

size_t RunReport::fp_upper_bound() const {
    const size_t k = static_cast<size_t>(std::ceil(1.0 / alpha - 1e-12));
    size_t bound_m = sat_mul(sat_mul(2 * k, m), binomial(m - 1, (m - 1) / 2));
    size_t bound_mas = 0;
    for (size_t s : mas_sizes) {
        size_t term = sat_mul(sat_mul(2 * k, s), binomial(s - 1, (s - 1) / 2));
        bound_mas = (bound_mas > SIZE_MAX - term) ? SIZE_MAX : bound_mas + term;
    }
    return std::min(bound_m, bound_mas);
}

void RunReport::check_bounds() const {
    if (conflict_added_rows > h * n)
        throw_verification("conflict additions exceed the h*n bound");
    if (fp_added_rows > 0) {
        const size_t k = static_cast<size_t>(std::ceil(1.0 / alpha - 1e-12));
        if (fp_added_rows < 2 * k)
            throw_verification("false-positive additions below the 2k lower bound");
        if (fp_added_rows > fp_upper_bound())
            throw_verification("false-positive additions exceed the lattice bound");
    }
}

std::string RunReport::to_json() const {
    nlohmann::json j;
    j["n"] = n;
    j["m"] = m;
    j["q"] = q;
    j["h"] = h;
    j["ec_counts"] = ec_counts;
    j["mas_sizes"] = mas_sizes;
    j["added"]["grouping_fakes"] = grouping_fake_rows;
    j["added"]["scaling_pad"] = scaling_pad_rows;
    j["added"]["conflict"] = conflict_added_rows;
    j["added"]["fp"] = fp_added_rows;
    j["conflict"]["type1"] = conflict_type1;
    j["conflict"]["type2"] = conflict_type2;
    j["fp_nodes"] = fp_nodes;
    j["output_rows"] = output_rows;
    j["overhead"]["grouping"] = overhead_grouping;
    j["overhead"]["scaling"] = overhead_scaling;
    j["overhead"]["conflict"] = overhead_conflict;
    j["overhead"]["fp"] = overhead_fp;
    j["overhead"]["total"] = overhead_total;
    j["seconds"]["mas"] = seconds_mas;
    j["seconds"]["split_scale"] = seconds_split_scale;
    j["seconds"]["conflict"] = seconds_conflict;
    j["seconds"]["fp"] = seconds_fp;
    j["seconds"]["encrypt"] = seconds_encrypt;
    j["seconds"]["total"] = seconds_total;
    j["config"]["alpha"] = alpha;
    j["config"]["split_factor"] = split_factor;
    j["config"]["lambda"] = lambda_bits;
    j["config"]["seed"] = seed;
    return j.dump(2);
}

RunReport RunReport::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw_input(std::string("report parse error: ") + e.what());
    }
    RunReport r;
    try {
        r.n = j.at("n");
        r.m = j.at("m");
        r.q = j.at("q");
        r.h = j.at("h");
        r.ec_counts = j.at("ec_counts").get<std::vector<size_t>>();
        r.mas_sizes = j.at("mas_sizes").get<std::vector<size_t>>();
        r.grouping_fake_rows = j.at("added").at("grouping_fakes");
        r.scaling_pad_rows = j.at("added").at("scaling_pad");
        r.conflict_added_rows = j.at("added").at("conflict");
        r.fp_added_rows = j.at("added").at("fp");
        r.conflict_type1 = j.at("conflict").at("type1");
        r.conflict_type2 = j.at("conflict").at("type2");
        r.fp_nodes = j.at("fp_nodes");
        r.output_rows = j.at("output_rows");
        r.overhead_grouping = j.at("overhead").at("grouping");
        r.overhead_scaling = j.at("overhead").at("scaling");
        r.overhead_conflict = j.at("overhead").at("conflict");
        r.overhead_fp = j.at("overhead").at("fp");
        r.overhead_total = j.at("overhead").at("total");
        r.seconds_mas = j.at("seconds").at("mas");
        r.seconds_split_scale = j.at("seconds").at("split_scale");
        r.seconds_conflict = j.at("seconds").at("conflict");
        r.seconds_fp = j.at("seconds").at("fp");
        r.seconds_encrypt = j.at("seconds").at("encrypt");
        r.seconds_total = j.at("seconds").at("total");
        r.alpha = j.at("config").at("alpha");
        r.split_factor = j.at("config").at("split_factor");
        r.lambda_bits = j.at("config").at("lambda");
        r.seed = j.at("config").at("seed");
    } catch (const nlohmann::json::exception& e) {
        throw_input(std::string("report missing field: ") + e.what());
    }
    return r;
}

std::string RunReport::to_text() const {
    std::ostringstream out;
    out << "dataset: n=" << n << " m=" << m << "\n";
    out << "maximal attribute sets: q=" << q << " overlapping pairs h=" << h << "\n";
    out << "equivalence classes per set:";
    for (size_t t : ec_counts) out << ' ' << t;
    out << "\n";
    out << "rows added: grouping=" << grouping_fake_rows << " scaling=" << scaling_pad_rows
        << " conflict=" << conflict_added_rows << " fp=" << fp_added_rows << "\n";
    out << "conflicts: type1=" << conflict_type1 << " type2=" << conflict_type2
        << " fp nodes=" << fp_nodes << "\n";
    out << "output rows: " << output_rows << "\n";
    auto pct = [](double v) { return std::round(v * 10000.0) / 100.0; };
    out << "space overhead %: grouping=" << pct(overhead_grouping)
        << " scaling=" << pct(overhead_scaling) << " conflict=" << pct(overhead_conflict)
        << " fp=" << pct(overhead_fp) << " total=" << pct(overhead_total) << "\n";
    out << "seconds: mas=" << seconds_mas << " split_scale=" << seconds_split_scale
        << " conflict=" << seconds_conflict << " fp=" << seconds_fp
        << " encrypt=" << seconds_encrypt << " total=" << seconds_total << "\n";
    out << "config: alpha=" << alpha << " split_factor=" << split_factor
        << " lambda=" << lambda_bits << " seed=" << seed << "\n";
    return out.str();
}

} // namespace fdseal
