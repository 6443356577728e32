#include "fdseal/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <unordered_map>

namespace fdseal {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// position of attribute a within a sorted attribute set
size_t pos_in(const AttrSet& attrs, AttrIndex a) {
    auto it = std::lower_bound(attrs.begin(), attrs.end(), a);
    if (it == attrs.end() || *it != a) throw_internal("attribute not in set");
    return static_cast<size_t>(it - attrs.begin());
}

struct PieceCiphers {
    // [ecg][piece][attr position] -> serialized cell
    std::vector<std::vector<std::vector<std::string>>> cells;
};

PieceCiphers encrypt_pieces(const StagedMas& sm, const Mas& mas, const Relation& original,
                            const Key& key) {
    PieceCiphers out;
    out.cells.resize(sm.ecgs.size());
    for (size_t ei = 0; ei < sm.ecgs.size(); ++ei) {
        const auto& se = sm.ecgs[ei];
        out.cells[ei].resize(se.pieces.size());
        for (size_t pi = 0; pi < se.pieces.size(); ++pi) {
            const auto& piece = se.pieces[pi];
            const auto& member = se.ecg.members[piece.member_index];
            auto& row = out.cells[ei][pi];
            row.resize(sm.attrs.size());
            for (size_t t = 0; t < sm.attrs.size(); ++t) {
                const std::string& token =
                    member.fake ? member.fake_tokens[t]
                                : mas.partition.classes[member.class_index].representative[t];
                CipherTag tag{original.attributes[sm.attrs[t]], token, piece.copy_index,
                              piece.scope};
                row[t] = encrypt_cell_token(token, key, tag);
            }
        }
    }
    return out;
}

} // namespace

EncryptResult encrypt_dataset(const Relation& original, const Key& key,
                              const SecurityConfig& config) {
    config.validate();
    original.check_invariants();
    const size_t n = original.size();
    const size_t m = original.arity();
    if (n == 0) throw_input("encrypt: empty relation");

    EncryptResult result;
    RunReport& report = result.report;
    report.n = n;
    report.m = m;
    report.alpha = config.alpha;
    report.split_factor = config.split_factor;
    report.lambda_bits = config.lambda_bits;
    report.seed = config.seed;

    Rng master(config.seed);
    const auto t_total = Clock::now();

    // step 1: maximal attribute sets
    auto t0 = Clock::now();
    MasReport mas_report = find_mas(original);
    report.seconds_mas = seconds_since(t0);
    report.q = mas_report.q;
    report.h = mas_report.overlap_pairs;
    for (const auto& mas : mas_report.mas_list) {
        report.ec_counts.push_back(mas.partition.class_count());
        report.mas_sizes.push_back(mas.attrs.size());
    }

    // step 2: grouping and split/scale planning per MAS
    t0 = Clock::now();
    TokenGen tokens(master.derive("tokens"), TokenGen::domain_of(original));
    std::vector<StagedMas> staged;
    staged.reserve(mas_report.q);
    for (size_t i = 0; i < mas_report.mas_list.size(); ++i) {
        staged.push_back(plan_split_scale(mas_report.mas_list[i], i, config, n, tokens));
        report.grouping_fake_rows += staged.back().fake_rows_total;
        report.scaling_pad_rows += staged.back().pad_rows_total;
    }
    report.seconds_split_scale = seconds_since(t0);

    // step 3: conflict resolution
    t0 = Clock::now();
    Rng conflict_rng = master.derive("conflict-order");
    ConflictResolution resolution = resolve_all(staged, mas_report, n, conflict_rng);
    report.seconds_conflict = seconds_since(t0);
    report.conflict_added_rows = resolution.report.records_added;
    report.conflict_type1 = resolution.report.type1_count;
    report.conflict_type2 = resolution.report.type2_count;

    // step 4: false-positive elimination plan
    t0 = Clock::now();
    FpPlan fp_plan = plan_fp_elimination(original, mas_report, config, tokens);
    report.seconds_fp = seconds_since(t0);
    report.fp_added_rows = fp_plan.rows_added();
    report.fp_nodes = fp_plan.inserted_nodes.size();

    // materialization
    t0 = Clock::now();
    std::vector<PieceCiphers> piece_ciphers;
    piece_ciphers.reserve(staged.size());
    for (size_t i = 0; i < staged.size(); ++i)
        piece_ciphers.push_back(encrypt_pieces(staged[i], mas_report.mas_list[i], original, key));

    std::vector<Record> out_rows;
    std::vector<Provenance> provenance;
    auto emit = [&](std::vector<std::string> cells, Provenance p) -> size_t {
        Record r;
        r.id = out_rows.size();
        r.cells = std::move(cells);
        r.provenance = p;
        out_rows.push_back(std::move(r));
        provenance.push_back(p);
        return out_rows.size() - 1;
    };

    // records: one output row per virtual row; the carrier layout decides
    // which claim's ciphertext each cell shows
    std::vector<size_t> detached_count(n, 0);
    for (const auto& vr : resolution.rows)
        if (!vr.is_base) detached_count[vr.base_row]++;

    std::vector<size_t> vrow_out(resolution.rows.size());
    for (size_t vi = 0; vi < resolution.rows.size(); ++vi) {
        const auto& vr = resolution.rows[vi];
        const size_t row = vr.base_row;
        std::vector<std::string> cells(m);
        for (AttrIndex a = 0; a < m; ++a) {
            const StagedMas* chosen = nullptr;
            bool chosen_plural = false;
            for (size_t mi : vr.claims) {
                const auto& sm = staged[mi];
                if (!std::binary_search(sm.attrs.begin(), sm.attrs.end(), a)) continue;
                const bool plural = sm.real_size_of_row[row] >= 2;
                if (plural && chosen_plural)
                    throw_internal("two plural claims share one attribute after resolution");
                if (!chosen || (plural && !chosen_plural)) {
                    chosen = &sm;
                    chosen_plural = plural;
                }
            }
            if (chosen) {
                const size_t flat = chosen->piece_of_row[row];
                auto [ei, pi] = chosen->flat_pieces[flat];
                cells[a] = piece_ciphers[chosen->mas_index].cells[ei][pi][pos_in(chosen->attrs, a)];
            } else if (vr.is_base) {
                // untouched by any claimed set: encrypt the true value with a
                // per-cell scope
                const std::string& token = original.rows[row].cells[a];
                cells[a] = encrypt_cell_token(
                    token, key,
                    CipherTag{original.attributes[a], token, 1, "cell." + std::to_string(row)});
            } else {
                // replacement row: attributes outside its side get values that
                // exist nowhere else
                const std::string token = tokens.fresh();
                cells[a] = encrypt_cell_token(
                    token, key,
                    CipherTag{original.attributes[a], token, 1, "fresh." + std::to_string(vi)});
            }
        }
        Provenance p = vr.is_base ? (detached_count[row] > 0
                                         ? Provenance::conflict_split(row, 1)
                                         : Provenance::original(row))
                                  : Provenance::conflict_split(row, 2);
        vrow_out[vi] = emit(std::move(cells), p);
    }

    auto carrier_out = [&](size_t row, size_t mas_index) {
        return vrow_out[resolution.carrier[row][mas_index]];
    };

    // scale copies and fake-class rows, with fresh values outside the
    // owning attribute set so no other set's frequencies move
    ScopeLog& scopes = result.scopes;
    size_t fresh_row_counter = 0;
    auto fresh_cells_except = [&](const AttrSet& keep, const std::vector<std::string>* source,
                                  const std::vector<std::string>* tuple,
                                  const AttrSet& tuple_attrs) {
        std::vector<std::string> cells(m);
        const std::string scope = "pad." + std::to_string(fresh_row_counter++);
        for (AttrIndex a = 0; a < m; ++a) {
            if (std::binary_search(keep.begin(), keep.end(), a)) {
                cells[a] = source ? (*source)[a] : (*tuple)[pos_in(tuple_attrs, a)];
            } else {
                const std::string token = tokens.fresh();
                cells[a] = encrypt_cell_token(
                    token, key, CipherTag{original.attributes[a], token, 1, scope});
            }
        }
        return cells;
    };

    for (size_t mi = 0; mi < staged.size(); ++mi) {
        const auto& sm = staged[mi];
        for (size_t ei = 0; ei < sm.ecgs.size(); ++ei) {
            const auto& se = sm.ecgs[ei];
            ScopeLog::EcgScope scope;
            scope.mas_index = mi;
            scope.attrs = sm.attrs;
            scope.id = se.ecg.id;
            scope.k = se.ecg.members.size();
            scope.target = se.split.target;

            for (size_t pi = 0; pi < se.pieces.size(); ++pi) {
                const auto& piece = se.pieces[pi];
                std::vector<size_t> rows_of_piece;
                if (!piece.rows.empty()) {
                    for (size_t r : piece.rows) rows_of_piece.push_back(carrier_out(r, mi));
                    // emit() grows out_rows, so take the source row by value
                    const std::vector<std::string> src =
                        out_rows[carrier_out(piece.rows.front(), mi)].cells;
                    for (size_t c = 0; c < piece.pad; ++c)
                        rows_of_piece.push_back(
                            emit(fresh_cells_except(sm.attrs, &src, nullptr, {}),
                                 Provenance::scale_copy(piece.rows.front())));
                } else {
                    const auto& tuple = piece_ciphers[mi].cells[ei][pi];
                    for (size_t c = 0; c < piece.fake_rows + piece.pad; ++c)
                        rows_of_piece.push_back(
                            emit(fresh_cells_except(sm.attrs, nullptr, &tuple, sm.attrs),
                                 Provenance::fake_ec()));
                }
                scope.piece_rows.push_back(std::move(rows_of_piece));
            }
            scopes.ecgs.push_back(std::move(scope));
        }
    }

    // artificial violation pairs
    {
        std::map<size_t, ScopeLog::FpScope> batches;
        uint32_t pair_counter = 0;
        for (const auto& pair : fp_plan.pairs) {
            const std::string scope_id =
                "fp." + std::to_string(pair.node) + "." + std::to_string(pair.pair_index);
            auto encrypt_row = [&](const std::vector<std::string>& tokens_row, uint32_t side) {
                std::vector<std::string> cells(m);
                for (AttrIndex a = 0; a < m; ++a)
                    cells[a] = encrypt_cell_token(
                        tokens_row[a], key,
                        CipherTag{original.attributes[a], tokens_row[a], 1, scope_id});
                return emit(std::move(cells), Provenance::fp_artificial(pair_counter, side));
            };
            auto& batch = batches[pair.node];
            batch.lhs = pair.lhs;
            batch.rhs = pair.rhs;
            batch.k = config.min_group_size();
            batch.rows.push_back(encrypt_row(pair.row1, 1));
            batch.rows.push_back(encrypt_row(pair.row2, 2));
            pair_counter++;
        }
        for (auto& [_, batch] : batches) scopes.fp_batches.push_back(std::move(batch));
    }

    // outsourced row order carries no provenance signal
    const size_t total = out_rows.size();
    std::vector<size_t> position(total);
    for (size_t i = 0; i < total; ++i) position[i] = i;
    Rng shuffle_rng = master.derive("shuffle");
    shuffle_rng.shuffle(position); // position[new] = old

    std::vector<size_t> new_of_old(total);
    for (size_t i = 0; i < total; ++i) new_of_old[position[i]] = i;

    result.encrypted.attributes = original.attributes;
    result.encrypted.cell_kind = Relation::CellKind::cipher;
    result.encrypted.rows.resize(total);
    for (size_t i = 0; i < total; ++i) {
        Record r = std::move(out_rows[position[i]]);
        r.id = i;
        result.encrypted.rows[i] = std::move(r);
    }

    // manifest
    Manifest& manifest = result.manifest;
    manifest.attributes = original.attributes;
    manifest.original_rows = n;
    manifest.output_rows = total;
    manifest.alpha = config.alpha;
    manifest.split_factor = config.split_factor;
    manifest.lambda_bits = config.lambda_bits;
    manifest.seed = config.seed;
    manifest.key_fp = key_fingerprint(key);
    manifest.row_provenance.resize(total);
    for (size_t i = 0; i < total; ++i) manifest.row_provenance[i] = provenance[position[i]];

    manifest.base_row.resize(n);
    for (size_t vi = 0; vi < resolution.rows.size(); ++vi)
        if (resolution.rows[vi].is_base)
            manifest.base_row[resolution.rows[vi].base_row] = new_of_old[vrow_out[vi]];

    // cells whose claim moved to a replacement row decrypt from there
    for (size_t row = 0; row < n; ++row) {
        if (detached_count[row] == 0) continue;
        for (AttrIndex a = 0; a < m; ++a) {
            // find the claim that owns this attribute: base row if still
            // claimed there, otherwise the detached row of any owning set
            bool on_base = false;
            size_t owner = SIZE_MAX;
            for (size_t mi = 0; mi < staged.size(); ++mi) {
                if (!std::binary_search(staged[mi].attrs.begin(), staged[mi].attrs.end(), a))
                    continue;
                const size_t carrier_vrow = resolution.carrier[row][mi];
                if (resolution.rows[carrier_vrow].is_base) {
                    on_base = true;
                    break;
                }
                owner = vrow_out[carrier_vrow];
            }
            if (!on_base && owner != SIZE_MAX)
                manifest.overrides.push_back(
                    {row, a, new_of_old[owner]});
        }
    }

    // remap scope logs to final positions
    for (auto& scope : scopes.ecgs)
        for (auto& rows : scope.piece_rows)
            for (auto& r : rows) r = new_of_old[r];
    for (auto& batch : scopes.fp_batches)
        for (auto& r : batch.rows) r = new_of_old[r];

    report.seconds_encrypt = seconds_since(t0);
    report.seconds_total = seconds_since(t_total);
    report.output_rows = total;

    const double s0 = static_cast<double>(n);
    const double s1 = s0 + static_cast<double>(report.grouping_fake_rows);
    const double s2 = s1 + static_cast<double>(report.scaling_pad_rows);
    const double s3 = s2 + static_cast<double>(report.conflict_added_rows);
    const double s4 = s3 + static_cast<double>(report.fp_added_rows);
    report.overhead_grouping = (s1 - s0) / s0;
    report.overhead_scaling = (s2 - s1) / s1;
    report.overhead_conflict = (s3 - s2) / s2;
    report.overhead_fp = (s4 - s3) / s3;
    report.overhead_total = (s4 - s0) / s0;

    report.check_bounds();
    return result;
}

Relation decrypt_dataset(const Relation& encrypted, const Manifest& manifest, const Key& key) {
    manifest.validate(encrypted.size());
    if (encrypted.attributes != manifest.attributes)
        throw_input("manifest does not match ciphertext: schema differs");
    if (key_fingerprint(key) != manifest.key_fp)
        throw_crypto("key does not match the manifest fingerprint");

    std::unordered_map<uint64_t, size_t> override_of;
    override_of.reserve(manifest.overrides.size());
    for (const auto& o : manifest.overrides)
        override_of[static_cast<uint64_t>(o.record) << 16 | o.attr] = o.row;

    Relation out;
    out.attributes = manifest.attributes;
    out.cell_kind = Relation::CellKind::plain;
    out.rows.resize(manifest.original_rows);
    const size_t m = out.attributes.size();

    for (size_t rec = 0; rec < manifest.original_rows; ++rec) {
        Record r;
        r.id = rec;
        r.provenance = Provenance::original(rec);
        r.cells.resize(m);
        for (AttrIndex a = 0; a < m; ++a) {
            size_t src = manifest.base_row[rec];
            auto it = override_of.find(static_cast<uint64_t>(rec) << 16 | a);
            if (it != override_of.end()) src = it->second;
            r.cells[a] = decrypt_cell_token(encrypted.rows[src].cells[a], key);
        }
        out.rows[rec] = std::move(r);
    }
    return out;
}

Relation encrypt_deterministic(const Relation& original, const Key& key) {
    Relation out;
    out.attributes = original.attributes;
    out.cell_kind = Relation::CellKind::cipher;
    out.rows.reserve(original.size());
    for (const auto& row : original.rows) {
        Record r;
        r.id = row.id;
        r.provenance = row.provenance;
        r.cells.reserve(row.cells.size());
        for (size_t a = 0; a < row.cells.size(); ++a)
            r.cells.push_back(encrypt_cell_token(
                row.cells[a], key, CipherTag{original.attributes[a], row.cells[a], 1, "det"}));
        out.rows.push_back(std::move(r));
    }
    return out;
}

Relation encrypt_naive_probabilistic(const Relation& original, const Key& key) {
    Relation out;
    out.attributes = original.attributes;
    out.cell_kind = Relation::CellKind::cipher;
    out.rows.reserve(original.size());
    for (const auto& row : original.rows) {
        Record r;
        r.id = row.id;
        r.provenance = row.provenance;
        r.cells.reserve(row.cells.size());
        for (size_t a = 0; a < row.cells.size(); ++a)
            r.cells.push_back(encrypt_cell_token(
                row.cells[a], key,
                CipherTag{original.attributes[a], row.cells[a], 1,
                          "naive." + std::to_string(row.id)}));
        out.rows.push_back(std::move(r));
    }
    return out;
}

AlphaCheckResult structural_alpha_check(const Relation& encrypted, const ScopeLog& scopes,
                                        size_t k) {
    AlphaCheckResult result;
    auto flag = [&](std::string msg) {
        result.violations++;
        if (result.details.size() < 32) result.details.push_back(std::move(msg));
    };

    for (const auto& scope : scopes.ecgs) {
        result.scopes_checked++;
        // distinct values per attribute across the whole scope
        for (size_t t = 0; t < scope.attrs.size(); ++t) {
            std::unordered_map<std::string, size_t> values;
            for (const auto& piece : scope.piece_rows)
                for (size_t row : piece)
                    values[encrypted.rows[row].cells[scope.attrs[t]]]++;
            if (values.size() < k)
                flag("scope " + scope.id + ": attribute column shows " +
                     std::to_string(values.size()) + " values, need " + std::to_string(k));
        }
        // every piece tuple must sit at exactly the homogenized frequency
        for (const auto& piece : scope.piece_rows) {
            if (piece.empty()) continue;
            if (piece.size() != scope.target) {
                flag("scope " + scope.id + ": piece frequency " + std::to_string(piece.size()) +
                     " != target " + std::to_string(scope.target));
                continue;
            }
            const auto& first = encrypted.rows[piece.front()].cells;
            for (size_t row : piece)
                for (AttrIndex a : scope.attrs)
                    if (encrypted.rows[row].cells[a] != first[a])
                        flag("scope " + scope.id + ": piece rows disagree on the tuple");
        }
    }

    for (const auto& batch : scopes.fp_batches) {
        result.scopes_checked++;
        // k distinct lhs tuples, each of frequency exactly two
        std::unordered_map<std::string, size_t> lhs_tuples;
        for (size_t row : batch.rows) {
            std::string key_str;
            for (AttrIndex a : batch.lhs) {
                key_str += encrypted.rows[row].cells[a];
                key_str.push_back('\x1F');
            }
            lhs_tuples[key_str]++;
        }
        if (lhs_tuples.size() != batch.k)
            flag("fp batch: expected " + std::to_string(batch.k) + " lhs tuples, saw " +
                 std::to_string(lhs_tuples.size()));
        for (const auto& [_, count] : lhs_tuples)
            if (count != 2) flag("fp batch: lhs tuple frequency is not two");
    }
    return result;
}

VerifyResult verify_datasets(const Relation& original, const Relation& encrypted, double alpha,
                             double weak_cell_tolerance) {
    VerifyResult result;
    FdSet fd_original = discover_fds(original);
    FdSet fd_encrypted = discover_fds(encrypted);
    result.fd_diff = compare_fd_sets(fd_original, fd_encrypted);
    result.fd_pass = result.fd_diff.empty();

    const size_t k = static_cast<size_t>(std::ceil(1.0 / alpha - 1e-12));
    size_t weak_cells = 0;
    size_t total_cells = encrypted.size() * encrypted.arity();
    for (AttrIndex a = 0; a < encrypted.arity(); ++a) {
        std::unordered_map<std::string, size_t> freq;
        for (const auto& r : encrypted.rows) freq[r.cells[a]]++;
        std::unordered_map<size_t, size_t> class_width; // frequency -> distinct values
        for (const auto& [_, f] : freq) class_width[f]++;
        for (const auto& [tok, f] : freq) {
            (void)tok;
            if (class_width[f] < k) weak_cells += f;
        }
    }
    result.weak_cell_fraction =
        total_cells ? static_cast<double>(weak_cells) / static_cast<double>(total_cells) : 0.0;
    result.alpha_pass = result.weak_cell_fraction <= weak_cell_tolerance;
    return result;
}

} // namespace fdseal
