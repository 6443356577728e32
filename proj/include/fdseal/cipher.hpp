#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "fdseal/bytes.hpp"

namespace fdseal {

// Cell ciphertexts are pairs <r, F_k(r) ⊕ pad(p)>: a nonce plus a keystream
// mask. The nonce is derived from the tag rather than drawn fresh, so the
// same (attribute, plaintext, copy, scope) always yields the same bytes
// within a run: scaling needs exact ciphertext repeats, and distinct copies
// or scopes need distinct ciphertexts.
struct Key {
    Bytes bytes;
    uint32_t lambda_bits = 128;
};

Key keygen(uint32_t lambda_bits, std::optional<Bytes> seed = std::nullopt);

void write_key_file(const Key& key, const std::string& path);
Key read_key_file(const std::string& path);

struct CipherTag {
    std::string attribute;
    std::string plaintext;
    uint64_t copy_index = 1;
    std::string scope; // encryption-scope identifier, e.g. one ECG
};

struct EncryptedCell {
    Bytes nonce;
    Bytes mask; // keystream-masked padded plaintext followed by a binding tag
};

constexpr size_t kMaxTokenLen = 4096;

EncryptedCell encrypt_cell(const std::string& plaintext, const Key& key, const CipherTag& tag);

// Throws Error(crypto) when the binding tag fails (wrong key or tampering).
std::string decrypt_cell(const EncryptedCell& cell, const Key& key);

// Serialized cell form used inside CSV files: base64(nonce) ":" base64(mask).
std::string cell_to_token(const EncryptedCell& cell);
EncryptedCell token_to_cell(const std::string& token);

std::string encrypt_cell_token(const std::string& plaintext, const Key& key, const CipherTag& tag);
std::string decrypt_cell_token(const std::string& token, const Key& key);

// PRF used throughout (HMAC-SHA256); exposed for key fingerprints.
Bytes hmac_sha256(const Bytes& key, const Bytes& data);
std::string key_fingerprint(const Key& key);

} // namespace fdseal
