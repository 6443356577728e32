#include "fdseal/cipher.hpp"

#include <openssl/evp.h>
#include <openssl/hmac.h>
#include <openssl/rand.h>

#include <sys/stat.h>

#include <cstring>
#include <fstream>

#include "fdseal/error.hpp"

namespace fdseal {

namespace {

constexpr size_t kMacLen = 16;   // binding tag, truncated HMAC
constexpr size_t kPadBlock = 16; // cells padded to multiples of this

Bytes serialize_tag(const CipherTag& tag, const char* domain) {
    Bytes out;
    append_str(out, domain);
    append_u64(out, tag.attribute.size());
    append_str(out, tag.attribute);
    append_u64(out, tag.plaintext.size());
    append_str(out, tag.plaintext);
    append_u64(out, tag.copy_index);
    append_u64(out, tag.scope.size());
    append_str(out, tag.scope);
    return out;
}

} // namespace

Bytes hmac_sha256(const Bytes& key, const Bytes& data) {
    Bytes out(32);
    unsigned int len = 32;
    if (!HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()),
              data.data(), data.size(), out.data(), &len))
        throw_crypto("HMAC failure");
    out.resize(len);
    return out;
}

Key keygen(uint32_t lambda_bits, std::optional<Bytes> seed) {
    if (lambda_bits != 128 && lambda_bits != 256)
        throw_input("unsupported security parameter: " + std::to_string(lambda_bits));
    Key key;
    key.lambda_bits = lambda_bits;
    const size_t len = lambda_bits / 8;
    if (seed) {
        // deterministic expansion of the seed, for reproducible tests
        Bytes material = hmac_sha256(*seed, {'k', 'e', 'y', 'g', 'e', 'n'});
        material.resize(len);
        key.bytes = std::move(material);
    } else {
        key.bytes.resize(len);
        if (RAND_bytes(key.bytes.data(), static_cast<int>(len)) != 1)
            throw_crypto("system randomness unavailable");
    }
    return key;
}

void write_key_file(const Key& key, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw_input("cannot open key file for writing: " + path);
    out << to_hex(key.bytes) << "\n";
    out.flush();
    if (!out) throw_input("key file write failed: " + path);
    out.close();
#ifndef _WIN32
    ::chmod(path.c_str(), S_IRUSR | S_IWUSR); // key material: owner-only
#endif
}

Key read_key_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw_input("cannot open key file: " + path);
    std::string hex;
    in >> hex;
    Key key;
    key.bytes = from_hex(hex);
    if (key.bytes.size() == 16) key.lambda_bits = 128;
    else if (key.bytes.size() == 32) key.lambda_bits = 256;
    else throw_input("key file has unsupported key length");
    return key;
}

std::string key_fingerprint(const Key& key) {
    Bytes fp = hmac_sha256(key.bytes, {'f', 'p'});
    fp.resize(8);
    return to_hex(fp);
}

EncryptedCell encrypt_cell(const std::string& plaintext, const Key& key, const CipherTag& tag) {
    if (plaintext.size() > kMaxTokenLen)
        throw_input("cell token exceeds maximum length of " + std::to_string(kMaxTokenLen));

    EncryptedCell cell;
    cell.nonce = hmac_sha256(key.bytes, serialize_tag(tag, "nonce"));
    cell.nonce.resize(key.lambda_bits / 8);

    // 2-byte length prefix, zero padding to a block multiple: token lengths
    // within a column stay hidden
    const size_t body = 2 + plaintext.size();
    const size_t padded = (body + kPadBlock - 1) / kPadBlock * kPadBlock;
    Bytes buf(padded, 0);
    buf[0] = static_cast<uint8_t>(plaintext.size() >> 8);
    buf[1] = static_cast<uint8_t>(plaintext.size() & 0xFF);
    std::memcpy(buf.data() + 2, plaintext.data(), plaintext.size());

    // keystream blocks: F_k(nonce ‖ counter)
    for (size_t block = 0; block * 32 < buf.size(); ++block) {
        Bytes input;
        append_str(input, "ks");
        append_bytes(input, cell.nonce.data(), cell.nonce.size());
        append_u64(input, block);
        Bytes ks = hmac_sha256(key.bytes, input);
        for (size_t i = 0; i < 32 && block * 32 + i < buf.size(); ++i)
            buf[block * 32 + i] ^= ks[i];
    }

    // binding tag over nonce + masked bytes; decryption with the wrong key
    // must fail loudly, never return garbage
    Bytes mac_input;
    append_str(mac_input, "mac");
    append_bytes(mac_input, cell.nonce.data(), cell.nonce.size());
    append_bytes(mac_input, buf.data(), buf.size());
    Bytes mac = hmac_sha256(key.bytes, mac_input);
    mac.resize(kMacLen);

    cell.mask = std::move(buf);
    cell.mask.insert(cell.mask.end(), mac.begin(), mac.end());
    return cell;
}

std::string decrypt_cell(const EncryptedCell& cell, const Key& key) {
    if (cell.mask.size() < kMacLen + kPadBlock)
        throw_crypto("ciphertext too short");
    const size_t body_len = cell.mask.size() - kMacLen;

    Bytes mac_input;
    append_str(mac_input, "mac");
    append_bytes(mac_input, cell.nonce.data(), cell.nonce.size());
    append_bytes(mac_input, cell.mask.data(), body_len);
    Bytes mac = hmac_sha256(key.bytes, mac_input);
    mac.resize(kMacLen);
    if (std::memcmp(mac.data(), cell.mask.data() + body_len, kMacLen) != 0)
        throw_crypto("cell integrity check failed (wrong key or tampered data)");

    Bytes buf(cell.mask.begin(), cell.mask.begin() + body_len);
    for (size_t block = 0; block * 32 < buf.size(); ++block) {
        Bytes input;
        append_str(input, "ks");
        append_bytes(input, cell.nonce.data(), cell.nonce.size());
        append_u64(input, block);
        Bytes ks = hmac_sha256(key.bytes, input);
        for (size_t i = 0; i < 32 && block * 32 + i < buf.size(); ++i)
            buf[block * 32 + i] ^= ks[i];
    }
    const size_t len = static_cast<size_t>(buf[0]) << 8 | buf[1];
    if (2 + len > buf.size())
        throw_crypto("cell padding check failed");
    for (size_t i = 2 + len; i < buf.size(); ++i)
        if (buf[i] != 0) throw_crypto("cell padding check failed");
    return std::string(reinterpret_cast<const char*>(buf.data()) + 2, len);
}

std::string cell_to_token(const EncryptedCell& cell) {
    return base64_encode(cell.nonce) + ":" + base64_encode(cell.mask);
}

EncryptedCell token_to_cell(const std::string& token) {
    auto colon = token.find(':');
    if (colon == std::string::npos)
        throw_input("malformed ciphertext cell (missing separator)");
    EncryptedCell cell;
    cell.nonce = base64_decode(token.substr(0, colon));
    cell.mask = base64_decode(token.substr(colon + 1));
    return cell;
}

std::string encrypt_cell_token(const std::string& plaintext, const Key& key, const CipherTag& tag) {
    return cell_to_token(encrypt_cell(plaintext, key, tag));
}

std::string decrypt_cell_token(const std::string& token, const Key& key) {
    return decrypt_cell(token_to_cell(token), key);
}

} // namespace fdseal
