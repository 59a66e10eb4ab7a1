#include "trmsim/hash.hpp"

#include <openssl/evp.h>

#include <cstring>
#include <stdexcept>

namespace trmsim {

namespace {

EVP_MD_CTX* as_ctx(void* p) { return static_cast<EVP_MD_CTX*>(p); }

}  // namespace

HashWriter::HashWriter() : ctx_(EVP_MD_CTX_new()) {
    if (ctx_ == nullptr || EVP_DigestInit_ex(as_ctx(ctx_), EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("sha256 init failed");
    }
}

HashWriter::~HashWriter() {
    if (ctx_ != nullptr) {
        EVP_MD_CTX_free(as_ctx(ctx_));
    }
}

HashWriter& HashWriter::u8(std::uint8_t v) {
    EVP_DigestUpdate(as_ctx(ctx_), &v, 1);
    return *this;
}

HashWriter& HashWriter::u32(std::uint32_t v) {
    std::uint8_t buf[4];
    for (int i = 0; i < 4; ++i) buf[i] = static_cast<std::uint8_t>(v >> (8 * i));
    EVP_DigestUpdate(as_ctx(ctx_), buf, sizeof buf);
    return *this;
}

HashWriter& HashWriter::u64(std::uint64_t v) {
    std::uint8_t buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<std::uint8_t>(v >> (8 * i));
    EVP_DigestUpdate(as_ctx(ctx_), buf, sizeof buf);
    return *this;
}

HashWriter& HashWriter::i64(std::int64_t v) { return u64(static_cast<std::uint64_t>(v)); }

HashWriter& HashWriter::f64(double v) {
    std::uint64_t bits;
    static_assert(sizeof bits == sizeof v);
    std::memcpy(&bits, &v, sizeof bits);
    return u64(bits);
}

HashWriter& HashWriter::bytes(std::span<const std::uint8_t> data) {
    EVP_DigestUpdate(as_ctx(ctx_), data.data(), data.size());
    return *this;
}

HashWriter& HashWriter::str(std::string_view s) {
    u64(s.size());
    EVP_DigestUpdate(as_ctx(ctx_), s.data(), s.size());
    return *this;
}

HashWriter& HashWriter::b32(const Bytes32& b) {
    EVP_DigestUpdate(as_ctx(ctx_), b.data(), b.size());
    return *this;
}

Bytes32 HashWriter::finish() {
    Bytes32 out{};
    unsigned int len = 0;
    if (EVP_DigestFinal_ex(as_ctx(ctx_), out.data(), &len) != 1 || len != out.size()) {
        throw std::runtime_error("sha256 finalize failed");
    }
    return out;
}

Bytes32 sha256(std::span<const std::uint8_t> data) {
    HashWriter w;
    w.bytes(data);
    return w.finish();
}

Bytes32 sha256_str(std::string_view s) {
    HashWriter w;
    w.bytes({reinterpret_cast<const std::uint8_t*>(s.data()), s.size()});
    return w.finish();
}

std::string to_hex(const Bytes32& b) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out(64, '0');
    for (std::size_t i = 0; i < b.size(); ++i) {
        out[2 * i] = digits[b[i] >> 4];
        out[2 * i + 1] = digits[b[i] & 0xF];
    }
    return out;
}

std::string short_hex(const Bytes32& b) { return to_hex(b).substr(0, 8); }

bool from_hex(const std::string& text, Bytes32& out) {
    if (text.size() != 64) return false;
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        return -1;
    };
    for (std::size_t i = 0; i < out.size(); ++i) {
        int hi = nibble(text[2 * i]);
        int lo = nibble(text[2 * i + 1]);
        if (hi < 0 || lo < 0) return false;
        out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
    }
    return true;
}

const char* role_name(Role r) {
    switch (r) {
        case Role::ResourceOwner: return "resource_owner";
        case Role::ResourceUser: return "resource_user";
        case Role::Validator: return "validator";
    }
    return "unknown";
}

}  // namespace trmsim
