#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "trmsim/common.hpp"

namespace trmsim {

/// Incremental SHA-256 writer with canonical little-endian encoding for
/// integers. All chain hashes and the signature abstraction go through this
/// so the byte layout is fixed in exactly one place.
class HashWriter {
public:
    HashWriter();
    HashWriter(const HashWriter&) = delete;
    HashWriter& operator=(const HashWriter&) = delete;
    ~HashWriter();

    HashWriter& u8(std::uint8_t v);
    HashWriter& u32(std::uint32_t v);
    HashWriter& u64(std::uint64_t v);
    HashWriter& i64(std::int64_t v);
    HashWriter& f64(double v);  // IEEE-754 bit pattern
    HashWriter& bytes(std::span<const std::uint8_t> data);
    HashWriter& str(std::string_view s);  // length-prefixed
    HashWriter& b32(const Bytes32& b);

    Bytes32 finish();

private:
    void* ctx_;
};

Bytes32 sha256(std::span<const std::uint8_t> data);
Bytes32 sha256_str(std::string_view s);

}  // namespace trmsim
