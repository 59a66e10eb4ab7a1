#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>

namespace trmsim {

using Bytes32 = std::array<std::uint8_t, 32>;
using Currency = std::int64_t;

/// Pseudonymous participant identity (public-key stand-in).
struct NodeId {
    Bytes32 bytes{};
    auto operator<=>(const NodeId&) const = default;
};

/// Immutable hardware fingerprint presented at registration.
using Fingerprint = Bytes32;

enum class Role : std::uint8_t {
    ResourceOwner = 0,
    ResourceUser = 1,
    Validator = 2,
};

std::string to_hex(const Bytes32& b);
std::string short_hex(const Bytes32& b);  // first 4 bytes, for logs
bool from_hex(const std::string& text, Bytes32& out);

const char* role_name(Role r);

/// Thrown when a run detects a broken internal invariant (e.g. currency
/// conservation). The CLI maps this to exit code 2.
struct InvariantViolation : std::exception {
    explicit InvariantViolation(std::string msg) : message(std::move(msg)) {}
    const char* what() const noexcept override { return message.c_str(); }
    std::string message;
};

}  // namespace trmsim
