#pragma once

#include <string>
#include <string_view>

namespace gge {

// Canonical lookup key for entity names and answer strings: Unicode NFC,
// lowercase, `_` treated as a space, trimmed, whitespace runs collapsed.
// Idempotent. Invalid UTF-8 sequences are replaced with U+FFFD.
std::string normalize_name(std::string_view name);

// ASCII/Unicode whitespace trim without case or NFC changes.
std::string trim(std::string_view s);

}  // namespace gge
