#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "ellcyc/catalog.hpp"

namespace ellcyc {

/// Text of the built-in corpus (data/builtin.cyc, embedded at build time).
std::string_view builtin_corpus_text();

/// Parsed built-in corpus. Parsed once; the reference stays valid.
const CatalogFile& builtin_corpus();

/// 64-bit FNV-1a of a byte string.
std::uint64_t fnv1a64(std::string_view bytes);

/// fnv1a64 as 16 lowercase hex digits.
std::string hash_hex(std::string_view bytes);

}  // namespace ellcyc
