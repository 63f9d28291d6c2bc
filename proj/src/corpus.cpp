#include "ellcyc/corpus.hpp"

#include <cstdio>

namespace ellcyc {

namespace detail {
extern const std::string_view kBuiltinCorpus;
}

std::string_view builtin_corpus_text() { return detail::kBuiltinCorpus; }

const CatalogFile& builtin_corpus() {
    static const CatalogFile file = parse_catalog(builtin_corpus_text());
    return file;
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hash_hex(std::string_view bytes) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
    return buf;
}

}  // namespace ellcyc
