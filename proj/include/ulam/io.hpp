#ifndef ULAM_IO_HPP
#define ULAM_IO_HPP

#include <filesystem>

#include "ulam/sequence.hpp"

namespace ulam {

// Binary cache: magic "ULAMSEQ1", then little-endian u64 first, second,
// count, then count little-endian u64 terms.
void write_cache(const std::filesystem::path& path, const UlamSequence& seq);

// Throws DataError on bad magic, truncation, count < 2, header/terms
// mismatch, or non-increasing terms; ResourceError on I/O failure.
UlamSequence read_cache(const std::filesystem::path& path);

// Newline-delimited decimal terms; '#' lines carry header metadata.
void write_text(const std::filesystem::path& path, const UlamSequence& seq);

} // namespace ulam

#endif
