#include "ulam/io.hpp"

#include "ulam/errors.hpp"

#include <array>
#include <cstring>
#include <fstream>

namespace ulam {

namespace {

constexpr std::array<char, 8> kMagic = {'U', 'L', 'A', 'M', 'S', 'E', 'Q', '1'};

void put_u64(std::ofstream& out, std::uint64_t v) {
    std::array<unsigned char, 8> b;
    for (int i = 0; i < 8; ++i) b[static_cast<std::size_t>(i)] = static_cast<unsigned char>(v >> (8 * i));
    out.write(reinterpret_cast<const char*>(b.data()), 8);
}

std::uint64_t get_u64(std::ifstream& in) {
    std::array<unsigned char, 8> b;
    in.read(reinterpret_cast<char*>(b.data()), 8);
    if (!in) throw DataError("cache file truncated");
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | b[static_cast<std::size_t>(i)];
    return v;
}

} // namespace

void write_cache(const std::filesystem::path& path, const UlamSequence& seq) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ResourceError("cannot open " + path.string() + " for writing");
    out.write(kMagic.data(), kMagic.size());
    put_u64(out, seq.config.first);
    put_u64(out, seq.config.second);
    put_u64(out, seq.terms.size());
    for (std::uint64_t t : seq.terms) put_u64(out, t);
    out.flush();
    if (!out) throw ResourceError("write failed for " + path.string());
}

UlamSequence read_cache(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ResourceError("cannot open " + path.string());
    std::array<char, 8> magic;
    in.read(magic.data(), magic.size());
    if (!in || std::memcmp(magic.data(), kMagic.data(), 8) != 0)
        throw DataError("bad cache magic in " + path.string());

    UlamSequence seq;
    seq.config.first = get_u64(in);
    seq.config.second = get_u64(in);
    const std::uint64_t count = get_u64(in);
    if (count < 2) throw DataError("cache holds fewer than 2 terms");
    seq.config.target = GenerationConfig::Target::Count;
    seq.config.amount = count;

    seq.terms.resize(count);
    for (std::uint64_t i = 0; i < count; ++i) seq.terms[i] = get_u64(in);
    char extra;
    if (in.read(&extra, 1)) throw DataError("trailing bytes after cache payload");

    if (seq.terms[0] != seq.config.first || seq.terms[1] != seq.config.second)
        throw DataError("cache header does not match leading terms");
    for (std::size_t i = 1; i < seq.terms.size(); ++i)
        if (seq.terms[i] <= seq.terms[i - 1])
            throw DataError("cache terms are not strictly increasing");
    return seq;
}

void write_text(const std::filesystem::path& path, const UlamSequence& seq) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw ResourceError("cannot open " + path.string() + " for writing");
    out << "# ulam sequence cache\n";
    out << "# first " << seq.config.first << "\n";
    out << "# second " << seq.config.second << "\n";
    out << "# count " << seq.terms.size() << "\n";
    for (std::uint64_t t : seq.terms) out << t << "\n";
    if (!out) throw ResourceError("write failed for " + path.string());
}

} // namespace ulam
