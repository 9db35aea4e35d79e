#include <doctest.h>

#include "ulam/errors.hpp"
#include "ulam/io.hpp"

#include <filesystem>
#include <fstream>
#include <string>

using namespace ulam;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / "ulam_io_test") {
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

} // namespace

TEST_SUITE("io") {

TEST_CASE("cache round trip is exact") {
    TempDir tmp;
    const auto seq = generate_fast(GenerationConfig::by_count(1000, 2, 5));
    const auto p = tmp.path / "u.bin";
    write_cache(p, seq);
    const auto back = read_cache(p);
    CHECK(back.terms == seq.terms);
    CHECK(back.config.first == 2);
    CHECK(back.config.second == 5);
}

TEST_CASE("corruption is detected") {
    TempDir tmp;
    const auto seq = generate_fast(GenerationConfig::by_count(64));
    const auto p = tmp.path / "u.bin";
    write_cache(p, seq);

    auto flip_byte = [&](std::streamoff off, char x) {
        std::fstream f(p, std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(off);
        f.write(&x, 1);
    };

    SUBCASE("magic") {
        flip_byte(0, 'X');
        CHECK_THROWS_AS(read_cache(p), DataError);
    }
    SUBCASE("order violation inside the payload") {
        // smash the high byte of a middle term
        flip_byte(8 * 3 + 8 * 10 + 7, '\x7f');
        CHECK_THROWS_AS(read_cache(p), DataError);
    }
    SUBCASE("truncation") {
        fs::resize_file(p, fs::file_size(p) - 5);
        CHECK_THROWS_AS(read_cache(p), DataError);
    }
    SUBCASE("trailing garbage") {
        std::ofstream f(p, std::ios::app | std::ios::binary);
        f << "zzz";
        f.close();
        CHECK_THROWS_AS(read_cache(p), DataError);
    }
    SUBCASE("missing file") { CHECK_THROWS_AS(read_cache(tmp.path / "nope.bin"), ResourceError); }
}

TEST_CASE("tiny payloads are rejected") {
    TempDir tmp;
    const auto p = tmp.path / "one.bin";
    std::ofstream f(p, std::ios::binary);
    f << "ULAMSEQ1";
    const std::uint64_t vals[3] = {1, 2, 1}; // count = 1
    f.write(reinterpret_cast<const char*>(vals), sizeof vals);
    const std::uint64_t term = 1;
    f.write(reinterpret_cast<const char*>(&term), sizeof term);
    f.close();
    CHECK_THROWS_AS(read_cache(p), DataError);
}

TEST_CASE("text export") {
    TempDir tmp;
    const auto seq = generate_fast(GenerationConfig::by_count(8));
    const auto p = tmp.path / "u.txt";
    write_text(p, seq);
    std::ifstream in(p);
    std::string line;
    std::vector<std::uint64_t> terms;
    int headers = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') { ++headers; continue; }
        terms.push_back(std::stoull(line));
    }
    CHECK(headers >= 3);
    CHECK(terms == seq.terms);
}

}
