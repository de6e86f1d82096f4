#include <doctest.h>

#include <stdexcept>
#include <string>
#include <vector>

#include "bpcs/errors.hpp"
#include "bpcs/payload_codec.hpp"
#include "support/oracles.hpp"

using namespace bpcs;

namespace {

std::vector<std::uint8_t> bytes_of(const std::string& s) {
    return {s.begin(), s.end()};
}

}  // namespace

TEST_CASE("crc32 golden values match the bitwise oracle") {
    const std::vector<std::uint8_t> empty;
    CHECK(crc32(empty) == 0x00000000u);
    CHECK(oracle::crc32_bitwise(empty) == 0x00000000u);

    const auto check_value = bytes_of("123456789");
    CHECK(crc32(check_value) == 0xCBF43926u);
    CHECK(oracle::crc32_bitwise(check_value) == 0xCBF43926u);
}

TEST_CASE("crc32 agrees with the bitwise oracle on random data") {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const auto data = oracle::random_bytes(seed * 7 % 300, seed);
        CHECK(crc32(data) == oracle::crc32_bitwise(data));
    }
}

TEST_CASE("crc32 detects single-bit flips") {
    std::uint64_t state = 42;
    for (int i = 0; i < 1000; ++i) {
        auto data = oracle::random_bytes(1 + oracle::next_rand(state) % 64, state);
        const std::uint32_t before = crc32(data);
        const std::size_t bit = oracle::next_rand(state) % (data.size() * 8);
        data[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
        CHECK(crc32(data) != before);
    }
}

TEST_CASE("empty-payload container is the golden 14-byte vector") {
    const std::vector<std::uint8_t> expected = {0x42, 0x50, 0x43, 0x53, 0x01, 0x00, 0x00,
                                                0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00};
    CHECK(build_container({}, PlaneCoding::PureBinary) == expected);
}

TEST_CASE("container header carries length, crc and coding flag") {
    const auto payload = bytes_of("123456789");
    const auto container = build_container(payload, PlaneCoding::GrayCode);
    CHECK(container.size() == 14 + 9);

    const ContainerHeader header = parse_container_header(container);
    CHECK(header.payload_length == 9);
    CHECK(header.payload_crc32 == 0xCBF43926u);
    CHECK(header.coding() == PlaneCoding::GrayCode);
    CHECK((header.flags & 0xFE) == 0);

    CHECK(parse_container(container) == payload);
}

TEST_CASE("container round-trips arbitrary payloads") {
    for (const std::size_t len : {std::size_t{0}, std::size_t{1}, std::size_t{13},
                                  std::size_t{200}, std::size_t{4096}}) {
        const auto payload = oracle::random_bytes(len, 0x1234 + len);
        const auto container = build_container(payload, PlaneCoding::PureBinary);
        CHECK(parse_container(container) == payload);
        const auto header = parse_container_header(container);
        CHECK(header.payload_length == len);
        CHECK(header.coding() == PlaneCoding::PureBinary);
    }
}

TEST_CASE("container parse failures") {
    auto good = build_container(bytes_of("hi"), PlaneCoding::PureBinary);

    SUBCASE("magic mismatch is not-found") {
        auto bad = good;
        bad[0] = 'X';
        CHECK_THROWS_AS(parse_container(bad), NotFoundError);
        std::vector<std::uint8_t> noise(20, 0xAB);
        CHECK_THROWS_AS(parse_container(noise), NotFoundError);
        CHECK_THROWS_AS(parse_container_header(std::vector<std::uint8_t>(3)), NotFoundError);
    }
    SUBCASE("unknown version") {
        auto bad = good;
        bad[4] = 0x02;
        CHECK_THROWS_AS(parse_container(bad), CorruptionError);
    }
    SUBCASE("reserved flag bits") {
        auto bad = good;
        bad[5] = 0x82;
        CHECK_THROWS_AS(parse_container(bad), CorruptionError);
    }
    SUBCASE("crc mismatch") {
        auto bad = good;
        bad.back() ^= 0x01;
        CHECK_THROWS_AS(parse_container(bad), CorruptionError);
    }
    SUBCASE("truncated payload") {
        auto bad = good;
        bad.pop_back();
        CHECK_THROWS_AS(parse_container(bad), CorruptionError);
    }
}

TEST_CASE("bit emission order is MSB-first: 0xA5 golden vector") {
    const std::vector<std::uint8_t> one_byte = {0xA5};
    const auto blocks = pack_blocks(one_byte);
    REQUIRE(blocks.size() == 1);
    const int expected[8] = {1, 0, 1, 0, 0, 1, 0, 1};
    for (int j = 0; j < 8; ++j)
        CHECK(static_cast<int>((blocks[0].bits >> j) & 1u) == expected[j]);
}

TEST_CASE("pack_blocks geometry") {
    CHECK(pack_blocks({}).empty());
    CHECK(block_count_for_bytes(0) == 0);
    CHECK(block_count_for_bytes(14) == 2);

    const auto container = build_container({}, PlaneCoding::PureBinary);  // 14 bytes, 112 bits
    const auto blocks = pack_blocks(container);
    REQUIRE(blocks.size() == 2);
    // second block holds bits 63..111: 49 data bits, 14 zero padding bits on top
    CHECK((blocks[1].bits >> 49) == 0);
}

TEST_CASE("pack/unpack round-trips at the bit level") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const auto data = oracle::random_bytes((seed * 13) % 200, seed ^ 0x5555);
        const auto blocks = pack_blocks(data);
        CHECK(blocks.size() == block_count_for_bytes(data.size()));
        CHECK(unpack_blocks(blocks, data.size()) == data);
    }
    CHECK_THROWS_AS(unpack_blocks(std::vector<DataBlock>{}, 1), std::invalid_argument);
}

TEST_CASE("block/patch mapping reserves the flag bit") {
    CHECK(block_to_patch(DataBlock{}) == Patch{});

    std::uint64_t state = 99;
    for (int i = 0; i < 10000; ++i) {
        const DataBlock block{oracle::next_rand(state) >> 1};  // 63 random bits
        const Patch patch = block_to_patch(block);
        const auto [flag, back] = patch_to_block(patch);
        CHECK_FALSE(flag);  // flag is always 0 before conjugation
        CHECK(back == block);
    }
}

TEST_CASE("all-ones block maps to a patch with only the flag clear") {
    const DataBlock block{(std::uint64_t{1} << 63) - 1};
    const Patch patch = block_to_patch(block);
    CHECK_FALSE(patch.bit(0, 0));
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c)
            if (r != 0 || c != 0)
                CHECK(patch.bit(r, c));
    // two differing adjacent pairs, (0,0)-(0,1) and (0,0)-(1,0)
    CHECK(oracle::patch_complexity(patch) == 2);
    CHECK(complexity(patch) == 2);
}

TEST_CASE("block bits fill positions (0,1)..(7,7) row-major") {
    DataBlock block;
    block.bits = 1;  // first stream bit of the block
    CHECK(block_to_patch(block).bit(0, 1));
    block.bits = std::uint64_t{1} << 62;  // last stream bit
    CHECK(block_to_patch(block).bit(7, 7));
}
