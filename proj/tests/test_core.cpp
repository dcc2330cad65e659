#include <doctest.h>

#include "plateau/bitstring.hpp"
#include "plateau/rng.hpp"
#include "plateau/transform.hpp"

using namespace plateau;

TEST_CASE("count_ones") {
    CHECK(Bitstring::from_string("00000").count_ones() == 0);
    CHECK(Bitstring::from_string("11111").count_ones() == 5);
    CHECK(Bitstring::from_string("10110").count_ones() == 3);
}

TEST_CASE("count_ones across word boundaries") {
    RandomSource rng(1);
    for (std::size_t n : {63, 64, 65, 128, 1000}) {
        const auto x = Bitstring::random(n, rng);
        std::size_t manual = 0;
        for (std::size_t i = 0; i < n; ++i) manual += x.get(i);
        CHECK(x.count_ones() == manual);
        CHECK(x.count_ones() + x.complemented().count_ones() == n);
    }
}

TEST_CASE("hamming basics") {
    CHECK(hamming(Bitstring::from_string("1010"), Bitstring::from_string("1010")) == 0);
    CHECK(hamming(Bitstring::from_string("1010"), Bitstring::from_string("0101")) == 4);
    CHECK(hamming(Bitstring::from_string("110"), Bitstring::from_string("100")) == 1);
    CHECK_THROWS_AS(hamming(Bitstring::from_string("10"), Bitstring::from_string("100")),
                    std::invalid_argument);
}

TEST_CASE("hamming is a metric on random triples") {
    RandomSource rng(2);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng.uniform_below(100);
        const auto x = Bitstring::random(n, rng);
        const auto y = Bitstring::random(n, rng);
        const auto z = Bitstring::random(n, rng);
        CHECK(hamming(x, y) == hamming(y, x));
        CHECK((hamming(x, y) == 0) == (x == y));
        CHECK(hamming(x, z) <= hamming(x, y) + hamming(y, z));
    }
}

TEST_CASE("apply_transform examples") {
    const auto x = Bitstring::from_string("101");
    CHECK(apply_transform(InstanceTransform::identity(3), x) == x);

    const InstanceTransform complement(Bitstring::from_string("111"), {0, 1, 2});
    CHECK(apply_transform(complement, x) == Bitstring::from_string("010"));

    // permutation (2,3,1) in 1-based terms: output i takes input perm(i)
    const InstanceTransform shuffled(Bitstring::from_string("000"), {1, 2, 0});
    CHECK(apply_transform(shuffled, Bitstring::from_string("100")) ==
          Bitstring::from_string("001"));
}

TEST_CASE("apply_transform validates dimensions and bijections") {
    CHECK_THROWS_AS(apply_transform(InstanceTransform::identity(4),
                                    Bitstring::from_string("101")),
                    std::invalid_argument);
    CHECK_THROWS_AS(InstanceTransform(Bitstring::zeros(3), {0, 0, 2}),
                    std::invalid_argument);
    CHECK_THROWS_AS(InstanceTransform(Bitstring::zeros(3), {0, 1, 3}),
                    std::invalid_argument);
}

TEST_CASE("transform preserves hamming distance; inverse undoes it") {
    RandomSource rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + rng.uniform_below(80);
        const auto t = InstanceTransform::random(n, rng);
        const auto x = Bitstring::random(n, rng);
        const auto y = Bitstring::random(n, rng);
        CHECK(hamming(apply_transform(t, x), apply_transform(t, y)) == hamming(x, y));
        CHECK(apply_transform(t.inverse(), apply_transform(t, x)) == x);
    }
}

TEST_CASE("same seed reproduces the stream") {
    RandomSource a(123456789), b(123456789);
    for (int i = 0; i < 10000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("replication streams differ across indices") {
    auto a = RandomSource::for_replication(42, 0);
    auto b = RandomSource::for_replication(42, 1);
    auto a2 = RandomSource::for_replication(42, 0);
    bool identical = true;
    for (int i = 0; i < 100; ++i) {
        const auto va = a.next_u64();
        identical = identical && va == b.next_u64();
        CHECK(va == a2.next_u64());
    }
    CHECK_FALSE(identical);
}
