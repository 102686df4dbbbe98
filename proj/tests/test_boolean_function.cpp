#include <doctest.h>

#include <cmath>
#include <set>
#include <string>

#include "qfilter/boolean_function.hpp"
#include "qfilter/errors.hpp"
#include "qfilter/walsh_basis.hpp"

using namespace qfilter;

TEST_CASE("classify the three kinds") {
    SUBCASE("constant") {
        const auto c = classify(BooleanFunction(3));
        CHECK(c.kind == FunctionKind::Constant);
        CHECK(c.m0 == 8);
        CHECK(!c.wk);
    }
    SUBCASE("balanced") {
        const auto c = classify(BooleanFunction::from_binary("00001111"));
        CHECK(c.kind == FunctionKind::Balanced);
        CHECK(c.m0 == 4);
        CHECK(c.m1 == 4);
        CHECK(!c.wk);
    }
    SUBCASE("biased, W_2 polarity 0") {
        const auto c = classify(BooleanFunction::from_binary("00000011"));
        CHECK(c.kind == FunctionKind::Biased);
        CHECK(c.m1 == 2);
        REQUIRE(c.wk.has_value());
        CHECK(c.wk->k == 2);
        CHECK(c.wk->polarity == 0);
    }
    SUBCASE("biased, not in any W_k") {
        const auto c = classify(BooleanFunction::from_binary("01000000"));
        CHECK(c.kind == FunctionKind::Biased);
        CHECK(!c.wk);
    }
}

TEST_CASE("classify recovers make_wk for every k and polarity") {
    for (int n = 2; n <= 8; ++n) {
        for (int k = 2; k <= n; ++k) {
            for (int pol = 0; pol <= 1; ++pol) {
                const auto c = classify(make_wk(n, k, pol));
                CHECK(c.kind == FunctionKind::Biased);
                REQUIRE(c.wk.has_value());
                CHECK(c.wk->k == k);
                CHECK(c.wk->polarity == pol);
                CHECK(std::min(c.m0, c.m1) == (std::uint64_t{1} << (n - k)));
            }
        }
    }
}

TEST_CASE("make_wk spells the expected tables") {
    CHECK(make_wk(3, 2, 0).to_binary() == "00000011");
    CHECK(make_wk(3, 2, 1).to_binary() == "11111100");
    CHECK_THROWS_AS(make_wk(3, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(make_wk(3, 4, 0), std::invalid_argument);
}

TEST_CASE("binary and hex table forms") {
    const auto f = BooleanFunction::from_binary("00000011");
    CHECK(f.to_hex() == "03");
    CHECK(BooleanFunction::parse("0x03") == f);
    CHECK(BooleanFunction::from_hex("03") == f);
    CHECK(BooleanFunction::parse("00000011") == f);
    CHECK_THROWS_AS(BooleanFunction::from_binary("001"), std::invalid_argument);
    CHECK_THROWS_AS(BooleanFunction::from_binary("00x0"), std::invalid_argument);
}

TEST_CASE("encode basics") {
    SUBCASE("constant zero is the uniform vector") {
        const auto v = encode(BooleanFunction(3));
        const double c = 1.0 / std::sqrt(8.0);
        for (std::size_t i = 0; i < 8; ++i) CHECK(v[i] == c);
    }
    SUBCASE("W_2 polarity 0 flips the last quarter") {
        const auto v = encode(make_wk(3, 2, 0));
        const double c = 1.0 / std::sqrt(8.0);
        for (std::size_t i = 0; i < 6; ++i) CHECK(v[i] == c);
        CHECK(v[6] == -c);
        CHECK(v[7] == -c);
        CHECK(v == wk_vector(3, 2));
    }
    SUBCASE("the two polarities agree up to a global sign") {
        const auto a = encode(make_wk(3, 2, 0));
        auto b = encode(make_wk(3, 2, 1));
        b.scale(-1.0);
        CHECK(a == b);
    }
    SUBCASE("balanced tables have exact zero sign sum") {
        BalancedStream stream(3);
        while (auto f = stream.next()) {
            CHECK(f->sign_sum() == 0);
            CHECK(encode(*f).is_normalized(1e-12));
        }
    }
}

TEST_CASE("encode is unit norm for arbitrary tables") {
    std::uint64_t state = 17;
    for (int n = 1; n <= 10; ++n) {
        for (int rep = 0; rep < 3; ++rep) {
            BooleanFunction f(n);
            for (std::size_t x = 0; x < f.size(); ++x) {
                state = state * 6364136223846793005ull + 1442695040888963407ull;
                f.set(x, static_cast<int>(state >> 63));
            }
            CHECK(std::abs(encode(f).norm() - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("balanced enumeration counts and order") {
    SUBCASE("n = 1") {
        BalancedStream stream(1);
        CHECK(stream.next()->to_binary() == "01");
        CHECK(stream.next()->to_binary() == "10");
        CHECK(!stream.next());
    }
    SUBCASE("n = 2 against brute force over all tables") {
        std::set<std::string> expected;
        for (unsigned t = 0; t < 16; ++t) {
            std::string table(4, '0');
            for (unsigned b = 0; b < 4; ++b)
                if (t & (1u << b)) table[b] = '1';
            const auto c = classify(BooleanFunction::from_binary(table));
            if (c.kind == FunctionKind::Balanced) expected.insert(table);
        }
        CHECK(expected.size() == 6);

        std::set<std::string> streamed;
        std::string prev;
        BalancedStream stream(2);
        while (auto f = stream.next()) {
            const std::string table = f->to_binary();
            CHECK(prev < table);  // lexicographic ascending
            prev = table;
            streamed.insert(table);
        }
        CHECK(streamed == expected);
    }
    SUBCASE("n = 3 yields 70 distinct balanced tables") {
        std::set<std::string> seen;
        BalancedStream stream(3);
        while (auto f = stream.next()) {
            CHECK(classify(*f).kind == FunctionKind::Balanced);
            seen.insert(f->to_binary());
        }
        CHECK(seen.size() == 70);
    }
    SUBCASE("the cap is enforced") {
        CHECK_THROWS_AS(BalancedStream(5), CapExceededError);
        CHECK_NOTHROW(BalancedStream(4));
    }
}

TEST_CASE("classical worst case counts and witness") {
    SUBCASE("n=3, k=2") {
        const auto r = classical_worst_case(3, 2);
        CHECK(r.evaluations == 7);
        CHECK(r.agreements == 6);
        CHECK(classify(r.witness).kind == FunctionKind::Balanced);
        CHECK(agreement_count(r.witness, make_wk(3, 2, 0)) == 6);
    }
    SUBCASE("n=4, k=2") {
        const auto r = classical_worst_case(4, 2);
        CHECK(r.evaluations == 13);
        CHECK(r.agreements == 12);
        CHECK(classify(r.witness).kind == FunctionKind::Balanced);
    }
    SUBCASE("n=2, k=2") {
        CHECK(classical_worst_case(2, 2).evaluations == 4);
    }
    SUBCASE("witness formula holds across the family") {
        for (int n = 2; n <= 10; ++n) {
            for (int k = 2; k <= n; ++k) {
                const auto r = classical_worst_case(n, k);
                const auto expected =
                    (std::uint64_t{1} << (n - 1)) + (std::uint64_t{1} << (n - k));
                CHECK(r.agreements == expected);
                CHECK(r.evaluations == expected + 1);
                CHECK(classify(r.witness).kind == FunctionKind::Balanced);
            }
        }
    }
    SUBCASE("k out of range") {
        CHECK_THROWS_AS(classical_worst_case(3, 1), std::invalid_argument);
        CHECK_THROWS_AS(classical_worst_case(3, 5), std::invalid_argument);
    }
}
