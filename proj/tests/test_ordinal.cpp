#include <doctest.h>

#include <vector>

#include "schreier/errors.hpp"
#include "schreier/ordinal.hpp"

using schreier::Ordinal;

namespace {

const Ordinal w = Ordinal::omega();

Ordinal o(const std::string& s) { return Ordinal::parse(s); }

// Deterministic enumeration of CNF ordinals over a fixed exponent pool:
// every strictly decreasing subset of the pool with coefficients in {1,2,3}.
std::vector<Ordinal> sample_ordinals(std::size_t cap) {
    std::vector<Ordinal> exps = {
        Ordinal::power(Ordinal::nat(2)),          // w^2... keep descending
        w * Ordinal::nat(2),
        w + Ordinal::nat(1),
        w,
        Ordinal::nat(3),
        Ordinal::nat(2),
        Ordinal::nat(1),
        Ordinal::nat(0),
    };
    // exps happens to be sorted descending except the first two; fix order.
    std::vector<Ordinal> pool = {
        Ordinal::power(w),                        // w^w
        Ordinal::power(Ordinal::nat(2)) + w,      // w^2+w
        Ordinal::power(Ordinal::nat(2)),          // w^2
        w * Ordinal::nat(2) + Ordinal::nat(1),    // w*2+1
        w * Ordinal::nat(2),                      // w*2
        w + Ordinal::nat(2),                      // w+2
        w,                                        // w
        Ordinal::nat(4),
        Ordinal::nat(2),
        Ordinal::nat(1),
        Ordinal::nat(0),
    };
    std::vector<Ordinal> out;
    out.push_back(Ordinal());
    std::vector<std::pair<std::size_t, std::uint64_t>> picked;
    auto emit = [&] {
        Ordinal sum;
        for (auto [idx, c] : picked) sum = sum + Ordinal::power(pool[idx], c);
        out.push_back(sum);
    };
    // depth-first over pool indices in order (exponents strictly decrease)
    auto rec = [&](auto&& self, std::size_t from) -> void {
        if (out.size() >= cap) return;
        for (std::size_t i = from; i < pool.size() && out.size() < cap; ++i) {
            for (std::uint64_t c = 1; c <= 3 && out.size() < cap; ++c) {
                picked.emplace_back(i, c);
                emit();
                self(self, i + 1);
                picked.pop_back();
            }
        }
    };
    rec(rec, 0);
    return out;
}

} // namespace

TEST_CASE("cnf notation parses and formats canonically") {
    CHECK(o("0").is_zero());
    CHECK(o("17").as_nat() == 17);
    CHECK(o("w") == w);
    CHECK(o("w*3") == w * Ordinal::nat(3));
    CHECK(o("w^1*3") == w * Ordinal::nat(3));
    CHECK(o("w^2*3+w+1") == Ordinal::power(Ordinal::nat(2), 3) + w + Ordinal::nat(1));
    CHECK(o("w^w") == Ordinal::power(w));
    CHECK(o("w^w^2") == Ordinal::power(Ordinal::power(Ordinal::nat(2))));
    CHECK(o("w^(w+1)*2") == Ordinal::power(w + Ordinal::nat(1), 2));

    CHECK(o("w^2*3+w+1").str() == "w^2*3+w+1");
    CHECK((Ordinal::power(w) + Ordinal::nat(1)).str() == "w^w+1");
    // a sum in exponent position needs parentheses to survive the round trip
    CHECK(Ordinal::power(w + Ordinal::nat(1)).str() == "w^(w+1)");

    CHECK_THROWS_AS(o("w+w^2"), schreier::ParseError);    // not decreasing
    CHECK_THROWS_AS(o("0+w"), schreier::ParseError);      // zero summand
    CHECK_THROWS_AS(o("w^"), schreier::ParseError);
    CHECK_THROWS_AS(o("3w"), schreier::ParseError);       // trailing input
}

TEST_CASE("addition absorbs smaller left parts") {
    CHECK(o("1") + w == w);
    CHECK(o("w*2+3") + w == o("w*3"));
    CHECK(w + o("1") == o("w+1"));
    CHECK(o("w^2") + o("w+5") == o("w^2+w+5"));
}

TEST_CASE("multiplication distributes over the right argument") {
    CHECK(o("w+1") * o("2") == o("w*2+1"));
    CHECK(w * w == o("w^2"));
    CHECK(o("2") * w == w);
    CHECK(o("w+1") * w == o("w^2"));
    CHECK(o("w*2") * o("w*3+4") == o("w^2*3+w*8"));
}

TEST_CASE("classification and predecessor") {
    CHECK(Ordinal().classify() == Ordinal::Kind::Zero);
    CHECK(o("3").classify() == Ordinal::Kind::Successor);
    CHECK(o("w+1").classify() == Ordinal::Kind::Successor);
    CHECK(w.classify() == Ordinal::Kind::Limit);
    CHECK(o("w^2*5").classify() == Ordinal::Kind::Limit);
    CHECK(o("w+1").predecessor() == w);
    CHECK(o("3").predecessor() == o("2"));
    CHECK_THROWS_AS(w.predecessor(), schreier::InvalidArgument);
}

TEST_CASE("canonical fundamental sequences") {
    CHECK(w.fundamental(5) == o("5"));
    CHECK(o("w^2").fundamental(3) == o("w*3"));
    CHECK(o("w^w").fundamental(2) == o("w^2"));
    CHECK(o("w^2*3+w").fundamental(4) == o("w^2*3+4"));
    CHECK(o("w^(w+1)").fundamental(3) == o("w^w*3"));
    CHECK(o("w*2").fundamental(7) == o("w+7"));
    CHECK_THROWS_AS(o("w+1").fundamental(1), schreier::InvalidArgument);
}

TEST_CASE("arithmetic laws on an enumerated sample") {
    auto xs = sample_ordinals(120);
    // associativity of + and left distributivity of * over +
    for (std::size_t i = 0; i < xs.size(); i += 7)
        for (std::size_t j = 0; j < xs.size(); j += 11)
            for (std::size_t k = 0; k < xs.size(); k += 13) {
                const auto &a = xs[i], &b = xs[j], &c = xs[k];
                CHECK((a + b) + c == a + (b + c));
                CHECK(a * (b + c) == a * b + a * c);
            }
    // strict monotonicity in the right argument
    for (std::size_t i = 0; i < xs.size(); i += 5)
        for (std::size_t j = 0; j < xs.size(); j += 9)
            for (std::size_t k = 0; k < xs.size(); k += 9) {
                const auto &a = xs[i], &b = xs[j], &c = xs[k];
                if (b < c) {
                    CHECK(a + b < a + c);
                    if (!a.is_zero()) CHECK(a * b < a * c);
                }
            }
}

TEST_CASE("fundamental sequences increase strictly below their limit") {
    for (const auto& x : sample_ordinals(300)) {
        if (x.classify() != Ordinal::Kind::Limit) continue;
        Ordinal prev;
        for (std::uint64_t n = 1; n <= 6; ++n) {
            Ordinal fx = x.fundamental(n);
            CHECK(fx < x);
            if (n > 1) CHECK(prev < fx);
            prev = fx;
        }
    }
}

TEST_CASE("parse is a left inverse of format on 1000 ordinals") {
    auto xs = sample_ordinals(1000);
    CHECK(xs.size() == 1000);
    for (const auto& x : xs) CHECK(Ordinal::parse(x.str()) == x);
}
