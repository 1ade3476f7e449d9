#include <doctest.h>

#include "schreier/blocks.hpp"
#include "schreier/errors.hpp"

using namespace schreier;

namespace {

ProbMeasure pm(std::map<int, Rat> w) { return ProbMeasure(std::move(w)); }

Rat max_atom(const ProbMeasure& mu) {
    Rat best = 0;
    for (const auto& [i, p] : mu.weights())
        if (p > best) best = p;
    return best;
}

} // namespace

TEST_CASE("measure validation") {
    CHECK_THROWS_AS(pm({}), InvalidArgument);
    CHECK_THROWS_AS(pm({{2, Rat(1, 2)}}), InvalidArgument);
    CHECK_THROWS_AS(pm({{2, Rat(1, 2)}, {3, Rat(2, 3)}}), InvalidArgument);
    CHECK_THROWS_AS(pm({{2, Rat(3, 2)}, {3, Rat(-1, 2)}}), InvalidArgument);
    ProbMeasure ok = pm({{2, Rat(1, 2)}, {5, Rat(1, 2)}});
    CHECK(ok.support().str() == "2,5");
    CHECK(ok.at(2) == Rat(1, 2));
    CHECK(ok.at(3) == 0);
    CHECK(ok.mass(FiniteSet({2, 3})) == Rat(1, 2));
    CHECK(ok.str() == "{2:1/2, 5:1/2}");
}

TEST_CASE("point-mass rule picks prefix elements") {
    Budget b;
    BlockExpr d = BlockExpr::dirac();
    Prefix m = Prefix::parse("2,5,9,...");
    CHECK(measure(d, m, 2, b) == ProbMeasure::dirac(5));
    CHECK(measure(d, m, 1, b) == ProbMeasure::dirac(2));
    CHECK(measure(d, m, 3, b) == ProbMeasure::dirac(9));
    CHECK(d.companion().str() == "F(1)");
    auto ms = measures_for(d, FiniteSet({5}), b);
    REQUIRE(ms.size() == 1);
    CHECK(ms[0] == ProbMeasure::dirac(5));
    CHECK(expect(d, FiniteSet({2, 5}), {{2, Rat(3)}, {5, Rat(7)}}, b) == 10);
}

TEST_CASE("first averaging stage spreads mass over the initial segment") {
    Budget b;
    BlockExpr ra1 = BlockExpr::repeated_averages(Ordinal::nat(1));
    Prefix m = Prefix::parse("3,7,8,+arith:3");
    ProbMeasure mu = measure(ra1, m, 1, b);
    CHECK(mu == pm({{3, Rat(1, 3)}, {7, Rat(1, 3)}, {8, Rat(1, 3)}}));
    CHECK(mu.support() == initial_segment(ra1.companion(), m, b));

    Prefix ints = Prefix::integers_from(2);
    CHECK(measure(ra1, ints, 2, b) ==
          pm({{4, Rat(1, 4)}, {5, Rat(1, 4)}, {6, Rat(1, 4)}, {7, Rat(1, 4)}}));
}

TEST_CASE("second averaging stage splits into two uneven halves") {
    Budget b;
    BlockExpr ra2 = BlockExpr::repeated_averages(Ordinal::nat(2));
    Prefix m = Prefix::integers_from(2);
    ProbMeasure mu = measure(ra2, m, 1, b);
    CHECK(mu == pm({{2, Rat(1, 4)},
                    {3, Rat(1, 4)},
                    {4, Rat(1, 8)},
                    {5, Rat(1, 8)},
                    {6, Rat(1, 8)},
                    {7, Rat(1, 8)}}));
    CHECK(set_mass(ra2, m, FiniteSet({2, 4}), b) == Rat(3, 8));
    CHECK(set_mass(ra2, m, FiniteSet({8, 9}), b) == 0);
    CHECK(set_mass(ra2, m, FiniteSet({2, 3, 4, 5, 6, 7}), b) == 1);
    CHECK(set_mass(ra2, m, FiniteSet({1, 2, 3, 4, 5, 6, 7, 9}), b) == 1);
}

TEST_CASE("limit stages delegate along the canonical sequence") {
    Budget b;
    BlockExpr raw = BlockExpr::repeated_averages(Ordinal::omega());
    BlockExpr ra2 = BlockExpr::repeated_averages(Ordinal::nat(2));
    CHECK(measure(raw, Prefix::integers_from(2), 1, b) ==
          measure(ra2, Prefix::integers_from(2), 1, b));
    // the first element picks the finite stage, not the position of the prefix
    Prefix shifted = Prefix::parse("2,5,6,+arith:1");
    CHECK(measure(raw, shifted, 1, b) == measure(ra2, shifted, 1, b));
}

TEST_CASE("block measures attach to decomposable sets") {
    Budget b;
    BlockExpr ra1 = BlockExpr::repeated_averages(Ordinal::nat(1));
    auto ms = measures_for(ra1, FiniteSet({2, 3, 4, 5, 6, 7}), b);
    REQUIRE(ms.size() == 2);
    CHECK(ms[0] == pm({{2, Rat(1, 2)}, {3, Rat(1, 2)}}));
    CHECK(ms[1] == pm({{4, Rat(1, 4)}, {5, Rat(1, 4)}, {6, Rat(1, 4)}, {7, Rat(1, 4)}}));
    CHECK_THROWS_AS(measures_for(ra1, FiniteSet({3, 4}), b), NotDecomposable);
    // the greedy first block (2,3) fits, but the leftover (4,5,6) still extends
    CHECK_THROWS_AS(measures_for(ra1, FiniteSet({2, 3, 4, 5, 6}), b), NotDecomposable);

    BlockExpr ra2 = BlockExpr::repeated_averages(Ordinal::nat(2));
    auto m2 = measures_for(ra2, FiniteSet({2, 3, 4, 5, 6, 7}), b);
    REQUIRE(m2.size() == 1);
    CHECK(m2[0].at(2) == Rat(1, 4));
    CHECK(m2[0].at(7) == Rat(1, 8));
}

TEST_CASE("expectations against block measures") {
    Budget b;
    BlockExpr ra1 = BlockExpr::repeated_averages(Ordinal::nat(1));
    FiniteSet f({2, 3, 4, 5, 6, 7});
    std::map<int, Rat> ones;
    for (int i : f.values()) ones[i] = 1;
    CHECK(expect(ra1, f, ones, b) == 2); // one per block
    CHECK(expect(ra1, f,
                 {{2, Rat(1)}, {3, Rat(0)}, {4, Rat(8)}, {5, Rat(0)}, {6, Rat(0)},
                  {7, Rat(0)}},
                 b) == Rat(5, 2));
    CHECK_THROWS_AS(expect(ra1, f, {{2, Rat(1)}}, b), InvalidArgument);
}

TEST_CASE("averaged vectors") {
    Budget b;
    BlockExpr ra1 = BlockExpr::repeated_averages(Ordinal::nat(1));
    std::map<int, VecQ> units;
    for (int i = 1; i <= 12; ++i) units[i] = VecQ::unit(i);
    auto vs = convex_block(ra1, FiniteSet({2, 3, 4, 5, 6, 7}), units, b);
    REQUIRE(vs.size() == 2);
    CHECK(vs[0].at(2) == Rat(1, 2));
    CHECK(vs[0].at(3) == Rat(1, 2));
    CHECK(vs[0].at(4) == 0);
    CHECK(vs[1].at(4) == Rat(1, 4));
    CHECK(vs[1].support().str() == "4,5,6,7");

    // the point-mass rule just reads off the subsequence
    auto sub = convex_block(BlockExpr::dirac(), Prefix::parse("2,5,9,..."), 3, units, b);
    REQUIRE(sub.size() == 3);
    CHECK(sub[0] == VecQ::unit(2));
    CHECK(sub[1] == VecQ::unit(5));
    CHECK(sub[2] == VecQ::unit(9));

    std::map<int, VecQ> zeros;
    for (int i = 1; i <= 12; ++i) zeros[i] = VecQ();
    for (const auto& v : convex_block(ra1, Prefix::integers_from(2), 2, zeros, b))
        CHECK(v.zero());
}

TEST_CASE("supports tile the prefix into successive maximal blocks") {
    Budget b;
    auto tile = [&](const Ordinal& xi, int depth) {
        BlockExpr ra = BlockExpr::repeated_averages(xi);
        Prefix m = Prefix::integers_from(2);
        Family comp = ra.companion();
        std::vector<int> seen;
        Prefix cur = m;
        for (int n = 1; n <= depth; ++n) {
            ProbMeasure mu = measure(ra, m, n, b);
            CHECK(mu.support() == initial_segment(comp, cur, b));
            CHECK(family_is_maximal(comp, mu.support(), b));
            for (int i : seen) CHECK(mu.at(i) == 0); // disjoint from earlier supports
            FiniteSet sup = mu.support();
            for (int i : sup.values()) seen.push_back(i);
            cur = cur.advanced(mu.weights().size());
        }
    };
    tile(Ordinal::nat(1), 3);
    tile(Ordinal::nat(2), 2);
    // later limit-stage measures delegate to enormous finite stages; only the
    // first one is desk-scale
    tile(Ordinal::omega(), 1);
}

TEST_CASE("axiom checks pass for the built-in rules") {
    Budget b;
    std::vector<std::pair<Prefix, int>> light = {
        {Prefix::integers_from(2), 3},
        {Prefix::integers_from(5), 2},
        {Prefix::parse("3,7,8,+arith:3"), 2},
        {Prefix::parse("2,4,+geom:3/2"), 2},
    };
    CHECK(verify_axioms(BlockExpr::dirac(), light, b).all_pass());
    CHECK(verify_axioms(BlockExpr::repeated_averages(Ordinal::nat(1)), light, b)
              .all_pass());
    std::vector<std::pair<Prefix, int>> medium = {
        {Prefix::integers_from(2), 2},
        {Prefix::parse("3,4,5,..."), 1},
        {Prefix::parse("2,7,9,+arith:2"), 1},
    };
    CHECK(verify_axioms(BlockExpr::repeated_averages(Ordinal::nat(2)), medium, b)
              .all_pass());
    std::vector<std::pair<Prefix, int>> heavy = {{Prefix::integers_from(2), 1}};
    CHECK(verify_axioms(BlockExpr::repeated_averages(Ordinal::nat(3)), heavy, b)
              .all_pass());
    CHECK(verify_axioms(BlockExpr::repeated_averages(Ordinal::omega()), heavy, b)
              .all_pass());
}

TEST_CASE("axiom checker catches corrupted measure tables") {
    Budget b;
    BlockExpr ra2 = BlockExpr::repeated_averages(Ordinal::nat(2));
    std::vector<std::pair<Prefix, int>> samples = {{Prefix::integers_from(2), 2}};

    // wrong support: always a point mass
    MeasureFn point_mass = [](const BlockExpr&, const Prefix& m, int n, Budget&) {
        return ProbMeasure::dirac(m.at((std::size_t)n));
    };
    AxiomReport r1 = verify_axioms(ra2, samples, b, &point_mass);
    CHECK_FALSE(r1.all_pass());
    bool support_failed = false;
    for (const auto& it : r1.items)
        if (it.check.rfind("support", 0) == 0 && !it.pass && !it.detail.empty())
            support_failed = true;
    CHECK(support_failed);

    // right values on natural prefixes, corrupted on rebuilt ones
    MeasureFn sneaky = [](const BlockExpr& blk, const Prefix& m, int n, Budget& bb) {
        ProbMeasure mu = measure(blk, m, n, bb);
        if (m.explicit_count() < 4) return mu;
        auto w = mu.weights();
        auto first = w.begin();
        auto second = std::next(first);
        second->second += first->second / 2;
        first->second /= 2;
        return ProbMeasure(std::move(w));
    };
    AxiomReport r2 = verify_axioms(ra2, samples, b, &sneaky);
    bool permanence_failed = false;
    for (const auto& it : r2.items)
        if (it.check.rfind("permanence", 0) == 0 && !it.pass && !it.detail.empty())
            permanence_failed = true;
    CHECK(permanence_failed);
}

TEST_CASE("atoms never exceed the reciprocal of the first element") {
    Budget b;
    BlockExpr ra1 = BlockExpr::repeated_averages(Ordinal::nat(1));
    for (int start = 2; start <= 9; ++start) {
        for (int step = 1; step <= 3; ++step) {
            Prefix m = Prefix::with_arithmetic_tail({start}, start + step, step);
            CHECK(max_atom(measure(ra1, m, 1, b)) <= Rat(1, start));
            ProbMeasure second = measure(ra1, m, 2, b);
            CHECK(max_atom(second) <= Rat(1, second.support().min()));
        }
    }
    BlockExpr ra2 = BlockExpr::repeated_averages(Ordinal::nat(2));
    for (int start = 2; start <= 7; ++start) {
        for (int step = 1; step <= 2; ++step) {
            Prefix m = Prefix::with_arithmetic_tail({start}, start + step, step);
            CHECK(max_atom(measure(ra2, m, 1, b)) <= Rat(1, start));
        }
    }
    ProbMeasure second2 = measure(ra2, Prefix::integers_from(2), 2, b);
    CHECK(max_atom(second2) <= Rat(1, 8));
    BlockExpr ra3 = BlockExpr::repeated_averages(Ordinal::nat(3));
    for (const char* text : {"2,...", "2,4,5,..."}) {
        Prefix m = Prefix::parse(text);
        CHECK(max_atom(measure(ra3, m, 1, b)) <= Rat(1, 2));
    }
}

TEST_CASE("thinning returns a certified sub-prefix") {
    Budget b;
    BlockExpr ra1 = BlockExpr::repeated_averages(Ordinal::nat(1));
    ThinReport r =
        thin_for_small_coefficients(ra1, Prefix::integers_from(1),
                                    {Rat(1, 10), Rat(1, 10), Rat(1, 10)}, b);
    CHECK(r.passed);
    CHECK(r.m.at(1) == 10);
    CHECK(r.m.at(2) == 11);

    BlockExpr ra2 = BlockExpr::repeated_averages(Ordinal::nat(2));
    ThinReport r2 = thin_for_small_coefficients(ra2, Prefix::integers_from(1),
                                                {Rat(1, 4), Rat(1, 8)}, b);
    CHECK(r2.passed);
    CHECK(r2.m.at(1) == 4);
    CHECK(r2.m.at(2) == 8);

    // thresholds of 1 keep the original prefix
    ThinReport r3 = thin_for_small_coefficients(ra1, Prefix::integers_from(3),
                                                {Rat(1), Rat(1)}, b);
    CHECK(r3.passed);
    CHECK(r3.m.take(4) == Prefix::integers_from(3).take(4));

    CHECK_THROWS_AS(thin_for_small_coefficients(BlockExpr::dirac(),
                                                Prefix::integers_from(1), {Rat(1, 2)}, b),
                    InvalidArgument);
    CHECK_THROWS_AS(thin_for_small_coefficients(
                        ra1, Prefix::explicit_only({2, 3}), {Rat(1, 10)}, b),
                    InsufficientPrefix);
}

TEST_CASE("block rule notation round trips") {
    for (const char* text : {"dirac", "avg(1)", "avg(w)", "avg(w^2+1)"}) {
        BlockExpr e = BlockExpr::parse(text);
        CHECK(e.str() == text);
    }
    CHECK_THROWS_AS(BlockExpr::parse("avg()"), ParseError);
    CHECK_THROWS_AS(BlockExpr::parse("delta"), ParseError);
    CHECK(BlockExpr::parse("avg(w)").companion().str() == "S(w)");
}
