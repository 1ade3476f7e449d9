#ifndef SCHREIER_BLOCKS_HPP
#define SCHREIER_BLOCKS_HPP

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "schreier/family.hpp"
#include "schreier/vec.hpp"

namespace schreier {

/**
 * Finitely supported probability measure on the positive integers with exact
 * rational weights.  The constructor validates positivity and that the
 * weights sum to exactly 1.
 */
class ProbMeasure {
  public:
    explicit ProbMeasure(std::map<int, Rat> weights);
    static ProbMeasure dirac(int i);

    const std::map<int, Rat>& weights() const { return weights_; }
    FiniteSet support() const;
    Rat at(int i) const;              // 0 off the support
    Rat mass(const FiniteSet& e) const;

    bool operator==(const ProbMeasure&) const = default;
    std::string str() const;

  private:
    std::map<int, Rat> weights_;
};

/**
 * A rule assigning to every sufficiently long prefix M a sequence of
 * probability measures with successive supports that tile M into maximal
 * members of a companion family.
 *
 *   dirac()                  point masses at the prefix elements; the
 *                            companion family consists of the singletons.
 *   repeated_averages(xi)    iterated averaging to stage xi; the companion
 *                            family is schreier(xi).  Stage 0 is the point
 *                            mass again; stage gamma+1 averages M(1) many
 *                            stage-gamma measures over successive tails;
 *                            limit stages delegate to stage xi[M(1)].
 */
class BlockExpr {
  public:
    static BlockExpr dirac() { return BlockExpr(true, Ordinal::nat(0)); }
    static BlockExpr repeated_averages(const Ordinal& xi) { return BlockExpr(false, xi); }

    bool is_dirac() const { return dirac_; }
    const Ordinal& stage() const { return xi_; } // averaging stage; 0 for dirac
    Family companion() const;

    std::string str() const;
    static BlockExpr parse(const std::string& text);

  private:
    BlockExpr(bool dirac, Ordinal xi) : dirac_(dirac), xi_(std::move(xi)) {}
    bool dirac_;
    Ordinal xi_;
};

// The n-th measure of the block rule on M (1-based).  Measures consume
// successive chunks of the prefix: the support of the first is the maximal
// initial segment of M in the companion family, later ones are computed on
// the tail past the earlier supports.
ProbMeasure measure(const BlockExpr& block, const Prefix& m, int n, Budget& budget);

// The measures attached to the successive maximal companion blocks of F.
// They agree with measure() on any prefix extending F.
std::vector<ProbMeasure> measures_for(const BlockExpr& block, const FiniteSet& f,
                                      Budget& budget);

// Sum of f against all block measures of F: sum_n sum_i f(i) P_{F,n}(i).
Rat expect(const BlockExpr& block, const FiniteSet& f, const std::map<int, Rat>& values,
           Budget& budget);

// Averaged vectors sum_i P_{M,n}(i) x_i for n = 1..count (resp. per block
// of F).  xs maps the index i to the vector x_i; missing indices raise.
std::vector<VecQ> convex_block(const BlockExpr& block, const Prefix& m, int count,
                               const std::map<int, VecQ>& xs, Budget& budget);
std::vector<VecQ> convex_block(const BlockExpr& block, const FiniteSet& f,
                               const std::map<int, VecQ>& xs, Budget& budget);

// P_{M,1}(E), exactly.
Rat set_mass(const BlockExpr& block, const Prefix& m, const FiniteSet& e, Budget& budget);

struct ThinReport {
    Prefix m = Prefix::explicit_only({}); // the chosen sub-prefix
    struct Sample {
        std::string name;
        bool pass = false;
        std::string detail;
    };
    std::vector<Sample> samples;
    bool passed = false;
};

// A sub-prefix M of L along which every measure of every N inside M has
// atoms at most deltas[n-1] for the n-th measure.  Greedy construction: the
// k-th chosen element is the first element of L at least 1/deltas[k-1],
// which suffices because the largest atom of an averaged measure is at most
// 1/N(1) and the n-th measure of N inside M starts at or beyond M(n).  The
// report records spot checks of sampled N; a sample only fails on a genuine
// atom violation, while probes cut short by their work cap or by a sample
// running out of elements stay green with the cutoff noted in detail.
ThinReport thin_for_small_coefficients(const BlockExpr& block, const Prefix& l,
                                       const std::vector<Rat>& deltas, Budget& budget);

struct AxiomReport {
    struct Item {
        std::string check;
        bool pass = false;
        std::string detail;
    };
    std::vector<Item> items;
    bool all_pass() const;
};

using MeasureFn =
    std::function<ProbMeasure(const BlockExpr&, const Prefix&, int, Budget&)>;

// Checks, for each sample (M, r): that the first support is the maximal
// initial segment of M in the companion family, and that rebuilding a prefix
// N from the first r supports plus fresh later elements reproduces the same
// r measures.  An override measure function can be injected to prove the
// checker catches corrupted tables.
AxiomReport verify_axioms(const BlockExpr& block,
                          const std::vector<std::pair<Prefix, int>>& samples,
                          Budget& budget, const MeasureFn* override_measure = nullptr);

} // namespace schreier

#endif
