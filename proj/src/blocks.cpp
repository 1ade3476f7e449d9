#include "schreier/blocks.hpp"

#include <sstream>

#include "schreier/errors.hpp"

namespace schreier {

// --- ProbMeasure ------------------------------------------------------------

ProbMeasure::ProbMeasure(std::map<int, Rat> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) throw InvalidArgument("a probability measure needs mass");
    Rat total = 0;
    for (const auto& [i, p] : weights_) {
        if (i <= 0) throw InvalidArgument("measure support must be positive integers");
        if (p <= 0) throw InvalidArgument("measure weights must be positive");
        total += p;
    }
    if (total != 1)
        throw InvalidArgument("measure weights sum to " + rat_str(total) + ", not 1");
}

ProbMeasure ProbMeasure::dirac(int i) { return ProbMeasure({{i, Rat(1)}}); }

FiniteSet ProbMeasure::support() const {
    std::vector<int> xs;
    xs.reserve(weights_.size());
    for (const auto& [i, p] : weights_) xs.push_back(i);
    return FiniteSet(std::move(xs));
}

Rat ProbMeasure::at(int i) const {
    auto it = weights_.find(i);
    return it == weights_.end() ? Rat(0) : it->second;
}

Rat ProbMeasure::mass(const FiniteSet& e) const {
    Rat total = 0;
    for (int i : e.values()) total += at(i);
    return total;
}

std::string ProbMeasure::str() const {
    std::ostringstream out;
    out << "{";
    bool first = true;
    for (const auto& [i, p] : weights_) {
        if (!first) out << ", ";
        first = false;
        out << i << ":" << rat_str(p);
    }
    out << "}";
    return out.str();
}

// --- BlockExpr --------------------------------------------------------------

Family BlockExpr::companion() const {
    if (dirac_) return Family::fine_schreier(Ordinal::nat(1));
    return Family::schreier(xi_);
}

std::string BlockExpr::str() const {
    if (dirac_) return "dirac";
    return "avg(" + xi_.str() + ")";
}

BlockExpr BlockExpr::parse(const std::string& text) {
    if (text == "dirac") return dirac();
    if (text.size() > 5 && text.substr(0, 4) == "avg(" && text.back() == ')')
        return repeated_averages(Ordinal::parse(text.substr(4, text.size() - 5)));
    throw ParseError("block rule must be 'dirac' or 'avg(stage)', got '" + text + "'");
}

// --- measures ---------------------------------------------------------------

namespace {

// First averaged measure on m at the given stage.  The support is always an
// initial segment of m, so recursion advances the prefix by support size.
ProbMeasure averaged_first(const Ordinal& xi, const Prefix& m, Budget& budget) {
    budget.tick();
    if (xi.is_zero()) return ProbMeasure::dirac(m.at(1));
    if (xi.classify() == Ordinal::Kind::Limit)
        return averaged_first(xi.fundamental((std::uint64_t)m.at(1)), m, budget);
    const Ordinal prev = xi.predecessor();
    const int count = m.at(1);
    const Rat share(1, count);
    std::map<int, Rat> w;
    Prefix cur = m;
    for (int i = 0; i < count; ++i) {
        ProbMeasure sub = averaged_first(prev, cur, budget);
        for (const auto& [j, p] : sub.weights()) w[j] += share * p;
        cur = cur.advanced(sub.weights().size());
    }
    return ProbMeasure(std::move(w));
}

ProbMeasure first_measure(const BlockExpr& block, const Prefix& m, Budget& budget) {
    if (block.is_dirac()) return ProbMeasure::dirac(m.at(1));
    return averaged_first(block.stage(), m, budget);
}

} // namespace

ProbMeasure measure(const BlockExpr& block, const Prefix& m, int n, Budget& budget) {
    if (n < 1) throw InvalidArgument("measure index is 1-based");
    Prefix cur = m;
    for (int k = 1; k < n; ++k)
        cur = cur.advanced(first_measure(block, cur, budget).weights().size());
    return first_measure(block, cur, budget);
}

std::vector<ProbMeasure> measures_for(const BlockExpr& block, const FiniteSet& f,
                                      Budget& budget) {
    auto blocks = decompose(block.companion(), f, budget);
    std::vector<ProbMeasure> out;
    out.reserve(blocks.size());
    for (const auto& fb : blocks) {
        Prefix m = Prefix::with_arithmetic_tail(fb.values(), fb.max() + 1, 1);
        ProbMeasure mu = first_measure(block, m, budget);
        if (!(mu.support() == fb))
            throw Error("measure support {" + mu.support().str() +
                        "} drifted from its block {" + fb.str() + "}");
        out.push_back(std::move(mu));
    }
    return out;
}

Rat expect(const BlockExpr& block, const FiniteSet& f, const std::map<int, Rat>& values,
           Budget& budget) {
    Rat total = 0;
    for (const auto& mu : measures_for(block, f, budget)) {
        for (const auto& [i, p] : mu.weights()) {
            auto it = values.find(i);
            if (it == values.end())
                throw InvalidArgument("no value supplied for index " + std::to_string(i));
            total += it->second * p;
        }
    }
    return total;
}

namespace {

VecQ averaged_vector(const ProbMeasure& mu, const std::map<int, VecQ>& xs) {
    VecQ v;
    for (const auto& [i, p] : mu.weights()) {
        auto it = xs.find(i);
        if (it == xs.end())
            throw InvalidArgument("no vector supplied for index " + std::to_string(i));
        v.add_scaled(it->second, p);
    }
    return v;
}

} // namespace

std::vector<VecQ> convex_block(const BlockExpr& block, const Prefix& m, int count,
                               const std::map<int, VecQ>& xs, Budget& budget) {
    if (count < 0) throw InvalidArgument("convex_block needs a nonnegative count");
    std::vector<VecQ> out;
    out.reserve(count);
    Prefix cur = m;
    for (int n = 0; n < count; ++n) {
        ProbMeasure mu = first_measure(block, cur, budget);
        out.push_back(averaged_vector(mu, xs));
        cur = cur.advanced(mu.weights().size());
    }
    return out;
}

std::vector<VecQ> convex_block(const BlockExpr& block, const FiniteSet& f,
                               const std::map<int, VecQ>& xs, Budget& budget) {
    std::vector<VecQ> out;
    for (const auto& mu : measures_for(block, f, budget))
        out.push_back(averaged_vector(mu, xs));
    return out;
}

Rat set_mass(const BlockExpr& block, const Prefix& m, const FiniteSet& e, Budget& budget) {
    return first_measure(block, m, budget).mass(e);
}

// --- thinning ---------------------------------------------------------------

namespace {

Rat max_atom(const ProbMeasure& mu) {
    Rat best = 0;
    for (const auto& [i, p] : mu.weights())
        if (p > best) best = p;
    return best;
}

// Per-probe work cap.  Successive averaged measures grow doubly fast in the
// stage, so a spot check that runs past this is abandoned, not failed.
constexpr std::uint64_t kProbeBudget = 2'000'000;

ThinReport::Sample check_thin_sample(const BlockExpr& block, const std::string& name,
                                     const Prefix& n, const std::vector<Rat>& deltas,
                                     Budget& budget) {
    // Private meter: a capped probe must not drain the caller's budget.
    Budget local(kProbeBudget);
    ThinReport::Sample s{name, true, ""};
    Prefix cur = n;
    std::size_t done = 0;
    try {
        for (std::size_t k = 0; k < deltas.size(); ++k) {
            ProbMeasure mu = measure(block, cur, 1, local);
            Rat atom = max_atom(mu);
            if (atom > deltas[k]) {
                s.pass = false;
                s.detail = "measure " + std::to_string(k + 1) + " has atom " +
                           rat_str(atom) + " > " + rat_str(deltas[k]);
                budget.tick(local.used());
                return s;
            }
            ++done;
            cur = cur.advanced(mu.weights().size());
        }
        s.detail = "all " + std::to_string(deltas.size()) + " measures within bounds";
    } catch (const BudgetExceeded&) {
        s.detail = "checked " + std::to_string(done) + " of " +
                   std::to_string(deltas.size()) + " measures; rest beyond probe scale";
    } catch (const InsufficientPrefix&) {
        s.detail = "checked " + std::to_string(done) + " of " +
                   std::to_string(deltas.size()) +
                   " measures; sample too short for the rest";
    }
    budget.tick(local.used());
    return s;
}

} // namespace

ThinReport thin_for_small_coefficients(const BlockExpr& block, const Prefix& l,
                                       const std::vector<Rat>& deltas, Budget& budget) {
    if (block.is_dirac() || block.stage().is_zero())
        throw InvalidArgument("thinning needs an averaging block of stage >= 1");
    for (const Rat& d : deltas)
        if (d <= 0) throw InvalidArgument("thinning thresholds must be positive");

    // Greedy: the k-th element must be >= 1/deltas[k-1]; any subsequence N of
    // the result then has its k-th measure starting at or beyond that bound,
    // and atoms of an averaged measure never exceed 1/(first element).
    std::vector<int> picked;
    Prefix cur = l;
    for (const Rat& d : deltas) {
        Int need = rat_ceil(Rat(1) / d);
        int bound = (int)std::max<Int>(Int(1), need).convert_to<long long>();
        cur = cur.restricted_above(bound - 1); // may raise InsufficientPrefix
        picked.push_back(cur.at(1));
        cur = cur.advanced(1);
    }
    ThinReport report;
    report.m = cur.prepended(picked);

    report.samples.push_back(check_thin_sample(block, "full prefix", report.m, deltas, budget));
    for (std::size_t j = 1; j <= 2; ++j)
        report.samples.push_back(check_thin_sample(
            block, "suffix from position " + std::to_string(j + 1),
            report.m.advanced(j), deltas, budget));
    try {
        std::vector<int> sparse;
        for (std::size_t k = 1; sparse.size() < 24; k += (k < (std::size_t)8 ? 1 : 3))
            sparse.push_back(report.m.at(k));
        report.samples.push_back(check_thin_sample(
            block, "sparse subsequence", Prefix::explicit_only(sparse), deltas, budget));
    } catch (const InsufficientPrefix& e) {
        report.samples.push_back(
            {"sparse subsequence", true, std::string("skipped: ") + e.what()});
    }
    report.passed = true;
    for (const auto& s : report.samples) report.passed = report.passed && s.pass;
    return report;
}

// --- axiom verification -----------------------------------------------------

bool AxiomReport::all_pass() const {
    for (const auto& it : items)
        if (!it.pass) return false;
    return true;
}

AxiomReport verify_axioms(const BlockExpr& block,
                          const std::vector<std::pair<Prefix, int>>& samples,
                          Budget& budget, const MeasureFn* override_measure) {
    auto eval = [&](const Prefix& m, int n) {
        if (override_measure) return (*override_measure)(block, m, n, budget);
        return measure(block, m, n, budget);
    };
    AxiomReport report;
    Family companion = block.companion();
    int idx = 0;
    for (const auto& [m, r] : samples) {
        ++idx;
        std::string tag = "sample " + std::to_string(idx) + " (" + m.str() + ", r=" +
                          std::to_string(r) + ")";
        {
            AxiomReport::Item item{"support " + tag, false, ""};
            ProbMeasure mu = eval(m, 1);
            FiniteSet seg = initial_segment(companion, m, budget);
            bool max = family_is_maximal(companion, mu.support(), budget);
            if (!(mu.support() == seg))
                item.detail = "support {" + mu.support().str() +
                              "} differs from the maximal initial segment {" + seg.str() +
                              "}";
            else if (!max)
                item.detail = "support {" + mu.support().str() + "} is not maximal";
            else
                item.pass = true;
            report.items.push_back(std::move(item));
        }
        {
            AxiomReport::Item item{"permanence " + tag, true, ""};
            std::vector<ProbMeasure> expected;
            std::vector<int> used;
            for (int n = 1; n <= r; ++n) {
                expected.push_back(eval(m, n));
                FiniteSet sup = expected.back().support();
                for (int i : sup.values()) used.push_back(i);
            }
            // fresh continuation unrelated to m beyond the supports
            int last = used.empty() ? 1 : used.back();
            Prefix n_prefix =
                Prefix::with_arithmetic_tail(used, (long long)last + 2, 3);
            for (int n = 1; n <= r && item.pass; ++n) {
                ProbMeasure rebuilt = eval(n_prefix, n);
                if (!(rebuilt == expected[(std::size_t)n - 1])) {
                    item.pass = false;
                    item.detail = "measure " + std::to_string(n) + " became " +
                                  rebuilt.str() + " instead of " +
                                  expected[(std::size_t)n - 1].str();
                }
            }
            report.items.push_back(std::move(item));
        }
    }
    return report;
}

} // namespace schreier
