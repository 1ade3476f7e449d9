#ifndef SCHREIER_FAMILY_HPP
#define SCHREIER_FAMILY_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "schreier/budget.hpp"
#include "schreier/ordinal.hpp"
#include "schreier/prefix.hpp"

namespace schreier {

struct FamilyNode;

/**
 * Immutable handle to a compact hereditary family of finite sets, described
 * symbolically.  Membership and maximality are decided by recursion on the
 * description; the recursive built-ins memoize per node.
 *
 * Built-ins (xi an ordinal below epsilon_0):
 *   fine_schreier(xi)   cardinality-style hierarchy: F_0 = {0}, at xi+1 a set
 *                       joins by removing its minimum, at limits a set of
 *                       minimum m joins via stage xi[n] for some n <= m.
 *   schreier(xi)        block-style hierarchy: S_0 = sets of size <= 1, at
 *                       xi+1 a set splits into at most min F many successive
 *                       S_xi blocks, limits as above.
 *   compose(F, P)       F[P]: unions of successive nonempty P-blocks whose
 *                       minima form a member of F.
 *   compose_rel(F,P,M)  F^M[P]: blocks inside M, minima in the image F(M).
 *   image(F, M)         F(M) = {M(H) : H in F}.
 *   restrict(F, M)      members of F contained in M.
 *   pair(F, G)          {A u B : A < B, A in F, B in G}.
 *   tensor_pow(F, m)    F, F[F], F[F[F]], ...
 *
 * fine_schreier_omega1() is an index sentinel: contains() is constantly true,
 * is_maximal() constantly false, and rank/materialize refuse it.
 */
class Family {
  public:
    static Family fine_schreier(const Ordinal& xi);
    static Family fine_schreier_omega1();
    static Family schreier(const Ordinal& xi);
    static Family singletons();
    static Family all_finite();
    static Family compose(const Family& outer, const Family& inner);
    static Family compose_rel(const Family& outer, const Family& inner, const Prefix& m);
    static Family image(const Family& f, const Prefix& m);
    static Family restrict(const Family& f, const Prefix& m);
    static Family pair(const Family& f, const Family& g);
    static Family tensor_pow(const Family& f, int m);
    // members must be hereditary (validated); ground is the universe bound
    static Family explicit_family(std::vector<FiniteSet> members, int ground);

    const FamilyNode& node() const { return *p_; }
    const void* id() const { return p_.get(); }

    std::string str() const;
    static Family parse(const std::string& text);

  private:
    std::shared_ptr<const FamilyNode> p_;
    explicit Family(std::shared_ptr<const FamilyNode> p) : p_(std::move(p)) {}
};

// Membership of F in the family.
bool family_contains(const Family& fam, const FiniteSet& f, Budget& budget);

// Maximality of a member: no proper superset inside the family.  Decided by
// the single-extension test (valid for the spreading built-ins; relative
// families extend within their prefix, explicit ones exhaustively).
// Non-members are reported as not maximal.
bool family_is_maximal(const Family& fam, const FiniteSet& f, Budget& budget);

// Longest initial segment M(1..k) of the prefix that belongs to the family.
FiniteSet initial_segment(const Family& fam, const Prefix& m, Budget& budget);

// Split F into successive maximal blocks of P (greedy longest prefix, which
// is the only candidate since no proper superset of a maximal member is a
// member).  Throws NotDecomposable.
std::vector<FiniteSet> decompose(const Family& p, const FiniteSet& f, Budget& budget);
std::optional<std::vector<FiniteSet>> try_decompose(const Family& p, const FiniteSet& f,
                                                    Budget& budget);

// All members inside {1..bound} as an explicit family (family must be
// hereditary, which all built-ins are).
Family materialize(const Family& fam, int bound, Budget& budget);

// Iterated removal of maximal-by-extension members until the explicit family
// is exhausted; returns the number of rounds ({0} alone has rank 1).
int tree_rank(const Family& explicit_fam, Budget& budget);

// Smallest l such that every member of fine_schreier(zeta) inside {l+1..bound}
// belongs to fine_schreier(xi).
int almost_monotone_threshold(const Ordinal& zeta, const Ordinal& xi, int bound,
                              Budget& budget);

} // namespace schreier

#endif
