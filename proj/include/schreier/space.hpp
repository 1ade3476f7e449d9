#ifndef SCHREIER_SPACE_HPP
#define SCHREIER_SPACE_HPP

#include <memory>
#include <string>

#include "schreier/budget.hpp"
#include "schreier/ordinal.hpp"
#include "schreier/scalar.hpp"
#include "schreier/vec.hpp"

namespace schreier {

/**
 * Immutable description of a sequence space whose norm the library can
 * evaluate on finitely supported rational vectors.
 *
 * Notation (parse/str round trip):
 *   c0                      sup-norm
 *   l1, l2, l7/2, linf      lp norms, rational p >= 1 or infinity
 *   T(mu=1,theta=1/2)       the implicitly-normed space whose splittings are
 *                           governed by the counted-splitting family S_mu:
 *                           ||x|| = max(||x||_c0,
 *                                       sup theta * sum_n ||I_n x|| over
 *                                       successive intervals I_1 < ... < I_t
 *                                       with (min I_n)_n in S_mu)
 *   conv(T(...),q=2)        q-convexification: ||x|| = || (|x_i|^q)_i ||^(1/q)
 *   dual(T(...),N=10)       dual norm on coordinates {1..N}, evaluated over
 *                           the finite norming polytope
 *   hxi(l2,xi=1)            ||x|| = sup over successive sets E_1 < E_2 < ...
 *                           drawn from S_xi of || sum_n ||E_n x||_l1 *
 *                           e_(max E_n) ||_base; the search runs over subsets
 *                           of supp(x), the canonical representatives
 */
class SpaceExpr {
  public:
    enum class Kind { C0, Lp, Tsirelson, Convexify, DualOf, HXi };

    static SpaceExpr c0();
    static SpaceExpr lp(Rat p); // p >= 1
    static SpaceExpr lp_infinity();
    static SpaceExpr tsirelson(const Ordinal& mu, Rat theta);
    static SpaceExpr convexify(SpaceExpr base, Rat q); // q >= 1
    static SpaceExpr dual_of(SpaceExpr base, int ground);
    static SpaceExpr hxi(SpaceExpr base, const Ordinal& xi);

    Kind kind() const;
    bool lp_is_infinite() const;   // Lp only
    const Rat& p() const;          // finite Lp only
    const Ordinal& mu() const;     // Tsirelson
    const Rat& theta() const;      // Tsirelson
    const SpaceExpr& base() const; // Convexify / DualOf / HXi
    const Rat& q() const;          // Convexify
    int ground() const;            // DualOf
    const Ordinal& xi() const;     // HXi

    std::string str() const;
    static SpaceExpr parse(const std::string& text);

    bool operator==(const SpaceExpr& o) const;

  private:
    struct Node;
    std::shared_ptr<const Node> p_;
    explicit SpaceExpr(std::shared_ptr<const Node> p) : p_(std::move(p)) {}
};

/**
 * Norm of x in the given space.  Exact (rational or a root of a rational)
 * for c0, l1, integer-p lp, the splitting-governed spaces with rational
 * theta, their integer-q convexifications, and hxi over any of those;
 * float-path (tagged on the Scalar) for non-integer p or q.
 *
 * Throws BudgetExceeded when the splitting/selection searches outgrow the
 * budget and InvalidArgument for malformed inputs.
 */
Scalar space_norm(const SpaceExpr& space, const VecQ& x, Budget& budget);

} // namespace schreier

#endif
