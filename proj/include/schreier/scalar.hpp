#ifndef SCHREIER_SCALAR_HPP
#define SCHREIER_SCALAR_HPP

#include <string>

#include "schreier/rational.hpp"

namespace schreier {

// Norm values.  Most of the norms here evaluate to a rational or to a q-th
// root of a rational (l2 norms, q-convexified norms), so we carry that form
// and fall back to a double only where a genuinely transcendental power is
// involved (general lp).  Exactness survives max/scale; anything else drops
// to the double.
class Scalar {
  public:
    Scalar() : exact_(true), radicand_(0), root_(1), approx_(0.0) {}

    static Scalar rational(Rat v);
    // value = radicand^(1/root); radicand must be >= 0.  Perfect powers are
    // normalized back to plain rationals so str() stays readable.
    static Scalar root_of(Rat radicand, int root);
    static Scalar floating(double v);

    bool is_exact() const { return exact_; }
    double value() const { return approx_; }
    // Only meaningful when exact; value = radicand()^(1/root()).
    const Rat& radicand() const { return radicand_; }
    int root() const { return root_; }

    // "5/2", "(3/4)^(1/2)", or a decimal for float-path values.
    std::string str() const;

  private:
    bool exact_;
    Rat radicand_;
    int root_;
    double approx_;
};

// Total order; exact vs exact compares algebraically (cross-powering the
// radicands), mixed comparisons use the doubles.
int scalar_cmp(const Scalar& a, const Scalar& b);
bool scalar_lt(const Scalar& a, const Scalar& b);
bool scalar_eq(const Scalar& a, const Scalar& b);
Scalar scalar_max(const Scalar& a, const Scalar& b);

// c * s for c >= 0, staying exact when s is.
Scalar scalar_scale(const Rat& c, const Scalar& s);

// Floor of the k-th root, and exact detection: nth_root_floor(n, k)^k == n
// iff n is a perfect k-th power.
Int nth_root_floor(const Int& n, int k);

} // namespace schreier

#endif
