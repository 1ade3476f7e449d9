#include "schreier/scalar.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "schreier/errors.hpp"

namespace schreier {

Int nth_root_floor(const Int& n, int k) {
    if (n < 0) throw InvalidArgument("nth_root_floor needs n >= 0");
    if (k < 1) throw InvalidArgument("nth_root_floor needs k >= 1");
    if (k == 1 || n <= 1) return n;
    Int lo = 0, hi = n;
    while (lo < hi) {
        Int mid = (lo + hi + 1) / 2;
        Int p = 1;
        bool over = false;
        for (int i = 0; i < k; ++i) {
            p *= mid;
            if (p > n) {
                over = true;
                break;
            }
        }
        if (over)
            hi = mid - 1;
        else
            lo = mid;
    }
    return lo;
}

Scalar Scalar::rational(Rat v) {
    Scalar s;
    s.exact_ = true;
    s.approx_ = to_double(v);
    s.radicand_ = std::move(v);
    s.root_ = 1;
    return s;
}

Scalar Scalar::root_of(Rat radicand, int root) {
    if (radicand < 0) throw InvalidArgument("root_of needs a nonnegative radicand");
    if (root < 1) throw InvalidArgument("root_of needs root >= 1");
    Int num = boost::multiprecision::numerator(radicand);
    Int den = boost::multiprecision::denominator(radicand);
    Int rn = nth_root_floor(num, root);
    Int rd = nth_root_floor(den, root);
    Int pn = 1, pd = 1;
    for (int i = 0; i < root; ++i) {
        pn *= rn;
        pd *= rd;
    }
    if (pn == num && pd == den) return rational(Rat(rn, rd));
    Scalar s;
    s.exact_ = true;
    s.approx_ = std::pow(to_double(radicand), 1.0 / root);
    s.radicand_ = std::move(radicand);
    s.root_ = root;
    return s;
}

Scalar Scalar::floating(double v) {
    Scalar s;
    s.exact_ = false;
    s.radicand_ = 0;
    s.root_ = 1;
    s.approx_ = v;
    return s;
}

std::string Scalar::str() const {
    if (exact_ && root_ == 1) return rat_str(radicand_);
    if (exact_) {
        std::ostringstream out;
        out << "(" << rat_str(radicand_) << ")^(1/" << root_ << ")";
        return out.str();
    }
    std::ostringstream out;
    out.precision(12);
    out << approx_;
    return out.str();
}

int scalar_cmp(const Scalar& a, const Scalar& b) {
    if (a.is_exact() && b.is_exact()) {
        // a = ra^(1/ka), b = rb^(1/kb); both nonnegative except plain
        // rationals, which may be negative but then have root 1.
        int ka = a.root(), kb = b.root();
        if (ka == 1 && kb == 1)
            return a.radicand() < b.radicand() ? -1 : (a.radicand() == b.radicand() ? 0 : 1);
        if (a.radicand() < 0) return -1; // negative rational vs a root (>= 0)
        if (b.radicand() < 0) return 1;
        int l = std::lcm(ka, kb);
        Rat pa = rat_pow(a.radicand(), l / ka);
        Rat pb = rat_pow(b.radicand(), l / kb);
        return pa < pb ? -1 : (pa == pb ? 0 : 1);
    }
    if (a.value() < b.value()) return -1;
    if (a.value() > b.value()) return 1;
    return 0;
}

bool scalar_lt(const Scalar& a, const Scalar& b) { return scalar_cmp(a, b) < 0; }
bool scalar_eq(const Scalar& a, const Scalar& b) { return scalar_cmp(a, b) == 0; }

Scalar scalar_max(const Scalar& a, const Scalar& b) { return scalar_lt(a, b) ? b : a; }

Scalar scalar_scale(const Rat& c, const Scalar& s) {
    if (c < 0) throw InvalidArgument("scalar_scale needs c >= 0");
    if (s.is_exact()) {
        if (s.root() == 1) return Scalar::rational(c * s.radicand());
        return Scalar::root_of(rat_pow(c, s.root()) * s.radicand(), s.root());
    }
    return Scalar::floating(to_double(c) * s.value());
}

} // namespace schreier
