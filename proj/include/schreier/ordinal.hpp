#ifndef SCHREIER_ORDINAL_HPP
#define SCHREIER_ORDINAL_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace schreier {

/**
 * Ordinal below epsilon_0 in Cantor normal form: a finite sum
 * w^e1*c1 + ... + w^ek*ck with e1 > e2 > ... > ek and every ck >= 1.
 * The empty sum is 0.  Exponents are Ordinals themselves; coefficients are
 * plain machine integers, which is ample at the truncation scales used here.
 *
 * Arithmetic is the usual non-commutative ordinal addition/multiplication.
 * Division and exponentiation beyond the w^a constructor are out of scope.
 */
class Ordinal {
  public:
    struct Term;

    Ordinal() = default; // zero

    static Ordinal nat(std::uint64_t n);
    static Ordinal omega();
    // w^exp * coeff (coeff >= 1)
    static Ordinal power(const Ordinal& exp, std::uint64_t coeff = 1);

    bool is_zero() const { return terms_.empty(); }
    bool is_finite() const;
    std::uint64_t as_nat() const; // requires is_finite()

    enum class Kind { Zero, Successor, Limit };
    Kind classify() const;
    Ordinal predecessor() const; // requires Successor

    // Canonical fundamental sequence of a limit ordinal, n >= 1:
    //   tail w^(g+1)*c -> replace the final copy of w^(g+1) by w^g * n,
    //   tail w^g*c with g limit -> replace it by w^(g[n]).
    // Strictly increasing in n with supremum equal to *this.
    Ordinal fundamental(std::uint64_t n) const;

    friend Ordinal operator+(const Ordinal& a, const Ordinal& b);
    friend Ordinal operator*(const Ordinal& a, const Ordinal& b);

    std::strong_ordering operator<=>(const Ordinal& o) const;
    bool operator==(const Ordinal& o) const;

    const std::vector<Term>& terms() const { return terms_; }

    // Notation: "0", "5", "w", "w*3", "w^2*3+w+1", "w^w", "w^(w+1)*2", ...
    // Exponents that are sums or carry coefficients are parenthesized.
    std::string str() const;
    static Ordinal parse(const std::string& text);

  private:
    std::vector<Term> terms_;
    void normalize_check() const; // debug invariant: decreasing exponents
};

struct Ordinal::Term {
    Ordinal exp;
    std::uint64_t coeff = 1;
};

} // namespace schreier

#endif
