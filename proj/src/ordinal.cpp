#include "schreier/ordinal.hpp"

#include <cassert>
#include <cctype>
#include <sstream>

#include "schreier/errors.hpp"

namespace schreier {

Ordinal Ordinal::nat(std::uint64_t n) {
    Ordinal o;
    if (n > 0) o.terms_.push_back(Term{Ordinal(), n});
    return o;
}

Ordinal Ordinal::omega() { return power(nat(1)); }

Ordinal Ordinal::power(const Ordinal& exp, std::uint64_t coeff) {
    if (coeff == 0) throw InvalidArgument("ordinal term with zero coefficient");
    Ordinal o;
    o.terms_.push_back(Term{exp, coeff});
    return o;
}

bool Ordinal::is_finite() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].exp.is_zero());
}

std::uint64_t Ordinal::as_nat() const {
    if (!is_finite()) throw InvalidArgument("as_nat on infinite ordinal " + str());
    return terms_.empty() ? 0 : terms_[0].coeff;
}

Ordinal::Kind Ordinal::classify() const {
    if (terms_.empty()) return Kind::Zero;
    return terms_.back().exp.is_zero() ? Kind::Successor : Kind::Limit;
}

Ordinal Ordinal::predecessor() const {
    if (classify() != Kind::Successor)
        throw InvalidArgument("predecessor of non-successor " + str());
    Ordinal o = *this;
    if (--o.terms_.back().coeff == 0) o.terms_.pop_back();
    return o;
}

Ordinal Ordinal::fundamental(std::uint64_t n) const {
    if (classify() != Kind::Limit)
        throw InvalidArgument("fundamental sequence of non-limit " + str());
    if (n == 0) throw InvalidArgument("fundamental sequence index must be >= 1");
    Ordinal head = *this;
    Term last = head.terms_.back();
    head.terms_.pop_back();
    if (--last.coeff > 0) head.terms_.push_back(last);
    // head now ends just before the final copy of w^last.exp
    if (last.exp.classify() == Kind::Successor) {
        Ordinal step = power(last.exp.predecessor(), n); // w^g * n
        return head + step;
    }
    return head + power(last.exp.fundamental(n)); // w^(g[n])
}

std::strong_ordering Ordinal::operator<=>(const Ordinal& o) const {
    const std::size_t n = std::min(terms_.size(), o.terms_.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (auto c = terms_[i].exp <=> o.terms_[i].exp; c != 0) return c;
        if (auto c = terms_[i].coeff <=> o.terms_[i].coeff; c != 0) return c;
    }
    return terms_.size() <=> o.terms_.size();
}

bool Ordinal::operator==(const Ordinal& o) const { return (*this <=> o) == 0; }

Ordinal operator+(const Ordinal& a, const Ordinal& b) {
    if (b.is_zero()) return a;
    Ordinal r;
    const Ordinal& lead = b.terms_.front().exp;
    // Terms of a below the leading exponent of b are absorbed.
    std::size_t i = 0;
    while (i < a.terms_.size() && a.terms_[i].exp > lead) r.terms_.push_back(a.terms_[i++]);
    Ordinal::Term merged = b.terms_.front();
    if (i < a.terms_.size() && a.terms_[i].exp == lead) merged.coeff += a.terms_[i].coeff;
    r.terms_.push_back(merged);
    for (std::size_t j = 1; j < b.terms_.size(); ++j) r.terms_.push_back(b.terms_[j]);
    return r;
}

Ordinal operator*(const Ordinal& a, const Ordinal& b) {
    if (a.is_zero() || b.is_zero()) return Ordinal();
    Ordinal acc;
    for (const auto& t : b.terms_) {
        Ordinal piece;
        if (t.exp.is_zero()) {
            // Right factor finite: scale the leading coefficient of a.
            piece = a;
            piece.terms_.front().coeff *= t.coeff;
        } else {
            piece = Ordinal::power(a.terms_.front().exp + t.exp, t.coeff);
        }
        acc = acc + piece;
    }
    return acc;
}

void Ordinal::normalize_check() const {
    for (std::size_t i = 0; i + 1 < terms_.size(); ++i)
        assert(terms_[i].exp > terms_[i + 1].exp);
    for (const auto& t : terms_) assert(t.coeff >= 1);
}

// --- notation ---------------------------------------------------------------

namespace {

struct Cursor {
    const std::string& s;
    std::size_t i = 0;
    void skip_ws() {
        while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
    }
    bool eat(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError("ordinal notation: " + why + " at offset " + std::to_string(i) +
                         " in '" + s + "'");
    }
};

std::uint64_t parse_nat(Cursor& c) {
    c.skip_ws();
    if (c.i >= c.s.size() || !std::isdigit((unsigned char)c.s[c.i])) c.fail("expected number");
    std::uint64_t v = 0;
    while (c.i < c.s.size() && std::isdigit((unsigned char)c.s[c.i])) {
        v = v * 10 + (std::uint64_t)(c.s[c.i] - '0');
        if (v > (std::uint64_t)1 << 62) c.fail("number too large");
        ++c.i;
    }
    return v;
}

Ordinal parse_expr(Cursor& c);

// An exponent atom: nat, 'w' with an optional ^-chain, or a parenthesized
// expression.  Coefficients inside exponents always require parentheses,
// which keeps "w^w^2*3" unambiguous (the *3 binds to the outermost term).
Ordinal parse_exp_atom(Cursor& c) {
    c.skip_ws();
    if (c.eat('(')) {
        Ordinal e = parse_expr(c);
        if (!c.eat(')')) c.fail("expected ')'");
        return e;
    }
    if (c.eat('w')) {
        if (c.eat('^')) return Ordinal::power(parse_exp_atom(c));
        return Ordinal::omega();
    }
    return Ordinal::nat(parse_nat(c));
}

// One summand of the outer sum.
Ordinal parse_term(Cursor& c) {
    c.skip_ws();
    if (c.i < c.s.size() && c.s[c.i] == '0') {
        ++c.i;
        return Ordinal();
    }
    if (c.eat('w')) {
        Ordinal exp = Ordinal::nat(1);
        if (c.eat('^')) exp = parse_exp_atom(c);
        std::uint64_t coeff = 1;
        if (c.eat('*')) coeff = parse_nat(c);
        return Ordinal::power(exp, coeff);
    }
    return Ordinal::nat(parse_nat(c));
}

Ordinal parse_expr(Cursor& c) {
    Ordinal sum = parse_term(c);
    bool saw_zero_term = sum.is_zero();
    while (c.eat('+')) {
        Ordinal t = parse_term(c);
        if (t.is_zero() || saw_zero_term) c.fail("'0' is only valid on its own");
        // Demand strictly decreasing exponents rather than silently absorbing,
        // so that the notation is canonical.
        if (!sum.is_zero() && !t.is_zero() &&
            !(sum.terms().back().exp > t.terms().front().exp))
            c.fail("exponents must strictly decrease");
        sum = sum + t;
    }
    return sum;
}

bool exponent_is_atom(const Ordinal& e) {
    if (e.is_finite()) return true;
    if (e.terms().size() != 1) return false;
    const auto& t = e.terms()[0];
    return t.coeff == 1 && exponent_is_atom(t.exp);
}

} // namespace

std::string Ordinal::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& t : terms_) {
        if (!first) out << "+";
        first = false;
        if (t.exp.is_zero()) {
            out << t.coeff;
            continue;
        }
        out << "w";
        if (!(t.exp == Ordinal::nat(1))) {
            out << "^";
            if (exponent_is_atom(t.exp))
                out << t.exp.str();
            else
                out << "(" << t.exp.str() << ")";
        }
        if (t.coeff != 1) out << "*" << t.coeff;
    }
    return out.str();
}

Ordinal Ordinal::parse(const std::string& text) {
    Cursor c{text};
    Ordinal o = parse_expr(c);
    c.skip_ws();
    if (c.i != text.size()) c.fail("trailing input");
    return o;
}

} // namespace schreier
