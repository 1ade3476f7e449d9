#include "schreier/family.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <unordered_map>

#include "schreier/errors.hpp"

namespace schreier {

struct FamilyNode {
    enum class Kind {
        FineSchreier,
        FineSchreierOmega1,
        Schreier,
        Singletons,
        AllFinite,
        Compose,
        ComposeRel,
        Image,
        Restrict,
        Pair,
        TensorPow,
        Explicit,
    };

    Kind kind;
    Ordinal xi;                                   // FineSchreier / Schreier stage
    std::shared_ptr<const FamilyNode> a, b;       // children
    std::optional<Prefix> m;                      // relative kinds
    int tensor_m = 0;                             // TensorPow order; b = expansion
    std::vector<FiniteSet> members;               // Explicit, sorted
    int ground = 0;

    mutable std::mutex mu;
    mutable std::unordered_map<std::vector<int>, bool, VecIntHash> memo;
};

namespace {

using Kind = FamilyNode::Kind;
using NodePtr = std::shared_ptr<const FamilyNode>;

std::shared_ptr<FamilyNode> make_node(Kind k) {
    auto n = std::make_shared<FamilyNode>();
    n->kind = k;
    return n;
}

// The two ordinal-indexed hierarchies are interned so recursive membership
// calls share one memo table per stage.
NodePtr ordinal_node(Kind kind, const Ordinal& xi) {
    static std::mutex reg_mu;
    static std::map<std::string, NodePtr> reg;
    std::string key = (kind == Kind::FineSchreier ? "F:" : "S:") + xi.str();
    std::lock_guard lk(reg_mu);
    auto it = reg.find(key);
    if (it != reg.end()) return it->second;
    auto n = make_node(kind);
    n->xi = xi;
    reg.emplace(std::move(key), n);
    return n;
}

bool node_contains(const FamilyNode& n, const FiniteSet& f, Budget& budget);

bool memo_lookup(const FamilyNode& n, const FiniteSet& f, bool& out) {
    std::lock_guard lk(n.mu);
    auto it = n.memo.find(f.values());
    if (it == n.memo.end()) return false;
    out = it->second;
    return true;
}

void memo_store(const FamilyNode& n, const FiniteSet& f, bool v) {
    std::lock_guard lk(n.mu);
    n.memo.emplace(f.values(), v);
}

// Longest k with f.prefix(k) in n.  Prefix membership is downward closed in k
// for hereditary families, so binary search applies.
std::size_t longest_prefix_in(const FamilyNode& n, const FiniteSet& f, Budget& budget) {
    std::size_t lo = 0, hi = f.size();
    while (lo < hi) {
        std::size_t mid = (lo + hi + 1) / 2;
        if (node_contains(n, f.prefix(mid), budget))
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

bool fine_schreier_contains(const FamilyNode& n, const FiniteSet& f, Budget& budget) {
    const Ordinal& xi = n.xi;
    if (xi.is_zero()) return false; // nonempty f, F_0 = {0}
    if (xi.is_finite()) return f.size() <= xi.as_nat();
    if (xi.classify() == Ordinal::Kind::Successor) {
        auto child = ordinal_node(Kind::FineSchreier, xi.predecessor());
        return node_contains(*child, f.drop_min(), budget);
    }
    // limit: some stage xi[k] with k <= min f admits f; the canonical
    // sequences typically make the largest k the easiest, so scan downward.
    for (std::uint64_t k = (std::uint64_t)f.min(); k >= 1; --k) {
        auto child = ordinal_node(Kind::FineSchreier, xi.fundamental(k));
        if (node_contains(*child, f, budget)) return true;
    }
    return false;
}

bool schreier_contains(const FamilyNode& n, const FiniteSet& f, Budget& budget) {
    const Ordinal& xi = n.xi;
    if (xi.is_zero()) return f.size() <= 1;
    if (xi.is_finite() && xi.as_nat() == 1)
        return f.size() <= (std::size_t)f.min(); // one singleton per count
    if (xi.classify() == Ordinal::Kind::Successor) {
        // Split greedily into longest blocks of the previous stage; greedy is
        // optimal because leftovers of any competing split stay members by
        // heredity, so the greedy count is minimal.
        auto child = ordinal_node(Kind::Schreier, xi.predecessor());
        const std::size_t allowed = (std::size_t)f.min();
        FiniteSet rest = f;
        std::size_t blocks = 0;
        while (!rest.empty()) {
            budget.tick();
            std::size_t k = longest_prefix_in(*child, rest, budget);
            if (k == 0) return false; // unreachable: singletons are members
            if (++blocks > allowed) return false;
            rest = rest.suffix_from(k);
        }
        return true;
    }
    for (std::uint64_t k = (std::uint64_t)f.min(); k >= 1; --k) {
        auto child = ordinal_node(Kind::Schreier, xi.fundamental(k));
        if (node_contains(*child, f, budget)) return true;
    }
    return false;
}

// Shared search for outer[inner]: cut g into successive nonempty inner-blocks
// whose minima (or their positions in m, for the relative form) make a member
// of outer.  Both prunes rely on heredity: an inner block stops extending once
// a prefix of it leaves inner, and a partial minima vector outside outer can
// never grow back in.
struct ComposeSearch {
    const FamilyNode& outer;
    const FamilyNode& inner;
    const FiniteSet& g;
    const Prefix* m; // non-null for the relative form
    Budget& budget;
    std::vector<int> mins;

    bool run() {
        if (g.empty()) return node_contains(outer, FiniteSet(), budget);
        return dfs(0);
    }

    bool dfs(std::size_t start) {
        if (start == g.size()) return true;
        budget.tick();
        int label = g.at0(start);
        if (m) {
            auto idx = m->index_of(label);
            if (!idx) return false; // g not inside m
            label = (int)*idx;
        }
        mins.push_back(label);
        bool found = false;
        if (node_contains(outer, FiniteSet(std::vector<int>(mins)), budget)) {
            for (std::size_t end = start + 1; end <= g.size(); ++end) {
                FiniteSet block = g.suffix_from(start).prefix(end - start);
                if (!node_contains(inner, block, budget)) break;
                if (dfs(end)) {
                    found = true;
                    break;
                }
            }
        }
        mins.pop_back();
        return found;
    }
};

bool subset_of_prefix(const FiniteSet& f, const Prefix& m) {
    for (int v : f.values())
        if (!m.contains(v)) return false; // may raise InsufficientPrefix
    return true;
}

FiniteSet preimage_in(const Prefix& m, const FiniteSet& f) {
    std::vector<int> idx;
    idx.reserve(f.size());
    for (int v : f.values()) {
        auto i = m.index_of(v);
        if (!i) throw InvalidArgument("set is not inside the prefix");
        idx.push_back((int)*i);
    }
    return FiniteSet(std::move(idx));
}

bool node_contains(const FamilyNode& n, const FiniteSet& f, Budget& budget) {
    budget.tick();
    switch (n.kind) {
        case Kind::FineSchreierOmega1:
        case Kind::AllFinite:
            return true;
        case Kind::Singletons:
            return f.size() <= 1;
        case Kind::Explicit:
            return std::binary_search(n.members.begin(), n.members.end(), f);
        default:
            break;
    }
    if (f.empty()) {
        // Every remaining kind is hereditary with the empty set as a member,
        // except that compositions defer to their outer family.
        if (n.kind == Kind::Compose || n.kind == Kind::ComposeRel)
            return node_contains(*n.a, f, budget);
        if (n.kind == Kind::Image || n.kind == Kind::Restrict || n.kind == Kind::TensorPow)
            return node_contains(n.kind == Kind::TensorPow ? *n.b : *n.a, f, budget);
        if (n.kind == Kind::Pair)
            return node_contains(*n.a, f, budget) && node_contains(*n.b, f, budget);
        return true;
    }
    bool cached;
    if (memo_lookup(n, f, cached)) return cached;
    bool result = false;
    switch (n.kind) {
        case Kind::FineSchreier:
            result = fine_schreier_contains(n, f, budget);
            break;
        case Kind::Schreier:
            result = schreier_contains(n, f, budget);
            break;
        case Kind::Compose: {
            ComposeSearch s{*n.a, *n.b, f, nullptr, budget, {}};
            result = s.run();
            break;
        }
        case Kind::ComposeRel: {
            if (!subset_of_prefix(f, *n.m)) {
                result = false;
                break;
            }
            ComposeSearch s{*n.a, *n.b, f, &*n.m, budget, {}};
            result = s.run();
            break;
        }
        case Kind::Image:
            result = subset_of_prefix(f, *n.m) &&
                     node_contains(*n.a, preimage_in(*n.m, f), budget);
            break;
        case Kind::Restrict:
            result = subset_of_prefix(f, *n.m) && node_contains(*n.a, f, budget);
            break;
        case Kind::Pair: {
            for (std::size_t k = 0; k <= f.size(); ++k) {
                if (node_contains(*n.a, f.prefix(k), budget) &&
                    node_contains(*n.b, f.suffix_from(k), budget)) {
                    result = true;
                    break;
                }
            }
            break;
        }
        case Kind::TensorPow:
            result = node_contains(*n.b, f, budget);
            break;
        default:
            throw Error("unhandled family kind");
    }
    memo_store(n, f, result);
    return result;
}

bool node_is_maximal(const FamilyNode& n, const FiniteSet& f, Budget& budget) {
    switch (n.kind) {
        case Kind::FineSchreierOmega1:
        case Kind::AllFinite:
            return false; // everything extends
        case Kind::Singletons:
            return f.size() == 1;
        case Kind::Explicit: {
            if (!node_contains(n, f, budget)) return false;
            int from = f.empty() ? 1 : f.max() + 1;
            for (int v = from; v <= n.ground; ++v) {
                budget.tick();
                if (node_contains(n, f.with(v), budget)) return false;
            }
            return true;
        }
        case Kind::Image:
        case Kind::Restrict:
        case Kind::ComposeRel: {
            if (!node_contains(n, f, budget)) return false;
            // extend by the next element of the underlying prefix
            Prefix rest = f.empty() ? *n.m : n.m->restricted_above(f.max());
            return !node_contains(n, f.with(rest.at(1)), budget);
        }
        default: {
            if (!node_contains(n, f, budget)) return false;
            int v = f.empty() ? 1 : f.max() + 1;
            return !node_contains(n, f.with(v), budget);
        }
    }
}

} // namespace

// --- factories --------------------------------------------------------------

Family Family::fine_schreier(const Ordinal& xi) {
    return Family(ordinal_node(Kind::FineSchreier, xi));
}

Family Family::fine_schreier_omega1() {
    static NodePtr n = make_node(Kind::FineSchreierOmega1);
    return Family(n);
}

Family Family::schreier(const Ordinal& xi) { return Family(ordinal_node(Kind::Schreier, xi)); }

Family Family::singletons() {
    static NodePtr n = make_node(Kind::Singletons);
    return Family(n);
}

Family Family::all_finite() {
    static NodePtr n = make_node(Kind::AllFinite);
    return Family(n);
}

Family Family::compose(const Family& outer, const Family& inner) {
    auto n = make_node(Kind::Compose);
    n->a = outer.p_;
    n->b = inner.p_;
    return Family(n);
}

Family Family::compose_rel(const Family& outer, const Family& inner, const Prefix& m) {
    auto n = make_node(Kind::ComposeRel);
    n->a = outer.p_;
    n->b = inner.p_;
    n->m = m;
    return Family(n);
}

Family Family::image(const Family& f, const Prefix& m) {
    auto n = make_node(Kind::Image);
    n->a = f.p_;
    n->m = m;
    return Family(n);
}

Family Family::restrict(const Family& f, const Prefix& m) {
    auto n = make_node(Kind::Restrict);
    n->a = f.p_;
    n->m = m;
    return Family(n);
}

Family Family::pair(const Family& f, const Family& g) {
    auto n = make_node(Kind::Pair);
    n->a = f.p_;
    n->b = g.p_;
    return Family(n);
}

Family Family::tensor_pow(const Family& f, int m) {
    if (m < 1) throw InvalidArgument("tensor power needs m >= 1");
    if (m == 1) return f;
    Family expanded = compose(f, tensor_pow(f, m - 1));
    auto n = make_node(Kind::TensorPow);
    n->a = f.p_;
    n->b = expanded.p_;
    n->tensor_m = m;
    return Family(n);
}

Family Family::explicit_family(std::vector<FiniteSet> members, int ground) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    for (const auto& f : members) {
        if (!f.empty() && f.max() > ground)
            throw InvalidArgument("member exceeds the declared ground " +
                                  std::to_string(ground));
        for (std::size_t i = 0; i < f.size(); ++i) {
            std::vector<int> sub;
            for (std::size_t j = 0; j < f.size(); ++j)
                if (j != i) sub.push_back(f.at0(j));
            if (!std::binary_search(members.begin(), members.end(), FiniteSet(sub)))
                throw InvalidArgument("explicit family is not hereditary at {" + f.str() +
                                      "}");
        }
    }
    auto n = make_node(Kind::Explicit);
    n->members = std::move(members);
    n->ground = ground;
    return Family(n);
}

// --- operations -------------------------------------------------------------

bool family_contains(const Family& fam, const FiniteSet& f, Budget& budget) {
    return node_contains(fam.node(), f, budget);
}

bool family_is_maximal(const Family& fam, const FiniteSet& f, Budget& budget) {
    return node_is_maximal(fam.node(), f, budget);
}

namespace {

// Linear-time segments for the two ordinal hierarchies.  The greedy segment
// is the longest one: its blocks are maximal, so any longer initial segment
// would need strictly more blocks than the minimum allows.
std::vector<int> fast_segment(Kind kind, const Ordinal& xi, const Prefix& m,
                              Budget& budget) {
    budget.tick();
    if (kind == Kind::FineSchreier) {
        if (xi.is_finite()) return m.take(xi.as_nat()).values();
        if (xi.classify() == Ordinal::Kind::Successor) {
            std::vector<int> out = {m.at(1)};
            auto rest = fast_segment(kind, xi.predecessor(), m.advanced(1), budget);
            out.insert(out.end(), rest.begin(), rest.end());
            return out;
        }
        return fast_segment(kind, xi.fundamental((std::uint64_t)m.at(1)), m, budget);
    }
    if (xi.is_zero()) return {m.at(1)};
    if (xi.classify() == Ordinal::Kind::Limit)
        return fast_segment(kind, xi.fundamental((std::uint64_t)m.at(1)), m, budget);
    const Ordinal prev = xi.predecessor();
    const int count = m.at(1);
    std::vector<int> out;
    Prefix cur = m;
    for (int i = 0; i < count; ++i) {
        auto seg = fast_segment(kind, prev, cur, budget);
        out.insert(out.end(), seg.begin(), seg.end());
        cur = cur.advanced(seg.size());
    }
    return out;
}

} // namespace

FiniteSet initial_segment(const Family& fam, const Prefix& m, Budget& budget) {
    const auto kind = fam.node().kind;
    if (kind == Kind::AllFinite || kind == Kind::FineSchreierOmega1)
        throw InvalidArgument("family has no finite maximal initial segments");
    if (kind == Kind::FineSchreier || kind == Kind::Schreier)
        return FiniteSet(fast_segment(kind, fam.node().xi, m, budget));
    std::size_t k = 0;
    while (node_contains(fam.node(), m.take(k + 1), budget)) ++k;
    return m.take(k);
}

std::optional<std::vector<FiniteSet>> try_decompose(const Family& p, const FiniteSet& f,
                                                    Budget& budget) {
    std::vector<FiniteSet> blocks;
    FiniteSet rest = f;
    while (!rest.empty()) {
        budget.tick();
        std::size_t k = longest_prefix_in(p.node(), rest, budget);
        if (k == 0) return std::nullopt;
        FiniteSet block = rest.prefix(k);
        // The longest prefix is the only possible first block: a shorter
        // maximal block would forbid this longer member above it.
        if (!node_is_maximal(p.node(), block, budget)) return std::nullopt;
        blocks.push_back(std::move(block));
        rest = rest.suffix_from(k);
    }
    return blocks;
}

std::vector<FiniteSet> decompose(const Family& p, const FiniteSet& f, Budget& budget) {
    auto blocks = try_decompose(p, f, budget);
    if (!blocks)
        throw NotDecomposable("{" + f.str() +
                              "} is not a union of successive maximal blocks of " + p.str());
    return *blocks;
}

Family materialize(const Family& fam, int bound, Budget& budget) {
    if (fam.node().kind == Kind::FineSchreierOmega1)
        throw InvalidArgument("cannot materialize the index sentinel");
    if (bound < 0) throw InvalidArgument("materialize needs a nonnegative bound");
    std::vector<FiniteSet> out;
    if (!node_contains(fam.node(), FiniteSet(), budget))
        return Family::explicit_family({}, bound);
    out.push_back(FiniteSet());
    std::vector<FiniteSet> frontier = {FiniteSet()};
    while (!frontier.empty()) {
        std::vector<FiniteSet> next;
        for (const auto& f : frontier) {
            int from = f.empty() ? 1 : f.max() + 1;
            for (int v = from; v <= bound; ++v) {
                budget.tick();
                FiniteSet g = f.with(v);
                if (node_contains(fam.node(), g, budget)) {
                    out.push_back(g);
                    next.push_back(std::move(g));
                }
            }
        }
        frontier = std::move(next);
    }
    return Family::explicit_family(std::move(out), bound);
}

int tree_rank(const Family& explicit_fam, Budget& budget) {
    const FamilyNode& n = explicit_fam.node();
    if (n.kind != Kind::Explicit)
        throw InvalidArgument("tree_rank expects a materialized family");
    std::set<std::vector<int>> live;
    for (const auto& f : n.members) live.insert(f.values());
    int rank = 0;
    while (!live.empty()) {
        ++rank;
        std::vector<std::vector<int>> leaves;
        for (const auto& v : live) {
            budget.tick();
            FiniteSet f{std::vector<int>(v)};
            bool extendable = false;
            int from = f.empty() ? 1 : f.max() + 1;
            for (int x = from; x <= n.ground && !extendable; ++x)
                extendable = live.count(f.with(x).values()) > 0;
            if (!extendable) leaves.push_back(v);
        }
        if (leaves.empty()) throw Error("derivative got stuck; family not well founded?");
        for (const auto& v : leaves) live.erase(v);
    }
    return rank;
}

int almost_monotone_threshold(const Ordinal& zeta, const Ordinal& xi, int bound,
                              Budget& budget) {
    Family small = materialize(Family::fine_schreier(zeta), bound, budget);
    Family big = Family::fine_schreier(xi);
    for (int l = 0; l <= bound; ++l) {
        bool ok = true;
        for (const auto& f : small.node().members) {
            if (!f.empty() && f.min() <= l) continue;
            budget.tick();
            if (!node_contains(big.node(), f, budget)) {
                ok = false;
                break;
            }
        }
        if (ok) return l;
    }
    return bound; // unreachable: at l = bound only the empty set remains
}

// --- notation ---------------------------------------------------------------

namespace {

struct FamCursor {
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
    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }
    std::string ident() {
        skip_ws();
        std::size_t j = i;
        while (j < s.size() && (std::isalnum((unsigned char)s[j]) || s[j] == '_')) ++j;
        std::string r = s.substr(i, j - i);
        i = j;
        return r;
    }
    // Consume up to the next top-level occurrence of one of the stop chars.
    std::string until(const std::string& stops) {
        skip_ws();
        int depth = 0;
        std::size_t j = i;
        for (; j < s.size(); ++j) {
            char c = s[j];
            if (c == '(') {
                ++depth;
                continue;
            }
            if (c == ')') {
                if (depth == 0) break;
                --depth;
                continue;
            }
            if (depth == 0 && stops.find(c) != std::string::npos) break;
        }
        std::string r = s.substr(i, j - i);
        i = j;
        // trim trailing spaces
        while (!r.empty() && std::isspace((unsigned char)r.back())) r.pop_back();
        return r;
    }
    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError("family expression: " + why + " at offset " + std::to_string(i) +
                         " in '" + s + "'");
    }
};

Family parse_fam(FamCursor& c) {
    std::string name = c.ident();
    if (name == "singletons") return Family::singletons();
    if (name == "any") return Family::all_finite();
    if (name == "F" || name == "S") {
        c.expect('(');
        std::string ord = c.until(")");
        c.expect(')');
        if (name == "F" && ord == "w1") return Family::fine_schreier_omega1();
        Ordinal xi = Ordinal::parse(ord);
        return name == "F" ? Family::fine_schreier(xi) : Family::schreier(xi);
    }
    if (name == "compose" || name == "pair") {
        c.expect('(');
        Family x = parse_fam(c);
        c.expect(',');
        Family y = parse_fam(c);
        c.expect(')');
        return name == "compose" ? Family::compose(x, y) : Family::pair(x, y);
    }
    if (name == "composeM") {
        c.expect('(');
        Family x = parse_fam(c);
        c.expect(',');
        Family y = parse_fam(c);
        c.expect(';');
        Prefix m = Prefix::parse(c.until(")"));
        c.expect(')');
        return Family::compose_rel(x, y, m);
    }
    if (name == "image" || name == "restrict") {
        c.expect('(');
        Family x = parse_fam(c);
        c.expect(';');
        Prefix m = Prefix::parse(c.until(")"));
        c.expect(')');
        return name == "image" ? Family::image(x, m) : Family::restrict(x, m);
    }
    if (name == "tensor") {
        c.expect('(');
        Family x = parse_fam(c);
        c.expect(',');
        std::string num = c.until(")");
        c.expect(')');
        int m = 0;
        try {
            m = std::stoi(num);
        } catch (const std::exception&) {
            c.fail("bad tensor order '" + num + "'");
        }
        return Family::tensor_pow(x, m);
    }
    c.fail("unknown family '" + name + "'");
}

} // namespace

std::string Family::str() const {
    const FamilyNode& n = *p_;
    auto wrap = [](const NodePtr& p) { return Family(p).str(); };
    switch (n.kind) {
        case Kind::FineSchreier:
            return "F(" + n.xi.str() + ")";
        case Kind::FineSchreierOmega1:
            return "F(w1)";
        case Kind::Schreier:
            return "S(" + n.xi.str() + ")";
        case Kind::Singletons:
            return "singletons";
        case Kind::AllFinite:
            return "any";
        case Kind::Compose:
            return "compose(" + wrap(n.a) + "," + wrap(n.b) + ")";
        case Kind::ComposeRel:
            return "composeM(" + wrap(n.a) + "," + wrap(n.b) + ";" + n.m->str() + ")";
        case Kind::Image:
            return "image(" + wrap(n.a) + ";" + n.m->str() + ")";
        case Kind::Restrict:
            return "restrict(" + wrap(n.a) + ";" + n.m->str() + ")";
        case Kind::Pair:
            return "pair(" + wrap(n.a) + "," + wrap(n.b) + ")";
        case Kind::TensorPow:
            return "tensor(" + wrap(n.a) + "," + std::to_string(n.tensor_m) + ")";
        case Kind::Explicit:
            return "explicit[" + std::to_string(n.members.size()) + " members, ground " +
                   std::to_string(n.ground) + "]";
    }
    return "?";
}

Family Family::parse(const std::string& text) {
    FamCursor c{text};
    Family f = parse_fam(c);
    c.skip_ws();
    if (c.i != text.size()) c.fail("trailing input");
    return f;
}

} // namespace schreier
