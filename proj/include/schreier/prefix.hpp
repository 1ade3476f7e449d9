#ifndef SCHREIER_PREFIX_HPP
#define SCHREIER_PREFIX_HPP

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "schreier/errors.hpp"
#include "schreier/rational.hpp"

namespace schreier {

/**
 * Finite subset of the positive integers, kept as a strictly increasing
 * vector.  Sets double as increasing sequences: position n (1-based) is the
 * n-th smallest element.
 */
class FiniteSet {
  public:
    FiniteSet() = default;
    explicit FiniteSet(std::vector<int> xs); // validates

    bool empty() const { return xs_.empty(); }
    std::size_t size() const { return xs_.size(); }
    int min() const;
    int max() const;
    int at0(std::size_t i) const { return xs_.at(i); } // 0-based
    const std::vector<int>& values() const { return xs_; }

    bool contains(int v) const;
    FiniteSet drop_min() const;
    FiniteSet prefix(std::size_t k) const;      // first k elements
    FiniteSet suffix_from(std::size_t k) const; // elements with index >= k
    FiniteSet with(int v) const;                // insert (v must be new)

    // E < F: every element of E below every element of F (true if either empty).
    bool precedes(const FiniteSet& f) const;
    // Same size and pointwise >= element-wise.
    bool is_spread_of(const FiniteSet& f) const;

    bool operator==(const FiniteSet&) const = default;
    auto operator<=>(const FiniteSet&) const = default;

    std::string str() const; // "2,3,7"; empty set prints as ""
    static FiniteSet parse(const std::string& text);

  private:
    std::vector<int> xs_;
};

FiniteSet set_union(const FiniteSet& a, const FiniteSet& b); // must be disjoint

struct VecIntHash {
    std::size_t operator()(const std::vector<int>& v) const {
        std::size_t h = 1469598103934665603ull;
        for (int x : v) {
            h ^= (std::size_t)(unsigned)x;
            h *= 1099511628211ull;
        }
        return h;
    }
};

/**
 * Working surrogate for an infinite subset of the positive integers: an
 * explicit strictly increasing head plus an optional tail policy describing
 * how elements continue.  Without a tail policy, requests beyond the head
 * raise InsufficientPrefix rather than guessing.
 *
 * Tail policies:
 *   Arithmetic(start, step): start, start+step, start+2*step, ...
 *   Geometric(ratio):        next = max(prev+1, ceil(prev*ratio)) from the
 *                            last known element.
 */
class Prefix {
  public:
    enum class TailKind { None, Arithmetic, Geometric };

    Prefix() = default;
    static Prefix explicit_only(std::vector<int> head);
    static Prefix with_arithmetic_tail(std::vector<int> head, long long start, long long step);
    static Prefix with_geometric_tail(std::vector<int> head, Rat ratio);
    // The ubiquitous "m, m+1, m+2, ...".
    static Prefix integers_from(int m);

    int at(std::size_t n) const; // 1-based
    FiniteSet take(std::size_t k) const;
    bool infinite() const { return tail_ != TailKind::None; }
    std::size_t explicit_count() const { return head_.size(); }

    // Membership; throws InsufficientPrefix when not decidable.
    bool contains(int value) const;
    bool can_decide(int value) const;
    std::optional<std::size_t> index_of(int value) const; // 1-based
    std::vector<int> up_to_value(int bound) const;        // all elements <= bound

    Prefix advanced(std::size_t k) const;     // drop the first k elements
    Prefix restricted_above(int value) const; // keep elements > value
    Prefix prepended(std::vector<int> head) const; // new elements in front

    // M(F): the image of an index set under this sequence.
    FiniteSet image(const FiniteSet& indices) const;

    std::string str() const;
    static Prefix parse(const std::string& text);

  private:
    std::vector<int> head_;
    TailKind tail_ = TailKind::None;
    long long arith_start_ = 0, arith_step_ = 1;
    Rat geom_ratio_;
    mutable std::vector<int> geom_cache_; // generated tail values

    int tail_at(std::size_t j) const; // j-th tail element, 1-based
};

} // namespace schreier

#endif
