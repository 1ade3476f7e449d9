#include "schreier/prefix.hpp"

#include <algorithm>
#include <sstream>

namespace schreier {

namespace {
// FiniteSet elements stay well below this; prefix tails are clamped so that
// arithmetic never overflows int.
constexpr int kMaxElement = 1 << 29;

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> xs;
    std::size_t i = 0;
    while (i < text.size()) {
        std::size_t j = text.find(',', i);
        if (j == std::string::npos) j = text.size();
        std::string tok = text.substr(i, j - i);
        if (tok.empty()) throw ParseError("empty element in list '" + text + "'");
        try {
            std::size_t used = 0;
            long long v = std::stoll(tok, &used);
            if (used != tok.size() || v <= 0 || v > kMaxElement)
                throw ParseError("bad element '" + tok + "'");
            xs.push_back((int)v);
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception&) {
            throw ParseError("bad element '" + tok + "'");
        }
        i = j + 1;
    }
    return xs;
}
} // namespace

// --- FiniteSet --------------------------------------------------------------

FiniteSet::FiniteSet(std::vector<int> xs) : xs_(std::move(xs)) {
    for (std::size_t i = 0; i < xs_.size(); ++i) {
        if (xs_[i] <= 0) throw InvalidArgument("set elements must be positive");
        if (i > 0 && xs_[i] <= xs_[i - 1])
            throw InvalidArgument("set elements must strictly increase: " + str());
    }
}

int FiniteSet::min() const {
    if (empty()) throw InvalidArgument("min of empty set");
    return xs_.front();
}

int FiniteSet::max() const {
    if (empty()) throw InvalidArgument("max of empty set");
    return xs_.back();
}

bool FiniteSet::contains(int v) const {
    return std::binary_search(xs_.begin(), xs_.end(), v);
}

FiniteSet FiniteSet::drop_min() const {
    if (empty()) throw InvalidArgument("drop_min of empty set");
    FiniteSet r;
    r.xs_.assign(xs_.begin() + 1, xs_.end());
    return r;
}

FiniteSet FiniteSet::prefix(std::size_t k) const {
    FiniteSet r;
    r.xs_.assign(xs_.begin(), xs_.begin() + std::min(k, xs_.size()));
    return r;
}

FiniteSet FiniteSet::suffix_from(std::size_t k) const {
    FiniteSet r;
    if (k < xs_.size()) r.xs_.assign(xs_.begin() + k, xs_.end());
    return r;
}

FiniteSet FiniteSet::with(int v) const {
    if (v <= 0) throw InvalidArgument("set elements must be positive");
    FiniteSet r = *this;
    auto it = std::lower_bound(r.xs_.begin(), r.xs_.end(), v);
    if (it != r.xs_.end() && *it == v) throw InvalidArgument("element already present");
    r.xs_.insert(it, v);
    return r;
}

bool FiniteSet::precedes(const FiniteSet& f) const {
    if (empty() || f.empty()) return true;
    return max() < f.min();
}

bool FiniteSet::is_spread_of(const FiniteSet& f) const {
    if (size() != f.size()) return false;
    for (std::size_t i = 0; i < size(); ++i)
        if (xs_[i] < f.xs_[i]) return false;
    return true;
}

std::string FiniteSet::str() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < xs_.size(); ++i) {
        if (i) out << ",";
        out << xs_[i];
    }
    return out.str();
}

FiniteSet FiniteSet::parse(const std::string& text) {
    if (text.empty()) return FiniteSet();
    return FiniteSet(parse_int_list(text));
}

FiniteSet set_union(const FiniteSet& a, const FiniteSet& b) {
    std::vector<int> merged;
    merged.reserve(a.size() + b.size());
    std::merge(a.values().begin(), a.values().end(), b.values().begin(), b.values().end(),
               std::back_inserter(merged));
    return FiniteSet(std::move(merged)); // duplicates rejected by the validator
}

// --- Prefix -----------------------------------------------------------------

Prefix Prefix::explicit_only(std::vector<int> head) {
    Prefix p;
    p.head_ = FiniteSet(std::move(head)).values(); // reuse validation
    return p;
}

Prefix Prefix::with_arithmetic_tail(std::vector<int> head, long long start, long long step) {
    Prefix p = explicit_only(std::move(head));
    if (step < 1) throw InvalidArgument("arithmetic tail step must be >= 1");
    if (!p.head_.empty() && start <= p.head_.back())
        throw InvalidArgument("arithmetic tail must start above the explicit head");
    if (start <= 0) throw InvalidArgument("arithmetic tail start must be positive");
    p.tail_ = TailKind::Arithmetic;
    p.arith_start_ = start;
    p.arith_step_ = step;
    return p;
}

Prefix Prefix::with_geometric_tail(std::vector<int> head, Rat ratio) {
    Prefix p = explicit_only(std::move(head));
    if (p.head_.empty()) throw InvalidArgument("geometric tail needs a nonempty head");
    if (ratio < 1) throw InvalidArgument("geometric ratio must be >= 1");
    p.tail_ = TailKind::Geometric;
    p.geom_ratio_ = std::move(ratio);
    return p;
}

Prefix Prefix::integers_from(int m) {
    if (m < 1) throw InvalidArgument("integers_from needs m >= 1");
    return with_arithmetic_tail({m}, m + 1, 1);
}

int Prefix::tail_at(std::size_t j) const {
    if (tail_ == TailKind::Arithmetic) {
        long long v = arith_start_ + (long long)(j - 1) * arith_step_;
        if (v > kMaxElement)
            throw InsufficientPrefix("prefix element exceeds the supported range");
        return (int)v;
    }
    if (tail_ == TailKind::Geometric) {
        while (geom_cache_.size() < j) {
            long long prev = geom_cache_.empty() ? head_.back() : geom_cache_.back();
            Rat scaled = geom_ratio_ * prev;
            Int num = boost::multiprecision::numerator(scaled);
            Int den = boost::multiprecision::denominator(scaled);
            Int q = num / den + (num % den == 0 ? 0 : 1); // ceil
            long long v = std::max<long long>(prev + 1, q.convert_to<long long>());
            if (v > kMaxElement)
                throw InsufficientPrefix("prefix element exceeds the supported range");
            geom_cache_.push_back((int)v);
        }
        return geom_cache_[j - 1];
    }
    throw InsufficientPrefix("prefix has only " + std::to_string(head_.size()) +
                             " known elements");
}

int Prefix::at(std::size_t n) const {
    if (n == 0) throw InvalidArgument("prefix positions are 1-based");
    if (n <= head_.size()) return head_[n - 1];
    return tail_at(n - head_.size());
}

FiniteSet Prefix::take(std::size_t k) const {
    std::vector<int> xs;
    xs.reserve(k);
    for (std::size_t n = 1; n <= k; ++n) xs.push_back(at(n));
    return FiniteSet(std::move(xs));
}

bool Prefix::can_decide(int value) const {
    if (infinite()) return true;
    return !head_.empty() && value <= head_.back();
}

bool Prefix::contains(int value) const { return index_of(value).has_value(); }

std::optional<std::size_t> Prefix::index_of(int value) const {
    if (value <= 0) return std::nullopt;
    if (!head_.empty() && value <= head_.back()) {
        auto it = std::lower_bound(head_.begin(), head_.end(), value);
        if (it != head_.end() && *it == value)
            return (std::size_t)(it - head_.begin()) + 1;
        return std::nullopt;
    }
    if (tail_ == TailKind::None) {
        if (!can_decide(value))
            throw InsufficientPrefix("membership of " + std::to_string(value) +
                                     " is beyond the explicit prefix");
        return std::nullopt;
    }
    if (tail_ == TailKind::Arithmetic) {
        if (value < arith_start_) return std::nullopt;
        long long d = value - arith_start_;
        if (d % arith_step_ != 0) return std::nullopt;
        return head_.size() + 1 + (std::size_t)(d / arith_step_);
    }
    for (std::size_t j = 1;; ++j) { // geometric: values grow, few steps
        int v = tail_at(j);
        if (v == value) return head_.size() + j;
        if (v > value) return std::nullopt;
    }
}

std::vector<int> Prefix::up_to_value(int bound) const {
    if (!infinite() && (head_.empty() || bound > head_.back()))
        throw InsufficientPrefix("prefix cannot enumerate elements up to " +
                                 std::to_string(bound));
    std::vector<int> xs;
    for (std::size_t n = 1;; ++n) {
        int v = at(n);
        if (v > bound) break;
        xs.push_back(v);
    }
    return xs;
}

Prefix Prefix::advanced(std::size_t k) const {
    if (k == 0) return *this;
    Prefix p;
    if (k < head_.size()) {
        p = *this;
        p.head_.assign(head_.begin() + k, head_.end());
        p.geom_cache_ = geom_cache_; // still anchored at the same last element
        return p;
    }
    // The view starts inside the tail; materialize its first element so that
    // a geometric tail keeps an anchor.
    int first = at(k + 1);
    switch (tail_) {
        case TailKind::Arithmetic:
            return with_arithmetic_tail({first}, (long long)first + arith_step_, arith_step_);
        case TailKind::Geometric:
            return with_geometric_tail({first}, geom_ratio_);
        case TailKind::None:
            return explicit_only({first}); // unreachable: at() would have thrown
    }
    return p;
}

Prefix Prefix::prepended(std::vector<int> head) const {
    if (head.empty()) return *this;
    FiniteSet validated(std::move(head));
    if (!head_.empty() || tail_ != TailKind::None) {
        if (validated.max() >= at(1))
            throw InvalidArgument("prepended elements must precede the prefix");
    }
    Prefix p = *this;
    std::vector<int> merged = validated.values();
    merged.insert(merged.end(), head_.begin(), head_.end());
    p.head_ = std::move(merged);
    // a geometric cache stays anchored at the old head, which is still the
    // back of the merged head
    return p;
}

Prefix Prefix::restricted_above(int value) const {
    std::size_t k = 0;
    while (true) {
        int v = at(k + 1); // throws InsufficientPrefix when we run out
        if (v > value) break;
        ++k;
    }
    return advanced(k);
}

FiniteSet Prefix::image(const FiniteSet& indices) const {
    std::vector<int> xs;
    xs.reserve(indices.size());
    for (int n : indices.values()) xs.push_back(at((std::size_t)n));
    return FiniteSet(std::move(xs));
}

std::string Prefix::str() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < head_.size(); ++i) {
        if (i) out << ",";
        out << head_[i];
    }
    std::string sep = head_.empty() ? "" : ",";
    if (tail_ == TailKind::Arithmetic) {
        if (!head_.empty() && arith_step_ == 1 && arith_start_ == head_.back() + 1)
            out << ",...";
        else if (!head_.empty() && arith_start_ == head_.back() + arith_step_)
            out << sep << "+arith:" << arith_step_;
        else
            out << sep << "+arith:" << arith_start_ << ":" << arith_step_;
    } else if (tail_ == TailKind::Geometric) {
        out << sep << "+geom:" << rat_str(geom_ratio_);
    }
    return out.str();
}

Prefix Prefix::parse(const std::string& text) {
    std::string body = text;
    if (auto pos = body.rfind("+arith:"); pos != std::string::npos) {
        std::string spec = body.substr(pos + 7);
        body.resize(pos);
        auto head = parse_int_list(body);
        auto colon = spec.find(':');
        try {
            if (colon == std::string::npos) {
                long long step = std::stoll(spec);
                long long start = (head.empty() ? 1 : head.back()) + step;
                return with_arithmetic_tail(std::move(head), start, step);
            }
            long long start = std::stoll(spec.substr(0, colon));
            long long step = std::stoll(spec.substr(colon + 1));
            return with_arithmetic_tail(std::move(head), start, step);
        } catch (const InvalidArgument& e) {
            throw ParseError(e.what());
        } catch (const std::exception&) {
            throw ParseError("bad arithmetic tail '" + spec + "'");
        }
    }
    if (auto pos = body.rfind("+geom:"); pos != std::string::npos) {
        std::string spec = body.substr(pos + 6);
        body.resize(pos);
        try {
            return with_geometric_tail(parse_int_list(body), parse_rat(spec));
        } catch (const InvalidArgument& e) {
            throw ParseError(e.what());
        }
    }
    if (body.size() >= 4 && body.substr(body.size() - 4) == ",...") {
        auto head = parse_int_list(body.substr(0, body.size() - 4));
        if (head.empty()) throw ParseError("'...' needs at least one explicit element");
        long long start = head.back() + 1;
        return with_arithmetic_tail(std::move(head), start, 1);
    }
    return explicit_only(parse_int_list(body));
}

} // namespace schreier
