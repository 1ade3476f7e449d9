#ifndef SCHREIER_VEC_HPP
#define SCHREIER_VEC_HPP

#include <map>

#include "schreier/prefix.hpp"
#include "schreier/rational.hpp"

namespace schreier {

/**
 * Finitely supported vector with exact rational coordinates, indexed by
 * positive integers.  Zero coordinates are never stored.
 */
class VecQ {
  public:
    VecQ() = default;

    static VecQ unit(int i) {
        VecQ v;
        v.set(i, 1);
        return v;
    }

    Rat at(int i) const {
        auto it = coords_.find(i);
        return it == coords_.end() ? Rat(0) : it->second;
    }

    void set(int i, Rat c) {
        if (i <= 0) throw InvalidArgument("vector indices must be positive");
        if (c == 0)
            coords_.erase(i);
        else
            coords_[i] = std::move(c);
    }

    VecQ& add_scaled(const VecQ& x, const Rat& c) {
        for (const auto& [i, v] : x.coords_) set(i, at(i) + c * v);
        return *this;
    }

    VecQ scaled(const Rat& c) const {
        VecQ r;
        if (c != 0)
            for (const auto& [i, v] : coords_) r.coords_.emplace(i, c * v);
        return r;
    }

    bool zero() const { return coords_.empty(); }

    FiniteSet support() const {
        std::vector<int> idx;
        idx.reserve(coords_.size());
        for (const auto& [i, v] : coords_) idx.push_back(i);
        return FiniteSet(std::move(idx));
    }

    const std::map<int, Rat>& coords() const { return coords_; }

    bool operator==(const VecQ&) const = default;

    std::string str() const {
        std::string out = "{";
        bool first = true;
        for (const auto& [i, v] : coords_) {
            if (!first) out += ", ";
            first = false;
            out += std::to_string(i) + ":" + rat_str(v);
        }
        return out + "}";
    }

  private:
    std::map<int, Rat> coords_;
};

} // namespace schreier

#endif
