#pragma once

#include <vector>

#include "gain/group.hpp"

// Allocation-light running sums for the hot checking loops. Coordinates are
// accumulated raw and reduced against the torsion factors only when tested;
// sums stay far away from 64-bit limits at the scales this library handles.
namespace gain::detail {

class Accum {
public:
    void reset(const GroupSpec& spec) {
        spec_ = &spec;
        coords_.assign(static_cast<std::size_t>(spec.rank()), 0);
    }
    void add(const GroupElement& x) {
        for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += x[i];
    }
    void sub(const GroupElement& x) {
        for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= x[i];
    }
    bool is_zero() const {
        for (int i = 0; i < spec_->free_rank; ++i)
            if (coords_[i] != 0) return false;
        for (std::size_t i = 0; i < spec_->torsion.size(); ++i)
            if (coords_[spec_->free_rank + i] % spec_->torsion[i] != 0) return false;
        return true;
    }
    GroupElement value() const { return canonicalize(*spec_, coords_); }

private:
    const GroupSpec* spec_ = nullptr;
    GroupElement coords_;
};

}  // namespace gain::detail
