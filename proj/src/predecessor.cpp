#include "gridslp/predecessor.hpp"

#include <algorithm>

namespace gridslp {

PredecessorSet::PredecessorSet(std::vector<Dim> keys) : keys_(std::move(keys)) {
    std::sort(keys_.begin(), keys_.end());
    keys_.erase(std::unique(keys_.begin(), keys_.end()), keys_.end());
}

std::optional<Dim> PredecessorSet::predecessor(Dim x) const {
    std::size_t r = rank(x);
    if (r == npos) return std::nullopt;
    return keys_[r];
}

}  // namespace gridslp
