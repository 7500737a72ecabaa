#include "progblock/oracle.hpp"

#include <stdexcept>

namespace progblock {

bool Oracle::one_draw(std::int32_t u, std::int32_t v, std::uint64_t salt) const {
    bool truth = gt_->same(u, v);
    bool flip = pair_unit_draw(seed_, u, v, salt) < error_rate_;
    return truth != flip;
}

bool Oracle::answer(std::int32_t u, std::int32_t v) {
    if (u == v) throw std::invalid_argument("oracle: asked about a self pair");
    asked_.insert(pair_key(u, v));
    if (!majority_) return one_draw(u, v, 1);
    int yes = 0;
    for (std::uint64_t salt = 1; salt <= 3; ++salt)
        if (one_draw(u, v, salt)) ++yes;
    return yes >= 2;
}

}  // namespace progblock
