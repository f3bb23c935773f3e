#pragma once

#include <cstdint>
#include <vector>

namespace oge {

// Seed-deterministic k-fold partition. Fold ids run 1..k; the first
// n mod k folds get the extra element.
struct FoldAssignment {
    int k = 0;
    std::uint64_t seed = 0;
    std::vector<int> fold_of_row;  // size n, values 1..k

    std::vector<std::vector<std::size_t>> fold_rows() const;
};

FoldAssignment kfold_split(std::size_t n, int k, std::uint64_t seed);

}
