#include "oge/kfold.hpp"

#include "oge/errors.hpp"
#include "oge/rng.hpp"

namespace oge {

FoldAssignment kfold_split(std::size_t n, int k, std::uint64_t seed) {
    if (k < 2) throw SplitError("k must be at least 2");
    if (n < std::size_t(k)) throw SplitError("need at least k rows for a k-fold split");

    Rng rng(seed);
    auto perm = rng.permutation(n);

    FoldAssignment fa;
    fa.k = k;
    fa.seed = seed;
    fa.fold_of_row.assign(n, 0);

    const std::size_t base = n / std::size_t(k);
    const std::size_t extra = n % std::size_t(k);
    std::size_t pos = 0;
    for (int f = 1; f <= k; ++f) {
        std::size_t len = base + (std::size_t(f) <= extra ? 1 : 0);
        for (std::size_t i = 0; i < len; ++i) fa.fold_of_row[perm[pos++]] = f;
    }
    return fa;
}

std::vector<std::vector<std::size_t>> FoldAssignment::fold_rows() const {
    std::vector<std::vector<std::size_t>> out(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < fold_of_row.size(); ++i)
        out[std::size_t(fold_of_row[i] - 1)].push_back(i);
    return out;
}

}
