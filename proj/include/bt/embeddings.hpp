#ifndef BT_EMBEDDINGS_HPP
#define BT_EMBEDDINGS_HPP

#include <cstdint>
#include <random>

#include "bt/filtrations.hpp"

namespace bt {

// the h-pairing dual of a function on V_i, transported to V_{-i}
// (coordinates of the stored basis of V_{-i}); swapped indices only
LatticeFunction sharp_dual(const BetaDatum& datum, int index,
                           const LatticeFunction& fn);

// the map j: (y_i) -> sum y_i + sum of sharp duals; output verified self-dual
LatticeFunction assemble_j(const HermitianSpace& space, const BetaDatum& datum,
                           const ComponentTuple& y);

// j_beta: validates the tuple as component points, then assembles
LatticeFunction j_beta(const HermitianSpace& space, const BetaDatum& datum,
                       const ComponentTuple& x);

// inverse of j on its image; throws NotInImage
ComponentTuple factorize(const HermitianSpace& space, const BetaDatum& datum,
                         const LatticeFunction& y);

// E^x-fixedness of an ambient point
bool is_E_fixed(const BetaDatum& datum, const LatticeFunction& y);

// translation of the product building: one shift per positive index,
// nonzero only on swapped indices and the distinguished O2-type index
struct Translation {
    std::vector<Rat> shifts;
};

Translation zero_translation(const BetaDatum& datum);
bool is_valid_translation(const BetaDatum& datum, const Translation& t);

// componentwise translate; O2-type components move by the model
// parameter alpha -> alpha + shift
ComponentTuple apply_translation(const BetaDatum& datum, const Translation& t,
                                 const ComponentTuple& x);

// difference recovery: the value alpha_j - alpha_i read off from the
// skew line through E_{ij}, when that line is not collapsed by sigma
std::optional<Rat> recover_difference(const HermitianSpace& space,
                                      const LatticeFunction& y, int i, int j,
                                      int denom);

struct SearchOptions {
    int denom = 4;             // grid denominator N
    int radius = 4;            // grid radius K: coordinates k/N, |k| <= K
    int random_apartments = 0; // extra conjugate apartments to sweep
    std::uint64_t seed = 1;
    // x_i on a swapped component is a concrete lattice function (the
    // component map for a positive index is the inclusion), so by default
    // candidates must restrict to it on those components; switching this
    // off searches the translation classes instead and exposes the
    // translation family of a swapped pair
    bool pin_swapped = true;
};

struct SearchResult {
    std::vector<LatticeFunction> compatible;
    // apartment coordinates for grid hits; empty for conjugate-apartment hits
    std::vector<std::vector<Rat>> compatible_alphas;
    int examined = 0;
    int jbeta_index = -1; // position of j_beta(x) among the compatible points
};

// sweep the self-dual Witt apartment grid (plus optional conjugate
// apartments) for points compatible with x; throws GridMissesJBeta when
// j_beta(x) is not representable on the grid
SearchResult uniqueness_search(const HermitianSpace& space, const BetaDatum& datum,
                               const ComponentTuple& x, const SearchOptions& opts);

// classify a sampled compatible equivariant map as a translation
Translation classify_compatible_map(
    const HermitianSpace& space, const BetaDatum& datum,
    const std::vector<std::pair<ComponentTuple, LatticeFunction>>& samples);

// a random h-isometry: product of skew unipotent factors
Matrix random_isometry(const HermitianSpace& space, std::mt19937_64& rng,
                       int factors = 2);

} // namespace bt

#endif
