#ifndef BT_FILTRATIONS_HPP
#define BT_FILTRATIONS_HPP

#include "bt/lattice_fn.hpp"

namespace bt {

// A point of the smaller building per positive component index, each in
// the frame coordinates of its component.
using ComponentTuple = std::vector<LatticeFunction>;

// the square lattice function at s: {a : a y(r) in y(r+s) for all r},
// as a lattice in vectorized n x n matrices; exponent-matrix fast path
// for split y
Lattice square_filtration(const LatticeFunction& y, Rat s);
// the defining Hom-intersection, independent of the split form
Lattice square_filtration_oracle(const LatticeFunction& y, Rat s);

// skew part of the square filtration, in skew-basis coordinates
Lattice lie_filtration_g(const HermitianSpace& space, const LatticeFunction& y,
                         Rat s);

// the embedded-h filtration of a component tuple, in h-basis coordinates
Lattice h_filtration(const HermitianSpace& space, const BetaDatum& datum,
                     const ComponentTuple& x, Rat s);

// right-hand side of the compatibility identity: g_y intersected with
// the embedded h, in h-basis coordinates
Lattice g_intersect_h(const BetaDatum& datum, const LatticeFunction& y, Rat s);

// the filtration of End_{E_i}(V_i) induced by a component point, in
// endo-basis coordinates
Lattice component_endo_filtration(const ComponentField& comp,
                                  const LatticeFunction& x_i, Rat s);

// throws BadComponentPoint unless every x_i is an o_{E_i}-function and
// the fixed-index entries are self-dual for the restricted form
void validate_component_tuple(const HermitianSpace& space, const BetaDatum& datum,
                              const ComponentTuple& x);

struct ExtensionResult {
    bool ok = true;
    std::optional<Rat> witness; // first parameter where the two sides differ
};

// the compatibility identity h_x = g_y cap h, decided on the merged
// jump set of both sides over one period
ExtensionResult is_extension(const HermitianSpace& space, const BetaDatum& datum,
                             const LatticeFunction& y, const ComponentTuple& x);

// all idempotents lie in the order attached to y
bool idempotents_in_order(const BetaDatum& datum, const LatticeFunction& y);

struct ComponentSplit {
    std::vector<LatticeFunction> pieces;     // per positive index, frame coords
    std::vector<LatticeFunction> neg_pieces; // swapped partners; default otherwise
};

// split y along V = (+) V_i; throws DoesNotSplit
ComponentSplit split_components(const BetaDatum& datum, const LatticeFunction& y);

// the componentwise form of the compatibility identity
ExtensionResult is_extension_componentwise(const HermitianSpace& space,
                                           const BetaDatum& datum,
                                           const LatticeFunction& y,
                                           const ComponentTuple& x);

} // namespace bt

#endif
