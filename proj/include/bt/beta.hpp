#ifndef BT_BETA_HPP
#define BT_BETA_HPP

#include <optional>

#include "bt/hermitian.hpp"
#include "bt/poly.hpp"
#include "bt/rational.hpp"

namespace bt {

// How the self-dual points of a fixed-index component are parametrized.
// "mirror": slot pairs (i, j) with a_j = -a_i plus optionally pinned
// slots; "values": an explicit finite list of admissible parameter
// vectors. Swapped-index components carry mode `none` (no constraint).
struct SelfDualSpec {
    enum Mode { none, mirror, values };
    Mode mode = none;
    std::vector<std::pair<int, int>> pairs;
    std::vector<std::pair<int, Rat>> fixed;
    std::vector<std::vector<Rat>> value_list;
};

// Declared decomposition data for one component of E = F[beta].
// A swapped component (is_plus) stands for the pair (i, -i); the data
// for -i is derived from it.
struct ComponentSpec {
    int index = 1;                     // positive label
    bool is_plus = false;
    bool o2_type = false;              // split rank-one orthogonal factor
    std::vector<Laurent> min_poly;     // monic, coefficients from degree 0
    int e = 1;                         // ramification index of E_i / F
    int f = 1;                         // residue degree of E_i / F
    Matrix e_vectors;                  // n x m, an E_i-basis of V_i
    std::optional<Matrix> uniformizer; // ambient; defaults to t * 1^i
    std::optional<Matrix> theta;       // ambient residue generator, f > 1
    std::vector<Matrix> extra_oE_gens; // ambient, optional
    SelfDualSpec sd;
};

// Fully validated component: idempotent, adapted frame of V_i, and the
// embedded contribution to the fixed Lie algebra h.
struct ComponentField {
    int index = 1;
    bool is_plus = false;
    bool o2_type = false;
    std::vector<Laurent> min_poly;
    int e = 1, f = 1;
    int m = 0;                 // dim_{E_i} V_i
    int d = 0;                 // m * e * f = dim_F V_i
    bool beta_zero = false;
    SelfDualSpec sd;

    Matrix idempotent;         // n x n
    Matrix idempotent_neg;     // swapped pairs only
    Matrix subspace;           // S: n x d, the ambient adapted frame of V_i
    Matrix coord;              // T: d x n with T S = I
    Matrix subspace_neg;       // basis of V_{-i} (swapped pairs only)
    Matrix coord_neg;
    Matrix uniformizer;        // ambient n x n
    std::vector<Rat> frame_shift; // per frame column: j/e
    std::vector<int> frame_slot;  // per frame column: parameter slot c
    Matrix pi_coords;          // T pi S, d x d
    std::vector<Matrix> oE_gen_coords; // theta and extra generators, in frame coordinates
    Matrix pi_coords_neg;              // sigma(pi) on V_{-i} (swapped pairs only)
    std::vector<Matrix> oE_gen_coords_neg;
    Matrix restricted_gram;    // S^T J S for fixed-index components
    Matrix cross_gram;         // S_neg^T J S for swapped pairs
    Matrix endo_basis;         // n^2 cols basis of embedded End_{E_i}(V_i)
    Matrix h_block;            // n^2 cols basis of this component's slice of h
    // the same bases expressed on d x d frame-coordinate endomorphisms
    // (h_block columns read through a |-> T a S on V_i, resp. V_{-i})
    Matrix endo_basis_coords;  // d^2 x (m^2 e f)
    Matrix h_block_coords;     // d^2 x dim of the block
    Matrix h_block_neg_coords; // swapped pairs: the -sigma(a) side on V_{-i}
};

struct BetaDatum {
    Matrix beta;
    bool has_gl1_factor = false;
    std::vector<ComponentField> components;
    Matrix h_basis;                  // n^2 x dim h
    std::vector<int> h_block_offset; // per component, column offset in h_basis
    const ComponentField& component(int index) const;
};

// Verify that (beta, specs) describes a sigma-skew semisimple element
// with the declared field decomposition, build the idempotents 1^i by
// CRT interpolation, the adapted frames, and the basis of
// h = {a in End(V) : [a, beta] = 0, sigma(a) = -a}.
BetaDatum validate_beta(const HermitianSpace& space, const Matrix& beta,
                        const std::vector<ComponentSpec>& specs);

// Embed a in End_{E_i}(V_i) (frame coordinates, d x d) into End(V):
// fixed-index components extend by zero (a must be skew for the
// restricted form), swapped pairs map a to (a ext 0) - sigma(a ext 0).
Matrix embed_component_endo(const HermitianSpace& space, const BetaDatum& datum,
                            int index, const Matrix& a);

} // namespace bt

#endif
