#pragma once

// The six-qubit Borras state, the seven-qubit channel built from it, and the
// factorized forms the protocol relies on.

#include <array>
#include <span>
#include <string_view>

#include "rsp/target.hpp"
#include "rsp/tensor.hpp"

namespace rsp::channel {

inline constexpr int kChannelQubits = 7;

enum class Party { A, B1, B2, C1, D1, C2, D2 };

/// Register position (1..7) held by each party: A B1 B2 C1 D1 C2 D2.
int qubit_of(Party p);
Party party_at(int qubit);
std::string_view label(Party p);

inline constexpr std::array<int, 2> kBobQubits{2, 3};
inline constexpr std::array<int, 2> kCharlieQubits{4, 6};
inline constexpr std::array<int, 2> kDavidQubits{5, 7};
/// Everything except Bob's pair, in register order.
inline constexpr std::array<int, 5> kNonBobQubits{1, 4, 5, 6, 7};

/// phi(+/-) = (|01> +/- |10>)/sqrt2 and psi(+/-) = (|00> +/- |11>)/sqrt2.
/// The phi/psi naming is swapped relative to the common convention.
struct BellPairs {
  Ket phi_plus, phi_minus, psi_plus, psi_minus;
};
BellPairs bell_pairs();

/// lambda(+/-) = (|011> +/- |100>)/sqrt2, mu(+/-) = (|000> +/- |111>)/sqrt2.
struct GroupedTriplets {
  Ket lambda_plus, lambda_minus, mu_plus, mu_minus;
};
GroupedTriplets grouped_triplets();

Ket borras_state();

/// CX(6,7) applied to the Borras state with an ancilla |0> on qubit 7.
/// Computed once; callers receive a copy.
Ket build_channel();

/// One signed basis ket from the published 32-term expansion of the channel;
/// every coefficient is sign / (4 sqrt 2).
struct SignedKet {
  int sign;
  std::string_view bits;
};
std::span<const SignedKet> printed_channel_terms();

/// Parses a short linear combination such as "+a00 -b10 +a11" over the
/// coefficients a, b into a ket (no normalization applied).
Ket combination(std::string_view terms, cplx a, cplx b);

/// Bob's conditional pair state inside one zeta block, labelled by the
/// Charlie (C1C2) and David (D1D2) bit pairs. `bob` includes the 1/sqrt2
/// block prefactor, so its squared norm is 1 for a normalized target.
struct ZetaBlock {
  unsigned charlie;
  unsigned david;
  Ket bob;
};

/// The eight blocks of zeta_1 (which = 1) or zeta_2 (which = 2).
/// zeta_1 is evaluated at (conj alpha, conj beta) and zeta_2 at (alpha, beta),
/// so that zeta_k = 4 <Upsilon_k|Psi> for any complex target.
std::array<ZetaBlock, 8> zeta_blocks(int which, const TargetState& target);

/// zeta_1 and zeta_2 over the qubit order B1 B2 C1 C2 D1 D2, unnormalized
/// (squared norm 8 each).
struct ZetaStates {
  Ket zeta1;
  Ket zeta2;
};
ZetaStates zeta_states(const TargetState& target);

/// Moves a six-qubit ket from B1 B2 C1 C2 D1 D2 order into register order
/// B1 B2 C1 D1 C2 D2 (positions 2..7 of the channel).
Ket zeta_to_register_order(const Ket& zeta);

/// || Psi - (1/4)(|Y1>|zeta1> + |Y2>|zeta2>) ||.
double verify_factorization(const TargetState& target);

struct GroupedFormCheck {
  double literal_prefactor;    // as published: 1/32
  double corrected_prefactor;  // 1/4
  double literal_residual;     // || Psi - literal reconstruction ||
  double corrected_residual;   // || Psi - corrected reconstruction ||
  double literal_norm;         // norm of the literal reconstruction
};

/// Rebuilds the channel from the lambda/mu grouping under both prefactors.
GroupedFormCheck verify_grouped_form();

/// Seven-qubit ket from a grouped expression: ';'-separated terms of the form
/// "<s> <abc> <s> <q> <g> <s> <q> <g>", i.e. s|abc>( s|q>|g> + s|q>|g> ), with
/// s in {+,-}, q in {0,1} and g one of l+ l- m+ m- (lambda/mu). No prefactor.
Ket grouped_expression(std::string_view expr);

/// The channel's lambda/mu grouping as published (before any prefactor).
std::string_view grouped_channel_expression();

}  // namespace rsp::channel
