#include "rsp/channel.hpp"

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "rsp/gates.hpp"

namespace rsp::channel {
namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// Borras state grouping over qubits 1..6: |abc>( s|q>|bell> + s|q>|bell> ),
// with p = phi and s = psi.
constexpr std::string_view kBorrasExpression =
    "+ 000 + 0 s+ + 1 p+;"
    "+ 001 + 0 p- - 1 s-;"
    "+ 010 + 0 p+ - 1 s+;"
    "+ 011 + 0 s- + 1 p-;"
    "- 100 + 0 p- + 1 s-;"
    "+ 101 - 0 s+ + 1 p+;"
    "+ 110 + 0 s- - 1 p-;"
    "+ 111 + 0 p+ + 1 s+";

constexpr std::string_view kGroupedChannelExpression =
    "+ 000 + 0 m+ + 1 l+;"
    "+ 001 + 0 l- - 1 m-;"
    "+ 010 + 0 l+ - 1 m+;"
    "+ 011 + 0 m- + 1 l-;"
    "+ 100 - 0 l- - 1 m-;"
    "+ 101 + 1 l+ - 0 m+;"
    "+ 110 + 0 m- - 1 l-;"
    "+ 111 + 0 l+ + 1 m+";

constexpr std::array<SignedKet, 32> kPrintedChannel{{
    {+1, "0000000"}, {+1, "0000111"}, {+1, "0001011"}, {+1, "0001100"},
    {+1, "0010011"}, {-1, "0010100"}, {-1, "0011000"}, {+1, "0011111"},
    {+1, "0100011"}, {+1, "0100100"}, {-1, "0101000"}, {-1, "0101111"},
    {+1, "0110000"}, {-1, "0110111"}, {+1, "0111011"}, {-1, "0111100"},
    {-1, "1000011"}, {+1, "1000100"}, {-1, "1001000"}, {+1, "1001111"},
    {-1, "1010000"}, {-1, "1010111"}, {+1, "1011011"}, {+1, "1011100"},
    {+1, "1100000"}, {-1, "1100111"}, {-1, "1101011"}, {+1, "1101100"},
    {+1, "1110011"}, {+1, "1110100"}, {+1, "1111000"}, {+1, "1111111"},
}};

struct BlockSpec {
  std::string_view bob;  // linear combination over a, b
  unsigned charlie;      // C1C2 as a two-bit number
  unsigned david;        // D1D2 as a two-bit number
};

constexpr std::array<BlockSpec, 8> kZeta1{{
    {"+a00 +b10 +a11 -b01", 0b00, 0b00},
    {"+a01 +b11 +a10 -b00", 0b01, 0b01},
    {"-a01 +b11 -a10 -b00", 0b10, 0b00},
    {"+a00 -b10 +a11 +b01", 0b11, 0b01},
    {"-a01 +b11 +a10 +b00", 0b00, 0b10},
    {"+a00 +b10 -a11 +b01", 0b10, 0b10},
    {"+a00 -b10 -a11 -b01", 0b01, 0b11},
    {"+a01 +b11 -a10 +b00", 0b11, 0b11},
}};

constexpr std::array<BlockSpec, 8> kZeta2{{
    {"+a10 -b00 -a01 -b11", 0b00, 0b00},
    {"+a11 -b01 -a00 -b10", 0b01, 0b01},
    {"+a11 +b01 -a00 +b10", 0b10, 0b00},
    {"-a10 -b00 +a01 -b11", 0b11, 0b01},
    {"+a11 +b01 +a00 -b10", 0b00, 0b10},
    {"+a10 -b00 +a01 +b11", 0b10, 0b10},
    {"-a10 -b00 -a01 +b11", 0b01, 0b11},
    {"+a11 -b01 +a00 +b10", 0b11, 0b11},
}};

int parse_sign(const std::string& tok) {
  if (tok == "+") return 1;
  if (tok == "-") return -1;
  throw ArgumentError("expected sign, got '" + tok + "'");
}

template <typename LabelFn>
Ket parse_grouped(std::string_view expr, int tail_qubits, LabelFn&& lookup) {
  const int n = 4 + tail_qubits;
  Ket out = Ket::Zero(Eigen::Index{1} << n);
  std::string text(expr);
  std::stringstream terms(text);
  std::string term;
  while (std::getline(terms, term, ';')) {
    std::istringstream in(term);
    std::vector<std::string> tok;
    for (std::string t; in >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok.size() != 8) throw ArgumentError("malformed grouped term: " + term);
    const int outer = parse_sign(tok[0]);
    const Ket head = ket(tok[1]);
    for (int part = 0; part < 2; ++part) {
      const int sign = parse_sign(tok[2 + 3 * part]);
      const Ket tail = kron(ket(tok[3 + 3 * part]), lookup(tok[4 + 3 * part]));
      out += double(outer * sign) * kron(head, tail);
    }
  }
  return out;
}

Ket make_channel() {
  const Ket register_state = kron(borras_state(), ket("0"));
  return apply_to_qubits(gates::cnot(), {6, 7}, register_state);
}

}  // namespace

int qubit_of(Party p) { return static_cast<int>(p) + 1; }

Party party_at(int qubit) {
  if (qubit < 1 || qubit > kChannelQubits) throw ArgumentError("channel qubit out of range");
  return static_cast<Party>(qubit - 1);
}

std::string_view label(Party p) {
  static constexpr std::array<std::string_view, 7> names{"A", "B1", "B2", "C1", "D1", "C2", "D2"};
  return names[static_cast<std::size_t>(p)];
}

BellPairs bell_pairs() {
  return {kInvSqrt2 * (ket("01") + ket("10")), kInvSqrt2 * (ket("01") - ket("10")),
          kInvSqrt2 * (ket("00") + ket("11")), kInvSqrt2 * (ket("00") - ket("11"))};
}

GroupedTriplets grouped_triplets() {
  return {kInvSqrt2 * (ket("011") + ket("100")), kInvSqrt2 * (ket("011") - ket("100")),
          kInvSqrt2 * (ket("000") + ket("111")), kInvSqrt2 * (ket("000") - ket("111"))};
}

Ket borras_state() {
  const BellPairs bell = bell_pairs();
  const Ket unscaled = parse_grouped(kBorrasExpression, 2, [&](const std::string& g) -> Ket {
    if (g == "p+") return bell.phi_plus;
    if (g == "p-") return bell.phi_minus;
    if (g == "s+") return bell.psi_plus;
    if (g == "s-") return bell.psi_minus;
    throw ArgumentError("unknown Bell label '" + g + "'");
  });
  return unscaled / 4.0;
}

Ket build_channel() {
  static const Ket channel = make_channel();
  return channel;
}

std::span<const SignedKet> printed_channel_terms() { return kPrintedChannel; }

Ket combination(std::string_view terms, cplx a, cplx b) {
  std::istringstream in{std::string(terms)};
  Ket out;
  for (std::string tok; in >> tok;) {
    if (tok.size() < 3 || (tok[0] != '+' && tok[0] != '-') || (tok[1] != 'a' && tok[1] != 'b')) {
      throw ArgumentError("malformed combination term '" + tok + "'");
    }
    const Ket basis = ket(std::string_view(tok).substr(2));
    if (out.size() == 0) out = Ket::Zero(basis.size());
    const double sign = tok[0] == '+' ? 1.0 : -1.0;
    out += sign * (tok[1] == 'a' ? a : b) * basis;
  }
  return out;
}

std::array<ZetaBlock, 8> zeta_blocks(int which, const TargetState& target) {
  if (which != 1 && which != 2) throw ArgumentError("zeta index must be 1 or 2");
  const auto& spec = which == 1 ? kZeta1 : kZeta2;
  const cplx a = which == 1 ? std::conj(target.alpha()) : target.alpha();
  const cplx b = which == 1 ? std::conj(target.beta()) : target.beta();
  std::array<ZetaBlock, 8> blocks;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    blocks[i] = {spec[i].charlie, spec[i].david, kInvSqrt2 * combination(spec[i].bob, a, b)};
  }
  return blocks;
}

ZetaStates zeta_states(const TargetState& target) {
  ZetaStates out{Ket::Zero(64), Ket::Zero(64)};
  for (int which : {1, 2}) {
    Ket& z = which == 1 ? out.zeta1 : out.zeta2;
    for (const auto& block : zeta_blocks(which, target)) {
      const Ket cd = basis_ket(4, Eigen::Index(block.charlie << 2 | block.david));
      z += kron(block.bob, cd);
    }
  }
  return out;
}

Ket zeta_to_register_order(const Ket& zeta) {
  if (zeta.size() != 64) throw ArgumentError("zeta state must have six qubits");
  // Source bit order B1 B2 C1 C2 D1 D2; destination B1 B2 C1 D1 C2 D2.
  // Only C2 and D1 trade places.
  Ket out(64);
  for (Eigen::Index src = 0; src < 64; ++src) {
    const Eigen::Index c2 = (src >> 2) & 1;
    const Eigen::Index d1 = (src >> 1) & 1;
    const Eigen::Index dst = (src & ~Eigen::Index(0b110)) | (d1 << 2) | (c2 << 1);
    out(dst) = zeta(src);
  }
  return out;
}

double verify_factorization(const TargetState& target) {
  const cplx a = target.alpha();
  const cplx b = target.beta();
  Ket upsilon1(2), upsilon2(2);
  upsilon1 << a, b;
  upsilon2 << -std::conj(b), std::conj(a);
  const ZetaStates z = zeta_states(target);
  const Ket rebuilt = 0.25 * (kron(upsilon1, zeta_to_register_order(z.zeta1)) +
                              kron(upsilon2, zeta_to_register_order(z.zeta2)));
  return (build_channel() - rebuilt).norm();
}

Ket grouped_expression(std::string_view expr) {
  const GroupedTriplets t = grouped_triplets();
  return parse_grouped(expr, 3, [&](const std::string& g) -> Ket {
    if (g == "l+") return t.lambda_plus;
    if (g == "l-") return t.lambda_minus;
    if (g == "m+") return t.mu_plus;
    if (g == "m-") return t.mu_minus;
    throw ArgumentError("unknown triplet label '" + g + "'");
  });
}

std::string_view grouped_channel_expression() { return kGroupedChannelExpression; }

GroupedFormCheck verify_grouped_form() {
  const Ket unscaled = grouped_expression(kGroupedChannelExpression);
  const Ket psi = build_channel();
  GroupedFormCheck check{};
  check.literal_prefactor = 1.0 / 32.0;
  check.corrected_prefactor = 1.0 / 4.0;
  check.literal_residual = (psi - check.literal_prefactor * unscaled).norm();
  check.corrected_residual = (psi - check.corrected_prefactor * unscaled).norm();
  check.literal_norm = (check.literal_prefactor * unscaled).norm();
  return check;
}

}  // namespace rsp::channel
