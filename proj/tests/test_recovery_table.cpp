#include <gtest/gtest.h>

#include "oracle.hpp"
#include "rsp/channel.hpp"
#include "rsp/recovery_table.hpp"

using namespace rsp;
using protocol::AliceOutcome;
using protocol::Gate;
using protocol::OutcomeKey;

namespace {

// Two-qubit gate matrices built from single-qubit factors, independent of
// gate_matrix().
Matrix oracle_gate(Gate g) {
  const Matrix i2 = gates::identity();
  const Matrix h = gates::hadamard(), x = gates::pauli_x(), z = gates::pauli_z();
  switch (g) {
    case Gate::CX12: return oracle::lift(gates::cnot(), {1, 2}, 2);
    case Gate::CX21: return oracle::lift(gates::cnot(), {2, 1}, 2);
    case Gate::H1: return oracle::kron_all({h, i2});
    case Gate::H2: return oracle::kron_all({i2, h});
    case Gate::X1: return oracle::kron_all({x, i2});
    case Gate::X2: return oracle::kron_all({i2, x});
    case Gate::Z1: return oracle::kron_all({z, i2});
    case Gate::Z2: return oracle::kron_all({i2, z});
  }
  return i2;
}

// Bob's normalized pair state straight from the channel amplitudes.
Ket oracle_block(const OutcomeKey& key, const TargetState& t) {
  const auto basis = protocol::alice_basis(t);
  const Ket& up = key.alice == AliceOutcome::Upsilon1 ? basis.upsilon1 : basis.upsilon2;
  const Ket psi = channel::build_channel();
  Ket bob = Ket::Zero(4);
  for (Eigen::Index i = 0; i < 128; ++i) {
    const unsigned a = i >> 6, b = (i >> 4) & 3, c1 = (i >> 3) & 1, d1 = (i >> 2) & 1,
                   c2 = (i >> 1) & 1, d2 = i & 1;
    if ((c1 << 1 | c2) == key.charlie && (d1 << 1 | d2) == key.david)
      bob(b) += std::conj(up(a)) * psi(i);
  }
  return bob;
}

double oracle_fidelity(const OutcomeKey& key, std::span<const Gate> seq, const TargetState& t) {
  Matrix u = Matrix::Identity(4, 4);
  for (Gate g : seq) u = oracle_gate(g) * u;
  const Ket b = oracle_block(key, t);
  return std::norm(t.xi().dot(u * b.normalized()));
}

}  // namespace

TEST(RecoveryTable, EveryRuleRecoversRealTargets) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
  const auto& table = protocol::recovery_table();
  for (const auto& rule : table.rules) {
    EXPECT_LE(protocol::recovery_infidelity(rule.key, rule.gates), 1e-12) << rule.key.label();
    for (int i = 0; i < 20; ++i) {
      const double th = u(rng);
      const TargetState t(std::cos(th), std::sin(th));
      EXPECT_NEAR(oracle_fidelity(rule.key, rule.gates, t), 1.0, 1e-12) << rule.key.label();
    }
  }
}

TEST(RecoveryTable, RulesCoverAllCorrelatedKeysOnce) {
  const auto& table = protocol::recovery_table();
  const auto keys = protocol::all_outcome_keys();
  for (std::size_t i = 0; i < 16; ++i) {
    EXPECT_EQ(table.rules[i].key, keys[i]);
    EXPECT_TRUE(protocol::is_correlated(keys[i].charlie, keys[i].david));
  }
}

TEST(RecoveryTable, ThreeRowsRepaired) {
  const auto& table = protocol::recovery_table();
  EXPECT_EQ(table.audit.size(), 16u);
  EXPECT_EQ(table.repair_count(), 3u);
  int key_fixes = 0, gate_fixes = 0;
  for (const auto& row : table.audit) {
    const std::string printed =
        OutcomeKey{row.published.alice, row.published.charlie, row.published.david}.label();
    if (row.key_repaired) {
      ++key_fixes;
      EXPECT_TRUE(printed == "U1,10,11" || printed == "U2,10,11") << printed;
      EXPECT_EQ(row.key.charlie, 0b01u);
      EXPECT_EQ(row.key.david, 0b11u);
      EXPECT_EQ(row.key.alice, row.published.alice);
      EXPECT_FALSE(row.gates_repaired);
      EXPECT_FALSE(row.note.empty());
    }
    if (row.gates_repaired) {
      ++gate_fixes;
      EXPECT_EQ(printed, "U1,10,10");
      EXPECT_GT(row.published_infidelity, 0.1);
      EXPECT_EQ(protocol::format_gates(row.gates), "CX12 H1 X1");
    }
    if (!row.key_repaired && !row.gates_repaired) {
      EXPECT_LE(row.collapse_mismatch, 1e-12) << printed;
      EXPECT_LE(row.published_infidelity, 1e-12) << printed;
      EXPECT_EQ(protocol::format_gates(row.gates), row.published.gates);
    }
  }
  EXPECT_EQ(key_fixes, 2);
  EXPECT_EQ(gate_fixes, 1);
}

TEST(RecoveryTable, PublishedGatesFailOnTheirRow) {
  const OutcomeKey key{AliceOutcome::Upsilon1, 0b10, 0b10};
  const auto seq = protocol::parse_gates("CX12 H1 Z2 X1 CX21");
  EXPECT_LT(oracle_fidelity(key, seq, TargetState(0.6, -0.8)), 0.9);
}

TEST(RecoveryTable, PublishedCollapseMatchesRepairedKey) {
  const double s = 1.0 / std::sqrt(2.0);
  for (const auto* row : {"U1,01,11", "U2,01,11"}) {
    const OutcomeKey key = OutcomeKey::parse(row);
    const auto& audit = protocol::recovery_table().audit;
    for (const auto& a : audit) {
      if (!(a.key == key)) continue;
      for (const TargetState& t : {TargetState(0.6, 0.8), TargetState(s, -s)}) {
        const Ket printed = channel::combination(a.published.collapse, t.alpha(), t.beta());
        const Ket block = oracle_block(key, t);
        EXPECT_NEAR(std::norm(printed.normalized().dot(block.normalized())), 1.0, 1e-12);
      }
    }
  }
}

TEST(Search, FindsShortestSequence) {
  const OutcomeKey key{AliceOutcome::Upsilon1, 0b11, 0b01};
  const auto found = protocol::search_recovery(key, 6);
  ASSERT_TRUE(found.has_value());
  EXPECT_LE(found->size(), 2u);
  EXPECT_LE(protocol::recovery_infidelity(key, *found), 1e-12);
  // Nothing shorter exists.
  if (!found->empty()) EXPECT_FALSE(protocol::search_recovery(key, int(found->size()) - 1).has_value());
}

TEST(Search, EveryKeyHasAShortSolution) {
  for (const OutcomeKey& key : protocol::all_outcome_keys()) {
    const auto found = protocol::search_recovery(key, 6);
    ASSERT_TRUE(found.has_value()) << key.label();
    EXPECT_NEAR(oracle_fidelity(key, *found, TargetState(0.6, -0.8)), 1.0, 1e-12);
  }
}

TEST(Search, UncorrelatedKeyHasNoSolution) {
  EXPECT_FALSE(protocol::search_recovery(OutcomeKey{AliceOutcome::Upsilon1, 0, 1}, 3).has_value());
}
