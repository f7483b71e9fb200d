#pragma once

// Bob's recovery operations as published, and the verified table built from
// them. Each published row is checked against the factorized channel; rows
// that fail are repaired and the repair is recorded.

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rsp/protocol.hpp"

namespace rsp::protocol {

struct PublishedRow {
  AliceOutcome alice;
  unsigned charlie;
  unsigned david;
  std::string_view collapse;  // combination over a, b, scaled by 1/sqrt2
  std::string_view gates;
};

std::span<const PublishedRow> published_recovery_table();

struct RowAudit {
  PublishedRow published;
  OutcomeKey key;            // key after repair
  std::vector<Gate> gates;   // gate list after repair
  bool key_repaired = false;
  bool gates_repaired = false;
  /// 1 - |<published collapse|block at published key>|^2, worst case over the
  /// probe targets; 1 when the published key names no block.
  double collapse_mismatch = 0.0;
  /// 1 - fidelity of the published gate list on the repaired key's block.
  double published_infidelity = 0.0;
  std::string note;
};

struct RecoveryTable {
  std::array<RecoveryRule, 16> rules;
  std::vector<RowAudit> audit;  // one entry per published row

  std::size_t repair_count() const;
};

/// Validates and repairs the published rows. Pure; recovery_sequence() uses
/// a cached instance.
RecoveryTable build_recovery_table();
const RecoveryTable& recovery_table();

/// Worst-case 1 - |<xi|U b>|^2 over the probe targets, where b is Bob's
/// normalized block state for `key`.
double recovery_infidelity(const OutcomeKey& key, std::span<const Gate> gates);

/// Shortest gate list (ties broken by gate order) of length <= max_length
/// that recovers the target for `key`; empty optional when none exists.
std::optional<std::vector<Gate>> search_recovery(const OutcomeKey& key, int max_length);

}  // namespace rsp::protocol
