#pragma once

// Self-verification suite: one claim per acceptance criterion, each with the
// numbers it measured. Used by `qwlab verify` and the acceptance test binary.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qwlab/linalg.hpp"
#include "qwlab/witness.hpp"

namespace qwlab {

enum class ClaimStatus { Pass, Fail, Degenerate };

std::string_view to_string(ClaimStatus s);

struct ClaimRecord {
  std::string id;
  std::string anchor;  // the mathematical statement being checked
  ClaimStatus status = ClaimStatus::Fail;
  nlohmann::ordered_json measured = nlohmann::ordered_json::object();
};

struct VerifyReport {
  std::vector<ClaimRecord> claims;
  bool all_pass() const;
};

using WitnessBuilder = std::function<CMat(const WitnessParams&)>;

/// Number of nonzero entries of W[a,b,c] a tamper index can address:
/// 0..8 are the diagonal, 9..14 the off-diagonal -1 entries in row-major order.
inline constexpr int kTamperSites = 15;

/// build_witness with the sign of one nonzero entry flipped.
WitnessBuilder tampered_builder(int site);

struct VerifyOptions {
  std::uint64_t seed = 20240611;
  /// Reduces grid sizes and sample counts 4x; the claim set is unchanged.
  bool quick = false;
  /// Replaces build_witness in every claim (mutation testing).
  std::optional<int> tamper;
};

VerifyReport run_verify(const VerifyOptions& opts);

/// Individual claims, exposed for the acceptance binary.
namespace claims {
ClaimRecord witness_structure(const WitnessBuilder& build);
ClaimRecord classifier_vs_seesaw(const WitnessBuilder& build, int grid, int n_starts,
                               std::uint64_t seed);
ClaimRecord wy_projector_form(const WitnessBuilder& build, int samples, std::uint64_t seed);
ClaimRecord canonical_seven_rank(const WitnessBuilder& build);
ClaimRecord case1_identities(const WitnessBuilder& build, int samples, std::uint64_t seed);
ClaimRecord basis_determinant(int samples, std::uint64_t seed);
ClaimRecord spanning_sweep(const WitnessBuilder& build, int samples, std::uint64_t seed);
ClaimRecord case2_polynomial(const WitnessBuilder& build, int unit_samples, int det_samples,
                             std::uint64_t seed);
ClaimRecord degenerate_point(int n_starts, std::uint64_t seed);
ClaimRecord determinism(std::uint64_t seed);
}  // namespace claims

}  // namespace qwlab
