#pragma once

#include "bergman/alpha.hpp"
#include "bergman/weights.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bergman {

inline constexpr const char* kSuiteVersion = "bergman-lab/1";

/// Number of random vectors sampled by the checks that sample.
inline constexpr int kSamplesPerCheck = 20;

enum class CheckKind {
  CoeffRatio,         // C_{N,α,n} = ω_{n+N}/ω_n
  CoeffBounds,        // (3+α)^{−N} < C_{N,α,n} < 1
  NormIdentity,       // ‖Sf‖² = Σ C ω |a|²
  LowerBound,         // ‖Tf‖² ≥ (3+α)^{−N}‖f‖², σ_min(T) ≥ (3+α)^{−N/2}
  AdjointFormula,     // metric adjoint of S = explicit M*_{z^N}
  AStarT,             // A*T = I, A* = (T*T)⁻¹T*
  Projection,         // TA* = P_{TH}, I − TA* = P_E
  Telescoping,        // Σ T^k P_E (A*)^k = I − Tⁿ(A*)ⁿ
  KernelContainment,  // ker (A*)ⁿ ⊆ E + TE + … + T^{n−1}E
  Expansive,          // ‖A^m g‖ ≥ ‖g‖
  MinDegree,          // A^m raises minimal degree by mN
  IteratedCoeff,      // A^m acts by ω_n/ω_{n+mN}
  Reducing,           // H_Λ reducing for S
  Beurling,           // H = [H ⊖ SH] at truncation
};

const char* check_name(CheckKind kind);
std::optional<CheckKind> parse_check(const std::string& name);
const std::vector<CheckKind>& all_checks();

/// Default tolerance per check: 1e−10 for operator-norm residuals and
/// subspace distances, 1e−12 for scalar identities, 0 for strict bounds.
double default_tol(CheckKind kind);

struct CheckSpec {
  CheckKind kind = CheckKind::NormIdentity;
  int N = 1;
  Alpha alpha{0.0};
  Index D = 16;
  std::vector<int> residues{0};  // Λ; {} is the zero subspace
  int depth = 1;                 // n or m for depth checks; 0 = maximal for beurling
  std::uint64_t seed = 1;
  ScalarMode mode = ScalarMode::Float64;
  double tol = 1e-10;
  std::optional<CoeffPerturbation> perturbation;

  std::string name() const { return check_name(kind); }
  /// Canonical report order.
  bool operator<(const CheckSpec& other) const;
};

/// A spec with the default tolerance for its kind.
CheckSpec make_check(CheckKind kind, int N, const Alpha& alpha, Index D, std::vector<int> residues, int depth = 1,
                     std::uint64_t seed = 1, ScalarMode mode = ScalarMode::Float64);

struct ReportEntry {
  CheckSpec spec;
  double residual = 0.0;
  bool pass = false;
  double wall_ms = 0.0;
  std::string note;
};

struct VerificationReport {
  std::vector<ReportEntry> entries;

  std::size_t total() const { return entries.size(); }
  std::size_t passed() const;
  std::size_t failed() const { return total() - passed(); }
  bool all_passed() const { return failed() == 0; }
};

ReportEntry check_coeff_ratio(const CheckSpec& spec);
ReportEntry check_coeff_bounds(const CheckSpec& spec);
ReportEntry check_norm_identity(const CheckSpec& spec);
ReportEntry check_lower_bound(const CheckSpec& spec);
ReportEntry check_adjoint_formula(const CheckSpec& spec);
ReportEntry check_astar_t(const CheckSpec& spec);
ReportEntry check_projection(const CheckSpec& spec);
ReportEntry check_telescoping(const CheckSpec& spec);
ReportEntry check_kernel_containment(const CheckSpec& spec);
ReportEntry check_expansive(const CheckSpec& spec);
ReportEntry check_min_degree(const CheckSpec& spec);
ReportEntry check_iterated_coeff(const CheckSpec& spec);
ReportEntry check_reducing(const CheckSpec& spec);
ReportEntry check_beurling(const CheckSpec& spec);

/// Runs one check. Errors from the check itself (NotReducing, DepthOverflow,
/// SingularGram, …) propagate.
ReportEntry run_check(const CheckSpec& spec);

/// Runs every spec, collecting failures and errors instead of aborting.
/// `threads` = 0 picks the hardware concurrency. Entries come back in
/// canonical order regardless of scheduling.
VerificationReport run_suite(const std::vector<CheckSpec>& grid, unsigned threads = 0);

/// N ∈ {1,2,3}, α ∈ {−0.5, 0, 0.5, 1, 2.5} (float) and {0, 1/2, 1} (exact),
/// D ∈ {32, 64}, every nonempty Λ, depths 1…4.
std::vector<CheckSpec> default_grid();

/// A small grid for smoke runs: N ∈ {1,2}, α ∈ {0, 1/2}, D = 16.
std::vector<CheckSpec> quick_grid();

/// Every nonempty Λ ⊆ {0,…,N−1}.
std::vector<std::vector<int>> nonempty_residue_sets(int N);

}  // namespace bergman
