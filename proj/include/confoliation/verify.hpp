#pragma once

// Quantitative checks for the assembled family: integrability at t=0,
// contactness and supportedness for t>0, seam smoothness, derivative audits,
// t-sweeps, and grid-refinement stability.

#include <confoliation/construction.hpp>

#include <json.hpp>

#include <string>
#include <vector>

namespace confoliation {

struct CheckResult {
  std::string check;
  std::string region; // region or seam name
  double t = 0.0;
  double margin = 0.0;
  double threshold = 0.0;
  bool pass_if_leq = false; // sup-type checks pass when margin <= threshold
  bool pass = false;
  Point3 witness{0.0, 0.0, 0.0};

  nlohmann::json to_json() const;
};

struct SweepRow {
  double t;
  std::vector<std::pair<std::string, double>> contact;   // region -> min margin
  std::vector<std::pair<std::string, double>> supported; // region -> min margin
  double seam_max;
};

struct VerificationReport {
  nlohmann::json config_echo;
  std::vector<CheckResult> checks;
  std::vector<SweepRow> sweep;
  bool overall = true;
  double t_max_pass = 0.0; // largest sweep t with every per-t check green
  nlohmann::json grid_meta;
  double elapsed_seconds = 0.0;

  void append(std::vector<CheckResult> more);
  nlohmann::json to_json() const;
  std::string margins_csv() const;
};

// Tolerances pinned by the verification contract.
inline constexpr double kIntegrabilityTol = 1e-10;
inline constexpr double kSeamTol = 1e-9;
inline constexpr double kAuditTol = 1e-6;

int worker_count(); // CONFOLIATION_THREADS caps hardware concurrency

std::vector<CheckResult> check_integrability(const GlobalFormFamily &fam);
std::vector<CheckResult> check_contact(const GlobalFormFamily &fam, double t);
std::vector<CheckResult> check_supported(const GlobalFormFamily &fam, double t);
std::vector<CheckResult> check_seams(const GlobalFormFamily &fam, double t);
std::vector<SweepRow> sweep_t(const GlobalFormFamily &fam, const std::vector<double> &ts);
CheckResult audit_derivatives(const GlobalFormFamily &fam, uint64_t seed);

// Max relative change of every contact/supportedness margin when the grid
// resolution doubles; relative to max(|m1|, |m2|, check threshold floor).
double refinement_stability(const GlobalFormFamily &fam);

// Full pipeline: integrability + sweep-wise contact/supported/seams + audit.
VerificationReport run_verification(const GlobalFormFamily &fam, uint64_t seed);

// Evaluates the engine margin against the closed-form alpha_t ^ d(alpha_t)
// coefficients on N; returns the max relative discrepancy over n samples.
double closed_form_agreement(const GlobalFormFamily &fam, int n, uint64_t seed);

} // namespace confoliation
