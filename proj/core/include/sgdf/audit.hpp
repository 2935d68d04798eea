#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sgdf/io.hpp"

namespace sgdf {

// One acceptance check: per-scale rows plus a verdict.
struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string summary;
  std::vector<AuditRow> rows;
  double seconds = 0.0;
};

struct AuditConfig {
  int recursion_max_n = 16;            // exact corner recursion
  int corner_numeric_max_n = 7;        // numeric corner resistance
  double corner_numeric_rel_tol = 1e-8;
  int good_energy_max_n = 8;           // closed form vs brute force
  int good_energy_triples = 20;
  int weak_mono_samples = 1000;        // random cell functions
  int weak_mono_max_nm = 4;            // (n, m) in {1..max}^2
  int corner_bound_max_n = 6;          // exhaustive corner bound
  std::vector<double> eps_grid;        // gamma probe offsets
  double probe_limit_tol = 0.02;
  double sandwich_tol = 1e-9;
  std::size_t holder_pairs = 10000;
  int holder_max_level = 8;
  int hat_max_n = 6;
  int hat_random_chains = 100;
  int counts_max_n = 8;                // brute-force combinatorics
  int equivalence_depth = 7;           // compared against depth+1
  double equivalence_stability = 0.20;
  std::uint64_t seed = 12345;
};

// Full-scale levels and tolerances of the acceptance suite.
AuditConfig acceptance_config();
// Clamp every level-like knob to max_level (sample counts stay).
AuditConfig capped(AuditConfig cfg, int max_level);

CriterionResult criterion_corner_recursion(const AuditConfig& cfg);
CriterionResult criterion_corner_resistance_numeric(const AuditConfig& cfg);
CriterionResult criterion_good_energies(const AuditConfig& cfg);
CriterionResult criterion_weak_monotonicity(const AuditConfig& cfg);
CriterionResult criterion_corner_bound(const AuditConfig& cfg);
CriterionResult criterion_gamma_probe(const AuditConfig& cfg);
CriterionResult criterion_holder(const AuditConfig& cfg);
CriterionResult criterion_hat_sandwich(const AuditConfig& cfg);
CriterionResult criterion_counts(const AuditConfig& cfg);
CriterionResult criterion_equivalence(const AuditConfig& cfg);

std::vector<CriterionResult> run_all_criteria(const AuditConfig& cfg);

}  // namespace sgdf
