#pragma once

#include <string>
#include <vector>

#include "clnode/cl_series.hpp"
#include "clnode/real.hpp"
#include "clnode/report.hpp"

namespace clnode {

struct VerifyConfig {
  bool symbolic = false;
  int q = 2;
  int N = 12;
  int T = 40;
  NodeOptions node;
  mpfr_prec_t prec = 128;
  int workers = 1;
};

// thmB, thmA, euler-identities, partition-bijections, smooth-products,
// special-values, all.
const std::vector<std::string>& verify_suites();

// Runs one suite. Unknown names raise OutOfRange.
Report run_verify(const std::string& suite, const VerifyConfig& cfg);

// Suite pieces, exposed for the acceptance driver.
Report verify_node_counts(const VerifyConfig& cfg);
Report verify_special_values(int T, int N);
Report verify_pole_structure(int T);
Report verify_unit_values_numeric(const Real& t, double tolerance);
Report verify_euler_identities(int T, int N);
Report verify_partition_bijections();
Report verify_smooth_products(int q, int N, const CensusOptions& opts, const CensusCache* cache);
Report verify_maclaurin(int q, int count, const Real& radius, int N, int workers);
Report verify_theta_equation(int count, mpfr_prec_t prec, double tolerance, int workers);
// Conjectural: val_t(a_n) = ceil(n^2/4) with sign (-1)^n.
Report verify_coefficient_valuations(int N, int T);

}  // namespace clnode
