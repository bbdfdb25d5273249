#ifndef GIBBS_REPORTS_HPP
#define GIBBS_REPORTS_HPP

#include <string>

#include "gibbs/collapsing.hpp"
#include "gibbs/hier.hpp"
#include "gibbs/spectral.hpp"

namespace gibbs {

// Deterministic JSON emission; every float printed with 17 significant
// digits, keys in fixed order, schema tagged "1".
namespace reports {

std::string format_double(double v);

std::string spectral_json(const SpectralReport& rep);
std::string solidarity_json(const SolidarityVerdict& v, std::uint64_t seed);
std::string solidarity_csv(const SolidarityVerdict& v);
std::string collapsed_json(const CollapsedPair& pair);
std::string blocked_vs_collapsed_json(const BlockedVsCollapsedReport& rep);
std::string two_component_json(const TwoComponentReport& rep);
std::string drift_json(const hier::DriftReport& rep, double y);
std::string minorization_json(const hier::MinorizationReport& rep, double y);
std::string contrast_json(const hier::ContrastReport& rep, double y);
std::string trace_csv(const hier::ChainTrace& trace);

// Operator matrix as row-major CSV, 17 significant digits.
std::string matrix_csv(const Eigen::MatrixXd& m);

// JointTarget as the CLI ingestion schema {"sizes":[...],"weights":[...]}.
std::string target_json(const JointTarget& t);

}  // namespace reports
}  // namespace gibbs

#endif  // GIBBS_REPORTS_HPP
