#pragma once

#include "cyllens/exponents.hpp"
#include "cyllens/functionals.hpp"

#include <optional>
#include <vector>

namespace cyllens {

enum class VerdictStatus {
    RegularByTH1,
    RegularByModLemma,
    RegularByCKN,
    FlaggedCandidate,
    Inconclusive,
};

const char* verdict_name(VerdictStatus s);

struct Evidence {
    double r = 0.0;
    double quantity = 0.0;
    double threshold = 0.0;
};

/// Limit criteria are approximated by the extremum over the K smallest
/// admissible radii; the verdict records the radii and K actually used.
struct Verdict {
    VerdictStatus status = VerdictStatus::Inconclusive;
    std::vector<Evidence> evidence;
    double epsilon_used = 0.0;
    std::vector<double> radii_used;
    int k_used = 0;
};

/// Smallness of the scaled L^{p,q} norm of u: regular when the max over the
/// K smallest radii is <= eps. With eps0 set, a quantity >= eps0 at any
/// radius flags the center as a singularity candidate instead.
Verdict evaluate_TH1(const SpaceTimeField& f, const SpaceTimePoint& z, const PQPair& pq,
                     const std::vector<double>& radii, double eps, const QuadratureConfig& cfg,
                     int k = 3, std::optional<double> eps0 = std::nullopt);

/// Smallness of liminf C^{1/3} + D~: regular when the min over the K
/// smallest radii is < eps.
Verdict evaluate_mod_lemma(const SpaceTimeField& f, const SpaceTimePoint& z,
                           const ExponentSet& exps, const std::vector<double>& radii, double eps,
                           const QuadratureConfig& cfg, int k = 3);

/// Classical smallness of the scaled dissipation E(r).
Verdict ckn_criterion(const SpaceTimeField& f, const SpaceTimePoint& z,
                      const std::vector<double>& radii, double eps, const QuadratureConfig& cfg,
                      int k = 3);

/// Empirical stand-in for the decay constant:
///   (C^{1/3}(tr) + D~(tr)) / (t^{1+alpha} (C^{1/3}(r) + D~(r) + m r^{b+1})).
/// Diagnostic only, no pass/fail.
struct DecayRecord {
    double theta = 0.0;
    double alpha = 0.0;
    double numerator = 0.0;
    double denominator = 0.0;
    double ratio = 0.0;
    bool zero_over_zero = false;
};

DecayRecord decay_diagnostic(const SpaceTimeField& f, const SpaceTimePoint& z,
                             const ExponentSet& exps, double r, double theta, double alpha,
                             double gamma, double m_gamma, double beta,
                             const QuadratureConfig& cfg);

/// The alpha the decay argument fixes internally, 1 - 1/lambda.
double decay_alpha_from_lambda(const ExponentSet& exps);

/// Iterates s_k = C(t^k r) + D1~(t^k r) for k = 0..k_max, with the reference
/// halving envelope (1/2)^k s_0 + tail for reporting only; the tail
/// accumulates the G-driven source terms with unit constant.
struct IterationRecord {
    double theta = 0.0;
    std::vector<double> s;
    std::vector<double> envelope;
};

IterationRecord iteration_diagnostic(const SpaceTimeField& f, const SpaceTimePoint& z,
                                     const ExponentSet& exps, double r, double theta, int k_max,
                                     const QuadratureConfig& cfg);

} // namespace cyllens
