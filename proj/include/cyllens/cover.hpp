#pragma once

#include "cyllens/exponents.hpp"
#include "cyllens/functionals.hpp"
#include "cyllens/inequalities.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cyllens {

/// Center with a witness radius whose scaled L^{l,m} norm reached eps0.
struct Candidate {
    SpaceTimePoint z;
    double r = 0.0;
    double witness_value = 0.0;
};

struct CenterError {
    SpaceTimePoint z;
    std::string message;
};

/// Product-set disjointness of the one-sided cylinders: they intersect iff
/// the spatial balls overlap AND the open time intervals overlap.
bool cylinders_disjoint(const Candidate& a, const Candidate& b);

/// Containment of one cylinder in the 5r expansion of another. The expansion
/// is the radius-5r cylinder whose top face is raised by r^2, i.e.
/// B(x, 5r) x (t + r^2 - 25 r^2, t + r^2); the raised top is what makes the
/// greedy covering property hold for one-sided cylinders.
bool covered_by_expansion(const Candidate& inner, const Candidate& outer);

struct CoverEstimate {
    double delta = 0.0;
    double dimension = 0.0;
    std::vector<Candidate> disjoint_family;
    std::size_t candidate_count = 0;
    bool covered = false;
    double premeasure = 0.0;      // sum (5 r_j)^d over the covering family
    double premeasure_raw = 0.0;  // sum r_j^d over the disjoint family
    std::optional<RatioRecord> chain;
    std::string expansion_convention = "top_shifted_by_r2";
};

/// For each center, the smallest radius below delta whose scaled mixed norm
/// r^{-s} ||u||_{L^m_t L^l_x(Q_r(z) clipped)} reaches eps0, s = 3/l+2/m-1.
/// Radii at or above delta are skipped; per-center resolution failures are
/// collected, not fatal.
std::vector<Candidate> flag_candidates(const SpaceTimeField& f,
                                       const std::vector<SpaceTimePoint>& centers,
                                       const LMPair& lm, double eps0, double delta,
                                       const std::vector<double>& radii,
                                       const QuadratureConfig& cfg,
                                       std::vector<CenterError>* errors = nullptr);

/// Greedy selection in descending witness radius; the result records whether
/// every candidate lies inside some selected 5r expansion.
CoverEstimate vitali_cover(std::vector<Candidate> candidates);

/// Premeasure sums at dimension d; requires covered = true.
CoverEstimate premeasure(CoverEstimate cover, double d);

/// eps0^m sum r_j^{s m} against ||u||^m_{L^m_t L^l_x} over the whole grid.
RatioRecord theorem_chain(const SpaceTimeField& f, const CoverEstimate& cover, const LMPair& lm,
                          double eps0, const QuadratureConfig& cfg);

/// One premeasure estimate per delta at d = d(l, m), chain record attached.
std::vector<CoverEstimate> dimension_curve(const SpaceTimeField& f,
                                           const std::vector<SpaceTimePoint>& centers,
                                           const LMPair& lm, double eps0,
                                           const std::vector<double>& deltas,
                                           const std::vector<double>& radii,
                                           const QuadratureConfig& cfg,
                                           std::vector<CenterError>* errors = nullptr);

} // namespace cyllens
