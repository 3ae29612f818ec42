#include "cyllens/cover.hpp"

#include "cyllens/errors.hpp"
#include "cyllens/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cyllens {

namespace {
constexpr double kGeomTol = 1e-12;

double sigma_exponent(const LMPair& lm) { return 3.0 / lm.l + 2.0 / lm.m - 1.0; }
} // namespace

bool cylinders_disjoint(const Candidate& a, const Candidate& b) {
    const bool balls_overlap = (a.z.x - b.z.x).norm() < a.r + b.r - kGeomTol;
    const double a_lo = a.z.t - a.r * a.r, b_lo = b.z.t - b.r * b.r;
    const bool times_overlap = a_lo < b.z.t - kGeomTol && b_lo < a.z.t - kGeomTol;
    return !(balls_overlap && times_overlap);
}

bool covered_by_expansion(const Candidate& inner, const Candidate& outer) {
    const double R = 5.0 * outer.r;
    if ((inner.z.x - outer.z.x).norm() + inner.r > R + kGeomTol) return false;
    const double top = outer.z.t + outer.r * outer.r;
    const double bottom = top - R * R;
    return inner.z.t <= top + kGeomTol && inner.z.t - inner.r * inner.r >= bottom - kGeomTol;
}

std::vector<Candidate> flag_candidates(const SpaceTimeField& f,
                                       const std::vector<SpaceTimePoint>& centers,
                                       const LMPair& lm, double eps0, double delta,
                                       const std::vector<double>& radii,
                                       const QuadratureConfig& cfg,
                                       std::vector<CenterError>* errors) {
    if (!in_region_V(lm))
        throw std::domain_error("flag_candidates: (l,m) must lie in region V");
    const double sigma = sigma_exponent(lm);
    const PQPair pq = PQPair::finite(lm.l, lm.m);

    std::vector<double> usable;
    for (double r : radii)
        if (r < delta) usable.push_back(r);
    if (usable.empty())
        throw std::invalid_argument("flag_candidates: no radius below delta");
    std::sort(usable.begin(), usable.end());  // smallest witness first

    std::vector<Candidate> out;
    for (const auto& z : centers) {
        const ClipMode clip = infer_clip(f.grid(), z);
        for (double r : usable) {
            try {
                ParabolicCylinder cyl{z, r, clip};
                CellQuadrature q(f.grid(), cyl, cfg);
                const double norm = q.lpq(cell_speed(f), pq);
                const double scaled = std::pow(r, -sigma) * norm;
                if (scaled >= eps0) {
                    out.push_back({z, r, scaled});
                    break;
                }
            } catch (const resolution_error& e) {
                if (errors) errors->push_back({z, e.what()});
            } catch (const std::out_of_range& e) {
                if (errors) errors->push_back({z, e.what()});
            }
        }
    }
    return out;
}

CoverEstimate vitali_cover(std::vector<Candidate> candidates) {
    // descending radius, deterministic tie-break
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        if (a.r != b.r) return a.r > b.r;
        if (a.z.t != b.z.t) return a.z.t < b.z.t;
        return std::lexicographical_compare(a.z.x.data(), a.z.x.data() + 3, b.z.x.data(),
                                            b.z.x.data() + 3);
    });

    CoverEstimate cover;
    cover.candidate_count = candidates.size();
    for (const auto& c : candidates) {
        const bool ok = std::all_of(cover.disjoint_family.begin(), cover.disjoint_family.end(),
                                    [&](const Candidate& s) { return cylinders_disjoint(c, s); });
        if (ok) cover.disjoint_family.push_back(c);
    }

    // exhaustive disjointness audit of the selection
    for (std::size_t i = 0; i < cover.disjoint_family.size(); ++i)
        for (std::size_t j = i + 1; j < cover.disjoint_family.size(); ++j)
            if (!cylinders_disjoint(cover.disjoint_family[i], cover.disjoint_family[j]))
                throw std::logic_error("vitali_cover: selected family is not pairwise disjoint");

    cover.covered = std::all_of(candidates.begin(), candidates.end(), [&](const Candidate& c) {
        return std::any_of(cover.disjoint_family.begin(), cover.disjoint_family.end(),
                           [&](const Candidate& s) { return covered_by_expansion(c, s); });
    });
    return cover;
}

CoverEstimate premeasure(CoverEstimate cover, double d) {
    if (!cover.covered)
        throw std::invalid_argument("premeasure: cover must satisfy the 5r covering property");
    cover.dimension = d;
    cover.premeasure = 0.0;
    cover.premeasure_raw = 0.0;
    for (const auto& c : cover.disjoint_family) {
        cover.premeasure += std::pow(5.0 * c.r, d);
        cover.premeasure_raw += std::pow(c.r, d);
    }
    return cover;
}

RatioRecord theorem_chain(const SpaceTimeField& f, const CoverEstimate& cover, const LMPair& lm,
                          double eps0, const QuadratureConfig& cfg) {
    (void)cfg;
    const double sigma = sigma_exponent(lm);
    double lhs = 0.0;
    for (const auto& c : cover.disjoint_family) lhs += std::pow(c.r, sigma * lm.m);
    lhs *= std::pow(eps0, lm.m);

    CellQuadrature box(f.grid(), f.grid().t0, f.grid().t_end());
    const double norm = box.lpq(cell_speed(f), PQPair::finite(lm.l, lm.m));
    const double rhs = std::pow(norm, lm.m);
    RatioRecord rec = make_ratio("theorem_chain", cover.delta, lhs, rhs, SpaceTimePoint{}, f.id());
    std::ostringstream os;
    os << "sigma=" << sigma << " m=" << lm.m << " family=" << cover.disjoint_family.size();
    rec.note = os.str();
    return rec;
}

std::vector<CoverEstimate> dimension_curve(const SpaceTimeField& f,
                                           const std::vector<SpaceTimePoint>& centers,
                                           const LMPair& lm, double eps0,
                                           const std::vector<double>& deltas,
                                           const std::vector<double>& radii,
                                           const QuadratureConfig& cfg,
                                           std::vector<CenterError>* errors) {
    const double d = singular_dimension(lm);  // validates region V
    std::vector<CoverEstimate> out;
    for (double delta : deltas) {
        auto cands = flag_candidates(f, centers, lm, eps0, delta, radii, cfg, errors);
        CoverEstimate cover = vitali_cover(std::move(cands));
        cover.delta = delta;
        cover = premeasure(std::move(cover), d);
        cover.chain = theorem_chain(f, cover, lm, eps0, cfg);
        out.push_back(std::move(cover));
    }
    return out;
}

} // namespace cyllens
