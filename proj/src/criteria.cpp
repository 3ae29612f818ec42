#include "cyllens/criteria.hpp"

#include "cyllens/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cyllens {

const char* verdict_name(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::RegularByTH1: return "regular_by_TH1";
        case VerdictStatus::RegularByModLemma: return "regular_by_mod_lemma";
        case VerdictStatus::RegularByCKN: return "regular_by_ckn";
        case VerdictStatus::FlaggedCandidate: return "flagged_candidate";
        case VerdictStatus::Inconclusive: return "inconclusive";
    }
    return "?";
}

namespace {

void require_descending(const std::vector<double>& radii, int k) {
    if (static_cast<int>(radii.size()) < k) {
        std::ostringstream os;
        os << "criterion needs at least " << k << " admissible radii, got " << radii.size();
        throw resolution_error(os.str());
    }
    for (std::size_t i = 1; i < radii.size(); ++i)
        if (!(radii[i] < radii[i - 1]))
            throw std::invalid_argument("criterion radii must be strictly descending");
}

} // namespace

Verdict evaluate_TH1(const SpaceTimeField& f, const SpaceTimePoint& z, const PQPair& pq,
                     const std::vector<double>& radii, double eps, const QuadratureConfig& cfg,
                     int k, std::optional<double> eps0) {
    criterion_exponent(pq);  // validates region I/II
    require_descending(radii, k);

    Verdict v;
    v.epsilon_used = eps;
    v.radii_used = radii;
    v.k_used = k;
    for (double r : radii)
        v.evidence.push_back({r, criterion_quantity(f, z, r, pq, cfg), eps});

    double max_small = 0.0;
    for (std::size_t i = radii.size() - static_cast<std::size_t>(k); i < radii.size(); ++i)
        max_small = std::max(max_small, v.evidence[i].quantity);

    if (max_small <= eps) {
        v.status = VerdictStatus::RegularByTH1;
    } else if (eps0) {
        const bool flagged = std::any_of(v.evidence.begin(), v.evidence.end(),
                                         [&](const Evidence& e) { return e.quantity >= *eps0; });
        v.status = flagged ? VerdictStatus::FlaggedCandidate : VerdictStatus::Inconclusive;
    } else {
        v.status = VerdictStatus::Inconclusive;
    }
    return v;
}

Verdict evaluate_mod_lemma(const SpaceTimeField& f, const SpaceTimePoint& z,
                           const ExponentSet& exps, const std::vector<double>& radii, double eps,
                           const QuadratureConfig& cfg, int k) {
    exps.validate();
    require_descending(radii, k);

    Verdict v;
    v.epsilon_used = eps;
    v.radii_used = radii;
    v.k_used = k;
    for (double r : radii) {
        const double c13 = std::cbrt(functional_c(f, z, r, cfg));
        const double dt = functional_d_tilde(f, z, r, exps, cfg);
        v.evidence.push_back({r, c13 + dt, eps});
    }
    double min_small = v.evidence.back().quantity;
    for (std::size_t i = radii.size() - static_cast<std::size_t>(k); i < radii.size(); ++i)
        min_small = std::min(min_small, v.evidence[i].quantity);

    v.status = min_small < eps ? VerdictStatus::RegularByModLemma : VerdictStatus::Inconclusive;
    return v;
}

Verdict ckn_criterion(const SpaceTimeField& f, const SpaceTimePoint& z,
                      const std::vector<double>& radii, double eps, const QuadratureConfig& cfg,
                      int k) {
    require_descending(radii, k);
    Verdict v;
    v.epsilon_used = eps;
    v.radii_used = radii;
    v.k_used = k;
    for (double r : radii) v.evidence.push_back({r, functional_e(f, z, r, cfg), eps});
    double max_small = 0.0;
    for (std::size_t i = radii.size() - static_cast<std::size_t>(k); i < radii.size(); ++i)
        max_small = std::max(max_small, v.evidence[i].quantity);
    v.status = max_small <= eps ? VerdictStatus::RegularByCKN : VerdictStatus::Inconclusive;
    return v;
}

double decay_alpha_from_lambda(const ExponentSet& exps) { return 1.0 - 1.0 / exps.lambda; }

DecayRecord decay_diagnostic(const SpaceTimeField& f, const SpaceTimePoint& z,
                             const ExponentSet& exps, double r, double theta, double alpha,
                             double gamma, double m_gamma, double beta,
                             const QuadratureConfig& cfg) {
    exps.validate();
    if (!(theta > 0.0) || !(theta < 0.5))
        throw std::invalid_argument("decay_diagnostic: theta must lie in (0, 1/2)");
    if (!(beta > 0.0) || !(beta < gamma) || gamma > 2.0)
        throw std::invalid_argument("decay_diagnostic: need 0 < beta < gamma <= 2");

    DecayRecord rec;
    rec.theta = theta;
    rec.alpha = alpha;
    const double num = std::cbrt(functional_c(f, z, theta * r, cfg)) +
                       functional_d_tilde(f, z, theta * r, exps, cfg);
    const double base = std::cbrt(functional_c(f, z, r, cfg)) +
                        functional_d_tilde(f, z, r, exps, cfg) +
                        m_gamma * std::pow(r, beta + 1.0);
    rec.numerator = num;
    rec.denominator = std::pow(theta, 1.0 + alpha) * base;
    if (rec.denominator == 0.0 && num == 0.0) {
        rec.ratio = 0.0;
        rec.zero_over_zero = true;
    } else {
        rec.ratio = num / rec.denominator;
    }
    return rec;
}

IterationRecord iteration_diagnostic(const SpaceTimeField& f, const SpaceTimePoint& z,
                                     const ExponentSet& exps, double r, double theta, int k_max,
                                     const QuadratureConfig& cfg) {
    exps.validate();
    if (!(theta > 0.0) || !(theta < 1.0))
        throw std::invalid_argument("iteration_diagnostic: theta must lie in (0, 1)");
    const double r_min = r * std::pow(theta, k_max);
    if (r_min < cfg.min_cells * f.grid().h) {
        std::ostringstream os;
        os << "iteration_diagnostic: theta^k_max r = " << r_min << " under-resolved";
        throw resolution_error(os.str());
    }

    IterationRecord rec;
    rec.theta = theta;
    std::vector<double> g_vals;
    for (int k = 0; k <= k_max; ++k) {
        const double rk = r * std::pow(theta, k);
        rec.s.push_back(functional_c(f, z, rk, cfg) + functional_d1_tilde(f, z, rk, exps, cfg));
        g_vals.push_back(functional_g(f, z, rk, exps, cfg));
    }
    // halving envelope with the unit-constant G source terms
    auto phi = [&](int i) {
        const double gv = g_vals[static_cast<std::size_t>(i)];
        return (std::pow(gv, 3.0 / 7.0) + gv * gv) / theta;
    };
    for (int k = 0; k <= k_max; ++k) {
        double tail = 0.0;
        for (int i = 0; i < k; ++i) tail += std::pow(0.5, k - 1 - i) * phi(i);
        rec.envelope.push_back(std::pow(0.5, k) * rec.s[0] + tail);
    }
    return rec;
}

} // namespace cyllens
