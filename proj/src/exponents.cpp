#include "cyllens/exponents.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace cyllens {

Exponent Exponent::finite(double v) {
    if (!std::isfinite(v)) throw std::domain_error("Exponent::finite: value must be finite");
    if (v < 1.0) throw std::domain_error("Exponent::finite: exponent must be >= 1");
    return Exponent(v, false);
}

Exponent Exponent::infinite() { return Exponent(0.0, true); }

double Exponent::value() const {
    if (inf_) throw std::domain_error("Exponent::value: exponent is infinite");
    return v_;
}

bool Exponent::operator==(const Exponent& o) const {
    if (inf_ != o.inf_) return false;
    return inf_ || v_ == o.v_;
}

std::string Exponent::str() const {
    if (inf_) return "inf";
    std::ostringstream os;
    os << v_;
    return os.str();
}

PQPair::PQPair(Exponent p_, Exponent q_) : p(p_), q(q_) {}

PQPair PQPair::finite(double p_, double q_) {
    return PQPair(Exponent::finite(p_), Exponent::finite(q_));
}

std::string PQPair::str() const {
    return "(" + p.str() + "," + q.str() + ")";
}

LMPair::LMPair(double l_, double m_) : l(l_), m(m_) {
    if (!(l > 0.0) || !(m > 0.0) || !std::isfinite(l) || !std::isfinite(m))
        throw std::domain_error("LMPair: l and m must be positive finite");
}

void ExponentSet::validate() const {
    auto check = [](double got, double want, const char* what) {
        if (std::abs(got - want) > kExponentTol) {
            std::ostringstream os;
            os << "ExponentSet: relation " << what << " violated by " << std::abs(got - want);
            throw std::domain_error(os.str());
        }
    };
    check(3.0 / kappa + 2.0 / lambda, 4.0, "3/kappa + 2/lambda = 4");
    check(1.0 / kappa_star, 1.0 / kappa - 1.0 / 3.0, "1/kappa* = 1/kappa - 1/3");
    check(1.0 / p + 1.0 / kappa_star, 1.0, "1/p + 1/kappa* = 1");
    check(1.0 / q + 1.0 / lambda, 1.0, "1/q + 1/lambda = 1");
    check(3.0 / p + 2.0 / q, 2.0, "3/p + 2/q = 2");
    if (!(q > 2.0))
        throw std::domain_error("ExponentSet: q must exceed 2");
}

ExponentSet exponent_set_from_lambda(double lambda) {
    if (!(lambda > 1.0) || !(lambda < 2.0)) {
        std::ostringstream os;
        os << "exponent_set_from_lambda: lambda = " << lambda
           << " outside the open interval (1,2)";
        throw std::domain_error(os.str());
    }
    ExponentSet e{};
    e.lambda = lambda;
    e.kappa = 3.0 / (4.0 - 2.0 / lambda);
    e.kappa_star = 1.0 / (1.0 / e.kappa - 1.0 / 3.0);
    e.p = 1.0 / (1.0 - 1.0 / e.kappa_star);
    e.q = 1.0 / (1.0 - 1.0 / lambda);
    e.validate();
    return e;
}

namespace {
bool near(double a, double b) { return std::abs(a - b) <= kExponentTol; }
} // namespace

RegionTag classify_region(const PQPair& pq) {
    const bool p32 = !pq.p.is_inf() && near(pq.p.value(), 1.5);
    const bool p3 = !pq.p.is_inf() && near(pq.p.value(), 3.0);
    const bool q2 = !pq.q.is_inf() && near(pq.q.value(), 2.0);
    if (p32 && pq.q.is_inf()) return RegionTag::ExcludedEndpoint;
    if (p3 && q2) return RegionTag::ExcludedEndpoint;

    const double s = pq.scaling_sum();
    const bool q_above_2 = pq.q.is_inf() || pq.q.value() > 2.0 + kExponentTol;
    if (s < 1.0 - kExponentTol) return RegionTag::I;
    if (s <= 2.0 + kExponentTol && q_above_2) return RegionTag::II;
    return RegionTag::Outside;
}

const char* region_name(RegionTag tag) {
    switch (tag) {
        case RegionTag::I: return "I";
        case RegionTag::II: return "II";
        case RegionTag::ExcludedEndpoint: return "excluded_endpoint";
        case RegionTag::Outside: return "outside";
    }
    return "?";
}

double criterion_exponent(const PQPair& pq) {
    const RegionTag tag = classify_region(pq);
    if (tag != RegionTag::I && tag != RegionTag::II) {
        throw std::domain_error("criterion_exponent: (p,q) = " + pq.str() +
                                " is in region " + region_name(tag) +
                                ", need region I or II");
    }
    return pq.scaling_sum() - 1.0;
}

bool in_region_V(const LMPair& lm) {
    const double inv_l = 1.0 / lm.l;
    const double inv_m = 1.0 / lm.m;
    return 3.0 * inv_l + 2.0 * inv_m > 1.0 && inv_l + inv_m < 0.5 &&
           3.0 * inv_l + inv_m < 1.0;
}

double singular_dimension(const LMPair& lm) {
    if (!in_region_V(lm)) {
        std::ostringstream os;
        os << "singular_dimension: (l,m) = (" << lm.l << "," << lm.m
           << ") outside region V (need 3/l+2/m > 1, 1/l+1/m < 1/2, 3/l+1/m < 1)";
        throw std::domain_error(os.str());
    }
    const double d = (lm.l > lm.m) ? 3.0 - lm.m + 2.0 * lm.m / lm.l
                                   : 2.0 - lm.m + 3.0 * lm.m / lm.l;
    return d;
}

Sec4Exponents interp_sec4_exponents(const LMPair& lm) {
    const double inv_l = 1.0 / lm.l;
    const double inv_m = 1.0 / lm.m;
    const double s32 = 3.0 * inv_l + 2.0 * inv_m;

    Sec4Exponents out;
    if (lm.l > lm.m && s32 > 1.0 && 2.0 * inv_l + 2.0 * inv_m < 1.0) {
        out.l_greater_m = true;
        const double k = 2.0 + lm.m - 2.0 * lm.m / lm.l;
        out.k = k;
        out.sigma = lm.m / k;
        return out;
    }
    if (lm.l <= lm.m && s32 > 1.0 && 3.0 * inv_l + inv_m < 1.0) {
        out.l_greater_m = false;
        const double num = s32 - 1.25;
        const double den = inv_l + 0.5 * inv_m - 0.375;
        if (std::abs(num) <= kExponentTol) {
            out.alpha = 0.0;
            out.alpha_degenerate = true;
        } else {
            out.alpha = num / den;
        }
        out.beta = 4.0 * num / (3.0 * (inv_l + inv_m - 0.5));
        out.sigma = lm.l * (4.0 - lm.l) / (4.0 * (lm.l - out.alpha));
        return out;
    }
    std::ostringstream os;
    os << "interp_sec4_exponents: (l,m) = (" << lm.l << "," << lm.m
       << ") satisfies neither integrability case (l>m with 2/l+2/m<1, "
          "or l<=m with 3/l+1/m<1; both need 3/l+2/m>1)";
    throw std::domain_error(os.str());
}

L4Weights interp_L4_exponents(const PQPair& rs) {
    if (rs.p.is_inf())
        throw std::domain_error("interp_L4_exponents: r must be finite");
    const double r = rs.p.value();
    const double sum = rs.scaling_sum();
    if (!near(sum, 1.0))
        throw std::domain_error("interp_L4_exponents: (r,s) = " + rs.str() +
                                " is off the 3/r + 2/s = 1 line");

    L4Weights w;
    w.one_over_q = rs.q.inv();
    w.three_over_2p = 3.0 / (2.0 * r);
    // (3, inf) sits outside 3 < r < inf but the estimate still holds there.
    w.endpoint_warning = !(r > 3.0 + kExponentTol);
    return w;
}

} // namespace cyllens
