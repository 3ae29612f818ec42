#pragma once

#include <optional>
#include <string>

namespace cyllens {

/// Integrability exponent in [1, inf]. Infinity is a dedicated state, never a
/// sentinel float; 1/inf evaluates to 0 so limit arithmetic stays exact.
class Exponent {
public:
    static Exponent finite(double v);
    static Exponent infinite();

    bool is_inf() const { return inf_; }
    double value() const;           // throws on infinite
    double inv() const { return inf_ ? 0.0 : 1.0 / v_; }

    bool operator==(const Exponent& o) const;
    std::string str() const;

private:
    Exponent(double v, bool inf) : v_(v), inf_(inf) {}
    double v_ = 0.0;
    bool inf_ = false;
};

/// Spatial/temporal integrability pair (p, q), each >= 1 or infinite.
struct PQPair {
    Exponent p;
    Exponent q;

    PQPair(Exponent p_, Exponent q_);
    static PQPair finite(double p_, double q_);

    /// 3/p + 2/q with the 1/inf = 0 convention.
    double scaling_sum() const { return 3.0 * p.inv() + 2.0 * q.inv(); }
    std::string str() const;
};

/// Exponent pair (l, m) for the mixed L^l_x L^m_t integrability assumption.
struct LMPair {
    double l;
    double m;
    LMPair(double l_, double m_);
};

/// The linked exponents kappa, kappa*, lambda, p, q.
/// Relations (all enforced to 1e-12 by validate()):
///   3/kappa + 2/lambda = 4,  1/kappa* = 1/kappa - 1/3,
///   1/p + 1/kappa* = 1,      1/q + 1/lambda = 1,
/// which imply 3/p + 2/q = 2 and 2 < q < infinity.
struct ExponentSet {
    double kappa;
    double kappa_star;
    double lambda;
    double p;
    double q;

    void validate() const;  // throws std::domain_error on violated relations
    PQPair pq() const { return PQPair::finite(p, q); }
};

inline constexpr double kExponentTol = 1e-12;

/// Solve the four exponent relations for a given lambda in (1, 2).
ExponentSet exponent_set_from_lambda(double lambda);

enum class RegionTag { I, II, ExcludedEndpoint, Outside };

/// Classify (p, q) against the two criterion regions:
///   I  : 3/p + 2/q < 1 (strict Prodi-Serrin interior),
///   II : 1 <= 3/p + 2/q <= 2 with 2 < q <= inf,
/// the border 3/p + 2/q = 1 counting as II when q > 2. The two endpoints
/// (3/2, inf) and (3, 2) are tagged separately; everything else is Outside.
RegionTag classify_region(const PQPair& pq);

const char* region_name(RegionTag tag);

/// The radius power 3/p + 2/q - 1 of the scaled criterion quantity.
/// Requires region I or II.
double criterion_exponent(const PQPair& pq);

/// Region V membership: 3/l+2/m > 1, 1/l+1/m < 1/2, 3/l+1/m < 1.
bool in_region_V(const LMPair& lm);

/// Singular-set dimension d(l,m): 3 - m + 2m/l when l > m, else 2 - m + 3m/l.
/// Requires region V; the value lies in (0, 1).
double singular_dimension(const LMPair& lm);

/// Interpolation exponents used to upgrade L^{l,m} integrability to L^4 / L^k.
/// For l > m the estimate runs through L^k with k = 2 + m - 2m/l, sigma = m/k.
/// For l <= m it uses the displayed (alpha, beta, sigma) triple; a vanishing
/// alpha numerator is returned as alpha = 0 with the degenerate flag set.
struct Sec4Exponents {
    bool l_greater_m = false;
    double alpha = 0.0;
    double beta = 0.0;
    double sigma = 0.0;
    std::optional<double> k;  // only for the l > m case
    bool alpha_degenerate = false;
};

Sec4Exponents interp_sec4_exponents(const LMPair& lm);

/// L^4 interpolation weights (1/2, 1/q, 3/(2p)) on the (r,s), (2,inf), (6,2)
/// norms, with (p, q) named after (r, s) as displayed. The (3, inf) endpoint
/// is accepted with a warning flag; the p/q naming ambiguity is likewise
/// flagged rather than resolved.
struct L4Weights {
    double half = 0.5;
    double one_over_q = 0.0;
    double three_over_2p = 0.0;
    bool endpoint_warning = false;
    bool pq_naming_flag = true;
};

L4Weights interp_L4_exponents(const PQPair& rs);

} // namespace cyllens
