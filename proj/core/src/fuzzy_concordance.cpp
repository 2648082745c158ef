#include "concord/fuzzy_concordance.hpp"

#include <cmath>
#include <stdexcept>

#include "concord/crisp_indices.hpp"
#include "concord/parallel.hpp"

namespace concord {

namespace {

void check_compatible(const EquivalenceMatrix& ep, const EquivalenceMatrix& eq) {
    if (ep.size() != eq.size())
        throw std::invalid_argument("equivalence matrices built over different object counts: " +
                                    std::to_string(ep.size()) + " vs " + std::to_string(eq.size()));
}

}  // namespace

double concordance_degree(double e_p, double e_q) { return 1.0 - std::abs(e_p - e_q); }

double ndc(std::span<const double> e_p, std::span<const double> e_q) {
    if (e_p.size() != e_q.size())
        throw std::invalid_argument("equivalence vectors differ in length");
    if (e_p.empty()) throw std::invalid_argument("equivalence vectors are empty");
    CompensatedSum sum;
    for (std::size_t i = 0; i < e_p.size(); ++i) sum.add(concordance_degree(e_p[i], e_q[i]));
    return sum.value() / static_cast<double>(e_p.size());
}

double ndc(const EquivalenceMatrix& ep, const EquivalenceMatrix& eq) {
    check_compatible(ep, eq);
    return ndc(std::span<const double>(ep.upper_tri()), std::span<const double>(eq.upper_tri()));
}

PairCardinals fuzzy_cardinals(const EquivalenceMatrix& ep, const EquivalenceMatrix& eq,
                              bool keep_per_pair) {
    check_compatible(ep, eq);
    const auto& p = ep.upper_tri();
    const auto& q = eq.upper_tri();
    const std::size_t m = p.size();

    PairCardinals out;
    out.m = m;
    if (keep_per_pair) {
        out.per_pair.emplace();
        out.per_pair->a.resize(m);
        out.per_pair->b.resize(m);
        out.per_pair->c.resize(m);
        out.per_pair->d.resize(m);
    }

    CompensatedSum sa, sb, sc, sd;
    for (std::size_t i = 0; i < m; ++i) {
        const double conc = concordance_degree(p[i], q[i]);
        const double both = p[i] * q[i];
        const double a = conc * both;
        const double d = conc * (1.0 - both);
        const double b = std::max(p[i] - q[i], 0.0);
        const double c = std::max(q[i] - p[i], 0.0);
        sa.add(a);
        sb.add(b);
        sc.add(c);
        sd.add(d);
        if (keep_per_pair) {
            out.per_pair->a[i] = a;
            out.per_pair->b[i] = b;
            out.per_pair->c[i] = c;
            out.per_pair->d[i] = d;
        }
    }
    out.a = sa.value();
    out.b = sb.value();
    out.c = sc.value();
    out.d = sd.value();
    return out;
}

std::map<std::string, double> cardinal_indices(const PairCardinals& pc) {
    if (pc.m == 0) throw std::invalid_argument("cardinal_indices: no object pairs");
    const double m = static_cast<double>(pc.m);
    const double a = pc.a;
    const double b = pc.b;
    const double c = pc.c;
    const double d = pc.d;

    std::map<std::string, double> out;
    out["rand"] = (a + d) / m;
    out["mirkin"] = 2.0 * (b + c);
    if (a + b + c > 0.0) out["jaccard"] = a / (a + b + c);
    if ((a + b) > 0.0 && (a + c) > 0.0) out["fowlkes_mallows"] = a / std::sqrt((a + b) * (a + c));
    if (2.0 * a + b + c > 0.0) out["dice"] = 2.0 * a / (2.0 * a + b + c);
    const double ari_denom = b * b + c * c + 2.0 * a * d + (a + d) * (b + c);
    if (ari_denom > 0.0) out["adjusted_rand"] = 2.0 * (a * d - b * c) / ari_denom;
    return out;
}

ComparisonResult aci(const EquivalenceMatrix& ep, const EquivalenceMatrix& eq,
                     const ExpectationConfig& cfg) {
    check_compatible(ep, eq);
    cfg.validate();
    const auto& p = ep.upper_tri();
    const auto& q = eq.upper_tri();

    ComparisonResult res;
    res.n = ep.size();
    res.m = ep.pair_count();
    res.expectation_mode = cfg.mode;
    res.ndc = ndc(std::span<const double>(p), std::span<const double>(q));
    res.cardinals = fuzzy_cardinals(ep, eq);

    switch (cfg.mode) {
        case ExpectationMode::closed_form:
            res.expected_ndc = expected_ndc_closed_form(p, q);
            break;
        case ExpectationMode::enumeration:
            res.expected_ndc = expected_ndc_enumeration(p, q, cfg.enumeration_limit);
            break;
        case ExpectationMode::monte_carlo: {
            const MonteCarloEstimate est = expected_ndc_monte_carlo(p, q, cfg.h, cfg.seed);
            res.expected_ndc = est.estimate;
            res.mc_std_error = est.std_error;
            break;
        }
    }

    const double spread = 1.0 - res.expected_ndc;
    if (spread <= 1e-12) {
        res.degenerate_expectation = true;
        res.aci = 0.0;
    } else {
        res.degenerate_expectation = false;
        res.aci = (res.ndc - res.expected_ndc) / spread;
    }
    res.aci_clamped = std::min(std::max(res.aci, -1.0), 1.0);
    return res;
}

ComparisonResult aci(const FuzzyPartition& p, const FuzzyPartition& q,
                     const ExpectationConfig& cfg) {
    if (p.size() != q.size())
        throw std::invalid_argument("partitions cover different object counts: " +
                                    std::to_string(p.size()) + " vs " + std::to_string(q.size()));
    return aci(equivalence_matrix(p), equivalence_matrix(q), cfg);
}

}  // namespace concord
