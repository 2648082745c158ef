#ifndef CONCORD_FUZZY_CONCORDANCE_HPP
#define CONCORD_FUZZY_CONCORDANCE_HPP

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "concord/expectation.hpp"
#include "concord/partition.hpp"

namespace concord {

/// Fuzzy generalization of the four pair cardinals, aggregated over all m
/// pairs with the product t-norm / probabilistic-sum t-conorm. For each pair
/// with equivalence degrees eP, eQ and conc = 1 - |eP - eQ|:
///   a = conc * eP * eQ          b = max(eP - eQ, 0)
///   d = conc * (1 - eP * eQ)    c = max(eQ - eP, 0)
/// Per pair a + b + c + d = 1; on one-hot partitions they reduce to the
/// crisp pair counts.
struct PairCardinals {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;
    std::size_t m = 0;

    struct PerPair {
        std::vector<double> a, b, c, d;
    };
    std::optional<PerPair> per_pair;  // kept only on request (4m doubles)
};

/// Everything one comparison produces.
struct ComparisonResult {
    double ndc = 0.0;
    double expected_ndc = 0.0;
    double aci = 0.0;
    double aci_clamped = 0.0;
    PairCardinals cardinals;
    ExpectationMode expectation_mode = ExpectationMode::closed_form;
    std::optional<double> mc_std_error;
    std::size_t m = 0;
    std::size_t n = 0;
    /// Set when 1 - expected_ndc <= 1e-12 (both equivalence structures
    /// constant); aci is reported as 0 since no agreement beyond chance is
    /// measurable.
    bool degenerate_expectation = false;
};

/// Degree of concordance of one pair: 1 - |eP - eQ|. Inputs in [0, 1].
double concordance_degree(double e_p, double e_q);

/// Normalized degree of concordance: mean pair concordance,
/// 1 - (1/m) sum |E_P(i,j) - E_Q(i,j)|. Reduces to the Rand index on
/// one-hot partitions.
double ndc(const EquivalenceMatrix& e_p, const EquivalenceMatrix& e_q);
double ndc(std::span<const double> p, std::span<const double> q);

PairCardinals fuzzy_cardinals(const EquivalenceMatrix& e_p, const EquivalenceMatrix& e_q,
                              bool keep_per_pair = false);

/// Rand, Jaccard, Dice, Fowlkes-Mallows and Mirkin from fuzzy cardinals.
/// The rand entry equals ndc(). Indices with vanishing denominators are
/// omitted.
std::map<std::string, double> cardinal_indices(const PairCardinals& pc);

/// Adjusted Concordance Index:
///   ACI = (NDC - E[NDC]) / (1 - E[NDC]),
/// with E[NDC] taken under uniform permutation of one partition's
/// upper-triangular equivalence values, per cfg.
ComparisonResult aci(const FuzzyPartition& p, const FuzzyPartition& q,
                     const ExpectationConfig& cfg = {});

/// Same comparison on prebuilt equivalence matrices.
ComparisonResult aci(const EquivalenceMatrix& e_p, const EquivalenceMatrix& e_q,
                     const ExpectationConfig& cfg = {});

}  // namespace concord

#endif
