#pragma once

// Closed-form moments: the beta/lambda machinery for shift-invariant weights,
// the M*D matrix identity behind it, the per-family formula library, and the
// angle-portfolio law at vertex 1.

#include "polytri/exact_math.hpp"
#include "polytri/gf_engine.hpp"
#include "polytri/weights.hpp"

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace polytri {

/// Mean of S_{n,l,n} for a shift-invariant weight:
///   (1/C_{n-l-1}) sum_{j=l}^{n-2} beta_j binomial(2j-2l, j-l),
///   beta_j = sum_{s=j+1}^{n-1} f(j,s,n) C_{s-j-1} C_{n-s-1}.
/// Throws DomainError if f is not shift-invariant on the n-gon.
Value coh1_expectation(int n, int l, const WeightSpec& f);

/// Variance of S_n from the lambda sums:
///   (1/C_{n-2}) sum_j lambda_j binomial(2j-2, j-1) - mean^2.
Value coh1_variance(int n, const WeightSpec& f);

using IntMatrix = std::vector<std::vector<Int>>;

/// (n-1)x(n-1) upper unitriangular matrices: m_ij = -2 C_{j-i-1} and
/// d_ij = binomial(2(j-i), j-i) above the diagonal.
struct MDMatrices {
    IntMatrix M;
    IntMatrix D;
};

/// Builds both matrices and checks M*D = I; a failure throws std::logic_error.
MDMatrices md_matrices(int n);

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);

/// Result of a formula: a scalar, or a full coefficient vector (as a ZPoly in
/// z, probabilities rather than counts).
using FormulaValue = std::variant<Rat, ZPoly>;

struct FormulaInfo {
    std::string id;
    int min_n;
    bool needs_w;
    std::string description;
};

const std::vector<FormulaInfo>& formula_catalog();

/// Evaluates a named closed form exactly. w is used by the weighted families.
FormulaValue formula_library(std::string_view id, int n, const Rat& w = Rat(1));

/// Formula ids for the mean and variance of a weight, empty when none apply.
struct FormulaIds {
    std::string mean;
    std::string variance;
    std::string gf;
};
FormulaIds formulas_for(const WeightSpec& f);

struct PortfolioQuery {
    int n;
    std::vector<int> k;  // k[i-1] = number of vertex-1 angles spanning i boundary steps
};

/// Probability that the fan at vertex 1 has exactly the given arc multiset.
Rat portfolio_probability(const PortfolioQuery& q);

/// Sum over vectors p with sum p_j = K and sum j p_j = n-2 of
/// multinomial(K; p) * prod C_{j-1}^{p_j}.
Int z_partition(int n, int K);

/// All vectors (k_1..k_{n-2}) with sum i k_i = n-2 and sum k_i = K.
std::vector<std::vector<int>> portfolio_vectors(int n, int K);

}  // namespace polytri
