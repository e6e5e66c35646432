#pragma once

#include "thhcalc/graded_hopf.hpp"
#include "thhcalc/report.hpp"
#include "thhcalc/torus_model.hpp"

#include <map>
#include <optional>
#include <vector>

namespace thh {

using Bidegree = std::pair<int, int>;  // (s, t), total degree s + t

// A page of a first-quadrant algebra spectral sequence: a monomial algebra
// whose generators carry a filtration degree (gamma_k of a generator in
// filtration f sits in filtration k f).
class SSTerm
{
public:
    SSTerm(AlgebraSpec spec, std::vector<int> filtration, int page = 2);

    const AlgebraSpec& spec() const { return spec_; }
    const std::vector<int>& filtration() const { return filt_; }
    int page() const { return page_; }
    int filtration(std::size_t g) const { return filt_.at(g); }
    Bidegree bidegree(const Monomial& m) const;
    // monomials of total degree m grouped by bidegree
    std::map<Bidegree, std::vector<Monomial>> basis_by_bidegree(int total) const;

private:
    AlgebraSpec spec_;
    std::vector<int> filt_;
    int page_;
};

// d(gamma_e(x)) = gamma_{e-shift}(x) * multiplier, zero for e < shift
struct ShiftRule
{
    ShiftRule(std::uint32_t s, Element m) : shift(s), multiplier(std::move(m)) {}
    std::uint32_t shift;
    Element multiplier;
};

// d^r on generators, Leibniz-extended. Generators without an entry are cycles.
// For a divided power generator with a plain image, d(gamma_e x) = gamma_{e-1}(x) d(x).
struct DifferentialSpec
{
    int r = 2;
    std::map<std::size_t, Element> images;
    std::map<std::size_t, ShiftRule> shifts;
};

Element apply_differential(const SSTerm& E, const DifferentialSpec& d, const Element& a,
                           Overflow mode = Overflow::Strict);
// d(d(b)) = 0 and the (-r, r-1) shift on every basis monomial of total degree <= D
CheckReport check_differential(const SSTerm& E, const DifferentialSpec& d, int D);

using BidegreeTable = std::map<Bidegree, std::size_t>;  // zero entries omitted

// homology of (E, d^r) for total degree <= D; throws ContractError unless d^2 = 0
BidegreeTable page_homology(const SSTerm& E, const DifferentialSpec& d, int D);
BidegreeTable bidegree_dims(const SSTerm& E, int D);

struct Candidate
{
    Bidegree source;
    Bidegree target;
    int r;
};
// pairs (indecomposable bidegree, primitive bidegree) joined by some d^r, r >= 2
std::vector<Candidate> shortest_candidates(const SSTerm& E, int max_total_degree);
// B_n (n >= 2) as the bar spectral sequence term over B_{n-1}: words beginning with
// rho or rho^0 in filtration 1, with phi^0 in filtration 2
SSTerm b_n_ss_term(std::size_t n, int D, std::uint32_t p);

// Gamma(x_0..) (x) E(y_1..) with d^{p-1}(gamma_{p+k}(x_i)) = gamma_k(x_i) y_{i+1};
// homology against the truncated polynomial algebra on the x_i
CheckReport verify_p_term(std::uint32_t p, const std::vector<int>& x_degrees, int D);

// Gamma(x_0..x_{L-1}) (x) E(y_1..y_L) (x) Gamma(z), all x and z in degree 2 and filtration 1,
// with d(gamma_{p+k} z) = gamma_k(z) sum_l r_l y_{l+1}. Builds gamma_{p^k}(z') for k <= k_max and
// checks it is a cycle with vanishing p-th power, and that z -> z' is invertible degreewise up to D.
CheckReport change_basis_cycles(std::uint32_t p, int k_max, const std::vector<Fp>& r_coeffs, int D);
// gamma_{p^k}(z') in the configuration above (generators: x_l = l, y_{l+1} = L + l, z = 2L)
Element changed_cycle(const AlgebraSpec& spec, std::size_t L, int k, const std::vector<Fp>& r_coeffs);

// Columns 0 and -2 of the homotopy fixed point spectral sequence restricted to
// the 2-skeleton: M_* {1, t_1, ..., t_n} with d^2(x) = sum_i t_i sigma_i(x).
class TwoColumnTerm
{
public:
    explicit TwoColumnTerm(const TorusAlgebra& T) : T_(T) {}
    const TorusAlgebra& algebra() const { return T_; }
    // coefficient of t_i at index i-1
    std::vector<Element> d2(const Element& x) const;

private:
    const TorusAlgebra& T_;
};

TwoColumnTerm hfpss_two_columns(const TorusAlgebra& T);

struct RognesResult
{
    std::uint32_t p = 0;
    int n = 0;
    bool control = false;
    bool hit = false;
    std::size_t unknowns = 0;
    std::size_t equations = 0;
    std::size_t rank = 0;
    std::size_t augmented_rank = 0;
    std::map<int, std::string> witness;  // z_j, only when hit
    std::string verdict() const { return hit ? "hit" : "obstructed"; }
    nlohmann::json to_json() const;
};

// Whether sum_i t_i mu_i^{p^{n-1}} lies in the span of d^2(tau_j m) modulo the
// ideal and tau-divisible terms, over mu-monomials m and tau_j present in k(n-1)
// homology (j <= n-2). The control adds tau_{n-1}.
RognesResult rognes_check(std::uint32_t p, int n, bool control = false);

}  // namespace thh
