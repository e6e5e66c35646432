#pragma once

#include "thhcalc/arith.hpp"
#include "thhcalc/fp_linalg.hpp"
#include "thhcalc/report.hpp"

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace thh {

// binom(n,k)/p mod p for n a power of p and 0 < k < n
Fp binom_div_p(std::uint64_t n, std::uint64_t k, std::uint32_t p);

enum class WeightType { PrimePower, TwoPowers, Other };
// classification of N >= 2; for TwoPowers, m1 < m2 are returned
struct WeightInfo
{
    WeightType type;
    unsigned m = 0;  // PrimePower: N = p^{m+1}; Other: top digit index
    unsigned m1 = 0, m2 = 0;
    std::uint64_t top_digit = 0;  // Other: n_m
};
WeightInfo classify_weight(std::uint64_t N, std::uint32_t p);

struct RelationModule
{
    std::uint64_t N = 0;
    std::uint32_t p = 0;
    WeightInfo info{};
    std::size_t dimension = 0;
    std::vector<std::uint64_t> basis;                // symbol indices k of r_{k,N-k}
    std::vector<std::vector<Fp>> normal_form;        // normal_form[k-1][j]: coefficient on basis[j]
    CheckReport check;                               // comparison with the closed forms
};

RelationModule relation_module(std::uint64_t N, std::uint32_t p);

// r_{a,b} for a + b = N, stored at index a-1
struct CoproductTable
{
    std::uint64_t N = 0;
    std::vector<Fp> r;
};

struct CoproductDecomposition
{
    bool accepted = false;
    std::optional<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>> failing;  // (a,b,c)
    Fp r_n = 0;         // coefficient of the reduced coproduct of mu^N
    Fp r_p = 0;         // coefficient of (1/p) times it, N a p-power
    std::optional<std::pair<std::uint64_t, std::uint64_t>> skew_pair;  // (n1 < n2)
    Fp t = 0;           // coefficient of mu^{n1} (x) mu^{n2}
};

CoproductDecomposition decompose_coproduct(const CoproductTable& table, std::uint32_t p);
CoproductTable compose_coproduct(std::uint64_t N, std::uint32_t p, Fp r_n, Fp r_p, Fp t);

// Polynomial algebra on mu_w (w in V\U) and mu_u^(0), mu_u^(1) (u in U).
class CubeElement
{
public:
    // variable (label, corner): corner -1 for an unsplit mu_w, 0/1 for the split copies
    using Var = std::pair<int, int>;
    using Mono = std::vector<std::pair<Var, std::uint32_t>>;

    CubeElement(std::vector<int> V, std::vector<int> U, Fp p);
    static CubeElement monomial(std::vector<int> V, std::vector<int> U, Fp p, const Mono& m, Fp c = 1);

    const std::vector<int>& V() const { return V_; }
    const std::vector<int>& U() const { return U_; }
    Fp prime() const { return p_; }
    const std::map<Mono, Fp>& terms() const { return terms_; }
    void add_term(Mono m, Fp c);
    bool operator==(const CubeElement& o) const
    {
        return V_ == o.V_ && U_ == o.U_ && p_ == o.p_ && terms_ == o.terms_;
    }
    std::string to_string() const;

private:
    std::vector<int> V_, U_;
    Fp p_;
    std::map<Mono, Fp> terms_;
};

CubeElement cube_psi(int u, const CubeElement& x);
CubeElement cube_psi_seq(const std::vector<int>& seq, const CubeElement& x);
bool order_independent(const std::vector<int>& seq, const CubeElement& x);
// every monomial of P(mu_S) of degree <= D (|mu| = 2) checked over all orderings of S
CheckReport cube_order_check(const std::vector<int>& S, int D, std::uint32_t p);
// dim_t of A^U_V (x)_{A^U_{V\v}} A^U_V against A^{U+v}_V for t <= D
CheckReport pushout_dimension_check(const std::vector<int>& V, const std::vector<int>& U, int v, int D,
                                    std::uint32_t p);

struct SolutionSpace
{
    std::size_t unknowns = 0;
    std::size_t equations = 0;
    std::size_t kernel_dim = 0;
    std::size_t family_rank = 0;
    std::size_t family_size = 0;
    bool families_in_kernel = true;
    bool matches = false;
    std::vector<std::vector<Fp>> kernel;
    // coordinate -> (s, exponent vector over S with entry s set to the weight left for mu_s, a)
    std::vector<std::tuple<int, std::vector<std::uint64_t>, std::uint64_t>> coordinates;
    std::map<std::tuple<int, std::vector<std::uint64_t>, std::uint64_t>, std::size_t> index;
    FpSparseMatrix constraints{0, 0, 3};
    CheckReport check;

    bool is_solution(const std::vector<Fp>& v) const;
};

// Coefficient tables of the reduced coproducts of a weight-N element of an
// |S|-fold polynomial Hopf algebra, subject to coassociativity, counit and
// commutation of iterated coproducts; target_degree = 2N.
SolutionSpace multifold_solution_space(std::size_t S, std::uint64_t target_degree, std::uint32_t p);
// Table for direction s: the single block at multi-exponent b (size |S|) with
// entries (1/p) binom(b_s, a); used to probe which families the constraints admit.
std::vector<Fp> p_power_block(const SolutionSpace& space, int s, const std::vector<std::uint64_t>& b,
                              std::uint32_t p);

}  // namespace thh
