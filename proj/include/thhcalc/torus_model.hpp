#pragma once

#include "thhcalc/admissible_words.hpp"
#include "thhcalc/graded_hopf.hpp"
#include "thhcalc/report.hpp"

#include <optional>
#include <set>
#include <vector>

namespace thh {

// Dual Steenrod factor: xi_i (i >= 1, polynomial, degree 2p^i - 2) and
// tau_i (i >= 0, exterior, degree 2p^i - 1). OmitTau drops tau_m, leaving the
// homology of the connective Morava K-theory k(m).
enum class SteenrodMode { None, Full, OmitTau };

struct SteenrodSpec
{
    SteenrodMode mode = SteenrodMode::None;
    int omit = -1;  // m for OmitTau

    static SteenrodSpec none() { return {}; }
    static SteenrodSpec full() { return {SteenrodMode::Full, -1}; }
    static SteenrodSpec omit_tau(int m) { return {SteenrodMode::OmitTau, m}; }
};

struct TorusGenerator
{
    enum class Kind { Word, Xi, Tau } kind = Kind::Word;
    std::optional<AdmissibleWord> word;  // labeled, Word only
    std::vector<int> labels;             // sorted label set U, Word only
    int index = 0;                       // i of xi_i / tau_i
};

// Tensor product of the U-labeled algebras B_U over a family of nonempty
// label sets, optionally tensored with a dual Steenrod factor.
class TorusAlgebra
{
public:
    // all nonempty subsets of {1..n}
    static TorusAlgebra build(int n, std::uint32_t p, int D, SteenrodSpec steenrod = {});
    // the given nonempty label sets (each sorted, no repeats)
    static TorusAlgebra build_delta(const std::vector<std::vector<int>>& family, std::uint32_t p, int D,
                                    SteenrodSpec steenrod = {});

    int n() const { return n_; }
    std::uint32_t prime() const { return spec_.prime(); }
    int degree_bound() const { return spec_.degree_bound(); }
    const AlgebraSpec& spec() const { return spec_; }
    const std::vector<std::vector<int>>& family() const { return family_; }
    const SteenrodSpec& steenrod() const { return steenrod_; }
    // |v_m| = 2p^m - 2 for OmitTau(m), otherwise 0
    int v_degree() const;

    const TorusGenerator& info(std::size_t g) const { return info_.at(g); }
    std::optional<std::size_t> word_index(const AdmissibleWord& w) const;
    std::optional<std::size_t> mu_index(int label) const;
    std::optional<std::size_t> xi_index(int i) const;
    std::optional<std::size_t> tau_index(int i) const;

private:
    TorusAlgebra(std::uint32_t p, int D) : spec_(p, D) {}
    void add_steenrod(SteenrodSpec s);

    int n_ = 0;
    AlgebraSpec spec_;
    std::vector<std::vector<int>> family_;
    SteenrodSpec steenrod_;
    std::vector<TorusGenerator> info_;
    std::map<AdmissibleWord, std::size_t> words_;
    std::map<int, std::size_t> xi_, tau_;
};

// The degree-one derivation sigma_v. Every label occurring in a must be
// smaller than v; throws UnsupportedError otherwise and OverflowError when an
// image leaves the degree range of T.
Element sigma(int v, const Element& a, const TorusAlgebra& T);
// image of a single generator power g^e (gamma_e for divided powers)
Element sigma_generator(int v, std::size_t g, std::uint32_t e, const TorusAlgebra& T);

// keeps B_U for U inside V and the Steenrod factor, kills every other generator
Element project_subtorus(const std::vector<int>& V, const Element& a, const TorusAlgebra& T);
// keeps only B_{[n]}, as an element of T
Element project_sphere(const Element& a, const TorusAlgebra& T);
// projection onto P(mu_1,...,mu_n) vanishes
bool in_p_ideal(const Element& a, const TorusAlgebra& T);

// Degrees of the form sum r_{U_i} over partitions of S into blocks U_i from
// delta, with r_U a monic-word degree of B_U (|U| >= 2) or 2p^i (|U| = 1).
// delta must be closed under nonempty subsets.
std::set<std::uint64_t> n_delta_degrees(const std::vector<int>& S, const std::vector<std::vector<int>>& delta,
                                        std::uint64_t D, std::uint32_t p);

CheckReport multifold_primitive_degree_check(int n, std::uint32_t p, std::uint64_t D);
// dims of the full model against the product over subsets and against skeleton (x) B_n
CheckReport torus_poincare_check(int n, std::uint32_t p, int D);
// sigma images of all generators in the ideal, and the sphere projection of sigma_n on L(T^{n-1})
CheckReport sigma_image_check(int n, std::uint32_t p, int D);
// sigma_n(ab) = sigma_n(a) b + (-1)^{|a|} a sigma_n(b) on random homogeneous pairs
// built from generators with labels below n and the full Steenrod factor
CheckReport sigma_derivation_check(int n, std::uint32_t p, int D, std::size_t trials, std::uint64_t seed);

std::vector<std::vector<int>> proper_subsets(int n);

}  // namespace thh
