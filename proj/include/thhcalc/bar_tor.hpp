#pragma once

#include "thhcalc/graded_hopf.hpp"
#include "thhcalc/report.hpp"

#include <map>
#include <vector>

namespace thh {

// Degree-truncated copy of a monomial algebra with basis tables per degree.
class TruncatedAlgebra
{
public:
    TruncatedAlgebra(const AlgebraSpec& spec, int D);

    const AlgebraSpec& spec() const { return spec_; }
    int max_degree() const { return D_; }
    const std::vector<Monomial>& basis(int t) const { return bases_.at(t); }
    std::size_t index(int t, const Monomial& m) const;
    // product of basis elements, dropped above D
    std::pair<Fp, std::size_t> product(int ta, std::size_t ia, int tb, std::size_t ib) const;

private:
    AlgebraSpec spec_;
    int D_;
    std::vector<std::vector<Monomial>> bases_;
    std::vector<std::map<Monomial, std::size_t>> index_;
};

// Reduced bar complex B_{s,t}: tensors [a_1|...|a_s] of positive-degree basis
// elements with total internal degree t.
class BarComplex
{
public:
    using Cell = std::vector<std::pair<int, std::uint32_t>>;  // (degree, basis index) per slot

    explicit BarComplex(const TruncatedAlgebra& A);

    const std::vector<Cell>& cells(int s, int t);
    // d: B_{s,t} -> B_{s-1,t}
    FpSparseMatrix differential(int s, int t);

private:
    const TruncatedAlgebra& A_;
    std::map<std::pair<int, int>, std::vector<Cell>> cells_;
    std::map<std::pair<int, int>, std::map<Cell, std::size_t>> index_;
};

using TorTable = std::map<std::pair<int, int>, std::size_t>;  // (s,t) -> dim, zero entries omitted

// dims of Tor^A_{s,t}(F_p, F_p) for t <= D; if max_total >= 0 only bidegrees with s + t <= max_total
TorTable tor_dims(const AlgebraSpec& spec, int D, int max_total = -1);
std::vector<std::size_t> total_degree_dims(const TorTable& table, int D);
CheckReport verify_tor_iso(const AlgebraSpec& a, const AlgebraSpec& b, int D);

}  // namespace thh
