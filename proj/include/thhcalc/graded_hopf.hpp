#pragma once

#include "thhcalc/fp_linalg.hpp"
#include "thhcalc/report.hpp"

#include <compare>
#include <map>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"

namespace thh {

enum class GenKind { Exterior, Polynomial, Truncated, DividedPower };

const char* kind_name(GenKind k);
GenKind kind_from_name(const std::string& s);

struct GeneratorSpec
{
    std::string label;
    int degree = 0;
    GenKind kind = GenKind::Polynomial;
    int height = 0;  // Truncated only; 0 means "use p"
};

enum class Overflow { Strict, Truncate };

class AlgebraSpec
{
public:
    AlgebraSpec(Fp p, int degree_bound);
    AlgebraSpec(Fp p, int degree_bound, const std::vector<GeneratorSpec>& gens);

    std::size_t add_generator(GeneratorSpec g);

    const Field& field() const { return field_; }
    Fp prime() const { return field_.p(); }
    int degree_bound() const { return degree_bound_; }
    void set_degree_bound(int d);

    std::size_t size() const { return gens_.size(); }
    const std::vector<GeneratorSpec>& generators() const { return gens_; }
    const GeneratorSpec& generator(std::size_t i) const { return gens_.at(i); }
    std::size_t index_of(const std::string& label) const;
    bool contains(const std::string& label) const { return index_.count(label) != 0; }

    // exponent cap: 1 for exterior, h-1 for truncated, unbounded otherwise
    std::uint32_t max_exponent(std::size_t g) const;

private:
    Field field_;
    int degree_bound_;
    std::vector<GeneratorSpec> gens_;
    std::unordered_map<std::string, std::size_t> index_;
};

// Sorted (generator index, exponent) pairs with positive exponents. For a
// divided power generator the exponent k stands for gamma_k.
class Monomial
{
public:
    using Factor = std::pair<std::uint32_t, std::uint32_t>;

    Monomial() = default;
    explicit Monomial(std::vector<Factor> factors);
    static Monomial gen(std::size_t g, std::uint32_t e = 1);

    const std::vector<Factor>& factors() const { return f_; }
    std::uint32_t exponent(std::size_t g) const;
    bool is_one() const { return f_.empty(); }

    auto operator<=>(const Monomial&) const = default;

private:
    std::vector<Factor> f_;
};

class Element
{
public:
    using Terms = std::map<Monomial, Fp>;

    explicit Element(Fp p) : p_(p) {}
    static Element one(Fp p);
    static Element of(const Monomial& m, Fp p, Fp c = 1);

    Fp prime() const { return p_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    Fp coefficient(const Monomial& m) const;

    void add_term(const Monomial& m, Fp c);
    Element& operator+=(const Element& o);
    Element& operator-=(const Element& o);
    Element operator+(const Element& o) const;
    Element operator-(const Element& o) const;
    Element scaled(Fp c) const;

    bool operator==(const Element& o) const { return p_ == o.p_ && terms_ == o.terms_; }

private:
    Fp p_;
    Terms terms_;
};

class TensorSquareElement
{
public:
    using Key = std::pair<Monomial, Monomial>;
    using Terms = std::map<Key, Fp>;

    explicit TensorSquareElement(Fp p) : p_(p) {}
    Fp prime() const { return p_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add_term(const Monomial& a, const Monomial& b, Fp c);
    TensorSquareElement& operator+=(const TensorSquareElement& o);
    bool operator==(const TensorSquareElement& o) const { return p_ == o.p_ && terms_ == o.terms_; }

private:
    Fp p_;
    Terms terms_;
};

int degree(const Monomial& m, const AlgebraSpec& spec);
// Homogeneous degree of a nonzero element; throws ContractError if mixed or zero.
int degree(const Element& a, const AlgebraSpec& spec);
bool is_homogeneous(const Element& a, const AlgebraSpec& spec);
void validate(const Monomial& m, const AlgebraSpec& spec);

// Product of two monomials as coefficient times monomial (coefficient may be 0).
std::pair<Fp, Monomial> multiply(const Monomial& a, const Monomial& b, const AlgebraSpec& spec);
Element multiply(const Element& a, const Element& b, const AlgebraSpec& spec, Overflow mode = Overflow::Strict);
Element power(const Element& a, unsigned e, const AlgebraSpec& spec, Overflow mode = Overflow::Strict);

TensorSquareElement coproduct(const Monomial& m, const AlgebraSpec& spec);
TensorSquareElement coproduct(const Element& a, const AlgebraSpec& spec, Overflow mode = Overflow::Strict);
// psi(a) - a(x)1 - 1(x)a on the augmentation ideal
TensorSquareElement reduced_coproduct(const Element& a, const AlgebraSpec& spec);
TensorSquareElement multiply(const TensorSquareElement& a, const TensorSquareElement& b, const AlgebraSpec& spec);
TensorSquareElement tensor(const Element& a, const Element& b);

Fp counit(const Element& a);

std::vector<Monomial> basis(const AlgebraSpec& spec, int t);
// Same enumeration without the degree_bound precondition.
std::vector<Monomial> monomials_of_degree(const AlgebraSpec& spec, int t);
std::vector<std::size_t> poincare_series(const AlgebraSpec& spec, int D);
std::vector<Element> primitive_basis(const AlgebraSpec& spec, int t);
std::vector<Element> primitive_basis(const AlgebraSpec& spec, const std::vector<Monomial>& span);
std::vector<std::size_t> indecomposable_dims(const AlgebraSpec& spec, int D);
AlgebraSpec dualize(const AlgebraSpec& spec);

// Coefficientwise product of power series truncated at D.
std::vector<std::size_t> convolve(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b, int D);

std::string to_string(const Monomial& m, const AlgebraSpec& spec);
std::string to_string(const Element& a, const AlgebraSpec& spec);
std::string to_string(const TensorSquareElement& a, const AlgebraSpec& spec);

// uniformly random coefficients on basis(spec, t); nonzero whenever the degree is
Element random_homogeneous(const AlgebraSpec& spec, int t, std::mt19937_64& rng);
// associativity, graded commutativity, coassociativity, multiplicativity of psi,
// counit, Frobenius, duality and divided power dimension checks; at least
// `trials` random cases each within the degree bound
CheckReport hopf_property_suite(const AlgebraSpec& spec, std::size_t trials, std::uint64_t seed);

nlohmann::json to_json(const AlgebraSpec& spec);
AlgebraSpec spec_from_json(const nlohmann::json& j);
nlohmann::json poincare_json(const AlgebraSpec& spec, const std::vector<std::size_t>& dims);

}  // namespace thh
