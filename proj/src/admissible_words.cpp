#include "thhcalc/admissible_words.hpp"

#include "thhcalc/arith.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <limits>
#include <sstream>

namespace thh {

bool is_admissible(const std::vector<Letter>& seq)
{
    if (seq.empty() || seq.back().kind != LetterKind::Mu)
        return false;
    for (const auto& l : seq)
        if (l.k < 0)
            return false;
    for (std::size_t i = 1; i < seq.size(); ++i) {
        LetterKind prev = seq[i - 1].kind;
        switch (seq[i].kind) {
        case LetterKind::Mu:
            if (prev != LetterKind::Rho)
                return false;
            break;
        case LetterKind::Rho:
            if (prev != LetterKind::RhoK)
                return false;
            break;
        case LetterKind::RhoK:
        case LetterKind::PhiK:
            if (prev != LetterKind::Rho && prev != LetterKind::PhiK)
                return false;
            break;
        }
    }
    return true;
}

AdmissibleWord::AdmissibleWord(std::vector<Letter> letters, std::vector<int> labels)
    : letters_(std::move(letters)), labels_(std::move(labels))
{
    if (!is_admissible(letters_))
        throw ContractError("letter sequence is not an admissible word");
    if (!labels_.empty()) {
        if (labels_.size() != letters_.size())
            throw ContractError("label count differs from word length");
        for (std::size_t i = 1; i < labels_.size(); ++i)
            if (!(labels_[i] < labels_[i - 1]))
                throw ContractError("labels must decrease from the first letter to the last");
    }
}

AdmissibleWord AdmissibleWord::prepend(Letter l, int label) const
{
    std::vector<Letter> ls;
    ls.reserve(letters_.size() + 1);
    ls.push_back(l);
    ls.insert(ls.end(), letters_.begin(), letters_.end());
    std::vector<int> lb;
    if (labeled()) {
        lb.push_back(label);
        lb.insert(lb.end(), labels_.begin(), labels_.end());
    }
    return AdmissibleWord(std::move(ls), std::move(lb));
}

AdmissibleWord AdmissibleWord::with_labels(std::vector<int> labels) const
{
    return AdmissibleWord(letters_, std::move(labels));
}

bool is_monic(const AdmissibleWord& w)
{
    const Letter& f = w.first();
    return f.kind == LetterKind::Rho || f.kind == LetterKind::Mu ||
           ((f.kind == LetterKind::RhoK || f.kind == LetterKind::PhiK) && f.k == 0);
}

namespace {

std::uint64_t step_degree(const Letter& l, std::uint64_t d, std::uint32_t p)
{
    switch (l.kind) {
    case LetterKind::Mu: return 2;
    case LetterKind::Rho: return sat_add(d, 1);
    case LetterKind::RhoK: return sat_mul(ipow(p, l.k), sat_add(d, 1));
    case LetterKind::PhiK: return sat_mul(ipow(p, l.k), sat_add(2, sat_mul(p, d)));
    }
    return 0;
}

const char* kSup[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
const char* kSub[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};

std::string script(int v, const char* const* table)
{
    std::string digits = std::to_string(v), out;
    for (char c : digits)
        out += table[c - '0'];
    return out;
}

}  // namespace

std::uint64_t degree(const AdmissibleWord& w, std::uint32_t p)
{
    std::uint64_t d = 0;
    const auto& ls = w.letters();
    for (std::size_t i = ls.size(); i-- > 0;)
        d = step_degree(ls[i], d, p);
    return d;
}

std::size_t rho_count(const AdmissibleWord& w)
{
    return std::count_if(w.letters().begin(), w.letters().end(),
                         [](const Letter& l) { return l.kind == LetterKind::Rho; });
}

std::string to_string(const AdmissibleWord& w)
{
    std::string s;
    for (std::size_t i = 0; i < w.length(); ++i) {
        const Letter& l = w.letters()[i];
        switch (l.kind) {
        case LetterKind::Mu: s += "μ"; break;
        case LetterKind::Rho: s += "ρ"; break;
        case LetterKind::RhoK: s += "ρ" + script(l.k, kSup); break;
        case LetterKind::PhiK: s += "φ" + script(l.k, kSup); break;
        }
        if (w.labeled())
            s += script(w.labels()[i], kSub);
    }
    return s;
}

AdmissibleWord AdmissibleWord::parse(const std::string& text)
{
    std::vector<Letter> letters;
    std::vector<int> labels;
    std::size_t i = 0;
    auto starts = [&](const std::string& tok) { return text.compare(i, tok.size(), tok) == 0; };
    auto read_script = [&](const char* const* table, int& value) {
        bool any = false;
        value = 0;
        for (;;) {
            bool hit = false;
            for (int d = 0; d < 10; ++d) {
                std::string t = table[d];
                if (starts(t)) {
                    value = value * 10 + d;
                    i += t.size();
                    hit = any = true;
                    break;
                }
            }
            if (!hit)
                break;
        }
        return any;
    };
    auto read_ascii = [&](int& value) {
        bool any = false;
        value = 0;
        while (i < text.size() && std::isdigit((unsigned char)text[i])) {
            value = value * 10 + (text[i++] - '0');
            any = true;
        }
        return any;
    };
    while (i < text.size()) {
        if (text[i] == ' ' || text[i] == '.') {
            ++i;
            continue;
        }
        Letter l;
        if (starts("μ")) {
            i += std::string("μ").size();
            l = Letter::mu();
        }
        else if (starts("mu")) {
            i += 2;
            l = Letter::mu();
        }
        else if (starts("ρ") || starts("rho") || starts("φ") || starts("phi")) {
            bool phi = starts("φ") || starts("phi");
            i += starts("ρ") ? std::string("ρ").size() : starts("φ") ? std::string("φ").size() : 3;
            int k = 0;
            bool has_k = read_script(kSup, k);
            if (!has_k && i < text.size() && text[i] == '^') {
                ++i;
                if (!read_ascii(k))
                    throw ContractError("expected exponent after '^' in word '" + text + "'");
                has_k = true;
            }
            if (phi) {
                if (!has_k)
                    throw ContractError("φ needs an index in word '" + text + "'");
                l = Letter::phi_k(k);
            }
            else {
                l = has_k ? Letter::rho_k(k) : Letter::rho();
            }
        }
        else {
            throw ContractError("cannot parse word '" + text + "'");
        }
        letters.push_back(l);
        int label = 0;
        bool has_label = read_script(kSub, label);
        if (!has_label && i < text.size() && text[i] == '_') {
            ++i;
            has_label = read_ascii(label);
        }
        if (has_label)
            labels.push_back(label);
    }
    if (!labels.empty() && labels.size() != letters.size())
        throw ContractError("word '" + text + "' is only partially labeled");
    return AdmissibleWord(std::move(letters), std::move(labels));
}

namespace {

bool word_less(const std::pair<std::uint64_t, AdmissibleWord>& a, const std::pair<std::uint64_t, AdmissibleWord>& b)
{
    if (a.first != b.first)
        return a.first < b.first;
    return a.second < b.second;
}

}  // namespace

std::vector<AdmissibleWord> enumerate_admissible(std::size_t n, std::uint64_t D, std::uint32_t p)
{
    Field F(p);
    std::vector<std::pair<std::uint64_t, AdmissibleWord>> found;
    if (n == 0)
        return {};
    // letters stored in reverse while building
    std::vector<Letter> rev{Letter::mu()};
    std::function<void(std::uint64_t)> rec = [&](std::uint64_t d) {
        // each further letter raises the degree by at least one
        if (sat_add(d, n - rev.size()) > D)
            return;
        if (rev.size() == n) {
            std::vector<Letter> ls(rev.rbegin(), rev.rend());
            found.emplace_back(d, AdmissibleWord(std::move(ls)));
            return;
        }
        auto push = [&](Letter l) {
            std::uint64_t nd = step_degree(l, d, p);
            if (nd > D)
                return false;
            rev.push_back(l);
            rec(nd);
            rev.pop_back();
            return true;
        };
        switch (rev.back().kind) {
        case LetterKind::Mu: push(Letter::rho()); break;
        case LetterKind::Rho:
            for (int k = 0; push(Letter::rho_k(k)); ++k) {
            }
            break;
        case LetterKind::RhoK:
        case LetterKind::PhiK:
            push(Letter::rho());
            for (int k = 0; push(Letter::phi_k(k)); ++k) {
            }
            break;
        }
    };
    rec(2);
    std::sort(found.begin(), found.end(), word_less);
    std::vector<AdmissibleWord> out;
    for (auto& [d, w] : found)
        out.push_back(std::move(w));
    return out;
}

std::vector<AdmissibleWord> enumerate_monic(std::size_t n, std::uint64_t D, std::uint32_t p)
{
    auto all = enumerate_admissible(n, D, p);
    std::vector<AdmissibleWord> out;
    for (auto& w : all)
        if (is_monic(w))
            out.push_back(std::move(w));
    return out;
}

std::vector<AdmissibleWord> labeled_monic(const std::vector<int>& S, std::uint64_t D, std::uint32_t p)
{
    for (std::size_t i = 1; i < S.size(); ++i)
        if (!(S[i - 1] < S[i]))
            throw ContractError("label set must be strictly increasing");
    std::vector<int> labels(S.rbegin(), S.rend());
    std::vector<AdmissibleWord> out;
    if (S.empty())
        return out;
    for (const auto& w : enumerate_monic(S.size(), D, p))
        out.push_back(w.with_labels(labels));
    return out;
}

namespace {

AlgebraSpec spec_from_words(const std::vector<AdmissibleWord>& words, int D, std::uint32_t p, bool polynomial_mu)
{
    AlgebraSpec spec(p, D);
    for (const auto& w : words) {
        GeneratorSpec g;
        g.label = to_string(w);
        g.degree = (int)degree(w, p);
        if (w.length() == 1 && polynomial_mu)
            g.kind = GenKind::Polynomial;
        else
            g.kind = (g.degree % 2) ? GenKind::Exterior : GenKind::DividedPower;
        spec.add_generator(g);
    }
    return spec;
}

}  // namespace

AlgebraSpec b_n_spec(std::size_t n, int D, std::uint32_t p)
{
    if (n == 0)
        throw ContractError("b_n_spec needs n >= 1");
    return spec_from_words(enumerate_monic(n, D < 0 ? 0 : D, p), D, p, true);
}

AlgebraSpec b_labeled_spec(const std::vector<int>& S, int D, std::uint32_t p)
{
    return spec_from_words(labeled_monic(S, D < 0 ? 0 : D, p), D, p, true);
}

namespace {

// does w begin with the given letter prefix
bool has_prefix(const AdmissibleWord& w, const std::vector<Letter>& pre)
{
    if (pre.size() > w.length())
        return false;
    return std::equal(pre.begin(), pre.end(), w.letters().begin());
}

std::vector<Letter> rho0rho_power(std::uint64_t k)
{
    std::vector<Letter> v;
    for (std::uint64_t i = 0; i < k; ++i) {
        v.push_back(Letter::rho_k(0));
        v.push_back(Letter::rho());
    }
    return v;
}

// the three shapes for residue class k (1 <= k <= p), optionally behind a leading rho
bool residue_shape(const AdmissibleWord& w, std::uint64_t k, bool lead_rho)
{
    std::vector<Letter> head;
    if (lead_rho)
        head.push_back(Letter::rho());
    auto base = head;
    auto pk1 = rho0rho_power(k - 1);
    base.insert(base.end(), pk1.begin(), pk1.end());
    auto exact = base;
    exact.push_back(Letter::mu());
    if (w.letters() == exact)
        return true;
    auto phi = base;
    phi.push_back(Letter::phi_k(0));
    if (has_prefix(w, phi))
        return true;
    auto full = head;
    auto pk = rho0rho_power(k);
    full.insert(full.end(), pk.begin(), pk.end());
    return has_prefix(w, full);
}

}  // namespace

CheckReport check_word_lemma(std::size_t n, std::uint64_t D, std::uint32_t p)
{
    CheckReport r;
    r.id = "admissible_words.structure";
    r.statement = "admissible words: suffix rho^k rho mu, rho count bound for even degree, degree >= n+1, "
                  "odd words start with rho, residue classes mod 2p of monic words";
    r.params = {{"n", n}, {"max_degree", D}, {"p", p}};
    std::size_t skipped_residue = 0;
    for (const auto& w : enumerate_admissible(n, D, p)) {
        ++r.cases;
        const auto& ls = w.letters();
        std::uint64_t d = degree(w, p);
        std::string name = to_string(w) + " (degree " + std::to_string(d) + ")";
        if (n >= 3 && !(ls[n - 3].kind == LetterKind::RhoK && ls[n - 2].kind == LetterKind::Rho))
            r.fail("part 1: " + name + " does not end with rho^k rho mu");
        if (d % 2 == 0 && 2 * rho_count(w) > n - 1)
            r.fail("part 2: " + name + " has too many rho letters");
        if (d < n + 1)
            r.fail("part 3: " + name + " has degree below n+1");
        if (d % 2 == 1 && w.first().kind != LetterKind::Rho)
            r.fail("part 4: " + name + " is odd but does not start with rho");
        if (is_monic(w)) {
            std::uint64_t res = d % (2 * p);
            if (res % 2 == 0) {
                std::uint64_t k = res / 2;
                if (k == 0)
                    k = p;
                if (!residue_shape(w, k, false))
                    r.fail("part 5: " + name + " does not have the shape for residue " + std::to_string(res));
            }
            else {
                std::uint64_t k = (res - 1) / 2;
                if (k == 0)
                    ++skipped_residue;
                else if (!residue_shape(w, k, true))
                    r.fail("part 5: " + name + " does not have the shape for residue " + std::to_string(res));
            }
        }
    }
    r.details["odd_words_in_residue_1_not_covered"] = skipped_residue;
    return r;
}

std::vector<std::uint64_t> mu_product_degrees(std::size_t m, std::uint64_t D, std::uint32_t p)
{
    std::vector<std::uint64_t> out;
    std::function<void(std::size_t, unsigned, std::uint64_t)> rec = [&](std::size_t left, unsigned jmin,
                                                                        std::uint64_t sum) {
        if (left == 0) {
            out.push_back(2 * sum);
            return;
        }
        for (unsigned j = jmin;; ++j) {
            std::uint64_t pj = ipow(p, j);
            if (2 * sat_add(sum, sat_mul(pj, left)) > D)
                break;
            rec(left - 1, j, sum + pj);
        }
    };
    rec(m, 0, 0);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

CheckReport digit_sum_checks(std::size_t n, std::uint64_t D, std::uint32_t p)
{
    CheckReport r;
    r.id = "admissible_words.digit_sums";
    r.statement = "p-adic digit sums of half-degrees of even words and of mu-power products, and the resulting "
                  "degree disjointness";
    r.params = {{"n", n}, {"max_degree", D}, {"p", p}};
    nlohmann::json skipped = nlohmann::json::array();
    auto words = enumerate_admissible(n, D, p);

    // even words: digit sum of |x|/2 equals n minus the number of rho letters
    if (n <= 2 * (std::size_t)p - 2) {
        for (const auto& w : words) {
            std::uint64_t d = degree(w, p);
            if (d % 2)
                continue;
            ++r.cases;
            std::uint64_t ds = digit_sum(d / 2, p);
            if (ds != n - rho_count(w))
                r.fail("even word " + to_string(w) + ": digit sum " + std::to_string(ds) + " != " +
                       std::to_string(n - rho_count(w)));
        }
    }
    else {
        skipped.push_back("even-word digit sum: needs n <= 2p-2");
    }

    // mu products: enumerate nondecreasing exponent tuples
    if (n >= 1 && n < 2 * (std::size_t)p) {
        std::vector<unsigned> js;
        std::function<void(std::size_t, unsigned, std::uint64_t)> rec = [&](std::size_t left, unsigned jmin,
                                                                            std::uint64_t sum) {
            if (left == 0) {
                ++r.cases;
                std::uint64_t ds = digit_sum(sum, p);
                bool ok = (n < p) ? ds == n : (ds == n || ds == n - p + 1);
                if (!ok) {
                    std::string t;
                    for (auto j : js)
                        t += (t.empty() ? "" : ",") + std::to_string(j);
                    r.fail("mu product with exponents p^(" + t + "): digit sum " + std::to_string(ds));
                }
                return;
            }
            for (unsigned j = jmin;; ++j) {
                std::uint64_t pj = ipow(p, j);
                if (2 * sat_add(sum, sat_mul(pj, left)) > D)
                    break;
                js.push_back(j);
                rec(left - 1, j, sum + pj);
                js.pop_back();
            }
        };
        rec(n, 0, 0);
    }
    else {
        skipped.push_back("mu-product digit sum: needs 1 <= n < 2p");
    }

    // degree disjointness between even words and mu products
    if (n >= 2 && n <= p) {
        auto first = mu_product_degrees(n, D, p);
        auto second = mu_product_degrees(n + 1, D, p);
        for (const auto& w : words) {
            std::uint64_t d = degree(w, p);
            if (d % 2)
                continue;
            ++r.cases;
            if (std::binary_search(first.begin(), first.end(), d))
                r.fail("even word " + to_string(w) + " shares degree " + std::to_string(d) + " with a product of " +
                       std::to_string(n) + " mu powers");
            if (p >= 5 && std::binary_search(second.begin(), second.end(), d))
                r.fail("even word " + to_string(w) + " shares degree " + std::to_string(d) + " with a product of " +
                       std::to_string(n + 1) + " mu powers");
        }
        if (p < 5)
            skipped.push_back("disjointness from (n+1)-fold mu products: needs p >= 5");
    }
    else {
        skipped.push_back("degree disjointness: needs 2 <= n <= p");
    }
    r.details["skipped"] = skipped;
    return r;
}

CheckReport b_n_primitive_check(std::size_t n, int D, std::uint32_t p)
{
    CheckReport r;
    r.id = "admissible_words.b_n_primitives";
    r.statement = "B_n has no primitives in degrees 2pi-1 and 2pi for i >= 2; coproduct kernel and monic word "
                  "degrees agree";
    r.params = {{"n", n}, {"max_degree", D}, {"p", p}};
    AlgebraSpec spec = b_n_spec(n, D, p);
    std::vector<std::size_t> by_words(D + 1, 0);
    for (const auto& w : enumerate_monic(n, D, p))
        ++by_words[degree(w, p)];
    nlohmann::json rows = nlohmann::json::array();
    for (int t = 1; t <= D; ++t) {
        ++r.cases;
        std::size_t kernel = primitive_basis(spec, t).size();
        if (kernel != by_words[t])
            r.fail("degree " + std::to_string(t) + ": coproduct kernel " + std::to_string(kernel) + ", monic words " +
                   std::to_string(by_words[t]));
        bool forbidden = t >= 4 * (int)p - 1 && (t % (2 * (int)p) == 0 || (t + 1) % (2 * (int)p) == 0);
        if (forbidden && (kernel || by_words[t]))
            r.fail("primitive in degree " + std::to_string(t));
        if (kernel || by_words[t])
            rows.push_back({t, kernel, by_words[t]});
    }
    r.details["primitive_degrees"] = rows;  // degree, kernel dim, word count
    return r;
}

}  // namespace thh
