#include "thhcalc/acceptance.hpp"
#include "thhcalc/admissible_words.hpp"
#include "thhcalc/bar_tor.hpp"
#include "thhcalc/multifold.hpp"
#include "thhcalc/spectral_engine.hpp"
#include "thhcalc/torus_model.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

using namespace thh;
using nlohmann::json;

namespace {

struct RunConfig
{
    std::uint32_t p = 3;
    int n = 2;
    int max_degree = 30;
    std::string format = "json";
    bool truncate = false;
    std::uint64_t seed = 1;
    std::string out;

    json to_json() const
    {
        return {{"p", p},
                {"n", n},
                {"max_degree", max_degree},
                {"format", format},
                {"strictness", truncate ? "truncating" : "strict"},
                {"seed", seed}};
    }
};

// What a verb produces: check reports, an optional table, and extra JSON fields.
struct Output
{
    std::vector<CheckReport> reports;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    json extra = json::object();
    bool table_in_json = true;
    bool passed = true;

    void add(CheckReport r)
    {
        passed = passed && r.passed;
        reports.push_back(std::move(r));
    }
};

std::string csv_cell(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"')
            q += '"';
        q += c;
    }
    return q + "\"";
}

std::string render(const std::string& verb, const RunConfig& cfg, const Output& o)
{
    std::ostringstream os;
    if (cfg.format == "csv") {
        std::vector<std::string> cols = o.columns;
        auto rows = o.rows;
        if (cols.empty()) {
            cols = {"id", "verdict", "cases", "first_failure"};
            for (const auto& r : o.reports)
                rows.push_back({r.id, r.passed ? "pass" : "fail", std::to_string(r.cases),
                                r.failures.empty() ? "" : r.failures.front()});
        }
        for (std::size_t i = 0; i < cols.size(); ++i)
            os << (i ? "," : "") << csv_cell(cols[i]);
        os << "\n";
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i)
                os << (i ? "," : "") << csv_cell(row[i]);
            os << "\n";
        }
        return os.str();
    }
    json j = {{"schema", "thhcalc/1"}, {"verb", verb}, {"config", cfg.to_json()},
              {"status", o.passed ? "pass" : "fail"}};
    if (!o.reports.empty()) {
        j["reports"] = json::array();
        for (const auto& r : o.reports)
            j["reports"].push_back(r.to_json());
    }
    if (!o.columns.empty() && o.table_in_json) {
        j["columns"] = o.columns;
        j["rows"] = o.rows;
    }
    for (const auto& [k, v] : o.extra.items())
        j[k] = v;
    os << j.dump(2) << "\n";
    return os.str();
}

std::vector<long long> parse_list(const std::string& s)
{
    std::vector<long long> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(std::stoll(item));
    return out;
}

std::vector<Fp> parse_coeffs(const std::string& s, std::uint32_t p)
{
    Field F(p);
    std::vector<Fp> out;
    for (long long v : parse_list(s))
        out.push_back(F.reduce(v));
    return out;
}

// "a..b" or "a"
std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& s)
{
    auto dots = s.find("..");
    if (dots == std::string::npos) {
        auto v = std::stoull(s);
        return {v, v};
    }
    return {std::stoull(s.substr(0, dots)), std::stoull(s.substr(dots + 2))};
}

// "b3" -> 3
std::size_t parse_b(const std::string& s)
{
    if (s.size() < 2 || (s[0] != 'b' && s[0] != 'B'))
        throw ContractError("expected an algebra name like b2, got '" + s + "'");
    return std::stoul(s.substr(1));
}

AlgebraSpec load_spec(const std::string& path, int D)
{
    std::ifstream in(path);
    if (!in)
        throw ContractError("cannot read " + path);
    json j = json::parse(in);
    AlgebraSpec spec = spec_from_json(j);
    spec.set_degree_bound(D);
    return spec;
}

std::string yes_no(bool b)
{
    return b ? "yes" : "no";
}

const char* weight_name(WeightType t)
{
    switch (t) {
    case WeightType::PrimePower: return "prime_power";
    case WeightType::TwoPowers: return "two_powers";
    case WeightType::Other: return "other";
    }
    return "?";
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact F_p computations with graded Hopf algebras, bar spectral sequences and torus models"};
    app.require_subcommand(1);
    app.fallthrough();
    RunConfig cfg;
    bool strict = false;
    app.add_option("--p", cfg.p, "odd prime")->capture_default_str();
    app.add_option("--n", cfg.n, "word length / number of circles")->capture_default_str();
    app.add_option("--max-degree", cfg.max_degree, "degree bound D")->capture_default_str();
    app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    auto* strict_flag = app.add_flag("--strict", strict, "raise when a result leaves the degree range (default)");
    app.add_flag("--truncate", cfg.truncate, "drop terms above the degree bound")->excludes(strict_flag);
    app.add_option("--seed", cfg.seed, "seed for randomized trials")->capture_default_str();
    app.add_option("--out", cfg.out, "write the report here instead of stdout");

    std::string verb;
    std::function<Output()> action;
    // words
    bool monic_only = false;
    auto* words = app.add_subcommand("words", "admissible words of length n and degree <= D");
    words->add_flag("--monic", monic_only, "only monic words");
    words->final_callback([&] {
        action = [&] {
            Output o;
            o.columns = {"word", "length", "degree", "monic", "parity"};
            auto list = monic_only ? enumerate_monic(cfg.n, cfg.max_degree, cfg.p)
                                   : enumerate_admissible(cfg.n, cfg.max_degree, cfg.p);
            for (const auto& w : list) {
                auto d = degree(w, cfg.p);
                o.rows.push_back({to_string(w), std::to_string(w.length()), std::to_string(d), yes_no(is_monic(w)),
                                  d % 2 ? "odd" : "even"});
            }
            return o;
        };
    });

    // poincare
    int torus = 0;
    std::string spec_path;
    auto* poincare =
        app.add_subcommand("poincare", "Poincare series of B_n, of the torus model L(T^n), or of a JSON algebra");
    poincare->add_option("--torus", torus, "use L(T^n) for this n and check its factorization");
    poincare->add_option("--spec", spec_path, "algebra JSON file");
    poincare->final_callback([&] {
        action = [&] {
            Output o;
            AlgebraSpec spec = !spec_path.empty() ? load_spec(spec_path, cfg.max_degree)
                             : torus              ? TorusAlgebra::build(torus, cfg.p, cfg.max_degree).spec()
                                                  : b_n_spec(cfg.n, cfg.max_degree, cfg.p);
            auto dims = poincare_series(spec, cfg.max_degree);
            o.columns = {"degree", "dim"};
            for (std::size_t t = 0; t < dims.size(); ++t)
                o.rows.push_back({std::to_string(t), std::to_string(dims[t])});
            o.extra["algebra"] = poincare_json(spec, dims);
            if (torus && spec_path.empty())
                o.add(torus_poincare_check(torus, cfg.p, cfg.max_degree));
            return o;
        };
    });

    // tor
    auto* tor = app.add_subcommand("tor", "dims of Tor^A(F_p, F_p) by the reduced bar complex");
    tor->add_option("--spec", spec_path, "algebra JSON file (default: B_n)");
    tor->final_callback([&] {
        action = [&] {
            Output o;
            AlgebraSpec spec =
                spec_path.empty() ? b_n_spec(cfg.n, cfg.max_degree, cfg.p) : load_spec(spec_path, cfg.max_degree);
            o.columns = {"s", "t", "dim"};
            for (const auto& [st, d] : tor_dims(spec, cfg.max_degree))
                o.rows.push_back({std::to_string(st.first), std::to_string(st.second), std::to_string(d)});
            return o;
        };
    });

    // tor-check
    std::string from = "b1", to = "b2";
    auto* torc = app.add_subcommand("tor-check", "total degree dims of Tor over B_k against B_{k+1}");
    torc->add_option("--from", from)->capture_default_str();
    torc->add_option("--to", to)->capture_default_str();
    torc->final_callback([&] {
        action = [&] {
            Output o;
            std::size_t a = parse_b(from), b = parse_b(to);
            if (b != a + 1)
                throw ContractError("tor-check compares B_k with B_{k+1}");
            o.add(verify_tor_iso(b_n_spec(a, cfg.max_degree, cfg.p), b_n_spec(b, cfg.max_degree, cfg.p),
                                 cfg.max_degree));
            return o;
        };
    });

    // primitives
    auto* prims = app.add_subcommand("primitives", "primitives of B_n by coproduct kernel and by monic words");
    prims->final_callback([&] {
        action = [&] {
            Output o;
            o.add(b_n_primitive_check(cfg.n, cfg.max_degree, cfg.p));
            o.add(digit_sum_checks(cfg.n, cfg.max_degree, cfg.p));
            if (cfg.n <= (int)cfg.p)
                o.add(multifold_primitive_degree_check(cfg.n, cfg.p, cfg.max_degree));
            return o;
        };
    });

    // relations
    std::string N_range = "3..20";
    auto* rel = app.add_subcommand("relations", "quotient of the coassociativity relation module per weight N");
    rel->add_option("--N", N_range, "weight or range a..b")->capture_default_str();
    rel->final_callback([&] {
        action = [&] {
            Output o;
            auto [lo, hi] = parse_range(N_range);
            if (lo < 2 || hi < lo)
                throw ContractError("--N needs 2 <= a <= b");
            o.columns = {"N", "type", "dimension", "basis", "coefficients"};
            for (std::uint64_t N = lo; N <= hi; ++N) {
                auto m = relation_module(N, cfg.p);
                std::string basis, coeffs;
                for (std::size_t j = 0; j < m.basis.size(); ++j)
                    basis += (j ? " " : "") + std::string("r") + std::to_string(m.basis[j]);
                for (std::size_t k = 0; k < m.normal_form.size(); ++k) {
                    coeffs += k ? ";" : "";
                    for (std::size_t j = 0; j < m.normal_form[k].size(); ++j)
                        coeffs += (j ? " " : "") + std::to_string(m.normal_form[k][j]);
                }
                o.rows.push_back({std::to_string(N), weight_name(m.info.type), std::to_string(m.dimension), basis,
                                  coeffs});
                o.add(m.check);
            }
            return o;
        };
    });

    // decompose
    std::string coeffs, compose;
    std::uint64_t weight = 0;
    auto* dec = app.add_subcommand("decompose", "split a weight-N coproduct table into its canonical pieces");
    dec->add_option("--N", weight, "weight")->required();
    dec->add_option("--coeffs", coeffs, "r_{a,N-a} for a = 1..N-1, comma separated");
    dec->add_option("--compose", compose, "r_n,r_p,t: build the table from its pieces instead");
    dec->final_callback([&] {
        action = [&] {
            Output o;
            CoproductTable table;
            if (!compose.empty()) {
                auto c = parse_coeffs(compose, cfg.p);
                if (c.size() != 3)
                    throw ContractError("--compose takes r_n,r_p,t");
                table = compose_coproduct(weight, cfg.p, c[0], c[1], c[2]);
            }
            else {
                table.N = weight;
                table.r = parse_coeffs(coeffs, cfg.p);
            }
            if (table.r.size() + 1 != table.N)
                throw ContractError("the table needs N-1 coefficients");
            auto d = decompose_coproduct(table, cfg.p);
            json j = {{"accepted", d.accepted}, {"table", table.r}};
            if (d.failing)
                j["failing"] = {std::get<0>(*d.failing), std::get<1>(*d.failing), std::get<2>(*d.failing)};
            if (d.accepted) {
                j["r_n"] = d.r_n;
                j["r_p"] = d.r_p;
                if (d.skew_pair) {
                    j["skew_pair"] = {d.skew_pair->first, d.skew_pair->second};
                    j["t"] = d.t;
                }
            }
            o.extra["decomposition"] = j;
            o.table_in_json = false;
            o.columns = {"N", "accepted", "r_n", "r_p", "t", "failing"};
            std::string failing;
            if (d.failing)
                failing = std::to_string(std::get<0>(*d.failing)) + " " + std::to_string(std::get<1>(*d.failing)) +
                          " " + std::to_string(std::get<2>(*d.failing));
            o.rows.push_back({std::to_string(weight), yes_no(d.accepted), std::to_string(d.r_n),
                              std::to_string(d.r_p), std::to_string(d.t), failing});
            o.passed = d.accepted;
            return o;
        };
    });

    // cubes
    auto* cubes = app.add_subcommand("cubes", "order independence of iterated cube coproducts on P(mu_1..mu_n)");
    cubes->final_callback([&] {
        action = [&] {
            Output o;
            std::vector<int> S;
            for (int i = 1; i <= cfg.n; ++i)
                S.push_back(i);
            o.add(cube_order_check(S, cfg.max_degree, cfg.p));
            return o;
        };
    });

    // pterm
    std::string x_degrees = "2";
    auto* pterm = app.add_subcommand("pterm", "homology of the divided power page against the truncated polynomial algebra");
    pterm->add_option("--x-degrees", x_degrees, "degrees of the x_i, comma separated")->capture_default_str();
    pterm->final_callback([&] {
        action = [&] {
            Output o;
            std::vector<int> xs;
            for (long long v : parse_list(x_degrees))
                xs.push_back((int)v);
            o.add(verify_p_term(cfg.p, xs, cfg.max_degree));
            return o;
        };
    });

    // changebasis
    int k_max = 1;
    std::string r_coeffs = "1";
    auto* cb = app.add_subcommand("changebasis", "cycles gamma_{p^k}(z') after the change of basis");
    cb->add_option("--k-max", k_max)->capture_default_str();
    cb->add_option("--r", r_coeffs, "coefficients r_l, comma separated")->capture_default_str();
    cb->final_callback([&] {
        action = [&] {
            Output o;
            o.add(change_basis_cycles(cfg.p, k_max, parse_coeffs(r_coeffs, cfg.p), cfg.max_degree));
            return o;
        };
    });

    // rognes
    bool control = false;
    auto* rog = app.add_subcommand("rognes", "whether sum t_i mu_i^{p^{n-1}} is a d2 boundary in the two-column term");
    rog->add_flag("--control", control, "keep tau_{n-1}, which should hit the class");
    rog->final_callback([&] {
        action = [&] {
            Output o;
            auto res = rognes_check(cfg.p, cfg.n, control);
            o.extra = res.to_json();
            o.extra.erase("schema");
            o.passed = res.hit == control;
            o.table_in_json = false;
            o.columns = {"p", "n", "control", "verdict", "unknowns", "equations", "rank_gap"};
            o.rows.push_back({std::to_string(res.p), std::to_string(res.n), yes_no(control), res.verdict(),
                              std::to_string(res.unknowns), std::to_string(res.equations),
                              std::to_string(res.augmented_rank - res.rank)});
            return o;
        };
    });

    // sigma-table
    auto* sig = app.add_subcommand("sigma-table", "sigma_v images of the generators of L(T^n) with labels below v");
    sig->final_callback([&] {
        action = [&] {
            Output o;
            auto T = TorusAlgebra::build(cfg.n, cfg.p, cfg.max_degree, SteenrodSpec::full());
            const auto& spec = T.spec();
            o.columns = {"generator", "v", "image"};
            for (std::size_t g = 0; g < spec.size(); ++g) {
                const auto& info = T.info(g);
                int lo = info.kind == TorusGenerator::Kind::Word ? info.labels.back() + 1 : 1;
                for (int v = lo; v <= cfg.n; ++v) {
                    std::string image;
                    try {
                        image = to_string(sigma_generator(v, g, 1, T), spec);
                    }
                    catch (const OverflowError&) {
                        if (!cfg.truncate)
                            throw;
                        continue;
                    }
                    o.rows.push_back({spec.generator(g).label, std::to_string(v), image});
                }
            }
            return o;
        };
    });

    // verify-all
    int only = 0;
    auto* all = app.add_subcommand("verify-all", "run the acceptance suite");
    all->add_option("--criterion", only, "run only this criterion (1-13)");
    all->final_callback([&] {
        action = [&] {
            Output o;
            std::vector<CriterionResult> results;
            if (only)
                results.push_back(run_criterion(only, cfg.seed));
            else
                results = run_acceptance(cfg.seed);
            o.columns = {"criterion", "name", "verdict", "cases"};
            json list = json::array();
            for (const auto& c : results) {
                o.passed = o.passed && c.passed;
                o.rows.push_back({std::to_string(c.number), c.name, c.passed ? "pass" : "fail",
                                  std::to_string(c.cases)});
                list.push_back(c.to_json());
            }
            o.extra["criteria"] = list;
            o.table_in_json = false;
            return o;
        };
    });

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    verb = app.get_subcommands().front()->get_name();

    try {
        if (!is_prime(cfg.p) || cfg.p == 2)
            throw ContractError("--p must be an odd prime");
        if (cfg.max_degree < 2)
            throw ContractError("--max-degree must be at least 2");
        if (cfg.n < 1)
            throw ContractError("--n must be positive");
        Output o = action();
        std::string text = render(verb, cfg, o);
        if (cfg.out.empty()) {
            std::cout << text;
        }
        else {
            std::ofstream f(cfg.out);
            if (!f)
                throw ContractError("cannot write " + cfg.out);
            f << text;
        }
        return o.passed ? 0 : 1;
    }
    catch (const std::exception& e) {
        std::cerr << "thhcalc " << verb << ": " << e.what() << "\n";
        return 2;
    }
}
