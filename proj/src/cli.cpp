#include "residue_forge/cli.hpp"

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "residue_forge/arithmetic.hpp"
#include "residue_forge/modular_sqrt.hpp"
#include "residue_forge/oracle.hpp"
#include "residue_forge/quadform_density.hpp"
#include "residue_forge/root_engine.hpp"

namespace residue_forge::cli {

namespace {

using nlohmann::json;

constexpr std::uint64_t kDefaultRootsCeiling = 2'000'000;

enum class Format { json, csv, plain };

Format pick_format(const std::string& requested, Format def, std::initializer_list<Format> allowed) {
    Format f = def;
    if (!requested.empty()) {
        if (requested == "json")
            f = Format::json;
        else if (requested == "csv")
            f = Format::csv;
        else if (requested == "plain")
            f = Format::plain;
        else
            throw InputError("unknown format '" + requested + "'");
    }
    for (Format a : allowed)
        if (f == a)
            return f;
    throw InputError("format not supported by this subcommand");
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::string join_u64(const std::vector<std::uint64_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += ' ';
        s += std::to_string(v[i]);
    }
    return s;
}

json estimate_to_json(const EulerProductEstimate& est) {
    return json{{"value", est.value},
                {"log_value", est.log_value},
                {"prime_limit", est.prime_limit},
                {"last_factor_deviation", est.last_factor_deviation},
                {"factors_counted", est.factors_counted}};
}

QuadraticForm parse_form_triple(const std::string& s) {
    std::vector<std::int64_t> v;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t comma = s.find(',', pos);
        std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        try {
            std::size_t used = 0;
            v.push_back(std::stoll(tok, &used));
            if (used != tok.size())
                throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw InputError("bad form coefficient '" + tok + "'");
        }
        if (comma == std::string::npos)
            break;
        pos = comma + 1;
    }
    if (v.size() != 3)
        throw InputError("--form expects exactly three comma-separated integers a,b,c");
    return make_form(v[0], v[1], v[2]);
}

std::vector<std::pair<std::uint64_t, unsigned>> parse_alpha(const std::string& s) {
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t comma = s.find(',', pos);
        std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        std::size_t colon = tok.find(':');
        if (colon == std::string::npos)
            throw InputError("--alpha entries must look like prime:exponent");
        try {
            out.emplace_back(std::stoull(tok.substr(0, colon)),
                             static_cast<unsigned>(std::stoul(tok.substr(colon + 1))));
        } catch (const std::exception&) {
            throw InputError("bad --alpha entry '" + tok + "'");
        }
        if (comma == std::string::npos)
            break;
        pos = comma + 1;
    }
    if (out.empty())
        throw InputError("--alpha must not be empty");
    return out;
}

struct Sink {
    std::ostream& fallback;
    std::string path;

    void write(const std::string& text) const {
        if (path.empty()) {
            fallback << text;
            return;
        }
        std::ofstream f(path, std::ios::binary);
        if (!f)
            throw InputError("cannot open output file '" + path + "'");
        f << text;
    }
};

int cmd_ctx(std::uint64_t p, Format fmt, const Sink& sink) {
    PrimeContext ctx = build_context(p);
    if (fmt == Format::plain) {
        std::string factors;
        for (auto [q, e] : ctx.z_factors)
            factors += (factors.empty() ? "" : "*") + std::to_string(q) + "^" + std::to_string(e);
        if (factors.empty())
            factors = "1";
        sink.write("p=" + std::to_string(p) + " n=" + std::to_string(ctx.n) +
                   " z=" + std::to_string(ctx.z) + " z_factors=" + factors +
                   " class4=" + std::to_string(ctx.class4) +
                   " class8=" + std::to_string(ctx.class8) + "\n");
        return 0;
    }
    json j{{"p", ctx.p}, {"n", ctx.n}, {"z", ctx.z}, {"class4", ctx.class4}, {"class8", ctx.class8}};
    j["z_factors"] = json::array();
    for (auto [q, e] : ctx.z_factors)
        j["z_factors"].push_back(json::array({q, e}));
    sink.write(j.dump(2) + "\n");
    return 0;
}

int cmd_roots(std::uint64_t p, bool count_only, bool seed_only, std::uint64_t ceiling, Format fmt,
              const Sink& sink) {
    PrimeContext ctx = build_context(p);
    if (seed_only) {
        SeedPair seed = find_seed(ctx);
        if (fmt == Format::plain) {
            sink.write("p=" + std::to_string(p) + " g=" + std::to_string(seed.g) +
                       " m_prime=" + std::to_string(seed.m_prime) + "\n");
            return 0;
        }
        json j{{"p", p}, {"g", seed.g}, {"m_prime", seed.m_prime}};
        sink.write(j.dump(2) + "\n");
        return 0;
    }
    if (count_only) {
        // order of 2 mod z, by the divisor route: cheap even for huge p
        std::uint64_t logd2 = multiplicative_order(2, ctx.z);
        std::uint64_t gz_count = euler_phi(factorize(p - 1));
        std::uint64_t gs_count = euler_phi(factorize((p - 1) / 2));
        if (fmt == Format::plain) {
            sink.write("p=" + std::to_string(p) + " gz_count=" + std::to_string(gz_count) +
                       " gs_count=" + std::to_string(gs_count) + " logd2=" + std::to_string(logd2) +
                       " a_count=" + std::to_string(gs_count / logd2 - 1) + "\n");
            return 0;
        }
        json j{{"p", p},
               {"gz_count", gz_count},
               {"gs_count", gs_count},
               {"logd2", logd2},
               {"a_count", gs_count / logd2 - 1}};
        sink.write(j.dump(2) + "\n");
        return 0;
    }
    if (p > ceiling)
        throw CeilingError("roots --list: p exceeds ceiling " + std::to_string(ceiling));
    EnumerationResult res = enumerate_all(ctx);
    if (fmt == Format::plain) {
        sink.write("p: " + std::to_string(p) + "\ngz: " + join_u64(res.gz) +
                   "\ngs: " + join_u64(res.gs) + "\nlogd2: " + std::to_string(res.logd2) +
                   "\na_set: " + join_u64(res.a_set) + "\n");
        return 0;
    }
    json j{{"p", p}, {"gz", res.gz}, {"gs", res.gs}, {"logd2", res.logd2}, {"a_set", res.a_set}};
    sink.write(j.dump(2) + "\n");
    return 0;
}

int cmd_sqrt(std::uint64_t p, const std::vector<std::uint64_t>& cs, Format fmt, const Sink& sink) {
    auto sols = batch_solve(cs, p);
    if (fmt == Format::plain) {
        std::string text;
        for (const SqrtSolution& sol : sols) {
            text += "c=" + std::to_string(sol.c) + " x=";
            text += sol.x ? std::to_string(*sol.x) : "inf";
            text += '\n';
        }
        sink.write(text);
        return 0;
    }
    json arr = json::array();
    for (const SqrtSolution& sol : sols) {
        json item{{"c", sol.c}};
        if (sol.x)
            item["x"] = *sol.x;
        else
            item["x"] = nullptr;
        arr.push_back(item);
    }
    sink.write(arr.dump(2) + "\n");
    return 0;
}

int cmd_hq(const QuadraticForm& q, std::uint64_t limit, Format fmt, const Sink& sink) {
    EulerProductEstimate est = hq_truncated(q, limit);
    if (fmt == Format::plain) {
        sink.write("form: " + std::to_string(q.a) + "," + std::to_string(q.b) + "," +
                   std::to_string(q.c) + "\nvalue: " + fmt_double(est.value) +
                   "\nlog_value: " + fmt_double(est.log_value) +
                   "\nprime_limit: " + std::to_string(est.prime_limit) +
                   "\nlast_factor_deviation: " + fmt_double(est.last_factor_deviation) +
                   "\nfactors_counted: " + std::to_string(est.factors_counted) + "\n");
        return 0;
    }
    json j = estimate_to_json(est);
    j["form"] = json::array({q.a, q.b, q.c});
    sink.write(j.dump(2) + "\n");
    return 0;
}

int cmd_density(const QuadraticForm& q, std::uint64_t x_max, unsigned buckets,
                std::uint64_t limit, const Sink& sink) {
    DensityReport rep = density_experiment(q, x_max, buckets, limit);
    std::string csv = "x_mid,terms,primes,empirical,predicted_hq_over_lnQ,predicted_hq_over_2lnx\n";
    for (const DensityBucket& b : rep.buckets) {
        csv += fmt_double(b.x_mid);
        csv += ',' + std::to_string(b.terms);
        csv += ',' + std::to_string(b.primes);
        csv += ',' + fmt_double(b.empirical);
        csv += ',' + fmt_double(b.predicted_hq_over_lnQ);
        csv += ',' + fmt_double(b.predicted_hq_over_2lnx);
        csv += '\n';
    }
    sink.write(csv);
    return 0;
}

int cmd_family(std::uint64_t c, const std::vector<std::pair<std::uint64_t, unsigned>>& alpha,
               const std::vector<std::uint64_t>& bs, std::uint64_t limit,
               std::uint64_t disjoint_bound, const Sink& sink) {
    json j{{"c", c}, {"p_f_alpha", family_modulus(alpha)}};
    j["alpha"] = json::array();
    for (auto [q, e] : alpha)
        j["alpha"].push_back(json::array({q, e}));
    j["forms"] = json::array();
    for (std::uint64_t b : bs) {
        QuadraticForm q = build_family(c, alpha, b);
        json item{{"b", b}, {"form", json::array({q.a, q.b, q.c})}};
        if (limit > 0)
            item["hq"] = estimate_to_json(hq_truncated(q, limit));
        j["forms"].push_back(item);
    }
    if (disjoint_bound > 0)
        j["disjoint"] = family_disjointness_check(c, alpha, bs, disjoint_bound);
    sink.write(j.dump(2) + "\n");
    return 0;
}

int cmd_selftest(std::uint64_t pmax, std::ostream& out) {
    if (pmax > oracle::kOracleCeiling)
        throw TooLargeError("selftest: --pmax exceeds the oracle ceiling");
    bool all_ok = true;
    auto report = [&](const std::string& name, bool ok, const std::string& detail = "") {
        out << (ok ? "PASS " : "FAIL ") << name;
        if (!ok && !detail.empty())
            out << " (" << detail << ")";
        out << "\n";
        all_ok = all_ok && ok;
    };

    {
        bool ok = true;
        std::string detail;
        for (std::uint64_t p = 3; p <= pmax; p += 2) {
            if (!is_prime_u64(p))
                continue;
            PrimeContext ctx = build_context(p);
            EnumerationResult res = enumerate_all(ctx);
            oracle::OracleReport ref = oracle::order_table(p);
            if (res.gz != ref.gz_ref || res.gs != ref.gs_ref) {
                ok = false;
                detail = "p = " + std::to_string(p);
                break;
            }
        }
        report("enumeration matches order oracle (p <= " + std::to_string(pmax) + ")", ok, detail);
    }
    {
        bool ok = true;
        std::string detail;
        for (std::uint64_t p = 3; p <= std::min<std::uint64_t>(pmax, 2000); p += 2) {
            if (!is_prime_u64(p))
                continue;
            if (oracle::order_table(p).gz_ref != oracle::primitive_roots_via_gcd(p)) {
                ok = false;
                detail = "p = " + std::to_string(p);
                break;
            }
        }
        report("order oracle matches classical gcd route (p <= 2000)", ok, detail);
    }
    {
        bool ok = true;
        std::string detail;
        std::vector<std::uint64_t> cs;
        for (std::uint64_t c = 1; c <= 20; ++c)
            cs.push_back(c);
        for (std::uint64_t p = 3; p <= std::min<std::uint64_t>(pmax, 500); p += 2) {
            if (!is_prime_u64(p))
                continue;
            auto sols = batch_solve(cs, p);
            for (const SqrtSolution& sol : sols) {
                std::uint64_t m = (p - sol.c % p) % p;
                bool solvable = !oracle::sqrt_all_bruteforce(m, p).empty();
                if (solvable != sol.solved()) {
                    ok = false;
                    detail = "p=" + std::to_string(p) + " c=" + std::to_string(sol.c);
                    break;
                }
                if (sol.solved()) {
                    std::uint64_t x = *sol.x;
                    if ((x * x + sol.c) % p != 0 || (x & 1) != sol.x_parity) {
                        ok = false;
                        detail = "p=" + std::to_string(p) + " c=" + std::to_string(sol.c);
                        break;
                    }
                }
            }
            if (!ok)
                break;
        }
        report("batch square roots match exhaustive scan (p <= 500, c <= 20)", ok, detail);
    }
    out << (all_ok ? "ALL PASS\n" : "FAILURES PRESENT\n");
    return all_ok ? 0 : 4;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"primitive/semi-primitive root enumeration, batched modular square roots, "
                 "and quadratic-form density constants"};
    app.require_subcommand(1);

    std::string output_path;
    app.add_option("-o,--output", output_path, "write results to a file instead of stdout");
    std::string format;
    app.add_option("-f,--format", format, "output format: json, csv, or plain");

    // ctx
    std::uint64_t ctx_p = 0;
    CLI::App* sc_ctx = app.add_subcommand("ctx", "decompose p - 1 = 2^n z for an odd prime");
    sc_ctx->add_option("p", ctx_p, "odd prime")->required();

    // roots
    std::uint64_t roots_p = 0, roots_ceiling = kDefaultRootsCeiling;
    bool roots_list = false, roots_count = false, roots_seed = false;
    CLI::App* sc_roots = app.add_subcommand("roots", "enumerate primitive and semi-primitive roots");
    sc_roots->add_option("p", roots_p, "odd prime")->required();
    sc_roots->add_flag("--list", roots_list, "full sorted sets (default)");
    sc_roots->add_flag("--count", roots_count, "set sizes only");
    sc_roots->add_flag("--seed-only", roots_seed, "just the seed pair");
    sc_roots->add_option("--ceiling", roots_ceiling, "largest p accepted by --list");

    // sqrt
    std::uint64_t sqrt_p = 0;
    std::vector<std::uint64_t> sqrt_cs;
    CLI::App* sc_sqrt = app.add_subcommand("sqrt", "solve x^2 + c = 0 mod p for each c");
    sc_sqrt->add_option("p", sqrt_p, "odd prime")->required();
    sc_sqrt->add_option("c", sqrt_cs, "one or more positive c values")->required();

    // hq
    std::string hq_form;
    std::uint64_t hq_ec = 0, hq_limit = 1'000'000;
    CLI::App* sc_hq = app.add_subcommand("hq", "truncated Euler product for a quadratic form");
    sc_hq->add_option("--form", hq_form, "coefficients a,b,c");
    sc_hq->add_option("--ec", hq_ec, "use the (2X+r)^2 + c form for this c");
    sc_hq->add_option("--limit", hq_limit, "largest prime in the product");

    // density
    std::string den_form;
    std::uint64_t den_ec = 0, den_xmax = 0, den_limit = 1'000'000;
    unsigned den_buckets = 20;
    CLI::App* sc_den = app.add_subcommand("density", "empirical prime density among form values");
    sc_den->add_option("--form", den_form, "coefficients a,b,c");
    sc_den->add_option("--ec", den_ec, "use the (2X+r)^2 + c form for this c");
    sc_den->add_option("--xmax", den_xmax, "largest argument x")->required();
    sc_den->add_option("--buckets", den_buckets, "number of logarithmic buckets");
    sc_den->add_option("--limit", den_limit, "prime limit for the prediction constant");

    // family
    std::uint64_t fam_c = 0, fam_limit = 0, fam_disjoint = 0;
    std::string fam_alpha;
    std::vector<std::uint64_t> fam_bs;
    CLI::App* sc_fam = app.add_subcommand("family", "constant-preserving forms (2 p_F^a X + b)^2 + c");
    sc_fam->add_option("--c", fam_c, "odd perfect square")->required();
    sc_fam->add_option("--alpha", fam_alpha, "exponents, e.g. 3:2 or 3:1,7:2")->required();
    sc_fam->add_option("--b", fam_bs, "one or more offsets b")->required();
    sc_fam->add_option("--limit", fam_limit, "also compute each form's truncated product");
    sc_fam->add_option("--check-disjoint", fam_disjoint, "verify disjoint value sets up to this x");

    // selftest
    std::uint64_t self_pmax = 2000;
    CLI::App* sc_self = app.add_subcommand("selftest", "run the oracle cross-check suites");
    sc_self->add_option("--pmax", self_pmax, "largest prime to cross-check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    Sink sink{out, output_path};
    try {
        if (*sc_ctx)
            return cmd_ctx(ctx_p, pick_format(format, Format::json, {Format::json, Format::plain}),
                           sink);
        if (*sc_roots) {
            if (roots_list + roots_count + roots_seed > 1)
                throw InputError("roots: --list, --count, --seed-only are mutually exclusive");
            return cmd_roots(roots_p, roots_count, roots_seed, roots_ceiling,
                             pick_format(format, Format::json, {Format::json, Format::plain}),
                             sink);
        }
        if (*sc_sqrt)
            return cmd_sqrt(sqrt_p, sqrt_cs,
                            pick_format(format, Format::json, {Format::json, Format::plain}), sink);
        if (*sc_hq || *sc_den) {
            bool is_hq = static_cast<bool>(*sc_hq);
            const std::string& fs = is_hq ? hq_form : den_form;
            std::uint64_t ec = is_hq ? hq_ec : den_ec;
            if (fs.empty() == (ec == 0))
                throw InputError("give exactly one of --form or --ec");
            QuadraticForm q = fs.empty() ? ec_form(ec) : parse_form_triple(fs);
            if (is_hq)
                return cmd_hq(q, hq_limit,
                              pick_format(format, Format::json, {Format::json, Format::plain}),
                              sink);
            pick_format(format, Format::csv, {Format::csv});
            return cmd_density(q, den_xmax, den_buckets, den_limit, sink);
        }
        if (*sc_fam) {
            pick_format(format, Format::json, {Format::json});
            return cmd_family(fam_c, parse_alpha(fam_alpha), fam_bs, fam_limit, fam_disjoint, sink);
        }
        if (*sc_self)
            return cmd_selftest(self_pmax, out);
        throw InputError("no subcommand given");
    } catch (const CeilingError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 4;
    }
}

} // namespace residue_forge::cli
