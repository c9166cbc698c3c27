#ifndef COBORD_CLI_HPP
#define COBORD_CLI_HPP

#include <algorithm>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <cobord/acceptance.hpp>
#include <cobord/errors.hpp>
#include <cobord/fgl.hpp>
#include <cobord/fixedpoint.hpp>
#include <cobord/gdpr.hpp>
#include <cobord/opalg.hpp>
#include <cobord/polynomial_io.hpp>
#include <cobord/series.hpp>

namespace cobord::cli
{

enum exit_code : int { ok = 0, check_failed = 1, usage = 2 };

// What a command produced. Text is used for --format text when set,
// otherwise the JSON is laid out as aligned key/value lines.
struct output {
    json value;
    ::std::string text;
    bool pass = true;
};

namespace detail
{

inline ::std::string scalar_text(const json &j)
{
    if (j.is_string()) {
        return j.get<::std::string>();
    }
    if (j.is_array()) {
        ::std::string s;
        for (const auto &x : j) {
            s += (s.empty() ? "" : ", ") + scalar_text(x);
        }
        return "[" + s + "]";
    }
    return j.dump();
}

inline bool flat(const json &j)
{
    if (j.is_object()) {
        return false;
    }
    if (j.is_array()) {
        return ::std::all_of(j.begin(), j.end(), [](const json &x) { return flat(x); });
    }
    return true;
}

inline void render(const json &j, unsigned indent, ::std::ostream &os)
{
    const ::std::string pad(indent, ' ');
    if (j.is_object()) {
        ::std::size_t w = 0;
        for (const auto &[k, v] : j.items()) {
            w = ::std::max(w, k.size());
        }
        for (const auto &[k, v] : j.items()) {
            if (flat(v)) {
                os << pad << k << ::std::string(w - k.size() + 2, ' ') << scalar_text(v) << '\n';
            } else {
                os << pad << k << ":\n";
                render(v, indent + 2, os);
            }
        }
    } else if (j.is_array() && !flat(j)) {
        for (const auto &x : j) {
            os << pad << "-\n";
            render(x, indent + 2, os);
        }
    } else {
        os << pad << scalar_text(j) << '\n';
    }
}

inline fgl_mode parse_mode(const ::std::string &name, const ::std::string &beta)
{
    if (name == "universal") {
        return fgl_mode::universal();
    }
    if (name == "additive") {
        return fgl_mode::additive();
    }
    if (name == "multiplicative") {
        if (beta.empty()) {
            return fgl_mode::multiplicative();
        }
        if (beta.find_first_not_of("-0123456789/") == ::std::string::npos) {
            const auto slash = beta.find('/');
            return fgl_mode::multiplicative(polynomial(
                slash == ::std::string::npos ? rational::from_strings(beta)
                                             : rational::from_strings(beta.substr(0, slash), beta.substr(slash + 1))));
        }
        return fgl_mode::multiplicative(polynomial::variable(parse_symbol(beta)));
    }
    throw parse_error("unknown mode '" + name + "'");
}

inline output series_output(const truncated_series &s)
{
    return {to_json(s), to_text(s) + "\n", true};
}

inline json error_json(const char *kind, const ::std::string &msg)
{
    json j;
    j["error"] = kind;
    j["message"] = msg;
    return j;
}

} // namespace detail

inline output selftest()
{
    json list = json::array();
    ::std::string text;
    bool all = true;
    for (const auto &c : acceptance::criteria()) {
        acceptance::result r;
        try {
            r = c.run();
        } catch (const ::std::exception &e) {
            r = {c.id, c.name, false, ::std::string("exception: ") + e.what()};
        }
        all = all && r.pass;
        list.push_back(acceptance::to_json(r));
        text += "C" + ::std::to_string(r.id) + " " + (r.pass ? "PASS" : "FAIL") + "  " + r.name + ": " + r.detail + "\n";
    }
    json j;
    j["criteria"] = ::std::move(list);
    j["pass"] = all;
    return {::std::move(j), ::std::move(text), all};
}

// Parses argv and runs one command. Results go to out, errors to err as
// a JSON object.
inline int run(int argc, const char *const *argv, ::std::ostream &out, ::std::ostream &err)
{
    CLI::App app{"Formal group laws and GDPR polynomials"};
    app.require_subcommand(1);
    app.fallthrough();
    ::std::string format = "json";
    app.add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));

    ::std::function<output()> action;
    auto bind = [&](CLI::App *sub, ::std::function<output()> f) { sub->callback([&action, f] { action = f; }); };

    // fgl
    auto *fgl = app.add_subcommand("fgl", "formal group law series")->require_subcommand(1);
    ::std::string mode = "universal", beta;
    unsigned order = 6, k = 2;
    bool profile = false;
    auto add_mode = [&](CLI::App *s) {
        s->add_option("--mode", mode, "universal, additive or multiplicative");
        s->add_option("--beta", beta, "multiplicative parameter: integer, p/q or a symbol");
    };
    auto add_order = [&](CLI::App *s) { s->add_option("--order", order, "truncation order")->required(); };

    auto *show = fgl->add_subcommand("show", "F(u,v)");
    add_mode(show);
    add_order(show);
    bind(show, [&] { return detail::series_output(universal_fgl(detail::parse_mode(mode, beta), order)); });

    auto *inv = fgl->add_subcommand("inverse", "gamma(u) with F(u,gamma(u)) = 0");
    add_mode(inv);
    add_order(inv);
    bind(inv, [&] { return detail::series_output(inverse_series(detail::parse_mode(mode, beta), order)); });

    auto *nfold = fgl->add_subcommand("nfold", "F^n(u)");
    add_mode(nfold);
    add_order(nfold);
    nfold->add_option("-n", k, "number of summands")->required();
    bind(nfold, [&] { return detail::series_output(n_fold_sum(k, detail::parse_mode(mode, beta), order)); });

    auto *divide = fgl->add_subcommand("divide", "[1/n](u)");
    add_mode(divide);
    add_order(divide);
    divide->add_option("-n", k, "divisor")->required();
    divide->add_flag("--denominator-profile", profile, "also report the powers of n in each denominator");
    bind(divide, [&] {
        const auto b = division_series(k, detail::parse_mode(mode, beta), order);
        if (!profile) {
            return detail::series_output(b);
        }
        json prof = json::array();
        ::std::string text = to_text(b) + "\n";
        for (auto [i, kk] : denominator_profile(b, k)) {
            json e;
            e["i"] = i;
            e["k"] = kk;
            prof.push_back(::std::move(e));
            text += "b_" + ::std::to_string(i) + "  n^" + ::std::to_string(kk) + "\n";
        }
        json j;
        j["series"] = to_json(b);
        j["denominator_profile"] = ::std::move(prof);
        return output{::std::move(j), ::std::move(text), true};
    });

    auto *rels = fgl->add_subcommand("relations", "associativity relations of the universal law");
    add_order(rels);
    bind(rels, [&] {
        json arr = json::array();
        ::std::string text;
        for (const auto &[e, c] : associativity_relations(order)) {
            json r;
            r["exp"] = {e[0], e[1], e[2]};
            r["poly"] = to_json(c);
            arr.push_back(::std::move(r));
            text += "u^" + ::std::to_string(e[0]) + " v^" + ::std::to_string(e[1]) + " w^" + ::std::to_string(e[2])
                    + "  " + to_text(c) + "\n";
        }
        return output{::std::move(arr), ::std::move(text), true};
    });

    // gdpr
    auto *gdpr = app.add_subcommand("gdpr", "GDPR polynomials")->require_subcommand(1);
    unsigned n = 1, m = 1, big_n = 1, big_m = 1;
    ::std::string which;
    auto *build = gdpr->add_subcommand("build", "build EX, FX, EY, FY, GX or GY");
    build->add_option("which", which)->required()->check(CLI::IsMember({"EX", "FX", "EY", "FY", "GX", "GY"}));
    build->add_option("-n", n)->required();
    build->add_option("-m", m);
    bind(build, [&] {
        polynomial p;
        if (which == "EX") {
            p = build_EX(n);
        } else if (which == "FX") {
            p = build_FX(n);
        } else if (which == "EY") {
            p = build_EY(n);
        } else if (which == "FY") {
            p = build_FY(n);
        } else if (which == "GX") {
            p = build_GX(n, m);
        } else {
            p = build_GY(n, m);
        }
        return output{to_json(p), to_text(p) + "\n", true};
    });

    auto *check = gdpr->add_subcommand("check", "structural checks")->require_subcommand(1);
    auto gdpr_check = [&](const char *name, const char *desc, ::std::function<bool()> f) {
        auto *s = check->add_subcommand(name, desc);
        s->add_option("-n", n)->required();
        s->add_option("-m", m)->required();
        bind(s, [&n, &m, name, f] {
            const bool pass = f();
            json j;
            j["check"] = name;
            j["n"] = n;
            j["m"] = m;
            j["pass"] = pass;
            return output{::std::move(j), "", pass};
        });
        return s;
    };
    gdpr_check("multilinear", "no variable appears squared", [&] {
        return check_multilinear(build_GX(n, m)) && check_multilinear(build_GY(m, n));
    });
    gdpr_check("bounds", "indices stay in range", [&] {
        return check_index_bounds(build_GX(n, m), n, m) && check_index_bounds(build_GY(m, n), n, m);
    });
    gdpr_check("weight", "homogeneous of weight 1", [&] {
        return weight_check(build_GX(n, m)) && weight_check(build_GY(m, n));
    });
    gdpr_check("mirror", "swapping X and Y exchanges the sides", [&] { return mirror_check(n, m); });
    auto *pad = gdpr_check("padding", "killing extra variables recovers the smaller case", [&] {
        return padding_check(big_n, big_m, n, m);
    });
    pad->add_option("-N", big_n, "larger n")->required();
    pad->add_option("-M", big_m, "larger m")->required();

    // verify
    auto *verify = app.add_subcommand("verify", "sampled operator identities")->require_subcommand(1);
    sampling samp;
    auto add_sampling = [&](CLI::App *s) {
        s->add_option("--seed", samp.seed)->required();
        s->add_option("--trials", samp.trials)->check(CLI::PositiveNumber);
        s->add_option("--range", samp.range)->check(CLI::PositiveNumber);
    };
    auto *step = verify->add_subcommand("step", "one step of the reduction");
    step->add_option("-n", n)->required();
    add_sampling(step);
    bind(step, [&] {
        const auto r = verify_step_identity(n, samp);
        return output{to_json(r), "", r.pass};
    });
    auto *full = verify->add_subcommand("full", "the full identity");
    full->add_option("-n", n)->required();
    full->add_option("-m", m)->required();
    add_sampling(full);
    bind(full, [&] {
        const auto r = verify_full_identity(n, m, samp);
        return output{to_json(r), "", r.pass};
    });

    // fixedpoint
    auto *fp = app.add_subcommand("fixedpoint", "fixed point cases")->require_subcommand(1);
    int case_no = 1;
    ::std::string group;
    auto *claim1 = fp->add_subcommand("claim1", "one case of the claim");
    claim1->add_option("--case", case_no)->required()->check(CLI::Range(1, 5));
    bind(claim1, [&] {
        const auto r = claim1_case(case_no);
        return output{to_json(r), "", r.equal};
    });
    auto *allbad = fp->add_subcommand("allbad", "every divisor bad");
    allbad->add_option("-n", n)->required();
    allbad->add_option("-m", m)->required();
    bind(allbad, [&] {
        const auto r = all_bad_values(n, m);
        json j;
        j["n"] = n;
        j["m"] = m;
        j["lhs"] = operator_to_json(polynomial(r.gx));
        j["rhs"] = operator_to_json(polynomial(r.gy));
        j["equal"] = r.pass();
        return output{::std::move(j), "", r.pass()};
    });
    auto *guard = fp->add_subcommand("guard", "exhaustive guard over a finite abelian group");
    guard->add_option("--group", group, "e.g. 2, 2x2 or Z/2xZ/3")->required();
    bind(guard, [&] {
        const auto r = guard_enumeration(parse_group(group));
        return output{to_json(r), "", r.pass()};
    });

    auto *self = app.add_subcommand("selftest", "run the acceptance suite");
    bind(self, [] { return selftest(); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return exit_code::ok;
    } catch (const CLI::CallForAllHelp &e) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_code::ok;
    } catch (const CLI::ParseError &e) {
        err << detail::error_json("usage", e.what()).dump() << '\n';
        return exit_code::usage;
    }

    try {
        const auto o = action();
        if (format == "text") {
            if (o.text.empty()) {
                detail::render(o.value, 0, out);
            } else {
                out << o.text;
            }
        } else {
            out << o.value.dump(2) << '\n';
        }
        return o.pass ? exit_code::ok : exit_code::check_failed;
    } catch (const cobord_error &e) {
        err << detail::error_json(e.kind(), e.what()).dump() << '\n';
        return exit_code::usage;
    } catch (const ::std::invalid_argument &e) {
        err << detail::error_json("invalid_argument", e.what()).dump() << '\n';
        return exit_code::usage;
    } catch (const ::std::domain_error &e) {
        err << detail::error_json("domain_error", e.what()).dump() << '\n';
        return exit_code::usage;
    } catch (const ::std::exception &e) {
        err << detail::error_json("internal", e.what()).dump() << '\n';
        return exit_code::check_failed;
    }
}

} // namespace cobord::cli

#endif
