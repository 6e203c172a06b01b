#pragma once

#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "adequal/adequal.hpp"

namespace adequal::cli {

using json = nlohmann::json;

enum ExitCode { ok = 0, domain_error = 1, usage_error = 2 };

/// Subcommand -> library operations it reaches.
inline const std::map<std::string, std::vector<std::string>>& dispatch_table()
{
    static const std::map<std::string, std::vector<std::string>> table = {
        {"eval", {"add", "mul", "inv", "cmp", "adequal", "render_semicolon", "parse_expr", "germ_apply",
                  "germ_adequal"}},
        {"st", {"st", "germ_standard_part"}},
        {"diff", {"derivative_at"}},
        {"classify", {"classify", "leading_order", "classify_continuity", "germ_is_null", "germ_sign"}},
        {"microcont", {"microcontinuous_at"}},
        {"stevin", {"stevin_root"}},
        {"bisect", {"cauchy_bisect"}},
        {"irr-gap", {"irr_gap"}},
        {"sweep", {"sweep"}},
        {"wallis", {"wallis_area"}},
        {"transfer-check", {"check_transfer_identity"}},
    };
    return table;
}

struct Settings {
    std::string format = "text";
    std::string order = "8";
    std::string stance;
    std::string config;
};

/// key=value lines; '#' starts a comment. Keys: order, stance, format.
inline std::map<std::string, std::string> read_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::invalid_argument, "cannot read config file " + path);
    std::map<std::string, std::string> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorKind::invalid_argument, path + ":" + std::to_string(lineno) + ": expected key=value");
        std::string key = trim(line.substr(0, eq));
        if (key != "order" && key != "stance" && key != "format")
            throw Error(ErrorKind::invalid_argument, path + ":" + std::to_string(lineno) + ": unknown key " + key);
        out[key] = trim(line.substr(eq + 1));
    }
    return out;
}

namespace detail {

// Options whose value may begin with '-' ("--dx -eps").
inline const std::set<std::string> value_options = {"--at", "--dx", "--witness", "--adequal", "--cmp", "--lo",
                                                     "--hi", "--on", "--order", "--stance", "--format", "--config",
                                                     "--digits", "--steps", "--samples", "--seed", "--identity",
                                                     "--semicolon"};

inline bool is_known_flag(const std::string& a)
{
    static const std::set<std::string> flags = {"-h", "--help", "--certificates", "--trace"};
    return flags.count(a) != 0;
}

// Binds option values to their option and moves dash-leading positional
// values behind "--" so CLI11 does not read them as flags.
inline std::vector<std::string> normalize_args(const std::vector<std::string>& args)
{
    std::vector<std::string> out, trailing;
    bool passthrough = false;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (passthrough) {
            trailing.push_back(a);
        } else if (a == "--") {
            passthrough = true;
        } else if (value_options.count(a) && i + 1 < args.size()) {
            out.push_back(a + "=" + args[++i]);
        } else if (a.size() > 1 && a[0] == '-' && !is_known_flag(a) && a.rfind("--", 0) != 0) {
            trailing.push_back(a);
        } else {
            out.push_back(a);
        }
    }
    if (!trailing.empty()) {
        out.push_back("--");
        out.insert(out.end(), trailing.begin(), trailing.end());
    }
    return out;
}

inline bool is_germ(const std::string& s) { return s.rfind("germ:", 0) == 0; }

class Runner {
public:
    Runner(std::ostream& out, const Settings& settings)
        : out_(out), json_mode_(settings.format == "json"),
          order_(parse_order(settings.order)), stance_(std::make_shared<const UltrafilterStance>(parse_stance(settings.stance)))
    {}

    void emit(json record, const std::vector<std::string>& text_lines)
    {
        if (json_mode_) out_ << record.dump() << "\n";
        else
            for (const auto& l : text_lines) out_ << l << "\n";
    }

    const TruncationOrder& order() const { return order_; }

    Germ germ(const std::string& text) const { return parse_germ(text.substr(5), stance_); }

    LCNumber number(const std::string& text) const
    {
        ExprSource s = parse_expr(text);
        if (s.is_number()) return s.number();
        if (s.function().has_variable())
            throw ParseError(0, {"constant expression"}, "expression in x: '" + text + "'");
        Approx v = evaluate(s.function(), 0, order_);
        if (!v.is_exact())
            throw Error(ErrorKind::insufficient_precision,
                        "'" + text + "' is only known through eps^" + to_string(*v.exact_through));
        return v.value;
    }

    Approx value(const std::string& text) const
    {
        ExprSource s = parse_expr(text);
        if (s.is_number()) return Approx::exact(s.number());
        if (s.function().has_variable()) throw ParseError(0, {"constant expression"}, "expression in x: '" + text + "'");
        return evaluate(s.function(), 0, order_);
    }

    static json approx_json(const Approx& v)
    {
        json j{{"value", to_string(v.value)}};
        if (!v.is_exact()) j["exact_through"] = to_string(*v.exact_through);
        return j;
    }

    static std::vector<std::string> approx_lines(const Approx& v)
    {
        std::vector<std::string> lines{to_string(v.value)};
        if (!v.is_exact()) lines.push_back("exact through eps^" + adequal::detail::exponent_text(*v.exact_through));
        return lines;
    }

    static json report_json(const ProbeReport& r)
    {
        json j{{"verdict", to_string(r.verdict)}, {"point", r.point}, {"witness", r.witness}, {"gap", r.gap}};
        if (!r.note.empty()) j["note"] = r.note;
        return j;
    }

    std::ostream& out_;

private:
    static TruncationOrder parse_order(const std::string& text)
    {
        auto r = parse_rational(text);
        if (!r) throw ParseError(0, {"positive rational"}, "'" + text + "'");
        return TruncationOrder(*r);
    }

    bool json_mode_;
    TruncationOrder order_;
    StancePtr stance_;
};

inline Rational rational_arg(const std::string& text)
{
    ExprSource s = parse_expr(text);
    if (!s.is_number() || !s.number().is_standard()) throw ParseError(0, {"rational"}, "'" + text + "'");
    return s.number().coefficient(0);
}

inline RationalPolynomial polynomial_arg(const std::string& text)
{
    auto p = as_polynomial(parse_function(text));
    if (!p) throw ParseError(0, {"polynomial in x with rational coefficients"}, "'" + text + "'");
    return *p;
}

// Truncated values decide only when the difference's leading term is known.
inline const char* decide_cmp(const Approx& a, const LCNumber& b)
{
    Approx d = a - Approx::exact(b);
    if (d.is_exact_zero()) return "=";
    if (!d.known_leading()) throw Error(ErrorKind::insufficient_precision, "comparison not resolved at this order");
    return d.value.sign() < 0 ? "<" : ">";
}

inline bool decide_adequal(const Approx& a, const LCNumber& b)
{
    Approx d = a - Approx::exact(b);
    if (auto lead = d.known_leading()) return *lead > 0;
    if (auto floor = d.exponent_floor(); !floor || *floor >= 0) return true;
    throw Error(ErrorKind::insufficient_precision, "adequality not resolved at this order");
}


} // namespace detail

/// Runs the command line; returns the process exit code.
inline int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact infinitesimal arithmetic: standard part, adequality, nonstandard derivatives, "
                 "microcontinuity, decimal root extraction.",
                 "adequal"};
    app.require_subcommand(1);
    app.fallthrough();
    Settings settings;
    app.add_option("--format", settings.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--config", settings.config, "key=value file (order, stance, format)");
    auto* order_opt = app.add_option("--order", settings.order, "Truncation order for series results (default 8)");
    auto* stance_opt = app.add_option("--stance", settings.stance, "Ultrafilter decisions, e.g. \"0 mod 2; not 1 mod 3\"");
    auto* format_opt = app.get_option("--format");

    std::string expr, other, at, on, cmp_with, adequal_with, identity;
    std::vector<std::string> dxs, witnesses;
    std::string lo, hi;
    std::size_t digits = 6, steps = 20, samples = 1000;
    std::uint64_t seed = 1;
    unsigned semicolon = 0;
    bool certificates = false, trace = false;
    std::string m_text, n_text, a_text, b_text;

    auto* eval = app.add_subcommand("eval", "Evaluate a constant, or a function at a point (--at)");
    eval->add_option("expr", expr, "Expression (prefix germ: for sequence rules)")->required();
    eval->add_option("--at", at, "Point: LC constant or germ:RULE");
    eval->add_option("--adequal", adequal_with, "Test adequality with another value");
    eval->add_option("--cmp", cmp_with, "Compare with another value");
    eval->add_option("--semicolon", semicolon, "Semicolon rendering with this many decimals");

    auto* st_cmd = app.add_subcommand("st", "Standard part");
    st_cmd->add_option("expr", expr)->required();

    auto* diff = app.add_subcommand("diff", "Derivative st((f(x0+dx)-f(x0))/dx)");
    diff->add_option("fn", expr)->required();
    diff->add_option("--at", at)->required();
    diff->add_option("--dx", dxs, "Infinitesimal increment (repeatable)");

    auto* classify_cmd = app.add_subcommand("classify", "Magnitude of a value, or continuity of f on --on");
    classify_cmd->add_option("expr", expr)->required();
    classify_cmd->add_option("--on", on, "Domain such as (0,1) or [0,inf)");

    auto* micro = app.add_subcommand("microcont", "Microcontinuity probe of f at a point");
    micro->add_option("fn", expr)->required();
    micro->add_option("--at", at)->required();
    micro->add_option("--witness", witnesses)->required();

    auto* stevin = app.add_subcommand("stevin", "Decimal digits of a root by tenfold subdivision");
    stevin->add_option("poly", expr)->required();
    stevin->add_option("--lo", lo)->required();
    stevin->add_option("--hi", hi)->required();
    stevin->add_option("--digits", digits);
    stevin->add_flag("--certificates", certificates, "Print one bracketing certificate per step");

    auto* bisect = app.add_subcommand("bisect", "Bisection bracketing trace");
    bisect->add_option("poly", expr)->required();
    bisect->add_option("--lo", lo)->required();
    bisect->add_option("--hi", hi)->required();
    bisect->add_option("--steps", steps);
    bisect->add_flag("--trace", trace, "Print every interval");

    auto* irr = app.add_subcommand("irr-gap", "Certificate |sqrt2 - m/n| >= 1/(3n^2)");
    irr->add_option("m", m_text)->required();
    irr->add_option("n", n_text)->required();

    auto* sweep_cmd = app.add_subcommand("sweep", "Certify all m/n in [1, 3/2] with n <= N");
    sweep_cmd->add_option("N", n_text)->required();

    auto* wallis = app.add_subcommand("wallis", "Triangle area (A/inf) x (B/2)inf");
    wallis->add_option("A", a_text)->required();
    wallis->add_option("B", b_text)->required();
    wallis->add_flag("--trace", trace, "Print the cancellation certificate");

    auto* transfer = app.add_subcommand("transfer-check", "Check field/order identities at random LC samples");
    transfer->add_option("--samples", samples);
    transfer->add_option("--seed", seed);
    transfer->add_option("--identity", identity, "Single identity (default: whole schema)");

    std::vector<std::string> args = detail::normalize_args(raw_args);
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return usage_error;
    }

    try {
        if (!settings.config.empty()) {
            auto cfg = read_config(settings.config);
            if (cfg.count("order") && order_opt->count() == 0) settings.order = cfg["order"];
            if (cfg.count("stance") && stance_opt->count() == 0) settings.stance = cfg["stance"];
            if (cfg.count("format") && format_opt->count() == 0) {
                if (cfg["format"] != "text" && cfg["format"] != "json")
                    throw Error(ErrorKind::invalid_argument, "format must be text or json");
                settings.format = cfg["format"];
            }
        }
        detail::Runner r(out, settings);
        using detail::is_germ;

        if (*eval) {
            if (is_germ(expr)) {
                Germ g = r.germ(expr);
                if (!adequal_with.empty()) {
                    Verdict v = germ_adequal(g, r.germ(adequal_with));
                    r.emit({{"command", "eval"}, {"adequal", to_string(v)}}, {to_string(v)});
                } else {
                    r.emit({{"command", "eval"}, {"germ", to_string(g)}}, {to_string(g)});
                }
                return ok;
            }
            ExprSource src = parse_expr(expr);
            if (!at.empty()) {
                if (src.is_number()) throw ParseError(0, {"expression in x"}, "constant '" + expr + "' with --at");
                if (is_germ(at)) {
                    Germ g = germ_apply(src.function(), r.germ(at));
                    r.emit({{"command", "eval"}, {"germ", to_string(g)}}, {to_string(g)});
                    return ok;
                }
                Approx v = evaluate(src.function(), r.number(at), r.order());
                json j = detail::Runner::approx_json(v);
                j["command"] = "eval";
                r.emit(j, detail::Runner::approx_lines(v));
                return ok;
            }
            Approx v = r.value(expr);
            if (!adequal_with.empty() || !cmp_with.empty() || semicolon != 0) {
                if (!adequal_with.empty()) {
                    bool a = detail::decide_adequal(v, r.number(adequal_with));
                    r.emit({{"command", "eval"}, {"adequal", a}}, {a ? "true" : "false"});
                }
                if (!cmp_with.empty()) {
                    const char* c = detail::decide_cmp(v, r.number(cmp_with));
                    r.emit({{"command", "eval"}, {"cmp", c}}, {c});
                }
                if (semicolon != 0) {
                    if (!v.is_exact()) throw Error(ErrorKind::insufficient_precision, "value is truncated");
                    SemicolonForm f = render_semicolon(v.value, semicolon);
                    r.emit({{"command", "eval"}, {"semicolon", f.text()}, {"note", f.note()}}, {f.text(), f.note()});
                }
                return ok;
            }
            json j = detail::Runner::approx_json(v);
            j["command"] = "eval";
            r.emit(j, detail::Runner::approx_lines(v));
            return ok;
        }

        if (*st_cmd) {
            Rational s = is_germ(expr) ? germ_standard_part(r.germ(expr)) : [&] {
                Approx v = r.value(expr);
                if (auto lead = v.known_leading(); lead && lead->sign() < 0)
                    throw Error(ErrorKind::unlimited, "standard part of an unlimited number");
                auto sp = v.standard_part();
                if (!sp) throw Error(ErrorKind::insufficient_precision, "eps^0 coefficient not resolved");
                return *sp;
            }();
            r.emit({{"command", "st"}, {"result", to_string(s)}}, {to_string(s)});
            return ok;
        }

        if (*diff) {
            ExprFn f = parse_function(expr);
            Rational x0 = detail::rational_arg(at);
            std::vector<LCNumber> increments;
            for (const auto& d : dxs) increments.push_back(r.number(d));
            if (increments.empty()) increments.push_back(LCNumber::eps());
            Rational d = derivative_at(f, x0, increments, r.order());
            r.emit({{"command", "diff"}, {"result", to_string(d)}}, {to_string(d)});
            return ok;
        }

        if (*classify_cmd) {
            if (!on.empty()) {
                ExprFn f = parse_function(expr);
                Domain d = parse_domain(on);
                ContinuityResult c = classify_continuity(f, d, r.order());
                std::vector<std::string> lines{to_string(c.verdict)};
                json reports = json::array();
                if (c.deciding) lines.push_back(to_record(*c.deciding));
                for (const auto* group : {&c.standard_reports, &c.nonstandard_reports})
                    for (const auto& rep : *group) reports.push_back(detail::Runner::report_json(rep));
                json j{{"command", "classify"}, {"verdict", to_string(c.verdict)}, {"reports", reports}};
                if (c.deciding) j["deciding"] = detail::Runner::report_json(*c.deciding);
                r.emit(j, lines);
                return ok;
            }
            if (is_germ(expr)) {
                Germ g = r.germ(expr);
                Verdict null = germ_is_null(g);
                std::string sign_text;
                try {
                    sign_text = to_string(germ_sign(g));
                } catch (const Error& e) {
                    if (e.kind() != ErrorKind::stance_undecided) throw;
                    sign_text = "stance-undecided";
                }
                r.emit({{"command", "classify"}, {"null", to_string(null)}, {"sign", sign_text}},
                       {"null=" + std::string(to_string(null)) + " sign=" + sign_text});
                return ok;
            }
            LCNumber v = r.number(expr);
            Magnitude m = classify(v);
            if (m == Magnitude::zero) {
                r.emit({{"command", "classify"}, {"class", "zero"}}, {"zero"});
                return ok;
            }
            LeadingOrder lo_ = leading_order(v);
            std::string line = std::string(to_string(m)) + " k=" + to_string(lo_.coefficient) +
                               " n=" + to_string(lo_.exponent);
            r.emit({{"command", "classify"},
                    {"class", to_string(m)},
                    {"k", to_string(lo_.coefficient)},
                    {"n", to_string(lo_.exponent)},
                    {"tail", to_string(lo_.tail)}},
                   {line});
            return ok;
        }

        if (*micro) {
            ExprFn f = parse_function(expr);
            ProbeReport rep;
            if (is_germ(at)) {
                std::vector<Germ> ws;
                for (const auto& w : witnesses) {
                    if (!is_germ(w)) throw ParseError(0, {"germ:RULE witness"}, "'" + w + "'");
                    ws.push_back(r.germ(w));
                }
                rep = microcontinuous_at(f, r.germ(at), ws);
            } else {
                std::vector<LCNumber> ws;
                for (const auto& w : witnesses) ws.push_back(r.number(w));
                rep = microcontinuous_at(f, r.number(at), ws, r.order());
            }
            json j = detail::Runner::report_json(rep);
            j["command"] = "microcont";
            r.emit(j, {to_record(rep)});
            return ok;
        }

        if (*stevin) {
            StevinDigits s = stevin_root(detail::polynomial_arg(expr), detail::rational_arg(lo),
                                         detail::rational_arg(hi), digits);
            std::vector<std::string> lines{to_string(s)};
            auto certs = certificate_lines(s);
            if (certificates) lines.insert(lines.end(), certs.begin(), certs.end());
            json j{{"command", "stevin"}, {"result", to_string(s)}};
            if (certificates) j["certificates"] = certs;
            if (s.exact_zero_step) j["exact_zero_step"] = *s.exact_zero_step;
            r.emit(j, lines);
            return ok;
        }

        if (*bisect) {
            BisectTrace t = cauchy_bisect(detail::polynomial_arg(expr), detail::rational_arg(lo),
                                          detail::rational_arg(hi), steps);
            std::vector<std::string> lines;
            json js = json::array();
            for (std::size_t i = 0; i < t.steps.size(); ++i) {
                const auto& s = t.steps[i];
                std::string line = "step " + std::to_string(i) + ": [" + to_string(s.lo) + ", " + to_string(s.hi) +
                                   "] signs(" + sign_char(s.sign_lo) + "," + sign_char(s.sign_hi) + ")";
                js.push_back(line);
                if (trace) lines.push_back(line);
            }
            std::string final_line = "[" + to_string(t.lo()) + ", " + to_string(t.hi()) +
                                     "] width=" + to_string(t.hi() - t.lo());
            if (t.exact_root) final_line += " exact=" + to_string(*t.exact_root);
            lines.push_back(final_line);
            json j{{"command", "bisect"}, {"lo", to_string(t.lo())}, {"hi", to_string(t.hi())},
                   {"width", to_string(t.hi() - t.lo())}, {"steps", js}};
            if (t.exact_root) j["exact_root"] = to_string(*t.exact_root);
            r.emit(j, lines);
            return ok;
        }

        auto integer_arg = [](const std::string& text) {
            auto v = parse_rational(text);
            if (!v || !is_integer(*v)) throw ParseError(0, {"integer"}, "'" + text + "'");
            return num(*v);
        };

        if (*irr) {
            GapCertificate c = irr_gap(integer_arg(m_text), integer_arg(n_text));
            r.emit({{"command", "irr-gap"},
                    {"gap", c.integer_gap.str()},
                    {"bound", to_string(c.lower_bound)},
                    {"verified", c.verified}},
                   {to_string(c)});
            return ok;
        }

        if (*sweep_cmd) {
            Integer n = integer_arg(n_text);
            if (n < 1) throw Error(ErrorKind::invalid_argument, "N must be >= 1");
            SweepSummary s = sweep(n.convert_to<std::uint64_t>());
            std::string ratio = to_decimal_truncated(s.min_ratio, 12);
            std::string line = "pairs=" + std::to_string(s.pairs) + " verified=" + std::to_string(s.verified) +
                               " min_ratio=" + ratio + " at=" + std::to_string(s.argmin_m) + "/" +
                               std::to_string(s.argmin_n);
            r.emit({{"command", "sweep"},
                    {"pairs", s.pairs},
                    {"verified", s.verified},
                    {"all_verified", s.all_verified()},
                    {"min_ratio", ratio},
                    {"argmin", std::to_string(s.argmin_m) + "/" + std::to_string(s.argmin_n)}},
                   {line});
            return ok;
        }

        if (*wallis) {
            WallisCertificate c = wallis_area(detail::rational_arg(a_text), detail::rational_arg(b_text));
            std::vector<std::string> lines{to_string(c.area)};
            if (trace) lines.insert(lines.end(), c.trace.begin(), c.trace.end());
            r.emit({{"command", "wallis"}, {"area", to_string(c.area)}, {"certificate", c.trace}}, lines);
            return ok;
        }

        if (*transfer) {
            LCSampler sampler(seed);
            auto triples = sampler.triples(samples);
            TransferReport rep;
            std::size_t identities = transfer_schema.size();
            if (!identity.empty()) {
                auto id = identity_from_string(identity);
                if (!id) throw ParseError(0, {"identity name"}, "'" + identity + "'");
                rep = check_transfer_identity(*id, triples);
                identities = 1;
            } else {
                rep = check_transfer_schema(triples);
            }
            std::vector<std::string> lines{"identities=" + std::to_string(identities) + " samples=" +
                                           std::to_string(samples) + " violations=" +
                                           std::to_string(rep.violations.size())};
            json vs = json::array();
            for (const auto& v : rep.violations) {
                lines.push_back(std::string("violation ") + to_string(v.identity) + " at sample " +
                                std::to_string(v.sample_index));
                vs.push_back({{"identity", to_string(v.identity)}, {"sample", v.sample_index}});
            }
            r.emit({{"command", "transfer-check"},
                    {"identities", identities},
                    {"samples", samples},
                    {"violations", vs}},
                   lines);
            return ok;
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return usage_error;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return domain_error;
    }
    return usage_error;
}

} // namespace adequal::cli
