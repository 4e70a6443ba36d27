#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "anglerank/curves.hpp"
#include "anglerank/report.hpp"

using namespace anglerank;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 2;
constexpr int kExitInterrupted = 3;
constexpr int kExitClaimFailed = 4;

constexpr const char* kCurveSpecF3 = "3; 0; 0,1,0,0,0,2,0,1,1,1";
constexpr const char* kCurveSpecF5 = "5; 0; 0,1,0,0,0,2,1,0,0,1";
constexpr const char* kLabelF3 = "4.3.ab_c_ae_ac";
constexpr const char* kLabelF5 = "4.5.ab_c_ae_q";
// L-polynomial coefficients, constant term first
const std::vector<long> kLF3 = {1, -1, 2, -4, -2, -12, 18, -27, 81};
const std::vector<long> kLF5 = {1, -1, 2, -4, 16, -20, 50, -125, 625};

RelationPattern parse_pattern(const std::string& text) {
    size_t colon = text.find(':');
    if (colon == std::string::npos) throw ParseError("pattern must look like j:e1,e2,...");
    int j = std::stoi(text.substr(0, colon));
    RelationPattern pattern;
    std::string rest = text.substr(colon + 1);
    std::string tok;
    auto flush = [&]() {
        if (tok.empty()) throw ParseError("empty exponent in pattern");
        pattern.exponents.push_back(std::stol(tok));
        tok.clear();
    };
    for (char c : rest) {
        if (c == ',') flush();
        else tok.push_back(c);
    }
    flush();
    if (pattern.j() != j) throw ParseError("pattern length does not match j");
    return pattern;
}

WeilPolynomial weil_from_cli_input(const std::string& input, const std::string& q_opt,
                                   std::string& type_out) {
    if (input.find('.') != std::string::npos) {
        type_out = "label";
        return weil_from_label(input);
    }
    type_out = "coeffs";
    if (q_opt.empty()) throw ParseError("coefficient input requires --q");
    std::vector<mpz_class> coeffs = parse_coeff_list(input);
    return WeilPolynomial::validate(coeffs, mpz_class(q_opt));
}

void print_report_text(const AnalysisReport& rep, std::ostream& os) {
    os << "label              " << rep.label << "\n";
    os << "g, q               " << rep.g << ", " << rep.q.get_str() << "\n";
    os << "ordinary           " << (rep.ordinary ? "yes" : "no") << "\n";
    os << "irreducible        " << (rep.irreducible ? "yes" : "no") << "\n";
    os << "geom. simple       " << (rep.simplicity.value ? "yes" : "no");
    if (rep.simplicity.irreducible)
        os << "  (ratio excess " << rep.simplicity.ratio_excess << ")";
    os << "\n";
    os << "numerical rank     ";
    if (rep.status == RelationStatus::Interrupted)
        os << "interrupted";
    else
        os << rep.rank << "  (m=" << rep.m << ", s=" << rep.s << ", rho=" << rep.rho << ")";
    os << "\n";
    for (const auto& rel : rep.relations) {
        os << "  relation          ";
        for (size_t i = 0; i < rel.coeffs.size(); ++i) os << (i ? " " : "") << rel.coeffs[i].get_str();
        os << "\n";
    }
    os << "certified bound    " << rep.certified.bound;
    if (rep.certified.supersingular_shortcircuit) os << "  (supersingular)";
    os << "\n";
    for (const auto& cert : rep.certified.certificates) {
        os << "  pattern " << cert.pattern.str();
        if (cert.certifiable)
            os << "  trivial=" << cert.trivial_count << " cyc=" << cert.cyc_degree
               << " excess=" << cert.excess;
        else
            os << "  not certifiable";
        os << "\n";
    }
}

int cmd_analyze(const std::string& input, const std::string& q_opt, long rho,
                const std::vector<std::string>& pattern_opts, bool text) {
    std::string type;
    WeilPolynomial P = weil_from_cli_input(input, q_opt, type);
    PrecisionProfile profile = PrecisionProfile::from_rho(rho);
    std::vector<RelationPattern> extra;
    for (const auto& s : pattern_opts) extra.push_back(parse_pattern(s));
    AnalysisReport rep = analyze(P, profile, extra);
    rep.input_echo = input;
    rep.input_type = type;
    if (text)
        print_report_text(rep, std::cout);
    else
        std::cout << report_to_json(rep).dump(2) << "\n";
    return rep.status == RelationStatus::Interrupted ? kExitInterrupted : kExitOk;
}

json zeta_to_json(const HyperellipticCurve& curve, const ZetaResult& z) {
    json j;
    j["curve"] = curve_to_spec(curve);
    j["counts"] = z.counts.counts;
    json lp = json::array();
    IntPoly lpoly = z.weil.lpoly();
    for (const auto& c : lpoly.coeffs()) lp.push_back(c.get_str());
    j["lpoly"] = lp;
    j["label"] = z.label.str();
    return j;
}

int cmd_zeta(const std::string& spec) {
    HyperellipticCurve curve = parse_curve(spec);
    ZetaResult z = zeta(curve);
    std::cout << zeta_to_json(curve, z).dump(2) << "\n";
    return kExitOk;
}

struct ClaimTracker {
    int passed = 0, failed = 0;
    void check(bool ok, const std::string& what, double ms) {
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << what << "  (" << static_cast<long>(ms)
                  << " ms)\n";
        if (ok) ++passed;
        else ++failed;
    }
};

int cmd_reproduce(long rho, const std::string& f3_spec, const std::string& f5_spec) {
    PrecisionProfile profile = PrecisionProfile::from_rho(rho);
    ClaimTracker claims;
    struct Case {
        std::string name, spec, label;
        const std::vector<long>* lcoeffs;
    };
    std::vector<Case> cases = {{"F3", f3_spec, kLabelF3, &kLF3}, {"F5", f5_spec, kLabelF5, &kLF5}};
    for (const Case& c : cases) {
        auto t0 = std::chrono::steady_clock::now();
        auto ms = [&]() {
            return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        };
        HyperellipticCurve curve = parse_curve(c.spec);
        ZetaResult z;
        try {
            z = zeta(curve);
        } catch (const Error& e) {
            claims.check(false, c.name + " zeta computation (" + e.what() + ")", ms());
            continue;
        }
        IntPoly expected_l{std::vector<mpz_class>(c.lcoeffs->begin(), c.lcoeffs->end())};
        bool zeta_ok = z.weil.lpoly() == expected_l && z.label.str() == c.label;
        claims.check(zeta_ok, c.name + " zeta: L-polynomial and label " + z.label.str(), ms());
        if (!zeta_ok) continue;

        t0 = std::chrono::steady_clock::now();
        claims.check(is_ordinary(z.weil), c.label + " ordinary", ms());

        t0 = std::chrono::steady_clock::now();
        GeomSimplicityEvidence ev = is_geometrically_simple(z.weil);
        claims.check(ev.value && ev.irreducible && ev.ratio_excess == 0,
                     c.label + " geometrically simple (irreducible, ratio excess 0)", ms());

        t0 = std::chrono::steady_clock::now();
        AngleRankResult rank = numerical_angle_rank(z.weil, profile);
        bool rank_ok = rank.search.status == RelationStatus::Ok && rank.m == 4 && rank.s == 1 &&
                       rank.rank == 3;
        claims.check(rank_ok, c.label + " numerical angle rank 3 (m=4, s=1)", ms());

        t0 = std::chrono::steady_clock::now();
        RelationPattern pattern{{1, 1, 1, 1}};
        Certificate cert = cyclotomic_excess(z.weil, pattern);
        bool cert_ok = cert.certifiable && cert.trivial_count == 168 && cert.excess > 0;
        std::ostringstream what;
        what << c.label << " cyclotomic excess at (4;1,1,1,1): trivial=" << cert.trivial_count
             << " cyc=" << cert.cyc_degree << " excess=" << cert.excess << " > 0";
        claims.check(cert_ok, what.str(), ms());
    }
    std::cout << "SUMMARY: " << claims.passed << "/" << (claims.passed + claims.failed)
              << " claims pass\n";
    return claims.failed == 0 ? kExitOk : kExitClaimFailed;
}

int cmd_survey(int g, const std::string& q_str, bool ordinary, bool geom_simple, int max_rank,
               long rho, int threads) {
    SurveyFilters filters;
    filters.ordinary = ordinary;
    filters.geometrically_simple = geom_simple;
    if (max_rank >= 0) filters.max_rank = max_rank;
    PrecisionProfile profile = PrecisionProfile::from_rho(rho);
    SurveyResult res = survey(g, mpz_class(q_str), filters, profile, threads);
    bool any_interrupted = false;
    for (const auto& row : res.rows) {
        json j;
        j["label"] = row.label;
        json coeffs = json::array();
        for (const auto& c : row.coeffs) coeffs.push_back(c.get_str());
        j["coeffs"] = coeffs;
        j["flags"] = {{"ordinary", row.flags.ordinary},
                      {"geometrically_simple", row.flags.geometrically_simple},
                      {"numerical_angle_rank", row.flags.numerical_angle_rank},
                      {"interrupted", row.flags.interrupted}};
        if (row.flags.interrupted) any_interrupted = true;
        std::cout << j.dump() << "\n";
    }
    json summary;
    summary["total_enumerated"] = res.total_enumerated;
    summary["matched"] = res.rows.size();
    std::cout << summary.dump() << "\n";
    return any_interrupted ? kExitInterrupted : kExitOk;
}

int cmd_search_curves(int p, const std::string& targets_path, int threads) {
    std::ifstream in(targets_path);
    if (!in) throw ParseError("cannot open targets file: " + targets_path);
    json targets_json = json::parse(in);
    std::vector<WeilPolynomial> targets;
    for (const auto& t : targets_json) {
        if (t.is_string())
            targets.push_back(weil_from_label(t.get<std::string>()));
        else
            targets.push_back(WeilPolynomial::validate(
                parse_coeff_list(t.at("coeffs").get<std::string>()), mpz_class(t.at("q").get<std::string>())));
    }
    std::vector<CurveMatch> matches = search_hyperelliptic(p, targets, threads);
    for (const auto& m : matches) {
        ZetaResult z = zeta(m.curve);
        std::cout << zeta_to_json(m.curve, z).dump() << "\n";
    }
    json summary;
    summary["matches"] = matches.size();
    std::cout << summary.dump() << "\n";
    return kExitOk;
}

int cmd_verify(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open report file: " + path);
    json rep = json::parse(in);
    std::vector<std::string> issues = verify_report(rep);
    if (issues.empty()) {
        std::cout << "report verified: all exact claims reproduced\n";
        return kExitOk;
    }
    for (const auto& s : issues) std::cout << s << "\n";
    return kExitClaimFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"anglerank: exact and numerical Frobenius angle-rank analysis of Weil polynomials"};
    app.require_subcommand(1);

    std::string input, q_opt;
    long rho = 625;
    int threads = 1;
    bool text = false;
    std::vector<std::string> pattern_opts;

    CLI::App* analyze_cmd = app.add_subcommand("analyze", "analyze a label or coefficient list");
    analyze_cmd->add_option("input", input, "isogeny label (g.q.code) or coefficients, constant first")
        ->required();
    analyze_cmd->add_option("--q", q_opt, "prime power q (required for coefficient input)");
    analyze_cmd->add_option("--rho", rho, "working precision in bits (perfect square)");
    analyze_cmd->add_option("--pattern", pattern_opts, "force certification pattern j:e1,e2,...");
    analyze_cmd->add_flag("--text", text, "human-readable output instead of JSON");

    std::string curve_spec;
    CLI::App* zeta_cmd = app.add_subcommand("zeta", "zeta function of a hyperelliptic curve");
    zeta_cmd->add_option("curve", curve_spec, "curve spec 'p; h-coeffs; f-coeffs'")->required();

    std::string f3_spec = kCurveSpecF3, f5_spec = kCurveSpecF5;
    CLI::App* repro_cmd = app.add_subcommand("reproduce", "reproduce both counterexamples end to end");
    repro_cmd->add_option("--rho", rho, "working precision in bits (perfect square)");
    repro_cmd->add_option("--f3-curve", f3_spec, "override the F3 curve spec");
    repro_cmd->add_option("--f5-curve", f5_spec, "override the F5 curve spec");

    int survey_g = 0;
    std::string survey_q;
    bool flt_ordinary = false, flt_geom_simple = false;
    int max_rank = -1;
    CLI::App* survey_cmd = app.add_subcommand("survey", "enumerate Weil polynomials with filters");
    survey_cmd->add_option("g", survey_g, "dimension")->required();
    survey_cmd->add_option("q", survey_q, "field size")->required();
    survey_cmd->add_flag("--ordinary", flt_ordinary, "keep only ordinary classes");
    survey_cmd->add_flag("--geom-simple", flt_geom_simple, "keep only geometrically simple classes");
    survey_cmd->add_option("--max-rank", max_rank, "keep only numerical angle rank <= R");
    survey_cmd->add_option("--rho", rho, "working precision in bits");
    survey_cmd->add_option("--threads", threads, "worker threads (speed only)");

    int search_p = 0;
    std::string targets_path;
    CLI::App* search_cmd = app.add_subcommand("search-curves", "hyperelliptic search against targets");
    search_cmd->add_option("p", search_p, "prime field")->required();
    search_cmd->add_option("targets", targets_path, "JSON file with target labels")->required();
    search_cmd->add_option("--threads", threads, "worker threads (speed only)");

    std::string report_path;
    CLI::App* verify_cmd = app.add_subcommand("verify", "re-validate the exact claims of a report");
    verify_cmd->add_option("report", report_path, "report JSON produced by analyze")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze_cmd->parsed()) return cmd_analyze(input, q_opt, rho, pattern_opts, text);
        if (zeta_cmd->parsed()) return cmd_zeta(curve_spec);
        if (repro_cmd->parsed()) return cmd_reproduce(rho, f3_spec, f5_spec);
        if (survey_cmd->parsed())
            return cmd_survey(survey_g, survey_q, flt_ordinary, flt_geom_simple, max_rank, rho, threads);
        if (search_cmd->parsed()) return cmd_search_curves(search_p, targets_path, threads);
        if (verify_cmd->parsed()) return cmd_verify(report_path);
    } catch (const PrecisionFailure& e) {
        json err = {{"error", e.what()}, {"kind", "precision"}};
        std::cerr << err.dump() << "\n";
        return kExitInterrupted;
    } catch (const Error& e) {
        json err = {{"error", e.what()}, {"kind", "invalid-input"}};
        std::cerr << err.dump() << "\n";
        return kExitInvalidInput;
    } catch (const std::exception& e) {
        json err = {{"error", e.what()}, {"kind", "internal"}};
        std::cerr << err.dump() << "\n";
        return kExitInvalidInput;
    }
    return kExitOk;
}
