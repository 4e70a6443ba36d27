#include "anglerank/report.hpp"

#include <chrono>

namespace anglerank {

using nlohmann::json;

namespace {

double ms_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

const char* conclusion_str(Certificate::Conclusion c) {
    switch (c) {
        case Certificate::Conclusion::NontrivialRelationExists: return "nontrivial-relation-exists";
        case Certificate::Conclusion::NoRelationAtThisPattern: return "no-relation-at-this-pattern";
        default: return "not-certifiable";
    }
}

json coeffs_to_json(const std::vector<mpz_class>& coeffs) {
    json arr = json::array();
    for (const auto& c : coeffs) arr.push_back(c.get_str());
    return arr;
}

std::vector<mpz_class> coeffs_from_json(const json& arr) {
    std::vector<mpz_class> out;
    for (const auto& v : arr) out.emplace_back(v.get<std::string>());
    return out;
}

} // namespace

std::vector<mpz_class> parse_coeff_list(const std::string& text) {
    std::vector<mpz_class> out;
    std::string tok;
    auto flush = [&]() {
        size_t b = tok.find_first_not_of(" \t");
        size_t e = tok.find_last_not_of(" \t");
        if (b == std::string::npos) throw ParseError("empty coefficient");
        out.emplace_back(tok.substr(b, e - b + 1));
        tok.clear();
    };
    for (char c : text) {
        if (c == ',') flush();
        else tok.push_back(c);
    }
    flush();
    return out;
}

AnalysisReport analyze(const WeilPolynomial& P, const PrecisionProfile& profile,
                       const std::vector<RelationPattern>& extra_patterns) {
    AnalysisReport rep;
    auto t0 = std::chrono::steady_clock::now();
    rep.valid = true;
    rep.g = P.g();
    rep.q = P.q();
    rep.p = P.p();
    rep.r = P.r();
    rep.label = encode_label(P).str();
    rep.coeffs = P.poly().coeffs();
    rep.ordinary = is_ordinary(P);
    rep.newton_slopes = newton_polygon(P).slopes;
    rep.irreducible = is_irreducible(P.poly());
    rep.simplicity = is_geometrically_simple(P);
    rep.ms_validate = ms_since(t0);

    t0 = std::chrono::steady_clock::now();
    rep.rho = profile.rho;
    rep.sigma = profile.sigma;
    AngleRankResult rank = numerical_angle_rank(P, profile);
    rep.m = rank.m;
    rep.s = rank.s;
    rep.status = rank.search.status;
    rep.rank = rep.status == RelationStatus::Ok ? rank.rank : -1;
    rep.relations = rank.search.relations;
    for (const auto& t : rank.angles.t) rep.angles.push_back(t.str(40));
    rep.ms_numerics = ms_since(t0);

    t0 = std::chrono::steady_clock::now();
    rep.certified = certify_upper_bound(P, rep.relations);
    for (const RelationPattern& pattern : extra_patterns) {
        bool already = false;
        for (const Certificate& c : rep.certified.certificates)
            if (c.pattern.canonical() == pattern.canonical()) already = true;
        if (already) continue;
        Certificate cert = cyclotomic_excess(P, pattern);
        if (cert.certifiable && cert.excess > 0 && rep.certified.bound == P.g() &&
            !rep.certified.supersingular_shortcircuit)
            rep.certified.bound = P.g() - 1;
        rep.certified.certificates.push_back(std::move(cert));
    }
    rep.ms_certify = ms_since(t0);
    return rep;
}

json certificate_to_json(const Certificate& cert) {
    json j;
    json pat = json::array();
    for (long e : cert.pattern.exponents) pat.push_back(e);
    j["pattern"] = pat;
    j["trivial_count"] = cert.trivial_count;
    j["cyc_degree"] = cert.cyc_degree;
    j["excess"] = cert.excess;
    j["base_change"] = cert.base_change_applied;
    j["preconditions"] = {{"irreducible", cert.precond_irreducible},
                          {"no_root_of_unity_root", cert.precond_no_root_of_unity}};
    j["conclusion"] = conclusion_str(cert.conclusion);
    return j;
}

json weil_to_json(const WeilPolynomial& P) {
    json j;
    j["g"] = P.g();
    j["q"] = P.q().get_str();
    j["p"] = P.p().get_str();
    j["r"] = P.r();
    j["coeffs"] = coeffs_to_json(P.poly().coeffs());
    return j;
}

json report_to_json(const AnalysisReport& rep) {
    json j;
    j["schema"] = "anglerank-report/1";
    j["input"] = {{"type", rep.input_type}, {"value", rep.input_echo}};
    j["valid"] = rep.valid;
    j["g"] = rep.g;
    j["q"] = rep.q.get_str();
    j["p"] = rep.p.get_str();
    j["r"] = rep.r;
    j["label"] = rep.label;
    j["coeffs"] = coeffs_to_json(rep.coeffs);
    j["ordinary"] = rep.ordinary;
    json slopes = json::array();
    for (const auto& s : rep.newton_slopes) slopes.push_back(s.get_str());
    j["newton_slopes"] = slopes;
    j["irreducible"] = rep.irreducible;
    j["geometrically_simple"] = {{"value", rep.simplicity.value},
                                 {"irreducible", rep.simplicity.irreducible},
                                 {"ratio_trivial", rep.simplicity.ratio_trivial},
                                 {"ratio_cyc_degree", rep.simplicity.ratio_cyc_degree},
                                 {"ratio_excess", rep.simplicity.ratio_excess}};
    json rels = json::array();
    for (const auto& r : rep.relations) {
        json row = json::array();
        for (const auto& c : r.coeffs) row.push_back(c.get_str());
        rels.push_back(row);
    }
    j["numerical"] = {{"rho", rep.rho},
                      {"sigma", rep.sigma},
                      {"m", rep.m},
                      {"s", rep.s},
                      {"rank", rep.rank},
                      {"status", rep.status == RelationStatus::Ok ? "ok" : "interrupted"},
                      {"relations", rels},
                      {"angles", rep.angles}};
    json certs = json::array();
    for (const auto& c : rep.certified.certificates) certs.push_back(certificate_to_json(c));
    j["certified"] = {{"upper_bound", rep.certified.bound},
                      {"supersingular_shortcircuit", rep.certified.supersingular_shortcircuit},
                      {"certificates", certs}};
    j["timings_ms"] = {{"exact_flags", rep.ms_validate},
                       {"numerics", rep.ms_numerics},
                       {"certify", rep.ms_certify}};
    return j;
}

std::vector<std::string> verify_report(const json& rep) {
    std::vector<std::string> issues;
    auto mismatch = [&](const std::string& what) { issues.push_back("mismatch: " + what); };

    std::vector<mpz_class> coeffs = coeffs_from_json(rep.at("coeffs"));
    mpz_class q(rep.at("q").get<std::string>());
    WeilPolynomial P = WeilPolynomial::validate(coeffs, q);

    if (rep.at("g").get<int>() != P.g()) mismatch("g");
    if (mpz_class(rep.at("p").get<std::string>()) != P.p()) mismatch("p");
    if (rep.at("r").get<int>() != P.r()) mismatch("r");
    if (rep.at("label").get<std::string>() != encode_label(P).str()) mismatch("label");
    if (rep.at("ordinary").get<bool>() != is_ordinary(P)) mismatch("ordinary");

    NewtonPolygon np = newton_polygon(P);
    const json& slopes = rep.at("newton_slopes");
    if (slopes.size() != np.slopes.size()) {
        mismatch("newton_slopes length");
    } else {
        for (size_t i = 0; i < np.slopes.size(); ++i)
            if (mpq_class(slopes[i].get<std::string>()) != np.slopes[i]) {
                mismatch("newton_slopes");
                break;
            }
    }

    if (rep.at("irreducible").get<bool>() != is_irreducible(P.poly())) mismatch("irreducible");

    GeomSimplicityEvidence ev = is_geometrically_simple(P);
    const json& gs = rep.at("geometrically_simple");
    if (gs.at("value").get<bool>() != ev.value) mismatch("geometrically_simple.value");
    if (gs.at("ratio_excess").get<long>() != ev.ratio_excess) mismatch("geometrically_simple.ratio_excess");

    // the numerical section is deterministic given rho
    const json& num = rep.at("numerical");
    PrecisionProfile profile = PrecisionProfile::from_rho(num.at("rho").get<long>());
    AngleRankResult rank = numerical_angle_rank(P, profile);
    if (num.at("m").get<int>() != rank.m) mismatch("numerical.m");
    if (num.at("s").get<int>() != rank.s) mismatch("numerical.s");
    bool interrupted = num.at("status").get<std::string>() == "interrupted";
    if (interrupted != (rank.search.status == RelationStatus::Interrupted)) mismatch("numerical.status");
    if (!interrupted && num.at("rank").get<int>() != rank.rank) mismatch("numerical.rank");

    // each certificate is re-derived from its pattern
    const json& cert_section = rep.at("certified");
    for (const json& cj : cert_section.at("certificates")) {
        RelationPattern pattern;
        for (const auto& e : cj.at("pattern")) pattern.exponents.push_back(e.get<long>());
        Certificate cert = cyclotomic_excess(P, pattern);
        if (cj.at("trivial_count").get<long>() != cert.trivial_count)
            mismatch("certificate trivial_count at " + pattern.str());
        if (cj.at("cyc_degree").get<long>() != cert.cyc_degree)
            mismatch("certificate cyc_degree at " + pattern.str());
        if (cj.at("excess").get<long>() != cert.excess) mismatch("certificate excess at " + pattern.str());
        if (cj.at("base_change").get<long>() != cert.base_change_applied)
            mismatch("certificate base_change at " + pattern.str());
        if (cj.at("conclusion").get<std::string>() != conclusion_str(cert.conclusion))
            mismatch("certificate conclusion at " + pattern.str());
    }
    if (cert_section.at("supersingular_shortcircuit").get<bool>() != is_supersingular(P))
        mismatch("supersingular_shortcircuit");
    return issues;
}

} // namespace anglerank
