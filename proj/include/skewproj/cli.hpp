#pragma once

// Command-line front end. run_command() is the whole program minus main(), so
// tests drive it in-process.
//
// Exit codes: 0 affirmative / success, 1 negative verdict, 2 UNKNOWN,
// 3 usage or input error.

#include "skewproj/catalog.hpp"
#include "skewproj/error.hpp"
#include "skewproj/exactnum.hpp"
#include "skewproj/io.hpp"
#include "skewproj/pointvar.hpp"
#include "skewproj/skewalg.hpp"
#include "skewproj/torus.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace skewproj::cli {

enum ExitCode : int { kAffirmative = 0, kNegative = 1, kUnknown = 2, kInputError = 3 };

struct Report {
    Report() = default;
    Report(std::string cmd, std::vector<std::string> in, std::string v)
        : command(std::move(cmd)), inputs(std::move(in)), verdict(std::move(v)) {}

    std::string command;
    std::vector<std::string> inputs;
    std::string verdict;
    std::optional<Json> witness;
    Json details = Json::object();
    std::string text;  // extra human-readable block

    Json to_json() const {
        Json doc;
        doc["command"] = command;
        doc["inputs"] = inputs;
        doc["verdict"] = verdict;
        doc["witness"] = witness ? *witness : Json(nullptr);
        doc["details"] = details;
        return doc;
    }

    std::string to_text() const {
        std::ostringstream out;
        out << "command: " << command << "\n";
        if (!inputs.empty()) {
            out << "inputs:";
            for (const auto& i : inputs) out << ' ' << i;
            out << "\n";
        }
        out << "verdict: " << verdict << "\n";
        if (witness) out << "witness: " << witness->dump() << "\n";
        if (!details.empty()) {
            out << "details:\n";
            for (const auto& [key, value] : details.items())
                out << "  " << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
        }
        out << text;
        return out.str();
    }
};

/// Resolves file paths and catalog names over one shared generator basis.
class Session {
public:
    ParameterMatrix load(const std::string& ref) { return parameter_matrix_from_text(read(ref), basis_, ref); }

    WitnessFile load_witness(const std::string& ref) {
        return witness_from_json(detail::parse_json_text(read(ref), ref), basis_, ref);
    }

    const GeneratorBasis& basis() const { return basis_; }

    static std::string read(const std::string& ref) {
        if (std::filesystem::exists(ref)) return detail::read_file(ref);
        if (const CatalogEntry* e = find_catalog_entry(ref)) return e->json;
        throw Error(ErrorKind::Parse, "no such file or catalog entry: " + ref);
    }

private:
    GeneratorBasis basis_;
};

namespace detail {

inline Json components_json(const PointVariety& v) {
    Json out = Json::array();
    for (const auto& s : v.components) {
        Json c = Json::array();
        for (auto i : s) c.push_back(i + 1);
        out.push_back(c);
    }
    return out;
}

inline Json qnumbers_json(const ParameterMatrix& omega, const GeneratorBasis& basis) {
    Json q = Json::object();
    for (const auto& [t, value] : all_triple_qnumbers(omega)) q[t.label()] = render(value, basis);
    return q;
}

inline Json divisors_json(const ExponentForm& f, const GeneratorBasis& basis) {
    Json out = Json::object();
    for (const auto& [g, m] : f.per_generator) out[basis[g].name()] = skew_normal_form(m).divisors;
    return out;
}

struct Outcome {
    Report report;
    int code = kAffirmative;
};

inline Outcome cmd_qnumbers(const std::string& file) {
    Session s;
    ParameterMatrix omega = s.load(file);
    Report r{"qnumbers", {file}, "OK"};
    r.details["q"] = qnumbers_json(omega, s.basis());
    Json qij = Json::object();
    for (std::size_t i = 1; i < omega.n(); ++i)
        for (std::size_t j = i + 1; j < omega.n(); ++j)
            qij["q" + std::to_string(i + 1) + std::to_string(j + 1)] = render(q_cycle(omega, {0, i, j}), s.basis());
    r.details["q_1ij"] = qij;
    return {r, kAffirmative};
}

inline Outcome cmd_check_iso(const std::string& a, const std::string& b) {
    Session s;
    ParameterMatrix omega = s.load(a), omega_p = s.load(b);
    Report r{"check-iso", {a, b}, "NOT_ISOMORPHIC"};
    if (auto sigma = check_isomorphism(omega, omega_p)) {
        r.verdict = "ISOMORPHIC";
        r.witness = iso_witness_json(*sigma);
        return {r, kAffirmative};
    }
    return {r, kNegative};
}

inline Outcome cmd_check_graded(const std::string& a, const std::string& b) {
    Session s;
    ParameterMatrix omega = s.load(a), omega_p = s.load(b);
    Report r{"check-graded", {a, b}, "NOT_EQUIVALENT"};
    auto w = check_graded_equivalence(omega, omega_p);
    auto via_q = find_qnumber_permutation(omega, omega_p);
    r.details["qnumber_criterion"] = via_q.has_value();
    if (w) {
        r.verdict = "EQUIVALENT";
        r.witness = graded_witness_json(*w, s.basis());
        return {r, kAffirmative};
    }
    return {r, kNegative};
}

inline Outcome cmd_check_birational(const std::string& a, const std::string& b, long long bound) {
    Session s;
    ParameterMatrix omega = s.load(a), omega_p = s.load(b);
    BirationalVerdict v = check_birational(omega, omega_p, bound);
    Report r{"check-birational", {a, b}, to_string(v.status)};
    if (v.witness) r.witness = birational_witness_json(*v.witness);
    r.details["generic"] = v.generic;
    r.details["note"] = v.note;
    r.details["divisors"] = divisors_json(q_exponent_form(omega), s.basis());
    r.details["divisors_prime"] = divisors_json(q_exponent_form(omega_p), s.basis());
    r.details["search_bound"] = bound;
    switch (v.status) {
    case BirationalVerdict::Status::Equivalent: return {r, kAffirmative};
    case BirationalVerdict::Status::NotEquivalent: return {r, kNegative};
    case BirationalVerdict::Status::Unknown: return {r, kUnknown};
    }
    return {r, kUnknown};
}

inline Outcome cmd_verify_witness(const std::string& kind, const std::string& a, const std::string& b, const std::string& wfile) {
    Session s;
    ParameterMatrix omega = s.load(a), omega_p = s.load(b);
    WitnessFile w = s.load_witness(wfile);
    if (w.kind != kind) throw Error(ErrorKind::Parse, wfile + ": witness kind \"" + w.kind + "\" does not match --kind " + kind);
    bool ok = false;
    if (kind == "iso") {
        ok = verify_iso_witness(omega, omega_p, *w.sigma);
    } else if (kind == "graded") {
        ok = verify_graded_witness(omega, omega_p, GradedWitness{*w.sigma, *w.m});
    } else {
        ok = verify_birational_witness(omega, omega_p, *w.a);
    }
    Report r{"verify-witness", {a, b, wfile}, ok ? "VALID" : "INVALID"};
    r.details["kind"] = kind;
    return {r, ok ? kAffirmative : kNegative};
}

inline Outcome cmd_point_variety(const std::string& file, bool oracle, int trials, std::uint64_t seed) {
    Session s;
    ParameterMatrix omega = s.load(file);
    PointVariety v = point_variety(omega);
    Report r{"point-variety", {file}, "OK"};
    Json triples = Json::array();
    for (const auto& t : nontrivial_triples(omega).triples) triples.push_back(t.label());
    r.details["nontrivial_triples"] = triples;
    r.details["components"] = components_json(v);
    r.details["rendered"] = render(v);
    r.details["dimensions"] = v.dimension_multiset();
    int code = kAffirmative;
    if (oracle) {
        PointVariety o = oracle_point_variety(omega, seed, trials);
        Json od;
        od["components"] = components_json(o);
        od["trials"] = trials;
        od["seed"] = seed;
        od["agrees"] = (o == v);
        r.details["oracle"] = od;
        if (o != v) {
            r.verdict = "ORACLE_MISMATCH";
            code = kNegative;
        }
    }
    return {r, code};
}

inline Outcome cmd_classify_p3(const std::string& file) {
    Session s;
    ParameterMatrix omega = s.load(file);
    P3Case c = classify_p3(omega);
    Report r{"classify-p3", {file}, "CASE_" + std::to_string(c.case_id)};
    r.details["case"] = c.case_id;
    r.details["description"] = c.description;
    r.details["dimensions"] = p3_case_dimensions(c.case_id);
    r.details["q"] = qnumbers_json(omega, s.basis());
    return {r, kAffirmative};
}

inline Outcome cmd_compare_point_varieties(const std::string& a, const std::string& b) {
    Session s;
    ParameterMatrix omega = s.load(a), omega_p = s.load(b);
    require_same_size(omega, omega_p);
    PointVariety v = point_variety(omega), v_p = point_variety(omega_p);
    Report r{"compare-point-varieties", {a, b}, "NOT_EQUIVALENT"};
    r.details["first"] = render(v);
    r.details["second"] = render(v_p);
    r.details["first_dimensions"] = v.dimension_multiset();
    r.details["second_dimensions"] = v_p.dimension_multiset();
    if (auto pi = compare_point_varieties(v, v_p)) {
        r.verdict = "EQUIVALENT";
        r.witness = Json{{"kind", "coordinate-permutation"}, {"pi", permutation_to_json(*pi)}};
        return {r, kAffirmative};
    }
    return {r, kNegative};
}

inline Outcome cmd_torus_simple(const std::string& file, bool of_q) {
    Session s;
    ParameterMatrix omega = s.load(file);
    ExponentForm f = of_q ? q_exponent_form(omega) : omega_exponent_form(omega);
    auto a = central_exponent_vector(f);
    Report r{"torus-simple", {file}, a ? "NOT_SIMPLE" : "SIMPLE"};
    r.details["torus"] = of_q ? "q" : "omega";
    r.details["central_exponent_vector"] = a ? Json(*a) : Json(nullptr);
    return {r, a ? kNegative : kAffirmative};
}

inline Outcome cmd_quiver(const std::string& file) {
    Session s;
    ParameterMatrix omega = s.load(file);
    QuiverPresentation q = quiver_presentation(omega);
    Report r{"quiver", {file}, "OK"};
    r.text = render_quiver(q, s.basis());
    r.details["vertices"] = q.vertex_count;
    r.details["arrows"] = q.arrows.size();
    r.details["relations"] = q.relations.size();
    r.details["presentation"] = r.text;
    return {r, kAffirmative};
}

inline Outcome cmd_catalog_list() {
    Report r{"catalog", {}, "OK"};
    Json entries = Json::object();
    for (const auto& e : catalog()) entries[e.name] = e.description;
    r.details["entries"] = entries;
    return {r, kAffirmative};
}

}  // namespace detail

inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Classification toolkit for skew polynomial algebras and their noncommutative projective spaces", "skewproj"};
    app.require_subcommand(1);
    bool json = false, quiet = false;
    app.add_flag("--json", json, "print the report as JSON");
    app.add_flag("--quiet", quiet, "print only the verdict");

    std::string file_a, file_b, witness_file, kind, catalog_action = "list", catalog_name;
    long long search_bound = kDefaultSearchBound;
    bool oracle = false, of_q = false;
    int trials = 5;
    std::uint64_t seed = 1;

    auto one_file = [&](const std::string& name, const std::string& help) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("FILE", file_a, "parameter file or catalog name")->required();
        return sub;
    };
    auto two_files = [&](const std::string& name, const std::string& help) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("A", file_a, "first parameter file or catalog name")->required();
        sub->add_option("B", file_b, "second parameter file or catalog name")->required();
        return sub;
    };

    auto* qnumbers = one_file("qnumbers", "cyclic q-numbers of all triples");
    auto* iso = two_files("check-iso", "graded algebra isomorphism");
    auto* graded = two_files("check-graded", "graded Morita equivalence");
    auto* birational = two_files("check-birational", "birational equivalence of the projective spaces");
    birational->add_option("--search-bound", search_bound, "entry bound for the GL(Z) search")->check(CLI::PositiveNumber);
    auto* verify = app.add_subcommand("verify-witness", "check a witness file");
    verify->add_option("--kind", kind, "iso, graded or birational")->required()->check(CLI::IsMember({"iso", "graded", "birational"}));
    verify->add_option("A", file_a, "first parameter file")->required();
    verify->add_option("B", file_b, "second parameter file")->required();
    verify->add_option("WITNESSFILE", witness_file, "witness file")->required();
    auto* pv = one_file("point-variety", "point variety as a union of coordinate subspaces");
    pv->add_flag("--oracle", oracle, "cross-check with the rank oracle");
    pv->add_option("--trials", trials, "sample points per coordinate subset")->check(CLI::PositiveNumber);
    pv->add_option("--seed", seed, "oracle seed");
    auto* p3 = one_file("classify-p3", "case of the point variety of P^3");
    auto* compare = two_files("compare-point-varieties", "compare point varieties up to coordinate permutation");
    auto* simple = one_file("torus-simple", "simplicity of the quantum torus");
    simple->add_flag("--of-q", of_q, "use the q-torus instead of the torus of omega");
    auto* quiver = one_file("quiver", "Beilinson quiver presentation");
    auto* cat = app.add_subcommand("catalog", "built-in example files");
    cat->add_option("ACTION", catalog_action, "list or show")->check(CLI::IsMember({"list", "show"}));
    cat->add_option("NAME", catalog_name, "catalog entry for show");

    std::vector<std::string> argv_storage{"skewproj"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_storage) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kInputError;
    }

    try {
        detail::Outcome o;
        if (qnumbers->parsed()) o = detail::cmd_qnumbers(file_a);
        else if (iso->parsed()) o = detail::cmd_check_iso(file_a, file_b);
        else if (graded->parsed()) o = detail::cmd_check_graded(file_a, file_b);
        else if (birational->parsed()) o = detail::cmd_check_birational(file_a, file_b, search_bound);
        else if (verify->parsed()) o = detail::cmd_verify_witness(kind, file_a, file_b, witness_file);
        else if (pv->parsed()) o = detail::cmd_point_variety(file_a, oracle, trials, seed);
        else if (p3->parsed()) o = detail::cmd_classify_p3(file_a);
        else if (compare->parsed()) o = detail::cmd_compare_point_varieties(file_a, file_b);
        else if (simple->parsed()) o = detail::cmd_torus_simple(file_a, of_q);
        else if (quiver->parsed()) o = detail::cmd_quiver(file_a);
        else if (cat->parsed()) {
            if (catalog_action == "show") {
                const CatalogEntry* e = find_catalog_entry(catalog_name);
                if (!e) throw Error(ErrorKind::Parse, "no catalog entry named \"" + catalog_name + "\"");
                out << e->json;
                return kAffirmative;
            }
            o = detail::cmd_catalog_list();
        }

        if (quiet) out << o.report.verdict << "\n";
        else if (json) out << o.report.to_json().dump(2) << "\n";
        else out << o.report.to_text();
        return o.code;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
}

}  // namespace skewproj::cli
