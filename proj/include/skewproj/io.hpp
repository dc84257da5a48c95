#pragma once

// JSON parameter files and witness files.
//
// Parameter file:  {"n": 4, "generators": ["g"], "omega": [["1", "2", ...], ...]}
//   - scalars are strings in the scalar grammar ("-3/4", "g^2*h^-1", "2*g");
//   - diagonal entries must equal 1;
//   - entries below the diagonal may be "auto" and are then filled in as the
//     inverse of their mirror; explicit values are checked for reciprocity;
//   - when "generators" is present, every symbol used must be declared there.
//   Optional "name" and "notes" strings are carried along and ignored otherwise.
//
// Witness file:  {"kind": "graded", "sigma": [3,1,4,2], "m": ["1","3","1/2","5"]}
//                {"kind": "iso", "sigma": [...]}
//                {"kind": "birational", "A": [[1,0,0],[0,-1,0],[-1,0,1]]}
//   Permutations are 1-based: sigma[i-1] = sigma(i).

#include "skewproj/error.hpp"
#include "skewproj/exactnum.hpp"
#include "skewproj/intmatrix.hpp"
#include "skewproj/skewalg.hpp"

#include <json.hpp>

#include <fstream>
#include <optional>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace skewproj {

using Json = nlohmann::ordered_json;

namespace detail {

inline Json parse_json_text(const std::string& text, const std::string& source) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorKind::Parse, source + ": invalid JSON: " + e.what());
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline bool is_symbol_name(const std::string& s) {
    static const std::regex re("[a-zA-Z][a-zA-Z0-9_]*");
    return std::regex_match(s, re);
}

}  // namespace detail

/// Validates a parameter document and parses it over `basis` (extended in place).
inline ParameterMatrix parameter_matrix_from_json(const Json& doc, GeneratorBasis& basis, const std::string& source = "input") {
    auto fail = [&](const std::string& why) -> Error { return Error(ErrorKind::Parse, source + ": " + why); };
    if (!doc.is_object()) throw fail("top level must be an object");
    if (!doc.contains("n") || !doc["n"].is_number_integer()) throw fail("\"n\" must be an integer");
    const long long n_raw = doc["n"].get<long long>();
    if (n_raw < 2) throw Error(ErrorKind::Domain, source + ": n must be at least 2");
    const auto n = static_cast<std::size_t>(n_raw);

    std::optional<std::set<std::string>> declared;
    if (doc.contains("generators")) {
        if (!doc["generators"].is_array()) throw fail("\"generators\" must be an array of strings");
        declared.emplace();
        for (const auto& g : doc["generators"]) {
            if (!g.is_string()) throw fail("\"generators\" must be an array of strings");
            std::string name = g.get<std::string>();
            if (!detail::is_symbol_name(name) || name == "auto") throw fail("invalid generator name \"" + name + "\"");
            if (!declared->insert(name).second) throw fail("generator \"" + name + "\" declared twice");
            basis.intern_symbol(name);
        }
    }

    if (!doc.contains("omega") || !doc["omega"].is_array() || doc["omega"].size() != n)
        throw fail("\"omega\" must be an array of " + std::to_string(n) + " rows");
    std::vector<std::vector<std::optional<GroupElement>>> cells(n, std::vector<std::optional<GroupElement>>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const auto& row = doc["omega"][i];
        if (!row.is_array() || row.size() != n) throw fail("row " + std::to_string(i + 1) + " must have " + std::to_string(n) + " entries");
        for (std::size_t j = 0; j < n; ++j) {
            if (!row[j].is_string()) throw fail("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") must be a string");
            std::string text = row[j].get<std::string>();
            if (text == "auto") {
                if (i <= j) throw fail("\"auto\" is only allowed below the diagonal");
                continue;
            }
            GroupElement e;
            try {
                e = parse_scalar(text, basis);
            } catch (const Error& err) {
                throw Error(err.kind(), source + ": entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "): " + err.what());
            }
            if (declared) {
                for (std::size_t g = 0; g < e.exponents().size(); ++g)
                    if (e.exponents()[g] != 0 && !basis[g].is_prime() && !declared->count(basis[g].symbol))
                        throw fail("symbol \"" + basis[g].symbol + "\" is not declared in \"generators\"");
            }
            cells[i][j] = std::move(e);
        }
    }
    std::vector<std::vector<GroupElement>> entries(n, std::vector<GroupElement>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) entries[i][j] = cells[i][j] ? *cells[i][j] : inv(*cells[j][i]);
    try {
        return ParameterMatrix(basis, std::move(entries));
    } catch (const Error& err) {
        throw Error(err.kind(), source + ": " + err.what());
    }
}

inline ParameterMatrix parameter_matrix_from_text(const std::string& text, GeneratorBasis& basis, const std::string& source = "input") {
    return parameter_matrix_from_json(detail::parse_json_text(text, source), basis, source);
}

inline ParameterMatrix load_parameter_file(const std::string& path, GeneratorBasis& basis) {
    return parameter_matrix_from_text(detail::read_file(path), basis, path);
}

/// Serializes with every entry explicit; symbols are declared in basis order.
inline Json to_json(const ParameterMatrix& omega) {
    Json doc;
    doc["n"] = omega.n();
    Json gens = Json::array();
    std::set<std::size_t> used;
    for (const auto& row : omega.entries())
        for (const auto& e : row)
            for (std::size_t g = 0; g < e.exponents().size(); ++g)
                if (e.exponents()[g] != 0) used.insert(g);
    for (auto g : used)
        if (!omega.basis()[g].is_prime()) gens.push_back(omega.basis()[g].symbol);
    doc["generators"] = gens;
    Json rows = Json::array();
    for (std::size_t i = 0; i < omega.n(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < omega.n(); ++j) row.push_back(render(omega.at(i, j), omega.basis()));
        rows.push_back(row);
    }
    doc["omega"] = rows;
    return doc;
}

// ---------------------------------------------------------------------------
// Witnesses

struct WitnessFile {
    std::string kind;  // "iso", "graded", "birational"
    std::optional<Permutation> sigma;
    std::optional<std::vector<GroupElement>> m;
    std::optional<IntMatrix> a;
};

inline Json permutation_to_json(const Permutation& p) {
    Json out = Json::array();
    for (auto v : p) out.push_back(v + 1);
    return out;
}

inline Json matrix_to_json(const IntMatrix& a) {
    Json out = Json::array();
    for (const auto& row : a.to_rows()) out.push_back(row);
    return out;
}

inline Json iso_witness_json(const Permutation& sigma) { return Json{{"kind", "iso"}, {"sigma", permutation_to_json(sigma)}}; }

inline Json graded_witness_json(const GradedWitness& w, const GeneratorBasis& basis) {
    Json m = Json::array();
    for (const auto& x : w.m) m.push_back(render(x, basis));
    return Json{{"kind", "graded"}, {"sigma", permutation_to_json(w.sigma)}, {"m", m}};
}

inline Json birational_witness_json(const IntMatrix& a) { return Json{{"kind", "birational"}, {"A", matrix_to_json(a)}}; }

inline WitnessFile witness_from_json(const Json& doc, GeneratorBasis& basis, const std::string& source = "witness") {
    auto fail = [&](const std::string& why) -> Error { return Error(ErrorKind::Parse, source + ": " + why); };
    if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string()) throw fail("witness needs a string \"kind\"");
    WitnessFile w;
    w.kind = doc["kind"].get<std::string>();
    if (doc.contains("sigma")) {
        if (!doc["sigma"].is_array()) throw fail("\"sigma\" must be an array of integers");
        Permutation p;
        for (const auto& v : doc["sigma"]) {
            if (!v.is_number_integer() || v.get<long long>() < 1) throw fail("\"sigma\" entries must be integers >= 1");
            p.push_back(static_cast<std::size_t>(v.get<long long>() - 1));
        }
        if (!is_permutation_of_n(p, p.size())) throw fail("\"sigma\" is not a permutation");
        w.sigma = std::move(p);
    }
    if (doc.contains("m")) {
        if (!doc["m"].is_array()) throw fail("\"m\" must be an array of strings");
        std::vector<GroupElement> m;
        for (const auto& v : doc["m"]) {
            if (!v.is_string()) throw fail("\"m\" must be an array of strings");
            m.push_back(parse_scalar(v.get<std::string>(), basis));
        }
        w.m = std::move(m);
    }
    if (doc.contains("A")) {
        if (!doc["A"].is_array()) throw fail("\"A\" must be an array of integer rows");
        std::vector<IntVector> rows;
        for (const auto& r : doc["A"]) {
            if (!r.is_array()) throw fail("\"A\" must be an array of integer rows");
            IntVector row;
            for (const auto& v : r) {
                if (!v.is_number_integer()) throw fail("\"A\" entries must be integers");
                row.push_back(v.get<long long>());
            }
            rows.push_back(std::move(row));
        }
        w.a = IntMatrix::from_rows(rows);
    }
    if (w.kind == "iso" && !w.sigma) throw fail("iso witness needs \"sigma\"");
    if (w.kind == "graded" && (!w.sigma || !w.m)) throw fail("graded witness needs \"sigma\" and \"m\"");
    if (w.kind == "birational" && !w.a) throw fail("birational witness needs \"A\"");
    if (w.kind != "iso" && w.kind != "graded" && w.kind != "birational") throw fail("unknown witness kind \"" + w.kind + "\"");
    return w;
}

inline WitnessFile load_witness_file(const std::string& path, GeneratorBasis& basis) {
    return witness_from_json(detail::parse_json_text(detail::read_file(path), path), basis, path);
}

}  // namespace skewproj
