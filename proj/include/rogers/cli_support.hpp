#pragma once

// Support code for the command-line front end: strict JSON parsing of
// function specifications and deterministic CSV/JSON table emission.

#include <cstdio>
#include <memory>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "rogers/catalog.hpp"

namespace rogers::cli {

using json = nlohmann::json;

namespace detail {

inline void require_keys(const json& j, const std::vector<std::string>& allowed,
                         const std::string& where) {
    if (!j.is_object())
        throw InvalidSpecError("spec: " + where + " must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const auto& k : allowed) ok |= (it.key() == k);
        if (!ok)
            throw InvalidSpecError("spec: unknown key \"" + it.key() + "\" in " +
                                   where);
    }
}

inline double number_at(const json& j, const std::string& key,
                        const std::string& where) {
    if (!j.contains(key))
        throw InvalidSpecError("spec: missing key \"" + key + "\" in " + where);
    if (!j.at(key).is_number())
        throw InvalidSpecError("spec: key \"" + key + "\" in " + where +
                               " must be a number");
    return j.at(key).get<double>();
}

inline complex complex_at(const json& j, const std::string& key,
                          const std::string& where, complex fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        throw InvalidSpecError("spec: key \"" + key + "\" in " + where +
                               " must be a [re, im] pair");
    return complex(v[0].get<double>(), v[1].get<double>());
}

}  // namespace detail

inline FunctionSpec parse_spec(const json& j, int depth = 0) {
    if (depth > 8) throw InvalidSpecError("spec: nesting depth exceeds 8");
    if (!j.is_object() || !j.contains("family") || !j.at("family").is_string())
        throw InvalidSpecError("spec: object with a string \"family\" key required");
    const std::string family = j.at("family").get<std::string>();
    FunctionSpec spec;
    if (family == "brownian_drift") {
        detail::require_keys(j, {"family", "b"}, family);
        spec.family = Family::BrownianDrift;
        spec.b = detail::number_at(j, "b", family);
    } else if (family == "stable") {
        detail::require_keys(j, {"family", "alpha", "rho", "k"}, family);
        const double k = j.contains("k") ? detail::number_at(j, "k", family) : 1.0;
        spec.family = Family::Stable;
        spec.stable = stable_from_rho(detail::number_at(j, "alpha", family),
                                      detail::number_at(j, "rho", family), k);
    } else if (family == "stable_drift") {
        detail::require_keys(j, {"family", "alpha", "rho", "k", "b"}, family);
        const double k = j.contains("k") ? detail::number_at(j, "k", family) : 1.0;
        spec.family = Family::StableWithDrift;
        spec.stable = stable_from_rho(detail::number_at(j, "alpha", family),
                                      detail::number_at(j, "rho", family), k);
        spec.b = detail::number_at(j, "b", family);
    } else if (family == "drift") {
        detail::require_keys(j, {"family", "b"}, family);
        spec.family = Family::Drift;
        spec.b = detail::number_at(j, "b", family);
    } else if (family == "risk_process") {
        detail::require_keys(j, {"family", "a", "b"}, family);
        spec.family = Family::RiskProcess;
        spec.a = detail::number_at(j, "a", family);
        spec.b = detail::number_at(j, "b", family);
    } else if (family == "sum") {
        detail::require_keys(j, {"family", "terms"}, family);
        if (!j.contains("terms") || !j.at("terms").is_array() ||
            j.at("terms").empty())
            throw InvalidSpecError("spec: sum requires a nonempty \"terms\" array");
        spec.family = Family::Sum;
        for (const json& t : j.at("terms")) {
            detail::require_keys(t, {"weight", "spec"}, "sum term");
            FunctionSpec::Term term;
            term.weight = detail::number_at(t, "weight", "sum term");
            if (!t.contains("spec"))
                throw InvalidSpecError("spec: sum term missing \"spec\"");
            term.spec = std::make_shared<const FunctionSpec>(
                parse_spec(t.at("spec"), depth + 1));
            spec.terms.push_back(std::move(term));
        }
    } else if (family == "transform") {
        detail::require_keys(j, {"family", "kind", "params", "inner"}, family);
        if (!j.contains("kind") || !j.at("kind").is_string())
            throw InvalidSpecError("spec: transform requires a string \"kind\"");
        if (!j.contains("inner"))
            throw InvalidSpecError("spec: transform requires an \"inner\" spec");
        spec.family = Family::Transformed;
        const std::string kind = j.at("kind").get<std::string>();
        const json params = j.contains("params") ? j.at("params") : json::object();
        detail::require_keys(params, {"alpha", "c", "zeta0", "zeta_inf"},
                             "transform params");
        if (kind == "inv_reflect")
            spec.transform_kind = TransformKind::InvReflect;
        else if (kind == "recip_inv")
            spec.transform_kind = TransformKind::RecipInv;
        else if (kind == "square_inv")
            spec.transform_kind = TransformKind::SquareInv;
        else if (kind == "power_sandwich")
            spec.transform_kind = TransformKind::PowerSandwich;
        else if (kind == "bounded_complement")
            spec.transform_kind = TransformKind::BoundedComplement;
        else if (kind == "translate")
            spec.transform_kind = TransformKind::Translate;
        else if (kind == "mobius")
            spec.transform_kind = TransformKind::Mobius;
        else
            throw InvalidSpecError("spec: unknown transform kind \"" + kind + "\"");
        if (params.contains("alpha"))
            spec.transform_params.alpha =
                detail::number_at(params, "alpha", "transform params");
        if (params.contains("c"))
            spec.transform_params.c = detail::number_at(params, "c", "transform params");
        spec.transform_params.zeta0 = detail::complex_at(
            params, "zeta0", "transform params", spec.transform_params.zeta0);
        spec.transform_params.zeta_inf = detail::complex_at(
            params, "zeta_inf", "transform params", spec.transform_params.zeta_inf);
        spec.inner =
            std::make_shared<const FunctionSpec>(parse_spec(j.at("inner"), depth + 1));
    } else {
        throw InvalidSpecError("spec: unknown family \"" + family + "\"");
    }
    return spec;
}

// --- deterministic table emission -------------------------------------------

// Full-precision decimal: 17 significant digits round-trip for IEEE doubles.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

using Cell = std::variant<double, long long, std::string, bool>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

inline std::string cell_csv(const Cell& c) {
    if (std::holds_alternative<double>(c)) return format_double(std::get<double>(c));
    if (std::holds_alternative<long long>(c))
        return std::to_string(std::get<long long>(c));
    if (std::holds_alternative<bool>(c)) return std::get<bool>(c) ? "true" : "false";
    return std::get<std::string>(c);
}

inline void write_csv(std::ostream& os, const Table& t) {
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        os << (i ? "," : "") << t.columns[i];
    os << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << cell_csv(row[i]);
        os << "\n";
    }
}

inline json cell_json(const Cell& c) {
    if (std::holds_alternative<double>(c)) return std::get<double>(c);
    if (std::holds_alternative<long long>(c)) return std::get<long long>(c);
    if (std::holds_alternative<bool>(c)) return std::get<bool>(c);
    return std::get<std::string>(c);
}

inline void write_json(std::ostream& os, const Table& t) {
    json rows = json::array();
    for (const auto& row : t.rows) {
        json obj = json::object();  // nlohmann objects iterate in sorted key order
        for (std::size_t i = 0; i < row.size(); ++i)
            obj[t.columns[i]] = cell_json(row[i]);
        rows.push_back(std::move(obj));
    }
    os << rows.dump(2) << "\n";
}

}  // namespace rogers::cli
