#pragma once

#include <optional>
#include <string>

#include "folcoh/json_io.hpp"
#include "folcoh/kostant.hpp"

namespace folcoh {

/// Process exit codes of the command-line front end.
enum class ExitCode : int {
    ok = 0,
    invalid_input = 1,
    precondition = 2,  // also: oracle mismatch in `cohomology`
    verification = 3,
};

struct JobResult {
    ExitCode code = ExitCode::ok;
    json output;
};

namespace jobs {

inline JobResult failure(ExitCode code, const std::string& message, json extra = json::object()) {
    extra["status"] = "error";
    extra["message"] = message;
    return {code, std::move(extra)};
}

inline JobResult finish(json output, bool verified) {
    output["status"] = verified ? "ok" : "verification-failed";
    return {verified ? ExitCode::ok : ExitCode::verification, std::move(output)};
}

inline std::size_t field_index(const json& spec, const WilliamsonBasis& basis) {
    std::size_t field = io::unsigned_value(io::member(spec, "field", ""), "/field");
    if (field == 0 || field > basis.n())
        throw SpecError("/field", "field must be in 1.." + std::to_string(basis.n()));
    return field - 1;
}

inline std::pair<std::size_t, std::size_t> range(const json& spec, const std::string& key, std::size_t lo,
                                                 std::size_t hi) {
    auto it = spec.find(key);
    if (it == spec.end()) return {lo, hi};
    std::string path = "/" + key;
    if (it->is_array()) {
        if (it->size() != 2) throw SpecError(path, "expected [min, max]");
        auto a = io::unsigned_value((*it)[0], path + "/0");
        auto b = io::unsigned_value((*it)[1], path + "/1");
        if (a > b) throw SpecError(path, "min exceeds max");
        return {a, b};
    }
    auto v = io::unsigned_value(*it, path);
    return {v, v};
}

/// {"type", "k"?: k | [kmin, kmax], "d": d | [dmin, dmax], "oracle"?: bool}
inline JobResult cohomology(const json& spec) {
    WilliamsonBasis basis = io::williamson_type(io::member(spec, "type", ""), "/type");
    bool want_oracle = basis.focus_focus_count() == 0;
    if (auto it = spec.find("oracle"); it != spec.end()) {
        if (!it->is_boolean()) throw SpecError("/oracle", "expected a boolean");
        want_oracle = it->get<bool>();
    }
    if (want_oracle && basis.focus_focus_count() > 0) return failure(ExitCode::invalid_input, "no oracle for k_f>0");
    if (spec.find("d") == spec.end()) throw SpecError("/d", "missing");
    auto [k_min, k_max] = range(spec, "k", 0, basis.n());
    auto [d_min, d_max] = range(spec, "d", 0, 0);
    if (k_max > basis.n()) throw SpecError("/k", "form degree exceeds n = " + std::to_string(basis.n()));
    if (d_max > 64) throw SpecError("/d", "degree bound too large");

    CohomologyEngine engine(basis);
    CohomologyReport report = engine.report(k_min, k_max, static_cast<Monomial::Exponent>(d_min),
                                            static_cast<Monomial::Exponent>(d_max));
    json out = io::to_json(report);
    out["command"] = "cohomology";
    bool generators_ok = std::all_of(report.slices.begin(), report.slices.end(),
                                     [](const auto& s) { return s.generators.size() == s.dim_h; });
    if (!generators_ok) return finish(std::move(out), false);
    if (want_oracle && !report.all_match()) {
        out["status"] = "oracle-mismatch";
        return {ExitCode::precondition, std::move(out)};
    }
    out["status"] = "ok";
    return {ExitCode::ok, std::move(out)};
}

/// {"type", "field": i, "f": "<polynomial>"}
inline JobResult decompose(const json& spec) {
    WilliamsonBasis basis = io::williamson_type(io::member(spec, "type", ""), "/type");
    std::size_t i = field_index(spec, basis);
    Polynomial f = io::polynomial(io::member(spec, "f", ""), basis.coords(), "/f");
    auto result = folcoh::decompose(basis, i, f);
    Polynomial reconstruction = f - result.kernel_part - basis.apply(i, result.potential);
    Polynomial kernel_residual = basis.apply(i, result.kernel_part);
    json out = {{"command", "decompose"},
                {"type", io::to_json(basis)},
                {"field", i + 1},
                {"f", to_string(f)},
                {"kernel_part", to_string(result.kernel_part)},
                {"potential", to_string(result.potential)},
                {"residual", {{"reconstruction", to_string(reconstruction)}, {"kernel", to_string(kernel_residual)}}}};
    return finish(std::move(out), reconstruction.is_zero() && kernel_residual.is_zero());
}

/// {"type", "g": ["<polynomial>", ...]}
inline JobResult deformation(const json& spec) {
    WilliamsonBasis basis = io::williamson_type(io::member(spec, "type", ""), "/type");
    const json& g = io::member(spec, "g", "");
    if (!g.is_array() || g.empty() || g.size() > basis.n())
        throw SpecError("/g", "expected 1.." + std::to_string(basis.n()) + " polynomials");
    DeformationCochain cochain{basis, {}};
    for (std::size_t i = 0; i < g.size(); ++i)
        cochain.components.push_back(io::polynomial(g[i], basis.coords(), "/g/" + std::to_string(i)));

    auto check = cocycle_check(cochain);
    if (!check) {
        auto [i, j] = *check.violation;
        return failure(ExitCode::precondition, "not a cocycle",
                       {{"violation", {i + 1, j + 1}}, {"residual", to_string(check.residual)}});
    }
    auto solution = solve_deformation(cochain);
    json basic = json::array();
    json reconstruction = json::array();
    bool zero = true;
    for (std::size_t i = 0; i < cochain.components.size(); ++i) {
        basic.push_back(to_string(solution.basic_parts[i]));
        Polynomial r = cochain.components[i] - solution.basic_parts[i] - basis.apply(i, solution.potential);
        zero = zero && r.is_zero();
        reconstruction.push_back(to_string(r));
        for (std::size_t j = 0; j < cochain.components.size(); ++j)
            zero = zero && basis.apply(j, solution.basic_parts[i]).is_zero();
    }
    json out = {{"command", "deformation"},
                {"type", io::to_json(basis)},
                {"g", g},
                {"G", to_string(solution.potential)},
                {"f", basic},
                {"residual", {{"reconstruction", reconstruction}}}};
    return finish(std::move(out), zero);
}

inline std::pair<RegularModel, RegularFoliatedForm> regular_input(const json& spec, const std::string& key) {
    RegularModel model = io::regular_model(io::member(spec, "model", ""), "/model");
    RegularFoliatedForm form = io::form(io::member(spec, key, ""), model, "/" + key);
    return {model, std::move(form)};
}

/// {"model": {"m", "n"}, "form": {...}}
inline JobResult primitive(const json& spec) {
    auto [model, alpha] = regular_input(spec, "form");
    if (alpha.degree() == 0) throw SpecError("/form/k", "primitive needs k >= 1");
    RegularFoliatedForm closedness = d_regular(alpha);
    if (!closedness.is_zero())
        return failure(ExitCode::precondition, "form is not closed", {{"residual", io::to_json(closedness)}});
    RegularFoliatedForm prim = homotopy_operator(alpha);
    RegularFoliatedForm residual = d_regular(prim) - alpha;
    json out = {{"command", "primitive"},
                {"model", io::to_json(model)},
                {"form", io::to_json(alpha)},
                {"primitive", io::to_json(prim)},
                {"residual", io::to_json(residual)}};
    return finish(std::move(out), residual.is_zero());
}

/// {"model", "form"}
inline JobResult homotopy_check(const json& spec) {
    auto [model, alpha] = regular_input(spec, "form");
    RegularFoliatedForm residual = homotopy_identity_residual(alpha);
    json out = {{"command", "homotopy-check"},
                {"model", io::to_json(model)},
                {"form", io::to_json(alpha)},
                {"residual", io::to_json(residual)}};
    return finish(std::move(out), residual.is_zero());
}

/// {"model", "potential": {1-form}, "truncation": D}
inline JobResult kostant_flat(const json& spec) {
    auto [model, alpha] = regular_input(spec, "potential");
    if (alpha.degree() != 1) throw SpecError("/potential/k", "potential must be a 1-form");
    std::size_t order = io::unsigned_value(io::member(spec, "truncation", ""), "/truncation");
    if (order > 64) throw SpecError("/truncation", "truncation order too large");
    RegularFoliatedForm closedness = d_regular(alpha);
    if (!closedness.is_zero())
        return failure(ExitCode::precondition, "potential is not leafwise flat",
                       {{"residual", io::to_json(closedness)}});
    ConnectionPotential pot(alpha);
    TruncatedSeries coefficient = flat_section(pot, static_cast<unsigned>(order));
    RegularFoliatedForm residual = flatness_residual(coefficient, pot);
    json out = {{"command", "kostant-flat"},
                {"model", io::to_json(model)},
                {"potential", io::to_json(alpha)},
                {"truncation", order},
                {"coefficient", to_string(coefficient.polynomial())},
                {"residual", io::to_json(residual)}};
    return finish(std::move(out), residual.is_zero());
}

}  // namespace jobs

inline const std::vector<std::string>& job_commands() {
    static const std::vector<std::string> names = {"cohomology", "decompose",      "deformation",
                                                   "primitive",  "homotopy-check", "kostant-flat"};
    return names;
}

/// Runs one job.  Invalid specs map to exit code 1 with the JSON pointer
/// of the fault in the message; precondition violations to 2; nonzero
/// self-verification residuals to 3.
inline JobResult run_job(const std::string& command, const json& spec) {
    try {
        if (!spec.is_object()) throw SpecError("", "job spec must be a JSON object");
        JobResult result;
        if (command == "cohomology") {
            result = jobs::cohomology(spec);
        } else if (command == "decompose") {
            result = jobs::decompose(spec);
        } else if (command == "deformation") {
            result = jobs::deformation(spec);
        } else if (command == "primitive") {
            result = jobs::primitive(spec);
        } else if (command == "homotopy-check") {
            result = jobs::homotopy_check(spec);
        } else if (command == "kostant-flat") {
            result = jobs::kostant_flat(spec);
        } else {
            return jobs::failure(ExitCode::invalid_input, "unknown command '" + command + "'");
        }
        return result;
    } catch (const SpecError& e) {
        return jobs::failure(ExitCode::invalid_input, e.what(), {{"path", e.path()}});
    } catch (const VerificationFailure& e) {
        return jobs::failure(ExitCode::verification, e.what());
    } catch (const PreconditionViolation& e) {
        return jobs::failure(ExitCode::precondition, e.what());
    } catch (const Error& e) {
        return jobs::failure(ExitCode::invalid_input, e.what());
    }
}

}  // namespace folcoh
