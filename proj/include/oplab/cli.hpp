#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "oplab/discover.hpp"
#include "oplab/json_io.hpp"
#include "oplab/product.hpp"
#include "oplab/verify.hpp"

namespace oplab {

/// Exit codes: 0 all checks pass, 1 a check failed, 2 inconclusive
/// (budget exhausted), 64 usage or parse error.
enum ExitCode : int {
    kExitPass = 0,
    kExitFail = 1,
    kExitInconclusive = 2,
    kExitUsage = 64,
};

constexpr std::uint64_t kDefaultSeed = 20240613u;

struct RunConfig {
    std::string command;  // verify-lemmas | check-conditions | find-unit | classify | report
    std::string space_file;
    std::string v_spec = "search";  // "search" | "identity" | inline JSON matrix
    int n_max = 3;
    int trials = 1000;
    int restarts = 32;
    int steps = 200;
    std::uint64_t seed = kDefaultSeed;
    double tol = 1e-9;
    std::string output;       // empty = stdout
    std::string replay_file;  // when set, re-verify the witnesses of a report
};

struct RunResult {
    int exit_code = kExitPass;
    json report;
};

namespace detail {

inline void validate(const RunConfig& c) {
    if (c.n_max < 1) throw ShapeError("n_max must be >= 1");
    if (c.trials < 1) throw ShapeError("trials must be >= 1");
    if (c.tol <= 0) throw ShapeError("tol must be positive");
    if (c.restarts < 0 || c.steps < 0) throw ShapeError("budget must be nonnegative");
}

struct ResolvedUnit {
    CMat v;
    std::string source;  // "search" | "identity" | "inline"
    json search_json;    // populated for the search route
};

inline ResolvedUnit resolve_unit(const OperatorSpace& space, const RunConfig& c) {
    ResolvedUnit out;
    if (c.v_spec == "search") {
        const UnitCandidate cand = find_unit(space, c.restarts, c.steps, c.seed);
        out.v = cand.v;
        out.source = "search";
        out.search_json = unit_candidate_to_json(cand);
        return out;
    }
    if (c.v_spec == "identity") {
        if (space.ambient_rows != space.ambient_cols)
            throw ShapeError("--v identity requires a square ambient");
        out.v = CMat::Identity(space.ambient_rows, space.ambient_cols);
        out.source = "identity";
    } else {
        out.v = matrix_from_json(parse_json_text(c.v_spec, "--v"));
        out.source = "inline";
    }
    const Membership m = member(space, out.v);
    if (!m.member)
        throw MembershipError(
            "--v: not a member of the space (residual " + std::to_string(m.residual) + ")",
            m.residual);
    return out;
}

inline json conditions_json(const ProductContext& ctx, const RunConfig& c, bool& pass,
                            bool& inconclusive) {
    json out;
    out["condition_i"] = {{"residual", ctx.cond_i_residual},
                          {"witness_basis_index", ctx.cond_i_witness}};
    if (ctx.cond_i_residual > c.tol) {
        pass = false;
        out["condition_ii"] = nullptr;
        out["contractivity"] = nullptr;
        out["note"] = "condition (i) fails; condition (ii) and contractivity were not run";
        return out;
    }
    const AscentBudget budget{c.restarts, c.steps};
    json cond_ii = json::array();
    json contract = json::array();
    for (int n = 1; n <= c.n_max; ++n) {
        const AscentOutcome ii =
            check_condition_ii(ctx, n, budget, c.seed + 7919u * static_cast<std::uint64_t>(n));
        cond_ii.push_back(ascent_to_json(ii));
        if (ii.best_ratio > 1.0 + 1e-7) pass = false;
        if (ii.inconclusive) inconclusive = true;

        const ContractivityOutcome cc = check_complete_contractivity(
            ctx, n, budget, c.seed + 104729u * static_cast<std::uint64_t>(n));
        json entry = ascent_to_json(cc.product);
        entry["remark46"] = ascent_to_json(cc.remark46);
        contract.push_back(std::move(entry));
        if (cc.product.best_ratio > 1.0 + 1e-7) pass = false;
        if (cc.remark46.best_ratio > 0.5 + 1e-7) pass = false;
        if (cc.product.inconclusive || cc.remark46.inconclusive) inconclusive = true;
    }
    out["condition_ii"] = std::move(cond_ii);
    out["contractivity"] = std::move(contract);
    return out;
}

inline json lemma_suite_json(const ProductContext& ctx, const RunConfig& c, bool& pass) {
    json cases = json::array();
    for (const LemmaOutcome& o : run_lemma_suite(ctx, c.trials, c.seed)) {
        cases.push_back(lemma_outcome_to_json(o));
        if (o.max_residual > c.tol) pass = false;
    }
    return cases;
}

inline int replay_report(const std::string& path, json& out) {
    const json rep = parse_json_text(read_file(path), path);
    const OperatorSpace space = space_from_json(rep.at("space"));
    const CMat v = matrix_from_json(rep.at("v"));
    const ProductContext ctx = make_product_context(space, v);
    json results = json::array();
    bool ok = true;
    auto check = [&](const json& witness_json) {
        const Witness w = witness_from_json(witness_json);
        const double replayed = replay_ascent_witness(ctx, w);
        const bool match = std::abs(replayed - w.residual) <= 1e-12;
        if (!match) ok = false;
        results.push_back(json{{"case", w.case_id},
                               {"recorded", w.residual},
                               {"replayed", replayed},
                               {"match", match}});
    };
    if (rep.contains("cases") && rep.at("cases").is_array())
        for (const json& c : rep.at("cases")) check(c.at("witness"));
    if (rep.contains("condition_ii") && rep.at("condition_ii").is_array())
        for (const json& c : rep.at("condition_ii")) check(c.at("witness"));
    if (rep.contains("contractivity") && rep.at("contractivity").is_array())
        for (const json& c : rep.at("contractivity")) {
            check(c.at("witness"));
            if (c.contains("remark46")) check(c.at("remark46").at("witness"));
        }
    out["replay"] = std::move(results);
    out["replay_source"] = path;
    return ok ? kExitPass : kExitFail;
}

} // namespace detail

/// Executes one batch command. The report is deterministic: identical
/// configurations (including the seed) produce byte-identical JSON.
inline RunResult run(const RunConfig& config) {
    RunResult result;
    json& rep = result.report;
    try {
        detail::validate(config);

        if (!config.replay_file.empty()) {
            result.exit_code = detail::replay_report(config.replay_file, rep);
            return result;
        }

        if (config.command != "verify-lemmas" && config.command != "check-conditions" &&
            config.command != "find-unit" && config.command != "classify" &&
            config.command != "report")
            throw ShapeError("unknown command: " + config.command);

        const OperatorSpace space = load_space(config.space_file);
        rep["command"] = config.command;
        rep["seed"] = config.seed;
        rep["tol"] = config.tol;
        rep["n_max"] = config.n_max;
        rep["trials"] = config.trials;
        rep["budget"] = {{"restarts", config.restarts}, {"steps", config.steps}};
        rep["space"] = space_to_json(space);

        const detail::ResolvedUnit unit = detail::resolve_unit(space, config);
        rep["v"] = matrix_to_json(unit.v);
        rep["v_fingerprint"] = fingerprint(unit.v);
        rep["v_norm"] = opnorm(unit.v);
        rep["v_source"] = unit.source;
        if (!unit.search_json.is_null()) rep["unit_search"] = unit.search_json;

        const TripleContext tctx = make_triple_context(space, unit.v);
        rep["restriction"] = tctx.restriction_valid ? tctx.justification : "assumed";
        rep["restriction_warning"] = !tctx.restriction_valid;

        const ProductContext ctx =
            make_product_context(space, unit.v, rep["restriction"].get<std::string>());

        bool pass = true;
        bool inconclusive = false;

        if (config.command == "find-unit") {
            rep["condition_i"] = {{"residual", ctx.cond_i_residual},
                                  {"witness_basis_index", ctx.cond_i_witness}};
            if (ctx.cond_i_residual > config.tol) pass = false;
        } else if (config.command == "verify-lemmas") {
            rep["condition_i"] = {{"residual", ctx.cond_i_residual},
                                  {"witness_basis_index", ctx.cond_i_witness}};
            if (ctx.cond_i_residual > 1e-8) {
                pass = false;
                rep["note"] = "condition (i) fails; the lemma suite assumes it and was not run";
            } else {
                rep["cases"] = detail::lemma_suite_json(ctx, config, pass);
            }
        } else if (config.command == "check-conditions") {
            const json cj = detail::conditions_json(ctx, config, pass, inconclusive);
            for (auto it = cj.begin(); it != cj.end(); ++it) rep[it.key()] = it.value();
        } else {  // classify, report
            rep["closure"] = closure_to_json(tro_closure(space));
            if (space.ambient_rows == space.ambient_cols)
                rep["adjoint_intersection_dim"] = adjoint_intersection(space).dim();
            const json cj = detail::conditions_json(ctx, config, pass, inconclusive);
            for (auto it = cj.begin(); it != cj.end(); ++it) rep[it.key()] = it.value();
            if (ctx.cond_i_residual <= 1e-8) rep["cases"] = detail::lemma_suite_json(ctx, config, pass);
        }

        if (inconclusive && pass) {
            rep["verdict"] = "inconclusive: ascent budget exhausted before convergence";
            result.exit_code = kExitInconclusive;
        } else if (pass) {
            rep["verdict"] = config.command == "find-unit"
                                 ? "unit candidate satisfies condition (i)"
                                 : "unital operator algebra conditions satisfied";
            result.exit_code = kExitPass;
        } else {
            rep["verdict"] = "conditions not satisfied";
            result.exit_code = kExitFail;
        }
        rep["pass"] = result.exit_code == kExitPass;
        return result;
    } catch (const DegenerateBasisError& e) {
        rep["error"] = e.what();
        result.exit_code = kExitUsage;
    } catch (const ShapeError& e) {
        rep["error"] = e.what();
        result.exit_code = kExitUsage;
    } catch (const MembershipError& e) {
        rep["error"] = e.what();
        rep["residual"] = e.residual;
        result.exit_code = kExitUsage;
    } catch (const NumericalError& e) {
        rep["error"] = e.what();
        result.exit_code = kExitUsage;
    }
    return result;
}

/// Serializes a report deterministically (sorted keys, two-space indent).
inline std::string report_text(const json& rep) { return rep.dump(2) + "\n"; }

inline int emit(const RunResult& r, const std::string& output_path) {
    const std::string text = report_text(r.report);
    if (output_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(output_path, std::ios::binary);
        if (!out) {
            std::cerr << "cannot write " << output_path << "\n";
            return kExitUsage;
        }
        out << text;
    }
    return r.exit_code;
}

} // namespace oplab
