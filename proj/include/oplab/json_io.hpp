#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "oplab/discover.hpp"
#include "oplab/matrix.hpp"
#include "oplab/space.hpp"
#include "oplab/symmetry.hpp"
#include "oplab/verify.hpp"

namespace oplab {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

// Complex entries serialize as [re, im] pairs, row-major, in all payloads.

inline json matrix_to_json(const CMat& a) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            row.push_back(json::array({a(i, j).real(), a(i, j).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline CMat matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw ShapeError("matrix json: expected non-empty array of rows");
    const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
    const Eigen::Index cols = static_cast<Eigen::Index>(j.at(0).size());
    CMat a(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const json& row = j.at(static_cast<std::size_t>(i));
        if (static_cast<Eigen::Index>(row.size()) != cols)
            throw ShapeError("matrix json: ragged row " + std::to_string(i));
        for (Eigen::Index jj = 0; jj < cols; ++jj) {
            const json& entry = row.at(static_cast<std::size_t>(jj));
            if (!entry.is_array() || entry.size() != 2)
                throw ShapeError("matrix json: entry (" + std::to_string(i) + "," +
                                 std::to_string(jj) + ") is not an [re, im] pair");
            a(i, jj) = Complex(entry.at(0).get<double>(), entry.at(1).get<double>());
        }
    }
    if (!all_finite(a)) throw NumericalError("matrix json: non-finite entry");
    return a;
}

inline json space_to_json(const OperatorSpace& s) {
    json j;
    j["name"] = s.name;
    j["ambient"] = {{"rows", s.ambient_rows}, {"cols", s.ambient_cols}};
    json basis = json::array();
    for (const CMat& b : s.basis) basis.push_back(matrix_to_json(b));
    j["basis"] = std::move(basis);
    return j;
}

inline OperatorSpace space_from_json(const json& j) {
    const std::string name = j.at("name").get<std::string>();
    const int rows = j.at("ambient").at("rows").get<int>();
    const int cols = j.at("ambient").at("cols").get<int>();
    std::vector<CMat> basis;
    for (const json& b : j.at("basis")) basis.push_back(matrix_from_json(b));
    return make_space(name, rows, cols, basis);
}

/// Line/column location of a byte offset, for parse diagnostics.
inline std::pair<int, int> line_column(const std::string& text, std::size_t byte) {
    int line = 1, col = 1;
    for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
        if (text[k] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

inline json parse_json_text(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ShapeError(what + ": JSON parse error at line " + std::to_string(line) +
                         ", column " + std::to_string(col) + ": " + e.what());
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ShapeError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline OperatorSpace load_space(const std::string& path) {
    return space_from_json(parse_json_text(read_file(path), path));
}

inline void save_space(const OperatorSpace& s, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ShapeError("cannot write file: " + path);
    out << space_to_json(s).dump(2) << "\n";
}

inline json isometry_to_json(const IsometrySpec& s) {
    json params;
    switch (s.kind) {
        case IsometryKind::RowSign: params["i"] = s.i; break;
        case IsometryKind::ColSign: params["j"] = s.j; break;
        case IsometryKind::RowSwap:
        case IsometryKind::ColSwap: params["i"] = s.i; params["j"] = s.j; break;
        case IsometryKind::RowPhase: params["i"] = s.i; params["theta"] = s.theta; break;
        case IsometryKind::ColPhase: params["j"] = s.j; params["theta"] = s.theta; break;
        case IsometryKind::BlockSignPsi1:
        case IsometryKind::BlockSignPsi2: params["m"] = s.m; break;
        case IsometryKind::CornerAverageR: params["sign"] = s.sign; break;
        case IsometryKind::CornerRestrictS: break;
    }
    return json{{"kind", kind_name(s.kind)}, {"params", params}, {"level", s.level}};
}

inline IsometrySpec isometry_from_json(const json& j) {
    IsometrySpec s;
    const std::string kind = j.at("kind").get<std::string>();
    bool found = false;
    for (int k = 0; k <= static_cast<int>(IsometryKind::CornerRestrictS); ++k)
        if (kind == kind_name(static_cast<IsometryKind>(k))) {
            s.kind = static_cast<IsometryKind>(k);
            found = true;
            break;
        }
    if (!found) throw ShapeError("isometry json: unknown kind " + kind);
    s.level = j.at("level").get<int>();
    const json& params = j.at("params");
    if (params.contains("i")) s.i = params.at("i").get<int>();
    if (params.contains("j")) s.j = params.at("j").get<int>();
    if (params.contains("m")) s.m = params.at("m").get<int>();
    if (params.contains("theta")) s.theta = params.at("theta").get<double>();
    if (params.contains("sign")) s.sign = params.at("sign").get<int>();
    return s;
}

inline json witness_to_json(const Witness& w) {
    json inputs = json::array();
    for (std::size_t k = 0; k < w.inputs.size(); ++k)
        inputs.push_back(json{{"name", w.input_names[k]},
                              {"level", w.input_levels[k]},
                              {"matrix", matrix_to_json(w.inputs[k])}});
    return json{{"case", w.case_id}, {"inputs", std::move(inputs)}, {"residual", w.residual},
                {"seed", w.seed},    {"trial", w.trial}};
}

inline Witness witness_from_json(const json& j) {
    Witness w;
    w.case_id = j.at("case").get<std::string>();
    for (const json& in : j.at("inputs")) {
        w.input_names.push_back(in.at("name").get<std::string>());
        w.input_levels.push_back(in.at("level").get<int>());
        w.inputs.push_back(matrix_from_json(in.at("matrix")));
    }
    w.residual = j.at("residual").get<double>();
    w.seed = j.at("seed").get<std::uint64_t>();
    w.trial = j.at("trial").get<int>();
    return w;
}

inline json closure_to_json(const ClosureReport& c) {
    return json{{"max_triple_residual", c.max_triple_residual},
                {"worst_triple", {c.worst_triple[0], c.worst_triple[1], c.worst_triple[2]}},
                {"is_tro", c.is_tro}};
}

inline json unit_candidate_to_json(const UnitCandidate& u) {
    json prov{{"kind", u.provenance.kind}};
    if (u.provenance.kind == "search") {
        prov["seed"] = u.provenance.seed;
        prov["restarts"] = u.provenance.restarts;
    }
    return json{{"v", matrix_to_json(u.v)},
                {"norm", u.norm},
                {"cond_i_residual", u.cond_i_residual},
                {"objective", u.objective},
                {"rms_residual", u.rms_residual},
                {"converged", u.converged},
                {"provenance", std::move(prov)}};
}

inline json ascent_to_json(const AscentOutcome& a) {
    return json{{"n", a.level},
                {"ratio", a.best_ratio},
                {"baseline_ratio", a.baseline_ratio},
                {"best_random_start", a.best_random_start},
                {"witness", witness_to_json(a.witness)},
                {"budget", {{"restarts", a.restarts}, {"steps", a.steps}}},
                {"seed", a.seed},
                {"converged", a.converged},
                {"inconclusive", a.inconclusive},
                {"dual_route_gap", a.dual_route_gap}};
}

inline json lemma_outcome_to_json(const LemmaOutcome& o) {
    return json{{"id", o.id},
                {"trials", o.trials},
                {"max_residual", o.max_residual},
                {"witness", witness_to_json(o.witness)}};
}

} // namespace oplab
