// File parsing, command dispatch, and machine-readable output. Input is a
// small JSON document naming the variables, the field, and the polynomials;
// output is a JSON result document that is byte-identical across runs with
// the same seed over the exact field.
#pragma once

#include <json.hpp>

#include <complex>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "radtrace/bezout.hpp"
#include "radtrace/parse.hpp"
#include "radtrace/pipeline.hpp"

namespace radtrace {

using Json = nlohmann::ordered_json;

enum ExitCode : int {
    kOk = 0,
    kParseError = 2,
    kPreconditionError = 3,
    kContractError = 4,
};

struct SystemFile {
    std::vector<std::string> vars;
    std::string field = "rational";
    double tolerance = 1e-8;
    std::vector<std::string> polys;
    bool at_infinity = true;
};

struct CliOptions {
    std::uint64_t seed = 1;
    int retries = 5;
    std::optional<int> k_override;
    std::optional<int> delta_override;
    std::optional<int> working_override;
    std::optional<double> tolerance;
    std::string pipeline = "macaulay";  // macaulay | bezout | both
    bool shortcut = false;
    bool kernel_filter = false;
    double root_tol = 1e-8;
};

inline SystemFile parse_system_file(const Json& j) {
    SystemFile sf;
    if (!j.contains("vars") || !j["vars"].is_array() || j["vars"].empty())
        throw ParseError("system file needs a non-empty 'vars' array", 0, 0);
    for (auto& v : j["vars"]) sf.vars.push_back(v.get<std::string>());
    for (size_t i = 0; i < sf.vars.size(); ++i)
        for (size_t k = i + 1; k < sf.vars.size(); ++k)
            if (sf.vars[i] == sf.vars[k])
                throw ParseError("duplicate variable '" + sf.vars[i] + "'", 0, 0);
    if (j.contains("field")) sf.field = j["field"].get<std::string>();
    if (sf.field != "rational" && sf.field != "approx")
        throw ParseError("field must be 'rational' or 'approx'", 0, 0);
    if (j.contains("tolerance")) sf.tolerance = j["tolerance"].get<double>();
    if (!j.contains("polys") || !j["polys"].is_array() || j["polys"].empty())
        throw ParseError("system file needs a non-empty 'polys' array", 0, 0);
    for (auto& p : j["polys"]) sf.polys.push_back(p.get<std::string>());
    if (j.contains("at_infinity")) sf.at_infinity = j["at_infinity"].get<bool>();
    return sf;
}

template <class K>
PolySystem<K> parse_system(const SystemFile& sf) {
    std::vector<Polynomial<K>> polys;
    for (auto& text : sf.polys) {
        Polynomial<K> p = parse_polynomial<K>(text, sf.vars);
        if (p.is_zero_poly()) throw ParseError("zero polynomial '" + text + "'", 0, 0);
        polys.push_back(std::move(p));
    }
    return PolySystem<K>(sf.vars, polys);
}

namespace doc {

template <class K>
Json matrix_json(const DenseMatrix<K>& m) {
    Json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    Json data = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int c = 0; c < m.cols(); ++c) {
            if constexpr (is_exact_field_v<K>)
                row.push_back(scalar_str(m(i, c)));
            else
                row.push_back(to_double(m(i, c)));
        }
        data.push_back(std::move(row));
    }
    j["data"] = std::move(data);
    return j;
}

inline Json monomials_json(const std::vector<Monomial>& ms, const std::vector<std::string>& vars) {
    Json a = Json::array();
    for (auto& m : ms) a.push_back(poly_str(Polynomial<Rat>::monomial(m, Rat(1)), vars));
    return a;
}

template <class K>
Json polys_json(const std::vector<Polynomial<K>>& ps, const std::vector<std::string>& vars) {
    Json a = Json::array();
    for (auto& p : ps) a.push_back(poly_str(p, vars));
    return a;
}

inline Json roots_json(const std::vector<std::vector<std::complex<double>>>& roots) {
    Json a = Json::array();
    for (auto& r : roots) {
        Json pt = Json::array();
        for (auto& c : r) {
            Json z;
            z["re"] = c.real();
            z["im"] = c.imag();
            pt.push_back(std::move(z));
        }
        a.push_back(std::move(pt));
    }
    return a;
}

template <class K>
Json charpoly_json(const DenseMatrix<K>& m) {
    Json a = Json::array();
    for (auto& c : charpoly(m)) {
        if constexpr (is_exact_field_v<K>)
            a.push_back(scalar_str(c));
        else
            a.push_back(to_double(c));
    }
    return a;
}

inline Json bounds_json(const DegreeBounds& b, int dimension) {
    Json j;
    j["k"] = b.basis_degree;
    j["delta"] = b.truncation_degree;
    j["working_degree"] = b.working_degree;
    j["basis_max_degree"] = b.basis_max_degree;
    j["dimension"] = dimension;
    return j;
}

}  // namespace doc

template <class K>
PipelineOptions pipeline_options(const SystemFile& sf, const CliOptions& opts) {
    PipelineOptions p;
    p.seed = opts.seed;
    p.max_retries = opts.retries;
    p.at_infinity = sf.at_infinity;
    p.k_override = opts.k_override;
    p.delta_override = opts.delta_override;
    p.working_override = opts.working_override;
    p.root_tol = opts.root_tol;
    return p;
}

template <class K>
Json run_command(const std::string& command, const SystemFile& sf, const CliOptions& opts) {
    if constexpr (!is_exact_field_v<K>)
        Approx::tolerance = opts.tolerance.value_or(sf.tolerance);

    PolySystem<K> F = parse_system<K>(sf);
    Json out;
    out["command"] = command;
    {
        Json in;
        in["vars"] = sf.vars;
        in["field"] = sf.field;
        in["polys"] = sf.polys;
        in["at_infinity"] = sf.at_infinity;
        out["input"] = std::move(in);
    }
    {
        Json o;
        o["seed"] = opts.seed;
        o["retries"] = opts.retries;
        o["pipeline"] = opts.pipeline;
        if (opts.k_override) o["k"] = *opts.k_override;
        if (opts.delta_override) o["delta"] = *opts.delta_override;
        if (opts.working_override) o["working_degree"] = *opts.working_override;
        out["options"] = std::move(o);
    }

    if (command == "bounds") {
        DegreeBounds b = degree_bounds(F.degrees(), F.nvars(), sf.at_infinity);
        if (opts.k_override) b.basis_degree = *opts.k_override;
        if (opts.delta_override) b.truncation_degree = *opts.delta_override;
        out["bounds"] = doc::bounds_json(b, -1);
        out["bounds"].erase("basis_max_degree");
        out["bounds"].erase("dimension");
        if (F.size() == F.nvars() && !sf.at_infinity) {
            long pred = 1;
            for (int d : F.degrees()) pred *= d;
            out["predicted_dimension"] = pred;
        }
        return out;
    }

    if (command == "squarefree") {
        if (F.nvars() != 1 || F.size() != 1)
            throw std::invalid_argument("squarefree: a single univariate polynomial is required");
        out["squarefree"] = poly_str(uni_squarefree(F.polys[0]), sf.vars);
        return out;
    }

    if (command == "bezout-radical" || (command == "radical" && opts.pipeline == "bezout")) {
        auto gens = radical_from_bezout(F, opts.kernel_filter);
        auto rr = reduction_loop(F);
        Json rad;
        rad["unit_ideal"] = false;
        rad["basis"] = doc::monomials_json(rr.basis, sf.vars);
        rad["generators"] = doc::polys_json(gens, sf.vars);
        Json mats = Json::array();
        for (auto& m : rr.mult) mats.push_back(doc::matrix_json(m));
        rad["mult_matrices"] = std::move(mats);
        out["radical"] = std::move(rad);
        Json diag;
        diag["pipeline"] = "bezout";
        diag["connected_to_one"] = rr.connected_to_one;
        diag["rank_deficient_core"] = rr.rank_deficient_core;
        diag["commuting"] = rr.commuting;
        out["diagnostics"] = std::move(diag);
        return out;
    }
    if (command == "roots" && opts.pipeline == "bezout")
        throw std::invalid_argument("roots runs on the macaulay pipeline; use macaulay or both");

    // the remaining commands run the trace pipeline
    PipelineOptions popts = pipeline_options<K>(sf, opts);
    popts.compute_roots = command == "roots";
    bool want_bezout = opts.pipeline == "both" && (command == "radical" || command == "roots");

    PipelineResult<K> res = radical_pipeline(F, popts);
    out["bounds"] = doc::bounds_json(res.qd.bounds, res.qd.dimension);
    out["basis"] = doc::monomials_json(res.qd.basis, sf.vars);

    Json diag;
    diag["pipeline"] = opts.pipeline;
    if (!res.unit_ideal) {
        diag["gorenstein"] = res.moment.gorenstein;
        diag["moment_rank"] = res.moment.rank;
        diag["retries_used"] = res.moment.retries_used;
    }

    if (command == "basis") {
        out["diagnostics"] = std::move(diag);
        return out;
    }

    if (!res.unit_ideal && (command == "traces" || command == "radical" || command == "roots")) {
        Json tr;
        tr["selected_basis"] = [&] {
            std::vector<Monomial> sel;
            for (int a : res.traces.alpha) sel.push_back(res.qd.basis[a]);
            return doc::monomials_json(sel, sf.vars);
        }();
        tr["jacobian"] = poly_str(res.traces.jac, sf.vars);
        tr["trace"] = doc::matrix_json(res.traces.trace);
        Json shifts = Json::array();
        for (auto& t : res.traces.trace_shift) shifts.push_back(doc::matrix_json(t));
        tr["trace_shift"] = std::move(shifts);
        tr["rank"] = rank(res.traces.trace);
        out["traces"] = std::move(tr);
    }
    if (command == "traces") {
        out["diagnostics"] = std::move(diag);
        return out;
    }

    Json rad;
    rad["unit_ideal"] = res.radical.unit_ideal;
    rad["basis"] = doc::monomials_json(res.radical.basis_tilde, sf.vars);
    rad["generators"] = doc::polys_json(res.radical.generators, sf.vars);
    Json mats = Json::array();
    for (auto& m : res.radical.mult) mats.push_back(doc::matrix_json(m));
    rad["mult_matrices"] = std::move(mats);
    out["radical"] = std::move(rad);

    if (command == "roots") out["roots"] = doc::roots_json(res.radical.roots);

    if (opts.shortcut && !res.unit_ideal) {
        if (F.size() != F.nvars())
            throw std::invalid_argument("--shortcut requires a square system");
        auto sc = jacobian_shortcut(res.qd);
        Json j;
        j["basis"] = doc::monomials_json(sc.basis_tilde, sf.vars);
        Json mm = Json::array();
        bool agree = sc.basis_tilde == res.radical.basis_tilde;
        for (size_t k = 0; k < sc.mult.size(); ++k) {
            mm.push_back(doc::matrix_json(sc.mult[k]));
            if (agree && !(sc.mult[k] == res.radical.mult[k])) agree = false;
        }
        j["mult_matrices"] = std::move(mm);
        j["agrees_with_traces"] = agree;
        out["shortcut"] = std::move(j);
    }

    if (want_bezout && !res.unit_ideal) {
        if (F.size() != F.nvars())
            throw std::invalid_argument("--pipeline bezout requires a square system");
        auto rr = reduction_loop(F);
        Json bez;
        bez["basis"] = doc::monomials_json(rr.basis, sf.vars);
        Json mats2 = Json::array();
        for (auto& m : rr.mult) mats2.push_back(doc::matrix_json(m));
        bez["mult_matrices"] = std::move(mats2);
        bez["generators"] = doc::polys_json(radical_from_bezout(F, opts.kernel_filter), sf.vars);
        bez["connected_to_one"] = rr.connected_to_one;
        bez["rank_deficient_core"] = rr.rank_deficient_core;
        out["bezout"] = std::move(bez);

        if (opts.pipeline == "both") {
            Json cc;
            cc["basis_size_equal"] =
                rr.basis.size() == res.radical.basis_tilde.size();
            Json agree = Json::array();
            bool all = rr.basis.size() == res.radical.basis_tilde.size();
            for (size_t k = 0; k < rr.mult.size(); ++k) {
                bool same = all && charpoly(rr.mult[k]) == charpoly(res.radical.mult[k]);
                agree.push_back(same);
                all = all && same;
            }
            cc["charpoly_agree"] = std::move(agree);
            cc["all_agree"] = all;
            Json cps = Json::array();
            for (auto& m : res.radical.mult) cps.push_back(doc::charpoly_json(m));
            cc["charpolys"] = std::move(cps);
            out["crosscheck"] = std::move(cc);
        }
    }

    out["diagnostics"] = std::move(diag);
    return out;
}

// Dispatch on the field named in the system file.
inline Json run_from_json(const std::string& command, const Json& system_doc,
                          const CliOptions& opts) {
    SystemFile sf = parse_system_file(system_doc);
    if (sf.field == "approx") return run_command<Approx>(command, sf, opts);
    return run_command<Rat>(command, sf, opts);
}

int cli_main(int argc, char** argv);

}  // namespace radtrace
