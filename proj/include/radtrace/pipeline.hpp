// End-to-end driver: degree bounds, Macaulay construction, moment sampling,
// trace matrices, radical multiplication matrices, and optional roots.
#pragma once

#include <cstdint>
#include <optional>

#include "radtrace/macaulay.hpp"
#include "radtrace/momtrace.hpp"

namespace radtrace {

struct PipelineOptions {
    std::uint64_t seed = 1;
    int max_retries = 5;
    bool at_infinity = true;
    std::optional<int> k_override;
    std::optional<int> delta_override;
    std::optional<int> working_override;
    bool force_full_alpha = false;  // exercise the general path with the full basis
    bool compute_roots = false;
    double root_tol = 1e-8;
};

template <class K>
struct PipelineResult {
    QuotientData<K> qd;
    bool unit_ideal = false;
    MomentData<K> moment;
    TraceData<K> traces;
    RadicalResult<K> radical;
};

template <class K>
QuotientData<K> quotient_from_options(const PolySystem<K>& F, const PipelineOptions& opts) {
    DegreeBounds b = degree_bounds(F.degrees(), F.nvars(), opts.at_infinity);
    if (opts.k_override) b.basis_degree = *opts.k_override;
    if (opts.delta_override) b.truncation_degree = *opts.delta_override;
    b.working_degree = std::max(b.truncation_degree - 1, b.basis_degree);
    if (!opts.working_override) return quotient_setup(F, b);

    b.working_degree = *opts.working_override;
    QuotientData<K> qd = macaulay_matrix(F, b);
    quotient_basis(qd);
    if (qd.bounds.working_degree > *opts.working_override)
        throw BoundsError("working-degree override is below the required max(delta-1, 2D+1)");
    qd.bounds.working_degree = *opts.working_override;
    return qd;
}

template <class K>
PipelineResult<K> radical_pipeline(const PolySystem<K>& F, const PipelineOptions& opts) {
    PipelineResult<K> out;
    out.qd = quotient_from_options(F, opts);
    if (out.qd.dimension == 0) {
        out.unit_ideal = true;
        out.radical.unit_ideal = true;
        out.radical.generators.push_back(Polynomial<K>::constant(K(1), F.nvars()));
        return out;
    }
    out.moment = sample_moment(out.qd, opts.seed, opts.max_retries);
    if (opts.force_full_alpha) {
        if (out.moment.rank != out.qd.dimension)
            throw ContractError("force_full_alpha: moment matrix is singular");
        out.moment.alpha.clear();
        for (int i = 0; i < out.qd.dimension; ++i) out.moment.alpha.push_back(i);
    }
    out.traces = dual_basis_and_jacobian(out.moment, out.qd);
    trace_matrices(out.traces, out.moment, out.qd);
    out.radical = radical_mult_matrices(out.traces, out.moment, out.qd);
    if (opts.compute_roots)
        out.radical.roots = extract_roots(out.radical, out.traces, out.qd, opts.seed, opts.root_tol);
    return out;
}

}  // namespace radtrace
