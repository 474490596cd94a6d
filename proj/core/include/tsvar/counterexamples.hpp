#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tsvar/scalar.hpp"
#include "tsvar/scale_fn.hpp"
#include "tsvar/time_scale.hpp"

namespace tsvar {

struct VerdictDetail {
    std::string name;
    std::string value;
    std::string expected;
    bool ok = false;
};

/// confirmed holds iff every detail is ok.
struct Verdict {
    std::string id;
    std::string claim;
    nlohmann::json witness;
    bool confirmed = false;
    std::vector<VerdictDetail> details;

    void check(std::string name, std::string value, std::string expected, bool ok);
    void finish();
};

struct NablaEndpointsOptions {
    /// Translates T = {1..5} to {1+shift .. 5+shift}.
    long shift = 0;
    /// Replaces f; indexed by position 0..4.
    std::optional<std::vector<Scalar>> f;
    unsigned seed = 20240501;
};

/// ∇-orthogonality on {1..5} cannot pin down f at ρ(a) and b.
Verdict cx_nabla_endpoints(const NablaEndpointsOptions& opts = {});

/// η^Δ jumps at a left-dense right-scattered t0.
Verdict cx_eta_not_c1(const TimeScale& T, const Scalar& u1, const Scalar& t0);
Verdict cx_eta_not_c1();

/// On ({0..5})² the one-point Ω makes η vanish identically.
/// M defaults to 1 at (1,1) and 0 elsewhere; a supplied M is a 6×6 table.
Verdict cx_omega_degenerate(const std::optional<std::vector<std::vector<Scalar>>>& M = std::nullopt);

/// σ jumps at a left-dense right-scattered t.
Verdict cx_sigma_discontinuity(const TimeScale& T, const Scalar& t);
Verdict cx_sigma_discontinuity();

/// Limit of g(s) as s → t⁻ along T, by s_n = t - 2⁻ⁿ d with d the length of
/// the interval piece ending at t. Converges when successive values differ by
/// at most tol.
double left_limit_along(const TimeScale& T, const std::function<double(double)>& g, const Scalar& t,
                        double tol = 1e-10);

nlohmann::json to_json(const Verdict& v);

} // namespace tsvar
