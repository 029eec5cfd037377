#include "soneuler/json_io.hpp"

#include <fstream>
#include <ostream>

namespace soneuler {

namespace {

ordered_json complex_list(const std::vector<std::complex<double>>& zs) {
    ordered_json out = ordered_json::array();
    for (const auto& z : zs) out.push_back({{"re", z.real()}, {"im", z.imag()}});
    return out;
}

ordered_json matrix2(const Eigen::Matrix2d& m) {
    return ordered_json::array({{m(0, 0), m(0, 1)}, {m(1, 0), m(1, 1)}});
}

ordered_json upper_list(const AntisymMatrix& a) {
    ordered_json out = ordered_json::array();
    for (int k = 0; k < a.upper().size(); ++k) out.push_back(a.upper()[k]);
    return out;
}

} // namespace

ProblemSpec ProblemSpec::from_json(const nlohmann::json& js) {
    ProblemSpec spec;
    if (!js.contains("n") || !js.contains("J") || !js.contains("x"))
        throw std::invalid_argument("spec: required keys are n, J, x");
    spec.n = js.at("n").get<int>();
    spec.inertia = js.at("J").get<std::vector<double>>();
    spec.cartan = js.at("x").get<std::vector<double>>();
    if (spec.n < 3) throw std::invalid_argument("spec: n must be >= 3");
    if (static_cast<int>(spec.inertia.size()) != spec.n)
        throw std::invalid_argument("spec: J must hold n values");
    if (static_cast<int>(spec.cartan.size()) != spec.n / 2)
        throw std::invalid_argument("spec: x must hold floor(n/2) values");
    if (js.contains("options")) {
        const auto& o = js.at("options");
        spec.dt = o.value("dt", spec.dt);
        spec.t_end = o.value("t_end", spec.t_end);
        spec.samples = o.value("samples", spec.samples);
        spec.tol = o.value("tol", spec.tol);
        spec.seed = o.value("seed", spec.seed);
    }
    return spec;
}

ProblemSpec ProblemSpec::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("spec: cannot open " + path);
    nlohmann::json js;
    in >> js;
    return from_json(js);
}

void ProblemSpec::apply_and_validate() const {
    if (tol > 0.0) {
        auto& t = Tolerances::global();
        t.equilibrium_rel = tol;
        t.imaginary_eig_rel = tol;
    }
    inertia_spec().validate_generic();
    cartan_element().validate_generic();
}

ordered_json to_json(const EquilibriumPoint& e) {
    ordered_json perm = ordered_json::array();
    for (int v : e.permutation.images()) perm.push_back(v + 1);
    return {{"perm", perm},
            {"sign", e.permutation.sign()},
            {"residual", e.residual},
            {"point", upper_list(e.point)}};
}

ordered_json to_json(const StabilityConditions& c) {
    return {{"i", c.cond_i}, {"ii", c.cond_ii}, {"iiia", c.cond_iiia}, {"iiib", c.cond_iiib}};
}

ordered_json to_json(const LyapunovCertificate& c) {
    return {{"z", c.z},
            {"z_at_vertex", c.z_at_vertex},
            {"lambda3_dominant", c.lambda3_dominant},
            {"q1", matrix2(c.q1)},
            {"q2", matrix2(c.q2)},
            {"det_q1", c.q1.determinant()},
            {"det_q2", c.q2.determinant()},
            {"trace_product", c.q1.trace() * c.q2.trace()},
            {"q_definite", c.q_definite},
            {"energy_hessian_definite", c.energy_hessian_definite}};
}

ordered_json to_json(const StabilityReport& r) {
    ordered_json out;
    switch (r.verdict) {
        case StabilityVerdict::stable: out["verdict"] = "stable"; break;
        case StabilityVerdict::unstable: out["verdict"] = "unstable"; break;
        case StabilityVerdict::nongeneric_rejected: out["verdict"] = "non-generic-rejected"; break;
    }
    out["conditions"] = to_json(r.conditions);
    out["characteristic"] = {{"c2", r.characteristic.c2},
                             {"c0", r.characteristic.c0},
                             {"discriminant", r.characteristic.discriminant}};
    out["eigenvalues"] = complex_list(r.spectrum);
    if (r.certificate) out["certificate"] = to_json(*r.certificate);
    if (r.witness) out["witness"] = {{"re", r.witness->real()}, {"im", r.witness->imag()}};
    if (!r.note.empty()) out["note"] = r.note;
    return out;
}

ordered_json to_json(const BlockProblem& b) {
    ordered_json out;
    out["type"] = b.kind == BlockProblem::Kind::so4 ? "so4-block" : "so3-block";
    out["slots"] = b.kind == BlockProblem::Kind::so4
                       ? ordered_json::array({b.slot_i + 1, b.slot_j + 1})
                       : ordered_json::array({b.slot_i + 1});
    out["x"] = b.kind == BlockProblem::Kind::so4 ? ordered_json::array({b.x_i, b.x_j})
                                                 : ordered_json::array({b.x_i});
    if (b.lambda_loc) {
        out["lambda"] = {(*b.lambda_loc)[0], (*b.lambda_loc)[1], (*b.lambda_loc)[2]};
        out["a"] = b.a_loc;
        out["b"] = b.b_loc;
    }
    out["eigenvalues"] = complex_list(b.eigenvalues);
    out["has_real_eigenvalue"] = b.has_real_eigenvalue();
    return out;
}

ordered_json to_json(const HeteroclinicOrbit& o) {
    return {{"z", o.z},
            {"delta", o.delta},
            {"s_end", o.s_end()},
            {"norm_identity_residual", o.norm_identity_residual},
            {"x0", upper_list(o.x0)},
            {"x1", upper_list(o.x1)},
            {"generator", upper_list(o.generator)}};
}

ordered_json to_json(const OrbitVerification& v) {
    return {{"max_residual", v.max_defining_residual},
            {"vector_field_scale", v.vector_field_scale},
            {"endpoint_residual_x0", v.endpoint_residual_x0},
            {"endpoint_residual_x1", v.endpoint_residual_x1},
            {"reached_target", v.reached_target},
            {"reach_distance", v.reach_distance},
            {"reach_time", v.reach_time},
            {"max_reparametrization_error", v.max_reparametrization_error},
            {"reparametrization_points", v.reparametrization_points},
            {"pass", v.pass}};
}

void write_orbit_csv(std::ostream& os, const HeteroclinicOrbit& orbit, int grid_points) {
    const int n = orbit.x0.dim();
    os.precision(17);
    os << "s,t";
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) os << ",m_" << i + 1 << "_" << j + 1;
    os << "\n";
    const double eps = 1e-3 / orbit.delta;
    const double send = orbit.s_end();
    for (int k = 0; k < grid_points; ++k) {
        const double s = eps + (send - 2.0 * eps) * k / std::max(1, grid_points - 1);
        const AntisymMatrix g = orbit.at(s);
        os << s << "," << orbit.time_of(s);
        for (int c = 0; c < g.upper().size(); ++c) os << "," << g.upper()[c];
        os << "\n";
    }
}

} // namespace soneuler
