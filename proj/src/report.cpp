#include "coposolve/report.hpp"

namespace coposolve {

MatrixFile parse_matrix_file(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw Error(ErrorKind::Input, std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object()) throw Error(ErrorKind::Input, "matrix file must be a JSON object");
    if (!j.contains("n") || !j["n"].is_number_integer()) throw Error(ErrorKind::Input, "field \"n\" must be an integer");
    if (!j.contains("beta") || !j["beta"].is_array()) throw Error(ErrorKind::Input, "field \"beta\" must be an array");
    const long n = j["n"].get<long>();
    if (n < 1) throw Error(ErrorKind::Input, "n must be positive");
    if (n > long(kMaxOracleDimension)) throw Error(ErrorKind::Capacity, "n must not exceed 16");
    const auto& rows = j["beta"];
    if (long(rows.size()) != n) throw Error(ErrorKind::Input, "beta must have n rows");
    std::vector<double> entries;
    for (const auto& row : rows) {
        if (!row.is_array() || long(row.size()) != n) throw Error(ErrorKind::Input, "every row of beta must have n entries");
        for (const auto& v : row) {
            if (!v.is_number()) throw Error(ErrorKind::Input, "beta entries must be numbers");
            entries.push_back(v.get<double>());
        }
    }
    MatrixFile m{"", SymMatrix(std::size_t(n), std::move(entries))};
    if (j.contains("name")) {
        if (!j["name"].is_string()) throw Error(ErrorKind::Input, "field \"name\" must be a string");
        m.name = j["name"].get<std::string>();
    }
    return m;
}

Json matrix_json(const MatrixFile& m) {
    Json j;
    j["n"] = m.beta.size();
    j["beta"] = m.beta.to_rows();
    if (!m.name.empty()) j["name"] = m.name;
    return j;
}

std::string serialize(const Report& r) {
    Json j;
    j["schema_version"] = r.schema_version;
    j["command"] = r.command;
    j["input"] = r.input;
    j["defaults"] = r.defaults;
    j["result"] = r.result;
    return j.dump(2) + "\n";
}

Report parse_report(const std::string& text) {
    const Json j = Json::parse(text);
    Report r;
    r.schema_version = j.at("schema_version").get<std::string>();
    r.command = j.at("command").get<std::string>();
    r.input = j.at("input");
    r.defaults = j.at("defaults");
    r.result = j.at("result");
    return r;
}

void to_json(Json& j, const SymMatrix& B) { j = B.to_rows(); }

void from_json(const Json& j, SymMatrix& B) { B = SymMatrix::from_rows(j.get<std::vector<std::vector<double>>>()); }

void to_json(Json& j, const ConeVector& c) { j = c.values(); }

void from_json(const Json& j, ConeVector& c) { c = ConeVector(j.get<std::vector<double>>()); }

void to_json(Json& j, const CopositivityVerdict& v) {
    j = Json{{"kind", to_string(v.kind)},
             {"min_value", v.min_value},
             {"witness", v.witness},
             {"method", to_string(v.method)},
             {"grid_assisted", v.grid_assisted},
             {"boundary_case", v.boundary_case}};
}

void to_json(Json& j, const VerificationInfo& v) {
    j = Json{{"grid_resolution", v.grid_resolution},
             {"multistart_count", v.multistart_count},
             {"local_tolerance", v.local_tolerance},
             {"grid_points", v.grid_points},
             {"sampled", v.sampled}};
}

void from_json(const Json& j, VerificationInfo& v) {
    j.at("grid_resolution").get_to(v.grid_resolution);
    j.at("multistart_count").get_to(v.multistart_count);
    j.at("local_tolerance").get_to(v.local_tolerance);
    j.at("grid_points").get_to(v.grid_points);
    j.at("sampled").get_to(v.sampled);
}

void to_json(Json& j, const MuCertificate& c) {
    j = Json{{"outcome", "Certificate"},
             {"mu", c.mu},
             {"kappa", c.kappa},
             {"min_on_simplex", c.min_on_simplex},
             {"worst_point", c.worst_point},
             {"verification", c.verification}};
}

void from_json(const Json& j, MuCertificate& c) {
    j.at("mu").get_to(c.mu);
    j.at("kappa").get_to(c.kappa);
    j.at("min_on_simplex").get_to(c.min_on_simplex);
    j.at("worst_point").get_to(c.worst_point);
    j.at("verification").get_to(c.verification);
}

void to_json(Json& j, const MuViolation& v) {
    j = Json{{"outcome", "Violation"},
             {"mu", v.mu},
             {"point", v.point},
             {"value", v.value},
             {"violators", v.violators},
             {"verification", v.verification}};
}

void to_json(Json& j, const MuSearchFailure& f) {
    j = Json{{"outcome", "Failure"},
             {"mu", f.mu},
             {"best_margin", f.best_margin},
             {"iterations", f.iterations},
             {"adversarial_set", f.adversarial_set}};
}

void to_json(Json& j, const MuSearchInconclusive& f) {
    j = Json{{"outcome", "Inconclusive"},
             {"mu", f.mu},
             {"lp_margin", f.lp_margin},
             {"verified_min", f.verified_min},
             {"iterations", f.iterations},
             {"adversarial_set", f.adversarial_set}};
}

void to_json(Json& j, const MuSearchOutcome& o) {
    std::visit([&](const auto& x) { to_json(j, x); }, o);
}

void to_json(Json& j, const ConstantSolution& s) {
    j = Json{{"u", s.u}, {"c", s.c}, {"support", s.support}, {"residual", s.residual}};
}

void to_json(Json& j, const SolvabilityVerdict& v) {
    j = Json{{"kind", to_string(v.kind)}, {"reason", to_string(v.reason)}, {"boundary", v.boundary},
             {"copositivity_min", v.copositivity_min}};
    Json cert = nullptr;
    std::visit(
        [&](const auto& c) {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, ConstantSolution>) {
                cert = c;
                cert["type"] = "ConstantSolution";
            } else if constexpr (std::is_same_v<T, CopositivityWitness>) {
                cert = Json{{"type", "CopositivityWitness"}, {"witness", c.witness}, {"min_value", c.min_value}};
            } else if constexpr (std::is_same_v<T, DominantDiagonal>) {
                cert = Json{{"type", "DominantDiagonal"}, {"kappa0", c.kappa0}};
            } else if constexpr (std::is_same_v<T, MuCertificate>) {
                cert = c;
                cert["type"] = "MuCertificate";
            }
        },
        v.certificate);
    j["certificate"] = cert;
    if (v.search) j["search"] = *v.search;
    if (!v.note.empty()) j["note"] = v.note;
}

void to_json(Json& j, const EnergyReport& r) {
    j = Json{{"energy", r.energy},
             {"dirichlet", r.dirichlet},
             {"phi", r.phi},
             {"residual_inf", r.residual_inf},
             {"identity_defects", r.identity_defects}};
}

void from_json(const Json& j, EnergyReport& r) {
    j.at("energy").get_to(r.energy);
    j.at("dirichlet").get_to(r.dirichlet);
    j.at("phi").get_to(r.phi);
    j.at("residual_inf").get_to(r.residual_inf);
    j.at("identity_defects").get_to(r.identity_defects);
}

void to_json(Json& j, const Grid& g) {
    j = Json{{"dim", g.dim()}, {"extent", g.extent()}, {"points_per_side", g.points_per_side()},
             {"spacing", g.spacing()}};
}

}  // namespace coposolve
