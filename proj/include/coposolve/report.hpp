#pragma once

#include <string>

#include <json.hpp>

#include "coposolve/copositivity.hpp"
#include "coposolve/neumann.hpp"
#include "coposolve/p_copositivity.hpp"
#include "coposolve/solvability.hpp"

namespace coposolve {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "coposolve-report/1";

/// Matrix file: {"n": <int>, "beta": [[...], ...], "name": <optional string>}.
struct MatrixFile {
    std::string name;
    SymMatrix beta = SymMatrix::identity(1);
};

MatrixFile parse_matrix_file(const std::string& text);
Json matrix_json(const MatrixFile& m);

struct Report {
    std::string schema_version = kSchemaVersion;
    std::string command;
    Json input;
    Json defaults;
    Json result;

    friend bool operator==(const Report&, const Report&) = default;
};

std::string serialize(const Report& r);
Report parse_report(const std::string& text);

void to_json(Json& j, const SymMatrix& B);
void from_json(const Json& j, SymMatrix& B);
void to_json(Json& j, const ConeVector& c);
void from_json(const Json& j, ConeVector& c);
void to_json(Json& j, const CopositivityVerdict& v);
void to_json(Json& j, const VerificationInfo& v);
void from_json(const Json& j, VerificationInfo& v);
void to_json(Json& j, const MuCertificate& c);
void from_json(const Json& j, MuCertificate& c);
void to_json(Json& j, const MuViolation& v);
void to_json(Json& j, const MuSearchFailure& f);
void to_json(Json& j, const MuSearchInconclusive& f);
void to_json(Json& j, const MuSearchOutcome& o);
void to_json(Json& j, const ConstantSolution& s);
void to_json(Json& j, const SolvabilityVerdict& v);
void to_json(Json& j, const EnergyReport& r);
void from_json(const Json& j, EnergyReport& r);
void to_json(Json& j, const Grid& g);

}  // namespace coposolve
