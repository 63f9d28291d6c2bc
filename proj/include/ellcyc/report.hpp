#pragma once

// Serialization of verification reports: JSON (stable), CSV and a human table.

#include <string>
#include <vector>

#include <json.hpp>

#include "ellcyc/cyclic.hpp"

namespace ellcyc {

struct RunProvenance {
    std::string tool = "ellcyc";
    std::string version;
    std::string catalog;       // "builtin" or the catalog path
    std::string catalog_hash;  // FNV-1a 64 of the catalog text, hex
    nlohmann::json config = nlohmann::json::object();
};

/// Complex values are [re, im]; non-finite doubles become null.
nlohmann::json to_json(cplx z);
nlohmann::json to_json(const VerificationReport& report);

/// {provenance, summary, reports}; reports ordered by id.
nlohmann::json run_to_json(const std::vector<VerificationReport>& reports, const RunProvenance& prov);

/// Two-space indented JSON with a trailing newline; identical input gives
/// identical bytes.
std::string dump_json(const nlohmann::json& doc);

/// One row per sample:
/// id,family,m,p,r,s,t,x0_re,x0_im,lhs_re,lhs_im,rhs_re,rhs_im,rel_residual
std::string reports_to_csv(const std::vector<VerificationReport>& reports);

/// One line per identity with counts and residual statistics.
std::string reports_to_table(const std::vector<VerificationReport>& reports);

}  // namespace ellcyc
